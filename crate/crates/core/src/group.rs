//! Rational-coordinate root systems, their reflection groups, and
//! multiplicity functions.
//!
//! Roots are stored as convenient integer representatives (`±e_i`,
//! `e_i - e_j`, `±e_i ± e_j`), not normalized to length `√2`. The Dunkl
//! operators only see `α_i / ⟨α, x⟩`, which does not depend on the scale of
//! `α`; weight-dependent constants are always computed for the stored roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::LinearMap;
use crate::rational::{int, pow, to_f64, Rational};

pub type Root = Vec<Rational>;

/// Upper bound on the size of a generated group.
pub const GROUP_CLOSURE_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Z2^N`, roots `±e_i`.
    Z2,
    /// `A_{N-1}` realized in `R^N`, roots `e_i - e_j`.
    A,
    /// `B_N`, roots `±e_i` and `±e_i ± e_j`.
    B,
    /// `D_N`, roots `±e_i ± e_j`.
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Z2, Family::A, Family::B, Family::D];

    pub fn name(self) -> &'static str {
        match self {
            Family::Z2 => "Z2",
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::Z2 | Family::B => 1,
            Family::A | Family::D => 2,
        }
    }

    /// Order of the reflection group acting on `R^N`.
    pub fn group_order(self, rank: usize) -> u128 {
        let fact: u128 = (1..=rank as u128).product();
        match self {
            Family::Z2 => 1 << rank,
            Family::A => fact,
            Family::B => (1u128 << rank) * fact,
            Family::D => (1u128 << (rank - 1)) * fact,
        }
    }

    /// Display label such as `B_3`, `A_{2}` or `Z2^2`.
    pub fn label(self, rank: usize) -> String {
        match self {
            Family::Z2 => format!("Z2^{rank}"),
            Family::A => format!("A_{}", rank - 1),
            Family::B => format!("B_{rank}"),
            Family::D => format!("D_{rank}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z2" | "z2" => Ok(Family::Z2),
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// A catalog request: `Z2`, `A`, `B`, `D` with an ambient rank, or a
/// dihedral label `I2(m)` for the two rational cases `m = 3` (`A_2` in `R^3`)
/// and `m = 4` (`B_2`).
pub fn resolve_catalog(family: &str, rank: usize) -> Result<(Family, usize)> {
    let f = family.trim();
    if let Some(m) = f.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
        return match m.trim() {
            "3" => Ok((Family::A, 3)),
            "4" => Ok((Family::B, 2)),
            _ => Err(Error::UnsupportedFamily(format!(
                "{f}: dihedral groups other than I2(3) and I2(4) have irrational roots"
            ))),
        };
    }
    Ok((f.parse()?, rank))
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    roots: Vec<Root>,
    /// Indices into `roots` of the positive subsystem.
    positive: Vec<usize>,
    reflections: Vec<LinearMap>,
    /// W-orbits of roots as sorted index lists, ordered by representative.
    orbits: Vec<Vec<usize>>,
    /// Orbit index of every root.
    orbit_of: Vec<usize>,
}

fn lex_cmp(a: &Root, b: &Root) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn is_positive(a: &Root) -> bool {
    a.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

fn unit_root(rank: usize, i: usize, sign: i64) -> Root {
    let mut r = vec![Rational::zero(); rank];
    r[i] = int(sign);
    r
}

fn pair_root(rank: usize, i: usize, si: i64, j: usize, sj: i64) -> Root {
    let mut r = vec![Rational::zero(); rank];
    r[i] = int(si);
    r[j] = int(sj);
    r
}

impl RootSystem {
    /// Builds a catalog root system in `R^rank`.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::InvalidRank {
                family: family.name().to_string(),
                rank,
            });
        }
        let mut roots: Vec<Root> = Vec::new();
        match family {
            Family::Z2 => {
                for i in 0..rank {
                    roots.push(unit_root(rank, i, 1));
                    roots.push(unit_root(rank, i, -1));
                }
            }
            Family::A => {
                for i in 0..rank {
                    for j in 0..rank {
                        if i != j {
                            roots.push(pair_root(rank, i, 1, j, -1));
                        }
                    }
                }
            }
            Family::B | Family::D => {
                if family == Family::B {
                    for i in 0..rank {
                        roots.push(unit_root(rank, i, 1));
                        roots.push(unit_root(rank, i, -1));
                    }
                }
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(pair_root(rank, i, si, j, sj));
                        }
                    }
                }
            }
        }
        Self::from_roots(family, rank, roots)
    }

    /// Convenience wrapper over [`resolve_catalog`] and [`RootSystem::build`].
    pub fn from_catalog(family: &str, rank: usize) -> Result<Self> {
        let (f, r) = resolve_catalog(family, rank)?;
        Self::build(f, r)
    }

    fn from_roots(family: Family, rank: usize, mut roots: Vec<Root>) -> Result<Self> {
        roots.sort_by(lex_cmp);
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| is_positive(&roots[i])).collect();
        let reflections = positive
            .iter()
            .map(|&i| LinearMap::reflection(&roots[i]))
            .collect::<Result<Vec<_>>>()?;

        let index: HashMap<&Root, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut orbit_of = vec![usize::MAX; roots.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        // Roots are sorted lexicographically, so the first unvisited root is
        // the smallest member of its orbit.
        for start in 0..roots.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            orbit_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(r) = queue.pop_front() {
                for s in &reflections {
                    let image = s.apply(&roots[r])?;
                    let &j = index
                        .get(&image)
                        .ok_or_else(|| Error::InvalidConfig("root set is not closed under reflections".into()))?;
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }

        Ok(RootSystem {
            family,
            rank,
            roots,
            positive,
            reflections,
            orbits,
            orbit_of,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        self.family.label(self.rank)
    }

    /// The full root set `R`, sorted lexicographically.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    /// One reflection per positive root, in the order of [`Self::positive_roots`].
    pub fn reflections(&self) -> &[LinearMap] {
        &self.reflections
    }

    /// W-orbits of `R` as lists of root indices. Orbit `i` is identified by
    /// its lexicographically smallest root; orbits are ordered by that root.
    pub fn root_orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of_root(&self, root_index: usize) -> usize {
        self.orbit_of[root_index]
    }

    pub fn orbit_representative(&self, orbit: usize) -> &Root {
        &self.roots[self.orbits[orbit][0]]
    }

    pub fn known_group_order(&self) -> u128 {
        self.family.group_order(self.rank)
    }

    /// Breadth-first closure of the reflections under composition. The
    /// identity comes first; the order is deterministic.
    pub fn generate_group(&self) -> Result<GroupElements> {
        let id = LinearMap::identity(self.rank);
        let mut seen: HashSet<LinearMap> = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let g = elements[head].clone();
            head += 1;
            for s in &self.reflections {
                let h = s.compose(&g)?;
                if seen.insert(h.clone()) {
                    elements.push(h);
                    if elements.len() > GROUP_CLOSURE_CAP {
                        return Err(Error::ClosureCap(GROUP_CLOSURE_CAP));
                    }
                }
            }
        }
        Ok(GroupElements { elements })
    }
}

#[derive(Clone, Debug)]
pub struct GroupElements {
    elements: Vec<LinearMap>,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearMap> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[LinearMap] {
        &self.elements
    }
}

/// A W-invariant multiplicity `k ≥ 0`, stored as one value per root orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    orbit_values: Vec<Rational>,
    /// `k(α)` for each positive root, aligned with `RootSystem::positive_roots`.
    positive_values: Vec<Rational>,
}

impl Multiplicity {
    /// One value per orbit, in [`RootSystem::root_orbits`] order.
    pub fn new(rs: &RootSystem, orbit_values: Vec<Rational>) -> Result<Self> {
        if orbit_values.len() != rs.root_orbits().len() {
            return Err(Error::InvalidMultiplicity(format!(
                "{} has {} root orbits, got {} values",
                rs.label(),
                rs.root_orbits().len(),
                orbit_values.len()
            )));
        }
        if let Some(v) = orbit_values.iter().find(|v| v.is_negative()) {
            return Err(Error::InvalidMultiplicity(format!(
                "multiplicity values must be non-negative, got {v}"
            )));
        }
        let positive_values = rs
            .positive_indices()
            .iter()
            .map(|&i| orbit_values[rs.orbit_of_root(i)].clone())
            .collect();
        Ok(Multiplicity {
            orbit_values,
            positive_values,
        })
    }

    pub fn uniform(rs: &RootSystem, k: Rational) -> Result<Self> {
        Self::new(rs, vec![k; rs.root_orbits().len()])
    }

    pub fn zero(rs: &RootSystem) -> Self {
        Self::uniform(rs, Rational::zero()).expect("zero multiplicity is valid")
    }

    /// Validates an assignment given root by root (in `rs.roots()` order):
    /// it must be constant on every W-orbit.
    pub fn from_root_values(rs: &RootSystem, values: &[Rational]) -> Result<Self> {
        if values.len() != rs.roots().len() {
            return Err(Error::InvalidMultiplicity(format!(
                "expected {} root values, got {}",
                rs.roots().len(),
                values.len()
            )));
        }
        let mut orbit_values = Vec::with_capacity(rs.root_orbits().len());
        for orbit in rs.root_orbits() {
            let v = &values[orbit[0]];
            if orbit.iter().any(|&i| &values[i] != v) {
                return Err(Error::InvalidMultiplicity(format!(
                    "not constant on the orbit of {:?}",
                    rs.roots()[orbit[0]].iter().map(|c| c.to_string()).collect::<Vec<_>>()
                )));
            }
            orbit_values.push(v.clone());
        }
        Self::new(rs, orbit_values)
    }

    pub fn orbit_values(&self) -> &[Rational] {
        &self.orbit_values
    }

    pub fn positive_values(&self) -> &[Rational] {
        &self.positive_values
    }

    pub fn is_zero(&self) -> bool {
        self.orbit_values.iter().all(Zero::is_zero)
    }
}

/// `γ(k) = Σ_{α ∈ R+} k(α)`.
pub fn gamma_k(k: &Multiplicity) -> Rational {
    k.positive_values().iter().sum()
}

/// Value of the weight function: exact when every exponent `2k(α)` is an
/// integer and the point is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightValue {
    Exact(Rational),
    Float(f64),
}

impl WeightValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            WeightValue::Exact(r) => to_f64(r),
            WeightValue::Float(v) => *v,
        }
    }
}

/// `w_k(x) = Π_{α ∈ R+} |⟨α, x⟩|^{2k(α)}` at a rational point.
pub fn weight_function(rs: &RootSystem, k: &Multiplicity, x: &[Rational]) -> Result<WeightValue> {
    if x.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: x.len(),
        });
    }
    let all_integral = k.positive_values().iter().all(|v| (v * int(2)).is_integer());
    if all_integral {
        let mut acc = int(1);
        for (alpha, kv) in rs.positive_roots().zip(k.positive_values()) {
            if kv.is_zero() {
                continue;
            }
            let e = (kv * int(2))
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::InvalidMultiplicity("exponent too large".into()))?;
            let dot: Rational = alpha.iter().zip(x).map(|(a, b)| a * b).sum();
            acc *= pow(&dot.abs(), e);
        }
        Ok(WeightValue::Exact(acc))
    } else {
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        Ok(WeightValue::Float(weight_function_f64(rs, k, &xf)))
    }
}

pub fn weight_function_f64(rs: &RootSystem, k: &Multiplicity, x: &[f64]) -> f64 {
    rs.positive_roots()
        .zip(k.positive_values())
        .filter(|(_, kv)| !kv.is_zero())
        .map(|(alpha, kv)| {
            let dot: f64 = alpha.iter().zip(x).map(|(a, b)| to_f64(a) * b).sum();
            dot.abs().powf(2.0 * to_f64(kv))
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn root(v: &[i64]) -> Root {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn catalog_sizes() {
        let z = RootSystem::build(Family::Z2, 1).unwrap();
        assert_eq!(z.roots(), &[root(&[-1]), root(&[1])]);
        assert_eq!(z.positive_roots().count(), 1);

        let a2 = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.positive_roots().count(), 3);

        let b2 = RootSystem::build(Family::B, 2).unwrap();
        assert_eq!(b2.roots().len(), 8);
        assert_eq!(b2.root_orbits().len(), 2);
        assert!(b2.root_orbits().iter().all(|o| o.len() == 4));

        let d3 = RootSystem::build(Family::D, 3).unwrap();
        assert_eq!(d3.roots().len(), 12);
        assert_eq!(d3.root_orbits().len(), 1);
    }

    #[test]
    fn positive_system_splits_roots() {
        for (f, n) in [(Family::Z2, 3), (Family::A, 4), (Family::B, 3), (Family::D, 4)] {
            let rs = RootSystem::build(f, n).unwrap();
            assert_eq!(rs.positive_roots().count() * 2, rs.roots().len());
            for a in rs.positive_roots() {
                let neg: Root = a.iter().map(|c| -c).collect();
                assert!(rs.roots().contains(&neg));
                assert!(!rs.positive_roots().any(|b| *b == neg));
            }
        }
    }

    #[test]
    fn group_orders() {
        let z2 = RootSystem::build(Family::Z2, 2).unwrap().generate_group().unwrap();
        assert_eq!(z2.len(), 4);
        for g in z2.iter() {
            assert!(g
                .signed_permutation()
                .unwrap()
                .iter()
                .enumerate()
                .all(|(i, &(j, _))| i == j));
        }
        assert_eq!(
            RootSystem::build(Family::A, 3).unwrap().generate_group().unwrap().len(),
            6
        );
        assert_eq!(
            RootSystem::build(Family::B, 2).unwrap().generate_group().unwrap().len(),
            8
        );
        for (f, n) in [(Family::B, 3), (Family::D, 3), (Family::A, 4), (Family::D, 4)] {
            let rs = RootSystem::build(f, n).unwrap();
            assert_eq!(rs.generate_group().unwrap().len() as u128, rs.known_group_order());
        }
    }

    #[test]
    fn orbits() {
        let z = RootSystem::build(Family::Z2, 2).unwrap();
        let orbits: Vec<Vec<Root>> = z
            .root_orbits()
            .iter()
            .map(|o| o.iter().map(|&i| z.roots()[i].clone()).collect())
            .collect();
        assert_eq!(
            orbits,
            vec![vec![root(&[-1, 0]), root(&[1, 0])], vec![root(&[0, -1]), root(&[0, 1])]]
        );

        let a2 = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(a2.root_orbits().len(), 1);

        let b2 = RootSystem::build(Family::B, 2).unwrap();
        assert_eq!(b2.orbit_representative(0), &root(&[-1, -1]));
        assert_eq!(b2.orbit_representative(1), &root(&[-1, 0]));
        assert_eq!(RootSystem::build(Family::B, 3).unwrap().root_orbits().len(), 2);
        assert_eq!(RootSystem::build(Family::Z2, 3).unwrap().root_orbits().len(), 3);
    }

    #[test]
    fn unsupported_and_invalid() {
        assert!(matches!(resolve_catalog("I2(5)", 2), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(resolve_catalog("E8", 8), Err(Error::UnsupportedFamily(_))));
        assert_eq!(resolve_catalog("I2(3)", 0).unwrap(), (Family::A, 3));
        assert_eq!(resolve_catalog("I2(4)", 0).unwrap(), (Family::B, 2));
        assert!(RootSystem::build(Family::D, 1).is_err());
    }

    #[test]
    fn multiplicity_validation() {
        let b2 = RootSystem::build(Family::B, 2).unwrap();
        assert!(Multiplicity::new(&b2, vec![int(1)]).is_err());
        assert!(Multiplicity::new(&b2, vec![int(1), int(-1)]).is_err());
        let long_short: Vec<Rational> = b2
            .roots()
            .iter()
            .map(|r| {
                if r.iter().all(|c| !c.is_zero()) {
                    int(1)
                } else {
                    ratio(1, 2)
                }
            })
            .collect();
        let k = Multiplicity::from_root_values(&b2, &long_short).unwrap();
        assert_eq!(k.orbit_values(), &[int(1), ratio(1, 2)]);
        let mut broken = long_short.clone();
        broken[0] = int(7);
        assert!(Multiplicity::from_root_values(&b2, &broken).is_err());
    }

    #[test]
    fn gamma() {
        let z3 = RootSystem::build(Family::Z2, 3).unwrap();
        assert_eq!(gamma_k(&Multiplicity::uniform(&z3, ratio(2, 3)).unwrap()), int(2));
        let a2 = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(gamma_k(&Multiplicity::uniform(&a2, ratio(3, 4)).unwrap()), ratio(9, 4));
        assert_eq!(gamma_k(&Multiplicity::zero(&a2)), int(0));
    }

    #[test]
    fn weights() {
        let z = RootSystem::build(Family::Z2, 1).unwrap();
        let k = Multiplicity::uniform(&z, int(1)).unwrap();
        assert_eq!(weight_function(&z, &k, &[int(3)]).unwrap(), WeightValue::Exact(int(9)));

        let b2 = RootSystem::build(Family::B, 2).unwrap();
        let k = Multiplicity::uniform(&b2, int(1)).unwrap();
        assert_eq!(
            weight_function(&b2, &k, &[int(1), int(2)]).unwrap(),
            WeightValue::Exact(int(36))
        );
        assert_eq!(
            weight_function(&b2, &k, &[int(1), int(1)]).unwrap(),
            WeightValue::Exact(int(0))
        );

        let kq = Multiplicity::uniform(&b2, ratio(1, 3)).unwrap();
        let w = weight_function(&b2, &kq, &[int(1), int(2)]).unwrap();
        assert!(matches!(w, WeightValue::Float(_)));
        assert!((w.to_f64() - 6f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn reflections_fix_their_hyperplane() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::D, 3)] {
            let rs = RootSystem::build(f, n).unwrap();
            for (alpha, s) in rs.positive_roots().zip(rs.reflections()) {
                assert!(s.compose(s).unwrap().is_identity());
                let image = s.apply(alpha).unwrap();
                assert_eq!(image, alpha.iter().map(|c| -c).collect::<Root>());
                // basis of the hyperplane ⟨α, x⟩ = 0: v_j = α_p e_j - α_j e_p
                let p = alpha.iter().position(|c| !c.is_zero()).unwrap();
                for j in (0..n).filter(|&j| j != p) {
                    let mut v = vec![Rational::zero(); n];
                    v[j] = alpha[p].clone();
                    v[p] = -alpha[j].clone();
                    assert_eq!(s.apply(&v).unwrap(), v);
                }
            }
        }
    }
}
