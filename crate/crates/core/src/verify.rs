//! Exact identity suites over one context: each case is a rational or
//! polynomial equation that must hold with zero tolerance.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::appell::{a_lambda, GaussianSpec};
use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::par::{self, Strategy};
use crate::poly::Polynomial;
use crate::rational::{format_rational, from_bigint, int, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Biorthogonality,
    Macdonald,
    Rodriguez,
    Pairing,
    Recursions,
    Intertwining,
    Commutativity,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Biorthogonality,
        Suite::Macdonald,
        Suite::Rodriguez,
        Suite::Pairing,
        Suite::Recursions,
        Suite::Intertwining,
        Suite::Commutativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Biorthogonality => "biorthogonality",
            Suite::Macdonald => "macdonald",
            Suite::Rodriguez => "rodriguez",
            Suite::Pairing => "pairing",
            Suite::Recursions => "recursions",
            Suite::Intertwining => "intertwining",
            Suite::Commutativity => "commutativity",
        }
    }

    /// The identity the suite checks.
    pub fn identity(self) -> &'static str {
        match self {
            Suite::Biorthogonality => "∫ R_ν(t)·S_ρ(t) dP_t(0,·) = ν!·δ(ν,ρ); ∫ p·R_ν = ∫ p·S_ν = 0 for deg p < |ν|",
            Suite::Macdonald => "[p,q]_k = (2t)^-n ∫ e^{-tΔ}p · e^{-tΔ}q dP_t(0,·); both vanish across degrees",
            Suite::Rodriguez => {
                "S_ν(t) = (-1)^|ν| e^{|x|²/4t} T^ν e^{-|x|²/4t}; Σ binom(ν,ρ) a_{ν-ρ}(t) m_ρ = e^{-tΔ} m_ν"
            }
            Suite::Pairing => "[x^ν, m_ρ]_k = ν!·δ(ν,ρ)",
            Suite::Recursions => "T_j R_{ν+e_j}(t) = (ν_j+1) R_ν(t); S_{ν+e_j}(1/2) = T_j^* S_ν(1/2)",
            Suite::Intertwining => "T_i V = V ∂_i; V V^-1 = id",
            Suite::Commutativity => "T_i T_j = T_j T_i",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Deliberate corruption used to check that suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to `a_λ(t)` at `λ = 2e_1`.
    PerturbALambda,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_degree: u32,
    pub t: Rational,
    pub strategy: Strategy,
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(max_degree: u32, t: Rational) -> Self {
        VerifyConfig {
            max_degree,
            t,
            strategy: Strategy::available(),
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Sort key: total degree of the case, then its text.
    degree: u32,
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    /// Sorted by degree, so the first entry is a minimal counterexample.
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn counterexample(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<16} {:>6} cases  {}",
            self.suite.name(),
            self.checked,
            self.suite.identity()
        )?;
        if let Some(c) = self.counterexample() {
            write!(
                f,
                "\n     {} failing; minimal counterexample {}: {}",
                self.failures.len(),
                c.case,
                c.detail
            )?;
        }
        Ok(())
    }
}

fn fmt_index(nu: &MultiIndex) -> String {
    let parts: Vec<String> = nu.exponents().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

struct Collector {
    checked: usize,
    failures: Vec<Failure>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, results: Vec<Result<Vec<Outcome>>>) -> Result<()> {
        for r in results {
            for o in r? {
                self.checked += 1;
                if let Some(f) = o {
                    self.failures.push(f);
                }
            }
        }
        Ok(())
    }

    fn finish(mut self, suite: Suite) -> SuiteReport {
        self.failures
            .sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.case.cmp(&b.case)));
        SuiteReport {
            suite,
            checked: self.checked,
            failures: self.failures,
        }
    }
}

type Outcome = Option<Failure>;

fn compare_rational(degree: u32, case: impl FnOnce() -> String, got: &Rational, want: &Rational) -> Outcome {
    (got != want).then(|| Failure {
        degree,
        case: case(),
        detail: format!("got {}, expected {}", format_rational(got), format_rational(want)),
    })
}

fn compare_poly(degree: u32, case: impl FnOnce() -> String, got: &Polynomial, want: &Polynomial) -> Outcome {
    (got != want).then(|| Failure {
        degree,
        case: case(),
        detail: format!("{got} ≠ {want}"),
    })
}

/// Runs one suite.
pub fn run_suite(ctx: &DunklContext, suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let needs_t = !matches!(suite, Suite::Intertwining | Suite::Commutativity | Suite::Pairing);
    if needs_t && !cfg.t.is_positive() {
        return Err(Error::NonPositiveTime);
    }
    // Fill per-degree caches before fanning out.
    let warm = match suite {
        Suite::Biorthogonality | Suite::Macdonald => 2 * cfg.max_degree,
        _ => cfg.max_degree + 1,
    };
    for n in 0..=warm {
        ctx.degree_matrix(n)?;
    }
    let mut out = Collector::new();
    match suite {
        Suite::Biorthogonality => biorthogonality(ctx, cfg, &mut out)?,
        Suite::Macdonald => macdonald(ctx, cfg, &mut out)?,
        Suite::Rodriguez => rodriguez(ctx, cfg, &mut out)?,
        Suite::Pairing => pairing(ctx, cfg, &mut out)?,
        Suite::Recursions => recursions(ctx, cfg, &mut out)?,
        Suite::Intertwining => intertwining(ctx, cfg, &mut out)?,
        Suite::Commutativity => commutativity(ctx, cfg, &mut out)?,
    }
    Ok(out.finish(suite))
}

/// Runs several suites in order.
pub fn run_suites(ctx: &DunklContext, suites: &[Suite], cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    suites.iter().map(|&s| run_suite(ctx, s, cfg)).collect()
}

fn character(ctx: &DunklContext, nu: &MultiIndex, t: &Rational, fault: Option<Fault>) -> Result<Polynomial> {
    match fault {
        None => ctx.appell_character(nu, t),
        Some(Fault::PerturbALambda) => {
            let target = MultiIndex::unit(nu.rank(), 0).doubled();
            ctx.appell_character_with(nu, t, |lambda, t| {
                let a = a_lambda(lambda, t);
                if *lambda == target {
                    a + Rational::one()
                } else {
                    a
                }
            })
        }
    }
}

fn biorthogonality(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let t = &cfg.t;
    let spec = GaussianSpec::centered(ctx.rank(), t.clone());
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let r: Vec<Polynomial> = par::try_map(cfg.strategy, &indices, |nu| character(ctx, nu, t, cfg.fault))?;
    let s: Vec<Polynomial> = par::try_map(cfg.strategy, &indices, |nu| ctx.appell_cocharacter(nu, t))?;
    let rows: Vec<usize> = (0..indices.len()).collect();
    let results = par::map(cfg.strategy, &rows, |&i| {
        let nu = &indices[i];
        let mut v = Vec::with_capacity(indices.len() * 2);
        for (j, rho) in indices.iter().enumerate() {
            let got = ctx.gaussian_integrate(&(&r[i] * &s[j]), &spec)?;
            let want = if i == j {
                from_bigint(nu.factorial())
            } else {
                Rational::zero()
            };
            v.push(compare_rational(
                nu.degree().max(rho.degree()),
                || format!("ν={} ρ={}", fmt_index(nu), fmt_index(rho)),
                &got,
                &want,
            ));
            // lower-degree monomials integrate to zero against R_ν and S_ν
            if rho.degree() < nu.degree() {
                let p = Polynomial::x_pow(rho);
                for (name, q) in [("R", &r[i]), ("S", &s[i])] {
                    let got = ctx.gaussian_integrate(&(&p * q), &spec)?;
                    v.push(compare_rational(
                        nu.degree(),
                        || format!("ν={} ∫x^{}·{name}_ν", fmt_index(nu), fmt_index(rho)),
                        &got,
                        &Rational::zero(),
                    ));
                }
            }
        }
        Ok(v)
    });
    out.absorb(results)
}

fn macdonald(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let t = &cfg.t;
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let results = par::map(cfg.strategy, &indices, |nu| {
        let p = Polynomial::x_pow(nu);
        let mut v = Vec::new();
        for rho in &indices {
            let q = Polynomial::x_pow(rho);
            let case = || format!("p=x^{} q=x^{}", fmt_index(nu), fmt_index(rho));
            let degree = nu.degree().max(rho.degree());
            if nu.degree() == rho.degree() {
                let (l, r) = ctx.macdonald_identity_check(&p, &q, t)?;
                v.push(compare_rational(degree, case, &l, &r));
            } else {
                let (l, r) = ctx.macdonald_cross_degree(&p, &q, t)?;
                let zero = Rational::zero();
                v.push(compare_rational(degree, case, &l, &zero));
                v.push(compare_rational(degree, case, &r, &zero));
            }
        }
        Ok(v)
    });
    out.absorb(results)
}

fn rodriguez(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let t = &cfg.t;
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let results = par::map(cfg.strategy, &indices, |nu| {
        let d = nu.degree();
        let s = ctx.appell_cocharacter(nu, t)?;
        let rod = ctx.rodriguez_cocharacter(nu, t)?;
        let r = character(ctx, nu, t, cfg.fault)?;
        let heat = ctx.character_via_heat(nu, t)?;
        Ok(vec![
            compare_poly(d, || format!("cocharacter ν={}", fmt_index(nu)), &rod, &s),
            compare_poly(d, || format!("character ν={}", fmt_index(nu)), &r, &heat),
        ])
    });
    out.absorb(results)
}

fn pairing(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let moments: Vec<Polynomial> = par::try_map(cfg.strategy, &indices, |rho| ctx.moment_function(rho))?;
    let results = par::map(cfg.strategy, &indices, |nu| {
        let p = Polynomial::x_pow(nu);
        let mut v = Vec::with_capacity(indices.len());
        for (rho, m) in indices.iter().zip(&moments) {
            let got = ctx.pairing(&p, m)?;
            let want = if nu == rho {
                from_bigint(nu.factorial())
            } else {
                Rational::zero()
            };
            v.push(compare_rational(
                nu.degree().max(rho.degree()),
                || format!("ν={} ρ={}", fmt_index(nu), fmt_index(rho)),
                &got,
                &want,
            ));
        }
        Ok(v)
    });
    out.absorb(results)
}

fn recursions(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let t = &cfg.t;
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let results = par::map(cfg.strategy, &indices, |nu| {
        let mut v = Vec::new();
        for j in 0..ctx.rank() {
            let up = nu.add_unit(j);
            let character_sides = (
                ctx.dunkl(j, &character(ctx, &up, t, cfg.fault)?)?,
                character(ctx, nu, t, cfg.fault)?.scale(&int(nu.get(j) as i64 + 1)),
            );
            let half = ratio(1, 2);
            let cocharacter_sides = (
                ctx.appell_cocharacter(&up, &half)?,
                ctx.adjoint(j, &ctx.appell_cocharacter(nu, &half)?)?,
            );
            let d = nu.degree() + 1;
            v.push(compare_poly(
                d,
                || format!("character ν={} j={}", fmt_index(nu), j + 1),
                &character_sides.0,
                &character_sides.1,
            ));
            v.push(compare_poly(
                d,
                || format!("cocharacter ν={} j={}", fmt_index(nu), j + 1),
                &cocharacter_sides.0,
                &cocharacter_sides.1,
            ));
        }
        Ok(v)
    });
    out.absorb(results)
}

fn intertwining(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let degrees: Vec<u32> = (0..=cfg.max_degree).collect();
    let results = par::map(cfg.strategy, &degrees, |&n| {
        let mut v = Vec::new();
        let dm = ctx.degree_matrix(n)?;
        v.push((!dm.forward.mul(&dm.inverse)?.is_identity()).then(|| Failure {
            degree: n,
            case: format!("degree {n}"),
            detail: "V·V^-1 is not the identity".into(),
        }));
        for nu in &dm.basis {
            let x_nu = Polynomial::x_pow(nu);
            let v_x = ctx.apply_v(&x_nu)?;
            for i in 0..ctx.rank() {
                let lhs = ctx.dunkl(i, &v_x)?;
                let rhs = ctx.apply_v(&x_nu.partial_derivative(i)?)?;
                v.push(compare_poly(
                    n,
                    || format!("x^{} i={}", fmt_index(nu), i + 1),
                    &lhs,
                    &rhs,
                ));
            }
        }
        Ok(v)
    });
    out.absorb(results)
}

fn commutativity(ctx: &DunklContext, cfg: &VerifyConfig, out: &mut Collector) -> Result<()> {
    let indices = MultiIndex::up_to_degree(ctx.rank(), cfg.max_degree);
    let results = par::map(cfg.strategy, &indices, |nu| {
        let p = Polynomial::x_pow(nu);
        let mut v = Vec::new();
        let once: Vec<Polynomial> = (0..ctx.rank()).map(|i| ctx.dunkl(i, &p)).collect::<Result<_>>()?;
        for i in 0..ctx.rank() {
            for j in i + 1..ctx.rank() {
                let a = ctx.dunkl(i, &once[j])?;
                let b = ctx.dunkl(j, &once[i])?;
                v.push(compare_poly(
                    nu.degree(),
                    || format!("x^{} i={} j={}", fmt_index(nu), i + 1, j + 1),
                    &a,
                    &b,
                ));
            }
        }
        Ok(v)
    });
    out.absorb(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_b2() {
        let ctx = DunklContext::from_catalog("B", 2, vec![int(1), ratio(1, 2)]).unwrap();
        let cfg = VerifyConfig::new(3, ratio(1, 2));
        for report in run_suites(&ctx, &Suite::ALL, &cfg).unwrap() {
            assert!(report.passed(), "{report}");
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn fault_is_detected_with_minimal_counterexample() {
        let ctx = DunklContext::from_catalog("Z2", 2, vec![ratio(1, 2), int(2)]).unwrap();
        let mut cfg = VerifyConfig::new(3, ratio(1, 4));
        cfg.fault = Some(Fault::PerturbALambda);
        let report = run_suite(&ctx, Suite::Biorthogonality, &cfg).unwrap();
        assert!(!report.passed());
        let c = report.counterexample().unwrap();
        assert!(c.case.contains("(2,0)"), "{}", c.case);
        assert!(report.failures.iter().any(|f| f.case == "ν=(2,0) ρ=(0,0)"));
        let report = run_suite(&ctx, Suite::Rodriguez, &cfg).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let ctx = DunklContext::from_catalog("A", 3, vec![ratio(3, 4)]).unwrap();
        let mut cfg = VerifyConfig::new(2, ratio(2, 1));
        cfg.fault = Some(Fault::PerturbALambda);
        cfg.strategy = Strategy::Sequential;
        let a = run_suite(&ctx, Suite::Biorthogonality, &cfg).unwrap();
        cfg.strategy = Strategy::Parallel;
        let b = run_suite(&ctx, Suite::Biorthogonality, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
