//! Floating-point evaluation of the Dunkl kernel, the heat kernel `Γ_k`,
//! the density `θ_t` and the constant `c_k`.
//!
//! The kernel is summed degree by degree, `K(x, y) = Σ_n B_n` with
//! `B_n = Σ_{|ν|=n} m_ν(x) y^ν / ν!`. Floats are converted to rationals
//! exactly, the partial sum is kept exact and rounded once at the end, so
//! the only error terms are the truncated tail and that last rounding. The
//! tail uses `|B_n| ≤ (|x||y|)^n / n!`.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use statrs::function::gamma::gamma;

use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::group::{gamma_k, weight_function_f64, Family};
use crate::multi_index::MultiIndex;
use crate::quadrature::integrate_with_breakpoints;
use crate::rational::{from_bigint, from_f64_exact, int, ratio, to_f64, Rational};

/// How [`c_k_constant`] obtains `c_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CkMode {
    /// Closed form where it is elementary (`Z2^N`), quadrature otherwise.
    #[default]
    Auto,
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericEvalConfig {
    /// Relative target for real arguments, absolute target for `K(ix, y)`.
    pub tolerance: f64,
    pub max_degree: u32,
    pub c_k_mode: CkMode,
}

impl Default for NumericEvalConfig {
    fn default() -> Self {
        NumericEvalConfig {
            tolerance: 1e-12,
            max_degree: 200,
            c_k_mode: CkMode::Auto,
        }
    }
}

/// Smallest accepted tolerance; the final rounding alone costs `2ε`.
pub const MIN_TOLERANCE: f64 = 1e-15;

impl NumericEvalConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        NumericEvalConfig {
            tolerance,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance >= MIN_TOLERANCE && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be at least {MIN_TOLERANCE:e}, got {}",
                self.tolerance
            )));
        }
        if self.max_degree < 1 {
            return Err(Error::InvalidConfig("max_degree must be at least 1".into()));
        }
        Ok(())
    }
}

/// A kernel value with a bound on its absolute error. Real-argument results
/// have zero imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub error_bound: f64,
    /// Highest degree block included in the sum.
    pub degree: u32,
}

impl KernelValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }

    fn scaled(self, factor: f64) -> KernelValue {
        let value = self.value * factor;
        KernelValue {
            value,
            error_bound: self.error_bound * factor.abs() + 4.0 * f64::EPSILON * value.norm(),
            degree: self.degree,
        }
    }
}

fn exact_vec(v: &[f64]) -> Result<Vec<Rational>> {
    v.iter().map(|&x| from_f64_exact(x)).collect()
}

fn norm_f64(v: &[Rational]) -> f64 {
    v.iter().map(|x| to_f64(x).powi(2)).sum::<f64>().sqrt()
}

/// Exact powers `x_i^e`, extended on demand.
struct Powers {
    table: Vec<Vec<Rational>>,
}

impl Powers {
    fn new(x: &[Rational]) -> Self {
        Powers {
            table: x.iter().map(|_| vec![Rational::one()]).collect(),
        }
    }

    fn value(&mut self, x: &[Rational], nu: &MultiIndex) -> Rational {
        let mut acc = Rational::one();
        for (axis, &e) in nu.exponents().iter().enumerate() {
            let row = &mut self.table[axis];
            while row.len() <= e as usize {
                let next = row.last().unwrap() * &x[axis];
                row.push(next);
            }
            let p = &row[e as usize];
            if p.is_zero() {
                return Rational::zero();
            }
            acc *= p;
        }
        acc
    }
}

struct BlockSeries<'a> {
    ctx: &'a DunklContext,
    x: &'a [Rational],
    y: &'a [Rational],
    xp: Powers,
    yp: Powers,
}

impl<'a> BlockSeries<'a> {
    fn new(ctx: &'a DunklContext, x: &'a [Rational], y: &'a [Rational]) -> Result<Self> {
        for v in [x, y] {
            if v.len() != ctx.rank() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.rank(),
                    got: v.len(),
                });
            }
        }
        Ok(BlockSeries {
            ctx,
            x,
            y,
            xp: Powers::new(x),
            yp: Powers::new(y),
        })
    }

    /// `B_n = Σ_ρ x^ρ Σ_ν V_n[ρ, ν] y^ν / ν!`.
    fn block(&mut self, n: u32) -> Result<Rational> {
        let dm = self.ctx.degree_matrix(n)?;
        let ys: Vec<Rational> = dm
            .basis
            .iter()
            .map(|nu| self.yp.value(self.y, nu) / from_bigint(nu.factorial()))
            .collect();
        let mut acc = Rational::zero();
        for (r, rho) in dm.basis.iter().enumerate() {
            let xr = self.xp.value(self.x, rho);
            if xr.is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for (c, yc) in ys.iter().enumerate() {
                let v = dm.forward.get(r, c);
                if !v.is_zero() && !yc.is_zero() {
                    inner += v * yc;
                }
            }
            acc += xr * inner;
        }
        Ok(acc)
    }
}

/// Upper bound for `Σ_{m>n} a^m/m!` given `a^{n+1}/(n+1)!`; infinite until
/// the terms decrease geometrically.
fn tail_bound(a: f64, next_term: f64, n: u32) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let r = a / (n as f64 + 2.0);
    if r >= 1.0 {
        f64::INFINITY
    } else {
        next_term / (1.0 - r) * (1.0 + 1e-10)
    }
}

fn kernel_series(
    ctx: &DunklContext,
    x: &[Rational],
    y: &[Rational],
    imaginary: bool,
    cfg: &NumericEvalConfig,
) -> Result<KernelValue> {
    cfg.validate()?;
    let mut series = BlockSeries::new(ctx, x, y)?;
    let a = norm_f64(x) * norm_f64(y) * (1.0 + 1e-12);
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    // Float shadow of the partial sum, used to decide when to try stopping.
    let mut approx = Complex64::new(0.0, 0.0);
    // a^{n+1}/(n+1)! after processing degree n
    let mut next_term = a;
    let mut tail = f64::INFINITY;
    for n in 0..=cfg.max_degree {
        let b = series.block(n)?;
        if !b.is_zero() {
            let bf = to_f64(&b);
            match (imaginary, n % 4) {
                (false, _) | (true, 0) => {
                    re += b;
                    approx.re += bf;
                }
                (true, 1) => {
                    im += b;
                    approx.im += bf;
                }
                (true, 2) => {
                    re -= b;
                    approx.re -= bf;
                }
                _ => {
                    im -= b;
                    approx.im -= bf;
                }
            }
        }
        tail = tail_bound(a, next_term, n);
        next_term *= a / (n as f64 + 2.0);
        if tail.is_infinite() {
            continue;
        }
        let target = |v: f64| if imaginary { cfg.tolerance } else { cfg.tolerance * v };
        if tail > target(approx.norm()) * 2.0 {
            continue;
        }
        let value = Complex64::new(to_f64(&re), to_f64(&im));
        let rounding = 2.0 * f64::EPSILON * value.norm();
        if tail + rounding <= target(value.norm()) {
            return Ok(KernelValue {
                value,
                error_bound: tail + rounding,
                degree: n,
            });
        }
    }
    Err(Error::CapExceeded {
        max_degree: cfg.max_degree,
        tolerance: cfg.tolerance,
        tail,
    })
}

/// `K(x, y)` for real `x`, `y`, with relative tolerance `cfg.tolerance`.
pub fn kernel_eval(ctx: &DunklContext, x: &[f64], y: &[f64], cfg: &NumericEvalConfig) -> Result<KernelValue> {
    kernel_eval_exact(ctx, &exact_vec(x)?, &exact_vec(y)?, cfg)
}

/// `K(x, y)` at rational arguments.
pub fn kernel_eval_exact(
    ctx: &DunklContext,
    x: &[Rational],
    y: &[Rational],
    cfg: &NumericEvalConfig,
) -> Result<KernelValue> {
    kernel_series(ctx, x, y, false, cfg)
}

/// `K(ix, y)` for real `x`, `y`, with absolute tolerance `cfg.tolerance`.
pub fn kernel_eval_imaginary(ctx: &DunklContext, x: &[f64], y: &[f64], cfg: &NumericEvalConfig) -> Result<KernelValue> {
    kernel_series(ctx, &exact_vec(x)?, &exact_vec(y)?, true, cfg)
}

/// Degree blocks `B_0, ..., B_n` rounded to floats.
pub fn kernel_blocks(ctx: &DunklContext, x: &[f64], y: &[f64], n: u32) -> Result<Vec<f64>> {
    let (x, y) = (exact_vec(x)?, exact_vec(y)?);
    let mut series = BlockSeries::new(ctx, &x, &y)?;
    (0..=n).map(|d| series.block(d).map(|b| to_f64(&b))).collect()
}

/// `S_α(u) = Σ_n (u²/4)^n / (n! (α+1)_n)`, summed exactly until the
/// remainder bound drops below `rel` times the partial sum. The terms are
/// positive with decreasing ratios, so once the ratio `r` is below one the
/// remainder is at most `next / (1 - r)`.
fn bessel_series(alpha: &Rational, u: &Rational, rel: f64) -> (Rational, f64) {
    let q = u * u / int(4);
    let qf = to_f64(&q);
    let alpha_f = to_f64(alpha);
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut n: u32 = 0;
    loop {
        sum += &term;
        let next = &term * &q / (int(n as i64 + 1) * (alpha + int(n as i64 + 1)));
        let r_next = qf / ((n as f64 + 2.0) * (alpha_f + n as f64 + 2.0));
        if r_next < 1.0 {
            let bound = to_f64(&next) / (1.0 - r_next);
            if bound <= rel * to_f64(&sum) {
                return (sum, bound * (1.0 + 1e-10));
            }
        }
        term = next;
        n += 1;
    }
}

/// Rank-one kernel in closed form,
/// `K(z, w) = j_{k-1/2}(izw) + zw/(2k+1) · j_{k+1/2}(izw)`, from the power
/// series of the normalized Bessel functions.
pub fn kernel_z2_closed(k: &Rational, z: f64, w: f64) -> Result<f64> {
    kernel_z2_closed_with_bound(k, z, w).map(|(v, _)| v)
}

/// [`kernel_z2_closed`] with a bound on the absolute error.
pub fn kernel_z2_closed_with_bound(k: &Rational, z: f64, w: f64) -> Result<(f64, f64)> {
    if k.is_negative() {
        return Err(Error::InvalidMultiplicity("k must be non-negative".into()));
    }
    let u = from_f64_exact(z)? * from_f64_exact(w)?;
    let c = &u / (k * int(2) + int(1));
    // For u < 0 the two series nearly cancel, so the target is tightened
    // until the truncation error is small against the combined value.
    let mut rel = 1e-18;
    loop {
        let (s1, b1) = bessel_series(&(k - ratio(1, 2)), &u, rel);
        let (s2, b2) = bessel_series(&(k + ratio(1, 2)), &u, rel);
        let total = s1 + &c * s2;
        let value = to_f64(&total);
        let truncation = b1 + to_f64(&c).abs() * b2;
        if truncation <= 1e-17 * value.abs() || rel < 1e-300 {
            return Ok((value, truncation + 2.0 * f64::EPSILON * value.abs()));
        }
        rel *= (1e-18 * value.abs() / truncation).clamp(1e-300, 1e-2);
    }
}

/// `K(iz, w) = j_{k-1/2}(zw) + i·zw/(2k+1) · j_{k+1/2}(zw)`, summed in floating
/// point.
pub fn kernel_z2_closed_imaginary(k: &Rational, z: f64, w: f64) -> Result<Complex64> {
    kernel_z2_closed_imaginary_with_bound(k, z, w).map(|(v, _)| v)
}

/// [`kernel_z2_closed_imaginary`] with a bound on the absolute error: the
/// first omitted term of each alternating series plus `4ε` times the sum of
/// term magnitudes.
pub fn kernel_z2_closed_imaginary_with_bound(k: &Rational, z: f64, w: f64) -> Result<(Complex64, f64)> {
    if k.is_negative() {
        return Err(Error::InvalidMultiplicity("k must be non-negative".into()));
    }
    let kf = to_f64(k);
    let u = z * w;
    let (s1, b1) = alternating_bessel_f64(kf - 0.5, u);
    let (s2, b2) = alternating_bessel_f64(kf + 0.5, u);
    let c = u / (2.0 * kf + 1.0);
    Ok((Complex64::new(s1, c * s2), b1 + c.abs() * b2 + 4.0 * f64::EPSILON))
}

fn alternating_bessel_f64(alpha: f64, u: f64) -> (f64, f64) {
    let q = u * u / 4.0;
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    let mut term = 1.0;
    let mut n = 0.0;
    loop {
        sum += term;
        magnitude += term.abs();
        let ratio = q / ((n + 1.0) * (alpha + n + 1.0));
        let next = -term * ratio;
        if ratio < 1.0 && next.abs() <= f64::EPSILON * 1e-3 * magnitude.max(1.0) {
            return (sum, next.abs() + 4.0 * f64::EPSILON * magnitude);
        }
        term = next;
        n += 1.0;
    }
}

fn is_coordinate_system(ctx: &DunklContext) -> bool {
    ctx.root_system().family() == Family::Z2
}

/// `c_k = (∫ e^{-|x|²} w_k(x) dx)^{-1}`.
///
/// Closed form on `Z2^N`: `c_k^{-1} = Π_i Γ(k_i + 1/2)`. Quadrature uses
/// polar coordinates, `c_k^{-1} = Γ(γ + N/2)/2 · ∫_{S^{N-1}} w_k`, for
/// `N ≤ 3`.
pub fn c_k_constant(ctx: &DunklContext, cfg: &NumericEvalConfig) -> Result<f64> {
    let closed = is_coordinate_system(ctx);
    match cfg.c_k_mode {
        CkMode::ClosedForm if !closed => Err(Error::InvalidConfig(format!(
            "no closed form for c_k on {}",
            ctx.root_system().label()
        ))),
        CkMode::ClosedForm | CkMode::Auto if closed => Ok(c_k_closed_form(ctx)),
        _ => c_k_quadrature(ctx, cfg),
    }
}

fn c_k_closed_form(ctx: &DunklContext) -> f64 {
    ctx.multiplicity()
        .positive_values()
        .iter()
        .map(|k| 1.0 / gamma(to_f64(k) + 0.5))
        .product()
}

fn c_k_quadrature(ctx: &DunklContext, cfg: &NumericEvalConfig) -> Result<f64> {
    let rs = ctx.root_system();
    let k = ctx.multiplicity();
    let n = ctx.rank();
    let w = |x: &[f64]| weight_function_f64(rs, k, x);
    let tol = (cfg.tolerance * 1e-2).max(1e-13);
    let roots: Vec<Vec<f64>> = rs.positive_roots().map(|a| a.iter().map(to_f64).collect()).collect();
    let sphere = match n {
        1 => w(&[1.0]) + w(&[-1.0]),
        2 => {
            let tau = std::f64::consts::TAU;
            let mut pts = vec![0.0, tau];
            for a in &roots {
                // ⟨α, (cos θ, sin θ)⟩ = 0
                let base = (-a[0]).atan2(a[1]).rem_euclid(std::f64::consts::PI);
                pts.extend([base, base + std::f64::consts::PI]);
            }
            integrate_with_breakpoints(|th| w(&[th.cos(), th.sin()]), &pts, 0.0, tol)?.value
        }
        3 => {
            let pi = std::f64::consts::PI;
            let mut outer_pts = vec![0.0, pi / 2.0, pi];
            for a in &roots {
                let rho = a[0].hypot(a[1]);
                if rho > 0.0 && a[2] != 0.0 {
                    let phi0 = a[2].abs().atan2(rho);
                    outer_pts.extend([phi0, pi - phi0]);
                }
            }
            let inner = |phi: f64| -> Result<f64> {
                let (s, c) = phi.sin_cos();
                let mut pts = vec![0.0, std::f64::consts::TAU];
                for a in &roots {
                    // a0 s cos θ + a1 s sin θ = -a2 c
                    let (p, q, r) = (a[0] * s, a[1] * s, -a[2] * c);
                    let amp = p.hypot(q);
                    if amp > 0.0 && r.abs() <= amp {
                        let base = q.atan2(p);
                        let d = (r / amp).acos();
                        for th in [base + d, base - d] {
                            pts.push(th.rem_euclid(std::f64::consts::TAU));
                        }
                    }
                }
                let v = integrate_with_breakpoints(|th| w(&[s * th.cos(), s * th.sin(), c]), &pts, 0.0, tol)?;
                Ok(v.value * s)
            };
            let failure = std::cell::RefCell::new(None);
            let v = integrate_with_breakpoints(
                |phi| match inner(phi) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        0.0
                    }
                },
                &outer_pts,
                0.0,
                tol,
            )?;
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            v.value
        }
        _ => {
            return Err(Error::Quadrature(format!(
                "quadrature for c_k supports rank at most 3, got {n}"
            )))
        }
    };
    let g = to_f64(&gamma_k(k));
    Ok(2.0 / (gamma(g + n as f64 / 2.0) * sphere))
}

fn check_time(t: f64) -> Result<Rational> {
    if t.is_nan() || t <= 0.0 || !t.is_finite() {
        return Err(Error::NonPositiveTime);
    }
    from_f64_exact(t)
}

/// `Γ_k(x, y, t) = c_k (4t)^{-γ-N/2} e^{-(|x|²+|y|²)/4t} K(x, y/2t)`.
pub fn heat_kernel_eval(
    ctx: &DunklContext,
    x: &[f64],
    y: &[f64],
    t: f64,
    cfg: &NumericEvalConfig,
) -> Result<KernelValue> {
    let tr = check_time(t)?;
    let c_k = c_k_constant(ctx, cfg)?;
    heat_kernel_with_constant(ctx, x, y, &tr, c_k, cfg)
}

fn heat_kernel_with_constant(
    ctx: &DunklContext,
    x: &[f64],
    y: &[f64],
    t: &Rational,
    c_k: f64,
    cfg: &NumericEvalConfig,
) -> Result<KernelValue> {
    let xr = exact_vec(x)?;
    let scaled: Vec<Rational> = exact_vec(y)?.iter().map(|v| v / (t * int(2))).collect();
    let k = kernel_eval_exact(ctx, &xr, &scaled, cfg)?;
    let tf = to_f64(t);
    let g = to_f64(&gamma_k(ctx.multiplicity()));
    let n = ctx.rank() as f64;
    let sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
    let prefactor = c_k * (4.0 * tf).powf(-g - n / 2.0) * (-(sq(x) + sq(y)) / (4.0 * tf)).exp();
    Ok(k.scaled(prefactor))
}

/// `θ_t(x, y) = e^{-|x|²/4t} K(x, y/2t)`.
pub fn density_theta(ctx: &DunklContext, t: f64, x: &[f64], y: &[f64], cfg: &NumericEvalConfig) -> Result<KernelValue> {
    let tr = check_time(t)?;
    let xr = exact_vec(x)?;
    let scaled: Vec<Rational> = exact_vec(y)?.iter().map(|v| v / (&tr * int(2))).collect();
    let k = kernel_eval_exact(ctx, &xr, &scaled, cfg)?;
    let sq: f64 = x.iter().map(|a| a * a).sum();
    Ok(k.scaled((-sq / (4.0 * t)).exp()))
}

/// `∫ Γ_k(x, y, t) w_k(y) dy` on a rank-one group, by adaptive quadrature
/// over `|y - x| ≤ 12√t · (1 + |x|)`.
pub fn heat_kernel_mass_rank_one(ctx: &DunklContext, x: f64, t: f64, cfg: &NumericEvalConfig) -> Result<f64> {
    if ctx.rank() != 1 {
        return Err(Error::InvalidConfig("rank-one quadrature only".into()));
    }
    let tr = check_time(t)?;
    let c_k = c_k_constant(ctx, cfg)?;
    let rs = ctx.root_system();
    let k = ctx.multiplicity();
    let half_width = 12.0 * t.sqrt() * (1.0 + x.abs());
    let failure = std::cell::RefCell::new(None);
    let f = |y: f64| match heat_kernel_with_constant(ctx, &[x], &[y], &tr, c_k, cfg) {
        Ok(v) => v.re() * weight_function_f64(rs, k, &[y]),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let r = integrate_with_breakpoints(f, &[-half_width - x.abs(), 0.0, half_width + x.abs()], 1e-12, 1e-10)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r.value)
}

/// Outcome of [`kernel_bound_checks`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(msg());
        }
    }
}

/// Scale factors used for the homogeneity check `K(λx, y) = K(x, λy)`.
pub const SCALING_SAMPLES: [f64; 3] = [0.5, -1.0, 2.0];

/// Checks at each sample `(x, y)`: `K(x, y) > 0`, `|K(ix, y)| ≤ 1`,
/// `K(gx, gy) = K(x, y)` for every `g ∈ W`, `K(λx, y) = K(x, λy)`, and the
/// block bounds `|B_n| ≤ (|x||y|)^n/n!`.
pub fn kernel_bound_checks(
    ctx: &DunklContext,
    samples: &[(Vec<f64>, Vec<f64>)],
    cfg: &NumericEvalConfig,
) -> Result<BoundReport> {
    let group = ctx.root_system().generate_group()?;
    let tol = cfg.tolerance;
    let mut report = BoundReport::default();
    for (x, y) in samples {
        let k = kernel_eval(ctx, x, y, cfg)?;
        report.check(k.re() > 0.0, || format!("K({x:?}, {y:?}) = {} is not positive", k.re()));

        let ki = kernel_eval_imaginary(ctx, x, y, cfg)?;
        report.check(ki.value.norm() <= 1.0 + tol + ki.error_bound, || {
            format!("|K(i{x:?}, {y:?})| = {} exceeds 1", ki.value.norm())
        });

        for g in group.iter() {
            let gk = kernel_eval(ctx, &g.apply_f64(x), &g.apply_f64(y), cfg)?;
            let diff = (gk.re() - k.re()).abs();
            report.check(diff <= gk.error_bound + k.error_bound + tol * k.re().abs(), || {
                format!("K(gx, gy) differs from K(x, y) by {diff:e} at x = {x:?}, y = {y:?}")
            });
        }

        for lambda in SCALING_SAMPLES {
            let lx: Vec<f64> = x.iter().map(|v| v * lambda).collect();
            let ly: Vec<f64> = y.iter().map(|v| v * lambda).collect();
            let a = kernel_eval(ctx, &lx, y, cfg)?;
            let b = kernel_eval(ctx, x, &ly, cfg)?;
            let diff = (a.re() - b.re()).abs();
            report.check(diff <= a.error_bound + b.error_bound, || {
                format!("K(λx, y) ≠ K(x, λy) for λ = {lambda} at x = {x:?}, y = {y:?}")
            });
        }

        let a = x.iter().map(|v| v * v).sum::<f64>().sqrt() * y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut bound = 1.0;
        for (n, b) in kernel_blocks(ctx, x, y, k.degree)?.into_iter().enumerate() {
            if n > 0 {
                bound *= a / n as f64;
            }
            report.check(b.abs() <= bound * (1.0 + 1e-12) + f64::MIN_POSITIVE, || {
                format!("degree-{n} block {b:e} exceeds {bound:e} at x = {x:?}, y = {y:?}")
            });
        }
    }
    Ok(report)
}
