//! The special vector `f0`, the 1-cocycle `β(g) = T(g) f0 − f0`, its norms
//! and divergence diagnostics.
//!
//! `f0(m) = e^{-|m|} / |m|^{p²/2}` has infinite norm (the radial integrand
//! degenerates to `e^{-2r}/r`), yet `β(g)` is square integrable for every
//! `g` when the multiplier exponent is the matched `q = p²/2` — the numeric
//! witnesses of both facts live here.  Cocycle norms are computed by two
//! routes that must agree:
//!
//! * closed form: a single sphere integral of a logarithmic integrand,
//!   obtained by integrating the radial factor exactly
//!   (`∫ (e^{-ar} - e^{-br}) r⁻¹ dr = log(b/a)` and its cosine variant);
//! * direct: nested quadrature, an adaptive radial integral of
//!   `|β(rω)|² r^{p²-1}` per sampled direction.
//!
//! Mismatched exponents (`q ≠ p²/2`) make the radial integrand approach a
//! positive constant times `1/r` at the origin; those norms are analyzed by
//! explicit truncation curves and divergence-slope fits, never by letting a
//! quadrature fail silently.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{pairing_unchecked, PElement, SkewHermitian, TriangularS};
use crate::orbit::{SignVector, SphereDirection};
use crate::quadrature::{
    default_delta_grid, fit_divergence, radial_integral, sphere_area, sphere_integral,
    sphere_samples_try, DivergenceFit, Estimate, QuadratureSpec, Truncation,
};
use crate::representation::{
    operator_norm_estimate, pow_q, t_group, unitarity_report, Multiplier, OrbitFunction,
    UnitarityReport,
};

const PARTNER_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

// ---------------------------------------------------------------------------
// Special vector
// ---------------------------------------------------------------------------

/// `f0(m) = e^{-|m|} / |m|^exponent`, defaulting to the exponent `p²/2`
/// that matches the standard multiplier.  Other exponents realize the wider
/// family `u(m)/|m|^q`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpecialVector {
    dim: usize,
    exponent: f64,
}

impl SpecialVector {
    /// The distinguished exponent `p²/2`.
    pub fn standard(p: usize) -> Self {
        Self {
            dim: p,
            exponent: (p * p) as f64 / 2.0,
        }
    }

    pub fn with_exponent(p: usize, exponent: f64) -> Result<Self> {
        if !(exponent > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "special vector exponent must be positive, got {exponent}"
            )));
        }
        Ok(Self { dim: p, exponent })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn eval_radius(&self, r: f64) -> f64 {
        (-r).exp() * pow_q(r, -self.exponent)
    }

    pub fn eval(&self, m: &SkewHermitian) -> f64 {
        self.eval_radius(m.norm())
    }

    pub fn to_orbit_function(&self) -> OrbitFunction {
        let sv = *self;
        OrbitFunction::with_ray(
            self.dim,
            format!("f0[p={},k={}]", self.dim, self.exponent),
            move |m| num_complex::Complex64::new(sv.eval_radius(m.norm()), 0.0),
            move |_w| Box::new(move |r| num_complex::Complex64::new(sv.eval_radius(r), 0.0)),
        )
    }
}

fn require_matched(q: f64, f0: &SpecialVector, p: usize) -> Result<f64> {
    let k = (p * p) as f64 / 2.0;
    if (q - k).abs() > 1e-12 || (f0.exponent - k).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "matched exponents q = f0.exponent = p²/2 = {k} required (got q = {q}, \
             exponent = {}); use corollary2_divergence for the mismatched case",
            f0.exponent
        )));
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// The cocycle
// ---------------------------------------------------------------------------

/// `β(g) = T(g) f0 − f0` as a lazily evaluable function on the orbit.
pub fn beta(g: &PElement, a: &Multiplier, f0: &SpecialVector) -> Result<OrbitFunction> {
    if g.dim() != f0.dim() {
        return Err(Error::DimensionMismatch {
            expected: f0.dim(),
            got: g.dim(),
        });
    }
    let f = f0.to_orbit_function();
    t_group(g, a, &f)?.minus(&f)
}

/// Max over the probe points of
/// `|β(g1·g2)(m) − β(g1)(m) − (T(g1) β(g2))(m)|`.
///
/// The identity holds pointwise by algebra, so the result is pure roundoff;
/// it scales with machine epsilon, not with any quadrature budget.
pub fn cocycle_identity_residual(
    g1: &PElement,
    g2: &PElement,
    a: &Multiplier,
    f0: &SpecialVector,
    probes: &[SkewHermitian],
) -> Result<f64> {
    let b12 = beta(&g1.compose(g2)?, a, f0)?;
    let b1 = beta(g1, a, f0)?;
    let b2 = beta(g2, a, f0)?;
    let tb2 = t_group(g1, a, &b2)?;
    let mut worst = 0.0f64;
    for m in probes {
        let r = (b12.eval(m) - b1.eval(m) - tb2.eval(m)).norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Closed-form norms
// ---------------------------------------------------------------------------

/// `‖β(n)‖² = ∫_Ω log(1 + ¼ Tr(nω)²) dω`.
pub fn beta_n_norm_closed(n: &SkewHermitian, spec: &QuadratureSpec) -> Result<Estimate> {
    let p = n.dim();
    sphere_integral(
        |w| {
            let t = pairing_unchecked(n, w.as_skew());
            (0.25 * t * t).ln_1p()
        },
        p,
        spec,
    )
}

/// `‖β(s0)‖² = ∫_Ω log((1 + λ)² / (4λ)) dω` with `λ = |s0* ω s0|`.
/// The integrand is ≥ 0 pointwise (AM–GM).
pub fn beta_s_norm_closed(s0: &TriangularS, spec: &QuadratureSpec) -> Result<Estimate> {
    let p = s0.dim();
    sphere_integral(
        |w| {
            let lam = s0.act_on(w.as_skew()).expect("same dimension").norm();
            2.0 * (0.5 * (1.0 + lam)).ln() - lam.ln()
        },
        p,
        spec,
    )
}

/// Closed-form norm for a general element `g = (s, n)` with the matched
/// multiplier: per direction,
/// `log((1+λ)²/(4λ)) + log(1 + μ²/(1+λ)²)` with `λ = |s*ωs|` and
/// `μ = Tr(n · s*ωs)`.  This reduces to the two specializations above and
/// is cross-checked against [`beta_norm_direct`].
pub fn beta_norm_closed(g: &PElement, spec: &QuadratureSpec) -> Result<Estimate> {
    let p = g.dim();
    sphere_integral(
        |w| {
            let image = g.s().act_on(w.as_skew()).expect("same dimension");
            let lam = image.norm();
            let mu = pairing_unchecked(g.n(), &image);
            let base = 2.0 * (0.5 * (1.0 + lam)).ln() - lam.ln();
            base + (mu * mu / ((1.0 + lam) * (1.0 + lam))).ln_1p()
        },
        p,
        spec,
    )
}

// ---------------------------------------------------------------------------
// Direct norm
// ---------------------------------------------------------------------------

/// Runs `eval` once per sampled direction.  On the two-point sphere of
/// `p = 1` the two possible values are computed once and reused — sampled
/// directions there are bit-exactly `±i`, so this changes nothing.
fn mc_over_sphere<T, F>(p: usize, spec: &QuadratureSpec, eval: F) -> Result<Vec<T>>
where
    T: Clone + Send + Sync,
    F: Fn(&SphereDirection) -> Result<T> + Sync,
{
    if p == 1 {
        let plus = SphereDirection::new(SkewHermitian::scalar_imag(1.0))?;
        let minus = SphereDirection::new(SkewHermitian::scalar_imag(-1.0))?;
        let v_plus = eval(&plus)?;
        let v_minus = eval(&minus)?;
        sphere_samples_try(
            |_i, w| {
                Ok(if w.as_skew().get(0, 0).im > 0.0 {
                    v_plus.clone()
                } else {
                    v_minus.clone()
                })
            },
            1,
            spec,
        )
    } else {
        sphere_samples_try(|_i, w| eval(w), p, spec)
    }
}

/// `‖β(g)‖²` by nested quadrature: for every sampled direction, an adaptive
/// radial integral of `|β(rω)|² r^{p²-1}` over `[0, r_max]`, then the
/// sphere average times the sphere mass.
///
/// Requires the matched exponents `a.q = f0.exponent = p²/2` (otherwise the
/// radial integral diverges; use [`corollary2_divergence`]).  The exponential
/// tail beyond `r_max` is bounded analytically per direction with the decay
/// rate `2·min(1, λ(ω))` and folded into the error budget; a tail bound that
/// would distort the estimate reports [`Error::NoConvergence`] instead of
/// silently degrading.
pub fn beta_norm_direct(
    g: &PElement,
    a: &Multiplier,
    f0: &SpecialVector,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let p = g.dim();
    if f0.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: f0.dim(),
        });
    }
    require_matched(a.q(), f0, p)?;
    spec.validate()?;
    let bf = beta(g, a, f0)?;
    let r_max = spec.radial_truncation.r_max;
    let rule = spec.radial_rule.clone();
    let measure_pow = (p * p - 1) as f64;

    let per_direction = |w: &SphereDirection| -> Result<(f64, f64)> {
        let ray = bf.ray(w);
        let integrand = move |r: f64| ray(r).norm_sqr() * pow_q(r, measure_pow);
        let value = radial_integral(&integrand, 0.0, r_max, &rule)?;
        let lam = g.s().act_on(w.as_skew())?.norm();
        let c = 2.0 * lam.min(1.0);
        let tail = 4.0 * (-c * r_max).exp() / (c * r_max);
        Ok((value, tail))
    };

    let pairs = mc_over_sphere(p, spec, per_direction)?;
    let n = pairs.len() as f64;
    let mean = pairs.iter().map(|(v, _)| v).sum::<f64>() / n;
    let var = if pairs.len() > 1 {
        pairs.iter().map(|(v, _)| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let tail_mean = pairs.iter().map(|(_, t)| t).sum::<f64>() / n;
    let mass = sphere_area((p * p) as u32);
    let value = mass * mean;
    let bias_bound = mass * tail_mean;
    if bias_bound > (5e-3 * value.abs()).max(1e-4) {
        return Err(Error::NoConvergence(format!(
            "truncation r_max = {r_max} is too small for this element: \
             tail bound {bias_bound:.3e} vs value {value:.3e}"
        )));
    }
    Ok(Estimate {
        value,
        std_error: mass * (var / n).sqrt() + bias_bound,
        samples_used: pairs.len(),
    })
}

/// `∫ |f(m)|² dν(m)` over the principal orbit by the same nested
/// quadrature (radial window `[0, r_max]`; the caller picks a window that
/// covers the support of `f`).
pub fn orbit_norm_sq(f: &OrbitFunction, spec: &QuadratureSpec) -> Result<Estimate> {
    let p = f.dim();
    spec.validate()?;
    let r_max = spec.radial_truncation.r_max;
    let rule = spec.radial_rule.clone();
    let measure_pow = (p * p - 1) as f64;
    let per_direction = |w: &SphereDirection| -> Result<f64> {
        let ray = f.ray(w);
        let integrand = move |r: f64| ray(r).norm_sqr() * pow_q(r, measure_pow);
        radial_integral(&integrand, 0.0, r_max, &rule)
    };
    let values = mc_over_sphere(p, spec, per_direction)?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let mass = sphere_area((p * p) as u32);
    Ok(Estimate {
        value: mass * mean,
        std_error: mass * (var / n).sqrt(),
        samples_used: values.len(),
    })
}

/// Widens `r_max` so that every sampled ray decays through at least ~45
/// e-folds before truncation: probes the contraction `λ(ω) = |s*ωs|` on a
/// small deterministic direction set and scales the window by the slowest
/// decay found (with a ×2 safety margin).
pub fn suggested_truncation(g: &PElement, base: &Truncation, seed: u64) -> Truncation {
    let p = g.dim();
    let mut lam_min = f64::INFINITY;
    for i in 0..128u64 {
        let w = crate::quadrature::direction_at(p, seed ^ PARTNER_SEED_SALT, i);
        let lam = g
            .s()
            .act_on(w.as_skew())
            .expect("same dimension")
            .norm();
        lam_min = lam_min.min(lam);
    }
    let c = 2.0 * (0.5 * lam_min).min(1.0);
    Truncation {
        delta_min: base.delta_min,
        r_max: base.r_max.max(45.0 / c).min(1e6),
    }
}

// ---------------------------------------------------------------------------
// Divergence diagnostics
// ---------------------------------------------------------------------------

/// Truncated `‖f0‖²(δ) = ∫_Ω ∫_δ^{r_max} e^{-2r} r⁻¹ dr dω` and its fit
/// against `log(1/δ)`.  The radial integrand is direction-free (the measure
/// weight cancels `|f0|²` exactly at the matched exponent), so the sphere
/// integral contributes the exact sphere mass — which is also the predicted
/// slope.
pub fn f0_divergence(
    p: usize,
    f0: &SpecialVector,
    delta_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<DivergenceFit> {
    if f0.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: f0.dim(),
        });
    }
    let k = (p * p) as f64 / 2.0;
    if (f0.exponent - k).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "f0_divergence expects the matched exponent {k}, got {}",
            f0.exponent
        )));
    }
    spec.validate()?;
    let sv = *f0;
    let measure_pow = (p * p - 1) as f64;
    let integrand = move |r: f64| {
        let v = sv.eval_radius(r);
        v * v * pow_q(r, measure_pow)
    };
    let rule = &spec.radial_rule;
    let r_max = spec.radial_truncation.r_max;
    let mass = sphere_area((p * p) as u32);
    let mut cum = radial_integral(&integrand, delta_grid[0], r_max, rule)?;
    let mut grid = Vec::with_capacity(delta_grid.len());
    grid.push((delta_grid[0], mass * cum));
    for i in 1..delta_grid.len() {
        cum += radial_integral(&integrand, delta_grid[i], delta_grid[i - 1], rule)?;
        grid.push((delta_grid[i], mass * cum));
    }
    fit_divergence(grid)
}

/// Truncation curve of `‖β(g)‖²` for an arbitrary multiplier exponent:
/// `F(δ) = mass · mean_ω ∫_δ^{r_max} |β(rω)|² r^{p²-1} dr`, fitted against
/// `log(1/δ)`.  With the matched exponent the slope is ~0 (the integral
/// converges); with a mismatched exponent the slope is
/// `∫_Ω |b(ω) - 1|² dω > 0`, the Corollary-2 divergence rate.
///
/// Each direction uses the same segment decomposition, so the curve is
/// monotone in δ by construction and the Monte Carlo noise is common to all
/// grid points.
pub fn beta_truncation_fit(
    g: &PElement,
    a: &Multiplier,
    f0: &SpecialVector,
    delta_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<DivergenceFit> {
    let p = g.dim();
    crate::quadrature::validate_delta_grid(delta_grid)?;
    spec.validate()?;
    let bf = beta(g, a, f0)?;
    let rule = spec.radial_rule.clone();
    let r_max = spec.radial_truncation.r_max;
    let measure_pow = (p * p - 1) as f64;
    let nseg = delta_grid.len();

    let per_direction = |w: &SphereDirection| -> Result<Vec<f64>> {
        let ray = bf.ray(w);
        let integrand = move |r: f64| ray(r).norm_sqr() * pow_q(r, measure_pow);
        let mut segs = Vec::with_capacity(nseg);
        segs.push(radial_integral(&integrand, delta_grid[0], r_max, &rule)?);
        for i in 1..nseg {
            segs.push(radial_integral(
                &integrand,
                delta_grid[i],
                delta_grid[i - 1],
                &rule,
            )?);
        }
        Ok(segs)
    };

    let rows = mc_over_sphere(p, spec, per_direction)?;
    let n = rows.len() as f64;
    let mut seg_means = vec![0.0f64; nseg];
    for row in &rows {
        for (acc, v) in seg_means.iter_mut().zip(row) {
            *acc += v;
        }
    }
    let mass = sphere_area((p * p) as u32);
    let mut cum = 0.0;
    let mut grid = Vec::with_capacity(nseg);
    for (i, &d) in delta_grid.iter().enumerate() {
        cum += seg_means[i] / n;
        grid.push((d, mass * cum));
    }
    fit_divergence(grid)
}

/// Corollary-2 divergence: for `q ≠ p²/2` the cocycle candidate `β(s0)`
/// fails square-integrability at the origin; the truncated norm grows like
/// `∫_Ω |b(ω) - 1|² dω · log(1/δ)` with `b(ω) = λ(ω)^{q - p²/2}`.
pub fn corollary2_divergence(
    s0: &TriangularS,
    q: f64,
    f0: &SpecialVector,
    delta_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<DivergenceFit> {
    let p = s0.dim();
    let k = (p * p) as f64 / 2.0;
    if (q - k).abs() < 1e-9 {
        return Err(Error::Precondition(format!(
            "q = {q} is the matched exponent p²/2; the norm converges — use beta_norm_direct"
        )));
    }
    if (f0.exponent - k).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "corollary2_divergence expects f0 at the matched exponent {k}, got {}",
            f0.exponent
        )));
    }
    let g = PElement::from_s(s0.clone());
    beta_truncation_fit(&g, &Multiplier::new(q), f0, delta_grid, spec)
}

/// The predicted Corollary-2 slope: `∫_Ω (λ(ω)^{q - p²/2} - 1)² dω`,
/// computed by a plain sphere integral, independently of any radial
/// quadrature.
pub fn mismatch_integral(s0: &TriangularS, q: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let p = s0.dim();
    let k = (p * p) as f64 / 2.0;
    sphere_integral(
        |w| {
            let lam = s0.act_on(w.as_skew()).expect("same dimension").norm();
            (pow_q(lam, q - k) - 1.0).powi(2)
        },
        p,
        spec,
    )
}

// ---------------------------------------------------------------------------
// Verdict
// ---------------------------------------------------------------------------

/// Which subgroup an element was drawn from (for reporting).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    N,
    S,
    P,
}

impl std::fmt::Display for ElementKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElementKind::N => write!(f, "n"),
            ElementKind::S => write!(f, "s"),
            ElementKind::P => write!(f, "p"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleVerdict {
    /// Norms finite and mutually consistent, identity residual at roundoff,
    /// and the base vector lies outside the space: a genuine special
    /// cocycle.
    SpecialCocycle,
    /// The norm estimates are inconsistent or non-finite.
    Divergent,
    /// Well-formed cocycle, but the base vector is square integrable, so it
    /// is of coboundary form.
    CoboundaryLike,
}

impl std::fmt::Display for CocycleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CocycleVerdict::SpecialCocycle => write!(f, "special_cocycle"),
            CocycleVerdict::Divergent => write!(f, "divergent"),
            CocycleVerdict::CoboundaryLike => write!(f, "coboundary_like"),
        }
    }
}

/// Per-element record: both norm routes, the pointwise identity residual
/// and the resulting verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    pub element_id: String,
    pub kind: ElementKind,
    pub group_element: PElement,
    pub norm_closed: Estimate,
    pub norm_direct: Estimate,
    pub identity_residual: f64,
    pub agree: bool,
    pub verdict: CocycleVerdict,
}

/// All gates are explicit configuration, surfaced in reports.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictThresholds {
    /// Max pointwise cocycle-identity residual.
    pub identity_residual: f64,
    /// Agreement gate in combined standard errors.
    pub agreement_sigmas: f64,
    /// Absolute floor added to the agreement gate.  On the two-point sphere
    /// of p = 1 both estimates are deterministic (zero standard error), so a
    /// pure σ-gate would be empty; the floor covers radial quadrature
    /// tolerance.
    pub agreement_abs_floor: f64,
    /// Minimum r² for divergence-slope fits.
    pub fit_r2_min: f64,
    /// Relative tolerance of the ‖f0‖ slope against the sphere mass.
    pub mass_slope_rel_tol: f64,
}

impl Default for VerdictThresholds {
    fn default() -> Self {
        Self {
            identity_residual: 1e-9,
            agreement_sigmas: 4.0,
            agreement_abs_floor: 1e-7,
            fit_r2_min: 0.99,
            mass_slope_rel_tol: 0.03,
        }
    }
}

/// `|a - b| ≤ sigmas·√(se_a² + se_b²) + floor`.
pub fn estimates_agree(a: &Estimate, b: &Estimate, th: &VerdictThresholds) -> bool {
    (a.value - b.value).abs()
        <= th.agreement_sigmas * a.combined_std_error(b) + th.agreement_abs_floor
}

/// Per-`s0` operator analysis attached to the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorAnalysis {
    pub element_id: String,
    pub unitarity: UnitarityReport,
    pub operator_norm: f64,
}

/// Aggregate verdict for one `p`.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    pub p: usize,
    /// e.g. "SPECIAL, UNITARY" or "SPECIAL, BOUNDED, NONUNITARY".
    pub summary: String,
    pub expected_summary: String,
    pub matches_expectation: bool,
    /// False when a failed gate is within its own noise level, i.e. the
    /// budget was too small to decide.
    pub conclusive: bool,
    pub special: bool,
    pub bounded: bool,
    pub unitary: bool,
    pub f0_fit: DivergenceFit,
    pub f0_slope_target: f64,
    pub f0_divergent: bool,
    pub reports: Vec<CocycleReport>,
    pub operators: Vec<OperatorAnalysis>,
    pub thresholds: VerdictThresholds,
    pub notes: Vec<String>,
}

/// The qualitative outcome the dichotomy predicts for a given `p`.
pub fn expected_summary(p: usize) -> &'static str {
    if p == 1 {
        "SPECIAL, UNITARY"
    } else {
        "SPECIAL, BOUNDED, NONUNITARY"
    }
}

fn probe_points(p: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<SkewHermitian> {
    let plus = SignVector::all_plus(p).representative();
    (0..count)
        .map(|_| {
            TriangularS::random(p, rng)
                .act_on(&plus)
                .expect("same dimension")
        })
        .collect()
}

/// Analyzes one element: closed and direct norms (with an element-tuned
/// radial window), the cocycle-identity residual against deterministic
/// partner elements, and the verdict.
pub fn analyze_element(
    element_id: impl Into<String>,
    kind: ElementKind,
    g: &PElement,
    spec: &QuadratureSpec,
    th: &VerdictThresholds,
    f0_divergent: bool,
) -> Result<CocycleReport> {
    let p = g.dim();
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p);
    let norm_closed = match kind {
        ElementKind::N => beta_n_norm_closed(g.n(), spec)?,
        ElementKind::S => beta_s_norm_closed(g.s(), spec)?,
        ElementKind::P => beta_norm_closed(g, spec)?,
    };
    let mut tuned = spec.clone();
    tuned.radial_truncation = suggested_truncation(g, &spec.radial_truncation, spec.seed);
    let norm_direct = beta_norm_direct(g, &a, &f0, &tuned)?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ PARTNER_SEED_SALT);
    let probes = probe_points(p, 12, &mut rng);
    let mut identity_residual = 0.0f64;
    for _ in 0..2 {
        let partner = PElement::random(p, &mut rng);
        identity_residual = identity_residual
            .max(cocycle_identity_residual(g, &partner, &a, &f0, &probes)?)
            .max(cocycle_identity_residual(&partner, g, &a, &f0, &probes)?);
    }

    let finite = norm_closed.value.is_finite() && norm_direct.value.is_finite();
    let agree = finite && estimates_agree(&norm_closed, &norm_direct, th);
    let verdict = if !agree || identity_residual >= th.identity_residual {
        CocycleVerdict::Divergent
    } else if f0_divergent {
        CocycleVerdict::SpecialCocycle
    } else {
        CocycleVerdict::CoboundaryLike
    };
    Ok(CocycleReport {
        element_id: element_id.into(),
        kind,
        group_element: g.clone(),
        norm_closed,
        norm_direct,
        identity_residual,
        agree,
        verdict,
    })
}

/// Runs the whole claim structure for one `p`:
///
/// 1. `‖f0‖` diverges with slope = sphere mass (the candidate vector is
///    outside the space);
/// 2. every `‖β(g)‖` is finite, closed and direct routes agreeing;
/// 3. the cocycle identity holds at roundoff;
/// 4. the operators are unitary exactly when p = 1;
/// 5. operator-norm estimates are finite (boundedness).
pub fn theorem1_verdict(
    p: usize,
    s0_samples: &[TriangularS],
    n_samples: &[SkewHermitian],
    spec: &QuadratureSpec,
    thresholds: &VerdictThresholds,
) -> Result<TheoremVerdict> {
    if p == 0 {
        return Err(Error::InvalidSpec("p must be at least 1".into()));
    }
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p);
    let grid = default_delta_grid();
    let f0_fit = f0_divergence(p, &f0, &grid, spec)?;
    let mass = sphere_area((p * p) as u32);
    let f0_divergent = (f0_fit.slope - mass).abs() / mass < thresholds.mass_slope_rel_tol
        && f0_fit.r_squared > thresholds.fit_r2_min;

    let mut notes = Vec::new();
    let mut inconclusive = false;
    let mut reports = Vec::new();
    for (i, n) in n_samples.iter().enumerate() {
        let g = PElement::from_n(n.clone());
        reports.push(analyze_element(
            format!("n#{i}"),
            ElementKind::N,
            &g,
            spec,
            thresholds,
            f0_divergent,
        )?);
    }
    for (i, s0) in s0_samples.iter().enumerate() {
        let g = PElement::from_s(s0.clone());
        reports.push(analyze_element(
            format!("s#{i}"),
            ElementKind::S,
            &g,
            spec,
            thresholds,
            f0_divergent,
        )?);
    }

    for rep in &reports {
        if !rep.agree {
            let scale = rep
                .norm_closed
                .value
                .abs()
                .max(rep.norm_direct.value.abs())
                .max(0.1);
            let noise = thresholds.agreement_sigmas
                * rep.norm_closed.combined_std_error(&rep.norm_direct)
                + thresholds.agreement_abs_floor;
            if noise > 0.05 * scale {
                inconclusive = true;
                notes.push(format!(
                    "{}: agreement gate wider than 5% of the value; inconclusive",
                    rep.element_id
                ));
            } else {
                notes.push(format!("{}: closed and direct norms disagree", rep.element_id));
            }
        }
    }

    let mut operators = Vec::new();
    for (i, s0) in s0_samples.iter().enumerate() {
        let unitarity = unitarity_report(s0, &a, spec)?;
        let operator_norm = operator_norm_estimate(s0, &a, spec)?;
        operators.push(OperatorAnalysis {
            element_id: format!("s#{i}"),
            unitarity,
            operator_norm,
        });
    }
    if s0_samples.is_empty() {
        notes.push("no s0 samples: unitarity claim is vacuous".into());
    }

    let special = f0_divergent
        && !reports.is_empty()
        && reports
            .iter()
            .all(|r| r.verdict == CocycleVerdict::SpecialCocycle);
    let unitary = operators.iter().all(|o| o.unitarity.is_unitary);
    let bounded = operators.iter().all(|o| o.operator_norm.is_finite());

    let mut parts = vec![if special { "SPECIAL" } else { "NOT SPECIAL" }];
    if !unitary {
        parts.push(if bounded { "BOUNDED" } else { "UNBOUNDED" });
    }
    parts.push(if unitary { "UNITARY" } else { "NONUNITARY" });
    let summary = parts.join(", ");
    let expected = expected_summary(p).to_string();
    let matches_expectation = summary == expected;
    if !matches_expectation && inconclusive {
        notes.push("inconclusive: widen budget".into());
    }

    Ok(TheoremVerdict {
        p,
        summary,
        expected_summary: expected,
        matches_expectation,
        conclusive: !inconclusive,
        special,
        bounded,
        unitary,
        f0_fit,
        f0_slope_target: mass,
        f0_divergent,
        reports,
        operators,
        thresholds: thresholds.clone(),
        notes,
    })
}

// ---------------------------------------------------------------------------
