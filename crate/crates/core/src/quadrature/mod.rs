//! Deterministic quadrature: adaptive one-dimensional rules for radial
//! integrals, seeded Monte Carlo over the unit sphere of `N*`, and
//! divergence-rate estimation for truncated integrals.
//!
//! Every estimator here is bit-deterministic for a fixed spec, independent
//! of thread count: sphere samples are generated from counter-based
//! per-sample substreams of the seed and reduced in fixed index order.

mod gauss;
mod sphere;

pub use sphere::{
    direction_at, sphere_area, sphere_integral, sphere_integral_try, sphere_samples_try,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use gauss::gauss_legendre;

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

/// Adaptive radial rule: Gauss–Legendre panels of `points` nodes, bisected
/// until the panel-refinement error estimate meets the length-proportional
/// tolerance budget or `max_panels` bisections have been spent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialRule {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub points: usize,
    pub max_panels: usize,
}

impl Default for RadialRule {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            points: 16,
            max_panels: 4096,
        }
    }
}

/// Truncation window for improper radial integrals: divergence scans start
/// at `delta_min`, and every radial integral stops at `r_max` (the decaying
/// tail beyond it is bounded analytically by the callers).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Truncation {
    pub delta_min: f64,
    pub r_max: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            delta_min: 2f64.powi(-20),
            r_max: 60.0,
        }
    }
}

/// Everything a stochastic estimate depends on.  Two runs with the same
/// spec produce bit-identical results regardless of parallelism.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub sphere_samples: usize,
    #[serde(default)]
    pub radial_rule: RadialRule,
    #[serde(default)]
    pub radial_truncation: Truncation,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(seed: u64) -> Self {
        Self {
            sphere_samples: 20_000,
            radial_rule: RadialRule::default(),
            radial_truncation: Truncation::default(),
            seed,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.sphere_samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sphere_samples == 0 {
            return Err(Error::InvalidSpec("sphere_samples must be ≥ 1".into()));
        }
        let t = &self.radial_truncation;
        if !(t.delta_min > 0.0 && t.delta_min < t.r_max) {
            return Err(Error::InvalidSpec(format!(
                "truncation must satisfy 0 < delta_min < r_max, got ({}, {})",
                t.delta_min, t.r_max
            )));
        }
        let r = &self.radial_rule;
        if !(r.abs_tol > 0.0 && r.rel_tol > 0.0) || r.points < 2 || r.max_panels == 0 {
            return Err(Error::InvalidSpec("invalid radial rule".into()));
        }
        Ok(())
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub samples_used: usize,
}

impl Estimate {
    /// An estimate with no stochastic error (deterministic evaluation).
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            samples_used: 0,
        }
    }

    /// `√(se₁² + se₂²)` against another estimate.
    pub fn combined_std_error(&self, other: &Estimate) -> f64 {
        self.std_error.hypot(other.std_error)
    }
}

// ---------------------------------------------------------------------------
// Adaptive radial quadrature
// ---------------------------------------------------------------------------

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, points: usize) -> Result<f64> {
    let rule = gauss_legendre(points);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let r = mid + half * x;
        let v = f(r);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample(format!(
                "radial integrand returned {v} at r = {r}"
            )));
        }
        acc += w * v;
    }
    Ok(acc * half)
}

/// Adaptive quadrature of `f` on `[lower, upper]`.
///
/// Panels are accepted when the difference between the panel estimate and
/// the sum of its two halves is below the panel's share of
/// `max(abs_tol, rel_tol·scale)`; otherwise the halves are pushed for
/// refinement.  Exceeding `max_panels` bisections reports
/// [`Error::NoConvergence`] — a divergent integrand never fails silently.
pub fn radial_integral<F: Fn(f64) -> f64>(
    f: &F,
    lower: f64,
    upper: f64,
    rule: &RadialRule,
) -> Result<f64> {
    if !(lower.is_finite() && upper.is_finite()) {
        return Err(Error::InvalidSpec("integration bounds must be finite".into()));
    }
    if upper <= lower {
        return Err(Error::InvalidSpec(format!(
            "empty integration range [{lower}, {upper}]"
        )));
    }
    let total_len = upper - lower;
    let coarse = gl_panel(f, lower, upper, rule.points)?;
    let mut scale = coarse.abs();
    let mut stack = vec![(lower, upper, coarse)];
    let mut total = 0.0;
    let mut bisections = 0usize;
    while let Some((a, b, coarse)) = stack.pop() {
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid, rule.points)?;
        let right = gl_panel(f, mid, b, rule.points)?;
        let fine = left + right;
        let err = (fine - coarse).abs();
        let tol = rule.abs_tol.max(rule.rel_tol * scale) * ((b - a) / total_len);
        if err <= tol || (b - a) < 1e-14 * total_len {
            total += fine;
            scale = scale.max(total.abs());
        } else {
            bisections += 1;
            if bisections > rule.max_panels {
                return Err(Error::NoConvergence(format!(
                    "subdivision budget of {} panels exhausted on [{a:.3e}, {b:.3e}] (error {err:.3e} > tol {tol:.3e}); \
                     the integrand may diverge inside [{lower:.3e}, {upper:.3e}]",
                    rule.max_panels
                )));
            }
            stack.push((mid, b, right));
            stack.push((a, mid, left));
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Frullani integral
// ---------------------------------------------------------------------------

/// Computes `∫₀^∞ (e^{-ar} - e^{-br}) r⁻¹ dr` by quadrature and returns it
/// together with the closed form `log(b/a)`.
///
/// The integrand is extended continuously to `r = 0` (limit `b - a`) and
/// evaluated in the cancellation-free form `e^{-br}·expm1((b-a)r)/r`; the
/// upper truncation is grown until the exponential tail is negligible.
pub fn frullani_check(a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Precondition(format!(
            "frullani_check needs a, b > 0, got ({a}, {b})"
        )));
    }
    // e^{-ar} - e^{-br} = ∓ e^{-min(a,b)r} · expm1(-|b-a|r): cancellation-free
    // near 0 and overflow-free at the tail.
    let lo = a.min(b);
    let diff = (b - a).abs();
    let sign = if b >= a { -1.0 } else { 1.0 };
    let integrand = move |r: f64| {
        if r == 0.0 {
            b - a
        } else {
            sign * (-lo * r).exp() * (-diff * r).exp_m1() / r
        }
    };
    let r_max = spec.radial_truncation.r_max.max(45.0 / a.min(b));
    let numeric = radial_integral(&integrand, 0.0, r_max, &spec.radial_rule)?;
    Ok((numeric, (b / a).ln()))
}

// ---------------------------------------------------------------------------
// Divergence slope
// ---------------------------------------------------------------------------

/// Least-squares fit of a truncated integral `F(δ)` against `log(1/δ)`.
/// The slope is the divergence rate; a convergent integral fits slope ≈ 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(δ, F(δ))` pairs, δ strictly decreasing.
    pub grid: Vec<(f64, f64)>,
}

/// Validates a truncation grid: at least 4 strictly decreasing positive
/// values.
pub(crate) fn validate_delta_grid(delta_grid: &[f64]) -> Result<()> {
    if delta_grid.len() < 4 {
        return Err(Error::InvalidSpec(
            "divergence grid needs at least 4 points".into(),
        ));
    }
    if delta_grid.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::InvalidSpec("divergence grid must be positive".into()));
    }
    if delta_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSpec(
            "divergence grid must be strictly decreasing".into(),
        ));
    }
    Ok(())
}

/// Evaluates `F` on the grid and fits `F(δ) ~ slope·log(1/δ) + intercept`.
///
/// The grid must be geometric-like: at least 4 strictly decreasing positive
/// values.
pub fn divergence_slope<F: FnMut(f64) -> Result<f64>>(
    mut truncated: F,
    delta_grid: &[f64],
) -> Result<DivergenceFit> {
    validate_delta_grid(delta_grid)?;
    let mut grid = Vec::with_capacity(delta_grid.len());
    for &d in delta_grid {
        grid.push((d, truncated(d)?));
    }
    fit_divergence(grid)
}

/// Least-squares fit of precomputed `(δ, F(δ))` pairs against `log(1/δ)`.
pub fn fit_divergence(grid: Vec<(f64, f64)>) -> Result<DivergenceFit> {
    let deltas: Vec<f64> = grid.iter().map(|(d, _)| *d).collect();
    validate_delta_grid(&deltas)?;
    let n = grid.len() as f64;
    let xs: Vec<f64> = grid.iter().map(|(d, _)| (1.0 / d).ln()).collect();
    let ys: Vec<f64> = grid.iter().map(|(_, v)| *v).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let r_squared = if ss_tot <= f64::EPSILON * (1.0 + y_mean.abs()).powi(2) {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(DivergenceFit {
        slope,
        intercept,
        r_squared,
        grid,
    })
}

/// The default dyadic truncation grid `δ = 2^{-k}`, `k = 4..=20`.
pub fn default_delta_grid() -> Vec<f64> {
    (4..=20).map(|k| 2f64.powi(-k)).collect()
}

// ---------------------------------------------------------------------------
