//! The representations of `N`, `S` and `P` on functions over the principal
//! orbit.
//!
//! `T(n) f(m) = e^{i Tr(nm)} f(m)` and, for a positive multiplier `a`,
//! `T_a(s0) f(m) = [a(s0* m s0)/a(m)] · f(s0* m s0)`.  Together they give a
//! representation of `P` with `T((s, n)) = T_a(s) ∘ T(n)` (this ordering is
//! the one that satisfies the homomorphism property under the product law of
//! `P`; the property tests pin it).
//!
//! Functions are lazily composed evaluators, never grids: the operators act
//! pointwise, so sampling error only enters at norm-evaluation time.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{pairing_unchecked, PElement, SkewHermitian, TriangularS};
use crate::orbit::SphereDirection;
use crate::quadrature::{direction_at, QuadratureSpec};

/// Sampled `max|c - 1|` below which an operator is reported unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// `r^q` with exact fast paths for the integer and half-integer exponents
/// that dominate here (`q = p²/2`).
pub(crate) fn pow_q(r: f64, q: f64) -> f64 {
    let two_q = 2.0 * q;
    if two_q.fract() == 0.0 && two_q.abs() <= 126.0 {
        let k = two_q as i64;
        let whole = r.powi((k / 2) as i32);
        if k % 2 == 0 {
            whole
        } else if k > 0 {
            whole * r.sqrt()
        } else {
            whole / r.sqrt()
        }
    } else {
        r.powf(q)
    }
}

// ---------------------------------------------------------------------------
// Multiplier
// ---------------------------------------------------------------------------

/// The homogeneous multiplier family `a(m) = |m|^q`.
///
/// `q = p²/2` is the distinguished member: it is the exponent for which the
/// multiplier ratio cancels the radial part of the special vector, making
/// the cocycle norms finite.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Multiplier {
    q: f64,
}

impl Multiplier {
    pub fn new(q: f64) -> Self {
        Self { q }
    }

    /// `q = p²/2`.
    pub fn standard(p: usize) -> Self {
        Self {
            q: (p * p) as f64 / 2.0,
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn eval(&self, m: &SkewHermitian) -> f64 {
        pow_q(m.norm(), self.q)
    }

    /// `a` on a point of radius `r` (homogeneity: `a(rω) = r^q`).
    pub fn eval_radius(&self, r: f64) -> f64 {
        pow_q(r, self.q)
    }
}

// ---------------------------------------------------------------------------
// OrbitFunction
// ---------------------------------------------------------------------------

/// A restriction of a function to one ray `r ↦ f(r·ω)`.
pub type RayFn = Box<dyn Fn(f64) -> Complex64 + Send + Sync>;

type EvalFn = dyn Fn(&SkewHermitian) -> Complex64 + Send + Sync;
type RayFactory = dyn Fn(&SphereDirection) -> RayFn + Send + Sync;

/// Lazily evaluable complex function on the principal orbit, closed under
/// the pointwise operators.  Applying an operator produces a new function;
/// originals are never mutated (all state is behind `Arc`).
///
/// Besides the generic pointwise evaluator, a function may carry a "ray
/// form": a factory producing the restriction to the ray through a given
/// direction.  The operator combinators propagate it using the exact
/// identities `s*(rω)s = r·(s*ωs)` and `Tr(n·rω) = r·Tr(nω)`, which lets
/// radial quadrature run without per-node matrix products.  The ray form is
/// an evaluation strategy only — it must (and is tested to) agree with the
/// generic evaluator.
#[derive(Clone)]
pub struct OrbitFunction {
    dim: usize,
    label: String,
    eval: Arc<EvalFn>,
    ray: Option<Arc<RayFactory>>,
}

impl OrbitFunction {
    pub fn new<F>(dim: usize, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&SkewHermitian) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            dim,
            label: label.into(),
            eval: Arc::new(eval),
            ray: None,
        }
    }

    pub fn with_ray<F, G>(dim: usize, label: impl Into<String>, eval: F, ray: G) -> Self
    where
        F: Fn(&SkewHermitian) -> Complex64 + Send + Sync + 'static,
        G: Fn(&SphereDirection) -> RayFn + Send + Sync + 'static,
    {
        Self {
            dim,
            label: label.into(),
            eval: Arc::new(eval),
            ray: Some(Arc::new(ray)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Composition record: base function plus applied operators.
    pub fn provenance(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, m: &SkewHermitian) -> Complex64 {
        debug_assert_eq!(m.dim(), self.dim);
        (self.eval)(m)
    }

    /// The restriction to the ray through `ω`; falls back to the generic
    /// evaluator when no ray form is attached.
    pub fn ray(&self, omega: &SphereDirection) -> RayFn {
        match &self.ray {
            Some(factory) => factory(omega),
            None => {
                let eval = Arc::clone(&self.eval);
                let w = omega.clone();
                Box::new(move |r| eval(&w.at_radius(r)))
            }
        }
    }

    pub fn has_ray(&self) -> bool {
        self.ray.is_some()
    }

    /// Pointwise difference.
    pub fn minus(&self, other: &OrbitFunction) -> Result<OrbitFunction> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let label = format!("({} - {})", self.label, other.label);
        let (ea, eb) = (Arc::clone(&self.eval), Arc::clone(&other.eval));
        let (fa, fb) = (self.clone(), other.clone());
        Ok(OrbitFunction::with_ray(
            self.dim,
            label,
            move |m| ea(m) - eb(m),
            move |w| {
                let (ra, rb) = (fa.ray(w), fb.ray(w));
                Box::new(move |r| ra(r) - rb(r))
            },
        ))
    }

    /// The bounded bump `exp(-|m|²)`, handy as a square-integrable test
    /// vector.
    pub fn gaussian_bump(p: usize) -> Self {
        Self::with_ray(
            p,
            "exp(-|m|^2)",
            |m| Complex64::new((-m.norm().powi(2)).exp(), 0.0),
            |_w| Box::new(|r| Complex64::new((-r * r).exp(), 0.0)),
        )
    }
}

impl std::fmt::Debug for OrbitFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrbitFunction")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .field("has_ray", &self.has_ray())
            .finish()
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// `T(n) f = e^{i Tr(nm)} f(m)`; a unimodular multiplier, so `|T(n)f| = |f|`
/// pointwise.
pub fn t_n(n: &SkewHermitian, f: &OrbitFunction) -> Result<OrbitFunction> {
    if n.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: n.dim(),
        });
    }
    if n.is_zero() {
        return Ok(f.clone());
    }
    let label = format!("T_n∘{}", f.provenance());
    let n_eval = n.clone();
    let inner_eval = f.clone();
    let n_ray = n.clone();
    let inner_ray = f.clone();
    Ok(OrbitFunction::with_ray(
        f.dim(),
        label,
        move |m| {
            let theta = pairing_unchecked(&n_eval, m);
            Complex64::from_polar(1.0, theta) * inner_eval.eval(m)
        },
        move |w| {
            // Tr(n · rω) = r·Tr(nω)
            let mu = pairing_unchecked(&n_ray, w.as_skew());
            let g = inner_ray.ray(w);
            Box::new(move |r| Complex64::from_polar(1.0, r * mu) * g(r))
        },
    ))
}

/// `T_a(s0) f(m) = [a(s0* m s0)/a(m)] f(s0* m s0)`.
pub fn t_s(s0: &TriangularS, a: &Multiplier, f: &OrbitFunction) -> Result<OrbitFunction> {
    if s0.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: s0.dim(),
        });
    }
    if s0.is_identity() {
        return Ok(f.clone());
    }
    let label = format!("T_s∘{}", f.provenance());
    let s_eval = s0.clone();
    let a_eval = *a;
    let inner_eval = f.clone();
    let s_ray = s0.clone();
    let a_ray = *a;
    let inner_ray = f.clone();
    Ok(OrbitFunction::with_ray(
        f.dim(),
        label,
        move |m| {
            let sm = s_eval.act_on(m).expect("dimensions match");
            let ratio = a_eval.eval(&sm) / a_eval.eval(m);
            inner_eval.eval(&sm) * ratio
        },
        move |w| {
            // s*(rω)s = (rλ)·ω' with λ = |s*ωs|, ω' = (s*ωs)/λ, and the
            // multiplier ratio is radius-free: a(s*ms)/a(m) = λ^q.
            let image = s_ray.act_on(w.as_skew()).expect("dimensions match");
            let lam = image.norm();
            let dir = SphereDirection::normalize(&image).expect("s is invertible");
            let ratio = a_ray.eval_radius(lam);
            let g = inner_ray.ray(&dir);
            Box::new(move |r| g(r * lam) * ratio)
        },
    ))
}

/// `T((s, n)) = T_a(s) ∘ T(n)` applied to `f`.
pub fn t_group(g: &PElement, a: &Multiplier, f: &OrbitFunction) -> Result<OrbitFunction> {
    t_s(g.s(), a, &t_n(g.n(), f)?)
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

/// `b(m, s0) = [a(s0* m s0)/a(m)] · θ(s0)^{-p}`, the density factor in
/// `‖T_a(s0) f‖² = ∫ |f b|² dν` (the Radon–Nikodym square root is
/// `θ(s0)^{-p}` by the quasi-invariance of Lebesgue measure).
pub fn coefficient_b(m: &SkewHermitian, s0: &TriangularS, a: &Multiplier) -> Result<f64> {
    if m.dim() != s0.dim() {
        return Err(Error::DimensionMismatch {
            expected: s0.dim(),
            got: m.dim(),
        });
    }
    if m.norm() == 0.0 {
        return Err(Error::Precondition("b(m, s0) needs m ≠ 0".into()));
    }
    let p = s0.dim() as i32;
    let sm = s0.act_on(m)?;
    Ok(a.eval(&sm) / a.eval(m) * s0.theta().powi(-p))
}

/// `c(m, s0) = [a(m)/a(s0*⁻¹ m s0⁻¹)] · θ(s0)^{-p}`, the transported
/// density of `‖T_a(s0) f‖² = ∫ |f(m) c(m, s0)|² dm`.  For homogeneous `a`
/// it depends only on the direction `m/|m|`.
pub fn coefficient_c(m: &SkewHermitian, s0: &TriangularS, a: &Multiplier) -> Result<f64> {
    if m.dim() != s0.dim() {
        return Err(Error::DimensionMismatch {
            expected: s0.dim(),
            got: m.dim(),
        });
    }
    if m.norm() == 0.0 {
        return Err(Error::Precondition("c(m, s0) needs m ≠ 0".into()));
    }
    let p = s0.dim() as i32;
    let s_inv = s0.inverse();
    let tm = s_inv.act_on(m)?;
    Ok(a.eval(m) / a.eval(&tm) * s0.theta().powi(-p))
}

// ---------------------------------------------------------------------------
// Unitarity / boundedness analysis
// ---------------------------------------------------------------------------

/// Sampled statistics of `c(ω, s0)` over the sphere.
#[derive(Debug, Clone, Serialize)]
pub struct UnitarityReport {
    /// `max |c - 1| < 1e-10` over the samples.
    pub is_unitary: bool,
    pub c_min: f64,
    pub c_max: f64,
    pub c_std: f64,
    pub samples_used: usize,
}

fn coefficient_c_samples(
    s0: &TriangularS,
    a: &Multiplier,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    spec.validate()?;
    let p = s0.dim();
    let s_inv = s0.inverse();
    let theta_pow = s0.theta().powi(-(p as i32));
    // a(ω) = 1 on the sphere, so c(ω) = θ^{-p} / a(s0*⁻¹ ω s0⁻¹).
    let n = spec.sphere_samples;
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let w = direction_at(p, spec.seed, i as u64);
            let tm = s_inv.act_on(w.as_skew())?;
            Ok(theta_pow / a.eval(&tm))
        })
        .collect()
}

/// Samples `c` over random directions.  `is_unitary` iff `c ≡ 1` within
/// [`UNITARY_TOL`]; a finite `c_max` together with Eq-(6)-style norm
/// transport witnesses boundedness of `T_a(s0)`.
pub fn unitarity_report(
    s0: &TriangularS,
    a: &Multiplier,
    spec: &QuadratureSpec,
) -> Result<UnitarityReport> {
    let cs = coefficient_c_samples(s0, a, spec)?;
    let n = cs.len();
    let mean = cs.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        cs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0)
    } else {
        0.0
    };
    let c_min = cs.iter().copied().fold(f64::INFINITY, f64::min);
    let c_max = cs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let worst = cs.iter().map(|c| (c - 1.0).abs()).fold(0.0, f64::max);
    Ok(UnitarityReport {
        is_unitary: worst < UNITARY_TOL,
        c_min,
        c_max,
        c_std: var.sqrt(),
        samples_used: n,
    })
}

/// Max of `c(ω, s0)` over the sampled directions — a lower bound on the
/// operator norm of `T_a(s0)` that converges to it as samples grow, and is
/// always finite.  Sample `i` is stream-indexed, so estimates over nested
/// sample counts are monotone.
pub fn operator_norm_estimate(
    s0: &TriangularS,
    a: &Multiplier,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if s0.is_identity() {
        return Ok(1.0);
    }
    let cs = coefficient_c_samples(s0, a, spec)?;
    Ok(cs.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

// ---------------------------------------------------------------------------
