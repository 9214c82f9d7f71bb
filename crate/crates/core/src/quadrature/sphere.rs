//! Deterministic Monte Carlo over the unit sphere `Ω` of `N*`.
//!
//! The sphere carries the unnormalized surface measure of the unit sphere in
//! R^{p²} (total mass `2π^{k/2}/Γ(k/2)`, `k = p²`), so sample means are
//! multiplied by that mass.  Sample `i` is drawn from a dedicated ChaCha
//! substream of the seed, which makes every estimate independent of thread
//! scheduling: parallel workers fill an index-ordered buffer that is reduced
//! sequentially.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::orbit::{sphere_sample, SphereDirection};
use crate::quadrature::{Estimate, QuadratureSpec};

/// Surface area of the unit sphere `S^{k-1}` in `R^k`: `2π^{k/2}/Γ(k/2)`.
///
/// Powers of π and the half-integer Γ values are built from the same
/// `√π` so that `sphere_area(1) == 2.0` exactly.
pub fn sphere_area(k: u32) -> f64 {
    assert!(k >= 1);
    let pi = std::f64::consts::PI;
    let pi_pow = if k % 2 == 0 {
        pi.powi((k / 2) as i32)
    } else {
        pi.powi((k / 2) as i32) * pi.sqrt()
    };
    2.0 * pi_pow / gamma_half(k)
}

/// `Γ(k/2)` by upward recursion from `Γ(1/2) = √π` and `Γ(1) = 1`.
fn gamma_half(k: u32) -> f64 {
    let mut val = if k % 2 == 1 {
        std::f64::consts::PI.sqrt()
    } else {
        1.0
    };
    let mut j = if k % 2 == 1 { 1 } else { 2 };
    while j < k {
        val *= j as f64 / 2.0;
        j += 2;
    }
    val
}

/// The `index`-th direction of the stream identified by `seed`: a dedicated
/// counter-based ChaCha substream, so it does not depend on how many other
/// samples are drawn or on which thread draws it.
pub fn direction_at(p: usize, seed: u64, index: u64) -> SphereDirection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    sphere_sample(p, &mut rng)
}

/// Monte Carlo integral over the sphere of `N*`, `h` infallible.
pub fn sphere_integral<H>(h: H, p: usize, spec: &QuadratureSpec) -> Result<Estimate>
where
    H: Fn(&SphereDirection) -> f64 + Sync,
{
    sphere_integral_try(|w| Ok(h(w)), p, spec)
}

/// Evaluates `h` on the first `spec.sphere_samples` directions of the
/// stream and returns the per-sample values in index order.  Workers may
/// run in parallel; the output order (and thus any downstream reduction)
/// is independent of scheduling.
pub fn sphere_samples_try<T, H>(h: H, p: usize, spec: &QuadratureSpec) -> Result<Vec<T>>
where
    T: Send,
    H: Fn(usize, &SphereDirection) -> Result<T> + Sync,
{
    spec.validate()?;
    (0..spec.sphere_samples)
        .into_par_iter()
        .map(|i| {
            let w = direction_at(p, spec.seed, i as u64);
            h(i, &w)
        })
        .collect()
}

/// Monte Carlo integral over the sphere of `N*`.
///
/// `value = mass · mean(h)`, `std_error = mass · √(var/n)`.  Returns
/// [`Error::NonFiniteSample`] naming the offending direction if `h`
/// produces NaN or ±∞.
pub fn sphere_integral_try<H>(h: H, p: usize, spec: &QuadratureSpec) -> Result<Estimate>
where
    H: Fn(&SphereDirection) -> Result<f64> + Sync,
{
    let n = spec.sphere_samples;
    let values: Vec<f64> = sphere_samples_try(
        |i, w| {
            let v = h(w)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteSample(format!(
                    "h(ω) = {v} at sample {i}, ω = {:?}",
                    w.as_skew().mat().as_slice()
                )));
            }
            Ok(v)
        },
        p,
        spec,
    )?;

    // Fixed-order reduction: bit-identical for any thread count.
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0)
    } else {
        0.0
    };
    let mass = sphere_area((p * p) as u32);
    Ok(Estimate {
        value: mass * mean,
        std_error: mass * (var / n as f64).sqrt(),
        samples_used: n,
    })
}
