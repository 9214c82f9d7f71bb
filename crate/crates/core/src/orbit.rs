//! Geometry of the character group `N*`.
//!
//! `N*` is identified with the skew-Hermitian matrices via the trace pairing;
//! as a real vector space it has dimension p².  This module provides an
//! orthonormal real basis, spherical coordinates `m = rω`, uniform sampling
//! of the unit sphere, the classification of a point into one of the 2^p
//! maximal orbits `N*_ε = {i·s*·diag(ε)·s}`, the triangular factorization
//! that inverts `s ↦ i s* s` on the principal orbit, and the Jacobian of the
//! `S`-action.

use nalgebra::{DMatrix, Dyn};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CMatrix, SkewHermitian, TriangularS};

/// Default relative tolerance below which a scaled principal minor is
/// treated as zero and the point as degenerate (outside every maximal
/// orbit).  Exact zeros only occur for crafted inputs; the orbit complement
/// has measure zero.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Basis
// ---------------------------------------------------------------------------

/// Orthonormal real basis of the skew-Hermitian matrices under
/// `⟨x, y⟩ = Re Tr(x y*)`: the p matrices `i·E_kk`, and for each j < k the
/// pair `(E_jk - E_kj)/√2` and `i(E_jk + E_kj)/√2`.  p² elements in total.
#[derive(Debug, Clone)]
pub struct SkewBasis {
    dim: usize,
    elements: Vec<SkewHermitian>,
}

pub fn skew_basis(p: usize) -> SkewBasis {
    assert!(p >= 1, "p must be at least 1");
    let mut elements = Vec::with_capacity(p * p);
    let sq = 2f64.sqrt().recip();
    for k in 0..p {
        let mut m = CMatrix::zeros(p, p);
        m[(k, k)] = Complex64::new(0.0, 1.0);
        elements.push(SkewHermitian::new_unchecked(m));
    }
    for j in 0..p {
        for k in (j + 1)..p {
            let mut re = CMatrix::zeros(p, p);
            re[(j, k)] = Complex64::new(sq, 0.0);
            re[(k, j)] = Complex64::new(-sq, 0.0);
            elements.push(SkewHermitian::new_unchecked(re));
            let mut im = CMatrix::zeros(p, p);
            im[(j, k)] = Complex64::new(0.0, sq);
            im[(k, j)] = Complex64::new(0.0, sq);
            elements.push(SkewHermitian::new_unchecked(im));
        }
    }
    SkewBasis { dim: p, elements }
}

impl SkewBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SkewHermitian] {
        &self.elements
    }

    /// Real coordinates of `m`: `x_a = Re Tr(m b_a*)`.
    pub fn coordinates(&self, m: &SkewHermitian) -> Result<Vec<f64>> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m.dim(),
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|b| real_inner(m, b))
            .collect())
    }

    /// `Σ x_a b_a`.
    pub fn reconstruct(&self, coords: &[f64]) -> Result<SkewHermitian> {
        if coords.len() != self.elements.len() {
            return Err(Error::InvalidSpec(format!(
                "expected {} coordinates, got {}",
                self.elements.len(),
                coords.len()
            )));
        }
        let p = self.dim;
        let mut mat = CMatrix::zeros(p, p);
        for (x, b) in coords.iter().zip(&self.elements) {
            mat += b.mat() * Complex64::new(*x, 0.0);
        }
        Ok(SkewHermitian::new_unchecked(mat))
    }

    /// Gram matrix under `Re Tr(x y*)`; identity for a valid basis.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.elements.len();
        DMatrix::from_fn(n, n, |i, j| real_inner(&self.elements[i], &self.elements[j]))
    }
}

/// `Re Tr(x y*)`, the real inner product of `N*`.
fn real_inner(x: &SkewHermitian, y: &SkewHermitian) -> f64 {
    let p = x.dim();
    let mut acc = 0.0;
    for i in 0..p {
        for j in 0..p {
            // Tr(x y*) = Σ_ij x_ij conj(y_ij)
            let a = x.get(i, j);
            let b = y.get(i, j);
            acc += a.re * b.re + a.im * b.im;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Spherical coordinates
// ---------------------------------------------------------------------------

/// Unit vector of `N*`: a skew-Hermitian matrix with `|ω| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereDirection {
    omega: SkewHermitian,
}

impl SphereDirection {
    /// Checks `|ω| = 1` within 1e-12.
    pub fn new(omega: SkewHermitian) -> Result<Self> {
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!(
                "direction norm {} is not 1",
                omega.norm()
            )));
        }
        Ok(Self { omega })
    }

    /// `m / |m|`; fails on (numerically) zero input.
    pub fn normalize(m: &SkewHermitian) -> Result<Self> {
        let r = m.norm();
        if r < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            omega: m.scaled(r.recip()),
        })
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn as_skew(&self) -> &SkewHermitian {
        &self.omega
    }

    /// The point `r·ω`.
    pub fn at_radius(&self, r: f64) -> SkewHermitian {
        self.omega.scaled(r)
    }
}

/// `m = rω` with `r = |m|` and `|ω| = 1`.
pub fn polar_decompose(m: &SkewHermitian) -> Result<(f64, SphereDirection)> {
    let r = m.norm();
    if r == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((r, SphereDirection::normalize(m)?))
}

/// Uniform sample of the unit sphere of `N*` (surface measure): standard
/// Gaussian coordinates in the orthonormal basis of [`skew_basis`],
/// normalized.  The entries are drawn directly in matrix form, which is the
/// same distribution.
pub fn sphere_sample<R: Rng + ?Sized>(p: usize, rng: &mut R) -> SphereDirection {
    loop {
        let mut mat = CMatrix::zeros(p, p);
        for k in 0..p {
            let d: f64 = rng.sample(StandardNormal);
            mat[(k, k)] = Complex64::new(0.0, d);
        }
        let sq = 2f64.sqrt().recip();
        for j in 0..p {
            for k in (j + 1)..p {
                let u: f64 = rng.sample(StandardNormal);
                let v: f64 = rng.sample(StandardNormal);
                mat[(j, k)] = Complex64::new(u * sq, v * sq);
                mat[(k, j)] = Complex64::new(-u * sq, v * sq);
            }
        }
        let m = SkewHermitian::new_unchecked(mat);
        let r = m.norm();
        if r > 1e-8 {
            return SphereDirection {
                omega: m.scaled(r.recip()),
            };
        }
    }
}

// ---------------------------------------------------------------------------
// Orbit classification
// ---------------------------------------------------------------------------

/// Label `ε = (ε_1, …, ε_p)`, `ε_i = ±1`, of one of the 2^p maximal
/// `S`-orbits `N*_ε = {i·s*·diag(ε)·s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVector {
    eps: Vec<i8>,
}

impl SignVector {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.is_empty() || eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidSpec(
                "sign vector entries must be +1 or -1".into(),
            ));
        }
        Ok(Self { eps })
    }

    pub fn all_plus(p: usize) -> Self {
        Self { eps: vec![1; p] }
    }

    pub fn signs(&self) -> &[i8] {
        &self.eps
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.eps.iter().all(|&e| e == 1)
    }

    /// The representative `i·diag(ε)` of the orbit `N*_ε`.
    pub fn representative(&self) -> SkewHermitian {
        let p = self.eps.len();
        let mut mat = CMatrix::zeros(p, p);
        for (k, &e) in self.eps.iter().enumerate() {
            mat[(k, k)] = Complex64::new(0.0, e as f64);
        }
        SkewHermitian::new_unchecked(mat)
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.eps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *e > 0 { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

/// Result of [`classify_orbit`]: either the orbit label or `Degenerate`
/// (some scaled minor vanished, i.e. the point is off every maximal orbit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "signs")]
pub enum OrbitClass {
    Sign(SignVector),
    Degenerate,
}

/// Classifies `m` into its orbit `N*_ε`.
///
/// Writes `H = -i·m` (Hermitian) and computes the trailing principal minors
/// `δ̃_k = det(bottom-right k×k block)`, `δ̃_0 = 1`.  Congruence by a
/// lower-triangular `s` maps the trailing k-block of `diag(ε)` to the
/// congruence of the trailing block, so `sign(δ̃_k/δ̃_{k-1}) = ε_{p-k+1}`.
/// Returns `Degenerate` when `|δ̃_k| < tol·‖H‖^k`.
pub fn classify_orbit(m: &SkewHermitian, tol: f64) -> OrbitClass {
    let p = m.dim();
    let h = m.mat() * Complex64::new(0.0, -1.0);
    let scale = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return OrbitClass::Degenerate;
    }
    let mut eps = vec![0i8; p];
    let mut prev = 1.0f64; // δ̃_0
    for k in 1..=p {
        let block = h.view((p - k, p - k), (k, k)).into_owned();
        let det = block.determinant().re;
        if det.abs() < tol * scale.powi(k as i32) {
            return OrbitClass::Degenerate;
        }
        eps[p - k] = if det / prev > 0.0 { 1 } else { -1 };
        prev = det;
    }
    OrbitClass::Sign(SignVector { eps })
}

// ---------------------------------------------------------------------------
// Triangular factorization of the principal orbit
// ---------------------------------------------------------------------------

/// Inverts the bijection `s ↦ i s* s` on the principal orbit: returns the
/// unique lower-triangular `s` with positive diagonal such that
/// `i·s*·s = m`.
///
/// With `J` the index-reversal permutation, `J H J` (`H = -i·m`) is positive
/// definite exactly when `m` is on the principal orbit; its Cholesky factor
/// `L` gives the upper-triangular `R = L*` with `J H J = R* R`, and
/// `s = J R J` is the answer.
pub fn factor_orbit_point(m: &SkewHermitian) -> Result<TriangularS> {
    let p = m.dim();
    let h = m.mat() * Complex64::new(0.0, -1.0);
    let jhj = CMatrix::from_fn(p, p, |i, j| h[(p - 1 - i, p - 1 - j)]);
    let chol = nalgebra::linalg::Cholesky::<Complex64, Dyn>::new(jhj)
        .ok_or(Error::NotInPrincipalOrbit)?;
    let r = chol.l().adjoint();
    let s = CMatrix::from_fn(p, p, |i, j| r[(p - 1 - i, p - 1 - j)]);
    TriangularS::new(s).map_err(|_| Error::NotInPrincipalOrbit)
}

// ---------------------------------------------------------------------------
// Jacobian of the S-action
// ---------------------------------------------------------------------------

/// Absolute determinant of the real-linear map `m ↦ s* m s` on `N*`,
/// expressed in [`skew_basis`] coordinates (a p²×p² real determinant).
/// Equals `θ(s)^{2p}`.
pub fn action_jacobian(s: &TriangularS) -> f64 {
    let p = s.dim();
    let basis = skew_basis(p);
    let n = basis.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for (a, b) in basis.elements().iter().enumerate() {
        let image = s.act_on(b).expect("same dimension by construction");
        let coords = basis.coordinates(&image).expect("same dimension");
        for (c, x) in coords.iter().enumerate() {
            jac[(c, a)] = *x;
        }
    }
    jac.determinant().abs()
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PElement;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_size_and_gram() {
        // p = 1: single element i, norm 1
        let b1 = skew_basis(1);
        assert_eq!(b1.len(), 1);
        assert_eq!(b1.elements()[0].get(0, 0), c(0.0, 1.0));

        // p = 2: 4 elements, Gram = I₄; real dimension of the type is p²
        for p in 1..=4 {
            let b = skew_basis(p);
            assert_eq!(b.len(), p * p);
            let g = b.gram();
            let id = DMatrix::<f64>::identity(p * p, p * p);
            assert!((g - id).abs().max() < 1e-12);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in 1..=4 {
            let b = skew_basis(p);
            for _ in 0..20 {
                let m = SkewHermitian::random(p, &mut rng);
                let coords = b.coordinates(&m).unwrap();
                let back = b.reconstruct(&coords).unwrap();
                let diff = (m.mat() - back.mat())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-12 * m.norm().max(1.0));
            }
        }
    }

    #[test]
    fn polar_examples() {
        // p=1: m = 3i → (3, i)
        let m = SkewHermitian::scalar_imag(3.0);
        let (r, w) = polar_decompose(&m).unwrap();
        assert_eq!(r, 3.0);
        assert!((w.as_skew().get(0, 0) - c(0.0, 1.0)).norm() < 1e-15);

        // p=2: m = i·diag(3,4) → r = 5, ω = i·diag(0.6, 0.8)
        let m = SkewHermitian::new(CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(0.0, (i + 3) as f64)
            } else {
                c(0.0, 0.0)
            }
        }))
        .unwrap();
        let (r, w) = polar_decompose(&m).unwrap();
        assert!((r - 5.0).abs() < 1e-14);
        assert!((w.as_skew().get(0, 0) - c(0.0, 0.6)).norm() < 1e-15);
        assert!((w.as_skew().get(1, 1) - c(0.0, 0.8)).norm() < 1e-15);

        assert!(matches!(
            polar_decompose(&SkewHermitian::zeros(2)),
            Err(Error::ZeroVector)
        ));

        // reconstruction m = r·ω
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let m = SkewHermitian::random(3, &mut rng);
            let (r, w) = polar_decompose(&m).unwrap();
            let back = w.at_radius(r);
            let diff = (m.mat() - back.mat())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-14 * m.norm().max(1.0));
        }
    }

    #[test]
    fn sphere_sample_normalized_and_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in 1..=3 {
            for _ in 0..200 {
                let w = sphere_sample(p, &mut rng);
                assert!((w.as_skew().norm() - 1.0).abs() < 1e-12);
            }
        }

        // p=1: the sphere is {i, -i}; χ² test on 10⁴ draws
        let mut plus = 0usize;
        let n = 10_000;
        for _ in 0..n {
            let w = sphere_sample(1, &mut rng);
            if w.as_skew().get(0, 0).im > 0.0 {
                plus += 1;
            }
        }
        let e = n as f64 / 2.0;
        let chi2 = (plus as f64 - e).powi(2) / e + ((n - plus) as f64 - e).powi(2) / e;
        assert!(chi2 < 6.63, "chi2 = {chi2}"); // 99% quantile of χ²₁
    }

    #[test]
    fn sphere_sample_mean_zero() {
        // mean of basis coordinates over many draws ≈ 0
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = 2;
        let b = skew_basis(p);
        let n = 100_000;
        let mut sums = vec![0.0f64; p * p];
        for _ in 0..n {
            let w = sphere_sample(p, &mut rng);
            for (s, x) in sums.iter_mut().zip(b.coordinates(w.as_skew()).unwrap()) {
                *s += x;
            }
        }
        let bound = 4.0 / (n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64).abs() < bound);
        }
    }

    #[test]
    fn classify_diagonal_representatives() {
        for p in 1..=4 {
            let plus = SkewHermitian::new_unchecked(CMatrix::from_fn(p, p, |i, j| {
                if i == j {
                    c(0.0, 1.0)
                } else {
                    c(0.0, 0.0)
                }
            }));
            assert_eq!(
                classify_orbit(&plus, DEFAULT_DEGENERACY_TOL),
                OrbitClass::Sign(SignVector::all_plus(p))
            );
            let minus = plus.neg();
            assert_eq!(
                classify_orbit(&minus, DEFAULT_DEGENERACY_TOL),
                OrbitClass::Sign(SignVector::new(vec![-1; p]).unwrap())
            );
        }
    }

    #[test]
    fn classify_round_trip_all_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in 1..=4 {
            for mask in 0..(1usize << p) {
                let eps: Vec<i8> = (0..p)
                    .map(|k| if mask & (1 << k) != 0 { -1 } else { 1 })
                    .collect();
                let sv = SignVector::new(eps).unwrap();
                for _ in 0..50 {
                    let s = TriangularS::random(p, &mut rng);
                    let m = s.act_on(&sv.representative()).unwrap();
                    assert_eq!(
                        classify_orbit(&m, DEFAULT_DEGENERACY_TOL),
                        OrbitClass::Sign(sv.clone()),
                        "p={p} mask={mask}"
                    );
                }
            }
        }
    }

    #[test]
    fn classify_is_orbit_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for p in 1..=4 {
            for _ in 0..50 {
                let m = SkewHermitian::random(p, &mut rng);
                let s = TriangularS::random(p, &mut rng);
                let a = classify_orbit(&m, DEFAULT_DEGENERACY_TOL);
                let b = classify_orbit(&s.act_on(&m).unwrap(), DEFAULT_DEGENERACY_TOL);
                if a != OrbitClass::Degenerate && b != OrbitClass::Degenerate {
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn classify_degenerate() {
        assert_eq!(
            classify_orbit(&SkewHermitian::zeros(2), DEFAULT_DEGENERACY_TOL),
            OrbitClass::Degenerate
        );
        // rank-deficient H
        let m = SkewHermitian::new_unchecked(CMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 {
                c(0.0, 1.0)
            } else {
                c(0.0, 0.0)
            }
        }));
        assert_eq!(
            classify_orbit(&m, DEFAULT_DEGENERACY_TOL),
            OrbitClass::Degenerate
        );
    }

    #[test]
    fn factor_examples() {
        // m = i·I → s = I
        let m = SignVector::all_plus(3).representative();
        let s = factor_orbit_point(&m).unwrap();
        assert!(s.is_identity());

        // p=1: m = 9i → s = 3
        let s = factor_orbit_point(&SkewHermitian::scalar_imag(9.0)).unwrap();
        assert!((s.get(0, 0) - c(3.0, 0.0)).norm() < 1e-14);

        // p=2: m = i·[[2,1],[1,1]] → s = [[1,0],[1,1]]
        let m = SkewHermitian::new_unchecked(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 2.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)],
        ));
        let s = factor_orbit_point(&m).unwrap();
        let expect = [c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        for (k, e) in expect.iter().enumerate() {
            assert!((s.get(k / 2, k % 2) - e).norm() < 1e-12);
        }
    }

    #[test]
    fn factor_rejects_other_orbits() {
        let m = SkewHermitian::scalar_imag(-1.0);
        assert!(matches!(
            factor_orbit_point(&m),
            Err(Error::NotInPrincipalOrbit)
        ));
    }

    #[test]
    fn factor_inverts_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for p in 1..=4 {
            for _ in 0..50 {
                let s = TriangularS::random(p, &mut rng);
                // m = i s* s = act_on(s, i·I)
                let m = s.act_on(&SignVector::all_plus(p).representative()).unwrap();
                let back = factor_orbit_point(&m).unwrap();
                let diff = (back.mat() - s.mat())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-10 * s.frob_norm().max(1.0), "p={p} diff={diff:e}");
            }
        }
    }

    #[test]
    fn factor_equivariance() {
        // factor(s0* m s0) = factor(m)·s0
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for p in 1..=3 {
            for _ in 0..30 {
                let s = TriangularS::random(p, &mut rng);
                let s0 = TriangularS::random(p, &mut rng);
                let m = s.act_on(&SignVector::all_plus(p).representative()).unwrap();
                let lhs = factor_orbit_point(&s0.act_on(&m).unwrap()).unwrap();
                let rhs = factor_orbit_point(&m).unwrap().multiply(&s0).unwrap();
                let scale = rhs.frob_norm().max(1.0);
                let diff = (lhs.mat() - rhs.mat())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn jacobian_examples_and_theta_identity() {
        assert!((action_jacobian(&TriangularS::identity(2)) - 1.0).abs() < 1e-14);

        // p=1, s=3: the map is m ↦ 9m on a 1-dim space
        let s = TriangularS::scalar(3.0).unwrap();
        assert!((action_jacobian(&s) - 9.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for p in 1..=3 {
            for _ in 0..50 {
                let s = TriangularS::random(p, &mut rng);
                let jac = action_jacobian(&s);
                let theta = s.theta().powi(2 * p as i32);
                assert!(
                    (jac - theta).abs() / theta < 1e-8,
                    "p={p}: jac={jac} θ^2p={theta}"
                );
            }
        }
    }

    #[test]
    fn jacobian_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..20 {
            let s1 = TriangularS::random(2, &mut rng);
            let s2 = TriangularS::random(2, &mut rng);
            let lhs = action_jacobian(&s1.multiply(&s2).unwrap());
            let rhs = action_jacobian(&s1) * action_jacobian(&s2);
            assert!((lhs - rhs).abs() / rhs < 1e-8);
        }
    }

    #[test]
    fn orbit_points_from_group_elements() {
        // sanity: the n-component of random P elements classifies somewhere
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let g = PElement::random(3, &mut rng);
        let _ = classify_orbit(g.n(), DEFAULT_DEGENERACY_TOL);
    }
}
