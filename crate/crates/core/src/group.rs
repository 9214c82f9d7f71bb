//! The matrix groups `S`, `N` and their semidirect product `P`.
//!
//! `S` is the solvable group of lower-triangular p×p complex matrices with
//! strictly positive real diagonal, `N` the additive group of skew-Hermitian
//! p×p matrices, and `P = S ⋉ N` with the product
//! `(s1, n1)·(s2, n2) = (s1 s2, s2⁻¹ n1 s2*⁻¹ + n2)`.
//!
//! All types are immutable values and every operation is pure, so they can be
//! shared freely between threads.
//!
//! JSON encoding (used by every downstream module and the CLI): a complex
//! scalar is a two-element array `[re, im]`, a matrix is a row-major nested
//! array of scalars, and a `P` element is the object `{"s": ..., "n": ...}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense complex matrix backing all group elements.
pub type CMatrix = DMatrix<Complex64>;

/// Absolute tolerance for structural invariant checks, scaled by
/// `max(1, ‖mat‖_F)`.
pub const STRUCT_TOL: f64 = 1e-12;

/// Tolerance for the imaginary residue of the trace pairing, scaled by
/// `max(1, ‖n‖·‖m‖)`.
pub const PAIRING_IMAG_TOL: f64 = 1e-13;

fn frob(mat: &CMatrix) -> f64 {
    mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_square(mat: &CMatrix) -> Result<usize> {
    let (r, c) = mat.shape();
    if r == 0 || r != c {
        return Err(Error::InvalidSpec(format!(
            "expected a nonempty square matrix, got {r}x{c}"
        )));
    }
    Ok(r)
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            got: b,
        });
    }
    Ok(())
}

/// Draws a standard complex Gaussian: real and imaginary parts are
/// independent `N(0, 1/2)`, so `E|z|² = 1`.
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / 2f64.sqrt()
}

// ---------------------------------------------------------------------------
// TriangularS
// ---------------------------------------------------------------------------

/// Element of `S`: lower-triangular with strictly positive real diagonal.
///
/// The stored matrix is normalized: entries above the diagonal are exactly
/// zero and diagonal entries have exactly zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularS {
    mat: CMatrix,
}

impl TriangularS {
    /// Validates lower-triangularity and the positive diagonal within
    /// [`STRUCT_TOL`] (scaled), then stores the cleaned matrix.
    pub fn new(mat: CMatrix) -> Result<Self> {
        let p = check_square(&mat)?;
        let tol = STRUCT_TOL * frob(&mat).max(1.0);
        for i in 0..p {
            for j in (i + 1)..p {
                if mat[(i, j)].norm() > tol {
                    return Err(Error::NotTriangular {
                        reason: format!("entry ({i},{j}) above the diagonal is {}", mat[(i, j)]),
                    });
                }
            }
            let d = mat[(i, i)];
            if !(d.re > 0.0) || d.im.abs() > tol {
                return Err(Error::NotTriangular {
                    reason: format!("diagonal entry ({i},{i}) = {d} is not positive real"),
                });
            }
        }
        let mut clean = mat;
        for i in 0..p {
            for j in (i + 1)..p {
                clean[(i, j)] = Complex64::new(0.0, 0.0);
            }
            clean[(i, i)] = Complex64::new(clean[(i, i)].re, 0.0);
        }
        Ok(Self { mat: clean })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            mat: CMatrix::identity(p, p),
        }
    }

    /// 1×1 element, `sigma > 0`.
    pub fn scalar(sigma: f64) -> Result<Self> {
        Self::new(CMatrix::from_element(1, 1, Complex64::new(sigma, 0.0)))
    }

    /// Random element: diagonal `exp(U[-1,1])`, strictly lower entries
    /// standard complex Gaussians.
    pub fn random<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Self {
        let mut mat = CMatrix::zeros(p, p);
        for i in 0..p {
            mat[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0f64).exp(), 0.0);
            for j in 0..i {
                mat[(i, j)] = complex_gaussian(rng);
            }
        }
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn is_identity(&self) -> bool {
        let p = self.dim();
        (0..p).all(|i| {
            (0..p).all(|j| {
                let e = self.mat[(i, j)];
                if i == j {
                    e.re == 1.0 && e.im == 0.0
                } else {
                    e.re == 0.0 && e.im == 0.0
                }
            })
        })
    }

    /// Group law of `S` (matrix product).  A product of lower-triangular
    /// matrices with positive diagonals is again one, exactly.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            mat: &self.mat * &other.mat,
        })
    }

    /// Inverse by forward substitution; always exists since the diagonal is
    /// strictly positive.
    pub fn inverse(&self) -> Self {
        let p = self.dim();
        let inv = self
            .mat
            .solve_lower_triangular(&CMatrix::identity(p, p))
            .expect("positive diagonal guarantees invertibility");
        Self { mat: inv }
    }

    /// `θ(s) = s_11 · … · s_pp`, the positive character of `S` whose square
    /// `θ^{2p}` is the Jacobian of `m ↦ s*ms`.
    pub fn theta(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).product()
    }

    /// The action of `S` on the character group: `m ↦ s* m s`.
    pub fn act_on(&self, m: &SkewHermitian) -> Result<SkewHermitian> {
        check_dims(self.dim(), m.dim())?;
        Ok(SkewHermitian::from_raw(
            self.mat.adjoint() * m.mat() * &self.mat,
        ))
    }

    pub fn frob_norm(&self) -> f64 {
        frob(&self.mat)
    }
}

// ---------------------------------------------------------------------------
// SkewHermitian
// ---------------------------------------------------------------------------

/// Element of `N` (or of the character group `N*`): `m* = -m`.
///
/// The parameter space has real dimension p²; see
/// [`crate::orbit::skew_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian {
    mat: CMatrix,
}

impl SkewHermitian {
    /// Validates skew-Hermitianity within [`STRUCT_TOL`] (scaled by the
    /// matrix norm) and stores the exactly skew part `(m - m*)/2`.
    pub fn new(mat: CMatrix) -> Result<Self> {
        check_square(&mat)?;
        let tol = STRUCT_TOL * frob(&mat).max(1.0);
        let residual = frob(&(&mat + mat.adjoint()));
        if residual > tol {
            return Err(Error::NotSkewHermitian {
                residual,
                tolerance: tol,
            });
        }
        let skew = (&mat - mat.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { mat: skew })
    }

    /// Stores the matrix without validation or cleanup.  Intended for fault
    /// injection and for internal operations that preserve skewness exactly.
    pub fn new_unchecked(mat: CMatrix) -> Self {
        Self { mat }
    }

    pub(crate) fn from_raw(mat: CMatrix) -> Self {
        Self { mat }
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            mat: CMatrix::zeros(p, p),
        }
    }

    /// 1×1 element `x·i`.
    pub fn scalar_imag(x: f64) -> Self {
        Self {
            mat: CMatrix::from_element(1, 1, Complex64::new(0.0, x)),
        }
    }

    /// Random element `i·H` with `H` a GUE-style Hermitian Gaussian.
    pub fn random<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Self {
        let mut mat = CMatrix::zeros(p, p);
        for k in 0..p {
            let d: f64 = rng.sample(StandardNormal);
            mat[(k, k)] = Complex64::new(0.0, d);
            for j in 0..k {
                // i·z above, i·conj(z) below keeps m* = -m exact.
                let z = complex_gaussian(rng);
                mat[(j, k)] = Complex64::new(0.0, 1.0) * z;
                mat[(k, j)] = Complex64::new(0.0, 1.0) * z.conj();
            }
        }
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Frobenius norm `|m| = √Tr(m m*)`; zero iff `m = 0`.
    pub fn norm(&self) -> f64 {
        frob(&self.mat)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Scaling by a real factor (stays skew-Hermitian).
    pub fn scaled(&self, r: f64) -> Self {
        Self {
            mat: &self.mat * Complex64::new(r, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            mat: &self.mat + &other.mat,
        })
    }

    pub fn neg(&self) -> Self {
        Self { mat: -&self.mat }
    }

    /// Skewness defect `‖m + m*‖_F`, for diagnostics and tests.
    pub fn skew_residual(&self) -> f64 {
        frob(&(&self.mat + self.mat.adjoint()))
    }
}

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

/// `⟨n, m⟩ = Tr(nm)`, real for skew-Hermitian arguments.
///
/// The imaginary part of the computed trace is checked against
/// [`PAIRING_IMAG_TOL`] (scaled by `max(1, ‖n‖·‖m‖)`) and discarded; a
/// violation means an input is not actually skew-Hermitian.
pub fn pairing(n: &SkewHermitian, m: &SkewHermitian) -> Result<f64> {
    check_dims(n.dim(), m.dim())?;
    let tr = trace_product(n, m);
    let tol = PAIRING_IMAG_TOL * (n.norm() * m.norm()).max(1.0);
    if tr.im.abs() > tol {
        return Err(Error::ImaginaryResidue {
            residue: tr.im.abs(),
            tolerance: tol,
        });
    }
    Ok(tr.re)
}

/// Real part of `Tr(nm)` without the corruption check; used in evaluation
/// hot paths where the inputs are known-valid by construction.
pub fn pairing_unchecked(n: &SkewHermitian, m: &SkewHermitian) -> f64 {
    trace_product(n, m).re
}

fn trace_product(n: &SkewHermitian, m: &SkewHermitian) -> Complex64 {
    let p = n.dim();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..p {
        for k in 0..p {
            tr += n.mat[(i, k)] * m.mat[(k, i)];
        }
    }
    tr
}

// ---------------------------------------------------------------------------
// PElement
// ---------------------------------------------------------------------------

/// Element `(s, n)` of the Iwasawa group `P = S ⋉ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PElement {
    s: TriangularS,
    n: SkewHermitian,
}

impl PElement {
    pub fn new(s: TriangularS, n: SkewHermitian) -> Result<Self> {
        check_dims(s.dim(), n.dim())?;
        Ok(Self { s, n })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            s: TriangularS::identity(p),
            n: SkewHermitian::zeros(p),
        }
    }

    /// `(s, 0)`.
    pub fn from_s(s: TriangularS) -> Self {
        let p = s.dim();
        Self {
            s,
            n: SkewHermitian::zeros(p),
        }
    }

    /// `(e, n)`.
    pub fn from_n(n: SkewHermitian) -> Self {
        let p = n.dim();
        Self {
            s: TriangularS::identity(p),
            n,
        }
    }

    pub fn random<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Self {
        Self {
            s: TriangularS::random(p, rng),
            n: SkewHermitian::random(p, rng),
        }
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn s(&self) -> &TriangularS {
        &self.s
    }

    pub fn n(&self) -> &SkewHermitian {
        &self.n
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_identity() && self.n.is_zero()
    }

    /// Product `(s1, n1)·(s2, n2) = (s1 s2, s2⁻¹ n1 s2*⁻¹ + n2)`.
    ///
    /// The middle term is computed with two triangular solves instead of an
    /// explicit inverse.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        let s = self.s.multiply(&other.s)?;
        // y = s2⁻¹ n1, then x = y (s2*)⁻¹ via s2 x* = y*.
        let y = other
            .s
            .mat()
            .solve_lower_triangular(self.n.mat())
            .expect("positive diagonal guarantees invertibility");
        let xh = other
            .s
            .mat()
            .solve_lower_triangular(&y.adjoint())
            .expect("positive diagonal guarantees invertibility");
        let n = SkewHermitian::from_raw(xh.adjoint() + other.n.mat());
        Ok(Self { s, n })
    }

    /// Inverse `(s⁻¹, -s n s*)`.
    pub fn inverse(&self) -> Self {
        let s_inv = self.s.inverse();
        let n = SkewHermitian::from_raw(-(self.s.mat() * self.n.mat() * self.s.mat().adjoint()));
        Self { s: s_inv, n }
    }
}

// ---------------------------------------------------------------------------
// JSON encoding
// ---------------------------------------------------------------------------

type Rows = Vec<Vec<(f64, f64)>>;

fn mat_to_rows(mat: &CMatrix) -> Rows {
    (0..mat.nrows())
        .map(|i| {
            (0..mat.ncols())
                .map(|j| (mat[(i, j)].re, mat[(i, j)].im))
                .collect()
        })
        .collect()
}

fn rows_to_mat(rows: &Rows) -> Result<CMatrix> {
    let p = rows.len();
    if p == 0 || rows.iter().any(|r| r.len() != p) {
        return Err(Error::InvalidSpec(
            "matrix rows must form a nonempty square array".into(),
        ));
    }
    Ok(CMatrix::from_fn(p, p, |i, j| {
        Complex64::new(rows[i][j].0, rows[i][j].1)
    }))
}

impl Serialize for TriangularS {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        mat_to_rows(&self.mat).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TriangularS {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Rows::deserialize(de)?;
        let mat = rows_to_mat(&rows).map_err(D::Error::custom)?;
        Self::new(mat).map_err(D::Error::custom)
    }
}

impl Serialize for SkewHermitian {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        mat_to_rows(&self.mat).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SkewHermitian {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Rows::deserialize(de)?;
        let mat = rows_to_mat(&rows).map_err(D::Error::custom)?;
        Self::new(mat).map_err(D::Error::custom)
    }
}

impl Serialize for PElement {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("PElement", 2)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            s: TriangularS,
            n: SkewHermitian,
        }
        let r = Repr::deserialize(de)?;
        Self::new(r.s, r.n).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise difference relative to the scale of the reference.
    fn rel_residual(a: &CMatrix, b: &CMatrix) -> f64 {
        let scale = b.iter().map(|z| z.norm()).fold(1.0, f64::max);
        max_entry_diff(a, b) / scale
    }

    #[test]
    fn s_multiply_identity_and_scalar() {
        let s = TriangularS::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 1.0), c(2.0, 0.0)],
        ))
        .unwrap();
        let id = TriangularS::identity(2);
        assert_eq!(id.multiply(&s).unwrap(), s);
        assert_eq!(s.multiply(&id).unwrap(), s);

        let a = TriangularS::scalar(2.0).unwrap();
        let b = TriangularS::scalar(3.0).unwrap();
        assert_eq!(a.multiply(&b).unwrap().get(0, 0), c(6.0, 0.0));
    }

    #[test]
    fn s_multiply_hand_product() {
        // [[1,0],[1+i,2]] · [[3,0],[0,1]] = [[3,0],[3+3i,2]]
        let s1 = TriangularS::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 1.0), c(2.0, 0.0)],
        ))
        .unwrap();
        let s2 = TriangularS::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ))
        .unwrap();
        let prod = s1.multiply(&s2).unwrap();
        let expect = CMatrix::from_row_slice(
            2,
            2,
            &[c(3.0, 0.0), c(0.0, 0.0), c(3.0, 3.0), c(2.0, 0.0)],
        );
        assert!(max_entry_diff(prod.mat(), &expect) < 1e-15);
    }

    #[test]
    fn s_rejects_bad_matrices() {
        // entry above the diagonal
        let bad = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            TriangularS::new(bad),
            Err(Error::NotTriangular { .. })
        ));
        // non-positive diagonal
        let bad = CMatrix::from_row_slice(
            2,
            2,
            &[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            TriangularS::new(bad),
            Err(Error::NotTriangular { .. })
        ));
    }

    #[test]
    fn p_product_identity_and_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = PElement::random(3, &mut rng);
        let e = PElement::identity(3);
        let left = e.compose(&g).unwrap();
        let right = g.compose(&e).unwrap();
        assert!(rel_residual(left.s.mat(), g.s.mat()) < 1e-15);
        assert!(max_entry_diff(left.n.mat(), g.n.mat()) < 1e-14);
        assert!(rel_residual(right.s.mat(), g.s.mat()) < 1e-15);
        assert!(max_entry_diff(right.n.mat(), g.n.mat()) < 1e-14);

        // p = 1: (2, 3i)·(2, 3i) = (4, 3.75i)
        let g = PElement::new(
            TriangularS::scalar(2.0).unwrap(),
            SkewHermitian::scalar_imag(3.0),
        )
        .unwrap();
        let gg = g.compose(&g).unwrap();
        assert!((gg.s().get(0, 0) - c(4.0, 0.0)).norm() < 1e-15);
        assert!((gg.n().get(0, 0) - c(0.0, 3.75)).norm() < 1e-15);
    }

    #[test]
    fn p_inverse_scalar_and_round_trip() {
        // p = 1: (2, 3i)⁻¹ = (0.5, -12i)
        let g = PElement::new(
            TriangularS::scalar(2.0).unwrap(),
            SkewHermitian::scalar_imag(3.0),
        )
        .unwrap();
        let inv = g.inverse();
        assert!((inv.s().get(0, 0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((inv.n().get(0, 0) - c(0.0, -12.0)).norm() < 1e-15);

        let e = PElement::identity(2).inverse();
        assert!(e.is_identity());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in 1..=4 {
            for _ in 0..100 {
                let g = PElement::random(p, &mut rng);
                let prod = g.compose(&g.inverse()).unwrap();
                let id = PElement::identity(p);
                assert!(rel_residual(prod.s.mat(), id.s.mat()) < 1e-12);
                assert!(max_entry_diff(prod.n.mat(), id.n.mat()) < 1e-12 * g.n.norm().max(1.0));
            }
        }
    }

    #[test]
    fn p_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in 1..=4 {
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let g1 = PElement::random(p, &mut rng);
                let g2 = PElement::random(p, &mut rng);
                let g3 = PElement::random(p, &mut rng);
                let lhs = g1.compose(&g2).unwrap().compose(&g3).unwrap();
                let rhs = g1.compose(&g2.compose(&g3).unwrap()).unwrap();
                worst = worst
                    .max(rel_residual(lhs.s.mat(), rhs.s.mat()))
                    .max(rel_residual(lhs.n.mat(), rhs.n.mat()));
            }
            assert!(worst < 1e-12, "p={p}: associativity residual {worst:e}");
        }
    }

    #[test]
    fn theta_values_and_multiplicativity() {
        assert_eq!(TriangularS::identity(3).theta(), 1.0);
        let d = TriangularS::new(CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c((i + 2) as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }))
        .unwrap();
        assert_eq!(d.theta(), 6.0);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in 1..=4 {
            for _ in 0..50 {
                let s1 = TriangularS::random(p, &mut rng);
                let s2 = TriangularS::random(p, &mut rng);
                let lhs = s1.multiply(&s2).unwrap().theta();
                let rhs = s1.theta() * s2.theta();
                assert!((lhs - rhs).abs() / rhs.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn pairing_values_and_symmetry() {
        let z = SkewHermitian::zeros(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = SkewHermitian::random(2, &mut rng);
        assert_eq!(pairing(&z, &m).unwrap(), 0.0);

        // p=1: n = 2i, m = 3i → Tr(-6) = -6
        let n = SkewHermitian::scalar_imag(2.0);
        let m = SkewHermitian::scalar_imag(3.0);
        assert!((pairing(&n, &m).unwrap() + 6.0).abs() < 1e-15);

        for p in 1..=4 {
            for _ in 0..50 {
                let a = SkewHermitian::random(p, &mut rng);
                let b = SkewHermitian::random(p, &mut rng);
                let ab = pairing(&a, &b).unwrap();
                let ba = pairing(&b, &a).unwrap();
                assert!((ab - ba).abs() < 1e-13 * (1.0 + ab.abs()));
            }
        }
    }

    #[test]
    fn pairing_bilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let a = SkewHermitian::random(3, &mut rng);
            let b = SkewHermitian::random(3, &mut rng);
            let m = SkewHermitian::random(3, &mut rng);
            let lam = 1.7;
            let lhs = pairing(&a.scaled(lam).add(&b).unwrap(), &m).unwrap();
            let rhs = lam * pairing(&a, &m).unwrap() + pairing(&b, &m).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn pairing_detects_corrupted_input() {
        // A matrix with a nonzero real diagonal part is not skew-Hermitian.
        let bad = SkewHermitian::new_unchecked(CMatrix::from_element(1, 1, c(1.0, 2.0)));
        let m = SkewHermitian::scalar_imag(3.0);
        assert!(matches!(
            pairing(&bad, &m),
            Err(Error::ImaginaryResidue { .. })
        ));
    }

    #[test]
    fn frob_norm_values() {
        assert_eq!(SkewHermitian::zeros(3).norm(), 0.0);
        assert_eq!(SkewHermitian::scalar_imag(4.0).norm(), 4.0);
        // p=2: |i·diag(3,4)| = 5
        let m = SkewHermitian::new(CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(0.0, (i + 3) as f64)
            } else {
                c(0.0, 0.0)
            }
        }))
        .unwrap();
        assert!((m.norm() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn conj_action_values_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let m = SkewHermitian::random(3, &mut rng);
        let id = TriangularS::identity(3);
        assert!(max_entry_diff(id.act_on(&m).unwrap().mat(), m.mat()) < 1e-15);

        // p=1: s = 2, m = i → 4i
        let s = TriangularS::scalar(2.0).unwrap();
        let m1 = SkewHermitian::scalar_imag(1.0);
        assert!((s.act_on(&m1).unwrap().get(0, 0) - c(0.0, 4.0)).norm() < 1e-15);

        for p in 1..=4 {
            for _ in 0..50 {
                let s1 = TriangularS::random(p, &mut rng);
                let s2 = TriangularS::random(p, &mut rng);
                let m = SkewHermitian::random(p, &mut rng);
                let lhs = s2.act_on(&s1.act_on(&m).unwrap()).unwrap();
                let rhs = s1.multiply(&s2).unwrap().act_on(&m).unwrap();
                assert!(rel_residual(lhs.mat(), rhs.mat()) < 1e-12);
                // skewness is preserved
                assert!(lhs.skew_residual() < 1e-12 * lhs.norm().max(1.0));
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let s = TriangularS::identity(2);
        let m = SkewHermitian::zeros(3);
        assert!(matches!(
            s.act_on(&m),
            Err(Error::DimensionMismatch { .. })
        ));
        let a = SkewHermitian::zeros(2);
        assert!(matches!(
            pairing(&a, &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_encoding_shape() {
        let g = PElement::new(
            TriangularS::scalar(2.0).unwrap(),
            SkewHermitian::scalar_imag(3.0),
        )
        .unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["s"][0][0][0], 2.0);
        assert_eq!(v["s"][0][0][1], 0.0);
        assert_eq!(v["n"][0][0][1], 3.0);
    }

    #[test]
    fn json_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for p in 1..=4 {
            let g = PElement::random(p, &mut rng);
            let text = serde_json::to_string(&g).unwrap();
            let back: PElement = serde_json::from_str(&text).unwrap();
            // serde_json prints f64 with round-trip precision
            assert_eq!(g, back);
        }
    }

    #[test]
    fn json_rejects_invalid() {
        let r: std::result::Result<SkewHermitian, _> =
            serde_json::from_str("[[[1.0, 0.0]]]"); // 1x1 real ≠ skew
        assert!(r.is_err());
        let r: std::result::Result<TriangularS, _> = serde_json::from_str("[[[0.0, 0.0]]]");
        assert!(r.is_err());
    }
}
