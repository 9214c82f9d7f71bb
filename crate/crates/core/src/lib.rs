//! Numerical kernel for the Iwasawa subgroup `P = S ⋉ N` of `U(p,p)`.
//!
//! `S` is the group of p×p lower-triangular complex matrices with positive
//! real diagonal, `N` the additive group of p×p skew-Hermitian matrices.
//! Elements of `P` are pairs `(s, n)` with the product
//!
//! ```text
//! (s1, n1) · (s2, n2) = (s1 s2, s2⁻¹ n1 s2*⁻¹ + n2).
//! ```
//!
//! The crate provides:
//!
//! * exact group arithmetic and the trace pairing ([`group`]);
//! * the geometry of the character group `N*`: orthonormal skew bases,
//!   spherical coordinates, the 2^p orbit classes and the triangular
//!   factorization of the principal orbit ([`orbit`]);
//! * deterministic seeded Monte Carlo on the unit sphere of `N*` plus
//!   adaptive radial quadrature and divergence-slope fits ([`quadrature`]);
//! * the multiplier representations `T(n)`, `T_a(s)` acting pointwise on
//!   functions over the principal orbit ([`representation`]);
//! * the special vector `f0`, the 1-cocycle `β(g) = T(g) f0 − f0`, its
//!   closed-form and direct norms, and divergence diagnostics ([`cocycle`]).

pub mod cocycle;
pub mod error;
pub mod group;
pub mod orbit;
pub mod quadrature;
pub mod representation;

pub use cocycle::{
    analyze_element, beta, beta_n_norm_closed, beta_norm_closed, beta_norm_direct,
    beta_s_norm_closed, beta_truncation_fit, cocycle_identity_residual, corollary2_divergence,
    estimates_agree, expected_summary, f0_divergence, mismatch_integral, orbit_norm_sq,
    suggested_truncation, theorem1_verdict, CocycleReport, CocycleVerdict, ElementKind,
    OperatorAnalysis, SpecialVector, TheoremVerdict, VerdictThresholds,
};
pub use error::{Error, Result};
pub use group::{pairing, pairing_unchecked, CMatrix, PElement, SkewHermitian, TriangularS};
pub use orbit::{
    action_jacobian, classify_orbit, factor_orbit_point, polar_decompose, skew_basis,
    sphere_sample, OrbitClass, SignVector, SkewBasis, SphereDirection,
};
pub use quadrature::{
    divergence_slope, frullani_check, radial_integral, sphere_area, sphere_integral,
    DivergenceFit, Estimate, QuadratureSpec, RadialRule, Truncation,
};
pub use representation::{
    coefficient_b, coefficient_c, operator_norm_estimate, t_group, t_n, t_s, unitarity_report,
    Multiplier, OrbitFunction, UnitarityReport,
};
