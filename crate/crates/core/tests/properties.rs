//! Cross-module properties: norm transport through the coefficient
//! functions, determinism of nested quadrature, and encoding invariants.

use iwasawa_core::{
    beta_n_norm_closed, beta_norm_direct, beta_s_norm_closed, coefficient_c, estimates_agree,
    operator_norm_estimate, orbit_norm_sq, polar_decompose, suggested_truncation, t_group, t_n,
    t_s, Multiplier, OrbitFunction, PElement, QuadratureSpec, SkewHermitian, SpecialVector,
    TriangularS, VerdictThresholds,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn orbit_point(p: usize, rng: &mut ChaCha8Rng) -> SkewHermitian {
    let s = TriangularS::random(p, rng);
    let rep = iwasawa_core::SignVector::all_plus(p).representative();
    s.act_on(&rep).unwrap()
}

#[test]
fn norm_transport_through_coefficient_c() {
    // ‖T_a(s0) f‖² = ∫ |f(m) c(m, s0)|² dν(m) for a square-integrable f.
    let p = 2;
    let a = Multiplier::standard(p);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s0 = TriangularS::random(p, &mut rng);
    let f = OrbitFunction::gaussian_bump(p);
    let spec = QuadratureSpec::new(55).with_samples(4_000);

    let lhs = orbit_norm_sq(&t_s(&s0, &a, &f).unwrap(), &spec).unwrap();

    let s0c = s0.clone();
    let fc = f.clone();
    let weighted = OrbitFunction::with_ray(
        p,
        "f·c",
        {
            let s0c = s0c.clone();
            let fc = fc.clone();
            move |m| fc.eval(m) * coefficient_c(m, &s0c, &a).unwrap()
        },
        move |w| {
            // c is degree-0 homogeneous: evaluate it once per direction
            let c = coefficient_c(w.as_skew(), &s0c, &a).unwrap();
            let ray = fc.ray(w);
            Box::new(move |r| ray(r) * c)
        },
    );
    let rhs = orbit_norm_sq(&weighted, &spec).unwrap();
    let tol = 3.0 * lhs.combined_std_error(&rhs) + 1e-9;
    assert!(
        (lhs.value - rhs.value).abs() <= tol,
        "lhs {} rhs {}",
        lhs.value,
        rhs.value
    );
}

#[test]
fn phase_operator_keeps_monte_carlo_norm() {
    // T(n) is a modulus-one multiplier: the MC norm with identical spec
    // matches to roundoff (same weights, same |values|).
    let p = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = SkewHermitian::random(p, &mut rng);
    let f = OrbitFunction::gaussian_bump(p);
    let spec = QuadratureSpec::new(77).with_samples(2_000);
    let base = orbit_norm_sq(&f, &spec).unwrap();
    let phased = orbit_norm_sq(&t_n(&n, &f).unwrap(), &spec).unwrap();
    assert!(
        (base.value - phased.value).abs() <= 1e-13 * base.value,
        "{} vs {}",
        base.value,
        phased.value
    );
}

#[test]
fn direct_norm_deterministic_across_thread_counts() {
    let p = 2;
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = PElement::random(p, &mut rng);
    let mut spec = QuadratureSpec::new(11).with_samples(500);
    spec.radial_truncation = suggested_truncation(&g, &spec.radial_truncation, spec.seed);

    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| beta_norm_direct(&g, &a, &f0, &spec).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.value.to_bits(), four.value.to_bits());
    assert_eq!(one.std_error.to_bits(), four.std_error.to_bits());
}

#[test]
fn closed_vs_direct_p3() {
    let p = 3;
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p);
    let th = VerdictThresholds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = QuadratureSpec::new(13).with_samples(2_000);

    let n = SkewHermitian::random(p, &mut rng);
    let closed = beta_n_norm_closed(&n, &spec).unwrap();
    let direct = beta_norm_direct(&PElement::from_n(n), &a, &f0, &spec).unwrap();
    assert!(
        estimates_agree(&closed, &direct, &th),
        "n: closed {closed:?} direct {direct:?}"
    );

    let s0 = TriangularS::random(p, &mut rng);
    let g = PElement::from_s(s0.clone());
    let closed = beta_s_norm_closed(&s0, &spec).unwrap();
    let mut tuned = spec.clone();
    tuned.radial_truncation = suggested_truncation(&g, &spec.radial_truncation, spec.seed);
    let direct = beta_norm_direct(&g, &a, &f0, &tuned).unwrap();
    assert!(
        estimates_agree(&closed, &direct, &th),
        "s: closed {closed:?} direct {direct:?}"
    );
}

#[test]
fn operator_norm_exceeds_transport_ratio() {
    // sanity: ‖T_a(s0) f‖ ≤ opnorm·‖f‖ for the Gaussian bump
    let p = 2;
    let a = Multiplier::standard(p);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s0 = TriangularS::random(p, &mut rng);
    let f = OrbitFunction::gaussian_bump(p);
    let spec = QuadratureSpec::new(7).with_samples(2_000);
    let opnorm = operator_norm_estimate(&s0, &a, &spec).unwrap();
    let nf = orbit_norm_sq(&f, &spec).unwrap();
    let ntf = orbit_norm_sq(&t_s(&s0, &a, &f).unwrap(), &spec).unwrap();
    assert!(
        ntf.value.sqrt() <= opnorm * nf.value.sqrt() * (1.0 + 1e-6) + 4.0 * ntf.std_error,
        "‖Tf‖ = {} opnorm·‖f‖ = {}",
        ntf.value.sqrt(),
        opnorm * nf.value.sqrt()
    );
}

#[test]
fn group_action_composes_on_functions() {
    // (T(g1)∘T(g2)) f and T(g1·g2) f agree on a ray, including ray forms
    let p = 3;
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p).to_orbit_function();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g1 = PElement::random(p, &mut rng);
    let g2 = PElement::random(p, &mut rng);
    let lhs = t_group(&g1, &a, &t_group(&g2, &a, &f0).unwrap()).unwrap();
    let rhs = t_group(&g1.compose(&g2).unwrap(), &a, &f0).unwrap();
    let m = orbit_point(p, &mut rng);
    let (r, w) = polar_decompose(&m).unwrap();
    let via_rays = (lhs.ray(&w)(r) - rhs.ray(&w)(r)).norm();
    assert!(via_rays < 1e-10 * (1.0 + rhs.eval(&m).norm()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip_preserves_elements(seed in 0u64..1_000_000, p in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = PElement::random(p, &mut rng);
        let text = serde_json::to_string(&g).unwrap();
        let back: PElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn polar_reconstruction(seed in 0u64..1_000_000, p in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = SkewHermitian::random(p, &mut rng);
        prop_assume!(m.norm() > 1e-6);
        let (r, w) = polar_decompose(&m).unwrap();
        let back = w.at_radius(r);
        let diff = (0..p).flat_map(|i| (0..p).map(move |j| (i, j)))
            .map(|(i, j)| (m.get(i, j) - back.get(i, j)).norm())
            .fold(0.0, f64::max);
        prop_assert!(diff < 1e-14 * m.norm());
        prop_assert!((w.as_skew().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theta_positive_and_multiplicative(seed in 0u64..1_000_000, p in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = TriangularS::random(p, &mut rng);
        let s2 = TriangularS::random(p, &mut rng);
        prop_assert!(s1.theta() > 0.0);
        let lhs = s1.multiply(&s2).unwrap().theta();
        let rhs = s1.theta() * s2.theta();
        prop_assert!((lhs - rhs).abs() < 1e-13 * rhs.abs());
    }
}

#[test]
fn provenance_records_composition() {
    let p = 2;
    let a = Multiplier::standard(p);
    let f0 = SpecialVector::standard(p).to_orbit_function();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = PElement::random(p, &mut rng);
    let tf = t_group(&g, &a, &f0).unwrap();
    assert!(tf.provenance().contains("T_s"));
    assert!(tf.provenance().contains("T_n"));
    assert!(tf.provenance().contains("f0"));
    let _ = Complex64::new(0.0, 0.0); // silence unused import on some cfgs
}
