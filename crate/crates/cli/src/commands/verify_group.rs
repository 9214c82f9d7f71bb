//! Property suites for the group layer: group axioms for `P`,
//! θ-multiplicativity, conjugation-action laws and the measure Jacobian.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use iwasawa_core::{
    action_jacobian, pairing, CMatrix, Error, PElement, SkewHermitian, TriangularS,
};

use crate::config::{CliError, Resolved};
use crate::report::{emit, Report, ReportMeta};

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub p: usize,
    pub check: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn row(p: usize, check: &str, residual: f64, threshold: f64) -> CheckRow {
    CheckRow {
        p,
        check: check.to_string(),
        residual,
        threshold,
        pass: residual < threshold,
        detail: None,
    }
}

fn rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(1.0, f64::max);
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

fn element_rel_diff(a: &PElement, b: &PElement) -> f64 {
    rel_diff(a.s().mat(), b.s().mat()).max(rel_diff(a.n().mat(), b.n().mat()))
}

pub fn run(resolved: &Resolved, trials: Option<usize>, inject_fault: bool) -> Result<i32, CliError> {
    let p = resolved.p;
    let trials = trials
        .or(resolved.config.trials)
        .unwrap_or(100)
        .max(1);
    let inject_fault = inject_fault || resolved.config.inject_fault.unwrap_or(false);
    let mut rng = ChaCha8Rng::seed_from_u64(resolved.seed);
    let mut rows = Vec::new();

    // group axioms
    let mut assoc = 0.0f64;
    let mut ident = 0.0f64;
    let mut inv = 0.0f64;
    for _ in 0..trials {
        let g1 = PElement::random(p, &mut rng);
        let g2 = PElement::random(p, &mut rng);
        let g3 = PElement::random(p, &mut rng);
        let lhs = g1.compose(&g2).map_err(super::sci)?.compose(&g3).map_err(super::sci)?;
        let rhs = g1.compose(&g2.compose(&g3).map_err(super::sci)?).map_err(super::sci)?;
        assoc = assoc.max(element_rel_diff(&lhs, &rhs));

        let e = PElement::identity(p);
        ident = ident
            .max(element_rel_diff(&e.compose(&g1).map_err(super::sci)?, &g1))
            .max(element_rel_diff(&g1.compose(&e).map_err(super::sci)?, &g1));

        inv = inv.max(element_rel_diff(&g1.compose(&g1.inverse()).map_err(super::sci)?, &e));
    }
    rows.push(row(p, "associativity", assoc, 1e-12));
    rows.push(row(p, "identity", ident, 1e-12));
    rows.push(row(p, "inverse", inv, 1e-12));

    // θ is a homomorphism S → R₊
    let mut theta = 0.0f64;
    for _ in 0..trials {
        let s1 = TriangularS::random(p, &mut rng);
        let s2 = TriangularS::random(p, &mut rng);
        let lhs = s1.multiply(&s2).map_err(super::sci)?.theta();
        let rhs = s1.theta() * s2.theta();
        theta = theta.max((lhs - rhs).abs() / rhs.abs());
    }
    rows.push(row(p, "theta-multiplicativity", theta, 1e-13));

    // conjugation action: composition law and skewness preservation
    let mut comp = 0.0f64;
    let mut skew = 0.0f64;
    for _ in 0..trials {
        let s1 = TriangularS::random(p, &mut rng);
        let s2 = TriangularS::random(p, &mut rng);
        let m = SkewHermitian::random(p, &mut rng);
        let lhs = s2
            .act_on(&s1.act_on(&m).map_err(super::sci)?)
            .map_err(super::sci)?;
        let rhs = s1
            .multiply(&s2)
            .map_err(super::sci)?
            .act_on(&m)
            .map_err(super::sci)?;
        comp = comp.max(rel_diff(lhs.mat(), rhs.mat()));
        skew = skew.max(lhs.skew_residual() / lhs.norm().max(1.0));
    }
    rows.push(row(p, "conj-action-composition", comp, 1e-12));
    rows.push(row(p, "conj-action-skewness", skew, 1e-12));

    // pairing: symmetry, reality, and the corruption guard
    let mut sym = 0.0f64;
    let mut fault_detail = None;
    for t in 0..trials {
        let mut a = SkewHermitian::random(p, &mut rng);
        let b = SkewHermitian::random(p, &mut rng);
        if inject_fault && t == trials / 2 {
            // break skew-Hermitianity: add a real part on the diagonal
            let mut mat = a.mat().clone();
            mat[(0, 0)] += Complex64::new(0.5, 0.0);
            a = SkewHermitian::new_unchecked(mat);
        }
        match (pairing(&a, &b), pairing(&b, &a)) {
            (Ok(x), Ok(y)) => sym = sym.max((x - y).abs() / (1.0 + x.abs())),
            (Err(e), _) | (_, Err(e)) => {
                sym = f64::INFINITY;
                fault_detail = Some(match &e {
                    Error::ImaginaryResidue { .. } => format!("ImaginaryResidue: {e}"),
                    _ => e.to_string(),
                });
                break;
            }
        }
    }
    let mut pairing_row = row(p, "pairing-real-symmetric", sym, 1e-12);
    pairing_row.detail = fault_detail;
    rows.push(pairing_row);

    // Jacobian of m ↦ s*ms equals θ(s)^{2p}
    let mut jac = 0.0f64;
    for _ in 0..trials.min(50) {
        let s = TriangularS::random(p, &mut rng);
        let det = action_jacobian(&s);
        let target = s.theta().powi(2 * p as i32);
        jac = jac.max((det - target).abs() / target);
    }
    rows.push(row(p, "jacobian-theta-2p", jac, 1e-8));

    let all_pass = rows.iter().all(|r| r.pass);

    for r in &rows {
        eprintln!(
            "[{}] {:<28} residual {:10.3e}  (threshold {:.1e}){}",
            if r.pass { "PASS" } else { "FAIL" },
            r.check,
            r.residual,
            r.threshold,
            r.detail.as_deref().map(|d| format!("  {d}")).unwrap_or_default()
        );
    }

    #[derive(Serialize)]
    struct Results {
        trials: usize,
        all_pass: bool,
        checks: Vec<CheckRow>,
    }
    let report = Report {
        meta: ReportMeta::new("verify-group", resolved),
        results: Results {
            trials,
            all_pass,
            checks: rows.clone(),
        },
    };
    emit(resolved, &report, &rows)?;
    Ok(if all_pass { 0 } else { 1 })
}
