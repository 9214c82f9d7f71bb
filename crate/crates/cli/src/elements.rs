//! Element specifications: explicit JSON matrices, `{s, n}` pairs, or the
//! self-reproducing shorthand `"random:count:seed"`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use iwasawa_core::{ElementKind, PElement, SkewHermitian, TriangularS};

use crate::config::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub kind: ElementKind,
    pub value: ElementValue,
    pub id: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementValue {
    /// "random:count:seed"
    Shorthand(String),
    /// {"s": [...], "n": [...]} for kind "p"
    Pair {
        s: serde_json::Value,
        n: serde_json::Value,
    },
    /// bare matrix for kinds "n" and "s"
    Matrix(serde_json::Value),
}

/// A resolved element ready for analysis.
#[derive(Debug, Clone)]
pub struct ResolvedElement {
    pub id: String,
    pub kind: ElementKind,
    pub element: PElement,
}

fn parse_shorthand(text: &str) -> Option<(usize, u64)> {
    let mut parts = text.split(':');
    if parts.next()? != "random" {
        return None;
    }
    let count = parts.next()?.parse().ok()?;
    let seed = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((count, seed))
}

fn random_element(kind: ElementKind, p: usize, rng: &mut ChaCha8Rng) -> PElement {
    match kind {
        ElementKind::N => PElement::from_n(SkewHermitian::random(p, rng)),
        ElementKind::S => PElement::from_s(TriangularS::random(p, rng)),
        ElementKind::P => PElement::random(p, rng),
    }
}

pub fn resolve_element(
    index: usize,
    spec: &ElementSpec,
    p: usize,
) -> Result<Vec<ResolvedElement>, CliError> {
    let base_id = spec
        .id
        .clone()
        .unwrap_or_else(|| format!("{}#{index}", spec.kind));
    match (&spec.value, spec.kind) {
        (ElementValue::Shorthand(text), kind) => {
            let (count, seed) = parse_shorthand(text).ok_or_else(|| {
                CliError::Config(format!(
                    "bad element shorthand {text:?}; expected \"random:count:seed\""
                ))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|i| ResolvedElement {
                    id: format!("{kind}-rand-{seed}-{i}"),
                    kind,
                    element: random_element(kind, p, &mut rng),
                })
                .collect())
        }
        (ElementValue::Pair { s, n }, ElementKind::P) => {
            let s: TriangularS = serde_json::from_value(s.clone())
                .map_err(|e| CliError::Config(format!("element {base_id}: bad s matrix: {e}")))?;
            let n: SkewHermitian = serde_json::from_value(n.clone())
                .map_err(|e| CliError::Config(format!("element {base_id}: bad n matrix: {e}")))?;
            let g = PElement::new(s, n)
                .map_err(|e| CliError::Config(format!("element {base_id}: {e}")))?;
            check_dim(&base_id, g.dim(), p)?;
            Ok(vec![ResolvedElement {
                id: base_id,
                kind: ElementKind::P,
                element: g,
            }])
        }
        (ElementValue::Pair { .. }, kind) => Err(CliError::Config(format!(
            "element {base_id}: an {{s, n}} pair needs kind \"p\", got \"{kind}\""
        ))),
        (ElementValue::Matrix(value), ElementKind::N) => {
            let n: SkewHermitian = serde_json::from_value(value.clone())
                .map_err(|e| CliError::Config(format!("element {base_id}: {e}")))?;
            check_dim(&base_id, n.dim(), p)?;
            Ok(vec![ResolvedElement {
                id: base_id,
                kind: ElementKind::N,
                element: PElement::from_n(n),
            }])
        }
        (ElementValue::Matrix(value), ElementKind::S) => {
            let s: TriangularS = serde_json::from_value(value.clone())
                .map_err(|e| CliError::Config(format!("element {base_id}: {e}")))?;
            check_dim(&base_id, s.dim(), p)?;
            Ok(vec![ResolvedElement {
                id: base_id,
                kind: ElementKind::S,
                element: PElement::from_s(s),
            }])
        }
        (ElementValue::Matrix(_), ElementKind::P) => Err(CliError::Config(format!(
            "element {base_id}: kind \"p\" needs an {{s, n}} pair"
        ))),
    }
}

/// Resolves the configured element list, or a default of `count_each`
/// random n and s elements derived from the master seed.
pub fn resolve_all(
    specs: Option<&[ElementSpec]>,
    p: usize,
    seed: u64,
    count_each: usize,
) -> Result<Vec<ResolvedElement>, CliError> {
    match specs {
        Some(specs) => {
            let mut out = Vec::new();
            for (i, spec) in specs.iter().enumerate() {
                out.extend(resolve_element(i, spec, p)?);
            }
            if out.is_empty() {
                return Err(CliError::Config("element list resolved to nothing".into()));
            }
            Ok(out)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for i in 0..count_each {
                out.push(ResolvedElement {
                    id: format!("n#{i}"),
                    kind: ElementKind::N,
                    element: PElement::from_n(SkewHermitian::random(p, &mut rng)),
                });
            }
            for i in 0..count_each {
                out.push(ResolvedElement {
                    id: format!("s#{i}"),
                    kind: ElementKind::S,
                    element: PElement::from_s(TriangularS::random(p, &mut rng)),
                });
            }
            Ok(out)
        }
    }
}

fn check_dim(id: &str, got: usize, expected: usize) -> Result<(), CliError> {
    if got != expected {
        return Err(CliError::Config(format!(
            "element {id} has dimension {got}, run is configured with p = {expected}"
        )));
    }
    Ok(())
}
