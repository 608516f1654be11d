//! JSON manifold descriptions and the recursive ring builder.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};
use crate::ring::{
    curve_ring, product_ring, projective_space_ring, validate_ring, BasicCohomologyRing, BasisElement, Bidegree,
    SparseVec,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub name: String,
    /// Optional complex dimension; checked against `m + 1` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub transversal: Transversal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Transversal {
    Curve { genus: usize },
    ProjectiveSpace { dim: usize },
    Product { factors: Vec<Transversal> },
    Custom(CustomRing),
}

/// Explicit ring payload. `basis` labels are assigned to bidegrees in
/// lexicographic order of the `dims` keys; indices in `mult` and `kaehler`
/// refer to positions in `basis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomRing {
    pub m: usize,
    pub dims: BTreeMap<String, usize>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub mult: Vec<MultEntry>,
    pub kaehler: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Term>,
}

/// `[index, coefficient]`, the coefficient given as `"num/den"` or an integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term(pub usize, pub Coefficient);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Transversal {
    pub fn curve(genus: usize) -> Self {
        Transversal::Curve { genus }
    }

    pub fn projective(dim: usize) -> Self {
        Transversal::ProjectiveSpace { dim }
    }

    pub fn product(factors: Vec<Transversal>) -> Self {
        Transversal::Product { factors }
    }
}

impl ManifoldSpec {
    pub fn new(name: impl Into<String>, transversal: Transversal) -> Self {
        ManifoldSpec { name: name.into(), n: None, transversal }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }
}

pub(crate) fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Builds and validates the ring described by `spec`.
pub fn build_ring(spec: &ManifoldSpec) -> Result<BasicCohomologyRing> {
    let ring = build_transversal(&spec.transversal, "transversal")?;
    let violations = validate_ring(&ring);
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    if let Some(n) = spec.n {
        if n != ring.m() + 1 {
            return Err(Error::Malformed {
                location: "n".into(),
                message: format!("declared n = {n} but the transversal has dimension {}, so n must be {}", ring.m(), ring.m() + 1),
            });
        }
    }
    Ok(ring)
}

fn build_transversal(t: &Transversal, loc: &str) -> Result<BasicCohomologyRing> {
    match t {
        Transversal::Curve { genus } => Ok(curve_ring(*genus)),
        Transversal::ProjectiveSpace { dim } => {
            if *dim == 0 {
                return Err(malformed(format!("{loc}.dim"), "projective space dimension must be at least 1"));
            }
            Ok(projective_space_ring(*dim))
        }
        Transversal::Product { factors } => {
            let mut rings = factors
                .iter()
                .enumerate()
                .map(|(i, f)| build_transversal(f, &format!("{loc}.factors[{i}]")));
            let first = rings
                .next()
                .ok_or_else(|| malformed(format!("{loc}.factors"), "product needs at least one factor"))??;
            rings.try_fold(first, |acc, r| Ok(product_ring(&acc, &r?)))
        }
        Transversal::Custom(c) => c.to_ring(loc),
    }
}

fn malformed(location: String, message: &str) -> Error {
    Error::Malformed { location, message: message.to_string() }
}

impl CustomRing {
    fn to_ring(&self, loc: &str) -> Result<BasicCohomologyRing> {
        let mut slots: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for (key, &d) in &self.dims {
            let bd = parse_bidegree(key)
                .ok_or_else(|| malformed(format!("{loc}.dims[\"{key}\"]"), "key must be of the form \"p,q\""))?;
            slots.insert(bd, d);
        }
        let declared: usize = slots.values().sum();
        if declared != self.basis.len() {
            return Err(Error::Malformed {
                location: format!("{loc}.basis"),
                message: format!("{} labels given but dims sum to {declared}", self.basis.len()),
            });
        }
        let mut labels = self.basis.iter();
        let mut basis = Vec::with_capacity(declared);
        for (bd, d) in slots {
            for _ in 0..d {
                let label = labels.next().expect("counts checked above").clone();
                basis.push(BasisElement { label, bidegree: bd });
            }
        }

        let size = basis.len();
        let vector = |terms: &[Term], at: String| -> Result<SparseVec> {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (t, Term(k, c)) in terms.iter().enumerate() {
                if *k >= size {
                    return Err(Error::Malformed {
                        location: format!("{at}[{t}]"),
                        message: format!("basis index {k} out of range (basis has {size} elements)"),
                    });
                }
                let value = match c {
                    Coefficient::Int(i) => Rational::from_integer((*i).into()),
                    Coefficient::Text(s) => parse_rational(s).ok_or_else(|| Error::Malformed {
                        location: format!("{at}[{t}]"),
                        message: format!("invalid rational coefficient {s:?}"),
                    })?,
                };
                *acc.entry(*k).or_insert_with(Rational::zero) += value;
            }
            Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
        };

        let mut products = BTreeMap::new();
        for (i, e) in self.mult.iter().enumerate() {
            let at = format!("{loc}.mult[{i}]");
            if e.left >= size || e.right >= size {
                return Err(malformed(at, "left/right index out of range"));
            }
            let v = vector(&e.result, format!("{at}.result"))?;
            if products.insert((e.left, e.right), v).is_some() {
                return Err(malformed(at, "duplicate entry for this ordered pair"));
            }
        }
        let kaehler = vector(&self.kaehler, format!("{loc}.kaehler"))?;
        Ok(BasicCohomologyRing::from_parts(self.m, basis, products, kaehler))
    }
}

fn parse_bidegree(key: &str) -> Option<Bidegree> {
    let (p, q) = key.split_once(',')?;
    Some(Bidegree::new(p.trim().parse().ok()?, q.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CURVE1_CUSTOM: &str = r#"{
        "name": "torus-custom",
        "transversal": {
            "type": "custom", "m": 1,
            "dims": {"0,0": 1, "1,0": 1, "0,1": 1, "1,1": 1},
            "basis": ["1", "b", "a", "t"],
            "mult": [
                {"left": 0, "right": 0, "result": [[0, "1"]]},
                {"left": 0, "right": 1, "result": [[1, "1"]]},
                {"left": 1, "right": 0, "result": [[1, "1"]]},
                {"left": 0, "right": 2, "result": [[2, "1"]]},
                {"left": 2, "right": 0, "result": [[2, "1"]]},
                {"left": 0, "right": 3, "result": [[3, "1"]]},
                {"left": 3, "right": 0, "result": [[3, "1"]]},
                {"left": 2, "right": 1, "result": [[3, 1]]},
                {"left": 1, "right": 2, "result": [[3, "-1"]]}
            ],
            "kaehler": [[3, "2/3"]]
        }
    }"#;

    #[test]
    fn parses_builtin_leaves() {
        let s = ManifoldSpec::from_json(r#"{"name":"hopf2","transversal":{"type":"projective_space","dim":1}}"#).unwrap();
        assert_eq!(s.transversal, Transversal::projective(1));
        let r = build_ring(&s).unwrap();
        assert_eq!(r.m(), 1);
    }

    #[test]
    fn single_curve_leaf() {
        let r = build_ring(&ManifoldSpec::new("c2", Transversal::curve(2))).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.dims(1, 0), 2);
    }

    #[test]
    fn product_of_curve_and_plane() {
        let spec = ManifoldSpec::new("x", Transversal::product(vec![Transversal::curve(1), Transversal::projective(2)]));
        let r = build_ring(&spec).unwrap();
        assert_eq!(r.m(), 3);
        assert_eq!(r.dim(), 12);
    }

    #[test]
    fn custom_ring_accepted() {
        let spec = ManifoldSpec::from_json(CURVE1_CUSTOM).unwrap();
        let r = build_ring(&spec).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.label(r.block(0, 1).start), "b");
        assert_eq!(r.label(r.block(1, 0).start), "a");
    }

    #[test]
    fn custom_associativity_broken() {
        let text = r#"{
            "name": "broken",
            "transversal": {
                "type": "custom", "m": 2,
                "dims": {"0,0": 1, "1,1": 1, "2,2": 1},
                "basis": ["1", "h", "v"],
                "mult": [
                    {"left": 0, "right": 0, "result": [[0, "1"]]},
                    {"left": 0, "right": 1, "result": [[1, "1"]]},
                    {"left": 1, "right": 0, "result": [[1, "1"]]},
                    {"left": 0, "right": 2, "result": [[2, "1"]]},
                    {"left": 2, "right": 0, "result": [[2, "1"]]},
                    {"left": 1, "right": 1, "result": [[2, "1"]]}
                ],
                "kaehler": [[1, "1"]]
            }
        }"#;
        let ok = build_ring(&ManifoldSpec::from_json(text).unwrap());
        assert!(ok.is_ok(), "{ok:?}");
        let perturbed = text.replace(r#"{"left": 0, "right": 1, "result": [[1, "1"]]}"#, r#"{"left": 0, "right": 1, "result": [[1, "2"]]}"#);
        let err = build_ring(&ManifoldSpec::from_json(&perturbed).unwrap()).unwrap_err();
        let Error::Validation(v) = err else { panic!("expected validation error") };
        assert!(v.iter().any(|s| s == "associativity fails for (1, 1, h)"), "{v:?}");
    }

    #[test]
    fn malformed_payload_has_location() {
        let text = CURVE1_CUSTOM.replace(r#"[[3, "2/3"]]"#, r#"[[9, "1"]]"#);
        let err = build_ring(&ManifoldSpec::from_json(&text).unwrap()).unwrap_err();
        match err {
            Error::Malformed { location, .. } => assert_eq!(location, "transversal.kaehler[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let text = CURVE1_CUSTOM.replace("\"1,1\": 1", "\"1;1\": 1");
        let err = build_ring(&ManifoldSpec::from_json(&text).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Malformed { .. }));
    }

    #[test]
    fn nested_location() {
        let spec = ManifoldSpec::new(
            "x",
            Transversal::product(vec![Transversal::curve(1), Transversal::projective(0)]),
        );
        match build_ring(&spec).unwrap_err() {
            Error::Malformed { location, .. } => assert_eq!(location, "transversal.factors[1].dim"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn declared_n_checked() {
        let mut spec = ManifoldSpec::new("p2", Transversal::projective(2));
        spec.n = Some(3);
        assert!(build_ring(&spec).is_ok());
        spec.n = Some(2);
        assert!(matches!(build_ring(&spec), Err(Error::Malformed { .. })));
    }

    #[test]
    fn parse_error_position() {
        let err = ManifoldSpec::from_json("{\"name\": \"x\",\n  \"transversal\": }").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
