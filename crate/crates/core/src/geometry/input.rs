//! JSON specification documents.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{
    builtin, JoinSpec, LinearChangeSpec, PolyMapSpec, ToricSpec, VarietySpec, DEFAULT_CHANGE_HEIGHT,
};
use crate::error::{arg_err, Error, Result};
use crate::exactlin::{parse_poly, Matrix, Rational};
use crate::matroid::GroundSet;

/// A single variety or a join, the two things analyses run on.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecTarget {
    Variety(VarietySpec),
    Join(JoinSpec),
}

impl SpecTarget {
    /// The target as a join; a single variety is a one-summand join.
    pub fn into_join(self) -> JoinSpec {
        match self {
            SpecTarget::Variety(v) => JoinSpec::from(v),
            SpecTarget::Join(j) => j,
        }
    }

    pub fn into_variety(self) -> Result<VarietySpec> {
        match self {
            SpecTarget::Variety(v) => Ok(v),
            SpecTarget::Join(_) => arg_err("expected a single variety, found a join"),
        }
    }

    pub fn labels(&self) -> &GroundSet {
        match self {
            SpecTarget::Variety(v) => v.labels(),
            SpecTarget::Join(j) => j.labels(),
        }
    }
}

/// A matrix entry: an integer or a rational written `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Entry::Int(v) => Ok(Rational::from_integer((*v).into())),
            Entry::Text(s) => {
                let parse = |t: &str| {
                    t.trim()
                        .parse::<num::BigInt>()
                        .map_err(|_| Error::Input(format!("bad matrix entry {s:?}")))
                };
                match s.split_once('/') {
                    Some((n, d)) => {
                        let d = parse(d)?;
                        if num::Zero::is_zero(&d) {
                            return Err(Error::Input(format!("zero denominator in {s:?}")));
                        }
                        Ok(Rational::new(parse(n)?, d))
                    }
                    None => Ok(Rational::from_integer(parse(s)?)),
                }
            }
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecDocument {
    Toric {
        exponents: Vec<Vec<i64>>,
        #[serde(default = "default_true")]
        homogenize: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Polymap {
        vars: Vec<String>,
        components: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Linchange {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<Entry>>>,
        inner: Box<SpecDocument>,
    },
    Join {
        summands: Vec<SpecDocument>,
    },
    Secant {
        s: usize,
        inner: Box<SpecDocument>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: Map<String, Value>,
    },
}

fn labels(l: &Option<Vec<String>>) -> Result<Option<GroundSet>> {
    l.as_ref().map(|v| GroundSet::new(v.clone())).transpose()
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn build(&self) -> Result<SpecTarget> {
        match self {
            SpecDocument::Toric {
                exponents,
                homogenize,
                labels: l,
            } => Ok(SpecTarget::Variety(
                ToricSpec::new(exponents.clone(), *homogenize, labels(l)?)?.into(),
            )),
            SpecDocument::Polymap {
                vars,
                components,
                labels: l,
            } => {
                let comps = components
                    .iter()
                    .map(|c| parse_poly(c, vars))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SpecTarget::Variety(
                    PolyMapSpec::new(vars.clone(), comps, labels(l)?)?.into(),
                ))
            }
            SpecDocument::Linchange {
                seed,
                matrix,
                inner,
            } => {
                let inner = inner.build()?.into_variety()?;
                let spec = match (seed, matrix) {
                    (Some(seed), None) => {
                        LinearChangeSpec::seeded(inner, *seed, DEFAULT_CHANGE_HEIGHT)?
                    }
                    (None, Some(rows)) => {
                        let rows = rows
                            .iter()
                            .map(|r| r.iter().map(Entry::to_rational).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        LinearChangeSpec::new(inner, Matrix::from_rows(rows)?)?
                    }
                    _ => return arg_err("linchange needs exactly one of seed and matrix"),
                };
                Ok(SpecTarget::Variety(spec.into()))
            }
            SpecDocument::Join { summands } => {
                let mut out = Vec::new();
                for s in summands {
                    match s.build()? {
                        SpecTarget::Variety(v) => out.push(v),
                        SpecTarget::Join(j) => out.extend(j.summands().iter().cloned()),
                    }
                }
                Ok(SpecTarget::Join(JoinSpec::new(out)?))
            }
            SpecDocument::Secant { s, inner } => {
                Ok(SpecTarget::Join(inner.build()?.into_join().repeat(*s)?))
            }
            SpecDocument::Builtin { name, params } => builtin(name, params),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_build() {
        let t = SpecDocument::from_json(r#"{"type":"toric","exponents":[[0,1,2]]}"#).unwrap();
        match t.build().unwrap() {
            SpecTarget::Variety(VarietySpec::Toric(s)) => assert!(s.homogenize()),
            other => panic!("{other:?}"),
        }
        let p = SpecDocument::from_json(
            r#"{"type":"polymap","vars":["s","t"],"components":["s^2","s*t","t^2"],"labels":["a","b","c"]}"#,
        )
        .unwrap();
        assert_eq!(p.build().unwrap().labels().label(1), "b");
        let s = SpecDocument::from_json(
            r#"{"type":"secant","s":2,"inner":{"type":"builtin","name":"veronese","params":{"d":3}}}"#,
        )
        .unwrap();
        assert_eq!(s.build().unwrap().into_join().len(), 2);
        let l = SpecDocument::from_json(
            r#"{"type":"linchange","matrix":[[1,"1/2"],[0,1]],"inner":{"type":"polymap","vars":["s"],"components":["s","s^2"]}}"#,
        )
        .unwrap();
        assert!(l.build().is_ok());
    }

    #[test]
    fn document_errors() {
        assert!(SpecDocument::from_json(r#"{"type":"cone"}"#).is_err());
        let bad = SpecDocument::from_json(
            r#"{"type":"linchange","seed":1,"matrix":[[1]],"inner":{"type":"toric","exponents":[[1]]}}"#,
        )
        .unwrap();
        assert!(bad.build().is_err());
        let sing = SpecDocument::from_json(
            r#"{"type":"linchange","matrix":[[1,1],[1,1]],"inner":{"type":"toric","exponents":[[0,1]]}}"#,
        )
        .unwrap();
        assert!(sing.build().is_err());
        let unknown =
            SpecDocument::from_json(r#"{"type":"polymap","vars":["s"],"components":["s*q"]}"#)
                .unwrap();
        assert!(matches!(unknown.build(), Err(Error::UnknownIdentifier(_))));
        let b = SpecDocument::from_json(r#"{"type":"builtin","name":"zzz"}"#).unwrap();
        assert!(matches!(b.build(), Err(Error::UnknownBuiltin(_))));
    }
}
