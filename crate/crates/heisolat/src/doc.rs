//! The JSON document model: a session header fixing the scalar field, plus
//! named lattices, towers, and joining queries.  Scalars are encoded as
//! strings `"p/q"` (rational) or objects `{"a": "p/q", "b": "r/s"}`
//! (meaning `a + b*sqrt(D)` in a quadratic session); matrices are row-major
//! nested arrays; towers are `{"prefix": [...], "tail": {"P": ..., "z": n}
//! or null}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix2, Mat2};
use crate::scalar::{valid_radicand, Scalar};
use crate::tower::Tower;

/// The scalar field of a session.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(untagged)]
pub enum FieldRepr {
    Named(String),
    Quadratic { quadratic: u64 },
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct Session {
    pub scalar_field: FieldRepr,
}

impl Session {
    pub fn rational() -> Self {
        Session {
            scalar_field: FieldRepr::Named("rational".to_string()),
        }
    }

    pub fn quadratic(d: u64) -> Self {
        Session {
            scalar_field: FieldRepr::Quadratic { quadratic: d },
        }
    }

    pub fn field(&self) -> Result<Field> {
        match &self.scalar_field {
            FieldRepr::Named(n) if n == "rational" => Ok(Field::Rational),
            FieldRepr::Named(n) => Err(Error::format(format!(
                "unknown scalar field {n:?}; expected \"rational\" or {{\"quadratic\": D}}"
            ))),
            FieldRepr::Quadratic { quadratic } => {
                if !valid_radicand(*quadratic) {
                    return Err(Error::format(format!(
                        "invalid radicand {quadratic}: must be squarefree and at least 2"
                    )));
                }
                Ok(Field::Quadratic(*quadratic))
            }
        }
    }
}

/// Scalar wire encoding.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(untagged)]
pub enum ScalarRepr {
    Rational(String),
    Quadratic { a: String, b: String },
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|_| Error::format(format!("not a rational literal: {s:?}")))
}

fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl ScalarRepr {
    pub fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarRepr::Rational(s) => Ok(Scalar::from_rational(parse_rational(s)?)),
            ScalarRepr::Quadratic { a, b } => match field {
                Field::Rational => Err(Error::format(
                    "quadratic scalar in a rational session; set scalar_field to \
                     {\"quadratic\": D}",
                )),
                Field::Quadratic(d) => {
                    Scalar::quadratic(parse_rational(a)?, parse_rational(b)?, d)
                }
            },
        }
    }

    pub fn from_scalar(s: &Scalar) -> ScalarRepr {
        if let Some(q) = s.to_rational() {
            ScalarRepr::Rational(rational_string(&q))
        } else {
            ScalarRepr::Quadratic {
                a: rational_string(s.rational_part()),
                b: rational_string(s.radical_part()),
            }
        }
    }
}

/// Lattice wire encoding: the plane basis row-major, the two central
/// offsets, and the central gauge.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct LatticeDoc {
    pub basis: [[ScalarRepr; 2]; 2],
    pub offsets: [ScalarRepr; 2],
    pub xi: ScalarRepr,
}

impl LatticeDoc {
    pub fn to_lattice(&self, field: Field) -> Result<Lattice> {
        let e = |r: usize, c: usize| self.basis[r][c].to_scalar(field);
        let basis = Mat2::new([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]]);
        Lattice::new(
            basis,
            self.offsets[0].to_scalar(field)?,
            self.offsets[1].to_scalar(field)?,
            self.xi.to_scalar(field)?,
        )
    }

    pub fn from_lattice(l: &Lattice) -> LatticeDoc {
        let e = |r: usize, c: usize| ScalarRepr::from_scalar(&l.basis().column(c)[r]);
        LatticeDoc {
            basis: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            offsets: [
                ScalarRepr::from_scalar(&l.offsets()[0]),
                ScalarRepr::from_scalar(&l.offsets()[1]),
            ],
            xi: ScalarRepr::from_scalar(l.xi()),
        }
    }
}

/// Tail-rule wire encoding.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TailDoc {
    #[serde(rename = "P")]
    pub p: [[i64; 2]; 2],
    pub z: u64,
}

/// Tower wire encoding: a prefix of lattices and an optional tail rule.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TowerDoc {
    pub prefix: Vec<LatticeDoc>,
    pub tail: Option<TailDoc>,
}

impl TowerDoc {
    pub fn to_tower(&self, field: Field) -> Result<Tower> {
        let prefix = self
            .prefix
            .iter()
            .map(|l| l.to_lattice(field))
            .collect::<Result<Vec<_>>>()?;
        let tail = self
            .tail
            .as_ref()
            .map(|t| (IntMatrix2::new(t.p), t.z));
        Tower::new(prefix, tail)
    }

    pub fn from_tower(t: &Tower) -> TowerDoc {
        TowerDoc {
            prefix: t.prefix().iter().map(LatticeDoc::from_lattice).collect(),
            tail: t.tail().map(|(p, z)| TailDoc {
                p: [
                    [
                        i64::try_from(&p.to_mat2().column(0)[0].to_integer().expect("int"))
                            .expect("small"),
                        i64::try_from(&p.to_mat2().column(1)[0].to_integer().expect("int"))
                            .expect("small"),
                    ],
                    [
                        i64::try_from(&p.to_mat2().column(0)[1].to_integer().expect("int"))
                            .expect("small"),
                        i64::try_from(&p.to_mat2().column(1)[1].to_integer().expect("int"))
                            .expect("small"),
                    ],
                ],
                z: *z,
            }),
        }
    }
}

fn default_k() -> u64 {
    1
}

/// Joining query: one plane offset for the transitive classifier, or one
/// offset per level (with `tower` naming the tower) for the odometer
/// classifier.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JoiningDoc {
    pub d: Vec<[ScalarRepr; 2]>,
    #[serde(default = "default_k")]
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<String>,
}

/// A session document: one scalar field and any number of named objects.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct Document {
    pub session: Session,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattices: BTreeMap<String, LatticeDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub towers: BTreeMap<String, TowerDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub joinings: BTreeMap<String, JoiningDoc>,
}

fn pick<'a, T>(
    section: &'a BTreeMap<String, T>,
    kind: &str,
    name: Option<&str>,
) -> Result<(&'a str, &'a T)> {
    match name {
        Some(n) => section
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| {
                Error::format(format!(
                    "no {kind} named {n:?}; available: {}",
                    section.keys().cloned().collect::<Vec<_>>().join(", ")
                ))
            }),
        None => {
            if section.len() == 1 {
                let (k, v) = section.iter().next().expect("len 1");
                Ok((k.as_str(), v))
            } else if section.is_empty() {
                Err(Error::format(format!("the document has no {kind} section")))
            } else {
                Err(Error::format(format!(
                    "the document has several {kind} entries ({}); pick one with --name",
                    section.keys().cloned().collect::<Vec<_>>().join(", ")
                )))
            }
        }
    }
}

impl Document {
    pub fn new(session: Session) -> Document {
        Document {
            session,
            lattices: BTreeMap::new(),
            towers: BTreeMap::new(),
            joinings: BTreeMap::new(),
        }
    }

    pub fn parse_str(text: &str) -> Result<Document> {
        serde_json::from_str(text).map_err(|e| Error::format(format!("bad document: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn field(&self) -> Result<Field> {
        self.session.field()
    }

    pub fn lattice(&self, name: Option<&str>) -> Result<(String, Lattice)> {
        let field = self.field()?;
        let (n, doc) = pick(&self.lattices, "lattice", name)?;
        Ok((n.to_string(), doc.to_lattice(field)?))
    }

    /// Resolve a tower by name, falling back to the built-in catalog at the
    /// given depth when the document has no such entry.
    pub fn tower(&self, name: Option<&str>, catalog_depth: u32) -> Result<(String, Tower)> {
        let field = self.field()?;
        if let Some(n) = name {
            if !self.towers.contains_key(n) {
                if let Ok(t) = crate::catalog::by_name(n, catalog_depth) {
                    return Ok((n.to_string(), t));
                }
            }
        }
        let (n, doc) = pick(&self.towers, "tower", name)?;
        Ok((n.to_string(), doc.to_tower(field)?))
    }

    pub fn joining(&self, name: Option<&str>) -> Result<(String, JoiningDoc)> {
        let (n, doc) = pick(&self.joinings, "joining", name)?;
        Ok((n.to_string(), doc.clone()))
    }
}
