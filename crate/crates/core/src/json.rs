//! JSON encodings of weights, triskells, matrices, coherence spaces and atom
//! assignments.
//!
//! Triskells are written in canonical form (sorted, parallel equal edges
//! merged into a multiplicity), so a read/write round trip is byte-stable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::mll::AtomAssignment;
use crate::numeric::{Codomain, Numeric};
use crate::qcs::{OrthoSpec, QcsSpace};
use crate::relmat::WeightedMatrix;
use crate::triskell::{Edge, Triskell};
use crate::weights::{MeasureMap, Monoid, Weight};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightRepr {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    monoid: Option<Monoid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<f64>,
}

/// Integers that fit in an `i64` are JSON numbers, larger ones strings.
fn integer_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(n.to_string()),
    }
}

fn parse_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::InvalidWeight(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidWeight(format!("{s:?} is not an integer"))),
        other => Err(Error::InvalidWeight(format!("{other} is not an integer"))),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidWeight(format!("{s:?} is not a rational"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| Error::InvalidWeight(format!("{n} is not an integer"))),
        other => Err(Error::InvalidWeight(format!("{other} is not a rational"))),
    }
}

fn parse_f64(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::InvalidWeight(format!("{v} is not a number")))
}

impl From<&Weight> for WeightRepr {
    fn from(w: &Weight) -> Self {
        let mut r = WeightRepr {
            zero: false,
            monoid: w.monoid(),
            sign: None,
            v: None,
            num: None,
            den: None,
            re: None,
            im: None,
        };
        match w {
            Weight::Zero => r.zero = true,
            Weight::Unit => {}
            Weight::NonnegReal(v) | Weight::SignedReal(v) => r.v = Some(Value::from(*v)),
            Weight::Complex(c) => {
                r.re = Some(c.re);
                r.im = Some(c.im);
            }
            Weight::Rational(q) => {
                r.num = Some(integer_value(q.numer()));
                r.den = Some(integer_value(q.denom()));
            }
            Weight::SignedUnit { neg } => r.sign = Some(sign_str(*neg).into()),
            Weight::SignedNonneg { neg, base } => {
                r.sign = Some(sign_str(*neg).into());
                r.v = Some(Value::from(*base));
            }
        }
        r
    }
}

fn sign_str(neg: bool) -> &'static str {
    if neg {
        "-"
    } else {
        "+"
    }
}

impl TryFrom<WeightRepr> for Weight {
    type Error = Error;

    fn try_from(r: WeightRepr) -> Result<Weight> {
        if r.zero {
            return Ok(Weight::Zero);
        }
        let monoid = r
            .monoid
            .ok_or_else(|| Error::InvalidWeight("weight without monoid".into()))?;
        let v = || {
            r.v.as_ref()
                .ok_or_else(|| Error::InvalidWeight(format!("{monoid} weight without \"v\"")))
        };
        let neg = || match r.sign.as_deref() {
            Some("-") => Ok(true),
            Some("+") | None => Ok(false),
            Some(s) => Err(Error::InvalidWeight(format!("sign {s:?}"))),
        };
        match monoid {
            Monoid::Unit => Ok(Weight::Unit),
            Monoid::NonnegReal => Weight::nonneg(parse_f64(v()?)?),
            Monoid::SignedReal => Weight::real(parse_f64(v()?)?),
            Monoid::Complex => Weight::complex(r.re.unwrap_or(0.0), r.im.unwrap_or(0.0)),
            Monoid::Rational => match (&r.num, &r.den, &r.v) {
                (Some(n), d, _) => {
                    let d = d
                        .as_ref()
                        .map(parse_integer)
                        .transpose()?
                        .unwrap_or_else(|| 1.into());
                    if d.is_zero() {
                        return Err(Error::InvalidWeight("zero denominator".into()));
                    }
                    Ok(Weight::rational(BigRational::new(parse_integer(n)?, d)))
                }
                (None, _, Some(v)) => Ok(Weight::rational(parse_rational(v)?)),
                _ => Err(Error::InvalidWeight(
                    "rational weight without \"num\"".into(),
                )),
            },
            Monoid::SignedUnit => Ok(Weight::signed_unit(neg()?)),
            Monoid::SignedNonnegReal => Weight::signed_nonneg(neg()?, parse_f64(v()?)?),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Weight::try_from(WeightRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Rationals as `"p/q"` strings, reals as numbers, complex values as
/// `{"re":..,"im":..}`.
impl Serialize for Numeric {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Numeric::Rational(q) => q.to_string().serialize(s),
            Numeric::Real(v) => v.serialize(s),
            Numeric::Complex(c) => {
                let mut m = serde_json::Map::new();
                m.insert("re".into(), Value::from(c.re));
                m.insert("im".into(), Value::from(c.im));
                Value::Object(m).serialize(s)
            }
        }
    }
}

fn numeric_from_value(v: &Value) -> Result<Numeric> {
    match v {
        Value::String(_) => Ok(Numeric::Rational(parse_rational(v)?)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Numeric::int(i)),
            None => Ok(Numeric::Real(parse_f64(v)?)),
        },
        Value::Object(m) => {
            let part = |k: &str| m.get(k).map(parse_f64).transpose();
            Ok(Numeric::Complex(Complex64::new(
                part("re")?.unwrap_or(0.0),
                part("im")?.unwrap_or(0.0),
            )))
        }
        other => Err(Error::InvalidWeight(format!("{other} is not a number"))),
    }
}

impl<'de> Deserialize<'de> for Numeric {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        numeric_from_value(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRepr {
    s: Point,
    t: Point,
    w: Weight,
    #[serde(default = "one")]
    mult: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriskellRepr {
    source: Carrier,
    target: Carrier,
    monoid: Monoid,
    edges: Vec<EdgeRepr>,
}

impl Serialize for Triskell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.canonical();
        TriskellRepr {
            edges: c
                .edges
                .iter()
                .map(|(i, j, w, mult)| EdgeRepr {
                    s: c.source.get(*i).clone(),
                    t: c.target.get(*j).clone(),
                    w: w.clone(),
                    mult: *mult,
                })
                .collect(),
            source: c.source,
            target: c.target,
            monoid: c.monoid,
        }
        .serialize(s)
    }
}

impl TryFrom<TriskellRepr> for Triskell {
    type Error = Error;

    fn try_from(r: TriskellRepr) -> Result<Triskell> {
        let mut edges = Vec::new();
        for e in r.edges {
            let src = r
                .source
                .index_of(&e.s)
                .ok_or_else(|| Error::DanglingPoint(e.s.to_string(), "source"))?;
            let tgt = r
                .target
                .index_of(&e.t)
                .ok_or_else(|| Error::DanglingPoint(e.t.to_string(), "target"))?;
            for _ in 0..e.mult {
                edges.push(Edge {
                    src,
                    tgt,
                    weight: e.w.clone(),
                });
            }
        }
        Triskell::from_edges(r.source, r.target, r.monoid, edges)
    }
}

impl<'de> Deserialize<'de> for Triskell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Triskell::try_from(TriskellRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: Carrier,
    cols: Carrier,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    codomain: Option<Codomain>,
    entries: Vec<Vec<Numeric>>,
}

impl Serialize for WeightedMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows().clone(),
            cols: self.cols().clone(),
            codomain: Some(self.codomain()),
            entries: self.table(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let m = WeightedMatrix::new(r.rows, r.cols, r.entries).map_err(serde::de::Error::custom)?;
        Ok(match r.codomain {
            Some(c) if c > m.codomain() => m.promote(c),
            _ => m,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRepr {
    m: String,
    bot: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QcsRepr {
    web: Carrier,
    spec: SpecRepr,
    #[serde(default)]
    generators: Vec<Triskell>,
    #[serde(default)]
    dual_generators: Vec<Triskell>,
}

impl Serialize for QcsSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QcsRepr {
            web: self.web.clone(),
            spec: SpecRepr {
                m: self.spec.m.name.clone(),
                bot: self.spec.bot.to_string(),
            },
            generators: self.generators.clone(),
            dual_generators: self.dual_generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QcsSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QcsRepr::deserialize(d)?;
        let build = || -> Result<QcsSpace> {
            let spec = OrthoSpec::new(MeasureMap::by_name(&r.spec.m)?, r.spec.bot.parse()?);
            QcsSpace::new(r.web, r.generators, r.dual_generators, spec)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentRepr {
    atoms: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axiom_weight: Option<Weight>,
}

impl Serialize for AtomAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AssignmentRepr {
            atoms: self.atoms.clone(),
            axiom_weight: self.axiom_weight.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AtomAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AssignmentRepr::deserialize(d)?;
        AtomAssignment::new(r.atoms, r.axiom_weight).map_err(serde::de::Error::custom)
    }
}

/// Any object with a JSON encoding, recognised by its keys.
#[derive(Clone, Debug)]
pub enum Object {
    Triskell(Triskell),
    Matrix(WeightedMatrix),
    Qcs(QcsSpace),
    Atoms(AtomAssignment),
}

impl Object {
    pub fn from_json(text: &str) -> Result<Object> {
        let v: Value = serde_json::from_str(text)?;
        let has = |k: &str| v.get(k).is_some();
        Ok(if has("edges") {
            Object::Triskell(serde_json::from_value(v)?)
        } else if has("entries") {
            Object::Matrix(serde_json::from_value(v)?)
        } else if has("web") {
            Object::Qcs(serde_json::from_value(v)?)
        } else if has("atoms") {
            Object::Atoms(serde_json::from_value(v)?)
        } else {
            return Err(Error::Json(
                "expected a triskell, matrix, coherence space or atom assignment".into(),
            ));
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(match self {
            Object::Triskell(t) => serde_json::to_string_pretty(t)?,
            Object::Matrix(m) => serde_json::to_string_pretty(m)?,
            Object::Qcs(q) => serde_json::to_string_pretty(q)?,
            Object::Atoms(a) => serde_json::to_string_pretty(a)?,
        })
    }
}
