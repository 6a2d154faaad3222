//! Weight monoids, measure maps and series summation.
//!
//! A [`Weight`] is an element of one of the shipped weight monoids, or the
//! distinguished absorbing zero of the extended monoid. Numeric payloads equal
//! to zero are normalised to [`Weight::Zero`] at construction, so the non-zero
//! variants always live in the monoid bereft of its zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Codomain, Numeric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monoid {
    /// The trivial monoid `{1}`.
    Unit,
    NonnegReal,
    SignedReal,
    Complex,
    Rational,
    /// `{-1,1} x {1}`.
    SignedUnit,
    /// `{-1,1} x [0,inf)`.
    SignedNonnegReal,
}

impl Monoid {
    pub const ALL: [Monoid; 7] = [
        Monoid::Unit,
        Monoid::NonnegReal,
        Monoid::SignedReal,
        Monoid::Complex,
        Monoid::Rational,
        Monoid::SignedUnit,
        Monoid::SignedNonnegReal,
    ];

    pub fn is_signed(self) -> bool {
        !matches!(self, Monoid::Unit | Monoid::NonnegReal)
    }

    /// The signed monoid `{-1,1} x self`, or `self` when already signed.
    pub fn signed(self) -> Monoid {
        match self {
            Monoid::Unit => Monoid::SignedUnit,
            Monoid::NonnegReal => Monoid::SignedNonnegReal,
            m => m,
        }
    }

    pub fn has_addition(self) -> bool {
        !matches!(self, Monoid::Unit | Monoid::SignedUnit)
    }

    pub fn one(self) -> Weight {
        match self {
            Monoid::Unit => Weight::Unit,
            Monoid::NonnegReal => Weight::NonnegReal(1.0),
            Monoid::SignedReal => Weight::SignedReal(1.0),
            Monoid::Complex => Weight::Complex(Complex64::new(1.0, 0.0)),
            Monoid::Rational => Weight::Rational(BigRational::one()),
            Monoid::SignedUnit => Weight::SignedUnit { neg: false },
            Monoid::SignedNonnegReal => Weight::SignedNonneg {
                neg: false,
                base: 1.0,
            },
        }
    }

    /// `-1`, for signed monoids.
    pub fn minus_one(self) -> Result<Weight> {
        self.one().neg()
    }

    /// Numeric codomain weights of this monoid embed into.
    pub fn codomain(self) -> Codomain {
        match self {
            Monoid::Unit | Monoid::Rational | Monoid::SignedUnit => Codomain::Rational,
            Monoid::NonnegReal | Monoid::SignedReal | Monoid::SignedNonnegReal => Codomain::Real,
            Monoid::Complex => Codomain::Complex,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Monoid::Unit => "unit",
            Monoid::NonnegReal => "nonneg-real",
            Monoid::SignedReal => "signed-real",
            Monoid::Complex => "complex",
            Monoid::Rational => "rational",
            Monoid::SignedUnit => "signed(unit)",
            Monoid::SignedNonnegReal => "signed(nonneg-real)",
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Monoid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Monoid::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidWeight(format!("unknown monoid {s:?}")))
    }
}

impl Serialize for Monoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Monoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub enum Weight {
    /// Absorbing zero of the extended monoid.
    Zero,
    Unit,
    NonnegReal(f64),
    SignedReal(f64),
    Complex(Complex64),
    Rational(BigRational),
    SignedUnit {
        neg: bool,
    },
    SignedNonneg {
        neg: bool,
        base: f64,
    },
}

fn check_finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidWeight(format!("{v} is not finite")))
    }
}

impl Weight {
    pub fn unit() -> Weight {
        Weight::Unit
    }

    pub fn nonneg(v: f64) -> Result<Weight> {
        let v = check_finite(v)?;
        if v < 0.0 {
            return Err(Error::InvalidWeight(format!("{v} is negative")));
        }
        Ok(if v == 0.0 {
            Weight::Zero
        } else {
            Weight::NonnegReal(v)
        })
    }

    pub fn real(v: f64) -> Result<Weight> {
        let v = check_finite(v)?;
        Ok(if v == 0.0 {
            Weight::Zero
        } else {
            Weight::SignedReal(v)
        })
    }

    pub fn complex(re: f64, im: f64) -> Result<Weight> {
        let (re, im) = (check_finite(re)?, check_finite(im)?);
        Ok(if re == 0.0 && im == 0.0 {
            Weight::Zero
        } else {
            Weight::Complex(Complex64::new(re + 0.0, im + 0.0))
        })
    }

    pub fn rational(q: BigRational) -> Weight {
        if q.is_zero() {
            Weight::Zero
        } else {
            Weight::Rational(q)
        }
    }

    pub fn ratio(num: i64, den: i64) -> Weight {
        Weight::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Weight {
        Weight::ratio(n, 1)
    }

    pub fn signed_unit(neg: bool) -> Weight {
        Weight::SignedUnit { neg }
    }

    pub fn signed_nonneg(neg: bool, base: f64) -> Result<Weight> {
        let base = check_finite(base)?;
        if base < 0.0 {
            return Err(Error::InvalidWeight(format!("base {base} is negative")));
        }
        Ok(if base == 0.0 {
            Weight::Zero
        } else {
            Weight::SignedNonneg { neg, base }
        })
    }

    /// Monoid of the weight; `None` for the absorbing zero, which is
    /// compatible with every monoid.
    pub fn monoid(&self) -> Option<Monoid> {
        Some(match self {
            Weight::Zero => return None,
            Weight::Unit => Monoid::Unit,
            Weight::NonnegReal(_) => Monoid::NonnegReal,
            Weight::SignedReal(_) => Monoid::SignedReal,
            Weight::Complex(_) => Monoid::Complex,
            Weight::Rational(_) => Monoid::Rational,
            Weight::SignedUnit { .. } => Monoid::SignedUnit,
            Weight::SignedNonneg { .. } => Monoid::SignedNonnegReal,
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Weight::Zero)
    }

    pub fn fits(&self, monoid: Monoid) -> bool {
        self.monoid().is_none_or(|m| m == monoid)
    }

    pub fn mul(&self, other: &Weight) -> Result<Weight> {
        use Weight::*;
        Ok(match (self, other) {
            (Zero, b) | (b, Zero) => {
                let _ = b;
                Zero
            }
            (Unit, Unit) => Unit,
            (NonnegReal(a), NonnegReal(b)) => Weight::nonneg(a * b)?,
            (SignedReal(a), SignedReal(b)) => Weight::real(a * b)?,
            (Complex(a), Complex(b)) => {
                let c = a * b;
                Weight::complex(c.re, c.im)?
            }
            (Rational(a), Rational(b)) => Weight::rational(a * b),
            (SignedUnit { neg: a }, SignedUnit { neg: b }) => SignedUnit { neg: a ^ b },
            (SignedNonneg { neg: a, base: x }, SignedNonneg { neg: b, base: y }) => {
                Weight::signed_nonneg(a ^ b, x * y)?
            }
            (a, b) => {
                return Err(Error::MonoidMismatch(
                    a.monoid().expect("non-zero"),
                    b.monoid().expect("non-zero"),
                ))
            }
        })
    }

    pub fn neg(&self) -> Result<Weight> {
        use Weight::*;
        Ok(match self {
            Zero => Zero,
            SignedReal(v) => SignedReal(-v),
            Complex(c) => Complex(-c),
            Rational(q) => Rational(-q),
            SignedUnit { neg } => SignedUnit { neg: !neg },
            SignedNonneg { neg, base } => SignedNonneg {
                neg: !neg,
                base: *base,
            },
            w => return Err(Error::Unsigned(w.monoid().expect("non-zero"))),
        })
    }

    /// Sign-flip by the signature of a permutation.
    pub fn signed_by(&self, odd: bool) -> Result<Weight> {
        if odd {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }

    /// Embed into `{-1,1} x Omega` when the monoid is unsigned.
    pub fn promote_signed(&self) -> Weight {
        match self {
            Weight::Unit => Weight::SignedUnit { neg: false },
            Weight::NonnegReal(v) => Weight::SignedNonneg {
                neg: false,
                base: *v,
            },
            w => w.clone(),
        }
    }

    pub fn conj(&self) -> Weight {
        match self {
            Weight::Complex(c) => Weight::Complex(c.conj()),
            w => w.clone(),
        }
    }

    /// Additive structure used by contraction; the result is normalised, so
    /// cancellation yields the absorbing zero.
    pub fn try_add(&self, other: &Weight) -> Result<Weight> {
        use Weight::*;
        match (self, other) {
            (Zero, b) => {
                if let Some(m) = b.monoid().filter(|m| !m.has_addition()) {
                    return Err(Error::NoAddition(m));
                }
                Ok(b.clone())
            }
            (_, Zero) => other.try_add(self),
            (NonnegReal(a), NonnegReal(b)) => Weight::nonneg(a + b),
            (SignedReal(a), SignedReal(b)) => Weight::real(a + b),
            (Complex(a), Complex(b)) => {
                let c = a + b;
                Weight::complex(c.re, c.im)
            }
            (Rational(a), Rational(b)) => Ok(Weight::rational(a + b)),
            (SignedNonneg { .. }, SignedNonneg { .. }) => {
                let v = self.to_numeric().re() + other.to_numeric().re();
                Weight::signed_nonneg(v < 0.0, v.abs())
            }
            (a, b) => {
                let (ma, mb) = (a.monoid().expect("non-zero"), b.monoid().expect("non-zero"));
                if ma != mb {
                    Err(Error::MonoidMismatch(ma, mb))
                } else {
                    Err(Error::NoAddition(ma))
                }
            }
        }
    }

    /// Canonical embedding into the numeric codomain of the monoid.
    pub fn to_numeric(&self) -> Numeric {
        match self {
            Weight::Zero => Numeric::zero(),
            Weight::Unit => Numeric::one(),
            Weight::NonnegReal(v) | Weight::SignedReal(v) => Numeric::Real(*v),
            Weight::Complex(c) => Numeric::Complex(*c),
            Weight::Rational(q) => Numeric::Rational(q.clone()),
            Weight::SignedUnit { neg } => Numeric::int(if *neg { -1 } else { 1 }),
            Weight::SignedNonneg { neg, base } => Numeric::Real(if *neg { -base } else { *base }),
        }
    }

    /// Inverse of [`Weight::to_numeric`] where the value lies in the monoid.
    pub fn from_numeric(monoid: Monoid, x: &Numeric) -> Result<Weight> {
        if x.is_zero() {
            return Ok(Weight::Zero);
        }
        let out_of = || Error::InvalidWeight(format!("{x} does not lie in monoid {monoid}"));
        match monoid {
            Monoid::Unit => {
                if *x == Numeric::one() {
                    Ok(Weight::Unit)
                } else {
                    Err(out_of())
                }
            }
            Monoid::SignedUnit => {
                if *x == Numeric::one() {
                    Ok(Weight::signed_unit(false))
                } else if *x == Numeric::int(-1) {
                    Ok(Weight::signed_unit(true))
                } else {
                    Err(out_of())
                }
            }
            Monoid::Rational => match x {
                Numeric::Rational(q) => Ok(Weight::rational(q.clone())),
                _ => Err(out_of()),
            },
            Monoid::Complex => {
                let c = x.to_complex();
                Weight::complex(c.re, c.im)
            }
            _ => {
                if let Numeric::Complex(c) = x {
                    if c.im != 0.0 {
                        return Err(out_of());
                    }
                }
                let v = x.re();
                match monoid {
                    Monoid::NonnegReal => Weight::nonneg(v),
                    Monoid::SignedReal => Weight::real(v),
                    Monoid::SignedNonnegReal => Weight::signed_nonneg(v < 0.0, v.abs()),
                    _ => unreachable!(),
                }
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Weight::Zero => 0,
            Weight::Unit => 1,
            Weight::NonnegReal(_) => 2,
            Weight::SignedReal(_) => 3,
            Weight::Complex(_) => 4,
            Weight::Rational(_) => 5,
            Weight::SignedUnit { .. } => 6,
            Weight::SignedNonneg { .. } => 7,
        }
    }
}

// Total order used by canonical forms; floats compare with `total_cmp`.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        use Weight::*;
        match (self, other) {
            (NonnegReal(a), NonnegReal(b)) | (SignedReal(a), SignedReal(b)) => a.total_cmp(b),
            (Complex(a), Complex(b)) => a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)),
            (Rational(a), Rational(b)) => a.cmp(b),
            (SignedUnit { neg: a }, SignedUnit { neg: b }) => a.cmp(b),
            (SignedNonneg { neg: a, base: x }, SignedNonneg { neg: b, base: y }) => {
                a.cmp(b).then(x.total_cmp(y))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Weight {}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Zero => f.write_str("0"),
            Weight::Unit => f.write_str("1"),
            Weight::SignedUnit { neg } => f.write_str(if *neg { "-1" } else { "+1" }),
            Weight::SignedNonneg { neg, base } => {
                write!(f, "{}{}", if *neg { "-" } else { "+" }, base)
            }
            w => write!(f, "{}", w.to_numeric()),
        }
    }
}

pub type MeasureFn = dyn Fn(&Weight) -> Numeric + Send + Sync;

#[derive(Clone)]
pub enum MeasureKind {
    /// Canonical embedding of the weight into its numeric codomain.
    Identity,
    /// Modulus of the embedding.
    Abs,
    Custom(Arc<MeasureFn>),
}

/// A map `m` from weights to a numeric codomain.
#[derive(Clone)]
pub struct MeasureMap {
    pub name: String,
    pub kind: MeasureKind,
    /// Restricts the accepted source monoid; `None` accepts every monoid.
    pub source: Option<Monoid>,
    pub multiplicative: bool,
    pub maps_minus_one: bool,
}

impl fmt::Debug for MeasureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureMap")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("multiplicative", &self.multiplicative)
            .field("maps_minus_one", &self.maps_minus_one)
            .finish()
    }
}

impl MeasureMap {
    pub fn identity() -> MeasureMap {
        MeasureMap {
            name: "identity".into(),
            kind: MeasureKind::Identity,
            source: None,
            multiplicative: true,
            maps_minus_one: true,
        }
    }

    pub fn abs() -> MeasureMap {
        MeasureMap {
            name: "abs".into(),
            kind: MeasureKind::Abs,
            source: None,
            multiplicative: true,
            maps_minus_one: false,
        }
    }

    pub fn custom(
        name: impl Into<String>,
        source: Option<Monoid>,
        multiplicative: bool,
        maps_minus_one: bool,
        f: impl Fn(&Weight) -> Numeric + Send + Sync + 'static,
    ) -> MeasureMap {
        MeasureMap {
            name: name.into(),
            kind: MeasureKind::Custom(Arc::new(f)),
            source,
            multiplicative,
            maps_minus_one,
        }
    }

    pub fn by_name(name: &str) -> Result<MeasureMap> {
        match name {
            "identity" | "id" => Ok(MeasureMap::identity()),
            "abs" => Ok(MeasureMap::abs()),
            _ => Err(Error::Measure(name.into(), "unknown measure map".into())),
        }
    }

    /// `m(a)`; the absorbing zero is sent to the additive unit.
    pub fn measure(&self, a: &Weight) -> Result<Numeric> {
        if a.is_zero() {
            return Ok(Numeric::zero());
        }
        if let (Some(src), Some(m)) = (self.source, a.monoid()) {
            if src != m {
                return Err(Error::Measure(
                    self.name.clone(),
                    format!("expects {src} weights, got {m}"),
                ));
            }
        }
        Ok(match &self.kind {
            MeasureKind::Identity => a.to_numeric(),
            MeasureKind::Abs => a.to_numeric().abs(),
            MeasureKind::Custom(f) => f(a),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Convergence threshold on successive partial sums.
    pub tol: f64,
    pub max_terms: usize,
    /// Number of consecutive below-threshold increments required.
    pub window: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: 1e-9,
            max_terms: 100_000,
            window: 1,
        }
    }
}

/// Sum a stream of terms.
///
/// Streams with a finite upper size bound (vectors, bounded ranges) are summed
/// exactly as a left fold. Unbounded streams are summed until `window`
/// consecutive increments fall below `tol`; running past `max_terms` yields
/// [`Error::Divergence`].
pub fn sum_series<I>(terms: I, cfg: &SeriesConfig) -> Result<Numeric>
where
    I: IntoIterator<Item = Numeric>,
{
    let iter = terms.into_iter();
    if iter.size_hint().1.is_some() {
        return Ok(iter.fold(Numeric::zero(), |acc, t| &acc + &t));
    }
    let mut acc = Numeric::zero();
    let mut quiet = 0usize;
    let mut last_delta = f64::INFINITY;
    for (n, term) in iter.enumerate() {
        if n >= cfg.max_terms {
            return Err(Error::Divergence {
                terms: n,
                last_delta,
            });
        }
        let next = &acc + &term;
        last_delta = next.distance(&acc);
        acc = next;
        if last_delta < cfg.tol {
            quiet += 1;
            if quiet >= cfg.window.max(1) {
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
    }
    Ok(acc)
}

/// Sign of a rational weight, for diagnostics.
pub fn is_negative(w: &Weight) -> bool {
    match w {
        Weight::SignedReal(v) => *v < 0.0,
        Weight::Rational(q) => q.is_negative(),
        Weight::SignedUnit { neg } | Weight::SignedNonneg { neg, .. } => *neg,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_real_product() {
        let a = Weight::real(-1.0).unwrap();
        let b = Weight::real(0.5).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Weight::real(-0.5).unwrap());
    }

    #[test]
    fn unit_is_neutral_and_zero_absorbs() {
        for m in Monoid::ALL {
            let one = m.one();
            let a = match m {
                Monoid::Unit => Weight::Unit,
                Monoid::NonnegReal => Weight::nonneg(0.3).unwrap(),
                Monoid::SignedReal => Weight::real(-0.3).unwrap(),
                Monoid::Complex => Weight::complex(0.1, 0.2).unwrap(),
                Monoid::Rational => Weight::ratio(2, 7),
                Monoid::SignedUnit => Weight::signed_unit(true),
                Monoid::SignedNonnegReal => Weight::signed_nonneg(true, 0.4).unwrap(),
            };
            assert_eq!(one.mul(&a).unwrap(), a);
            assert_eq!(a.mul(&one).unwrap(), a);
            assert!(Weight::Zero.mul(&a).unwrap().is_zero());
            assert!(a.mul(&Weight::Zero).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_tags_are_rejected() {
        let e = Weight::real(1.0).unwrap().mul(&Weight::ratio(1, 2));
        assert!(matches!(e, Err(Error::MonoidMismatch(..))));
    }

    #[test]
    fn negation() {
        let x = Weight::signed_nonneg(false, 0.3).unwrap();
        assert_eq!(x.neg().unwrap(), Weight::signed_nonneg(true, 0.3).unwrap());
        assert_eq!(x.neg().unwrap().neg().unwrap(), x);
        assert_eq!(
            Weight::real(0.7).unwrap().neg().unwrap(),
            Weight::real(-0.7).unwrap()
        );
        assert!(matches!(
            Weight::nonneg(0.7).unwrap().neg(),
            Err(Error::Unsigned(Monoid::NonnegReal))
        ));
        assert!(Weight::Unit.neg().is_err());
    }

    #[test]
    fn measures() {
        let id = MeasureMap::identity();
        let abs = MeasureMap::abs();
        assert_eq!(
            id.measure(&Weight::real(0.25).unwrap()).unwrap(),
            Numeric::real(0.25)
        );
        assert_eq!(
            abs.measure(&Weight::real(-0.3).unwrap()).unwrap(),
            Numeric::real(0.3)
        );
        assert!(id.measure(&Weight::Zero).unwrap().is_zero());
        assert!(abs.measure(&Weight::Zero).unwrap().is_zero());
        let c = Weight::complex(0.5, -2.0).unwrap();
        assert_eq!(id.measure(&c).unwrap(), Numeric::complex(0.5, -2.0));
    }

    #[test]
    fn measure_source_restriction() {
        let m = MeasureMap::custom("sq", Some(Monoid::Rational), true, false, |w| {
            let x = w.to_numeric();
            &x * &x
        });
        assert!(m.measure(&Weight::real(1.0).unwrap()).is_err());
        assert_eq!(
            m.measure(&Weight::ratio(-1, 2)).unwrap(),
            Numeric::ratio(1, 4)
        );
    }

    #[test]
    fn addition_cancels_to_zero() {
        let a = Weight::ratio(1, 3);
        assert!(a.try_add(&a.neg().unwrap()).unwrap().is_zero());
        let p = Weight::signed_nonneg(false, 0.5).unwrap();
        let q = Weight::signed_nonneg(true, 0.75).unwrap();
        assert_eq!(
            p.try_add(&q).unwrap(),
            Weight::signed_nonneg(true, 0.25).unwrap()
        );
        assert!(matches!(
            Weight::Unit.try_add(&Weight::Unit),
            Err(Error::NoAddition(Monoid::Unit))
        ));
    }

    #[test]
    fn geometric_series() {
        let terms = (0..).map(|k| Numeric::real(0.5f64.powi(k)));
        let cfg = SeriesConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let s = sum_series(terms, &cfg).unwrap();
        assert!((s.re() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn empty_and_divergent_series() {
        assert!(sum_series(Vec::new(), &SeriesConfig::default())
            .unwrap()
            .is_zero());
        let ones = std::iter::repeat(Numeric::real(1.0));
        let cfg = SeriesConfig {
            max_terms: 1000,
            ..Default::default()
        };
        assert!(matches!(
            sum_series(ones, &cfg),
            Err(Error::Divergence { terms: 1000, .. })
        ));
    }

    #[test]
    fn finite_streams_are_not_cut_short() {
        let terms = vec![Numeric::real(1.0), Numeric::real(0.0), Numeric::real(5.0)];
        assert_eq!(
            sum_series(terms, &SeriesConfig::default()).unwrap(),
            Numeric::real(6.0)
        );
    }
}
