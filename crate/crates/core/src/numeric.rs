//! Numeric codomain for measures, traces, determinants and matrix entries.
//!
//! Three tags are supported: exact rationals, double-precision reals and
//! double-precision complex numbers. Mixed arithmetic promotes towards the
//! wider tag (rational < real < complex).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Codomain {
    Rational,
    Real,
    Complex,
}

impl fmt::Display for Codomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Codomain::Rational => "rational",
            Codomain::Real => "real",
            Codomain::Complex => "complex",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Numeric {
    Rational(BigRational),
    Real(f64),
    Complex(Complex64),
}

impl Numeric {
    pub fn zero() -> Self {
        Numeric::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Numeric::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Numeric::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Numeric::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(v: f64) -> Self {
        Numeric::Real(v)
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Numeric::Complex(Complex64::new(re, im))
    }

    pub fn codomain(&self) -> Codomain {
        match self {
            Numeric::Rational(_) => Codomain::Rational,
            Numeric::Real(_) => Codomain::Real,
            Numeric::Complex(_) => Codomain::Complex,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Numeric::Rational(q) => q.is_zero(),
            Numeric::Real(v) => *v == 0.0,
            Numeric::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Numeric::Rational(_) => true,
            Numeric::Real(v) => v.is_finite(),
            Numeric::Complex(c) => c.re.is_finite() && c.im.is_finite(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Numeric::Rational(q) => Complex64::new(rational_to_f64(q), 0.0),
            Numeric::Real(v) => Complex64::new(*v, 0.0),
            Numeric::Complex(c) => *c,
        }
    }

    /// Real part as a float; the imaginary part is discarded.
    pub fn re(&self) -> f64 {
        self.to_complex().re
    }

    /// Modulus (absolute value for reals).
    pub fn abs(&self) -> Numeric {
        match self {
            Numeric::Rational(q) => Numeric::Rational(q.abs()),
            Numeric::Real(v) => Numeric::Real(v.abs()),
            Numeric::Complex(c) => Numeric::Real(c.norm()),
        }
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(&self) -> Numeric {
        match self {
            Numeric::Complex(c) => Numeric::Complex(c.conj()),
            other => other.clone(),
        }
    }

    /// Promote to the given codomain (never narrows).
    pub fn promote(&self, to: Codomain) -> Numeric {
        match (self, to.max(self.codomain())) {
            (Numeric::Rational(q), Codomain::Rational) => Numeric::Rational(q.clone()),
            (x, Codomain::Real) => Numeric::Real(x.re()),
            (x, Codomain::Complex) => Numeric::Complex(x.to_complex()),
            _ => unreachable!("promotion never narrows"),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Numeric::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Divide by a positive integer.
    pub fn div_int(&self, n: usize) -> Numeric {
        match self {
            Numeric::Rational(q) => {
                Numeric::Rational(q / BigRational::from_integer(BigInt::from(n)))
            }
            Numeric::Real(v) => Numeric::Real(v / n as f64),
            Numeric::Complex(c) => Numeric::Complex(c / n as f64),
        }
    }

    pub fn scale_f64(&self, s: f64) -> Numeric {
        match self {
            Numeric::Complex(c) => Numeric::Complex(c * s),
            x => Numeric::Real(x.re() * s),
        }
    }

    /// Modulus of the difference.
    pub fn distance(&self, other: &Numeric) -> f64 {
        match (self, other) {
            (Numeric::Rational(a), Numeric::Rational(b)) => rational_to_f64(&(a - b).abs()),
            _ => (self.to_complex() - other.to_complex()).norm(),
        }
    }

    pub fn approx_eq(&self, other: &Numeric, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    fn binary(
        &self,
        other: &Numeric,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        real: impl Fn(f64, f64) -> f64,
        cplx: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Numeric {
        match (self, other) {
            (Numeric::Rational(a), Numeric::Rational(b)) => Numeric::Rational(rat(a, b)),
            (Numeric::Complex(_), _) | (_, Numeric::Complex(_)) => {
                Numeric::Complex(cplx(self.to_complex(), other.to_complex()))
            }
            _ => Numeric::Real(real(self.re(), other.re())),
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialEq for Numeric {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Numeric::Rational(a), Numeric::Rational(b)) => a == b,
            _ => self.to_complex() == other.to_complex(),
        }
    }
}

impl Add for &Numeric {
    type Output = Numeric;
    fn add(self, rhs: &Numeric) -> Numeric {
        self.binary(rhs, |a, b| a + b, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Numeric {
    type Output = Numeric;
    fn sub(self, rhs: &Numeric) -> Numeric {
        self.binary(rhs, |a, b| a - b, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Numeric {
    type Output = Numeric;
    fn mul(self, rhs: &Numeric) -> Numeric {
        self.binary(rhs, |a, b| a * b, |a, b| a * b, |a, b| a * b)
    }
}

impl Add for Numeric {
    type Output = Numeric;
    fn add(self, rhs: Numeric) -> Numeric {
        &self + &rhs
    }
}

impl Sub for Numeric {
    type Output = Numeric;
    fn sub(self, rhs: Numeric) -> Numeric {
        &self - &rhs
    }
}

impl Mul for Numeric {
    type Output = Numeric;
    fn mul(self, rhs: Numeric) -> Numeric {
        &self * &rhs
    }
}

impl Neg for Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        match self {
            Numeric::Rational(q) => Numeric::Rational(-q),
            Numeric::Real(v) => Numeric::Real(-v),
            Numeric::Complex(c) => Numeric::Complex(-c),
        }
    }
}

impl Neg for &Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        -self.clone()
    }
}

impl Sum for Numeric {
    fn sum<I: Iterator<Item = Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Numeric> for Numeric {
    fn sum<I: Iterator<Item = &'a Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| &acc + x)
    }
}

impl From<BigRational> for Numeric {
    fn from(q: BigRational) -> Self {
        Numeric::Rational(q)
    }
}

impl From<f64> for Numeric {
    fn from(v: f64) -> Self {
        Numeric::Real(v)
    }
}

impl From<Complex64> for Numeric {
    fn from(c: Complex64) -> Self {
        Numeric::Complex(c)
    }
}

impl fmt::Display for Numeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Numeric::Rational(q) => write!(f, "{q}"),
            Numeric::Real(v) => write!(f, "{v}"),
            Numeric::Complex(c) => {
                if c.im < 0.0 {
                    write!(f, "{}-{}i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotion_is_towards_wider_tag() {
        let q = Numeric::ratio(1, 2);
        let r = Numeric::real(0.25);
        let c = Numeric::complex(0.0, 1.0);
        assert_eq!((&q + &r).codomain(), Codomain::Real);
        assert_eq!((&q * &c).codomain(), Codomain::Complex);
        assert_eq!((&q + &q), Numeric::int(1));
    }

    #[test]
    fn rational_sums_are_exact() {
        let total: Numeric = (1..=10).map(|k| Numeric::ratio(1, k * (k + 1))).sum();
        assert_eq!(total, Numeric::ratio(10, 11));
    }

    #[test]
    fn modulus_and_conjugate() {
        let c = Numeric::complex(3.0, -4.0);
        assert_eq!(c.modulus(), 5.0);
        assert_eq!(c.conj(), Numeric::complex(3.0, 4.0));
        assert_eq!(Numeric::ratio(-3, 4).abs(), Numeric::ratio(3, 4));
    }
}
