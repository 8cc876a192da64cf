use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of the zero-totalized rationals. Always in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
        let den = den.into();
        if den.is_zero() {
            // n/0 is read through the totalized inverse: n · 0⁻¹ = 0
            return Rational::zero();
        }
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse with `0⁻¹ = 0`.
    pub fn inv(&self) -> Rational {
        if self.is_zero() {
            Rational::zero()
        } else {
            Rational(self.0.recip())
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Accepts `n` or `n/d` with `d != 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid rational {s:?}");
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
                let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn inverse_is_total() {
        assert_eq!(Rational::zero().inv(), Rational::zero());
        assert_eq!(q(2, 3).inv(), q(3, 2));
        let r = q(-5, 1).inv();
        assert_eq!(r, q(-1, 5));
        assert_eq!(r.denom(), &BigInt::from(5));
        assert_eq!(r.numer(), &BigInt::from(-1));
    }

    #[test]
    fn normalized_on_construction() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(0, 7), Rational::zero());
        assert_eq!(q(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn text_forms() {
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }
}
