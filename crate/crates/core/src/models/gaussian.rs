use std::fmt;

use super::Rational;

/// `re + im·i` with rational components, inverse totalized at zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> GaussianRational {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn zero() -> GaussianRational {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> GaussianRational {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> GaussianRational {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    /// Shorthand for small integer components.
    pub fn int(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(re.into(), im.into())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn neg(&self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, rhs: &GaussianRational) -> GaussianRational {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }

    pub fn conj(&self) -> GaussianRational {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Conjugate over the norm; `0⁻¹ = 0`.
    pub fn inv(&self) -> GaussianRational {
        let n = self.norm().inv();
        GaussianRational::new(&self.re * &n, &(-&self.im) * &n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let mag = self.im.abs();
        if mag.denom() == &1.into() {
            write!(f, "{} {} {}i", self.re, sign, mag)
        } else {
            write!(f, "{} {} ({})i", self.re, sign, mag)
        }
    }
}
