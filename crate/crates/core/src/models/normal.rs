//! Normal forms `l·m⁻¹ + p·q⁻¹·i` for closed terms over the extended signature.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use super::{eval_in, GaussianRational, ModelError, Rational, QI};
use crate::term::{numeral, Term};

/// Largest numeral a normal form may contain; numerals are unary.
pub const MAX_NORMAL_NUMERAL: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("term is not closed")]
    OpenTerm,
    #[error("component {0} needs a numeral larger than {MAX_NORMAL_NUMERAL}")]
    TooLarge(BigInt),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn small(n: &BigInt) -> Result<u64, NormalizeError> {
    u64::try_from(n.abs())
        .ok()
        .filter(|v| *v <= MAX_NORMAL_NUMERAL)
        .ok_or_else(|| NormalizeError::TooLarge(n.clone()))
}

/// `num · den⁻¹` with `-` around the numerator numeral when negative.
fn fraction_term(r: &Rational) -> Result<Term, NormalizeError> {
    let num = numeral(small(r.numer())?);
    let num = if r.is_negative() { Term::neg(num) } else { num };
    Ok(Term::mul(num, Term::inv(numeral(small(r.denom())?))))
}

/// The normal-form term denoting `value`.
pub fn normal_form(value: &GaussianRational) -> Result<Term, NormalizeError> {
    Ok(Term::add(
        fraction_term(&value.re)?,
        Term::mul(fraction_term(&value.im)?, Term::ImaginaryUnit),
    ))
}

/// Rewrites a closed term to `l·m⁻¹ + p·q⁻¹·i` denoting the same Gaussian rational.
pub fn normalize_closed(t: &Term) -> Result<Term, NormalizeError> {
    if !t.is_closed() {
        return Err(NormalizeError::OpenTerm);
    }
    let value = eval_in(&QI, t, &|_: &str| None)?;
    normal_form(&value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::print_term;

    fn value(t: &Term) -> GaussianRational {
        eval_in(&QI, t, &|_: &str| None).unwrap()
    }

    #[test]
    fn half() {
        let n = normalize_closed(&Term::inv(numeral(2))).unwrap();
        assert_eq!(
            n,
            Term::add(
                Term::mul(numeral(1), Term::inv(numeral(2))),
                Term::mul(Term::mul(numeral(0), Term::inv(numeral(1))), Term::ImaginaryUnit)
            )
        );
        assert_eq!(value(&n), GaussianRational::new(Rational::new(1, 2), Rational::zero()));
    }

    #[test]
    fn i_squared() {
        let t = Term::mul(Term::ImaginaryUnit, Term::ImaginaryUnit);
        let n = normalize_closed(&t).unwrap();
        assert_eq!(value(&n), GaussianRational::int(-1, 0));
        assert_eq!(print_term(&n), "-(0 + 1) * inv(0 + 1) + (0 * inv(0 + 1)) * i");
        assert_eq!(normalize_closed(&n).unwrap(), n);
    }

    #[test]
    fn zero() {
        let n = normalize_closed(&numeral(0)).unwrap();
        assert_eq!(
            n,
            Term::add(
                Term::mul(Term::Zero, Term::inv(numeral(1))),
                Term::mul(Term::mul(Term::Zero, Term::inv(numeral(1))), Term::ImaginaryUnit)
            )
        );
    }

    #[test]
    fn errors() {
        assert_eq!(normalize_closed(&Term::var("x")), Err(NormalizeError::OpenTerm));
        let big = Term::mul(numeral(100), numeral(100));
        assert!(matches!(normalize_closed(&big), Err(NormalizeError::TooLarge(_))));
    }
}
