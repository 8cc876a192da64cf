//! Prime-field witness search for initial-algebra specifications of ℚ₀.
//!
//! `Md + E` specifies ℚ₀ exactly when no zero-totalized prime field satisfies
//! `E`. A search can only ever certify the negative: it reports the first prime
//! field that models `E`, or that none exists up to the bound it was given.

use thiserror::Error;

use crate::models::{
    default_forced_points, normal_form, sample_check_with, satisfies_fp, CheckError,
    GaussianRational, InfiniteModel, Value,
};
use crate::parse::parse_term;
use crate::primes::{mul_mod, primes_up_to};
use crate::report::{EquationReport, ExampleReport, GaussianReport, Report, ReportVerdict};
use crate::residues::{f, is_qr};
use crate::schema::{h_n, SchemaId};
use crate::term::{Equation, Signature, Term};

/// Default prime bound for interactive searches.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("no prime p <= {cap} with f(p) > {threshold}")]
    NoQualifyingPrime { threshold: u64, cap: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecVerdict {
    /// This prime field models every equation, so `Md + E` is not a specification of ℚ₀.
    NotASpec { witness_prime: u64 },
    /// Every prime up to `bound` falsifies some equation. Not a proof.
    NoWitnessBelow { bound: u64 },
}

/// An equation together with the name it is reported under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeled {
    pub label: String,
    pub equation: Equation,
}

impl Labeled {
    pub fn new(label: impl Into<String>, equation: Equation) -> Labeled {
        Labeled {
            label: label.into(),
            equation,
        }
    }

    pub fn from_schema(id: SchemaId) -> Result<Labeled, crate::schema::SchemaError> {
        Ok(Labeled::new(id.to_string(), id.instantiate()?))
    }
}

/// Verdict of every equation at one prime.
fn verdicts_at(eqs: &[Labeled], p: u64) -> Result<Vec<EquationReport>, CheckError> {
    eqs.iter()
        .map(|l| Ok(EquationReport::new(&l.label, &satisfies_fp(&l.equation, p)?)))
        .collect()
}

/// First prime `p <= prime_bound` at which every equation holds.
fn first_model_prime(eqs: &[Equation], prime_bound: u64) -> Result<Option<u64>, CheckError> {
    for p in primes_up_to(prime_bound) {
        let mut all = true;
        for e in eqs {
            if !satisfies_fp(e, p)?.is_satisfied() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Scans primes upward and stops at the first one whose field satisfies all of `eqs`.
pub fn check_spec_criterion(eqs: &[Equation], prime_bound: u64) -> Result<SpecVerdict, CheckError> {
    Ok(match first_model_prime(eqs, prime_bound)? {
        Some(p) => SpecVerdict::NotASpec { witness_prime: p },
        None => SpecVerdict::NoWitnessBelow { bound: prime_bound },
    })
}

/// [`check_spec_criterion`] as a report. The per-equation entries are taken at
/// the witness prime, or at the largest prime below the bound when there is none.
pub fn spec_report(eqs: &[Labeled], prime_bound: u64) -> Result<Report, CheckError> {
    let plain: Vec<Equation> = eqs.iter().map(|l| l.equation.clone()).collect();
    let verdict = check_spec_criterion(&plain, prime_bound)?;
    let (tag, witness, at) = match verdict {
        SpecVerdict::NotASpec { witness_prime } => {
            (ReportVerdict::NotASpec, Some(witness_prime), Some(witness_prime))
        }
        SpecVerdict::NoWitnessBelow { .. } => (
            ReportVerdict::NoWitnessBelow,
            None,
            primes_up_to(prime_bound).last().copied(),
        ),
    };
    Ok(Report {
        verdict: tag,
        witness_prime: witness,
        bound: prime_bound,
        per_equation: match at {
            Some(p) => verdicts_at(eqs, p)?,
            None => Vec::new(),
        },
        f_value: None,
    })
}

fn h_family(n: u64) -> Vec<Labeled> {
    (0..=n)
        .map(|m| Labeled::new(SchemaId::H(m).to_string(), h_n(m)))
        .collect()
}

/// Smallest prime `p <= prime_bound` whose field satisfies all of `H_0 .. H_n`.
pub fn h_family_witness(n: u64, prime_bound: u64) -> Result<Option<u64>, CheckError> {
    let eqs: Vec<Equation> = (0..=n).map(h_n).collect();
    first_model_prime(&eqs, prime_bound)
}

pub fn h_family_report(n: u64, prime_bound: u64) -> Result<Report, CheckError> {
    let witness = h_family_witness(n, prime_bound)?;
    Ok(Report {
        verdict: if witness.is_some() {
            ReportVerdict::WitnessFound
        } else {
            ReportVerdict::NoWitnessBelow
        },
        witness_prime: witness,
        bound: prime_bound,
        per_equation: match witness {
            Some(p) => verdicts_at(&h_family(n), p)?,
            None => Vec::new(),
        },
        f_value: None,
    })
}

/// Takes the smallest prime `p <= cap` with `f(p) > n + 1` and checks
/// exhaustively that its field satisfies `H_0 .. H_n`. The report verdict is
/// `confirmed` when all of them hold.
pub fn proposition_check(n: u64, cap: u64) -> Result<Report, SpecError> {
    let threshold = n + 1;
    let p = primes_up_to(cap)
        .into_iter()
        .find(|&p| f(p) > threshold)
        .ok_or(SpecError::NoQualifyingPrime { threshold, cap })?;
    let per_equation = verdicts_at(&h_family(n), p)?;
    let confirmed = per_equation
        .iter()
        .all(|e| e.verdict == crate::report::EquationVerdict::Satisfied);
    Ok(Report {
        verdict: if confirmed {
            ReportVerdict::Confirmed
        } else {
            ReportVerdict::Refuted
        },
        witness_prime: Some(p),
        bound: cap,
        per_equation,
        f_value: Some(f(p)),
    })
}

/// The constants `c` in the factors `x² - c` of the example polynomial.
const EXAMPLE_FACTORS: [i64; 3] = [2, 3, 6];

/// `(x² - 2)(x² - 3)(x² - 6)` as a term in the variable `x`.
pub fn example_poly() -> Term {
    parse_term("(x^2 - 2) * (x^2 - 3) * (x^2 - 6)", Signature::Plain).expect("fixed text parses")
}

/// `f(x) · f(x)⁻¹ = 1` for the example polynomial.
pub fn example_equation() -> Equation {
    let t = example_poly();
    Equation::new(Term::mul(t.clone(), Term::inv(t)), Term::One)
}

/// Integer coefficients of the expanded example polynomial, constant term first.
pub fn example_poly_coefficients() -> Vec<i64> {
    EXAMPLE_FACTORS.iter().fold(vec![1], |acc, &c| {
        // multiply by x² - c
        let mut out = vec![0; acc.len() + 2];
        for (k, a) in acc.iter().enumerate() {
            out[k + 2] += a;
            out[k] -= c * a;
        }
        out
    })
}

fn eval_int_poly(coeffs: &[i64], x: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
}

/// Least `x` in `[0, p)` with `(x² - 2)(x² - 3)(x² - 6) ≡ 0 (mod p)`.
pub fn example_poly_root_mod(p: u64) -> Option<u64> {
    let reduced: Vec<u64> = EXAMPLE_FACTORS.iter().map(|&c| c as u64 % p).collect();
    (0..p).find(|&x| {
        let sq = mul_mod(x, x, p);
        reduced.contains(&sq)
    })
}

/// True when the example polynomial has no rational root. Being monic with
/// integer coefficients, its rational roots are integer divisors of the constant
/// term, which are tried one by one.
pub fn rational_root_check() -> bool {
    let coeffs = example_poly_coefficients();
    let constant = coeffs[0].unsigned_abs() as i128;
    if constant == 0 {
        return false;
    }
    !(1..=constant)
        .filter(|d| constant % d == 0)
        .flat_map(|d| [d, -d])
        .any(|x| eval_int_poly(&coeffs, x) == 0)
}

/// Odd primes up to `bound` at which none of 2, 3, 6 is a quadratic residue.
pub fn residue_cover_failures(bound: u64) -> Vec<u64> {
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| p > 3)
        .filter(|&p| !EXAMPLE_FACTORS.iter().any(|&c| is_qr(c as u64, p).unwrap_or(false)))
        .collect()
}

/// Sample check of `f(x) · f(x)⁻¹ = 1` over the Gaussian rationals plus an exact check of `i² + 1 = 0`.
pub fn gaussian_example_check(samples: usize, seed: u64) -> Result<GaussianReport, CheckError> {
    let e = example_equation();
    let forced = default_forced_points(InfiniteModel::QI, &["x".to_string()]);
    let verdict = sample_check_with(&e, InfiniteModel::QI, &forced, samples, seed)?;
    let i_sq = parse_term("i * i + 1", Signature::Extended).expect("fixed text parses");
    let value = crate::models::eval(&i_sq, &crate::models::Model::QI, &Default::default())?;
    Ok(GaussianReport {
        samples: samples as u64,
        seed,
        forced_points: forced.len() as u64,
        i_squared_plus_one_is_zero: value == Value::Gaussian(GaussianRational::zero()),
        unit_equation: EquationReport::new("f(x) * inv(f(x)) = 1", &verdict),
    })
}

/// All checks around the example polynomial, with root searches for every prime up to `bound`.
pub fn example_check(bound: u64, samples: usize, seed: u64) -> Result<ExampleReport, CheckError> {
    let primes = primes_up_to(bound);
    let mut without = Vec::new();
    let mut largest: Option<[u64; 2]> = None;
    for &p in &primes {
        match example_poly_root_mod(p) {
            Some(x) => {
                if largest.is_none_or(|[_, best]| x > best) {
                    largest = Some([p, x]);
                }
            }
            None => without.push(p),
        }
    }
    let no_rational_root = rational_root_check();
    let cover = residue_cover_failures(bound);
    let gaussian = gaussian_example_check(samples, seed)?;
    let holds = without.is_empty()
        && no_rational_root
        && cover.is_empty()
        && gaussian.i_squared_plus_one_is_zero
        && gaussian.unit_equation.verdict == crate::report::EquationVerdict::Satisfied;
    Ok(ExampleReport {
        bound,
        primes_checked: primes.len() as u64,
        primes_without_root: without,
        largest_least_root: largest,
        no_rational_root,
        residue_cover_failures: cover,
        gaussian,
        holds,
    })
}

/// The value of the example polynomial at a Gaussian rational, via its normal form.
pub fn example_poly_value(x: &GaussianRational) -> GaussianRational {
    let t = crate::term::substitute(
        &example_poly(),
        &[("x".to_string(), normal_form(x).expect("small argument"))].into(),
    );
    crate::models::eval_in(&crate::models::QI, &t, &|_: &str| None).expect("closed term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{eval, Model, PrimeField, Rational};
    use crate::schema::{c_n, l_n};

    #[test]
    fn l1_is_not_a_spec() {
        assert_eq!(
            check_spec_criterion(&[l_n(1).unwrap()], 100).unwrap(),
            SpecVerdict::NotASpec { witness_prime: 3 }
        );
    }

    #[test]
    fn l2_has_no_witness_below_100() {
        assert_eq!(
            check_spec_criterion(&[l_n(2).unwrap()], 100).unwrap(),
            SpecVerdict::NoWitnessBelow { bound: 100 }
        );
    }

    #[test]
    fn c4_fails_at_five() {
        // 1 + 4 vanishes mod 5
        assert!(!satisfies_fp(&c_n(4), 5).unwrap().is_satisfied());
        assert_eq!(
            check_spec_criterion(&[c_n(4)], 100).unwrap(),
            SpecVerdict::NotASpec { witness_prime: 2 }
        );
    }

    #[test]
    fn h_family_small() {
        assert_eq!(h_family_witness(0, 100).unwrap(), Some(3));
        assert_eq!(h_family_witness(1, 100).unwrap(), Some(7));
        assert_eq!(h_family_witness(5, 1000).unwrap(), Some(71));
        assert_eq!(h_family_witness(5, 70).unwrap(), None);
    }

    #[test]
    fn proposition_small() {
        let r = proposition_check(0, 100).unwrap();
        assert_eq!((r.witness_prime, r.f_value), (Some(3), Some(2)));
        assert_eq!(r.verdict, ReportVerdict::Confirmed);
        let r = proposition_check(1, 100).unwrap();
        assert_eq!((r.witness_prime, r.f_value), (Some(7), Some(3)));
        assert_eq!(r.per_equation.len(), 2);
        assert_eq!(
            proposition_check(20, 100),
            Err(SpecError::NoQualifyingPrime { threshold: 21, cap: 100 })
        );
    }

    #[test]
    fn expansion_matches_factored_form() {
        let coeffs = example_poly_coefficients();
        assert_eq!(coeffs, vec![-36, 0, 36, 0, -11, 0, 1]);
        // seven points pin down a degree-six polynomial
        let model = Model::Q0;
        for x in -3i64..=3 {
            let env = [("x".to_string(), Value::Rational(Rational::from(x)))].into();
            let v = eval(&example_poly(), &model, &env).unwrap();
            assert_eq!(v, Value::Rational(Rational::from(eval_int_poly(&coeffs, x as i128) as i64)));
        }
    }

    #[test]
    fn rational_roots() {
        assert!(rational_root_check());
        let coeffs = example_poly_coefficients();
        assert_eq!(eval_int_poly(&coeffs, 1), -10);
        assert_ne!(eval_int_poly(&coeffs, 6), 0);
    }

    #[test]
    fn roots_mod_small_primes() {
        assert_eq!(example_poly_root_mod(2), Some(0));
        assert_eq!(example_poly_root_mod(5), Some(1));
        // brute force through the term evaluator
        for p in primes_up_to(200) {
            let field = PrimeField::new(p).unwrap();
            let model = Model::Fp(field);
            let least = (0..p).find(|&x| {
                let env = [("x".to_string(), Value::Fp(field.elem(x)))].into();
                eval(&example_poly(), &model, &env).unwrap() == Value::Fp(field.elem(0))
            });
            assert_eq!(example_poly_root_mod(p), least, "p = {p}");
        }
        let r19 = example_poly_root_mod(19).unwrap();
        assert_eq!((r19 * r19) % 19, 6);
    }

    #[test]
    fn gaussian_points() {
        assert_eq!(example_poly_value(&GaussianRational::i()), GaussianRational::int(-84, 0));
        assert_eq!(example_poly_value(&GaussianRational::zero()), GaussianRational::int(-36, 0));
        let g = gaussian_example_check(50, 7).unwrap();
        assert!(g.i_squared_plus_one_is_zero);
        assert_eq!(g.forced_points, 9);
        assert_eq!(g.unit_equation.verdict, crate::report::EquationVerdict::Satisfied);
    }

    #[test]
    fn witness_is_monotone_in_bound() {
        let e = [l_n(1).unwrap()];
        for b in [3, 10, 100, 1000] {
            assert_eq!(
                check_spec_criterion(&e, b).unwrap(),
                SpecVerdict::NotASpec { witness_prime: 3 }
            );
        }
        assert_eq!(
            check_spec_criterion(&e, 2).unwrap(),
            SpecVerdict::NoWitnessBelow { bound: 2 }
        );
    }

    #[test]
    fn report_shapes() {
        let r = spec_report(&[Labeled::from_schema(SchemaId::L(1)).unwrap()], 100).unwrap();
        assert_eq!(r.witness_prime, Some(3));
        crate::report::validate_report(&r.to_json()).unwrap();
        let r = spec_report(&[Labeled::from_schema(SchemaId::L(2)).unwrap()], 100).unwrap();
        assert_eq!(r.verdict, ReportVerdict::NoWitnessBelow);
        assert!(r.per_equation[0].counterexample.is_some());
        crate::report::validate_report(&r.to_json()).unwrap();
        let r = h_family_report(1, 100).unwrap();
        crate::report::validate_report(&r.to_json()).unwrap();
        let r = example_check(1000, 20, 1).unwrap();
        assert!(r.holds);
        crate::report::validate_example_report(&r.to_json()).unwrap();
    }
}
