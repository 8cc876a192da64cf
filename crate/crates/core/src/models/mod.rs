//! The three zero-totalized models and structural evaluation of terms in them.

mod check;
mod gaussian;
mod normal;
mod prime_field;
mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::term::Term;

pub use check::{
    check_model, default_forced_points, sample_check, sample_check_with, satisfies_fp,
    satisfies_fp_with_budget, CheckError, InfiniteModel, ModelVerdict, EXHAUSTIVE_BUDGET,
};
pub use gaussian::GaussianRational;
pub use normal::{normal_form, normalize_closed, NormalizeError, MAX_NORMAL_NUMERAL};
pub use prime_field::{PrimeField, PrimeFieldElement};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("variable {0} is unbound")]
    UnboundVariable(String),
    #[error("the constant i can only be evaluated in qi")]
    ImaginaryUnitOutsideQi,
    #[error("value bound to {0} does not belong to the model")]
    ValueMismatch(String),
    #[error("unknown model {0:?} (expected q0, fp:<p> or qi)")]
    UnknownModel(String),
    #[error("invalid value {0:?} for this model")]
    BadValue(String),
}

/// Operations of a meadow: a commutative ring with a total inverse.
pub trait Meadow {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Interpretation of `i`, when the model has one.
    fn imaginary_unit(&self) -> Option<Self::Elem> {
        None
    }
}

/// The zero-totalized rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Q0;

/// The zero-totalized Gaussian rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QI;

impl Meadow for Q0 {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.inv()
    }
}

impl Meadow for PrimeField {
    type Elem = PrimeFieldElement;
    fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }
    fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }
    fn add(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        a.add(b)
    }
    fn neg(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        a.neg()
    }
    fn mul(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        a.mul(b)
    }
    fn inv(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        a.inv()
    }
}

impl Meadow for QI {
    type Elem = GaussianRational;
    fn zero(&self) -> GaussianRational {
        GaussianRational::zero()
    }
    fn one(&self) -> GaussianRational {
        GaussianRational::one()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a.add(b)
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        a.neg()
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a.mul(b)
    }
    fn inv(&self, a: &GaussianRational) -> GaussianRational {
        a.inv()
    }
    fn imaginary_unit(&self) -> Option<GaussianRational> {
        Some(GaussianRational::i())
    }
}

/// Evaluates `t` in `model`, looking variables up through `env`.
pub fn eval_in<M, F>(model: &M, t: &Term, env: &F) -> Result<M::Elem, ModelError>
where
    M: Meadow,
    F: Fn(&str) -> Option<M::Elem>,
{
    Ok(match t {
        Term::Zero => model.zero(),
        Term::One => model.one(),
        Term::ImaginaryUnit => model
            .imaginary_unit()
            .ok_or(ModelError::ImaginaryUnitOutsideQi)?,
        Term::Var(name) => env(name).ok_or_else(|| ModelError::UnboundVariable(name.clone()))?,
        Term::Neg(a) => model.neg(&eval_in(model, a, env)?),
        Term::Inv(a) => model.inv(&eval_in(model, a, env)?),
        Term::Add(l, r) => model.add(&eval_in(model, l, env)?, &eval_in(model, r, env)?),
        Term::Mul(l, r) => model.mul(&eval_in(model, l, env)?, &eval_in(model, r, env)?),
    })
}

/// A model selected at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Q0,
    Fp(PrimeField),
    QI,
}

impl Model {
    pub fn fp(p: u64) -> Result<Model, ModelError> {
        Ok(Model::Fp(PrimeField::new(p)?))
    }

    /// Reads a carrier element written as text: `a` or `a/b` for q0 and fp
    /// (with `b` inverted in the field), and additionally `a+bi`, `bi`, `i`
    /// forms for qi.
    pub fn parse_value(&self, text: &str) -> Result<Value, ModelError> {
        let bad = || ModelError::BadValue(text.to_string());
        match self {
            Model::Q0 => Ok(Value::Rational(text.parse().map_err(|_| bad())?)),
            Model::Fp(field) => {
                let (n, d) = text.trim().split_once('/').unwrap_or((text.trim(), "1"));
                let reduce = |s: &str| -> Result<PrimeFieldElement, ModelError> {
                    let big = s.trim().parse::<BigInt>().map_err(|_| bad())?;
                    let m = BigInt::from(field.modulus());
                    let r = ((big % &m) + &m) % &m;
                    Ok(field.elem(u64::try_from(r).map_err(|_| bad())?))
                };
                Ok(Value::Fp(reduce(n)?.mul(&reduce(d)?.inv())))
            }
            Model::QI => parse_gaussian(text).map(Value::Gaussian).ok_or_else(bad),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Model::Q0 => "q0".into(),
            Model::Fp(f) => format!("fp:{}", f.modulus()),
            Model::QI => "qi".into(),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Model {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q0" | "Q0" => Ok(Model::Q0),
            "qi" | "QI" => Ok(Model::QI),
            other => match other.strip_prefix("fp:").map(str::parse::<u64>) {
                Some(Ok(p)) => Model::fp(p),
                _ => Err(ModelError::UnknownModel(s.to_string())),
            },
        }
    }
}

fn parse_gaussian(text: &str) -> Option<GaussianRational> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace("(", "").replace(")", "");
    if !s.ends_with('i') {
        return Some(GaussianRational::from_rational(s.parse().ok()?));
    }
    let body = &s[..s.len() - 1];
    // split at the last sign that is not leading
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<Rational>().ok()?, &body[k..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => Rational::from_integer(-1),
        other => other.trim_start_matches('+').parse::<Rational>().ok()?,
    };
    Some(GaussianRational::new(re, im))
}

/// An element of one of the three models.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Rational(Rational),
    Fp(PrimeFieldElement),
    Gaussian(GaussianRational),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => r.fmt(f),
            Value::Fp(e) => e.fmt(f),
            Value::Gaussian(g) => g.fmt(f),
        }
    }
}

/// Variable bindings, ordered by variable name.
pub type Assignment = BTreeMap<String, Value>;

/// Evaluates `t` in `model` under `env`. Every bound value must come from `model`.
pub fn eval(t: &Term, model: &Model, env: &Assignment) -> Result<Value, ModelError> {
    let mismatch = |name: &str| ModelError::ValueMismatch(name.to_string());
    for (name, v) in env {
        let ok = matches!(
            (model, v),
            (Model::Q0, Value::Rational(_))
                | (Model::QI, Value::Gaussian(_))
                | (Model::QI, Value::Rational(_))
        ) || matches!((model, v), (Model::Fp(f), Value::Fp(e)) if e.modulus() == f.modulus());
        if !ok {
            return Err(mismatch(name));
        }
    }
    match model {
        Model::Q0 => eval_in(&Q0, t, &|n: &str| match env.get(n) {
            Some(Value::Rational(r)) => Some(r.clone()),
            _ => None,
        })
        .map(Value::Rational),
        Model::Fp(field) => eval_in(field, t, &|n: &str| match env.get(n) {
            Some(Value::Fp(e)) => Some(*e),
            _ => None,
        })
        .map(Value::Fp),
        Model::QI => eval_in(&QI, t, &|n: &str| match env.get(n) {
            Some(Value::Gaussian(g)) => Some(g.clone()),
            Some(Value::Rational(r)) => Some(GaussianRational::from_rational(r.clone())),
            _ => None,
        })
        .map(Value::Gaussian),
    }
}
