//! The meadow axioms and the parametrised equation families `L_n`, `H_n`, `C_n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::term::{numeral, Equation, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("meadow axiom index {0} is outside 1..=10")]
    AxiomIndex(u64),
    #[error("L_n requires n >= 1")]
    LagrangeZero,
    #[error("cannot parse schema {0:?} (expected Md, Md:k, L:n, H:n, C:n or a range like H:0..5)")]
    Syntax(String),
}

/// Names one concrete equation from the axiom database or a schema family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaId {
    /// One of the ten meadow axioms, numbered from 1.
    Md(u8),
    L(u64),
    H(u64),
    C(u64),
}

impl SchemaId {
    pub fn instantiate(self) -> Result<Equation, SchemaError> {
        match self {
            SchemaId::Md(k) => md_axiom(k as u64),
            SchemaId::L(n) => l_n(n),
            SchemaId::H(n) => Ok(h_n(n)),
            SchemaId::C(n) => Ok(c_n(n)),
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaId::Md(k) => write!(f, "Md:{k}"),
            SchemaId::L(n) => write!(f, "L:{n}"),
            SchemaId::H(n) => write!(f, "H:{n}"),
            SchemaId::C(n) => write!(f, "C:{n}"),
        }
    }
}

impl FromStr for SchemaId {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_schema_spec(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(SchemaError::Syntax(s.to_string())),
        }
    }
}

/// Expands one schema token: `Md` (all ten axioms), `Md:k`, `L:n`, `H:n`, `C:n`,
/// or an inclusive range such as `H:0..5`.
pub fn parse_schema_spec(spec: &str) -> Result<Vec<SchemaId>, SchemaError> {
    let syntax = || SchemaError::Syntax(spec.to_string());
    let spec = spec.trim();
    if spec == "Md" {
        return Ok((1..=10).map(SchemaId::Md).collect());
    }
    let (family, params) = spec.split_once(':').ok_or_else(syntax)?;
    let (lo, hi) = match params.split_once("..") {
        Some((a, b)) => (a.parse::<u64>(), b.parse::<u64>()),
        None => (params.parse::<u64>(), params.parse::<u64>()),
    };
    let (lo, hi) = (lo.map_err(|_| syntax())?, hi.map_err(|_| syntax())?);
    if lo > hi {
        return Err(syntax());
    }
    let make = |n: u64| -> Result<SchemaId, SchemaError> {
        match family {
            "Md" if (1..=10).contains(&n) => Ok(SchemaId::Md(n as u8)),
            "Md" => Err(SchemaError::AxiomIndex(n)),
            "L" if n == 0 => Err(SchemaError::LagrangeZero),
            "L" => Ok(SchemaId::L(n)),
            "H" => Ok(SchemaId::H(n)),
            "C" => Ok(SchemaId::C(n)),
            _ => Err(syntax()),
        }
    };
    (lo..=hi).map(make).collect()
}

fn x() -> Term {
    Term::var("x")
}
fn y() -> Term {
    Term::var("y")
}
fn z() -> Term {
    Term::var("z")
}

fn md_axiom(k: u64) -> Result<Equation, SchemaError> {
    let (lhs, rhs) = match k {
        1 => (
            Term::add(Term::add(x(), y()), z()),
            Term::add(x(), Term::add(y(), z())),
        ),
        2 => (Term::add(x(), y()), Term::add(y(), x())),
        3 => (Term::add(x(), Term::Zero), x()),
        4 => (Term::add(x(), Term::neg(x())), Term::Zero),
        5 => (
            Term::mul(Term::mul(x(), y()), z()),
            Term::mul(x(), Term::mul(y(), z())),
        ),
        6 => (Term::mul(x(), y()), Term::mul(y(), x())),
        7 => (Term::mul(Term::One, x()), x()),
        8 => (
            Term::mul(x(), Term::add(y(), z())),
            Term::add(Term::mul(x(), y()), Term::mul(x(), z())),
        ),
        9 => (Term::inv(Term::inv(x())), x()),
        10 => (Term::mul(x(), Term::mul(x(), Term::inv(x()))), x()),
        other => return Err(SchemaError::AxiomIndex(other)),
    };
    Ok(Equation::new(lhs, rhs))
}

/// The ten meadow axioms in their conventional order, over the variables `x`, `y`, `z`.
pub fn md_axioms() -> Vec<Equation> {
    (1..=10).map(|k| md_axiom(k).expect("index in range")).collect()
}

/// `t · t⁻¹ = 1`
fn unit_equation(t: Term) -> Equation {
    Equation::new(Term::mul(t.clone(), Term::inv(t)), Term::One)
}

/// `(1 + x1² + … + xn²) · (1 + x1² + … + xn²)⁻¹ = 1`
pub fn l_n(n: u64) -> Result<Equation, SchemaError> {
    if n == 0 {
        return Err(SchemaError::LagrangeZero);
    }
    let sum = (1..=n).fold(Term::One, |acc, k| {
        Term::add(acc, Term::square(Term::var(format!("x{k}"))))
    });
    Ok(unit_equation(sum))
}

/// `(1 + n + x²) · (1 + n + x²)⁻¹ = 1` with `n` as a literal numeral.
pub fn h_n(n: u64) -> Equation {
    unit_equation(Term::add(Term::add(Term::One, numeral(n)), Term::square(x())))
}

/// `(1 + n) · (1 + n)⁻¹ = 1`
pub fn c_n(n: u64) -> Equation {
    unit_equation(Term::add(Term::One, numeral(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::print::print_term;
    use crate::term::Signature;
    use std::collections::BTreeSet;

    #[test]
    fn axiom_table_entries() {
        let md = md_axioms();
        assert_eq!(md.len(), 10);
        assert_eq!(md[8], Equation::new(Term::inv(Term::inv(x())), x()));
        assert_eq!(
            md[9],
            Equation::new(Term::mul(x(), Term::mul(x(), Term::inv(x()))), x())
        );
        assert_eq!(md[2], Equation::new(Term::add(x(), Term::Zero), x()));
    }

    #[test]
    fn c_zero_unfolds() {
        let base = Term::add(Term::One, numeral(0));
        assert_eq!(
            c_n(0),
            Equation::new(Term::mul(base.clone(), Term::inv(base)), Term::One)
        );
    }

    #[test]
    fn lagrange_zero_rejected() {
        assert_eq!(l_n(0), Err(SchemaError::LagrangeZero));
    }

    #[test]
    fn free_variable_counts() {
        for n in 0..=50u64 {
            if n >= 1 {
                assert_eq!(l_n(n).unwrap().free_vars().len() as u64, n);
            }
            assert_eq!(h_n(n).free_vars(), BTreeSet::from(["x".to_string()]));
            assert!(c_n(n).free_vars().is_empty());
        }
    }

    #[test]
    fn instances_round_trip_through_text() {
        let mut eqs = md_axioms();
        for n in 0..=12 {
            eqs.push(h_n(n));
            eqs.push(c_n(n));
            if n > 0 {
                eqs.push(l_n(n).unwrap());
            }
        }
        for e in eqs {
            for side in [&e.lhs, &e.rhs] {
                let back = parse_term(&print_term(side), Signature::Plain).unwrap();
                assert_eq!(&back, side);
            }
        }
    }

    #[test]
    fn schema_tokens() {
        assert_eq!(parse_schema_spec("L:2").unwrap(), vec![SchemaId::L(2)]);
        assert_eq!(
            parse_schema_spec("H:0..2").unwrap(),
            vec![SchemaId::H(0), SchemaId::H(1), SchemaId::H(2)]
        );
        assert_eq!(parse_schema_spec("Md").unwrap().len(), 10);
        assert_eq!(parse_schema_spec("Md:9").unwrap(), vec![SchemaId::Md(9)]);
        assert_eq!("C:7".parse::<SchemaId>().unwrap(), SchemaId::C(7));
        for bad in ["L:0", "Md:11", "Q:1", "H", "H:3..1", "H:x"] {
            assert!(parse_schema_spec(bad).is_err(), "{bad}");
        }
        assert_eq!(SchemaId::H(4).to_string(), "H:4");
    }
}
