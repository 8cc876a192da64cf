//! Terms over the meadow signature `(0, 1, +, ·, -, ⁻¹)`, optionally extended
//! with the imaginary unit `i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Whether terms may mention the constant `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    Plain,
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
    ImaginaryUnit,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    /// `t · t`, the only power the term language knows about.
    pub fn square(t: Term) -> Term {
        Term::mul(t.clone(), t)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(name) => {
                out.insert(name.clone());
            }
            Term::Neg(t) | Term::Inv(t) => t.collect_vars(out),
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Zero | Term::One | Term::ImaginaryUnit => {}
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Neg(t) | Term::Inv(t) => t.is_closed(),
            Term::Add(l, r) | Term::Mul(l, r) => l.is_closed() && r.is_closed(),
            Term::Zero | Term::One | Term::ImaginaryUnit => true,
        }
    }

    pub fn mentions_imaginary_unit(&self) -> bool {
        match self {
            Term::ImaginaryUnit => true,
            Term::Neg(t) | Term::Inv(t) => t.mentions_imaginary_unit(),
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.mentions_imaginary_unit() || r.mentions_imaginary_unit()
            }
            Term::Zero | Term::One | Term::Var(_) => false,
        }
    }

    /// The smallest signature the term lives in.
    pub fn signature(&self) -> Signature {
        if self.mentions_imaginary_unit() {
            Signature::Extended
        } else {
            Signature::Plain
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Neg(t) | Term::Inv(t) => 1 + t.size(),
            Term::Add(l, r) | Term::Mul(l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_term(self))
    }
}

/// The numeral `n`: `0` for zero, otherwise `numeral(n - 1) + 1`, nested to the left.
pub fn numeral(n: u64) -> Term {
    (0..n).fold(Term::Zero, |acc, _| Term::add(acc, Term::One))
}

/// Simultaneous substitution. Variables without a binding are left alone.
pub fn substitute(t: &Term, binding: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(name) => binding.get(name).cloned().unwrap_or_else(|| t.clone()),
        Term::Neg(a) => Term::neg(substitute(a, binding)),
        Term::Inv(a) => Term::inv(substitute(a, binding)),
        Term::Add(l, r) => Term::add(substitute(l, binding), substitute(r, binding)),
        Term::Mul(l, r) => Term::mul(substitute(l, binding), substitute(r, binding)),
        Term::Zero | Term::One | Term::ImaginaryUnit => t.clone(),
    }
}

/// An equation `lhs = rhs`. The signature is derived from the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.free_vars();
        vars.extend(self.rhs.free_vars());
        vars
    }

    pub fn signature(&self) -> Signature {
        self.lhs.signature().max(self.rhs.signature())
    }

    pub fn substitute(&self, binding: &BTreeMap<String, Term>) -> Equation {
        Equation::new(substitute(&self.lhs, binding), substitute(&self.rhs, binding))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn numeral_unfolds_left_nested() {
        assert_eq!(numeral(0), Term::Zero);
        assert_eq!(numeral(1), Term::add(Term::Zero, Term::One));
        let four = Term::add(
            Term::add(
                Term::add(Term::add(Term::Zero, Term::One), Term::One),
                Term::One,
            ),
            Term::One,
        );
        assert_eq!(numeral(4), four);
    }

    #[test]
    fn substitute_cases() {
        assert_eq!(substitute(&x(), &BTreeMap::new()), x());
        let binding = BTreeMap::from([("x".to_string(), Term::One)]);
        assert_eq!(
            substitute(&Term::mul(x(), Term::var("y")), &binding),
            Term::mul(Term::One, Term::var("y"))
        );
    }

    #[test]
    fn substitution_is_simultaneous() {
        let binding = BTreeMap::from([
            ("x".to_string(), Term::var("y")),
            ("y".to_string(), Term::var("x")),
        ]);
        let t = Term::add(x(), Term::var("y"));
        assert_eq!(substitute(&t, &binding), Term::add(Term::var("y"), x()));
    }

    #[test]
    fn equation_signature_follows_imaginary_unit() {
        let plain = Equation::new(x(), Term::One);
        assert_eq!(plain.signature(), Signature::Plain);
        let ext = Equation::new(Term::mul(Term::ImaginaryUnit, x()), Term::One);
        assert_eq!(ext.signature(), Signature::Extended);
        assert_eq!(ext.free_vars(), BTreeSet::from(["x".to_string()]));
    }
}
