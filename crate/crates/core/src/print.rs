//! Canonical concrete syntax for terms.
//!
//! Binary operators are parenthesized whenever an operand is itself a binary
//! operation of the same or lower precedence, so `((0 + 1) + 1) + 1` is the
//! printed form of the numeral 3. `a + (-b)` prints as `a - b`.

use crate::term::Term;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::ImaginaryUnit => out.push('i'),
        Term::Var(name) => out.push_str(name),
        Term::Inv(a) => {
            out.push_str("inv(");
            write_term(a, out);
            out.push(')');
        }
        Term::Neg(a) => {
            out.push('-');
            write_operand(a, out, matches!(**a, Term::Add(..) | Term::Mul(..) | Term::Neg(_)));
        }
        Term::Add(l, r) => {
            write_operand(l, out, matches!(**l, Term::Add(..)));
            match &**r {
                Term::Neg(s) => {
                    out.push_str(" - ");
                    write_operand(s, out, matches!(**s, Term::Add(..) | Term::Neg(_)));
                }
                _ => {
                    out.push_str(" + ");
                    write_operand(r, out, matches!(**r, Term::Add(..)));
                }
            }
        }
        Term::Mul(l, r) => {
            write_operand(l, out, matches!(**l, Term::Add(..) | Term::Mul(..)));
            out.push_str(" * ");
            write_operand(r, out, matches!(**r, Term::Add(..) | Term::Mul(..)));
        }
    }
}

fn write_operand(t: &Term, out: &mut String, parens: bool) {
    if parens {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}
