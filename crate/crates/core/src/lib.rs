//! Exact computation with meadows: terms over the signature `(0, 1, +, ·, -, ⁻¹)`,
//! their evaluation in the zero-totalized rationals, prime fields and Gaussian
//! rationals, and prime-field model checking of equational specifications.

pub mod cli;
pub mod models;
pub mod parse;
pub mod primes;
pub mod print;
pub mod residues;
pub mod report;
pub mod schema;
pub mod speccheck;
pub mod term;

pub use models::{eval, Assignment, Model, ModelVerdict, Value};
pub use parse::{parse_equation, parse_term, ParseError};
pub use print::print_term;
pub use schema::{c_n, h_n, l_n, md_axioms, SchemaId};
pub use term::{numeral, substitute, Equation, Signature, Term};
