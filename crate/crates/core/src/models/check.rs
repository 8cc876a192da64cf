//! Satisfaction of equations: exhaustive in the finite prime fields, sampled in
//! the two infinite models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{
    Assignment, GaussianRational, Meadow, Model, ModelError, PrimeField, Rational, Value, Q0, QI,
};
use crate::term::{Equation, Term};

/// Maximum number of assignments `satisfies_fp` evaluates before giving up.
pub const EXHAUSTIVE_BUDGET: u64 = 10_000_000;

/// Sampled numerators lie in `[-SAMPLE_RANGE, SAMPLE_RANGE]`, denominators in `[1, SAMPLE_RANGE]`.
const SAMPLE_RANGE: i64 = 1000;

/// Forced grids larger than this fall back to the diagonal.
const MAX_FORCED_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(
        "exhaustive check at p = {p} over {vars} variable(s) undecided after {budget} assignments"
    )]
    BudgetExceeded { p: u64, vars: usize, budget: u64 },
    #[error("fp:{0} is finite; use the exhaustive check")]
    FiniteModel(u64),
}

/// Outcome of checking one equation in one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelVerdict {
    /// Exhaustively verified (prime fields) or no counterexample among the samples.
    Satisfied,
    Falsified(Assignment),
}

impl ModelVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ModelVerdict::Satisfied)
    }

    pub fn counterexample(&self) -> Option<&Assignment> {
        match self {
            ModelVerdict::Satisfied => None,
            ModelVerdict::Falsified(a) => Some(a),
        }
    }
}

/// A term with variables resolved to slots.
enum Node {
    Zero,
    One,
    I,
    Var(usize),
    Neg(Box<Node>),
    Inv(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
}

fn compile(t: &Term, vars: &[String]) -> Node {
    match t {
        Term::Zero => Node::Zero,
        Term::One => Node::One,
        Term::ImaginaryUnit => Node::I,
        Term::Var(name) => Node::Var(vars.binary_search(name).expect("variable collected")),
        Term::Neg(a) => Node::Neg(Box::new(compile(a, vars))),
        Term::Inv(a) => Node::Inv(Box::new(compile(a, vars))),
        Term::Add(l, r) => Node::Add(Box::new(compile(l, vars)), Box::new(compile(r, vars))),
        Term::Mul(l, r) => Node::Mul(Box::new(compile(l, vars)), Box::new(compile(r, vars))),
    }
}

fn run<M: Meadow>(m: &M, node: &Node, env: &[M::Elem]) -> Result<M::Elem, ModelError> {
    Ok(match node {
        Node::Zero => m.zero(),
        Node::One => m.one(),
        Node::I => m
            .imaginary_unit()
            .ok_or(ModelError::ImaginaryUnitOutsideQi)?,
        Node::Var(k) => env[*k].clone(),
        Node::Neg(a) => m.neg(&run(m, a, env)?),
        Node::Inv(a) => m.inv(&run(m, a, env)?),
        Node::Add(l, r) => m.add(&run(m, l, env)?, &run(m, r, env)?),
        Node::Mul(l, r) => m.mul(&run(m, l, env)?, &run(m, r, env)?),
    })
}

struct CompiledEquation {
    vars: Vec<String>,
    lhs: Node,
    rhs: Node,
}

impl CompiledEquation {
    fn new(e: &Equation) -> CompiledEquation {
        let vars: Vec<String> = e.free_vars().into_iter().collect();
        CompiledEquation {
            lhs: compile(&e.lhs, &vars),
            rhs: compile(&e.rhs, &vars),
            vars,
        }
    }

    fn holds<M: Meadow>(&self, m: &M, env: &[M::Elem]) -> Result<bool, ModelError> {
        Ok(run(m, &self.lhs, env)? == run(m, &self.rhs, env)?)
    }

    fn assignment<E>(&self, env: &[E], wrap: impl Fn(&E) -> Value) -> Assignment {
        self.vars.iter().cloned().zip(env.iter().map(wrap)).collect()
    }
}

/// Exhaustive check in the prime field of order `p`.
///
/// Assignments are visited in lexicographic order (variables sorted by name, the
/// first variable most significant), so a falsifying answer carries the least
/// counterexample. At most [`EXHAUSTIVE_BUDGET`] assignments are evaluated.
pub fn satisfies_fp(e: &Equation, p: u64) -> Result<ModelVerdict, CheckError> {
    satisfies_fp_with_budget(e, p, EXHAUSTIVE_BUDGET)
}

pub fn satisfies_fp_with_budget(
    e: &Equation,
    p: u64,
    budget: u64,
) -> Result<ModelVerdict, CheckError> {
    let field = PrimeField::new(p)?;
    if e.lhs.mentions_imaginary_unit() || e.rhs.mentions_imaginary_unit() {
        return Err(ModelError::ImaginaryUnitOutsideQi.into());
    }
    let compiled = CompiledEquation::new(e);
    let k = compiled.vars.len();
    let mut env = vec![field.elem(0); k];
    let mut evaluated = 0u64;
    loop {
        if evaluated == budget {
            return Err(CheckError::BudgetExceeded { p, vars: k, budget });
        }
        evaluated += 1;
        if !compiled.holds(&field, &env)? {
            return Ok(ModelVerdict::Falsified(compiled.assignment(&env, |v| Value::Fp(*v))));
        }
        // odometer: the last variable turns fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(ModelVerdict::Satisfied);
            }
            pos -= 1;
            let next = env[pos].value() + 1;
            if next < p {
                env[pos] = field.elem(next);
                break;
            }
            env[pos] = field.elem(0);
        }
    }
}

/// The two infinite models, which can only be sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteModel {
    Q0,
    QI,
}

impl InfiniteModel {
    fn special_values(self) -> Vec<Value> {
        match self {
            InfiniteModel::Q0 => [0, 1, -1]
                .into_iter()
                .map(|n| Value::Rational(Rational::from(n)))
                .collect(),
            InfiniteModel::QI => [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .map(|(re, im)| Value::Gaussian(GaussianRational::int(re, im)))
                .collect(),
        }
    }
}

/// Forced sample points for `vars`: every combination of the model's special
/// values (`0, ±1` in q0; `0, ±1, ±i, ±1±i` in qi) when that grid has at most
/// 4096 points, otherwise one point per special value with all variables equal.
pub fn default_forced_points(model: InfiniteModel, vars: &[String]) -> Vec<Assignment> {
    let specials = model.special_values();
    let grid = specials
        .len()
        .checked_pow(vars.len() as u32)
        .filter(|&n| n <= MAX_FORCED_GRID);
    match grid {
        Some(n) => (0..n)
            .map(|mut idx| {
                let mut a = Assignment::new();
                for name in vars.iter().rev() {
                    a.insert(name.clone(), specials[idx % specials.len()].clone());
                    idx /= specials.len();
                }
                a
            })
            .collect(),
        None => specials
            .iter()
            .map(|v| vars.iter().map(|n| (n.clone(), v.clone())).collect())
            .collect(),
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
    let den = rng.gen_range(1..=SAMPLE_RANGE);
    Rational::new(num, den)
}

/// Sampled check with the default forced points followed by `samples`
/// pseudo-random assignments drawn from `seed`. `Satisfied` only means that no
/// counterexample turned up.
pub fn sample_check(
    e: &Equation,
    model: InfiniteModel,
    samples: usize,
    seed: u64,
) -> Result<ModelVerdict, CheckError> {
    let vars: Vec<String> = e.free_vars().into_iter().collect();
    sample_check_with(e, model, &default_forced_points(model, &vars), samples, seed)
}

/// Like [`sample_check`] but with caller-supplied forced points, checked first and in order.
pub fn sample_check_with(
    e: &Equation,
    model: InfiniteModel,
    forced: &[Assignment],
    samples: usize,
    seed: u64,
) -> Result<ModelVerdict, CheckError> {
    let compiled = CompiledEquation::new(e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        InfiniteModel::Q0 => {
            let from_forced = |a: &Assignment| -> Result<Vec<Rational>, ModelError> {
                compiled
                    .vars
                    .iter()
                    .map(|n| match a.get(n) {
                        Some(Value::Rational(r)) => Ok(r.clone()),
                        Some(_) => Err(ModelError::ValueMismatch(n.clone())),
                        None => Err(ModelError::UnboundVariable(n.clone())),
                    })
                    .collect()
            };
            let wrap = |r: &Rational| Value::Rational(r.clone());
            for a in forced {
                let env = from_forced(a)?;
                if !compiled.holds(&Q0, &env)? {
                    return Ok(ModelVerdict::Falsified(compiled.assignment(&env, wrap)));
                }
            }
            for _ in 0..samples {
                let env: Vec<Rational> =
                    compiled.vars.iter().map(|_| random_rational(&mut rng)).collect();
                if !compiled.holds(&Q0, &env)? {
                    return Ok(ModelVerdict::Falsified(compiled.assignment(&env, wrap)));
                }
            }
        }
        InfiniteModel::QI => {
            let from_forced = |a: &Assignment| -> Result<Vec<GaussianRational>, ModelError> {
                compiled
                    .vars
                    .iter()
                    .map(|n| match a.get(n) {
                        Some(Value::Gaussian(g)) => Ok(g.clone()),
                        Some(Value::Rational(r)) => Ok(GaussianRational::from_rational(r.clone())),
                        Some(_) => Err(ModelError::ValueMismatch(n.clone())),
                        None => Err(ModelError::UnboundVariable(n.clone())),
                    })
                    .collect()
            };
            let wrap = |g: &GaussianRational| Value::Gaussian(g.clone());
            for a in forced {
                let env = from_forced(a)?;
                if !compiled.holds(&QI, &env)? {
                    return Ok(ModelVerdict::Falsified(compiled.assignment(&env, wrap)));
                }
            }
            for _ in 0..samples {
                let env: Vec<GaussianRational> = compiled
                    .vars
                    .iter()
                    .map(|_| {
                        let re = random_rational(&mut rng);
                        GaussianRational::new(re, random_rational(&mut rng))
                    })
                    .collect();
                if !compiled.holds(&QI, &env)? {
                    return Ok(ModelVerdict::Falsified(compiled.assignment(&env, wrap)));
                }
            }
        }
    }
    Ok(ModelVerdict::Satisfied)
}

/// Exhaustive in `fp:<p>`, sampled in `q0` and `qi`.
pub fn check_model(
    e: &Equation,
    model: &Model,
    samples: usize,
    seed: u64,
) -> Result<ModelVerdict, CheckError> {
    match model {
        Model::Fp(f) => satisfies_fp(e, f.modulus()),
        Model::Q0 => sample_check(e, InfiniteModel::Q0, samples, seed),
        Model::QI => sample_check(e, InfiniteModel::QI, samples, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::eval;
    use crate::schema::{h_n, l_n, md_axioms};

    fn fp_assignment(p: u64, pairs: &[(&str, u64)]) -> Assignment {
        let f = PrimeField::new(p).unwrap();
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), Value::Fp(f.elem(*v))))
            .collect()
    }

    // Independent oracle: enumerate all assignments through the generic evaluator
    // and keep the first falsifier in lexicographic order.
    fn brute_force_fp(e: &Equation, p: u64) -> ModelVerdict {
        let model = Model::fp(p).unwrap();
        let vars: Vec<String> = e.free_vars().into_iter().collect();
        let total = p.pow(vars.len() as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut digits = vec![0; vars.len()];
            for d in digits.iter_mut().rev() {
                *d = rest % p;
                rest /= p;
            }
            let pairs: Vec<(&str, u64)> =
                vars.iter().map(String::as_str).zip(digits).collect();
            let a = fp_assignment(p, &pairs);
            if eval(&e.lhs, &model, &a).unwrap() != eval(&e.rhs, &model, &a).unwrap() {
                return ModelVerdict::Falsified(a);
            }
        }
        ModelVerdict::Satisfied
    }

    #[test]
    fn h0_examples() {
        assert_eq!(satisfies_fp(&h_n(0), 3).unwrap(), ModelVerdict::Satisfied);
        assert_eq!(
            satisfies_fp(&h_n(0), 5).unwrap(),
            ModelVerdict::Falsified(fp_assignment(5, &[("x", 2)]))
        );
    }

    #[test]
    fn l2_at_two_least_counterexample() {
        // (0, 0) gives 1; (0, 1) gives 1 + 0 + 1 = 0 mod 2
        assert_eq!(
            satisfies_fp(&l_n(2).unwrap(), 2).unwrap(),
            ModelVerdict::Falsified(fp_assignment(2, &[("x1", 0), ("x2", 1)]))
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut eqs = md_axioms();
        eqs.extend((0..6).map(h_n));
        eqs.push(l_n(1).unwrap());
        eqs.push(l_n(2).unwrap());
        for p in [2u64, 3, 5, 7] {
            for e in &eqs {
                assert_eq!(satisfies_fp(e, p).unwrap(), brute_force_fp(e, p), "{e} at {p}");
            }
        }
    }

    #[test]
    fn budget_counts_evaluated_assignments() {
        let md1 = &md_axioms()[0];
        assert!(matches!(
            satisfies_fp_with_budget(md1, 101, 1000),
            Err(CheckError::BudgetExceeded { p: 101, vars: 3, budget: 1000 })
        ));
        // a falsifier inside the budget is still reported
        let l3 = l_n(3).unwrap();
        assert!(matches!(
            satisfies_fp_with_budget(&l3, 1009, 1_000_000).unwrap(),
            ModelVerdict::Falsified(_)
        ));
        assert_eq!(satisfies_fp_with_budget(&h_n(0), 3, 3).unwrap(), ModelVerdict::Satisfied);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            satisfies_fp(&h_n(0), 15),
            Err(CheckError::Model(ModelError::NotPrime(15)))
        ));
        let e = Equation::new(Term::ImaginaryUnit, Term::One);
        assert!(satisfies_fp(&e, 5).is_err());
        assert!(sample_check(&e, InfiniteModel::Q0, 1, 0).is_err());
    }

    #[test]
    fn samples_hold_for_axioms() {
        assert_eq!(
            sample_check(&md_axioms()[8], InfiniteModel::Q0, 1000, 42).unwrap(),
            ModelVerdict::Satisfied
        );
        let refl = Equation::new(Term::var("x"), Term::var("x"));
        assert_eq!(
            sample_check(&refl, InfiniteModel::Q0, 10, 0).unwrap(),
            ModelVerdict::Satisfied
        );
    }

    #[test]
    fn l2_fails_with_imaginary_unit() {
        let l2 = l_n(2).unwrap();
        let forced = vec![Assignment::from([
            ("x1".to_string(), Value::Gaussian(GaussianRational::i())),
            ("x2".to_string(), Value::Gaussian(GaussianRational::zero())),
        ])];
        let v = sample_check_with(&l2, InfiniteModel::QI, &forced, 0, 0).unwrap();
        assert_eq!(v, ModelVerdict::Falsified(forced[0].clone()));
        // the default grid contains that point too
        assert!(!sample_check(&l2, InfiniteModel::QI, 10, 1).unwrap().is_satisfied());
        // and in q0 nothing is found
        assert!(sample_check(&l2, InfiniteModel::Q0, 200, 1).unwrap().is_satisfied());
    }

    #[test]
    fn forced_grid_shapes() {
        let vars = |n: usize| (1..=n).map(|k| format!("x{k}")).collect::<Vec<_>>();
        assert_eq!(default_forced_points(InfiniteModel::Q0, &vars(2)).len(), 9);
        assert_eq!(default_forced_points(InfiniteModel::QI, &vars(3)).len(), 729);
        assert_eq!(default_forced_points(InfiniteModel::QI, &vars(4)).len(), 9);
        assert_eq!(default_forced_points(InfiniteModel::Q0, &[]).len(), 1);
    }

    #[test]
    fn sampling_is_deterministic() {
        let e = Equation::new(Term::inv(Term::var("x")), Term::var("x"));
        let a = sample_check(&e, InfiniteModel::Q0, 50, 9).unwrap();
        let b = sample_check(&e, InfiniteModel::Q0, 50, 9).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_satisfied());
    }
}
