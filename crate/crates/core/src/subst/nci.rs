//! The no-counterexample scenario: bind the proof's free function variables
//! to concrete opponent functions, run the substitution method, and read the
//! chain witnesses off the final state.

use crate::epsilon::proof::ProofStep;
use crate::epsilon::term::{EFormula, ETerm};
use crate::registry::{FunctionRegistry, HostFn};

use super::{resolve_term, solve, EngineError, RunTrace, SolveError, SubstState};

#[derive(Debug, Clone)]
pub struct NciOutcome {
    /// Resolved values of the chain ε-terms of the final formula, in
    /// enumeration order.
    pub values: Vec<u64>,
    pub trace: RunTrace,
}

/// Binds each function variable to its opponent, solves, and re-checks the
/// matrix on the extracted values through the host functions.
pub fn nci_extract(
    proof: &[ProofStep],
    opponents: &[(String, usize, HostFn)],
    reg: &FunctionRegistry,
    budget: u64,
) -> Result<NciOutcome, SolveError> {
    let mut run_reg = reg.clone();
    for (name, arity, psi) in opponents {
        check_uses(proof, name, *arity)?;
        run_reg.register_host(name.clone(), *arity, psi.clone());
    }
    let outcome = solve(proof, &run_reg, budget)?;
    let values: Vec<u64> = outcome.witnesses.iter().map(|(_, v)| *v).collect();

    // Matrix re-check: replace every closed ε-term of the final formula by
    // the numeral of its resolved value and evaluate the resulting
    // ε-free formula directly through the registry.
    if let Some(last) = proof.last() {
        let ground = concretize_formula(&last.formula, &outcome.final_state, &run_reg)?;
        if !eval_ground(&ground, &run_reg)? {
            return Err(SolveError::Engine(EngineError::MatrixFalse));
        }
    }
    Ok(NciOutcome {
        values,
        trace: outcome.trace,
    })
}

fn check_uses(proof: &[ProofStep], name: &str, arity: usize) -> Result<(), EngineError> {
    for step in proof {
        check_formula_uses(&step.formula, name, arity)?;
    }
    Ok(())
}

fn check_formula_uses(f: &EFormula, name: &str, arity: usize) -> Result<(), EngineError> {
    match f {
        EFormula::Eq(l, r) => {
            check_term_uses(l, name, arity)?;
            check_term_uses(r, name, arity)
        }
        EFormula::Not(b) => check_formula_uses(b, name, arity),
        EFormula::Imp(l, r) => {
            check_formula_uses(l, name, arity)?;
            check_formula_uses(r, name, arity)
        }
    }
}

fn check_term_uses(t: &ETerm, name: &str, arity: usize) -> Result<(), EngineError> {
    match t {
        ETerm::Zero | ETerm::Var(_) => Ok(()),
        ETerm::Succ(a) | ETerm::Pred(a) => check_term_uses(a, name, arity),
        ETerm::Add(l, r) | ETerm::Mul(l, r) => {
            check_term_uses(l, name, arity)?;
            check_term_uses(r, name, arity)
        }
        ETerm::Eps(_, body) => check_formula_uses(body, name, arity),
        ETerm::FnApp(f, args) => {
            if f == name && args.len() != arity {
                return Err(EngineError::ArityMismatch(format!(
                    "opponent `{name}` has arity {arity}, proof applies it to {} arguments",
                    args.len()
                )));
            }
            for a in args {
                check_term_uses(a, name, arity)?;
            }
            Ok(())
        }
    }
}

fn concretize_formula(
    f: &EFormula,
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<EFormula, EngineError> {
    Ok(match f {
        EFormula::Eq(l, r) => EFormula::Eq(
            concretize_term(l, state, reg)?,
            concretize_term(r, state, reg)?,
        ),
        EFormula::Not(b) => EFormula::not(concretize_formula(b, state, reg)?),
        EFormula::Imp(l, r) => EFormula::imp(
            concretize_formula(l, state, reg)?,
            concretize_formula(r, state, reg)?,
        ),
    })
}

fn concretize_term(
    t: &ETerm,
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<ETerm, EngineError> {
    Ok(match t {
        ETerm::Eps(_, _) if t.is_closed() => ETerm::numeral(resolve_term(t, state, reg)?),
        ETerm::Zero | ETerm::Var(_) | ETerm::Eps(_, _) => t.clone(),
        ETerm::Succ(a) => ETerm::succ(concretize_term(a, state, reg)?),
        ETerm::Pred(a) => ETerm::pred(concretize_term(a, state, reg)?),
        ETerm::Add(l, r) => ETerm::add(
            concretize_term(l, state, reg)?,
            concretize_term(r, state, reg)?,
        ),
        ETerm::Mul(l, r) => ETerm::mul(
            concretize_term(l, state, reg)?,
            concretize_term(r, state, reg)?,
        ),
        ETerm::FnApp(name, args) => ETerm::FnApp(
            name.clone(),
            args.iter()
                .map(|a| concretize_term(a, state, reg))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    })
}

fn eval_ground(f: &EFormula, reg: &FunctionRegistry) -> Result<bool, EngineError> {
    match f {
        EFormula::Eq(l, r) => Ok(eval_ground_term(l, reg)? == eval_ground_term(r, reg)?),
        EFormula::Not(b) => Ok(!eval_ground(b, reg)?),
        EFormula::Imp(l, r) => Ok(!eval_ground(l, reg)? || eval_ground(r, reg)?),
    }
}

fn eval_ground_term(t: &ETerm, reg: &FunctionRegistry) -> Result<u64, EngineError> {
    match t {
        ETerm::Zero => Ok(0),
        ETerm::Var(x) => Err(EngineError::FreeVariable(x.clone())),
        ETerm::Eps(_, _) => Err(EngineError::UnknownCategory(t.to_string())),
        ETerm::Succ(a) => eval_ground_term(a, reg)?
            .checked_add(1)
            .ok_or(EngineError::Overflow),
        ETerm::Pred(a) => Ok(eval_ground_term(a, reg)?.saturating_sub(1)),
        ETerm::Add(l, r) => eval_ground_term(l, reg)?
            .checked_add(eval_ground_term(r, reg)?)
            .ok_or(EngineError::Overflow),
        ETerm::Mul(l, r) => eval_ground_term(l, reg)?
            .checked_mul(eval_ground_term(r, reg)?)
            .ok_or(EngineError::Overflow),
        ETerm::FnApp(name, args) => {
            let values = args
                .iter()
                .map(|a| eval_ground_term(a, reg))
                .collect::<Result<Vec<_>, _>>()?;
            reg.call(name, &values)
                .ok_or_else(|| EngineError::UnregisteredFunction(name.clone()))
        }
    }
}
