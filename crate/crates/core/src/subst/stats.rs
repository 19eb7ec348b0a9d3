//! Per-state statistics of a run: characteristic number, order, degree,
//! index, and progressivity.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::epsilon::proof::{Justification, ProofStep};
use crate::epsilon::term::{EFormula, ETerm};
use crate::registry::FunctionRegistry;

use super::{eval_formula, first_false_critical, resolve_term, EngineError, SubstState};

/// Characteristic number: with `g` categories and `n` the least 1-based
/// position from which every substituent is null, the characteristic is
/// `g − (n−1)`. The all-null S₀ has characteristic `g`; a state whose last
/// category is nonzero has characteristic 0.
pub fn characteristic(state: &SubstState) -> usize {
    let g = state.analysis().categories.len();
    let mut n = g + 1;
    while n > 1 && state.substituent(n - 2).is_null() {
        n -= 1;
    }
    g - (n - 1)
}

/// Order (Reduktionsgrad): over the proof's closed ε-terms `a₀…a_k`,
/// `o(S) = Σ 2^{k−i} f(i)` with `f(i) = 1` iff S resolves `aᵢ` to 0.
pub fn order_of(state: &SubstState, reg: &FunctionRegistry) -> Result<BigUint, EngineError> {
    order_over(&state.analysis().eps_terms, state, reg)
}

fn order_over(
    eps_terms: &[ETerm],
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<BigUint, EngineError> {
    let k = eps_terms.len();
    let mut o = BigUint::zero();
    for (i, term) in eps_terms.iter().enumerate() {
        if resolve_term(term, state, reg)? == 0 {
            o.set_bit((k - 1 - i) as u64, true);
        }
    }
    Ok(o)
}

/// Degree: the order taken over the expanded formula family
/// `A(0,b) … A(k,b)` of the first false critical, where `k` is the value the
/// state gives the critical's instance term; 0 for the final substitution.
pub fn degree_of(
    state: &SubstState,
    proof: &[ProofStep],
    reg: &FunctionRegistry,
) -> Result<BigUint, EngineError> {
    let index = match first_false_critical(proof, state, reg)? {
        Some(i) => i,
        None => return Ok(BigUint::zero()),
    };
    let (var, template, instance) = match &proof[index].justification {
        Justification::Critical {
            scheme: 1,
            var,
            template,
            terms,
            ..
        } => (var, template, &terms[0]),
        _ => unreachable!("first_false_critical returns III.1 steps"),
    };
    let k = resolve_term(instance, state, reg)?;
    let family: Vec<EFormula> = (0..=k)
        .map(|n| template.subst(var, &ETerm::numeral(n)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut eps_terms = Vec::new();
    for f in &family {
        for sub in f.eps_subterms() {
            if sub.is_closed() {
                let norm = sub.alpha_normalize();
                if seen.insert(norm.clone()) {
                    eps_terms.push(norm);
                }
            }
        }
    }
    order_over(&eps_terms, state, reg)
}

/// Index: the pair (order, degree), compared lexicographically.
pub fn index_of(
    state: &SubstState,
    proof: &[ProofStep],
    reg: &FunctionRegistry,
) -> Result<(BigUint, BigUint), EngineError> {
    Ok((order_of(state, reg)?, degree_of(state, proof, reg)?))
}

/// True iff every nonzero entry of `s` is reproduced exactly in `t`: the
/// progressivity relation of the termination bookkeeping.
pub fn is_progressive(s: &SubstState, t: &SubstState) -> bool {
    debug_assert_eq!(s.analysis().categories.len(), t.analysis().categories.len());
    s.substituents()
        .iter()
        .zip(t.substituents())
        .all(|(a, b)| a.entries().all(|(key, value)| b.get(key) == value))
}

/// Progressive, and `t` has a nonzero entry that `s` lacks.
pub fn is_strictly_progressive(s: &SubstState, t: &SubstState) -> bool {
    is_progressive(s, t) && !is_progressive(t, s)
}

/// Resolves the formula family and state pair used by the tests that freeze
/// order/degree values.
pub fn eval_under(
    f: &EFormula,
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<bool, EngineError> {
    eval_formula(f, state, reg)
}
