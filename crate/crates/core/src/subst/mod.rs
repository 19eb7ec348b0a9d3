//! The ε-substitution method.
//!
//! A run starts from the all-null assignment S₀, repeatedly repairs the first
//! false critical axiom of form III.1 by installing the least witness and
//! nulling every later category, and stops when every formula of the proof
//! resolves to true. Property P (every nonzero substituent value is the least
//! witness of its defining formula) is an invariant of the loop and is
//! re-checkable on any state.

pub mod nci;
pub mod stats;
pub mod trace;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::epsilon::category::{category_with_args, Category};
use crate::epsilon::proof::{
    enumerate_categories, enumerate_eps_terms, proof_constants, schema_instance, Justification,
    ProofConstants, ProofStep, UserAxioms,
};
use crate::epsilon::term::{EFormula, ETerm};
use crate::registry::FunctionRegistry;

pub use crate::registry::HostFn;
pub use nci::{nci_extract, NciOutcome};
pub use trace::{RunTrace, TraceRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    UnregisteredFunction(String),
    FreeVariable(String),
    Overflow,
    UnknownCategory(String),
    /// A non-critical axiom instance resolved to false; the proof relies on
    /// an untrue user axiom.
    UntrueAxiomInstance {
        step: usize,
    },
    NoFalseCritical,
    BudgetExceeded,
    ArityMismatch(String),
    /// The extracted values failed the re-evaluated matrix; an internal
    /// consistency failure.
    MatrixFalse,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::UnregisteredFunction(n) => write!(f, "unregistered function `{n}`"),
            EngineError::FreeVariable(x) => write!(f, "free variable `{x}` during evaluation"),
            EngineError::Overflow => write!(f, "arithmetic overflow during evaluation"),
            EngineError::UnknownCategory(c) => write!(f, "no substituent for category {c}"),
            EngineError::UntrueAxiomInstance { step } => {
                write!(f, "axiom instance at step {step} resolves to false")
            }
            EngineError::NoFalseCritical => write!(f, "no false critical formula to repair"),
            EngineError::BudgetExceeded => write!(f, "step budget exceeded"),
            EngineError::ArityMismatch(m) => write!(f, "arity mismatch: {m}"),
            EngineError::MatrixFalse => write!(f, "extracted witnesses fail the matrix"),
        }
    }
}

impl std::error::Error for EngineError {}

/// A finitely-supported substituent function; only nonzero entries are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substituent {
    arity: usize,
    table: BTreeMap<Vec<u64>, u64>,
}

impl Substituent {
    pub fn null(arity: usize) -> Substituent {
        Substituent {
            arity,
            table: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, key: &[u64]) -> u64 {
        debug_assert_eq!(key.len(), self.arity);
        self.table.get(key).copied().unwrap_or(0)
    }

    pub fn set(&mut self, key: Vec<u64>, value: u64) {
        debug_assert_eq!(key.len(), self.arity);
        if value == 0 {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn is_null(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u64>, u64)> {
        self.table.iter().map(|(k, v)| (k, *v))
    }
}

/// Static facts about a checked proof that every state of a run shares.
#[derive(Debug, Clone)]
pub struct ProofAnalysis {
    pub categories: Vec<Category>,
    category_index: BTreeMap<Category, usize>,
    /// Closed ε-terms, α-normalized, subterm-respecting order.
    pub eps_terms: Vec<ETerm>,
    pub constants: ProofConstants,
    /// Indices of the Critical III.1 steps, in proof order.
    pub critical_one: Vec<usize>,
}

impl ProofAnalysis {
    pub fn new(proof: &[ProofStep]) -> ProofAnalysis {
        let categories = enumerate_categories(proof);
        let category_index = categories
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let critical_one = proof
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match &s.justification {
                Justification::Critical { scheme: 1, .. } => Some(i),
                _ => None,
            })
            .collect();
        ProofAnalysis {
            categories,
            category_index,
            eps_terms: enumerate_eps_terms(proof),
            constants: proof_constants(proof),
            critical_one,
        }
    }

    pub fn category_position(&self, cat: &Category) -> Option<usize> {
        self.category_index.get(cat).copied()
    }
}

/// A total assignment of substituents to the proof's categories.
#[derive(Debug, Clone)]
pub struct SubstState {
    analysis: Arc<ProofAnalysis>,
    tables: Vec<Substituent>,
    generation: u64,
}

impl SubstState {
    /// S₀: the null substituent for every category.
    pub fn initial(analysis: Arc<ProofAnalysis>) -> SubstState {
        let tables = analysis
            .categories
            .iter()
            .map(|c| Substituent::null(c.arity()))
            .collect();
        SubstState {
            analysis,
            tables,
            generation: 0,
        }
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn analysis(&self) -> &ProofAnalysis {
        &self.analysis
    }

    pub fn substituent(&self, position: usize) -> &Substituent {
        &self.tables[position]
    }

    pub fn substituents(&self) -> &[Substituent] {
        &self.tables
    }

    fn lookup(&self, cat: &Category, key: &[u64]) -> Result<u64, EngineError> {
        match self.analysis.category_position(cat) {
            Some(i) => Ok(self.tables[i].get(key)),
            None => Err(EngineError::UnknownCategory(cat.to_string())),
        }
    }
}

/// Resolves a closed term to a natural number under a substitution state:
/// ε-subterms innermost-first (arguments to numbers, then the category's
/// substituent), arithmetic over the naturals.
pub fn resolve_term(
    t: &ETerm,
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<u64, EngineError> {
    match t {
        ETerm::Zero => Ok(0),
        ETerm::Var(x) => Err(EngineError::FreeVariable(x.clone())),
        ETerm::Succ(a) => resolve_term(a, state, reg)?
            .checked_add(1)
            .ok_or(EngineError::Overflow),
        ETerm::Pred(a) => Ok(resolve_term(a, state, reg)?.saturating_sub(1)),
        ETerm::Add(l, r) => resolve_term(l, state, reg)?
            .checked_add(resolve_term(r, state, reg)?)
            .ok_or(EngineError::Overflow),
        ETerm::Mul(l, r) => resolve_term(l, state, reg)?
            .checked_mul(resolve_term(r, state, reg)?)
            .ok_or(EngineError::Overflow),
        ETerm::Eps(_, _) => {
            let (cat, args) = category_with_args(t).expect("eps term");
            let key = args
                .iter()
                .map(|a| resolve_term(a, state, reg))
                .collect::<Result<Vec<_>, _>>()?;
            state.lookup(&cat, &key)
        }
        ETerm::FnApp(name, args) => {
            let values = args
                .iter()
                .map(|a| resolve_term(a, state, reg))
                .collect::<Result<Vec<_>, _>>()?;
            reg.call(name, &values)
                .ok_or_else(|| EngineError::UnregisteredFunction(name.clone()))
        }
    }
}

pub fn eval_formula(
    f: &EFormula,
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<bool, EngineError> {
    match f {
        EFormula::Eq(l, r) => Ok(resolve_term(l, state, reg)? == resolve_term(r, state, reg)?),
        EFormula::Not(b) => Ok(!eval_formula(b, state, reg)?),
        EFormula::Imp(l, r) => Ok(!eval_formula(l, state, reg)? || eval_formula(r, state, reg)?),
    }
}

/// Index of the first Critical III.1 step whose resolved formula is false.
///
/// User-axiom instances are re-evaluated on the way (they are the trust
/// boundary); under debug assertions every other step is re-evaluated too,
/// which checks the claim that only III.1 axioms can go false mid-run.
pub fn first_false_critical(
    proof: &[ProofStep],
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<Option<usize>, EngineError> {
    let mut first = None;
    for (index, step) in proof.iter().enumerate() {
        match &step.justification {
            Justification::Critical { scheme: 1, .. } => {
                if first.is_none() && !eval_formula(&step.formula, state, reg)? {
                    first = Some(index);
                    if !cfg!(debug_assertions) {
                        break;
                    }
                }
            }
            Justification::UserAxiom { .. } => {
                if !eval_formula(&step.formula, state, reg)? {
                    return Err(EngineError::UntrueAxiomInstance { step: index });
                }
            }
            _ => {
                #[cfg(debug_assertions)]
                {
                    if first.is_none() {
                        debug_assert!(
                            eval_formula(&step.formula, state, reg)?,
                            "step {index} unexpectedly false before the first false critical"
                        );
                    }
                }
            }
        }
    }
    Ok(first)
}

/// What a single repair changed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub step_index: usize,
    pub category_position: usize,
    pub key: Vec<u64>,
    pub old: u64,
    pub new: u64,
}

fn critical_parts(step: &ProofStep) -> (&str, &EFormula, &ETerm) {
    match &step.justification {
        Justification::Critical {
            scheme: 1,
            var,
            template,
            terms,
            ..
        } => (var.as_str(), template, &terms[0]),
        _ => panic!("not a critical III.1 step"),
    }
}

/// Repairs the first false critical formula: the offending category's entry
/// at the resolved parameter tuple becomes the least witness, every later
/// category is reset to the null substituent, everything earlier is
/// untouched.
pub fn step(
    proof: &[ProofStep],
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<(SubstState, Repair), EngineError> {
    let index = first_false_critical(proof, state, reg)?.ok_or(EngineError::NoFalseCritical)?;
    let (var, template, instance) = critical_parts(&proof[index]);
    let eps = ETerm::eps(var, template.clone());
    let (cat, args) = category_with_args(&eps).expect("constructed eps term");
    let position = state
        .analysis
        .category_position(&cat)
        .ok_or_else(|| EngineError::UnknownCategory(cat.to_string()))?;
    let key = args
        .iter()
        .map(|a| resolve_term(a, state, reg))
        .collect::<Result<Vec<_>, _>>()?;

    // The least witness exists at or below the resolved instance term: the
    // critical formula is false, so its antecedent A(a) holds, and replacing
    // a by its numeral value resolves identically (the parameters of every
    // ε-term in A abstract to the same category keys).
    let bound = resolve_term(instance, state, reg)?;
    let mut witness = None;
    for n in 0..=bound {
        let candidate = template.subst(var, &ETerm::numeral(n));
        if eval_formula(&candidate, state, reg)? {
            witness = Some(n);
            break;
        }
    }
    let new_value = witness.ok_or(EngineError::NoFalseCritical)?;

    let mut next = state.clone();
    let old = next.tables[position].get(&key);
    next.tables[position].set(key.clone(), new_value);
    for later in next.tables[position + 1..].iter_mut() {
        *later = Substituent::null(later.arity());
    }
    next.generation += 1;
    Ok((
        next,
        Repair {
            step_index: index,
            category_position: position,
            key,
            old,
            new: new_value,
        },
    ))
}

/// Checks property P on a state: every stored nonzero entry `f(b⃗) = v`
/// satisfies its category's defining formula at `v` and fails it at every
/// smaller value (exhaustive scan).
pub fn verify_property_p(state: &SubstState, reg: &FunctionRegistry) -> Result<bool, EngineError> {
    for (cat, table) in state.analysis.categories.iter().zip(&state.tables) {
        let (binder, body) = match cat.skeleton() {
            ETerm::Eps(binder, body) => (binder.clone(), (**body).clone()),
            _ => unreachable!("category skeletons are eps terms"),
        };
        for (key, value) in table.entries() {
            let instantiate = |n: u64| {
                let mut f = body.subst(&binder, &ETerm::numeral(n));
                for (i, arg) in key.iter().enumerate() {
                    f = f.subst(&format!("w{}", i + 1), &ETerm::numeral(*arg));
                }
                f
            };
            if !eval_formula(&instantiate(value), state, reg)? {
                return Ok(false);
            }
            for below in 0..value {
                if eval_formula(&instantiate(below), state, reg)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub final_state: SubstState,
    /// Closed ε-terms of the proof's final formula and their resolved values,
    /// in enumeration order.
    pub witnesses: Vec<(ETerm, u64)>,
    pub trace: RunTrace,
}

#[derive(Debug, Clone)]
pub enum SolveError {
    Engine(EngineError),
    Budget { trace: RunTrace },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Engine(e) => write!(f, "{e}"),
            SolveError::Budget { trace } => {
                write!(
                    f,
                    "budget exceeded after {} substitutions",
                    trace.rows.len()
                )
            }
        }
    }
}

impl std::error::Error for SolveError {}

impl From<EngineError> for SolveError {
    fn from(e: EngineError) -> Self {
        SolveError::Engine(e)
    }
}

pub fn solve(
    proof: &[ProofStep],
    reg: &FunctionRegistry,
    budget: u64,
) -> Result<SolveOutcome, SolveError> {
    solve_observed(proof, reg, budget, |_| {})
}

/// Like [`solve`], but hands every intermediate state (S₀ through the final
/// one) to the observer; used by the property-P test suite.
pub fn solve_observed(
    proof: &[ProofStep],
    reg: &FunctionRegistry,
    budget: u64,
    mut observe: impl FnMut(&SubstState),
) -> Result<SolveOutcome, SolveError> {
    let analysis = Arc::new(ProofAnalysis::new(proof));
    let mut state = SubstState::initial(analysis.clone());
    let mut trace = RunTrace::new();
    let mut steps = 0u64;
    loop {
        observe(&state);
        let false_critical = first_false_critical(proof, &state, reg)?;
        match false_critical {
            None => {
                trace.push_row(proof, &state, reg, None, None)?;
                let witnesses = final_witnesses(proof, &state, reg)?;
                return Ok(SolveOutcome {
                    final_state: state,
                    witnesses,
                    trace,
                });
            }
            Some(_) => {
                if steps >= budget {
                    return Err(SolveError::Budget { trace });
                }
                let (next, repair) = step(proof, &state, reg)?;
                trace.push_row(proof, &state, reg, false_critical, Some(&repair))?;
                state = next;
                steps += 1;
            }
        }
    }
}

fn final_witnesses(
    proof: &[ProofStep],
    state: &SubstState,
    reg: &FunctionRegistry,
) -> Result<Vec<(ETerm, u64)>, EngineError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    if let Some(last) = proof.last() {
        for sub in last.formula.eps_subterms() {
            if sub.is_closed() && seen.insert(sub.alpha_normalize()) {
                out.push((sub.clone(), resolve_term(sub, state, reg)?));
            }
        }
    }
    Ok(out)
}

/// Evaluates the formula a user-axiom step would take under the current
/// instantiation; exposed for the engine's trust re-checks.
pub fn user_axiom_formula(
    just: &Justification,
    user: &UserAxioms,
) -> Result<EFormula, EngineError> {
    schema_instance(just, user).map_err(|_| EngineError::UnknownCategory("user axiom".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::parse::{parse_formula, parse_proof, parse_term};

    fn tiny_proof() -> Vec<ProofStep> {
        parse_proof(
            "(step (= (succ 0) (succ 0)) (axiom-ii 1 (succ 0)))\n\
             (step (imp (= (succ 0) (succ 0)) (= (eps x (= x (succ 0))) (succ 0)))\n\
                   (critical 1 x (= x (succ 0)) (succ 0)))\n\
             (step (= (eps x (= x (succ 0))) (succ 0)) (mp 1 0))",
        )
        .unwrap()
    }

    fn initial(proof: &[ProofStep]) -> SubstState {
        SubstState::initial(Arc::new(ProofAnalysis::new(proof)))
    }

    #[test]
    fn resolves_null_eps_to_zero() {
        let proof = tiny_proof();
        let s0 = initial(&proof);
        let reg = FunctionRegistry::new();
        let eps = parse_term("(eps x (= x (succ 0)))").unwrap();
        assert_eq!(resolve_term(&eps, &s0, &reg).unwrap(), 0);
    }

    #[test]
    fn states_and_traces_are_transferable() {
        fn assert_send<T: Send>() {}
        assert_send::<SubstState>();
        assert_send::<RunTrace>();
    }

    #[test]
    fn truncated_predecessor_at_zero() {
        let proof = tiny_proof();
        let s0 = initial(&proof);
        let reg = FunctionRegistry::new();
        assert_eq!(
            resolve_term(&parse_term("(pred 0)").unwrap(), &s0, &reg).unwrap(),
            0
        );
        assert_eq!(
            resolve_term(&parse_term("(pred (succ (succ 0)))").unwrap(), &s0, &reg).unwrap(),
            1
        );
    }

    #[test]
    fn critical_is_false_under_s0() {
        let proof = tiny_proof();
        let s0 = initial(&proof);
        let reg = FunctionRegistry::new();
        // 0' = 0' → ε_x(x = 0') = 0': antecedent true, 0 ≠ 1.
        let f = parse_formula("(imp (= (succ 0) (succ 0)) (= (eps x (= x (succ 0))) (succ 0)))")
            .unwrap();
        assert!(!eval_formula(&f, &s0, &reg).unwrap());
        assert_eq!(first_false_critical(&proof, &s0, &reg).unwrap(), Some(1));
    }

    #[test]
    fn step_repairs_with_least_witness() {
        let proof = tiny_proof();
        let reg = FunctionRegistry::new();
        let s0 = initial(&proof);
        let (s1, repair) = step(&proof, &s0, &reg).unwrap();
        assert_eq!(repair.new, 1, "least n with n = 0' is 1");
        assert_eq!(repair.old, 0);
        assert_eq!(s1.generation(), 1);
        let eps = parse_term("(eps x (= x (succ 0)))").unwrap();
        assert_eq!(resolve_term(&eps, &s1, &reg).unwrap(), 1);
        assert_eq!(first_false_critical(&proof, &s1, &reg).unwrap(), None);
        assert!(matches!(
            step(&proof, &s1, &reg),
            Err(EngineError::NoFalseCritical)
        ));
        assert!(verify_property_p(&s1, &reg).unwrap());
    }

    #[test]
    fn solve_tiny_proof() {
        let proof = tiny_proof();
        let reg = FunctionRegistry::new();
        let outcome = solve(&proof, &reg, 1_000).unwrap();
        assert_eq!(outcome.final_state.generation(), 1);
        assert_eq!(outcome.witnesses.len(), 1);
        assert_eq!(outcome.witnesses[0].1, 1);
        // Every proof formula resolves to true under the final state.
        for step in &proof {
            assert!(eval_formula(&step.formula, &outcome.final_state, &reg).unwrap());
        }
    }

    #[test]
    fn solve_without_criticals_is_immediate() {
        let proof = parse_proof("(step (= 0 0) (axiom-ii 1 0))").unwrap();
        let reg = FunctionRegistry::new();
        let outcome = solve(&proof, &reg, 10).unwrap();
        assert_eq!(outcome.final_state.generation(), 0);
        assert!(outcome.witnesses.is_empty());
    }

    #[test]
    fn budget_zero_exceeds() {
        let proof = tiny_proof();
        let reg = FunctionRegistry::new();
        assert!(matches!(
            solve(&proof, &reg, 0),
            Err(SolveError::Budget { .. })
        ));
    }

    #[test]
    fn zeroing_resets_later_categories() {
        // Two independent categories; the second gets a value, then a repair
        // of the first resets it, and the run re-repairs it.
        let proof = parse_proof(
            "(step (imp (= (succ (succ 0)) (succ (succ 0)))\n\
                        (= (eps b (= (succ b) (succ (succ 0)))) (succ 0)))\n\
                   (critical 1 b (= (succ b) (succ (succ 0))) (succ 0)))\n\
             (step (imp (= (succ 0) (succ 0)) (= (eps a (= a (succ 0))) (succ 0)))\n\
                   (critical 1 a (= a (succ 0)) (succ 0)))",
        )
        .unwrap();
        // Category order is first-occurrence: ε_b's category (succ b = w1)
        // precedes ε_a's (a = w1). The first repair hits ε_b... but both
        // criticals are false under S₀; the run repairs step 0 first, then
        // step 1.
        let reg = FunctionRegistry::new();
        let outcome = solve(&proof, &reg, 100).unwrap();
        for step in &proof {
            assert!(eval_formula(&step.formula, &outcome.final_state, &reg).unwrap());
        }
        assert!(verify_property_p(&outcome.final_state, &reg).unwrap());
    }

    #[test]
    fn other_critical_schemas_stay_true_through_a_run() {
        // A proof carrying III.2, III.3, and III.4 steps alongside the III.1
        // repair: only the III.1 axiom is ever false; the others hold under
        // every property-P state and the run still terminates.
        let two = "(succ (succ 0))";
        let proof = parse_proof(&format!(
            "(step (imp (= {two} {two}) (= (eps x (= x {two})) {two}))\n\
                   (critical 1 x (= x {two}) {two}))\n\
             (step (imp (= {two} {two}) (not (= (eps x (= x {two})) (succ {two}))))\n\
                   (critical 2 x (= x {two}) {two}))\n\
             (step (imp (not (= (eps x (= x {two})) {two})) (= (eps x (= x {two})) 0))\n\
                   (critical 3 x (= x {two})))\n\
             (step (imp (= {two} (pred (succ {two})))\n\
                        (= (eps x (= x {two})) (eps x (= x (pred (succ {two}))))))\n\
                   (critical 4 x y (= x y) {two} (pred (succ {two}))))",
        ))
        .unwrap();
        let reg = FunctionRegistry::new();
        crate::epsilon::proof::check_proof(&proof, &reg, &crate::epsilon::proof::UserAxioms::new())
            .unwrap();
        let mut all_other_criticals_true = true;
        let outcome = solve_observed(&proof, &reg, 100, |state| {
            for step in proof.iter().skip(1) {
                all_other_criticals_true &= eval_formula(&step.formula, state, &reg).unwrap();
            }
        })
        .unwrap();
        assert!(all_other_criticals_true, "a III.2-III.4 axiom went false mid-run");
        assert_eq!(outcome.final_state.generation(), 1);
        assert!(verify_property_p(&outcome.final_state, &reg).unwrap());
    }

    #[test]
    fn true_user_axiom_instances_pass_the_runtime_check() {
        use crate::epsilon::proof::UserAxioms;
        let mut user = UserAxioms::new();
        // ∀a (a = a): a genuinely universal truth; instances containing
        // ε-terms re-evaluate to true under every state.
        user.register("refl", vec!["a".into()], parse_formula("(= a a)").unwrap()).unwrap();
        let eps = "(eps y (= y (succ 0)))";
        let proof = parse_proof(&format!(
            "(step (= {eps} {eps}) (user refl {eps}))\n\
             (step (imp (= (succ 0) (succ 0)) (= {eps} (succ 0)))\n\
                   (critical 1 y (= y (succ 0)) (succ 0)))\n\
             (step (= (succ 0) (succ 0)) (axiom-ii 1 (succ 0)))",
        ))
        .unwrap();
        let reg = FunctionRegistry::new();
        crate::epsilon::proof::check_proof(&proof, &reg, &user).unwrap();
        let outcome = solve(&proof, &reg, 100).unwrap();
        assert_eq!(outcome.final_state.generation(), 1);
    }

    #[test]
    fn untrue_user_axiom_detected() {
        use crate::epsilon::proof::UserAxioms;
        let mut user = UserAxioms::new();
        // Register a false "universal truth": ∀a (a = 0).
        user.register("bogus", vec!["a".into()], parse_formula("(= a 0)").unwrap())
            .unwrap();
        let proof = vec![ProofStep {
            formula: parse_formula("(= (succ 0) 0)").unwrap(),
            justification: Justification::UserAxiom {
                id: "bogus".into(),
                terms: vec![parse_term("(succ 0)").unwrap()],
            },
        }];
        // The checker accepts it (trusted at check time)…
        assert!(
            crate::epsilon::proof::check_proof(&proof, &FunctionRegistry::new(), &user).is_ok()
        );
        // …but the engine rejects the instance at run time.
        let s0 = initial(&proof);
        let err = first_false_critical(&proof, &s0, &FunctionRegistry::new()).unwrap_err();
        assert!(matches!(err, EngineError::UntrueAxiomInstance { step: 0 }));
    }

    #[test]
    fn parameterized_category_shares_entries() {
        // ε_y(y = ε_x(x = 2̂)') has the same category as ε_x(x = 2̂): both are
        // ε(v = w1). The run must keep separate entries per key.
        let proof = parse_proof(
            "(step (imp (= (succ (succ 0)) (succ (succ 0)))\n\
                        (= (eps x (= x (succ (succ 0)))) (succ (succ 0))))\n\
                   (critical 1 x (= x (succ (succ 0))) (succ (succ 0))))\n\
             (step (imp (= (succ (eps x (= x (succ (succ 0))))) (succ (eps x (= x (succ (succ 0))))))\n\
                        (= (eps y (= y (succ (eps x (= x (succ (succ 0))))))) (succ (eps x (= x (succ (succ 0)))))))\n\
                   (critical 1 y (= y (succ (eps x (= x (succ (succ 0)))))) (succ (eps x (= x (succ (succ 0)))))))",
        )
        .unwrap();
        let reg = FunctionRegistry::new();
        let analysis = ProofAnalysis::new(&proof);
        assert_eq!(analysis.categories.len(), 1, "one shared category");
        let outcome = solve(&proof, &reg, 100).unwrap();
        // Key (2) ↦ 2 and key (3) ↦ 3.
        let table = outcome.final_state.substituent(0);
        assert_eq!(table.get(&[2]), 2);
        assert_eq!(table.get(&[3]), 3);
        assert!(verify_property_p(&outcome.final_state, &reg).unwrap());
    }
}
