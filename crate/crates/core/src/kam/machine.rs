//! The deterministic head machine over λc processes.
//!
//! Four base rules (push, pop, store, restore) plus the instruction rules the
//! extraction theorems use. The machine has no intrinsic halt: runs stop on a
//! watcher hit, a stuck state, or budget exhaustion.

use std::fmt;

use super::term::{as_numeral_syntactic, church, storage_t, substitute, Instr, LTerm, Stack};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Process {
    pub head: LTerm,
    pub stack: Stack,
}

impl Process {
    pub fn new(head: LTerm, stack: Stack) -> Process {
        Process { head, stack }
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.head, self.stack)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineError {
    /// A ζ sub-evaluation ran out of its own budget.
    SubEvalBudget,
    /// A strategy term's readback disagreed with the host function it is
    /// supposed to represent.
    RepresentationViolation {
        args: Vec<u64>,
        read: u64,
        expected: u64,
    },
    /// The interactive opponent quit.
    InteractiveAbort,
    /// An instruction fired without the machinery it needs (opponent or game
    /// depth).
    MissingEnvironment(&'static str),
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::SubEvalBudget => write!(f, "zeta sub-evaluation budget exhausted"),
            MachineError::RepresentationViolation { args, read, expected } => write!(
                f,
                "strategy term read back {read} on arguments {args:?}, host function says {expected}"
            ),
            MachineError::InteractiveAbort => write!(f, "opponent aborted the game"),
            MachineError::MissingEnvironment(what) => {
                write!(f, "instruction fired without {what}")
            }
        }
    }
}

impl std::error::Error for MachineError {}

/// Callbacks and parameters the instruction constants need.
pub struct InstructionEnv<'a> {
    /// Budget for each ζ sub-evaluation (fresh bottom, separate meter).
    pub sub_budget: u64,
    /// Total alternation depth k of the game; κʲ finishes at j = k−1.
    pub game_depth: usize,
    /// ∀bélard: (history so far, ∃loise's proposal) ↦ reply.
    pub opponent: Option<Box<dyn FnMut(&[(u64, u64)], u64) -> Result<u64, MachineError> + 'a>>,
    /// Called at every ζ firing with the probed arguments and the value read
    /// back; may veto with a representation violation.
    pub zeta_observer: Option<Box<dyn FnMut(&[u64], u64) -> Result<(), MachineError> + 'a>>,
    /// Called at every κ firing with the position just played and the history
    /// including the new pair.
    pub kappa_observer: Option<Box<dyn FnMut(usize, &[(u64, u64)]) + 'a>>,
}

impl<'a> Default for InstructionEnv<'a> {
    fn default() -> Self {
        InstructionEnv {
            sub_budget: 100_000,
            game_depth: 0,
            opponent: None,
            zeta_observer: None,
            kappa_observer: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Push,
    Pop,
    Store,
    Restore,
    Zeta,
    Kappa,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Push => "push",
            Rule::Pop => "pop",
            Rule::Store => "store",
            Rule::Restore => "restore",
            Rule::Zeta => "zeta",
            Rule::Kappa => "kappa",
        };
        write!(f, "{name}")
    }
}

/// The rules whose left-hand sides match a process, ignoring side effects.
/// Used by the determinism audit: the list never has more than one element.
pub fn applicable_rules(p: &Process) -> Vec<Rule> {
    let mut out = Vec::new();
    match &p.head {
        LTerm::App(_, _) => out.push(Rule::Push),
        LTerm::Lam(_, _) if p.stack.depth() >= 1 => out.push(Rule::Pop),
        LTerm::CC if p.stack.depth() >= 1 => out.push(Rule::Store),
        LTerm::Cont(_) if p.stack.depth() >= 1 => out.push(Rule::Restore),
        LTerm::Instr(Instr::Zeta(k)) if p.stack.depth() >= 2 => {
            let (_, args) = p.stack.items[1].spine();
            if args.len() == *k && args.iter().all(|a| as_numeral_syntactic(a).is_some()) {
                out.push(Rule::Zeta);
            }
        }
        LTerm::Instr(Instr::Kappa { .. }) if p.stack.depth() >= 2 => {
            if as_numeral_syntactic(&p.stack.items[0]).is_some() {
                out.push(Rule::Kappa);
            }
        }
        _ => {}
    }
    out
}

#[derive(Debug)]
pub enum StepOutcome {
    Next(Process, Rule),
    Stuck(Process),
}

/// One machine step: exactly one rule applies, or the process is stuck.
pub fn step(p: Process, env: &mut InstructionEnv) -> Result<StepOutcome, MachineError> {
    let Process { head, mut stack } = p;
    match head {
        // (t)u ⋆ π ≻ t ⋆ u·π
        LTerm::App(f, a) => {
            stack.push(*a);
            Ok(StepOutcome::Next(Process::new(*f, stack), Rule::Push))
        }
        // λx.t ⋆ u·π ≻ t[u/x] ⋆ π
        LTerm::Lam(x, body) => match stack.pop() {
            Some(u) => Ok(StepOutcome::Next(
                Process::new(substitute(&body, &x, &u), stack),
                Rule::Pop,
            )),
            None => Ok(StepOutcome::Stuck(Process::new(LTerm::Lam(x, body), stack))),
        },
        // cc ⋆ t·π ≻ t ⋆ k_π·π
        LTerm::CC => match stack.pop() {
            Some(t) => {
                let k = LTerm::Cont(Box::new(stack.clone()));
                stack.push(k);
                Ok(StepOutcome::Next(Process::new(t, stack), Rule::Store))
            }
            None => Ok(StepOutcome::Stuck(Process::new(LTerm::CC, stack))),
        },
        // k_π ⋆ t·π' ≻ t ⋆ π
        LTerm::Cont(saved) => match stack.pop() {
            Some(t) => Ok(StepOutcome::Next(Process::new(t, *saved), Rule::Restore)),
            None => Ok(StepOutcome::Stuck(Process::new(LTerm::Cont(saved), stack))),
        },
        LTerm::Instr(Instr::Zeta(k)) => zeta_step(k, stack, env),
        LTerm::Instr(Instr::Kappa { position, history }) => {
            kappa_step(position, history, stack, env)
        }
        other => Ok(StepOutcome::Stuck(Process::new(other, stack))),
    }
}

/// ζₖ ⋆ ξ.(t)n̂₁…n̂ₖ.π ≻ ξ ⋆ p̂.π where t ⋆ n̂₁…n̂ₖ ≻ p̂: the application is
/// evaluated by readback in a budgeted sub-machine with a fresh bottom.
fn zeta_step(
    k: usize,
    mut stack: Stack,
    env: &mut InstructionEnv,
) -> Result<StepOutcome, MachineError> {
    let stuck = |stack: Stack| {
        Ok(StepOutcome::Stuck(Process::new(
            LTerm::Instr(Instr::Zeta(k)),
            stack,
        )))
    };
    if stack.depth() < 2 {
        return stuck(stack);
    }
    let (_, args) = stack.items[1].spine();
    if args.len() != k {
        return stuck(stack);
    }
    let mut values = Vec::with_capacity(k);
    for a in &args {
        match as_numeral_syntactic(a) {
            Some(n) => values.push(n),
            None => return stuck(stack),
        }
    }
    let xi = stack.pop().expect("depth checked");
    let application = stack.pop().expect("depth checked");
    let p = match readback(&application, env.sub_budget) {
        Some(p) => p,
        None => return Err(MachineError::SubEvalBudget),
    };
    if let Some(observer) = env.zeta_observer.as_mut() {
        observer(&values, p)?;
    }
    stack.push(church(p));
    Ok(StepOutcome::Next(Process::new(xi, stack), Rule::Zeta))
}

/// κʲ ⋆ n̂.ξ.π ≻ ξ ⋆ p̂.(T·κʲ⁺¹).π for j < k−1, and at j = k−1 the full pair
/// list replaces the next instruction.
fn kappa_step(
    position: usize,
    history: Vec<(u64, u64)>,
    mut stack: Stack,
    env: &mut InstructionEnv,
) -> Result<StepOutcome, MachineError> {
    let stuck = |stack: Stack| {
        Ok(StepOutcome::Stuck(Process::new(
            LTerm::Instr(Instr::Kappa {
                position,
                history: history.clone(),
            }),
            stack,
        )))
    };
    if stack.depth() < 2 {
        return stuck(stack);
    }
    let n = match as_numeral_syntactic(&stack.items[0]) {
        Some(n) => n,
        None => return stuck(stack),
    };
    if env.game_depth == 0 {
        return Err(MachineError::MissingEnvironment("a game depth"));
    }
    let reply = match env.opponent.as_mut() {
        Some(opponent) => opponent(&history, n)?,
        None => return Err(MachineError::MissingEnvironment("an opponent")),
    };
    stack.pop();
    let xi = match stack.pop() {
        Some(xi) => xi,
        None => unreachable!("depth checked"),
    };
    let mut new_history = history;
    new_history.push((n, reply));
    if let Some(observer) = env.kappa_observer.as_mut() {
        observer(position, &new_history);
    }
    if position + 1 < env.game_depth {
        let next = LTerm::Instr(Instr::Kappa {
            position: position + 1,
            history: new_history,
        });
        stack.push(LTerm::app(storage_t(), next));
    } else {
        let mut values = Vec::with_capacity(2 * new_history.len());
        for (ni, pi) in &new_history {
            values.push(church(*ni));
            values.push(church(*pi));
        }
        stack.push(LTerm::Instr(Instr::PairList(values)));
    }
    stack.push(church(reply));
    Ok(StepOutcome::Next(Process::new(xi, stack), Rule::Kappa))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaltReason {
    /// Index of the watcher that matched.
    WatcherHit(usize),
    Stuck,
}

#[derive(Debug)]
pub enum MachineOutcome {
    Halted {
        process: Process,
        reason: HaltReason,
        steps: u64,
    },
    BudgetExceeded {
        last: Process,
        steps: u64,
    },
}

/// One line per machine step for the step-trace interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u64,
    pub head: String,
    pub stack_depth: usize,
    pub rule: Rule,
}

pub type Watcher<'a> = Box<dyn FnMut(&Process) -> bool + 'a>;

pub fn run(
    process: Process,
    budget: u64,
    watchers: &mut [Watcher],
    env: &mut InstructionEnv,
) -> Result<MachineOutcome, MachineError> {
    run_inner(process, budget, watchers, env, None)
}

pub fn run_traced(
    process: Process,
    budget: u64,
    watchers: &mut [Watcher],
    env: &mut InstructionEnv,
    trace: &mut Vec<StepRecord>,
) -> Result<MachineOutcome, MachineError> {
    run_inner(process, budget, watchers, env, Some(trace))
}

fn run_inner(
    mut process: Process,
    budget: u64,
    watchers: &mut [Watcher],
    env: &mut InstructionEnv,
    mut trace: Option<&mut Vec<StepRecord>>,
) -> Result<MachineOutcome, MachineError> {
    let mut steps = 0u64;
    loop {
        for (i, w) in watchers.iter_mut().enumerate() {
            if w(&process) {
                return Ok(MachineOutcome::Halted {
                    process,
                    reason: HaltReason::WatcherHit(i),
                    steps,
                });
            }
        }
        if steps >= budget {
            return Ok(MachineOutcome::BudgetExceeded {
                last: process,
                steps,
            });
        }
        match step(process, env)? {
            StepOutcome::Next(next, rule) => {
                steps += 1;
                if let Some(records) = trace.as_deref_mut() {
                    records.push(StepRecord {
                        step: steps,
                        head: head_summary(&next.head),
                        stack_depth: next.stack.depth(),
                        rule,
                    });
                }
                process = next;
            }
            StepOutcome::Stuck(last) => {
                return Ok(MachineOutcome::Halted {
                    process: last,
                    reason: HaltReason::Stuck,
                    steps,
                });
            }
        }
    }
}

fn head_summary(t: &LTerm) -> String {
    match t {
        LTerm::Var(x) => format!("var {x}"),
        LTerm::Lam(x, _) => format!("lam {x}"),
        LTerm::App(_, _) => "app".into(),
        LTerm::CC => "cc".into(),
        LTerm::Cont(_) => "cont".into(),
        LTerm::Instr(Instr::Zeta(k)) => format!("zeta {k}"),
        LTerm::Instr(Instr::Kappa { position, .. }) => format!("kappa {position}"),
        LTerm::Instr(Instr::PairList(_)) => "pairs".into(),
        LTerm::Instr(Instr::InertConst(name)) => format!("const {name}"),
    }
}

/// Reads a numeral back from a term by driving it with fresh inert constants.
///
/// Stage one rejects terms that grab only one argument (the identity is not
/// the numeral 1): `t ⋆ c₁.ρ` must stick at an abstraction. Stage two runs
/// `t ⋆ c₁.c₂.ρ` and counts how many times c₁ reaches the head, consuming one
/// stack item each time; reaching c₂ on the bare bottom ends the count.
pub fn readback(t: &LTerm, budget: u64) -> Option<u64> {
    let c1 = LTerm::inert("#succ");
    let c2 = LTerm::inert("#zero");

    let mut guard = Process::new(t.clone(), Stack::bottom_only("#probe"));
    guard.stack.push(c1.clone());
    let mut env = InstructionEnv::default();
    match run(guard, budget, &mut [], &mut env).ok()? {
        MachineOutcome::Halted {
            process,
            reason: HaltReason::Stuck,
            ..
        } => {
            if !matches!(process.head, LTerm::Lam(_, _)) {
                return None;
            }
        }
        _ => return None,
    }

    let mut process = Process::new(t.clone(), Stack::bottom_only("#probe"));
    process.stack.push(c2.clone());
    process.stack.push(c1.clone());
    let mut count = 0u64;
    let mut steps = 0u64;
    loop {
        if process.head == c1 {
            match process.stack.pop() {
                Some(next) => {
                    count += 1;
                    process.head = next;
                    continue;
                }
                None => return None,
            }
        }
        if process.head == c2 {
            return if process.stack.depth() == 0 {
                Some(count)
            } else {
                None
            };
        }
        if steps >= budget {
            return None;
        }
        match step(process, &mut env).ok()? {
            StepOutcome::Next(next, _) => {
                steps += 1;
                process = next;
            }
            StepOutcome::Stuck(_) => return None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kam::term::{succ_term, witness_t};

    fn bare(head: LTerm) -> Process {
        Process::new(head, Stack::bottom_only("rho"))
    }

    #[test]
    fn push_rule() {
        // (t)u ⋆ π ≻ t ⋆ u·π
        let p = bare(LTerm::app(LTerm::var("t"), LTerm::var("u")));
        match step(p, &mut InstructionEnv::default()).unwrap() {
            StepOutcome::Next(next, Rule::Push) => {
                assert_eq!(next.head, LTerm::var("t"));
                assert_eq!(next.stack.top(), Some(&LTerm::var("u")));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pop_rule() {
        // λx.t ⋆ u·π ≻ t[u/x] ⋆ π
        let mut p = bare(LTerm::lam("x", LTerm::var("x")));
        p.stack.push(LTerm::var("u"));
        match step(p, &mut InstructionEnv::default()).unwrap() {
            StepOutcome::Next(next, Rule::Pop) => {
                assert_eq!(next.head, LTerm::var("u"));
                assert_eq!(next.stack.depth(), 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn store_rule() {
        // cc ⋆ t·π ≻ t ⋆ k_π·π
        let mut p = bare(LTerm::CC);
        p.stack.push(LTerm::var("u"));
        p.stack.push(LTerm::var("t"));
        match step(p, &mut InstructionEnv::default()).unwrap() {
            StepOutcome::Next(next, Rule::Store) => {
                assert_eq!(next.head, LTerm::var("t"));
                match next.stack.top() {
                    Some(LTerm::Cont(saved)) => {
                        assert_eq!(saved.items, vec![LTerm::var("u")]);
                    }
                    other => panic!("expected a continuation on top, got {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn restore_rule() {
        // k_π ⋆ t·π' ≻ t ⋆ π
        let saved = Stack {
            items: vec![LTerm::var("a")],
            bottom: "rho".into(),
        };
        let mut p = bare(LTerm::Cont(Box::new(saved.clone())));
        p.stack.push(LTerm::var("t"));
        match step(p, &mut InstructionEnv::default()).unwrap() {
            StepOutcome::Next(next, Rule::Restore) => {
                assert_eq!(next.head, LTerm::var("t"));
                assert_eq!(next.stack, saved);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_applied_sticks_at_variable() {
        // (λx.x)y ⋆ ρ: push then pop, then a variable head is stuck.
        let p = bare(LTerm::app(
            LTerm::lam("x", LTerm::var("x")),
            LTerm::var("y"),
        ));
        let mut env = InstructionEnv::default();
        match run(p, 100, &mut [], &mut env).unwrap() {
            MachineOutcome::Halted {
                process,
                reason: HaltReason::Stuck,
                steps,
            } => {
                assert_eq!(steps, 2);
                assert_eq!(process.head, LTerm::var("y"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports() {
        let p = bare(LTerm::app(
            LTerm::lam("x", LTerm::var("x")),
            LTerm::var("y"),
        ));
        let mut env = InstructionEnv::default();
        match run(p, 1, &mut [], &mut env).unwrap() {
            MachineOutcome::BudgetExceeded { steps, .. } => assert_eq!(steps, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn watcher_halts_immediately() {
        let c = LTerm::inert("c");
        let p = bare(c.clone());
        let mut watchers: Vec<Watcher> = vec![Box::new(move |proc: &Process| proc.head == c)];
        let mut env = InstructionEnv::default();
        match run(p, 100, &mut watchers, &mut env).unwrap() {
            MachineOutcome::Halted {
                reason: HaltReason::WatcherHit(0),
                steps,
                ..
            } => {
                assert_eq!(steps, 0)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn readback_of_numerals() {
        assert_eq!(readback(&church(0), 1_000), Some(0));
        assert_eq!(readback(&church(3), 1_000), Some(3));
        assert_eq!(readback(&church(100), 100_000), Some(100));
        // The identity is not a numeral.
        assert_eq!(readback(&LTerm::lam("x", LTerm::var("x")), 1_000), None);
        // β-equivalent forms read back fine.
        let wrapped = LTerm::app(LTerm::lam("x", LTerm::var("x")), church(3));
        assert_eq!(readback(&wrapped, 1_000), Some(3));
        let s_form = LTerm::app(succ_term(), LTerm::app(succ_term(), church(1)));
        assert_eq!(readback(&s_form, 1_000), Some(3));
    }

    #[test]
    fn zeta_evaluates_strategy_applications() {
        // ζ ⋆ ξ.(λn.n)2̂.π ≻ ξ ⋆ 2̂.π
        let strategy = LTerm::lam("n", LTerm::var("n"));
        let application = LTerm::app(strategy, church(2));
        let mut p = bare(LTerm::Instr(Instr::Zeta(1)));
        p.stack.push(application);
        p.stack.push(LTerm::var("xi"));
        let mut env = InstructionEnv::default();
        match step(p, &mut env).unwrap() {
            StepOutcome::Next(next, Rule::Zeta) => {
                assert_eq!(next.head, LTerm::var("xi"));
                assert_eq!(as_numeral_syntactic(next.stack.top().unwrap()), Some(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn storage_normalizes_beta_equivalent_numerals() {
        // T·φ ⋆ ν.π and T·φ ⋆ 3̂.π reach the same φ-headed state with a stack
        // top that reads back to 3.
        let phi = LTerm::inert("phi");
        let run_with = |nu: LTerm| {
            let mut p = bare(LTerm::app(LTerm::app(storage_t(), phi.clone()), nu));
            p.stack.push(LTerm::inert("tail"));
            let phi = phi.clone();
            let mut watchers: Vec<Watcher> = vec![Box::new(move |proc: &Process| proc.head == phi)];
            let mut env = InstructionEnv::default();
            match run(p, 10_000, &mut watchers, &mut env).unwrap() {
                MachineOutcome::Halted {
                    process,
                    reason: HaltReason::WatcherHit(_),
                    ..
                } => process,
                other => panic!("storage run did not reach phi: {other:?}"),
            }
        };
        let direct = run_with(church(3));
        let wrapped = run_with(LTerm::app(LTerm::lam("x", LTerm::var("x")), church(3)));
        assert_eq!(direct, wrapped);
        assert_eq!(readback(direct.stack.top().unwrap(), 10_000), Some(3));
        assert_eq!(direct.stack.items[1], LTerm::inert("tail"));
    }

    #[test]
    fn lazy_head_reduction_reaches_the_same_state() {
        // ξ head-reduces to η t₁ t₂ with η not an application; for any stack,
        // ξ ⋆ π reaches η ⋆ t₁.t₂.π.
        let eta = LTerm::inert("eta");
        let t1 = LTerm::lam("a", LTerm::var("a"));
        let t2 = church(2);
        // ξ = (λf.(f t₁) t₂ … shaped so one pop yields η t₁ t₂.
        let xi = LTerm::app(
            LTerm::lam("f", LTerm::apps(LTerm::var("f"), [t1.clone(), t2.clone()])),
            eta.clone(),
        );
        for extra in [
            vec![],
            vec![LTerm::var("s1")],
            vec![LTerm::var("s1"), LTerm::var("s2")],
        ] {
            let mut stack = Stack::bottom_only("pi");
            for item in extra.iter().rev() {
                stack.push(item.clone());
            }
            let expected_stack = {
                let mut s = stack.clone();
                s.push(t2.clone());
                s.push(t1.clone());
                s
            };
            let p = Process::new(xi.clone(), stack);
            let eta_watch = eta.clone();
            let mut watchers: Vec<Watcher> =
                vec![Box::new(move |proc: &Process| proc.head == eta_watch)];
            let mut env = InstructionEnv::default();
            match run(p, 1_000, &mut watchers, &mut env).unwrap() {
                MachineOutcome::Halted {
                    process,
                    reason: HaltReason::WatcherHit(_),
                    ..
                } => {
                    assert_eq!(process.stack, expected_stack);
                }
                other => panic!("did not reach eta: {other:?}"),
            }
        }
    }

    #[test]
    fn witness_t_backtracks_on_bad_values() {
        // t ⋆ m̂.u.ρ ≻ u ⋆ m̂.ρ — the backtracking case of the Π₂ theorem.
        let mut p = bare(witness_t());
        p.stack.push(LTerm::var("u"));
        p.stack.push(church(5));
        let mut env = InstructionEnv::default();
        let mut process = p;
        for _ in 0..3 {
            match step(process, &mut env).unwrap() {
                StepOutcome::Next(next, _) => process = next,
                other => panic!("unexpected {other:?}"),
            }
        }
        assert_eq!(process.head, LTerm::var("u"));
        assert_eq!(as_numeral_syntactic(process.stack.top().unwrap()), Some(5));
    }

    #[test]
    fn determinism_audit_on_random_processes() {
        // No process matches two rule left-hand sides.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..10_000 {
            let head = random_term(&mut next, 3);
            let mut stack = Stack::bottom_only("rho");
            for _ in 0..(next() % 3) {
                stack.push(random_term(&mut next, 2));
            }
            let p = Process::new(head, stack);
            assert!(applicable_rules(&p).len() <= 1, "two rules match {p}");
        }
    }

    fn random_term(next: &mut impl FnMut() -> u64, depth: u32) -> LTerm {
        if depth == 0 {
            return match next() % 3 {
                0 => LTerm::var("x"),
                1 => church((next() % 4) as u64),
                _ => LTerm::inert("c"),
            };
        }
        match next() % 8 {
            0 => LTerm::var("y"),
            1 => LTerm::lam("x", random_term(next, depth - 1)),
            2 | 3 => LTerm::app(random_term(next, depth - 1), random_term(next, depth - 1)),
            4 => LTerm::CC,
            5 => LTerm::Instr(Instr::Zeta(1 + (next() % 2) as usize)),
            6 => LTerm::Instr(Instr::Kappa {
                position: 0,
                history: vec![],
            }),
            _ => LTerm::Instr(Instr::PairList(vec![church((next() % 3) as u64)])),
        }
    }
}
