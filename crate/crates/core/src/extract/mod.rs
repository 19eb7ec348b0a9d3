//! The witness-extraction theorems as executable procedures.
//!
//! A checked derivation term θ of a relativized prenex statement drives the
//! stack machine against an opponent; watcher predicates encode the
//! theorems' sets of observable final states, and every success is re-checked
//! against the host matrix. The recorded ∃loise/∀bélard moves form a game
//! transcript with its own verifier.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use crate::kam::{
    as_numeral_syntactic, church, readback, run, storage_t, witness_t, HaltReason, Instr,
    InstructionEnv, LTerm, MachineError, MachineOutcome, Process, Stack, Watcher,
};
use crate::registry::HostFn;
use crate::sol2::{relativize, FoTerm, Judgment, SOFormula};

/// Host matrix φ(x₁…xₖ, y₁…yₖ): 0 means satisfied.
pub type MatrixFn = Rc<dyn Fn(&[u64], &[u64]) -> u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Π₂ form: leading ∀.
    ForallFirst,
    /// Σ₂ / general prenex form: leading ∃.
    ExistsFirst,
}

#[derive(Clone)]
pub struct PrenexStatement {
    /// Registered name of the matrix predicate symbol.
    pub name: String,
    /// Alternation depth k ≥ 1.
    pub depth: usize,
    pub matrix: MatrixFn,
    pub polarity: Polarity,
}

impl fmt::Debug for PrenexStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrenexStatement")
            .field("name", &self.name)
            .field("depth", &self.depth)
            .field("polarity", &self.polarity)
            .finish()
    }
}

/// The ∀bélard side of the game.
pub enum Opponent<'a> {
    /// λ-terms t₁…tₖ representing recursive γᵢ; driven through ζ.
    TermStrategy(Vec<LTerm>),
    /// Host callbacks γᵢ(n₁…nᵢ); driven through κ.
    HostFunctions(Vec<HostFn>),
    /// A fixed list of answers, one per κ firing; replays recorded runs.
    Scripted(Vec<u64>),
    /// Prompted replies: (history, proposed n) ↦ answer; `None` aborts.
    Interactive(Box<dyn FnMut(&[(u64, u64)], u64) -> Option<u64> + 'a>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Exists,
    Forall,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Exists => write!(f, "exists"),
            Player::Forall => write!(f, "forall"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub player: Player,
    /// 1-based quantifier position.
    pub position: usize,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinalPosition {
    Pairs(Vec<(u64, u64)>),
    Pi2Witness(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub moves: Vec<Move>,
    pub final_position: FinalPosition,
}

impl GameTranscript {
    /// JSON rendering: `{moves:[{player,pos,value}], final:[[n,p],…], steps}`.
    pub fn to_json(&self, steps: u64) -> String {
        let moves = self
            .moves
            .iter()
            .map(|m| {
                format!(
                    "{{\"player\":\"{}\",\"pos\":{},\"value\":{}}}",
                    m.player, m.position, m.value
                )
            })
            .collect::<Vec<_>>()
            .join(",");
        let final_part = match &self.final_position {
            FinalPosition::Pairs(pairs) => pairs
                .iter()
                .map(|(n, p)| format!("[{n},{p}]"))
                .collect::<Vec<_>>()
                .join(","),
            FinalPosition::Pi2Witness(p) => format!("[{p}]"),
        };
        format!("{{\"moves\":[{moves}],\"final\":[{final_part}],\"steps\":{steps}}}")
    }
}

#[derive(Debug, Clone)]
pub struct ExtractionResult {
    /// The ∃loise values of the final position (the Π₂ witness, the Σ₂ n, or
    /// n₁…nₖ).
    pub witnesses: Vec<u64>,
    /// Final (nᵢ, pᵢ) pairs where the form has them.
    pub pairs: Vec<(u64, u64)>,
    pub transcript: GameTranscript,
    pub machine_steps: u64,
}

#[derive(Debug)]
pub enum ExtractError {
    TypeMismatch {
        expected: SOFormula,
        got: SOFormula,
    },
    OpenHypotheses,
    Machine(MachineError),
    BudgetExceeded {
        steps: u64,
    },
    /// The machine stopped in a state outside the theorem's observable set.
    Stuck {
        state: String,
    },
    MatrixFalse,
    DepthMismatch {
        left: usize,
        right: usize,
    },
    OpponentShape(String),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::TypeMismatch { expected, got } => {
                write!(f, "theta proves {got}, the extraction needs {expected}")
            }
            ExtractError::OpenHypotheses => write!(f, "theta has open hypotheses"),
            ExtractError::Machine(e) => write!(f, "{e}"),
            ExtractError::BudgetExceeded { steps } => {
                write!(f, "machine budget exceeded after {steps} steps")
            }
            ExtractError::Stuck { state } => write!(f, "machine stuck at {state}"),
            ExtractError::MatrixFalse => write!(f, "extracted values fail the matrix"),
            ExtractError::DepthMismatch { left, right } => {
                write!(f, "alternation depths differ: {left} vs {right}")
            }
            ExtractError::OpponentShape(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ExtractError {}

impl From<MachineError> for ExtractError {
    fn from(e: MachineError) -> Self {
        ExtractError::Machine(e)
    }
}

/// [∀x∃y(f(x,y)=0)]^int.
pub fn pi2_statement_formula(f_name: &str) -> SOFormula {
    let matrix = SOFormula::equals(
        FoTerm::FnApp(f_name.into(), vec![FoTerm::var("x"), FoTerm::var("y")]),
        FoTerm::Zero,
    );
    relativize(&SOFormula::forall_ind(
        "x",
        SOFormula::exists_ind("y", matrix),
    ))
}

/// [∃x₁∀y₁…∃xₖ∀yₖ(φ(x⃗,y⃗)=0)]^int.
pub fn prenex_statement_formula(name: &str, depth: usize) -> SOFormula {
    let xs: Vec<String> = (1..=depth).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=depth).map(|i| format!("y{i}")).collect();
    let args: Vec<FoTerm> = xs
        .iter()
        .chain(ys.iter())
        .map(|v| FoTerm::var(v.clone()))
        .collect();
    let mut formula = SOFormula::equals(FoTerm::FnApp(name.into(), args), FoTerm::Zero);
    for i in (0..depth).rev() {
        formula = SOFormula::forall_ind(ys[i].clone(), formula);
        formula = SOFormula::exists_ind(xs[i].clone(), formula);
    }
    relativize(&formula)
}

fn check_theta(theta: &Judgment, expected: &SOFormula) -> Result<(), ExtractError> {
    if !theta.hypotheses.is_empty() {
        return Err(ExtractError::OpenHypotheses);
    }
    if !theta.formula.alpha_eq(expected) {
        return Err(ExtractError::TypeMismatch {
            expected: expected.clone(),
            got: theta.formula.clone(),
        });
    }
    Ok(())
}

fn fresh_bottom(tag: &str) -> Stack {
    Stack::bottom_only(format!("pi0:{tag}"))
}

/// Π₂ extraction: θ ⋆ n̂.(T·t).π₀ runs until the catcher t heads a state whose
/// stack top reads back to a p with f(n,p) = 0. Catcher states failing the
/// matrix are not halts — the machine backtracks through them.
pub fn extract_pi2(
    theta: &Judgment,
    f_name: &str,
    f: &dyn Fn(u64, u64) -> u64,
    n: u64,
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    extract_pi2_with_input(theta, f_name, f, n, church(n), budget)
}

/// Like [`extract_pi2`] but with an arbitrary term in the numeral position —
/// the storage operator must make any β-equivalent of church(n) behave
/// identically.
pub fn extract_pi2_with_input(
    theta: &Judgment,
    f_name: &str,
    f: &dyn Fn(u64, u64) -> u64,
    n: u64,
    input: LTerm,
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    check_theta(theta, &pi2_statement_formula(f_name))?;
    let mut stack = fresh_bottom("pi2");
    stack.push(LTerm::app(storage_t(), witness_t()));
    stack.push(input);
    let process = Process::new(theta.term.clone(), stack);

    let catcher = witness_t();
    let found = Rc::new(RefCell::new(None::<u64>));
    let found_in_watcher = found.clone();
    let mut watchers: Vec<Watcher> = vec![Box::new(move |p: &Process| {
        if p.head != catcher {
            return false;
        }
        let top = match p.stack.top() {
            Some(t) => t,
            None => return false,
        };
        match readback(top, 50_000) {
            Some(m) if f(n, m) == 0 => {
                *found_in_watcher.borrow_mut() = Some(m);
                true
            }
            _ => false,
        }
    })];
    let mut env = InstructionEnv::default();
    match run(process, budget, &mut watchers, &mut env)? {
        MachineOutcome::Halted {
            reason: HaltReason::WatcherHit(_),
            steps,
            ..
        } => {
            let p = found.borrow().expect("watcher stored the witness");
            if f(n, p) != 0 {
                return Err(ExtractError::MatrixFalse);
            }
            Ok(ExtractionResult {
                witnesses: vec![p],
                pairs: vec![(n, p)],
                transcript: GameTranscript {
                    moves: Vec::new(),
                    final_position: FinalPosition::Pi2Witness(p),
                },
                machine_steps: steps,
            })
        }
        MachineOutcome::Halted {
            process,
            reason: HaltReason::Stuck,
            ..
        } => Err(ExtractError::Stuck {
            state: process.to_string(),
        }),
        MachineOutcome::BudgetExceeded { steps, .. } => Err(ExtractError::BudgetExceeded { steps }),
    }
}

/// F[f] = (T)λx.λy.(((ζ₁)y)((f)x))x — the Σ₂ harness.
fn sigma2_harness(f: LTerm) -> LTerm {
    let body = LTerm::app(
        LTerm::app(
            LTerm::app(LTerm::Instr(Instr::Zeta(1)), LTerm::var("y")),
            LTerm::app(f, LTerm::var("x")),
        ),
        LTerm::var("x"),
    );
    LTerm::app(storage_t(), LTerm::lam("x", LTerm::lam("y", body)))
}

/// Σ₂ extraction with a strategy term: runs λf.θ(F[f]) ⋆ t.π₀ and halts at a
/// numeral head n̂ with φ(n, γ(n)) = 0. The term's readback is checked against
/// γ on sampled inputs before the run and at every ζ firing.
pub fn extract_sigma2_strategy(
    theta: &Judgment,
    statement: &PrenexStatement,
    strategy: &LTerm,
    gamma: &HostFn,
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    if statement.depth != 1 || statement.polarity != Polarity::ExistsFirst {
        return Err(ExtractError::OpponentShape(
            "sigma2 extraction needs a depth-1 exists-first statement".into(),
        ));
    }
    check_theta(theta, &prenex_statement_formula(&statement.name, 1))?;

    // Representation spot-check on small inputs.
    for i in 0..3u64 {
        let probe = LTerm::app(strategy.clone(), church(i));
        match readback(&probe, 50_000) {
            Some(read) if read == gamma(&[i]) => {}
            Some(read) => {
                return Err(ExtractError::Machine(
                    MachineError::RepresentationViolation {
                        args: vec![i],
                        read,
                        expected: gamma(&[i]),
                    },
                ))
            }
            None => {
                return Err(ExtractError::OpponentShape(format!(
                    "strategy term does not read back on input {i}"
                )))
            }
        }
    }

    let program = LTerm::lam(
        "f",
        LTerm::app(theta.term.clone(), sigma2_harness(LTerm::var("f"))),
    );
    let mut stack = fresh_bottom("sigma2");
    stack.push(strategy.clone());
    let process = Process::new(program, stack);

    let moves = Rc::new(RefCell::new(Vec::<Move>::new()));
    let gamma_check = gamma.clone();
    let moves_obs = moves.clone();
    let mut env = InstructionEnv {
        zeta_observer: Some(Box::new(move |args: &[u64], p: u64| {
            let expected = gamma_check(args);
            if p != expected {
                return Err(MachineError::RepresentationViolation {
                    args: args.to_vec(),
                    read: p,
                    expected,
                });
            }
            let mut ms = moves_obs.borrow_mut();
            ms.push(Move {
                player: Player::Exists,
                position: args.len(),
                value: args[args.len() - 1],
            });
            ms.push(Move {
                player: Player::Forall,
                position: args.len(),
                value: p,
            });
            Ok(())
        })),
        ..InstructionEnv::default()
    };

    let matrix = statement.matrix.clone();
    let gamma_final = gamma.clone();
    let found = Rc::new(RefCell::new(None::<u64>));
    let found_in_watcher = found.clone();
    let mut watchers: Vec<Watcher> =
        vec![Box::new(move |p: &Process| {
            match as_numeral_syntactic(&p.head) {
                Some(value) if matrix(&[value], &[gamma_final(&[value])]) == 0 => {
                    *found_in_watcher.borrow_mut() = Some(value);
                    true
                }
                _ => false,
            }
        })];
    match run(process, budget, &mut watchers, &mut env)? {
        MachineOutcome::Halted {
            reason: HaltReason::WatcherHit(_),
            steps,
            ..
        } => {
            let value = found.borrow().expect("watcher stored the witness");
            let reply = gamma(&[value]);
            if (statement.matrix)(&[value], &[reply]) != 0 {
                return Err(ExtractError::MatrixFalse);
            }
            Ok(ExtractionResult {
                witnesses: vec![value],
                pairs: vec![(value, reply)],
                transcript: GameTranscript {
                    moves: moves.borrow().clone(),
                    final_position: FinalPosition::Pairs(vec![(value, reply)]),
                },
                machine_steps: steps,
            })
        }
        MachineOutcome::Halted {
            process,
            reason: HaltReason::Stuck,
            ..
        } => Err(ExtractError::Stuck {
            state: process.to_string(),
        }),
        MachineOutcome::BudgetExceeded { steps, .. } => Err(ExtractError::BudgetExceeded { steps }),
    }
}

/// H_k = [x₁,…,x_k];
/// H_j = (T)λx_{j+1}.λy_{j+1}.(((ζ_{j+1})y_{j+1})((f_{j+1})x₁…x_{j+1}))H_{j+1}.
fn prenex_harness(depth: usize) -> LTerm {
    let x = |i: usize| LTerm::var(format!("x{i}"));
    let mut h = LTerm::Instr(Instr::PairList((1..=depth).map(x).collect()));
    for j in (0..depth).rev() {
        let zeta = LTerm::Instr(Instr::Zeta(j + 1));
        let strategy_app = LTerm::apps(LTerm::var(format!("f{}", j + 1)), (1..=j + 1).map(x));
        let body = LTerm::app(
            LTerm::app(
                LTerm::app(zeta, LTerm::var(format!("y{}", j + 1))),
                strategy_app,
            ),
            h,
        );
        h = LTerm::app(
            storage_t(),
            LTerm::lam(
                format!("x{}", j + 1),
                LTerm::lam(format!("y{}", j + 1), body),
            ),
        );
    }
    h
}

/// General prenex extraction. Term strategies run the Fₖ/Hⱼ construction with
/// ζ probes; host, scripted, and interactive opponents run θ ⋆ (T·κ⁰).π₀ with
/// κ as the input instruction. Both halt on a pair list satisfying the
/// matrix.
pub fn extract_prenex(
    theta: &Judgment,
    statement: &PrenexStatement,
    opponent: Opponent<'_>,
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    if statement.polarity != Polarity::ExistsFirst {
        return Err(ExtractError::OpponentShape(
            "prenex extraction needs an ∃-first statement".into(),
        ));
    }
    let k = statement.depth;
    check_theta(theta, &prenex_statement_formula(&statement.name, k))?;
    match opponent {
        Opponent::TermStrategy(terms) => {
            if terms.len() != k {
                return Err(ExtractError::OpponentShape(format!(
                    "need {k} strategy terms, got {}",
                    terms.len()
                )));
            }
            extract_prenex_terms(theta, statement, &terms, budget)
        }
        Opponent::HostFunctions(fns) => {
            if fns.len() != k {
                return Err(ExtractError::OpponentShape(format!(
                    "need {k} opponent functions, got {}",
                    fns.len()
                )));
            }
            let callback = move |history: &[(u64, u64)], n: u64| -> Result<u64, MachineError> {
                let mut args: Vec<u64> = history.iter().map(|(ni, _)| *ni).collect();
                args.push(n);
                Ok(fns[history.len()](&args))
            };
            extract_prenex_kappa(theta, statement, Box::new(callback), budget)
        }
        Opponent::Scripted(answers) => {
            let remaining = RefCell::new(answers);
            let callback = move |_: &[(u64, u64)], _: u64| -> Result<u64, MachineError> {
                let mut rem = remaining.borrow_mut();
                if rem.is_empty() {
                    Err(MachineError::InteractiveAbort)
                } else {
                    Ok(rem.remove(0))
                }
            };
            extract_prenex_kappa(theta, statement, Box::new(callback), budget)
        }
        Opponent::Interactive(mut prompt) => {
            let callback = move |history: &[(u64, u64)], n: u64| -> Result<u64, MachineError> {
                prompt(history, n).ok_or(MachineError::InteractiveAbort)
            };
            extract_prenex_kappa(theta, statement, Box::new(callback), budget)
        }
    }
}

fn extract_prenex_terms(
    theta: &Judgment,
    statement: &PrenexStatement,
    terms: &[LTerm],
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    let k = statement.depth;
    let mut program = LTerm::app(theta.term.clone(), prenex_harness(k));
    for j in (1..=k).rev() {
        program = LTerm::lam(format!("f{j}"), program);
    }
    let mut stack = fresh_bottom("prenex");
    for t in terms.iter().rev() {
        stack.push(t.clone());
    }
    let process = Process::new(program, stack);

    let moves = Rc::new(RefCell::new(Vec::<Move>::new()));
    let moves_obs = moves.clone();
    let mut env = InstructionEnv {
        zeta_observer: Some(Box::new(move |args: &[u64], p: u64| {
            let mut ms = moves_obs.borrow_mut();
            ms.push(Move {
                player: Player::Exists,
                position: args.len(),
                value: args[args.len() - 1],
            });
            ms.push(Move {
                player: Player::Forall,
                position: args.len(),
                value: p,
            });
            Ok(())
        })),
        ..InstructionEnv::default()
    };

    // A pair-list head whose entries are numerals n₁…nₖ; the replies are
    // recomputed through the strategy terms and the matrix must accept.
    let matrix = statement.matrix.clone();
    let terms_for_watcher = terms.to_vec();
    let outcome_store = Rc::new(RefCell::new(None::<(Vec<u64>, Vec<u64>)>));
    let outcome_in_watcher = outcome_store.clone();
    let mut watchers: Vec<Watcher> = vec![Box::new(move |p: &Process| {
        let values = match &p.head {
            LTerm::Instr(Instr::PairList(values)) => values,
            _ => return false,
        };
        if values.len() != terms_for_watcher.len() {
            return false;
        }
        let mut ns = Vec::with_capacity(values.len());
        for v in values {
            match as_numeral_syntactic(v) {
                Some(n) => ns.push(n),
                None => return false,
            }
        }
        let mut ps = Vec::with_capacity(ns.len());
        for (i, t) in terms_for_watcher.iter().enumerate() {
            let probe = LTerm::apps(t.clone(), ns[..=i].iter().map(|n| church(*n)));
            match readback(&probe, 50_000) {
                Some(p) => ps.push(p),
                None => return false,
            }
        }
        if matrix(&ns, &ps) == 0 {
            *outcome_in_watcher.borrow_mut() = Some((ns, ps));
            true
        } else {
            false
        }
    })];
    match run(process, budget, &mut watchers, &mut env)? {
        MachineOutcome::Halted {
            reason: HaltReason::WatcherHit(_),
            steps,
            ..
        } => {
            let (ns, ps) = outcome_store
                .borrow()
                .clone()
                .expect("watcher stored values");
            finish_prenex(statement, ns, ps, moves.borrow().clone(), steps)
        }
        MachineOutcome::Halted {
            process,
            reason: HaltReason::Stuck,
            ..
        } => Err(ExtractError::Stuck {
            state: process.to_string(),
        }),
        MachineOutcome::BudgetExceeded { steps, .. } => Err(ExtractError::BudgetExceeded { steps }),
    }
}

type OpponentCallback<'a> = Box<dyn FnMut(&[(u64, u64)], u64) -> Result<u64, MachineError> + 'a>;

fn extract_prenex_kappa(
    theta: &Judgment,
    statement: &PrenexStatement,
    opponent: OpponentCallback,
    budget: u64,
) -> Result<ExtractionResult, ExtractError> {
    let k = statement.depth;
    let kappa0 = LTerm::Instr(Instr::Kappa {
        position: 0,
        history: vec![],
    });
    let mut stack = fresh_bottom("prenex-kappa");
    stack.push(LTerm::app(storage_t(), kappa0));
    let process = Process::new(theta.term.clone(), stack);

    let moves = Rc::new(RefCell::new(Vec::<Move>::new()));
    let moves_obs = moves.clone();
    let mut env = InstructionEnv {
        game_depth: k,
        opponent: Some(opponent),
        kappa_observer: Some(Box::new(move |_position: usize, history: &[(u64, u64)]| {
            let (n, p) = *history.last().expect("history includes the new pair");
            let mut ms = moves_obs.borrow_mut();
            ms.push(Move {
                player: Player::Exists,
                position: history.len(),
                value: n,
            });
            ms.push(Move {
                player: Player::Forall,
                position: history.len(),
                value: p,
            });
        })),
        ..InstructionEnv::default()
    };

    let matrix = statement.matrix.clone();
    let outcome_store = Rc::new(RefCell::new(None::<(Vec<u64>, Vec<u64>)>));
    let outcome_in_watcher = outcome_store.clone();
    let mut watchers: Vec<Watcher> = vec![Box::new(move |p: &Process| {
        let values = match &p.head {
            LTerm::Instr(Instr::PairList(values)) => values,
            _ => return false,
        };
        if values.len() != 2 * k {
            return false;
        }
        let mut flat = Vec::with_capacity(values.len());
        for v in values {
            match as_numeral_syntactic(v) {
                Some(n) => flat.push(n),
                None => return false,
            }
        }
        let ns: Vec<u64> = flat.iter().step_by(2).copied().collect();
        let ps: Vec<u64> = flat.iter().skip(1).step_by(2).copied().collect();
        if matrix(&ns, &ps) == 0 {
            *outcome_in_watcher.borrow_mut() = Some((ns, ps));
            true
        } else {
            false
        }
    })];
    match run(process, budget, &mut watchers, &mut env)? {
        MachineOutcome::Halted {
            reason: HaltReason::WatcherHit(_),
            steps,
            ..
        } => {
            let (ns, ps) = outcome_store
                .borrow()
                .clone()
                .expect("watcher stored values");
            finish_prenex(statement, ns, ps, moves.borrow().clone(), steps)
        }
        MachineOutcome::Halted {
            process,
            reason: HaltReason::Stuck,
            ..
        } => Err(ExtractError::Stuck {
            state: process.to_string(),
        }),
        MachineOutcome::BudgetExceeded { steps, .. } => Err(ExtractError::BudgetExceeded { steps }),
    }
}

fn finish_prenex(
    statement: &PrenexStatement,
    ns: Vec<u64>,
    ps: Vec<u64>,
    moves: Vec<Move>,
    steps: u64,
) -> Result<ExtractionResult, ExtractError> {
    // The theorems' conclusion, re-checked unconditionally.
    if (statement.matrix)(&ns, &ps) != 0 {
        return Err(ExtractError::MatrixFalse);
    }
    let pairs: Vec<(u64, u64)> = ns.iter().copied().zip(ps.iter().copied()).collect();
    Ok(ExtractionResult {
        witnesses: ns,
        pairs: pairs.clone(),
        transcript: GameTranscript {
            moves,
            final_position: FinalPosition::Pairs(pairs),
        },
        machine_steps: steps,
    })
}

/// Pads an ∃-first statement to a greater alternation depth with vacuous
/// quantifier pairs; the added variables are ignored by the matrix.
pub fn pad_to_depth(statement: &PrenexStatement, depth: usize) -> PrenexStatement {
    if depth <= statement.depth {
        return statement.clone();
    }
    let inner = statement.matrix.clone();
    let original = statement.depth;
    PrenexStatement {
        name: format!("{}~pad{depth}", statement.name),
        depth,
        matrix: Rc::new(move |xs: &[u64], ys: &[u64]| inner(&xs[..original], &ys[..original])),
        polarity: statement.polarity,
    }
}

/// The selector matrix ϑ for A ⇒ B: with one extra leading pair, ∃loise's
/// first move y₀ routes to ¬A's matrix (y₀ = 0) or to B's (y₀ ≠ 0):
///
/// ```text
/// ϑ(x₀…xₖ, y₀…yₖ) = 0  iff  y₀ = 0 and φ(x₀…xₖ, y₁…yₖ) = 0
///                        or y₀ ≠ 0 and ψ(x₀…xₖ, y₁…yₖ) = 0
/// ```
///
/// where φ is the matrix of the prenex form of ∼A and ψ is B's.
pub fn combine_implication(
    neg_a: &PrenexStatement,
    b: &PrenexStatement,
) -> Result<PrenexStatement, ExtractError> {
    if neg_a.depth != b.depth {
        return Err(ExtractError::DepthMismatch {
            left: neg_a.depth,
            right: b.depth,
        });
    }
    let phi = neg_a.matrix.clone();
    let psi = b.matrix.clone();
    let depth = neg_a.depth + 1;
    Ok(PrenexStatement {
        name: format!("{}=>{}", neg_a.name, b.name),
        depth,
        matrix: Rc::new(move |xs: &[u64], ys: &[u64]| {
            if ys[0] == 0 {
                phi(&xs[..xs.len()], &ys[1..])
            } else {
                psi(&xs[..xs.len()], &ys[1..])
            }
        }),
        polarity: Polarity::ExistsFirst,
    })
}

/// Report of driving a closed term against the two-constant probe: a realizer
/// of ⊥ would have to reach both distinct constant states from the same
/// start, which determinism forbids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub reaches_first: bool,
    pub reaches_second: bool,
    pub first_budget_exceeded: bool,
    pub second_budget_exceeded: bool,
}

impl ProbeReport {
    pub fn contradiction(&self) -> bool {
        self.reaches_first && self.reaches_second
    }
}

pub const PROBE_FIRST: &str = "c";
pub const PROBE_SECOND: &str = "c'";

pub fn double_bottom_probe(v: &LTerm, budget: u64) -> ProbeReport {
    let probe = |constant: &str| -> (bool, bool) {
        let target = LTerm::inert(constant);
        let process = Process::new(v.clone(), Stack::bottom_only("rho"));
        let mut watchers: Vec<Watcher> = vec![Box::new(move |p: &Process| {
            p.head == target && p.stack.depth() == 0
        })];
        let mut env = InstructionEnv::default();
        match run(process, budget, &mut watchers, &mut env) {
            Ok(MachineOutcome::Halted {
                reason: HaltReason::WatcherHit(_),
                ..
            }) => (true, false),
            Ok(MachineOutcome::Halted { .. }) => (false, false),
            Ok(MachineOutcome::BudgetExceeded { .. }) => (false, true),
            Err(_) => (false, false),
        }
    };
    let (reaches_first, first_budget_exceeded) = probe(PROBE_FIRST);
    let (reaches_second, second_budget_exceeded) = probe(PROBE_SECOND);
    ProbeReport {
        reaches_first,
        reaches_second,
        first_budget_exceeded,
        second_budget_exceeded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub move_index: usize,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "transcript move {}: {}", self.move_index, self.reason)
    }
}

impl std::error::Error for Violation {}

/// Checks move alternation, restart legality (∃loise resumes only from
/// positions whose depth has been reached), and the final matrix.
pub fn verify_transcript(
    transcript: &GameTranscript,
    statement: &PrenexStatement,
) -> Result<(), Violation> {
    let mut reached_depth = 0usize;
    let mut index = 0usize;
    let moves = &transcript.moves;
    while index < moves.len() {
        let exists = &moves[index];
        if exists.player != Player::Exists {
            return Err(Violation {
                move_index: index,
                reason: "expected an exists move".into(),
            });
        }
        if exists.position == 0 || exists.position > statement.depth {
            return Err(Violation {
                move_index: index,
                reason: format!("position {} out of range", exists.position),
            });
        }
        if exists.position > reached_depth + 1 {
            return Err(Violation {
                move_index: index,
                reason: format!(
                    "restart from position {} which was never reached",
                    exists.position - 1
                ),
            });
        }
        let forall = moves.get(index + 1).ok_or(Violation {
            move_index: index,
            reason: "exists move without a reply".into(),
        })?;
        if forall.player != Player::Forall || forall.position != exists.position {
            return Err(Violation {
                move_index: index + 1,
                reason: "reply must answer the same position".into(),
            });
        }
        reached_depth = reached_depth.max(exists.position);
        index += 2;
    }
    match &transcript.final_position {
        FinalPosition::Pairs(pairs) => {
            if pairs.len() != statement.depth {
                return Err(Violation {
                    move_index: moves.len(),
                    reason: format!(
                        "final position has {} pairs, statement depth is {}",
                        pairs.len(),
                        statement.depth
                    ),
                });
            }
            for (i, (n, p)) in pairs.iter().enumerate() {
                let played = moves.chunks(2).any(|chunk| {
                    chunk.len() == 2
                        && chunk[0].position == i + 1
                        && chunk[0].value == *n
                        && chunk[1].value == *p
                });
                if !moves.is_empty() && !played {
                    return Err(Violation {
                        move_index: moves.len(),
                        reason: format!(
                            "final pair ({n},{p}) at position {} was never played",
                            i + 1
                        ),
                    });
                }
            }
            let ns: Vec<u64> = pairs.iter().map(|(n, _)| *n).collect();
            let ps: Vec<u64> = pairs.iter().map(|(_, p)| *p).collect();
            if (statement.matrix)(&ns, &ps) != 0 {
                return Err(Violation {
                    move_index: moves.len(),
                    reason: "final position fails the matrix".into(),
                });
            }
        }
        FinalPosition::Pi2Witness(_) => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests;
