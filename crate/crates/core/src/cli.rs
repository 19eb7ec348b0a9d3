//! Batch front end and the interactive ∀bélard REPL.
//!
//! Exit codes: 0 on success, 1 on a domain error (printed in a structured
//! one-line form), 2 on a usage error. Formats are documented in
//! `docs/formats.md`.

use std::io::{BufRead, Write};
use std::rc::Rc;

use num_bigint::BigUint;

use crate::bounds::{self, BoundParams, Budget, CParam, OracleSet};
use crate::epsilon::{check_proof, parse_proof, proof_constants, UserAxioms};
use crate::extract::{
    extract_pi2, extract_prenex, extract_sigma2_strategy, ExtractionResult, Opponent, Polarity,
    PrenexStatement,
};
use crate::kam::{self, parse_lterm, InstructionEnv, LTerm, Process, Stack};
use crate::ordinals::{self, CodedOrdinal, OrdinalM};
use crate::registry::{FunctionRegistry, HostFn};
use crate::sexpr::{self, Sexpr};
use crate::sol2::{check_derivation, parse_derivation, RealizerRegistry, SOFormula};
use crate::subst::{solve, SolveError};

const USAGE: &str = "usage: proofbench <command> [arguments]

commands:
  check <proof.sexp>
  solve <proof.sexp> [--budget N] [--trace out.jsonl]
  bound <name> <args…> [--budget N]
  ordinal encode|decode|cmp --level m <arguments>
  kam run <term.sexp> [--stack term]… [--budget N] [--trace]
  type <derivation.drv>
  extract pi2    --theta f.drv --matrix <name> --n N [--budget N] [--json]
  extract sigma2 --theta f.drv --matrix <name>
                 (--strategy t.sexp | --opponent-script f | --interactive)
  extract prenex --theta f.drv --matrix <name>
                 (--opponent-script f | --interactive) [--json]
  play           --theta f.drv --matrix <name>";

pub fn run(args: &[String], input: &mut dyn BufRead, out: &mut dyn Write) -> i32 {
    match dispatch(args, input, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(out, "{msg}");
            let _ = writeln!(out, "{USAGE}");
            2
        }
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl std::fmt::Display) -> CliError {
    CliError::Domain(msg.to_string())
}

struct Flags {
    positional: Vec<String>,
    budget: u64,
    trace: Option<String>,
    trace_flag: bool,
    json: bool,
    level: Option<u32>,
    stack: Vec<String>,
    theta: Option<String>,
    matrix: Option<String>,
    strategy: Option<String>,
    opponent_script: Option<String>,
    interactive: bool,
    n: Option<u64>,
}

fn parse_flags(args: &[String]) -> Result<Flags, CliError> {
    let mut flags = Flags {
        positional: Vec::new(),
        budget: 1_000_000,
        trace: None,
        trace_flag: false,
        json: false,
        level: None,
        stack: Vec::new(),
        theta: None,
        matrix: None,
        strategy: None,
        opponent_script: None,
        interactive: false,
        n: None,
    };
    let mut i = 0;
    let value = |i: &mut usize, name: &str| -> Result<String, CliError> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| usage(format!("{name} needs a value")))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--budget" => {
                flags.budget = value(&mut i, "--budget")?
                    .parse()
                    .map_err(|_| usage("--budget needs a number"))?;
            }
            "--trace" => {
                // `--trace out.jsonl` for solve; bare `--trace` for kam run.
                if args.get(i + 1).map(|a| a.starts_with("--")).unwrap_or(true) {
                    flags.trace_flag = true;
                } else {
                    flags.trace = Some(value(&mut i, "--trace")?);
                }
            }
            "--json" => flags.json = true,
            "--level" => {
                flags.level = Some(
                    value(&mut i, "--level")?
                        .parse()
                        .map_err(|_| usage("--level needs a number"))?,
                );
            }
            "--stack" => flags.stack.push(value(&mut i, "--stack")?),
            "--theta" => flags.theta = Some(value(&mut i, "--theta")?),
            "--matrix" => flags.matrix = Some(value(&mut i, "--matrix")?),
            "--strategy" => flags.strategy = Some(value(&mut i, "--strategy")?),
            "--opponent-script" => {
                flags.opponent_script = Some(value(&mut i, "--opponent-script")?)
            }
            "--interactive" => flags.interactive = true,
            "--n" => {
                flags.n = Some(
                    value(&mut i, "--n")?
                        .parse()
                        .map_err(|_| usage("--n needs a number"))?,
                );
            }
            other if other.starts_with("--") => return Err(usage(format!("unknown flag {other}"))),
            other => flags.positional.push(other.to_string()),
        }
        i += 1;
    }
    Ok(flags)
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| domain(format!("cannot read {path}: {e}")))
}

fn dispatch(
    args: &[String],
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let command = args.first().ok_or_else(|| usage("missing command"))?;
    let rest = &args[1..];
    match command.as_str() {
        "check" => cmd_check(rest, out),
        "solve" => cmd_solve(rest, out),
        "bound" => cmd_bound(rest, out),
        "ordinal" => cmd_ordinal(rest, out),
        "kam" => cmd_kam(rest, out),
        "type" => cmd_type(rest, out),
        "extract" => cmd_extract(rest, input, out),
        "play" => {
            let mut with_interactive = vec!["prenex".to_string()];
            with_interactive.extend_from_slice(rest);
            with_interactive.push("--interactive".into());
            cmd_extract(&with_interactive, input, out)
        }
        other => Err(usage(format!("unknown command `{other}`"))),
    }
}

fn cmd_check(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    let path = flags
        .positional
        .first()
        .ok_or_else(|| usage("check needs a proof file"))?;
    let proof = parse_proof(&read_file(path)?).map_err(|e| domain(e))?;
    match check_proof(&proof, &FunctionRegistry::new(), &UserAxioms::new()) {
        Ok(()) => {
            let constants = proof_constants(&proof);
            let _ = writeln!(
                out,
                "ok: {} steps, m={}, e={}, g={}",
                proof.len(),
                constants.m,
                constants.e,
                constants.g
            );
            Ok(0)
        }
        Err(errors) => {
            for e in &errors {
                let _ = writeln!(out, "error: {e}");
            }
            Ok(1)
        }
    }
}

fn cmd_solve(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    let path = flags
        .positional
        .first()
        .ok_or_else(|| usage("solve needs a proof file"))?;
    let proof = parse_proof(&read_file(path)?).map_err(|e| domain(e))?;
    let registry = FunctionRegistry::new();
    check_proof(&proof, &registry, &UserAxioms::new())
        .map_err(|es| domain(format!("proof does not check: {}", es[0])))?;
    match solve(&proof, &registry, flags.budget) {
        Ok(outcome) => {
            let _ = writeln!(
                out,
                "solved in {} substitutions",
                outcome.final_state.generation()
            );
            for (term, value) in &outcome.witnesses {
                let _ = writeln!(out, "witness {term} -> {value}");
            }
            if let Some(trace_path) = &flags.trace {
                std::fs::write(trace_path, outcome.trace.to_jsonl())
                    .map_err(|e| domain(format!("cannot write {trace_path}: {e}")))?;
                let _ = writeln!(out, "trace written to {trace_path}");
            }
            Ok(0)
        }
        Err(SolveError::Budget { trace }) => Err(domain(format!(
            "budget exceeded after {} substitutions",
            trace.rows.len()
        ))),
        Err(e) => Err(domain(e)),
    }
}

fn parse_big(s: &str) -> Result<BigUint, CliError> {
    s.parse()
        .map_err(|_| usage(format!("`{s}` is not a natural number")))
}

fn cmd_bound(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    let name = flags
        .positional
        .first()
        .ok_or_else(|| usage("bound needs a component name"))?;
    let rest = &flags.positional[1..];
    let mut budget = Budget::new(flags.budget);
    let need = |n: usize| -> Result<(), CliError> {
        if rest.len() == n {
            Ok(())
        } else {
            Err(usage(format!("bound {name} takes {n} arguments")))
        }
    };
    let small = |s: &str| -> Result<u64, CliError> {
        s.parse()
            .map_err(|_| usage(format!("`{s}` is not a natural number")))
    };
    let level = |s: &str| -> Result<u32, CliError> {
        s.parse().map_err(|_| usage(format!("`{s}` is not a level")))
    };
    let result = match name.as_str() {
        "phi" => {
            need(2)?;
            bounds::phi(small(&rest[0])?, &parse_big(&rest[1])?, &mut budget)
        }
        "omega" => {
            need(2)?;
            bounds::omega_fn(small(&rest[0])?, &parse_big(&rest[1])?, &mut budget)
        }
        "psi" => {
            need(3)?;
            bounds::psi(
                small(&rest[0])?,
                &parse_big(&rest[1])?,
                small(&rest[2])?,
                &mut budget,
            )
        }
        "rho" => {
            need(2)?;
            bounds::rho(level(&rest[0])?, small(&rest[1])?, &mut budget)
        }
        "lambda" => {
            need(2)?;
            bounds::lambda_fn(&parse_big(&rest[0])?, level(&rest[1])?)
        }
        "kappa" => {
            need(4)?;
            let c = CParam::Const(parse_big(&rest[0])?);
            bounds::kappa_fn(
                &c,
                level(&rest[1])?,
                &parse_big(&rest[2])?,
                &parse_big(&rest[3])?,
                &mut budget,
            )
        }
        "tau" => {
            need(4)?;
            let c = CParam::Const(parse_big(&rest[0])?);
            bounds::tau_fn(
                &c,
                level(&rest[1])?,
                &parse_big(&rest[2])?,
                &parse_big(&rest[3])?,
                &mut budget,
            )
        }
        "born" => {
            need(3)?;
            bounds::born(
                BoundParams {
                    m: small(&rest[0])?,
                    e: small(&rest[1])?,
                    g: level(&rest[2])?,
                },
                &mut budget,
            )
        }
        "phi-prime" => {
            need(2)?;
            let oracles = OracleSet::new().with_base_arithmetic();
            bounds::phi_prime(
                &oracles,
                &parse_big(&rest[0])?,
                small(&rest[1])?,
                &mut budget,
            )
        }
        "omega-prime" => {
            need(2)?;
            let oracles = OracleSet::new().with_base_arithmetic();
            bounds::omega_prime(
                &oracles,
                small(&rest[0])?,
                &parse_big(&rest[1])?,
                &mut budget,
            )
        }
        "psi-prime" => {
            need(3)?;
            let oracles = OracleSet::new().with_base_arithmetic();
            bounds::psi_prime(
                &oracles,
                small(&rest[0])?,
                &parse_big(&rest[1])?,
                small(&rest[2])?,
                &mut budget,
            )
        }
        "born-prime" => {
            need(3)?;
            let oracles = OracleSet::new().with_base_arithmetic();
            bounds::born_prime(
                &oracles,
                BoundParams {
                    m: small(&rest[0])?,
                    e: small(&rest[1])?,
                    g: level(&rest[2])?,
                },
                &mut budget,
            )
        }
        other => return Err(usage(format!("unknown bound component `{other}`"))),
    };
    match result {
        Ok(value) => {
            let _ = writeln!(out, "{value}");
            Ok(0)
        }
        Err(e) => Err(domain(e)),
    }
}

fn parse_ordinal(e: &Sexpr, level: u32) -> Result<OrdinalM, CliError> {
    let items = e
        .list()
        .ok_or_else(|| usage("expected (w a b) or (sum …)"))?;
    let head = items
        .first()
        .and_then(Sexpr::atom)
        .ok_or_else(|| usage("expected a head"))?;
    match (head, level) {
        ("w", 1) => match &items[1..] {
            [a, b] => {
                let a = a.atom().and_then(|s| s.parse().ok());
                let b = b.atom().and_then(|s| s.parse().ok());
                match (a, b) {
                    (Some(a), Some(b)) => Ok(OrdinalM::Omega1 { a, b }),
                    _ => Err(usage("(w a b) takes two naturals")),
                }
            }
            _ => Err(usage("(w a b) takes two naturals")),
        },
        ("sum", l) if l >= 2 => {
            let exponents = items[1..]
                .iter()
                .map(|x| parse_ordinal(x, level - 1))
                .collect::<Result<Vec<_>, _>>()?;
            OrdinalM::sum(level, exponents).map_err(|e| domain(e))
        }
        _ => Err(usage(format!("head `{head}` does not match level {level}"))),
    }
}

fn cmd_ordinal(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    let action = flags
        .positional
        .first()
        .ok_or_else(|| usage("ordinal needs an action"))?;
    let level = flags
        .level
        .ok_or_else(|| usage("ordinal needs --level m"))?;
    if level == 0 {
        return Err(usage("levels start at 1"));
    }
    match action.as_str() {
        "encode" => {
            let src = flags
                .positional
                .get(1)
                .ok_or_else(|| usage("encode needs an ordinal expression"))?;
            let parsed = sexpr::parse_one(src).map_err(|e| domain(e))?;
            let ordinal = parse_ordinal(&parsed, level)?;
            let coded = ordinals::encode(&ordinal).map_err(|e| domain(e))?;
            let _ = writeln!(out, "{}", coded.code);
            Ok(0)
        }
        "decode" => {
            let code = flags
                .positional
                .get(1)
                .ok_or_else(|| usage("decode needs a code"))?;
            let coded = CodedOrdinal {
                level,
                code: parse_big(code)?,
            };
            let ordinal = ordinals::decode(&coded).map_err(|e| domain(e))?;
            let _ = writeln!(out, "{ordinal}");
            Ok(0)
        }
        "cmp" => {
            let a = flags
                .positional
                .get(1)
                .ok_or_else(|| usage("cmp needs two codes"))?;
            let b = flags
                .positional
                .get(2)
                .ok_or_else(|| usage("cmp needs two codes"))?;
            let ord = ordinals::cmp_codes(&parse_big(a)?, &parse_big(b)?, level)
                .map_err(|e| domain(e))?;
            let _ = writeln!(
                out,
                "{}",
                match ord {
                    std::cmp::Ordering::Less => "LT",
                    std::cmp::Ordering::Equal => "EQ",
                    std::cmp::Ordering::Greater => "GT",
                }
            );
            Ok(0)
        }
        other => Err(usage(format!("unknown ordinal action `{other}`"))),
    }
}

fn cmd_kam(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    match flags.positional.first().map(String::as_str) {
        Some("run") => {}
        _ => return Err(usage("kam only supports `run`")),
    }
    let path = flags
        .positional
        .get(1)
        .ok_or_else(|| usage("kam run needs a term file"))?;
    let term = parse_lterm(&read_file(path)?).map_err(|e| domain(e))?;
    let mut stack = Stack::bottom_only("pi0");
    for item in flags.stack.iter().rev() {
        stack.push(parse_lterm(item).map_err(|e| domain(e))?);
    }
    let process = Process::new(term, stack);
    let mut env = InstructionEnv::default();
    let mut trace = Vec::new();
    let outcome = if flags.trace_flag {
        kam::run_traced(process, flags.budget, &mut [], &mut env, &mut trace)
    } else {
        kam::run(process, flags.budget, &mut [], &mut env)
    }
    .map_err(|e| domain(e))?;
    for record in &trace {
        let _ = writeln!(
            out,
            "{{\"step\":{},\"head\":\"{}\",\"stackDepth\":{},\"rule\":\"{}\"}}",
            record.step, record.head, record.stack_depth, record.rule
        );
    }
    match outcome {
        kam::MachineOutcome::Halted {
            process,
            reason,
            steps,
        } => {
            let reason = match reason {
                kam::HaltReason::Stuck => "stuck",
                kam::HaltReason::WatcherHit(_) => "watcher",
            };
            let _ = writeln!(out, "halted ({reason}) after {steps} steps: {process}");
            Ok(0)
        }
        kam::MachineOutcome::BudgetExceeded { steps, .. } => {
            Err(domain(format!("budget exceeded after {steps} steps")))
        }
    }
}

fn demo_realizers() -> RealizerRegistry {
    use crate::sol2::FoTerm;
    let mut registry = RealizerRegistry::with_builtins();
    let id = LTerm::lam("z", LTerm::var("z"));
    registry
        .register(
            "f_eq_refl",
            SOFormula::forall_ind(
                "x",
                SOFormula::equals(
                    FoTerm::FnApp("f".into(), vec![FoTerm::var("x"), FoTerm::var("x")]),
                    FoTerm::Zero,
                ),
            ),
            id.clone(),
            "diagonal matrix equation",
        )
        .expect("fresh id");
    registry
        .register(
            "phi0_zero",
            SOFormula::forall_ind(
                "y1",
                SOFormula::imp(
                    SOFormula::int(FoTerm::var("y1")),
                    SOFormula::equals(
                        FoTerm::FnApp("phi0".into(), vec![FoTerm::Zero, FoTerm::var("y1")]),
                        FoTerm::Zero,
                    ),
                ),
            ),
            LTerm::lam("i", id.clone()),
            "phi0(0,y) = 0",
        )
        .expect("fresh id");
    registry
        .register(
            "phi2_diag",
            SOFormula::forall_ind(
                "a",
                SOFormula::forall_ind(
                    "y2",
                    SOFormula::imp(
                        SOFormula::int(FoTerm::var("y2")),
                        SOFormula::equals(
                            FoTerm::FnApp(
                                "phi2".into(),
                                vec![
                                    FoTerm::Zero,
                                    FoTerm::var("a"),
                                    FoTerm::var("a"),
                                    FoTerm::var("y2"),
                                ],
                            ),
                            FoTerm::Zero,
                        ),
                    ),
                ),
            ),
            LTerm::lam("i", id),
            "phi2(0,a,a,y2) = 0",
        )
        .expect("fresh id");
    registry
}

fn builtin_matrix(name: &str) -> Option<PrenexStatement> {
    match name {
        // f(x,y) = 0 iff x = y — the Π₂ demo.
        "eq" => Some(PrenexStatement {
            name: "f".into(),
            depth: 1,
            matrix: Rc::new(|xs: &[u64], ys: &[u64]| u64::from(xs[0] != ys[0])),
            polarity: Polarity::ForallFirst,
        }),
        // φ(x,y) = x — the Σ₂ demo ∃x∀y(x = 0).
        "x1-zero" => Some(PrenexStatement {
            name: "phi0".into(),
            depth: 1,
            matrix: Rc::new(|xs: &[u64], _: &[u64]| xs[0]),
            polarity: Polarity::ExistsFirst,
        }),
        // φ(x₁,x₂,y₁,y₂) = 0 iff x₁ = 0 ∧ x₂ = y₁ — the depth-2 demo.
        "diag2" => Some(PrenexStatement {
            name: "phi2".into(),
            depth: 2,
            matrix: Rc::new(|xs: &[u64], ys: &[u64]| u64::from(!(xs[0] == 0 && xs[1] == ys[0]))),
            polarity: Polarity::ExistsFirst,
        }),
        _ => None,
    }
}

fn cmd_type(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = parse_flags(args)?;
    let path = flags
        .positional
        .first()
        .ok_or_else(|| usage("type needs a derivation file"))?;
    let derivation = parse_derivation(&read_file(path)?).map_err(|e| domain(e))?;
    let judgment = check_derivation(&derivation, &demo_realizers()).map_err(|e| domain(e))?;
    let _ = writeln!(out, "{judgment}");
    Ok(0)
}

fn print_extraction(
    result: &ExtractionResult,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if json {
        let _ = writeln!(out, "{}", result.transcript.to_json(result.machine_steps));
    } else {
        let witnesses = result
            .witnesses
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "{witnesses}");
        if !result.pairs.is_empty() {
            let pairs = result
                .pairs
                .iter()
                .map(|(n, p)| format!("({n},{p})"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "pairs: {pairs}");
        }
    }
    Ok(0)
}

fn scripted_answers(path: &str) -> Result<Vec<u64>, CliError> {
    read_file(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with(';'))
        .map(|l| {
            l.parse()
                .map_err(|_| domain(format!("bad opponent answer `{l}`")))
        })
        .collect()
}

fn cmd_extract(
    args: &[String],
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let form = args
        .first()
        .ok_or_else(|| usage("extract needs pi2|sigma2|prenex"))?
        .clone();
    let flags = parse_flags(&args[1..])?;
    let theta_path = flags
        .theta
        .as_ref()
        .ok_or_else(|| usage("extract needs --theta"))?;
    let matrix_name = flags
        .matrix
        .as_ref()
        .ok_or_else(|| usage("extract needs --matrix"))?;
    let statement = builtin_matrix(matrix_name)
        .ok_or_else(|| domain(format!("unknown matrix `{matrix_name}`")))?;
    let derivation = parse_derivation(&read_file(theta_path)?).map_err(|e| domain(e))?;
    let theta = check_derivation(&derivation, &demo_realizers()).map_err(|e| domain(e))?;

    match form.as_str() {
        "pi2" => {
            let n = flags.n.ok_or_else(|| usage("extract pi2 needs --n"))?;
            let matrix = statement.matrix.clone();
            let f = move |x: u64, y: u64| matrix(&[x], &[y]);
            let result =
                extract_pi2(&theta, &statement.name, &f, n, flags.budget).map_err(|e| domain(e))?;
            print_extraction(&result, flags.json, out)
        }
        "sigma2" => {
            if let Some(strategy_path) = &flags.strategy {
                let strategy = parse_lterm(&read_file(strategy_path)?).map_err(|e| domain(e))?;
                // The host mirror of the strategy: its own readback.
                let mirror = strategy.clone();
                let gamma: HostFn = Rc::new(move |args: &[u64]| {
                    let probe = LTerm::apps(mirror.clone(), args.iter().map(|a| kam::church(*a)));
                    kam::readback(&probe, 100_000).unwrap_or(0)
                });
                let result =
                    extract_sigma2_strategy(&theta, &statement, &strategy, &gamma, flags.budget)
                        .map_err(|e| domain(e))?;
                print_extraction(&result, flags.json, out)
            } else {
                let opponent = opponent_from_flags(&flags, input, out)?;
                let result = extract_prenex(&theta, &statement, opponent, flags.budget)
                    .map_err(|e| domain(e))?;
                print_extraction(&result, flags.json, out)
            }
        }
        "prenex" => {
            let opponent = opponent_from_flags(&flags, input, out)?;
            let result = extract_prenex(&theta, &statement, opponent, flags.budget)
                .map_err(|e| domain(e))?;
            print_extraction(&result, flags.json, out)
        }
        other => Err(usage(format!("unknown extract form `{other}`"))),
    }
}

fn opponent_from_flags<'a>(
    flags: &Flags,
    input: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
) -> Result<Opponent<'a>, CliError> {
    if let Some(script) = &flags.opponent_script {
        return Ok(Opponent::Scripted(scripted_answers(script)?));
    }
    if flags.interactive {
        // One prompt per κ firing: print the reached position and the new
        // proposal, read ∀bélard's reply from the input stream.
        let out = std::cell::RefCell::new(out);
        let input = std::cell::RefCell::new(input);
        return Ok(Opponent::Interactive(Box::new(move |history, n| {
            {
                let mut o = out.borrow_mut();
                let played = history
                    .iter()
                    .map(|(a, b)| format!("{a},{b}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(o, "position: [{played}] exists proposes {n}");
                let _ = write!(o, "forall answers> ");
                let _ = o.flush();
            }
            let mut line = String::new();
            match input.borrow_mut().read_line(&mut line) {
                Ok(0) => None,
                Ok(_) => line.trim().parse().ok(),
                Err(_) => None,
            }
        })));
    }
    Err(usage(
        "extract needs --opponent-script, --interactive, or --strategy",
    ))
}
