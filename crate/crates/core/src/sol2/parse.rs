//! S-expression front end for second-order formulas and derivation scripts.
//!
//! Formula heads: `pred named imp forall forall2 exists exists2 and or not
//! bot = int`; terms use `0`, numerals, `s`/`succ`, `+`/`add`, `*`/`mul`,
//! `fn`, and variable atoms. Sugar expands at parse time; the core stores
//! only →/∀ formulas. Derivation steps are line-oriented
//! `(step <rule> <arguments…>)` forms, referenced by 0-based index.

use crate::sexpr::{self, Sexpr};

use super::derivation::{DStep, Derivation};
use super::formula::{FoTerm, Pred, SOFormula};

pub fn parse_fo_term(src: &str) -> Result<FoTerm, String> {
    fo_term_from_sexpr(&sexpr::parse_one(src).map_err(|e| e.to_string())?)
}

pub fn parse_so_formula(src: &str) -> Result<SOFormula, String> {
    so_formula_from_sexpr(&sexpr::parse_one(src).map_err(|e| e.to_string())?)
}

pub fn parse_derivation(src: &str) -> Result<Derivation, String> {
    let steps = sexpr::parse_many(src)
        .map_err(|e| e.to_string())?
        .iter()
        .map(step_from_sexpr)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation { steps })
}

fn is_numeral(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn fo_term_from_sexpr(e: &Sexpr) -> Result<FoTerm, String> {
    match e {
        Sexpr::Atom(a) if is_numeral(a) => {
            let n: u64 = a
                .parse()
                .map_err(|_| format!("numeral `{a}` out of range"))?;
            Ok(FoTerm::numeral(n))
        }
        Sexpr::Atom(a) => Ok(FoTerm::var(a.clone())),
        Sexpr::List(items) => {
            let head = items
                .first()
                .and_then(Sexpr::atom)
                .ok_or("expected a term head")?;
            let args = &items[1..];
            match (head, args) {
                ("s" | "succ", [t]) => Ok(FoTerm::succ(fo_term_from_sexpr(t)?)),
                ("+" | "add", [l, r]) => Ok(FoTerm::Add(
                    Box::new(fo_term_from_sexpr(l)?),
                    Box::new(fo_term_from_sexpr(r)?),
                )),
                ("*" | "mul", [l, r]) => Ok(FoTerm::Mul(
                    Box::new(fo_term_from_sexpr(l)?),
                    Box::new(fo_term_from_sexpr(r)?),
                )),
                ("fn", [name, rest @ ..]) => {
                    let name = name.atom().ok_or("fn takes a symbol")?;
                    let parsed = rest
                        .iter()
                        .map(fo_term_from_sexpr)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(FoTerm::FnApp(name.to_string(), parsed))
                }
                other => Err(format!("unknown term form {other:?}")),
            }
        }
    }
}

pub fn so_formula_from_sexpr(e: &Sexpr) -> Result<SOFormula, String> {
    let items = match e {
        Sexpr::Atom(a) if a == "bot" => return Ok(SOFormula::bottom()),
        Sexpr::Atom(a) => return Err(format!("expected a formula, got atom `{a}`")),
        Sexpr::List(items) => items,
    };
    let head = items
        .first()
        .and_then(Sexpr::atom)
        .ok_or("expected a formula head")?;
    let args = &items[1..];
    match (head, args) {
        ("bot", []) => Ok(SOFormula::bottom()),
        ("pred", [x, rest @ ..]) => {
            let x = x.atom().ok_or("pred takes a predicate variable")?;
            let parsed = rest
                .iter()
                .map(fo_term_from_sexpr)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SOFormula::PredApp(Pred::Var(x.to_string()), parsed))
        }
        ("named", [x, rest @ ..]) => {
            let x = x.atom().ok_or("named takes a predicate name")?;
            let parsed = rest
                .iter()
                .map(fo_term_from_sexpr)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SOFormula::PredApp(Pred::Named(x.to_string()), parsed))
        }
        ("imp" | "->", [l, r]) => Ok(SOFormula::imp(
            so_formula_from_sexpr(l)?,
            so_formula_from_sexpr(r)?,
        )),
        ("not", [a]) => Ok(SOFormula::not(so_formula_from_sexpr(a)?)),
        ("and", [l, r]) => Ok(SOFormula::and(
            so_formula_from_sexpr(l)?,
            so_formula_from_sexpr(r)?,
        )),
        ("or", [l, r]) => Ok(SOFormula::or(
            so_formula_from_sexpr(l)?,
            so_formula_from_sexpr(r)?,
        )),
        ("=", [l, r]) => Ok(SOFormula::equals(
            fo_term_from_sexpr(l)?,
            fo_term_from_sexpr(r)?,
        )),
        ("int", [t]) => Ok(SOFormula::int(fo_term_from_sexpr(t)?)),
        ("forall", [x, body]) => {
            let x = x.atom().ok_or("forall binder must be an atom")?;
            Ok(SOFormula::forall_ind(x, so_formula_from_sexpr(body)?))
        }
        ("forall2", [x, k, body]) => {
            let x = x.atom().ok_or("forall2 binder must be an atom")?;
            let k: usize = k
                .atom()
                .and_then(|s| s.parse().ok())
                .ok_or("forall2 takes an arity")?;
            Ok(SOFormula::forall_pred(x, k, so_formula_from_sexpr(body)?))
        }
        ("exists", [x, body]) => {
            let x = x.atom().ok_or("exists binder must be an atom")?;
            Ok(SOFormula::exists_ind(x, so_formula_from_sexpr(body)?))
        }
        ("exists2", [x, k, body]) => {
            let x = x.atom().ok_or("exists2 binder must be an atom")?;
            let k: usize = k
                .atom()
                .and_then(|s| s.parse().ok())
                .ok_or("exists2 takes an arity")?;
            Ok(SOFormula::exists_pred(x, k, so_formula_from_sexpr(body)?))
        }
        other => Err(format!("unknown formula form {other:?}")),
    }
}

fn index(e: &Sexpr, what: &str) -> Result<usize, String> {
    e.atom()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("expected a step index for {what}"))
}

fn step_from_sexpr(e: &Sexpr) -> Result<DStep, String> {
    let items = e.list().ok_or("expected a (step …) form")?;
    let (head, rest) = match items {
        [Sexpr::Atom(h), rest @ ..] if h == "step" => {
            let rule = rest
                .first()
                .and_then(Sexpr::atom)
                .ok_or("expected a rule name")?;
            (rule, &rest[1..])
        }
        _ => return Err(format!("expected (step <rule> …), got {e}")),
    };
    match (head, rest) {
        ("hyp", [x, formula]) => Ok(DStep::Hyp {
            var: x.atom().ok_or("hyp takes a variable")?.to_string(),
            formula: so_formula_from_sexpr(formula)?,
        }),
        ("app", [i, j]) => Ok(DStep::App {
            function: index(i, "app function")?,
            argument: index(j, "app argument")?,
        }),
        ("lam", [x, i]) => Ok(DStep::Lam {
            var: x.atom().ok_or("lam takes a variable")?.to_string(),
            premise: index(i, "lam premise")?,
            annotation: None,
        }),
        ("lam", [x, i, formula]) => Ok(DStep::Lam {
            var: x.atom().ok_or("lam takes a variable")?.to_string(),
            premise: index(i, "lam premise")?,
            annotation: Some(so_formula_from_sexpr(formula)?),
        }),
        ("cc", [i]) => Ok(DStep::Cc {
            premise: index(i, "cc premise")?,
        }),
        ("gen1", [x, i]) => Ok(DStep::Gen1 {
            var: x.atom().ok_or("gen1 takes a variable")?.to_string(),
            premise: index(i, "gen1 premise")?,
        }),
        ("gen2", [x, k, i]) => Ok(DStep::Gen2 {
            var: x.atom().ok_or("gen2 takes a variable")?.to_string(),
            arity: k
                .atom()
                .and_then(|s| s.parse().ok())
                .ok_or("gen2 takes an arity")?,
            premise: index(i, "gen2 premise")?,
        }),
        ("inst1", [t, i]) => Ok(DStep::Inst1 {
            term: fo_term_from_sexpr(t)?,
            premise: index(i, "inst1 premise")?,
        }),
        ("inst2", [params, formula, i]) => {
            let params = params
                .list()
                .ok_or("inst2 takes a parameter list")?
                .iter()
                .map(|p| {
                    p.atom()
                        .map(str::to_string)
                        .ok_or("parameters must be atoms")
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DStep::Inst2 {
                params,
                formula: so_formula_from_sexpr(formula)?,
                premise: index(i, "inst2 premise")?,
            })
        }
        ("axiom", [id]) => Ok(DStep::Axiom {
            id: id.atom().ok_or("axiom takes an id")?.to_string(),
        }),
        other => Err(format!("unknown derivation step {other:?}")),
    }
}
