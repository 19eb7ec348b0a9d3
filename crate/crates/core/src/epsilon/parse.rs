//! S-expression front end for ε-arithmetic terms, formulas, and proofs.
//!
//! Grammar summary (full reference in `docs/formats.md`): atoms are `0`,
//! decimal numerals, and variable names; recognized heads are `succ pred add
//! mul eps = not imp fn exists forall`. Unknown heads are rejected. The
//! quantifiers are sugar:
//!
//! ```text
//! (exists x A) ≡ A[x := (eps x A)]
//! (forall x A) ≡ A[x := (eps x (not A))]
//! ```

use std::fmt;

use crate::sexpr::{self, Sexpr, SyntaxError};

use super::proof::{Justification, ProofStep};
use super::term::{EFormula, ETerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax(SyntaxError),
    /// A builtin head applied to the wrong number of arguments, or a
    /// malformed `fn` application.
    Arity {
        head: String,
        expected: String,
        got: usize,
    },
    UnknownHead(String),
    Malformed(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax(e) => write!(f, "syntax error at {e}"),
            ParseError::Arity {
                head,
                expected,
                got,
            } => {
                write!(f, "head `{head}` expects {expected} arguments, got {got}")
            }
            ParseError::UnknownHead(h) => write!(f, "unknown head `{h}`"),
            ParseError::Malformed(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<SyntaxError> for ParseError {
    fn from(e: SyntaxError) -> Self {
        ParseError::Syntax(e)
    }
}

pub fn parse_term(src: &str) -> Result<ETerm, ParseError> {
    term_from_sexpr(&sexpr::parse_one(src)?)
}

pub fn parse_formula(src: &str) -> Result<EFormula, ParseError> {
    formula_from_sexpr(&sexpr::parse_one(src)?)
}

/// One proof step per S-expression: `(step <formula> <justification>)`.
pub fn parse_proof(src: &str) -> Result<Vec<ProofStep>, ParseError> {
    sexpr::parse_many(src)?
        .iter()
        .map(step_from_sexpr)
        .collect()
}

fn is_numeral_atom(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn variable_atom(s: &str) -> Result<String, ParseError> {
    if s.is_empty() || is_numeral_atom(s) {
        return Err(ParseError::Malformed(format!(
            "expected a variable name, got `{s}`"
        )));
    }
    Ok(s.to_string())
}

pub fn term_from_sexpr(e: &Sexpr) -> Result<ETerm, ParseError> {
    match e {
        Sexpr::Atom(a) if is_numeral_atom(a) => {
            let n: u64 = a
                .parse()
                .map_err(|_| ParseError::Malformed(format!("numeral `{a}` out of range")))?;
            Ok(ETerm::numeral(n))
        }
        Sexpr::Atom(a) => Ok(ETerm::var(variable_atom(a)?)),
        Sexpr::List(items) => {
            let head = items
                .first()
                .and_then(Sexpr::atom)
                .ok_or_else(|| ParseError::Malformed("expected a head symbol".into()))?;
            let args = &items[1..];
            let arity = |n: usize, shape: &str| -> Result<(), ParseError> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(ParseError::Arity {
                        head: head.to_string(),
                        expected: shape.to_string(),
                        got: args.len(),
                    })
                }
            };
            match head {
                "succ" => {
                    arity(1, "1")?;
                    Ok(ETerm::succ(term_from_sexpr(&args[0])?))
                }
                "pred" => {
                    arity(1, "1")?;
                    Ok(ETerm::pred(term_from_sexpr(&args[0])?))
                }
                "add" => {
                    arity(2, "2")?;
                    Ok(ETerm::add(
                        term_from_sexpr(&args[0])?,
                        term_from_sexpr(&args[1])?,
                    ))
                }
                "mul" => {
                    arity(2, "2")?;
                    Ok(ETerm::mul(
                        term_from_sexpr(&args[0])?,
                        term_from_sexpr(&args[1])?,
                    ))
                }
                "eps" => {
                    arity(2, "2 (variable and body)")?;
                    let var = atom_of(&args[0], "eps binder")?;
                    Ok(ETerm::eps(
                        variable_atom(var)?,
                        formula_from_sexpr(&args[1])?,
                    ))
                }
                "fn" => {
                    if args.is_empty() {
                        return Err(ParseError::Arity {
                            head: "fn".into(),
                            expected: "a symbol and arguments".into(),
                            got: 0,
                        });
                    }
                    let name = atom_of(&args[0], "fn symbol")?;
                    let params = args[1..]
                        .iter()
                        .map(term_from_sexpr)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(ETerm::FnApp(name.to_string(), params))
                }
                other => Err(ParseError::UnknownHead(other.to_string())),
            }
        }
    }
}

pub fn formula_from_sexpr(e: &Sexpr) -> Result<EFormula, ParseError> {
    let items = e
        .list()
        .ok_or_else(|| ParseError::Malformed(format!("expected a formula, got atom `{e}`")))?;
    let head = items
        .first()
        .and_then(Sexpr::atom)
        .ok_or_else(|| ParseError::Malformed("expected a formula head".into()))?;
    let args = &items[1..];
    let arity = |n: usize| -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(ParseError::Arity {
                head: head.to_string(),
                expected: n.to_string(),
                got: args.len(),
            })
        }
    };
    match head {
        "=" => {
            arity(2)?;
            Ok(EFormula::eq(
                term_from_sexpr(&args[0])?,
                term_from_sexpr(&args[1])?,
            ))
        }
        "not" => {
            arity(1)?;
            Ok(EFormula::not(formula_from_sexpr(&args[0])?))
        }
        "imp" => {
            arity(2)?;
            Ok(EFormula::imp(
                formula_from_sexpr(&args[0])?,
                formula_from_sexpr(&args[1])?,
            ))
        }
        "exists" => {
            arity(2)?;
            let var = variable_atom(atom_of(&args[0], "exists binder")?)?;
            let body = formula_from_sexpr(&args[1])?;
            let witness = ETerm::eps(var.clone(), body.clone());
            Ok(body.subst(&var, &witness))
        }
        "forall" => {
            arity(2)?;
            let var = variable_atom(atom_of(&args[0], "forall binder")?)?;
            let body = formula_from_sexpr(&args[1])?;
            let counterexample = ETerm::eps(var.clone(), EFormula::not(body.clone()));
            Ok(body.subst(&var, &counterexample))
        }
        other => Err(ParseError::UnknownHead(other.to_string())),
    }
}

fn atom_of<'a>(e: &'a Sexpr, what: &str) -> Result<&'a str, ParseError> {
    e.atom()
        .ok_or_else(|| ParseError::Malformed(format!("expected an atom for {what}")))
}

fn index_of(e: &Sexpr, what: &str) -> Result<usize, ParseError> {
    atom_of(e, what)?
        .parse()
        .map_err(|_| ParseError::Malformed(format!("expected a step index for {what}")))
}

fn step_from_sexpr(e: &Sexpr) -> Result<ProofStep, ParseError> {
    let items = e
        .list()
        .ok_or_else(|| ParseError::Malformed("expected a (step …) form".into()))?;
    match items {
        [Sexpr::Atom(head), formula, justification] if head == "step" => Ok(ProofStep {
            formula: formula_from_sexpr(formula)?,
            justification: justification_from_sexpr(justification)?,
        }),
        _ => Err(ParseError::Malformed(format!(
            "expected (step <formula> <justification>), got {e}"
        ))),
    }
}

fn justification_from_sexpr(e: &Sexpr) -> Result<Justification, ParseError> {
    let items = e
        .list()
        .ok_or_else(|| ParseError::Malformed("expected a justification form".into()))?;
    let head = items
        .first()
        .and_then(Sexpr::atom)
        .ok_or_else(|| ParseError::Malformed("expected a justification head".into()))?;
    let args = &items[1..];
    match head {
        "axiom-i" => {
            if args.is_empty() {
                return Err(ParseError::Malformed(
                    "axiom-i needs a scheme number".into(),
                ));
            }
            let scheme = index_of(&args[0], "axiom-i scheme")?;
            let formulas = args[1..]
                .iter()
                .map(formula_from_sexpr)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Justification::AxiomI {
                scheme: scheme as u8,
                formulas,
            })
        }
        "axiom-ii" => {
            if args.is_empty() {
                return Err(ParseError::Malformed(
                    "axiom-ii needs a scheme number".into(),
                ));
            }
            let scheme = index_of(&args[0], "axiom-ii scheme")?;
            let terms = args[1..]
                .iter()
                .map(term_from_sexpr)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Justification::AxiomII {
                scheme: scheme as u8,
                terms,
            })
        }
        "critical" => {
            if args.is_empty() {
                return Err(ParseError::Malformed(
                    "critical needs a scheme number".into(),
                ));
            }
            let scheme = index_of(&args[0], "critical scheme")?;
            match (scheme, &args[1..]) {
                (1 | 2, [x, template, a]) => Ok(Justification::Critical {
                    scheme: scheme as u8,
                    var: variable_atom(atom_of(x, "critical binder")?)?,
                    param: None,
                    template: formula_from_sexpr(template)?,
                    terms: vec![term_from_sexpr(a)?],
                }),
                (3, [x, template]) => Ok(Justification::Critical {
                    scheme: 3,
                    var: variable_atom(atom_of(x, "critical binder")?)?,
                    param: None,
                    template: formula_from_sexpr(template)?,
                    terms: Vec::new(),
                }),
                (4, [x, y, template, a, b]) => Ok(Justification::Critical {
                    scheme: 4,
                    var: variable_atom(atom_of(x, "critical binder")?)?,
                    param: Some(variable_atom(atom_of(y, "critical parameter")?)?),
                    template: formula_from_sexpr(template)?,
                    terms: vec![term_from_sexpr(a)?, term_from_sexpr(b)?],
                }),
                _ => Err(ParseError::Malformed(format!(
                    "malformed critical justification: {e}"
                ))),
            }
        }
        "user" => {
            if args.is_empty() {
                return Err(ParseError::Malformed("user needs an axiom id".into()));
            }
            let id = atom_of(&args[0], "user axiom id")?.to_string();
            let terms = args[1..]
                .iter()
                .map(term_from_sexpr)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Justification::UserAxiom { id, terms })
        }
        "mp" => match args {
            [i, j] => Ok(Justification::MP {
                implication: index_of(i, "mp implication")?,
                antecedent: index_of(j, "mp antecedent")?,
            }),
            _ => Err(ParseError::Malformed("mp needs two step indices".into())),
        },
        other => Err(ParseError::UnknownHead(other.to_string())),
    }
}
