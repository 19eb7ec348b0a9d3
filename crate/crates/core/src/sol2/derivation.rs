//! Typing derivations for second-order classical logic.
//!
//! Derivations are explicit scripts, not proof search: each step cites one of
//! the eight rules (hypothesis, application, abstraction, cc, the two
//! generalizations, first-order instantiation, comprehension) or a registered
//! axiom leaf. The checker rebuilds every judgment bottom-up with minimal
//! hypothesis sets and returns the final judgment with its λc term.

use std::collections::BTreeMap;
use std::fmt;

use crate::kam::term::{church, storage_t, succ_term, LTerm};

use super::formula::{FoTerm, SOFormula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DStep {
    /// Rule 1: Γ ⊢ x : A for x:A a hypothesis.
    Hyp { var: String, formula: SOFormula },
    /// Rule 2: from t : A→B and u : A conclude (t)u : B.
    App { function: usize, argument: usize },
    /// Rule 3: from Γ, x:A ⊢ t : B conclude Γ ⊢ λx.t : A→B. The annotation
    /// supplies A when x does not occur in the premise's hypotheses.
    Lam {
        var: String,
        premise: usize,
        annotation: Option<SOFormula>,
    },
    /// Rule 4: from t : (A→B)→A conclude cc·t : A.
    Cc { premise: usize },
    /// Rule 5: t : A gives t : ∀x A when x is not free in the hypotheses.
    Gen1 { var: String, premise: usize },
    /// Rule 6: t : A gives t : ∀X A when X is not free in the hypotheses.
    Gen2 {
        var: String,
        arity: usize,
        premise: usize,
    },
    /// Rule 7: t : ∀x A gives t : A[τ/x].
    Inst1 { term: FoTerm, premise: usize },
    /// Rule 8 (comprehension): t : ∀X A gives t : A[φ(x₁…xₙ)/Xx₁…xₙ].
    Inst2 {
        params: Vec<String>,
        formula: SOFormula,
        premise: usize,
    },
    /// A registered axiom with its realizer.
    Axiom { id: String },
}

#[derive(Debug, Clone, Default)]
pub struct Derivation {
    pub steps: Vec<DStep>,
}

#[derive(Debug, Clone)]
pub struct Judgment {
    pub hypotheses: Vec<(String, SOFormula)>,
    pub term: LTerm,
    pub formula: SOFormula,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} : {a}")?;
        }
        if !self.hypotheses.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|- {} : {}", self.term, self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationError {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "derivation step {}: {}", self.step, self.reason)
    }
}

impl std::error::Error for DerivationError {}

/// A registered axiom: a closed formula paired with the λc term that
/// realizes it.
#[derive(Debug, Clone)]
pub struct AxiomRealizer {
    pub id: String,
    pub formula: SOFormula,
    pub term: LTerm,
    pub note: String,
}

#[derive(Debug, Clone, Default)]
pub struct RealizerRegistry {
    entries: BTreeMap<String, AxiomRealizer>,
}

impl RealizerRegistry {
    pub fn new() -> RealizerRegistry {
        RealizerRegistry::default()
    }

    pub fn with_builtins() -> RealizerRegistry {
        let mut reg = RealizerRegistry::new();
        for realizer in builtin_realizers() {
            reg.entries.insert(realizer.id.clone(), realizer);
        }
        reg
    }

    pub fn register(
        &mut self,
        id: impl Into<String>,
        formula: SOFormula,
        term: LTerm,
        note: impl Into<String>,
    ) -> Result<(), String> {
        let id = id.into();
        if self.entries.contains_key(&id) {
            return Err(format!("duplicate axiom realizer id `{id}`"));
        }
        self.entries.insert(
            id.clone(),
            AxiomRealizer {
                id,
                formula,
                term,
                note: note.into(),
            },
        );
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&AxiomRealizer> {
        self.entries.get(id)
    }

    pub fn realizers(&self) -> impl Iterator<Item = &AxiomRealizer> {
        self.entries.values()
    }
}

/// Church addition λn.λm.λf.λx.((n)f)(((m)f)x).
fn add_rep() -> LTerm {
    LTerm::lam(
        "n",
        LTerm::lam(
            "m",
            LTerm::lam(
                "f",
                LTerm::lam(
                    "x",
                    LTerm::app(
                        LTerm::app(LTerm::var("n"), LTerm::var("f")),
                        LTerm::app(
                            LTerm::app(LTerm::var("m"), LTerm::var("f")),
                            LTerm::var("x"),
                        ),
                    ),
                ),
            ),
        ),
    )
}

/// Church multiplication λn.λm.λf.(n)((m)f).
fn mul_rep() -> LTerm {
    LTerm::lam(
        "n",
        LTerm::lam(
            "m",
            LTerm::lam(
                "f",
                LTerm::app(
                    LTerm::var("n"),
                    LTerm::app(LTerm::var("m"), LTerm::var("f")),
                ),
            ),
        ),
    )
}

/// The storage-wrapped realizer for ∀x⃗(Int x₁ → … → Int(f x⃗)): each argument
/// is normalized by T before the representation is applied.
pub fn storage_wrapped(representation: LTerm, arity: usize) -> LTerm {
    if arity == 1 {
        return LTerm::app(storage_t(), representation);
    }
    let arg = |i: usize| format!("x{i}");
    let norm = |i: usize| format!("a{i}");
    let mut body = LTerm::apps(representation, (1..=arity).map(|i| LTerm::var(norm(i))));
    for i in (1..=arity).rev() {
        body = LTerm::app(
            LTerm::app(storage_t(), LTerm::lam(norm(i), body)),
            LTerm::var(arg(i)),
        );
    }
    for i in (1..=arity).rev() {
        body = LTerm::lam(arg(i), body);
    }
    body
}

/// The builtin realizer set: the successor axioms, the equational axioms of
/// addition and multiplication (realized by the identity), Int(0), and the
/// storage-wrapped closure of Int under s, +, ×.
pub fn builtin_realizers() -> Vec<AxiomRealizer> {
    use FoTerm as T;
    use SOFormula as F;
    let id_term = LTerm::lam("x", LTerm::var("x"));
    let x = || T::var("x");
    let y = || T::var("y");
    let mut out = Vec::new();
    let mut push = |id: &str, formula: F, term: LTerm, note: &str| {
        out.push(AxiomRealizer {
            id: id.into(),
            formula,
            term,
            note: note.into(),
        });
    };

    // s0 ≠ 0, realized by λx.(x)u for an arbitrary u.
    push(
        "succ_nonzero",
        F::not(F::equals(T::succ(T::Zero), T::Zero)),
        LTerm::lam(
            "x",
            LTerm::app(LTerm::var("x"), LTerm::lam("z", LTerm::var("z"))),
        ),
        "successor axiom",
    );
    // ∀x∀y(sx = sy → x = y), realized by the identity.
    push(
        "succ_inj",
        F::forall_ind(
            "x",
            F::forall_ind(
                "y",
                F::imp(F::equals(T::succ(x()), T::succ(y())), F::equals(x(), y())),
            ),
        ),
        id_term.clone(),
        "successor axiom",
    );
    // True universal equations are realized by the identity.
    push(
        "add_zero",
        F::forall_ind(
            "x",
            F::equals(T::Add(Box::new(x()), Box::new(T::Zero)), x()),
        ),
        id_term.clone(),
        "addition axiom",
    );
    push(
        "add_succ",
        F::forall_ind(
            "x",
            F::forall_ind(
                "y",
                F::equals(
                    T::Add(Box::new(x()), Box::new(T::succ(y()))),
                    T::succ(T::Add(Box::new(x()), Box::new(y()))),
                ),
            ),
        ),
        id_term.clone(),
        "addition axiom",
    );
    push(
        "mul_zero",
        F::forall_ind(
            "x",
            F::equals(T::Mul(Box::new(x()), Box::new(T::Zero)), T::Zero),
        ),
        id_term.clone(),
        "multiplication axiom",
    );
    push(
        "mul_succ",
        F::forall_ind(
            "x",
            F::forall_ind(
                "y",
                F::equals(
                    T::Mul(Box::new(x()), Box::new(T::succ(y()))),
                    T::Add(
                        Box::new(T::Mul(Box::new(x()), Box::new(y()))),
                        Box::new(x()),
                    ),
                ),
            ),
        ),
        id_term.clone(),
        "multiplication axiom",
    );
    // Int(0) is realized by the Church zero.
    push("int_zero", F::int(T::Zero), church(0), "numeral realizer");
    // Int is closed under the language's function symbols (storage-wrapped
    // representations).
    push(
        "int_succ",
        F::forall_ind("x", F::imp(F::int(x()), F::int(T::succ(x())))),
        storage_wrapped(succ_term(), 1),
        "Int closure under s",
    );
    push(
        "int_add",
        F::forall_ind(
            "x",
            F::forall_ind(
                "y",
                F::imp(
                    F::int(x()),
                    F::imp(F::int(y()), F::int(T::Add(Box::new(x()), Box::new(y())))),
                ),
            ),
        ),
        storage_wrapped(add_rep(), 2),
        "Int closure under +",
    );
    push(
        "int_mul",
        F::forall_ind(
            "x",
            F::forall_ind(
                "y",
                F::imp(
                    F::int(x()),
                    F::imp(F::int(y()), F::int(T::Mul(Box::new(x()), Box::new(y())))),
                ),
            ),
        ),
        storage_wrapped(mul_rep(), 2),
        "Int closure under ×",
    );
    out
}

pub fn check_derivation(
    d: &Derivation,
    registry: &RealizerRegistry,
) -> Result<Judgment, DerivationError> {
    let mut judgments: Vec<Judgment> = Vec::with_capacity(d.steps.len());
    for (index, step) in d.steps.iter().enumerate() {
        let err = |reason: String| DerivationError {
            step: index,
            reason,
        };
        let premise = |i: usize| -> Result<&Judgment, DerivationError> {
            judgments
                .get(i)
                .filter(|_| i < index)
                .ok_or_else(|| err(format!("premise {i} is not an earlier step")))
        };
        let judgment = match step {
            DStep::Hyp { var, formula } => Judgment {
                hypotheses: vec![(var.clone(), formula.clone())],
                term: LTerm::var(var.clone()),
                formula: formula.clone(),
            },
            DStep::App { function, argument } => {
                let fj = premise(*function)?.clone();
                let aj = premise(*argument)?.clone();
                let (dom, cod) = match &fj.formula {
                    SOFormula::Imp(l, r) => ((**l).clone(), (**r).clone()),
                    other => return Err(err(format!("not an implication: {other}"))),
                };
                if !aj.formula.alpha_eq(&dom) {
                    return Err(err(format!(
                        "argument type {} does not match domain {dom}",
                        aj.formula
                    )));
                }
                Judgment {
                    hypotheses: merge_hypotheses(&fj.hypotheses, &aj.hypotheses).map_err(err)?,
                    term: LTerm::app(fj.term, aj.term),
                    formula: cod,
                }
            }
            DStep::Lam {
                var,
                premise: i,
                annotation,
            } => {
                let pj = premise(*i)?.clone();
                let mut hypotheses = pj.hypotheses.clone();
                let position = hypotheses.iter().position(|(x, _)| x == var);
                let domain = match (position, annotation) {
                    (Some(k), ann) => {
                        let (_, a) = hypotheses.remove(k);
                        if let Some(expected) = ann {
                            if !expected.alpha_eq(&a) {
                                return Err(err(format!(
                                    "annotation {expected} disagrees with hypothesis {a}"
                                )));
                            }
                        }
                        a
                    }
                    (None, Some(a)) => a.clone(),
                    (None, None) => {
                        return Err(err(format!(
                            "variable {var} not among the hypotheses; an annotation is required"
                        )))
                    }
                };
                Judgment {
                    hypotheses,
                    term: LTerm::lam(var.clone(), pj.term),
                    formula: SOFormula::imp(domain, pj.formula),
                }
            }
            DStep::Cc { premise: i } => {
                let pj = premise(*i)?.clone();
                let conclusion = match &pj.formula {
                    SOFormula::Imp(l, r) => match &**l {
                        SOFormula::Imp(a, _) if r.alpha_eq(a) => (**r).clone(),
                        _ => return Err(err(format!("cc needs (A → B) → A, got {}", pj.formula))),
                    },
                    other => return Err(err(format!("cc needs an implication, got {other}"))),
                };
                Judgment {
                    hypotheses: pj.hypotheses,
                    term: LTerm::app(LTerm::CC, pj.term),
                    formula: conclusion,
                }
            }
            DStep::Gen1 { var, premise: i } => {
                let pj = premise(*i)?.clone();
                for (x, a) in &pj.hypotheses {
                    if a.free_ind_vars().contains(var) {
                        return Err(err(format!(
                            "eigenvariable {var} occurs free in hypothesis {x} : {a}"
                        )));
                    }
                }
                Judgment {
                    hypotheses: pj.hypotheses,
                    term: pj.term,
                    formula: SOFormula::forall_ind(var.clone(), pj.formula),
                }
            }
            DStep::Gen2 {
                var,
                arity,
                premise: i,
            } => {
                let pj = premise(*i)?.clone();
                for (x, a) in &pj.hypotheses {
                    if a.free_pred_vars().contains(var) {
                        return Err(err(format!(
                            "eigenvariable {var} occurs free in hypothesis {x} : {a}"
                        )));
                    }
                }
                Judgment {
                    hypotheses: pj.hypotheses,
                    term: pj.term,
                    formula: SOFormula::forall_pred(var.clone(), *arity, pj.formula),
                }
            }
            DStep::Inst1 { term, premise: i } => {
                let pj = premise(*i)?.clone();
                let (x, body) = match &pj.formula {
                    SOFormula::ForallInd(x, body) => (x.clone(), (**body).clone()),
                    other => {
                        return Err(err(format!(
                            "inst1 needs a first-order forall, got {other}"
                        )))
                    }
                };
                Judgment {
                    hypotheses: pj.hypotheses,
                    term: pj.term,
                    formula: body.subst_ind(&x, term),
                }
            }
            DStep::Inst2 {
                params,
                formula,
                premise: i,
            } => {
                let pj = premise(*i)?.clone();
                let (x, arity, body) = match &pj.formula {
                    SOFormula::ForallPred(x, arity, body) => (x.clone(), *arity, (**body).clone()),
                    other => {
                        return Err(err(format!(
                            "inst2 needs a second-order forall, got {other}"
                        )))
                    }
                };
                if params.len() != arity {
                    return Err(err(format!(
                        "comprehension formula has {} parameters, binder has arity {arity}",
                        params.len()
                    )));
                }
                Judgment {
                    hypotheses: pj.hypotheses,
                    term: pj.term,
                    formula: body.subst_pred(&x, params, formula),
                }
            }
            DStep::Axiom { id } => match registry.get(id) {
                Some(realizer) => Judgment {
                    hypotheses: Vec::new(),
                    term: realizer.term.clone(),
                    formula: realizer.formula.clone(),
                },
                None => return Err(err(format!("unknown axiom `{id}`"))),
            },
        };
        judgments.push(judgment);
    }
    judgments.pop().ok_or(DerivationError {
        step: 0,
        reason: "empty derivation".into(),
    })
}

fn merge_hypotheses(
    left: &[(String, SOFormula)],
    right: &[(String, SOFormula)],
) -> Result<Vec<(String, SOFormula)>, String> {
    let mut merged = left.to_vec();
    for (x, a) in right {
        match merged.iter().find(|(y, _)| y == x) {
            Some((_, b)) if b.alpha_eq(a) => {}
            Some((_, b)) => return Err(format!("hypothesis {x} used at two types: {a} vs {b}")),
            None => merged.push((x.clone(), a.clone())),
        }
    }
    Ok(merged)
}
