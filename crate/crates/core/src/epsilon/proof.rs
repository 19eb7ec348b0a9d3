//! Proof steps, axiom-schema checking, and static proof statistics.
//!
//! A proof is an ordered list of closed formulas, each justified by an axiom
//! schema instance or by modus ponens on two earlier steps. Checking is a
//! plain syntactic match: the expected formula is rebuilt from the claimed
//! instantiation and compared for structural equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::registry::FunctionRegistry;

use super::category::{category_of, Category};
use super::term::{EFormula, ETerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Propositional schemas I.1–I.3; `formulas` are the schema's metavariable
    /// instances (A, B and, for I.2, C).
    AxiomI {
        scheme: u8,
        formulas: Vec<EFormula>,
    },
    /// Arithmetic schemas II.01–II.13; `terms` instantiate a, b, c.
    AxiomII {
        scheme: u8,
        terms: Vec<ETerm>,
    },
    /// Critical schemas III.1–III.4. `var` is the bound variable of the
    /// ε-term, `template` the formula A with `var` (and for III.4 `param`)
    /// free, `terms` the closed instance terms.
    Critical {
        scheme: u8,
        var: String,
        param: Option<String>,
        template: EFormula,
        terms: Vec<ETerm>,
    },
    UserAxiom {
        id: String,
        terms: Vec<ETerm>,
    },
    MP {
        implication: usize,
        antecedent: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: EFormula,
    pub justification: Justification,
}

/// Registered universal axiom schemas ("formules universelles vraies").
/// Truth is trusted at check time; the substitution engine re-evaluates every
/// instance it encounters during a run.
#[derive(Debug, Clone, Default)]
pub struct UserAxioms {
    schemas: BTreeMap<String, (Vec<String>, EFormula)>,
}

impl UserAxioms {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(
        &mut self,
        id: impl Into<String>,
        params: Vec<String>,
        template: EFormula,
    ) -> Result<(), String> {
        let id = id.into();
        if self.schemas.contains_key(&id) {
            return Err(format!("duplicate user axiom id `{id}`"));
        }
        self.schemas.insert(id, (params, template));
        Ok(())
    }

    pub fn instantiate(&self, id: &str, terms: &[ETerm]) -> Option<EFormula> {
        let (params, template) = self.schemas.get(id)?;
        if params.len() != terms.len() {
            return None;
        }
        let mut f = template.clone();
        for (p, t) in params.iter().zip(terms) {
            f = f.subst(p, t);
        }
        Some(f)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.schemas.contains_key(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepError {
    pub index: usize,
    pub reason: String,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.index, self.reason)
    }
}

impl std::error::Error for StepError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofConstants {
    /// Maximum term degree in the proof.
    pub m: u64,
    /// Number of distinct closed ε-terms.
    pub e: usize,
    /// Number of distinct categories.
    pub g: usize,
}

/// Builds the expected formula for an axiom-schema instance, or explains why
/// the instantiation is malformed.
pub fn schema_instance(just: &Justification, user: &UserAxioms) -> Result<EFormula, String> {
    match just {
        Justification::AxiomI { scheme, formulas } => match (scheme, formulas.as_slice()) {
            (1, [a, b]) => Ok(EFormula::imp(
                a.clone(),
                EFormula::imp(b.clone(), a.clone()),
            )),
            (2, [a, b, c]) => Ok(EFormula::imp(
                EFormula::imp(a.clone(), EFormula::imp(b.clone(), c.clone())),
                EFormula::imp(
                    EFormula::imp(a.clone(), b.clone()),
                    EFormula::imp(a.clone(), c.clone()),
                ),
            )),
            (3, [a, b]) => Ok(EFormula::imp(
                EFormula::imp(EFormula::not(a.clone()), EFormula::not(b.clone())),
                EFormula::imp(b.clone(), a.clone()),
            )),
            _ => Err(format!(
                "axiom I.{scheme} takes {} formula instances",
                if *scheme == 2 { 3 } else { 2 }
            )),
        },
        Justification::AxiomII { scheme, terms } => axiom_ii(*scheme, terms),
        Justification::Critical {
            scheme,
            var,
            param,
            template,
            terms,
        } => critical_instance(*scheme, var, param.as_deref(), template, terms),
        Justification::UserAxiom { id, terms } => user
            .instantiate(id, terms)
            .ok_or_else(|| format!("unknown user axiom `{id}` or wrong argument count")),
        Justification::MP { .. } => Err("modus ponens has no schema instance".into()),
    }
}

fn axiom_ii(scheme: u8, terms: &[ETerm]) -> Result<EFormula, String> {
    use EFormula as F;
    use ETerm as T;
    let bad = |n: usize| format!("axiom II.{scheme:02} takes {n} terms");
    let eq = F::eq;
    match (scheme, terms) {
        (1, [a]) => Ok(eq(a.clone(), a.clone())),
        (2, [a, b]) => Ok(F::imp(
            eq(T::succ(a.clone()), T::succ(b.clone())),
            eq(a.clone(), b.clone()),
        )),
        (3, [a]) => Ok(F::imp(
            F::not(eq(a.clone(), T::Zero)),
            eq(T::pred(T::succ(a.clone())), a.clone()),
        )),
        (4, [a]) => Ok(eq(T::add(a.clone(), T::Zero), a.clone())),
        (5, [a, b]) => Ok(eq(
            T::add(a.clone(), T::succ(b.clone())),
            T::succ(T::add(a.clone(), b.clone())),
        )),
        (6, [a]) => Ok(eq(T::mul(a.clone(), T::Zero), T::Zero)),
        (7, [a, b]) => Ok(eq(
            T::mul(a.clone(), T::succ(b.clone())),
            T::add(T::mul(a.clone(), b.clone()), a.clone()),
        )),
        (8, [a, b]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::succ(a.clone()), T::succ(b.clone())),
        )),
        (9, [a, b]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::pred(a.clone()), T::pred(b.clone())),
        )),
        (10, [a, b, c]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::add(a.clone(), c.clone()), T::add(b.clone(), c.clone())),
        )),
        (11, [a, b, c]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::add(c.clone(), a.clone()), T::add(c.clone(), b.clone())),
        )),
        (12, [a, b, c]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::mul(a.clone(), c.clone()), T::mul(b.clone(), c.clone())),
        )),
        (13, [a, b, c]) => Ok(F::imp(
            eq(a.clone(), b.clone()),
            eq(T::mul(c.clone(), a.clone()), T::mul(c.clone(), b.clone())),
        )),
        (1 | 3 | 4 | 6, _) => Err(bad(1)),
        (2 | 5 | 7 | 8 | 9, _) => Err(bad(2)),
        (10..=13, _) => Err(bad(3)),
        _ => Err(format!("no arithmetic axiom II.{scheme:02}")),
    }
}

fn critical_instance(
    scheme: u8,
    var: &str,
    param: Option<&str>,
    template: &EFormula,
    terms: &[ETerm],
) -> Result<EFormula, String> {
    match (scheme, param, terms) {
        // III.1  A(a) → A(ε_x A x)
        (1, None, [a]) => {
            let eps = ETerm::eps(var, template.clone());
            Ok(EFormula::imp(
                template.subst(var, a),
                template.subst(var, &eps),
            ))
        }
        // III.2  A(a) → ε_x A x ≠ a'
        (2, None, [a]) => {
            let eps = ETerm::eps(var, template.clone());
            Ok(EFormula::imp(
                template.subst(var, a),
                EFormula::not(EFormula::eq(eps, ETerm::succ(a.clone()))),
            ))
        }
        // III.3  ~A(ε_x A x) → ε_x A x = 0
        (3, None, []) => {
            let eps = ETerm::eps(var, template.clone());
            Ok(EFormula::imp(
                EFormula::not(template.subst(var, &eps)),
                EFormula::eq(eps, ETerm::Zero),
            ))
        }
        // III.4  a = b → ε_x A(x,a) = ε_x A(x,b)
        (4, Some(y), [a, b]) => {
            let left = ETerm::eps(var, template.subst(y, a));
            let right = ETerm::eps(var, template.subst(y, b));
            Ok(EFormula::imp(
                EFormula::eq(a.clone(), b.clone()),
                EFormula::eq(left, right),
            ))
        }
        _ => Err(format!("malformed critical III.{scheme} instantiation")),
    }
}

/// Validates every step of a proof against its claimed justification.
pub fn check_proof(
    proof: &[ProofStep],
    registry: &FunctionRegistry,
    user: &UserAxioms,
) -> Result<(), Vec<StepError>> {
    let mut errors = Vec::new();
    for (index, step) in proof.iter().enumerate() {
        if let Err(reason) = check_step(proof, index, step, registry, user) {
            errors.push(StepError { index, reason });
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn check_step(
    proof: &[ProofStep],
    index: usize,
    step: &ProofStep,
    registry: &FunctionRegistry,
    user: &UserAxioms,
) -> Result<(), String> {
    if !step.formula.is_closed() {
        return Err(format!("formula has free variables: {}", step.formula));
    }
    check_arities_formula(&step.formula, registry)?;
    match &step.justification {
        Justification::MP {
            implication,
            antecedent,
        } => {
            if *implication >= index || *antecedent >= index {
                return Err("modus ponens must cite strictly earlier steps".into());
            }
            match &proof[*implication].formula {
                EFormula::Imp(l, r) => {
                    if **l != proof[*antecedent].formula {
                        return Err("antecedent does not match the cited implication".into());
                    }
                    if **r != step.formula {
                        return Err("conclusion does not match the cited implication".into());
                    }
                    Ok(())
                }
                _ => Err("cited implication step is not an implication".into()),
            }
        }
        other => {
            let expected = schema_instance(other, user)?;
            if expected != step.formula {
                return Err(format!("formula does not match schema instance {expected}"));
            }
            Ok(())
        }
    }
}

fn check_arities_formula(f: &EFormula, registry: &FunctionRegistry) -> Result<(), String> {
    match f {
        EFormula::Eq(l, r) => {
            check_arities_term(l, registry)?;
            check_arities_term(r, registry)
        }
        EFormula::Not(b) => check_arities_formula(b, registry),
        EFormula::Imp(l, r) => {
            check_arities_formula(l, registry)?;
            check_arities_formula(r, registry)
        }
    }
}

fn check_arities_term(t: &ETerm, registry: &FunctionRegistry) -> Result<(), String> {
    match t {
        ETerm::Zero | ETerm::Var(_) => Ok(()),
        ETerm::Succ(a) | ETerm::Pred(a) => check_arities_term(a, registry),
        ETerm::Add(l, r) | ETerm::Mul(l, r) => {
            check_arities_term(l, registry)?;
            check_arities_term(r, registry)
        }
        ETerm::Eps(_, body) => check_arities_formula(body, registry),
        ETerm::FnApp(name, args) => {
            match registry.arity(name) {
                None => return Err(format!("unregistered function symbol `{name}`")),
                Some(k) if k != args.len() => {
                    return Err(format!(
                        "function `{name}` has arity {k}, applied to {} arguments",
                        args.len()
                    ))
                }
                Some(_) => {}
            }
            for a in args {
                check_arities_term(a, registry)?;
            }
            Ok(())
        }
    }
}

/// Distinct closed ε-terms of the proof, α-normalized, in subterm-respecting
/// first-occurrence order.
pub fn enumerate_eps_terms(proof: &[ProofStep]) -> Vec<ETerm> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for step in proof {
        for sub in step.formula.eps_subterms() {
            if !sub.is_closed() {
                continue;
            }
            let norm = sub.alpha_normalize();
            if seen.insert(norm.clone()) {
                out.push(norm);
            }
        }
    }
    out
}

/// Distinct categories of every ε-subterm (closed or parameterized), ordered
/// by first occurrence of a representative. Post-order traversal makes the
/// order subterm-respecting: if an ε-term containing the bound variable of an
/// enclosing ε-term is a subterm of it, its category comes first.
pub fn enumerate_categories(proof: &[ProofStep]) -> Vec<Category> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for step in proof {
        for sub in step.formula.eps_subterms() {
            let cat = category_of(sub).expect("eps_subterms yields eps terms");
            if seen.insert(cat.clone()) {
                out.push(cat);
            }
        }
    }
    out
}

pub fn proof_constants(proof: &[ProofStep]) -> ProofConstants {
    let m = proof
        .iter()
        .map(|s| s.formula.max_degree_within())
        .max()
        .unwrap_or(0);
    let e = enumerate_eps_terms(proof).len();
    let g = enumerate_categories(proof).len();
    ProofConstants { m, e, g }
}
