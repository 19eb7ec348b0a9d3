//! Second-order formulas for arithmetic over →/∀, with the defined
//! connectives expanded at construction and the Int-relativization transform.
//!
//! Core syntax: predicate applications (variables or named predicates),
//! implication, first-order ∀, second-order ∀. Everything else is sugar:
//!
//! ```text
//! ⊥       ≡ ∀X X
//! A ∧ B   ≡ ∀X((A → (B → X)) → X)
//! A ∨ B   ≡ ∀X((A → X) → ((B → X) → X))
//! ∃x A    ≡ (∀x(A → ⊥)) → ⊥
//! a = b   ≡ ∀X(Xa → Xb)
//! Int(x)  ≡ ∀X(∀y(Xy → Xsy) → (X0 → Xx))
//! ```

use std::collections::BTreeSet;
use std::fmt;

/// First-order terms over {0, s, +, ×} plus registered symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FoTerm {
    Zero,
    Var(String),
    Succ(Box<FoTerm>),
    Add(Box<FoTerm>, Box<FoTerm>),
    Mul(Box<FoTerm>, Box<FoTerm>),
    FnApp(String, Vec<FoTerm>),
}

impl FoTerm {
    pub fn var(x: impl Into<String>) -> FoTerm {
        FoTerm::Var(x.into())
    }

    pub fn succ(t: FoTerm) -> FoTerm {
        FoTerm::Succ(Box::new(t))
    }

    pub fn numeral(n: u64) -> FoTerm {
        let mut t = FoTerm::Zero;
        for _ in 0..n {
            t = FoTerm::succ(t);
        }
        t
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FoTerm::Zero => {}
            FoTerm::Var(x) => {
                out.insert(x.clone());
            }
            FoTerm::Succ(a) => a.collect_vars(out),
            FoTerm::Add(l, r) | FoTerm::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            FoTerm::FnApp(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn subst(&self, x: &str, u: &FoTerm) -> FoTerm {
        match self {
            FoTerm::Zero => FoTerm::Zero,
            FoTerm::Var(y) => {
                if y == x {
                    u.clone()
                } else {
                    self.clone()
                }
            }
            FoTerm::Succ(a) => FoTerm::succ(a.subst(x, u)),
            FoTerm::Add(l, r) => FoTerm::Add(Box::new(l.subst(x, u)), Box::new(r.subst(x, u))),
            FoTerm::Mul(l, r) => FoTerm::Mul(Box::new(l.subst(x, u)), Box::new(r.subst(x, u))),
            FoTerm::FnApp(f, args) => {
                FoTerm::FnApp(f.clone(), args.iter().map(|a| a.subst(x, u)).collect())
            }
        }
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Zero => write!(f, "0"),
            FoTerm::Var(x) => write!(f, "{x}"),
            FoTerm::Succ(a) => write!(f, "(s {a})"),
            FoTerm::Add(l, r) => write!(f, "(+ {l} {r})"),
            FoTerm::Mul(l, r) => write!(f, "(* {l} {r})"),
            FoTerm::FnApp(name, args) => {
                write!(f, "(fn {name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A predicate in application position: a second-order variable or a named
/// abstract predicate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pred {
    Var(String),
    Named(String),
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pred::Var(x) => write!(f, "{x}"),
            Pred::Named(n) => write!(f, "#{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SOFormula {
    PredApp(Pred, Vec<FoTerm>),
    Imp(Box<SOFormula>, Box<SOFormula>),
    ForallInd(String, Box<SOFormula>),
    ForallPred(String, usize, Box<SOFormula>),
}

impl SOFormula {
    pub fn imp(l: SOFormula, r: SOFormula) -> SOFormula {
        SOFormula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall_ind(x: impl Into<String>, body: SOFormula) -> SOFormula {
        SOFormula::ForallInd(x.into(), Box::new(body))
    }

    pub fn forall_pred(x: impl Into<String>, arity: usize, body: SOFormula) -> SOFormula {
        SOFormula::ForallPred(x.into(), arity, Box::new(body))
    }

    pub fn pred_var(x: impl Into<String>, args: Vec<FoTerm>) -> SOFormula {
        SOFormula::PredApp(Pred::Var(x.into()), args)
    }

    /// ⊥ ≡ ∀X X.
    pub fn bottom() -> SOFormula {
        SOFormula::forall_pred("X", 0, SOFormula::pred_var("X", vec![]))
    }

    /// a = b ≡ ∀X(Xa → Xb).
    pub fn equals(a: FoTerm, b: FoTerm) -> SOFormula {
        SOFormula::forall_pred(
            "X",
            1,
            SOFormula::imp(
                SOFormula::pred_var("X", vec![a]),
                SOFormula::pred_var("X", vec![b]),
            ),
        )
    }

    /// A ∧ B ≡ ∀X((A → (B → X)) → X).
    pub fn and(a: SOFormula, b: SOFormula) -> SOFormula {
        SOFormula::forall_pred(
            "X",
            0,
            SOFormula::imp(
                SOFormula::imp(a, SOFormula::imp(b, SOFormula::pred_var("X", vec![]))),
                SOFormula::pred_var("X", vec![]),
            ),
        )
    }

    /// A ∨ B ≡ ∀X((A → X) → ((B → X) → X)).
    pub fn or(a: SOFormula, b: SOFormula) -> SOFormula {
        let x = || SOFormula::pred_var("X", vec![]);
        SOFormula::forall_pred(
            "X",
            0,
            SOFormula::imp(
                SOFormula::imp(a, x()),
                SOFormula::imp(SOFormula::imp(b, x()), x()),
            ),
        )
    }

    /// ∃x A ≡ (∀x(A → ⊥)) → ⊥.
    pub fn exists_ind(x: impl Into<String>, body: SOFormula) -> SOFormula {
        SOFormula::imp(
            SOFormula::forall_ind(x, SOFormula::imp(body, SOFormula::bottom())),
            SOFormula::bottom(),
        )
    }

    /// ∃X A ≡ (∀X(A → ⊥)) → ⊥.
    pub fn exists_pred(x: impl Into<String>, arity: usize, body: SOFormula) -> SOFormula {
        SOFormula::imp(
            SOFormula::forall_pred(x, arity, SOFormula::imp(body, SOFormula::bottom())),
            SOFormula::bottom(),
        )
    }

    /// ¬A ≡ A → ⊥.
    pub fn not(a: SOFormula) -> SOFormula {
        SOFormula::imp(a, SOFormula::bottom())
    }

    /// Int(t) ≡ ∀X(∀y(Xy → Xsy) → (X0 → Xt)).
    pub fn int(t: FoTerm) -> SOFormula {
        let xy = SOFormula::pred_var("X", vec![FoTerm::var("y")]);
        let xsy = SOFormula::pred_var("X", vec![FoTerm::succ(FoTerm::var("y"))]);
        SOFormula::forall_pred(
            "X",
            1,
            SOFormula::imp(
                SOFormula::forall_ind("y", SOFormula::imp(xy, xsy)),
                SOFormula::imp(
                    SOFormula::pred_var("X", vec![FoTerm::Zero]),
                    SOFormula::pred_var("X", vec![t]),
                ),
            ),
        )
    }

    pub fn free_ind_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_ind(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_ind(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            SOFormula::PredApp(_, args) => {
                for a in args {
                    for v in a.free_vars() {
                        if !bound.iter().any(|b| *b == v) {
                            out.insert(v);
                        }
                    }
                }
            }
            SOFormula::Imp(l, r) => {
                l.collect_free_ind(bound, out);
                r.collect_free_ind(bound, out);
            }
            SOFormula::ForallInd(x, body) => {
                bound.push(x.clone());
                body.collect_free_ind(bound, out);
                bound.pop();
            }
            SOFormula::ForallPred(_, _, body) => body.collect_free_ind(bound, out),
        }
    }

    pub fn free_pred_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_pred(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_pred(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            SOFormula::PredApp(Pred::Var(x), _) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            SOFormula::PredApp(Pred::Named(_), _) => {}
            SOFormula::Imp(l, r) => {
                l.collect_free_pred(bound, out);
                r.collect_free_pred(bound, out);
            }
            SOFormula::ForallInd(_, body) => body.collect_free_pred(bound, out),
            SOFormula::ForallPred(x, _, body) => {
                bound.push(x.clone());
                body.collect_free_pred(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of a term for a free individual
    /// variable.
    pub fn subst_ind(&self, x: &str, u: &FoTerm) -> SOFormula {
        match self {
            SOFormula::PredApp(p, args) => {
                SOFormula::PredApp(p.clone(), args.iter().map(|a| a.subst(x, u)).collect())
            }
            SOFormula::Imp(l, r) => SOFormula::imp(l.subst_ind(x, u), r.subst_ind(x, u)),
            SOFormula::ForallInd(y, body) => {
                if y == x {
                    self.clone()
                } else if u.free_vars().contains(y) {
                    let fresh = fresh_name(y, &[&body.free_ind_vars(), &u.free_vars()]);
                    let renamed = body.subst_ind(y, &FoTerm::var(fresh.clone()));
                    SOFormula::forall_ind(fresh, renamed.subst_ind(x, u))
                } else {
                    SOFormula::forall_ind(y.clone(), body.subst_ind(x, u))
                }
            }
            SOFormula::ForallPred(y, k, body) => {
                SOFormula::forall_pred(y.clone(), *k, body.subst_ind(x, u))
            }
        }
    }

    /// Comprehension: replaces every atom `X(t₁…tₙ)` by φ with its parameter
    /// variables bound to the tᵢ, avoiding capture of φ's free variables.
    pub fn subst_pred(&self, x: &str, params: &[String], phi: &SOFormula) -> SOFormula {
        match self {
            SOFormula::PredApp(Pred::Var(y), args) if y == x => {
                debug_assert_eq!(args.len(), params.len());
                let mut result = phi.clone();
                // Simultaneous first-order substitution via fresh staging
                // names so params can mention each other's names safely.
                let staged: Vec<String> = (0..params.len()).map(|i| format!("#arg{i}")).collect();
                for (p, s) in params.iter().zip(&staged) {
                    result = result.subst_ind(p, &FoTerm::var(s.clone()));
                }
                for (s, arg) in staged.iter().zip(args) {
                    result = result.subst_ind(s, arg);
                }
                result
            }
            SOFormula::PredApp(_, _) => self.clone(),
            SOFormula::Imp(l, r) => {
                SOFormula::imp(l.subst_pred(x, params, phi), r.subst_pred(x, params, phi))
            }
            SOFormula::ForallInd(y, body) => {
                if phi_mentions(phi, params, y) {
                    let fresh = fresh_name(y, &[&body.free_ind_vars(), &phi.free_ind_vars()]);
                    let renamed = body.subst_ind(y, &FoTerm::var(fresh.clone()));
                    SOFormula::forall_ind(fresh, renamed.subst_pred(x, params, phi))
                } else {
                    SOFormula::forall_ind(y.clone(), body.subst_pred(x, params, phi))
                }
            }
            SOFormula::ForallPred(y, k, body) => {
                if y == x {
                    self.clone()
                } else if phi.free_pred_vars().contains(y) {
                    let fresh = fresh_name(y, &[&body.free_pred_vars(), &phi.free_pred_vars()]);
                    let renamed = body.rename_pred(y, &fresh);
                    SOFormula::forall_pred(fresh, *k, renamed.subst_pred(x, params, phi))
                } else {
                    SOFormula::forall_pred(y.clone(), *k, body.subst_pred(x, params, phi))
                }
            }
        }
    }

    fn rename_pred(&self, from: &str, to: &str) -> SOFormula {
        match self {
            SOFormula::PredApp(Pred::Var(y), args) if y == from => {
                SOFormula::pred_var(to, args.clone())
            }
            SOFormula::PredApp(_, _) => self.clone(),
            SOFormula::Imp(l, r) => {
                SOFormula::imp(l.rename_pred(from, to), r.rename_pred(from, to))
            }
            SOFormula::ForallInd(y, body) => {
                SOFormula::forall_ind(y.clone(), body.rename_pred(from, to))
            }
            SOFormula::ForallPred(y, k, body) => {
                if y == from {
                    self.clone()
                } else {
                    SOFormula::forall_pred(y.clone(), *k, body.rename_pred(from, to))
                }
            }
        }
    }

    /// α-equivalence on both binder kinds.
    pub fn alpha_eq(&self, other: &SOFormula) -> bool {
        fn go(
            a: &SOFormula,
            b: &SOFormula,
            ind: &mut Vec<(String, String)>,
            pred: &mut Vec<(String, String)>,
        ) -> bool {
            match (a, b) {
                (SOFormula::PredApp(pa, xs), SOFormula::PredApp(pb, ys)) => {
                    let preds_match = match (pa, pb) {
                        (Pred::Var(x), Pred::Var(y)) => {
                            let mapped = pred.iter().rev().find(|(l, _)| l == x);
                            match mapped {
                                Some((_, r)) => r == y,
                                None => x == y && !pred.iter().any(|(_, r)| r == y),
                            }
                        }
                        (Pred::Named(x), Pred::Named(y)) => x == y,
                        _ => false,
                    };
                    preds_match
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(s, t)| term_eq(s, t, ind))
                }
                (SOFormula::Imp(l1, r1), SOFormula::Imp(l2, r2)) => {
                    go(l1, l2, ind, pred) && go(r1, r2, ind, pred)
                }
                (SOFormula::ForallInd(x, b1), SOFormula::ForallInd(y, b2)) => {
                    ind.push((x.clone(), y.clone()));
                    let ok = go(b1, b2, ind, pred);
                    ind.pop();
                    ok
                }
                (SOFormula::ForallPred(x, k1, b1), SOFormula::ForallPred(y, k2, b2)) => {
                    if k1 != k2 {
                        return false;
                    }
                    pred.push((x.clone(), y.clone()));
                    let ok = go(b1, b2, ind, pred);
                    pred.pop();
                    ok
                }
                _ => false,
            }
        }
        fn term_eq(a: &FoTerm, b: &FoTerm, ind: &Vec<(String, String)>) -> bool {
            match (a, b) {
                (FoTerm::Zero, FoTerm::Zero) => true,
                (FoTerm::Var(x), FoTerm::Var(y)) => match ind.iter().rev().find(|(l, _)| l == x) {
                    Some((_, r)) => r == y,
                    None => x == y && !ind.iter().any(|(_, r)| r == y),
                },
                (FoTerm::Succ(s), FoTerm::Succ(t)) => term_eq(s, t, ind),
                (FoTerm::Add(a1, b1), FoTerm::Add(a2, b2))
                | (FoTerm::Mul(a1, b1), FoTerm::Mul(a2, b2)) => {
                    term_eq(a1, a2, ind) && term_eq(b1, b2, ind)
                }
                (FoTerm::FnApp(f, xs), FoTerm::FnApp(g, ys)) => {
                    f == g
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(s, t)| term_eq(s, t, ind))
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }

    pub fn is_closed(&self) -> bool {
        self.free_ind_vars().is_empty() && self.free_pred_vars().is_empty()
    }

    /// Whether the formula contains a first-order universal quantifier.
    pub fn has_forall_ind(&self) -> bool {
        match self {
            SOFormula::PredApp(_, _) => false,
            SOFormula::Imp(l, r) => l.has_forall_ind() || r.has_forall_ind(),
            SOFormula::ForallInd(_, _) => true,
            SOFormula::ForallPred(_, _, body) => body.has_forall_ind(),
        }
    }
}

fn phi_mentions(phi: &SOFormula, params: &[String], var: &str) -> bool {
    // A free variable of φ other than its parameter slots would be captured
    // by a binder named `var`.
    phi.free_ind_vars()
        .iter()
        .any(|v| v == var && !params.iter().any(|p| p == var))
}

/// The Int-relativization A ↦ A^int:
/// atomic formulas unchanged, implication structural,
/// (∀x A)^int ≡ ∀x(Int(x) → A^int), (∀X A)^int ≡ ∀X(A^int).
pub fn relativize(a: &SOFormula) -> SOFormula {
    match a {
        SOFormula::PredApp(_, _) => a.clone(),
        SOFormula::Imp(l, r) => SOFormula::imp(relativize(l), relativize(r)),
        SOFormula::ForallInd(x, body) => SOFormula::forall_ind(
            x.clone(),
            SOFormula::imp(SOFormula::int(FoTerm::var(x.clone())), relativize(body)),
        ),
        SOFormula::ForallPred(x, k, body) => {
            SOFormula::forall_pred(x.clone(), *k, relativize(body))
        }
    }
}

fn fresh_name(base: &str, avoid: &[&BTreeSet<String>]) -> String {
    let clash = |name: &str| avoid.iter().any(|set| set.contains(name));
    if !clash(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    for i in 1.. {
        let candidate = format!("{stem}{i}");
        if !clash(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

impl fmt::Display for SOFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SOFormula::PredApp(p, args) => {
                if args.is_empty() {
                    write!(f, "(pred {p})")
                } else {
                    write!(f, "(pred {p}")?;
                    for a in args {
                        write!(f, " {a}")?;
                    }
                    write!(f, ")")
                }
            }
            SOFormula::Imp(l, r) => write!(f, "(imp {l} {r})"),
            SOFormula::ForallInd(x, body) => write!(f, "(forall {x} {body})"),
            SOFormula::ForallPred(x, k, body) => write!(f, "(forall2 {x} {k} {body})"),
        }
    }
}
