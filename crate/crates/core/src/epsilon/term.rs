//! Terms and formulas of ε-arithmetic.
//!
//! The term language is `0`, variables, successor, truncated predecessor,
//! addition, multiplication, registered function symbols, and ε-terms
//! `ε_x A(x)`. Formulas are equations closed under `~` and `→`; the
//! quantifiers are parser sugar and never stored.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ETerm {
    Zero,
    Var(String),
    Succ(Box<ETerm>),
    Pred(Box<ETerm>),
    Add(Box<ETerm>, Box<ETerm>),
    Mul(Box<ETerm>, Box<ETerm>),
    /// `ε_x A(x)` — binds exactly one first-order variable in a formula body.
    Eps(String, Box<EFormula>),
    FnApp(String, Vec<ETerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EFormula {
    Eq(ETerm, ETerm),
    Not(Box<EFormula>),
    Imp(Box<EFormula>, Box<EFormula>),
}

impl ETerm {
    pub fn succ(t: ETerm) -> ETerm {
        ETerm::Succ(Box::new(t))
    }

    pub fn pred(t: ETerm) -> ETerm {
        ETerm::Pred(Box::new(t))
    }

    pub fn add(l: ETerm, r: ETerm) -> ETerm {
        ETerm::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: ETerm, r: ETerm) -> ETerm {
        ETerm::Mul(Box::new(l), Box::new(r))
    }

    pub fn eps(var: impl Into<String>, body: EFormula) -> ETerm {
        ETerm::Eps(var.into(), Box::new(body))
    }

    pub fn var(name: impl Into<String>) -> ETerm {
        ETerm::Var(name.into())
    }

    /// The numeral `n` is the n-fold successor of `0`.
    pub fn numeral(n: u64) -> ETerm {
        let mut t = ETerm::Zero;
        for _ in 0..n {
            t = ETerm::succ(t);
        }
        t
    }

    /// Inverse of [`ETerm::numeral`]; `None` for non-numeral terms.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                ETerm::Zero => return Some(n),
                ETerm::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            ETerm::Zero => {}
            ETerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            ETerm::Succ(a) | ETerm::Pred(a) => a.collect_free(bound, out),
            ETerm::Add(l, r) | ETerm::Mul(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            ETerm::Eps(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            ETerm::FnApp(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
        }
    }

    /// Capture-avoiding substitution of `replacement` for the free variable
    /// `var`.
    pub fn subst(&self, var: &str, replacement: &ETerm) -> ETerm {
        match self {
            ETerm::Zero => ETerm::Zero,
            ETerm::Var(x) => {
                if x == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            ETerm::Succ(a) => ETerm::succ(a.subst(var, replacement)),
            ETerm::Pred(a) => ETerm::pred(a.subst(var, replacement)),
            ETerm::Add(l, r) => ETerm::add(l.subst(var, replacement), r.subst(var, replacement)),
            ETerm::Mul(l, r) => ETerm::mul(l.subst(var, replacement), r.subst(var, replacement)),
            ETerm::Eps(x, body) => {
                if x == var {
                    self.clone()
                } else if replacement.free_vars().contains(x) {
                    // The binder would capture a free variable of the
                    // replacement; rename it first.
                    let fresh = fresh_name(x, &[body.free_vars(), replacement.free_vars()]);
                    let renamed = body.subst(x, &ETerm::var(fresh.clone()));
                    ETerm::eps(fresh, renamed.subst(var, replacement))
                } else {
                    ETerm::eps(x.clone(), body.subst(var, replacement))
                }
            }
            ETerm::FnApp(f, args) => ETerm::FnApp(
                f.clone(),
                args.iter().map(|a| a.subst(var, replacement)).collect(),
            ),
        }
    }

    /// Height of the term tree counting only function-symbol nodes; `0`,
    /// variables, and ε-terms are leaves.
    pub fn degree(&self) -> u64 {
        match self {
            ETerm::Zero | ETerm::Var(_) | ETerm::Eps(_, _) => 0,
            ETerm::Succ(a) | ETerm::Pred(a) => 1 + a.degree(),
            ETerm::Add(l, r) | ETerm::Mul(l, r) => 1 + l.degree().max(r.degree()),
            ETerm::FnApp(_, args) => 1 + args.iter().map(|a| a.degree()).max().unwrap_or(0),
        }
    }

    /// Maximum degree over every term position, descending into ε-bodies.
    pub fn max_degree_within(&self) -> u64 {
        let mut best = self.degree();
        match self {
            ETerm::Zero | ETerm::Var(_) => {}
            ETerm::Succ(a) | ETerm::Pred(a) => best = best.max(a.max_degree_within()),
            ETerm::Add(l, r) | ETerm::Mul(l, r) => {
                best = best.max(l.max_degree_within()).max(r.max_degree_within())
            }
            ETerm::Eps(_, body) => best = best.max(body.max_degree_within()),
            ETerm::FnApp(_, args) => {
                for a in args {
                    best = best.max(a.max_degree_within());
                }
            }
        }
        best
    }

    /// Renames every ε-binder to a depth-indexed canonical name, so that
    /// α-equivalent terms become structurally equal.
    pub fn alpha_normalize(&self) -> ETerm {
        self.alpha_norm(&mut Vec::new())
    }

    fn alpha_norm(&self, scope: &mut Vec<(String, String)>) -> ETerm {
        match self {
            ETerm::Zero => ETerm::Zero,
            ETerm::Var(x) => {
                for (orig, canon) in scope.iter().rev() {
                    if orig == x {
                        return ETerm::var(canon.clone());
                    }
                }
                self.clone()
            }
            ETerm::Succ(a) => ETerm::succ(a.alpha_norm(scope)),
            ETerm::Pred(a) => ETerm::pred(a.alpha_norm(scope)),
            ETerm::Add(l, r) => ETerm::add(l.alpha_norm(scope), r.alpha_norm(scope)),
            ETerm::Mul(l, r) => ETerm::mul(l.alpha_norm(scope), r.alpha_norm(scope)),
            ETerm::Eps(x, body) => {
                let canon = format!("${}", scope.len() + 1);
                scope.push((x.clone(), canon.clone()));
                let body = body.alpha_norm(scope);
                scope.pop();
                ETerm::eps(canon, body)
            }
            ETerm::FnApp(f, args) => ETerm::FnApp(
                f.clone(),
                args.iter().map(|a| a.alpha_norm(scope)).collect(),
            ),
        }
    }

    /// Collects every ε-subterm in post-order (subterms before the term that
    /// contains them), including the term itself when it is an ε-term.
    pub fn eps_subterms(&self) -> Vec<&ETerm> {
        let mut out = Vec::new();
        self.walk_eps(&mut out);
        out
    }

    fn walk_eps<'a>(&'a self, out: &mut Vec<&'a ETerm>) {
        match self {
            ETerm::Zero | ETerm::Var(_) => {}
            ETerm::Succ(a) | ETerm::Pred(a) => a.walk_eps(out),
            ETerm::Add(l, r) | ETerm::Mul(l, r) => {
                l.walk_eps(out);
                r.walk_eps(out);
            }
            ETerm::Eps(_, body) => {
                body.walk_eps(out);
                out.push(self);
            }
            ETerm::FnApp(_, args) => {
                for a in args {
                    a.walk_eps(out);
                }
            }
        }
    }
}

impl EFormula {
    pub fn eq(l: ETerm, r: ETerm) -> EFormula {
        EFormula::Eq(l, r)
    }

    pub fn not(f: EFormula) -> EFormula {
        EFormula::Not(Box::new(f))
    }

    pub fn imp(l: EFormula, r: EFormula) -> EFormula {
        EFormula::Imp(Box::new(l), Box::new(r))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            EFormula::Eq(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            EFormula::Not(b) => b.collect_free(bound, out),
            EFormula::Imp(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
        }
    }

    pub fn subst(&self, var: &str, replacement: &ETerm) -> EFormula {
        match self {
            EFormula::Eq(l, r) => {
                EFormula::Eq(l.subst(var, replacement), r.subst(var, replacement))
            }
            EFormula::Not(b) => EFormula::not(b.subst(var, replacement)),
            EFormula::Imp(l, r) => {
                EFormula::imp(l.subst(var, replacement), r.subst(var, replacement))
            }
        }
    }

    pub fn alpha_normalize(&self) -> EFormula {
        self.alpha_norm(&mut Vec::new())
    }

    pub(crate) fn alpha_norm(&self, scope: &mut Vec<(String, String)>) -> EFormula {
        match self {
            EFormula::Eq(l, r) => EFormula::Eq(l.alpha_norm(scope), r.alpha_norm(scope)),
            EFormula::Not(b) => EFormula::not(b.alpha_norm(scope)),
            EFormula::Imp(l, r) => EFormula::imp(l.alpha_norm(scope), r.alpha_norm(scope)),
        }
    }

    pub fn max_degree_within(&self) -> u64 {
        match self {
            EFormula::Eq(l, r) => l.max_degree_within().max(r.max_degree_within()),
            EFormula::Not(b) => b.max_degree_within(),
            EFormula::Imp(l, r) => l.max_degree_within().max(r.max_degree_within()),
        }
    }

    pub fn eps_subterms(&self) -> Vec<&ETerm> {
        let mut out = Vec::new();
        self.walk_eps(&mut out);
        out
    }

    pub(crate) fn walk_eps<'a>(&'a self, out: &mut Vec<&'a ETerm>) {
        match self {
            EFormula::Eq(l, r) => {
                l.walk_eps(out);
                r.walk_eps(out);
            }
            EFormula::Not(b) => b.walk_eps(out),
            EFormula::Imp(l, r) => {
                l.walk_eps(out);
                r.walk_eps(out);
            }
        }
    }

    /// The maximal terms of the formula: the sides of every equation, in
    /// left-to-right traversal order.
    pub fn maximal_terms(&self) -> Vec<&ETerm> {
        let mut out = Vec::new();
        self.walk_maximal(&mut out);
        out
    }

    fn walk_maximal<'a>(&'a self, out: &mut Vec<&'a ETerm>) {
        match self {
            EFormula::Eq(l, r) => {
                out.push(l);
                out.push(r);
            }
            EFormula::Not(b) => b.walk_maximal(out),
            EFormula::Imp(l, r) => {
                l.walk_maximal(out);
                r.walk_maximal(out);
            }
        }
    }

    /// Rebuilds the formula with its maximal terms replaced by `terms` in
    /// traversal order. `terms` must have as many entries as
    /// [`EFormula::maximal_terms`] returns.
    pub fn with_maximal_terms(&self, terms: &mut impl Iterator<Item = ETerm>) -> EFormula {
        match self {
            EFormula::Eq(_, _) => {
                let l = terms.next().expect("replacement term for equation lhs");
                let r = terms.next().expect("replacement term for equation rhs");
                EFormula::Eq(l, r)
            }
            EFormula::Not(b) => EFormula::not(b.with_maximal_terms(terms)),
            EFormula::Imp(l, r) => {
                EFormula::imp(l.with_maximal_terms(terms), r.with_maximal_terms(terms))
            }
        }
    }
}

impl fmt::Display for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ETerm::Zero => write!(f, "0"),
            ETerm::Var(x) => write!(f, "{x}"),
            ETerm::Succ(a) => write!(f, "(succ {a})"),
            ETerm::Pred(a) => write!(f, "(pred {a})"),
            ETerm::Add(l, r) => write!(f, "(add {l} {r})"),
            ETerm::Mul(l, r) => write!(f, "(mul {l} {r})"),
            ETerm::Eps(x, body) => write!(f, "(eps {x} {body})"),
            ETerm::FnApp(name, args) => {
                write!(f, "(fn {name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for EFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EFormula::Eq(l, r) => write!(f, "(= {l} {r})"),
            EFormula::Not(b) => write!(f, "(not {b})"),
            EFormula::Imp(l, r) => write!(f, "(imp {l} {r})"),
        }
    }
}

pub(crate) fn fresh_name(base: &str, avoid: &[BTreeSet<String>]) -> String {
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
