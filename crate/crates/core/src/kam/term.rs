//! Terms and stacks of the λc-calculus.
//!
//! Beyond variables, abstraction, and application, terms include `cc`, the
//! continuation constants k_π that only arise during reduction, and the
//! machine instructions used by extraction: ζₖ (evaluate a strategy term on
//! numerals inside the stack), κʲ (query the opponent), the inert pair list
//! that final states surface, and named inert constants.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LTerm {
    Var(String),
    Lam(String, Box<LTerm>),
    App(Box<LTerm>, Box<LTerm>),
    CC,
    /// k_π: a captured stack; never parsed from user input.
    Cont(Box<Stack>),
    Instr(Instr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    /// ζₖ: evaluates `(t)n̂₁…n̂ₖ` found on the stack in a budgeted sub-machine
    /// and pushes the resulting numeral.
    Zeta(usize),
    /// κʲ with the game history (n₁,p₁)…(nⱼ,pⱼ): asks the opponent for the
    /// next reply.
    Kappa {
        position: usize,
        history: Vec<(u64, u64)>,
    },
    /// `[x₁,…,xₖ]`: an inert list of terms; final states carry it in head
    /// position.
    PairList(Vec<LTerm>),
    /// A named inert constant; no rule fires on it.
    InertConst(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stack {
    /// Top of the stack first.
    pub items: Vec<LTerm>,
    /// Name of the stack bottom constant π₀.
    pub bottom: String,
}

impl Stack {
    pub fn bottom_only(name: impl Into<String>) -> Stack {
        Stack {
            items: Vec::new(),
            bottom: name.into(),
        }
    }

    pub fn push(&mut self, t: LTerm) {
        self.items.insert(0, t);
    }

    pub fn pop(&mut self) -> Option<LTerm> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items.remove(0))
        }
    }

    pub fn top(&self) -> Option<&LTerm> {
        self.items.first()
    }

    pub fn depth(&self) -> usize {
        self.items.len()
    }
}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(f, "{item} . ")?;
        }
        write!(f, "{}", self.bottom)
    }
}

impl LTerm {
    pub fn lam(x: impl Into<String>, body: LTerm) -> LTerm {
        LTerm::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: LTerm, a: LTerm) -> LTerm {
        LTerm::App(Box::new(f), Box::new(a))
    }

    pub fn var(x: impl Into<String>) -> LTerm {
        LTerm::Var(x.into())
    }

    pub fn inert(name: impl Into<String>) -> LTerm {
        LTerm::Instr(Instr::InertConst(name.into()))
    }

    /// Left-nested application spine `f a₁ … aₖ`.
    pub fn apps(f: LTerm, args: impl IntoIterator<Item = LTerm>) -> LTerm {
        args.into_iter().fold(f, LTerm::app)
    }

    /// Decomposes an application spine into its head and arguments.
    pub fn spine(&self) -> (&LTerm, Vec<&LTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let LTerm::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            LTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            LTerm::Lam(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            LTerm::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            LTerm::CC => {}
            LTerm::Cont(stack) => {
                for item in &stack.items {
                    item.collect_free(bound, out);
                }
            }
            LTerm::Instr(inst) => {
                if let Instr::PairList(values) = inst {
                    for v in values {
                        v.collect_free(bound, out);
                    }
                }
            }
        }
    }
}

/// Capture-avoiding substitution `t[u/x]`.
pub fn substitute(t: &LTerm, x: &str, u: &LTerm) -> LTerm {
    match t {
        LTerm::Var(y) => {
            if y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        LTerm::Lam(y, body) => {
            if y == x {
                t.clone()
            } else if u.free_vars().contains(y) {
                let fresh = fresh_var(y, body, u);
                let renamed = substitute(body, y, &LTerm::var(fresh.clone()));
                LTerm::lam(fresh, substitute(&renamed, x, u))
            } else {
                LTerm::lam(y.clone(), substitute(body, x, u))
            }
        }
        LTerm::App(f, a) => LTerm::app(substitute(f, x, u), substitute(a, x, u)),
        LTerm::CC => LTerm::CC,
        LTerm::Cont(stack) => LTerm::Cont(Box::new(Stack {
            items: stack
                .items
                .iter()
                .map(|item| substitute(item, x, u))
                .collect(),
            bottom: stack.bottom.clone(),
        })),
        LTerm::Instr(Instr::PairList(values)) => LTerm::Instr(Instr::PairList(
            values.iter().map(|v| substitute(v, x, u)).collect(),
        )),
        LTerm::Instr(_) => t.clone(),
    }
}

fn fresh_var(base: &str, body: &LTerm, replacement: &LTerm) -> String {
    let body_vars = body.free_vars();
    let repl_vars = replacement.free_vars();
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    for i in 1.. {
        let candidate = format!("{stem}{i}");
        if !body_vars.contains(&candidate) && !repl_vars.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Church numeral λf.λx.fⁿx.
pub fn church(n: u64) -> LTerm {
    let mut body = LTerm::var("x");
    for _ in 0..n {
        body = LTerm::app(LTerm::var("f"), body);
    }
    LTerm::lam("f", LTerm::lam("x", body))
}

/// The successor term λn.λf.λx.(f)((n)f)x, fixed so traces are
/// golden-testable.
pub fn succ_term() -> LTerm {
    LTerm::lam(
        "n",
        LTerm::lam(
            "f",
            LTerm::lam(
                "x",
                LTerm::app(
                    LTerm::app(
                        LTerm::var("f"),
                        LTerm::app(LTerm::var("n"), LTerm::var("f")),
                    ),
                    LTerm::var("x"),
                ),
            ),
        ),
    )
}

/// The storage operator T = λf.λn.(((n)λg.g∘s)f)0 that normalizes a numeral
/// argument before passing it on.
pub fn storage_t() -> LTerm {
    // λg.g∘s written out: λg.λx.(g)((s)x).
    let compose_s = LTerm::lam(
        "g",
        LTerm::lam(
            "x",
            LTerm::app(LTerm::var("g"), LTerm::app(succ_term(), LTerm::var("x"))),
        ),
    );
    LTerm::lam(
        "f",
        LTerm::lam(
            "n",
            LTerm::app(
                LTerm::app(LTerm::app(LTerm::var("n"), compose_s), LTerm::var("f")),
                church(0),
            ),
        ),
    )
}

/// The Π₂ witness catcher t ≡ λx.λy.(y)x.
pub fn witness_t() -> LTerm {
    LTerm::lam(
        "x",
        LTerm::lam("y", LTerm::app(LTerm::var("y"), LTerm::var("x"))),
    )
}

/// Recognizes a syntactic numeral: a literal Church numeral, or the successor
/// term applied some number of times to one (the shape the storage operator
/// builds).
pub fn as_numeral_syntactic(t: &LTerm) -> Option<u64> {
    // Count leading applications of the fixed successor term.
    let (head, args) = t.spine();
    if !args.is_empty() {
        // s (s (… (church m))) — a left spine is (…((s a))): each application
        // node has exactly one argument.
        let mut count = 0u64;
        let mut current = t;
        let succ = succ_term();
        loop {
            match current {
                LTerm::App(f, a) if **f == succ => {
                    count += 1;
                    current = a;
                }
                _ => break,
            }
        }
        if count > 0 {
            return as_church(current).map(|m| m + count);
        }
        let _ = head;
        return None;
    }
    as_church(t)
}

fn as_church(t: &LTerm) -> Option<u64> {
    if let LTerm::Lam(f, inner) = t {
        if let LTerm::Lam(x, body) = &**inner {
            let mut n = 0u64;
            let mut current = &**body;
            loop {
                match current {
                    LTerm::Var(v) if v == x => return Some(n),
                    LTerm::App(g, a) => match &**g {
                        LTerm::Var(v) if v == f => {
                            n += 1;
                            current = a;
                        }
                        _ => return None,
                    },
                    _ => return None,
                }
            }
        }
    }
    None
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTerm::Var(x) => write!(f, "{x}"),
            LTerm::Lam(x, body) => write!(f, "(lam {x} {body})"),
            LTerm::App(g, a) => write!(f, "(app {g} {a})"),
            LTerm::CC => write!(f, "cc"),
            LTerm::Cont(stack) => write!(f, "(cont {stack})"),
            LTerm::Instr(Instr::Zeta(k)) => write!(f, "(instr zeta {k})"),
            LTerm::Instr(Instr::Kappa { position, history }) => {
                write!(f, "(instr kappa {position}")?;
                for (n, p) in history {
                    write!(f, " {n} {p}")?;
                }
                write!(f, ")")
            }
            LTerm::Instr(Instr::PairList(values)) => {
                write!(f, "(instr pairs")?;
                for v in values {
                    write!(f, " {v}")?;
                }
                write!(f, ")")
            }
            LTerm::Instr(Instr::InertConst(name)) => write!(f, "(const {name})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_base_cases() {
        let u = LTerm::lam("z", LTerm::var("z"));
        assert_eq!(substitute(&LTerm::var("x"), "x", &u), u);
        // ((x)x)[x := λz.z] replaces both occurrences.
        let t = LTerm::app(LTerm::var("x"), LTerm::var("x"));
        assert_eq!(substitute(&t, "x", &u), LTerm::app(u.clone(), u.clone()));
    }

    #[test]
    fn substitution_avoids_capture() {
        // (λy.x)[x := y] → λy'.y
        let t = LTerm::lam("y", LTerm::var("x"));
        let s = substitute(&t, "x", &LTerm::var("y"));
        match s {
            LTerm::Lam(binder, body) => {
                assert_ne!(binder, "y");
                assert_eq!(*body, LTerm::var("y"));
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn church_shape() {
        assert_eq!(as_numeral_syntactic(&church(0)), Some(0));
        assert_eq!(as_numeral_syntactic(&church(7)), Some(7));
        assert_eq!(
            as_numeral_syntactic(&LTerm::lam("x", LTerm::var("x"))),
            None
        );
        // s (s church(1)) reads as 3.
        let t = LTerm::app(succ_term(), LTerm::app(succ_term(), church(1)));
        assert_eq!(as_numeral_syntactic(&t), Some(3));
    }

    #[test]
    fn spine_decomposition() {
        let t = LTerm::apps(LTerm::var("f"), [LTerm::var("a"), LTerm::var("b")]);
        let (head, args) = t.spine();
        assert_eq!(head, &LTerm::var("f"));
        assert_eq!(args.len(), 2);
    }
}
