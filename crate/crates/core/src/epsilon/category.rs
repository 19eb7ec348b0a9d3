//! Categories (Grundtypen) of ε-terms.
//!
//! The category of `ε_x A` is obtained by replacing every maximal term of
//! `A` in which `x` does not occur free by a placeholder variable
//! `w1, w2, …` in left-to-right traversal order. Two ε-terms belong to the
//! same category iff they differ only in those replaced subterms, so the
//! placeholder-numbered, α-normalized skeleton is the category's identity.

use std::fmt;

use super::term::ETerm;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Category {
    /// α-normalized ε-term with placeholders `w1…wk` for the abstracted
    /// parameter positions.
    skeleton: ETerm,
    arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotAnEpsTerm;

impl fmt::Display for NotAnEpsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category_of requires an eps term")
    }
}

impl std::error::Error for NotAnEpsTerm {}

impl Category {
    pub fn skeleton(&self) -> &ETerm {
        &self.skeleton
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of nested ε-binders in the skeleton, including the head.
    pub fn rank(&self) -> usize {
        self.skeleton.eps_subterms().len()
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.skeleton)
    }
}

/// The category of an ε-term together with the parameter subterms that were
/// abstracted, in placeholder order.
pub fn category_with_args(t: &ETerm) -> Result<(Category, Vec<ETerm>), NotAnEpsTerm> {
    let (var, body) = match t {
        ETerm::Eps(var, body) => (var, body),
        _ => return Err(NotAnEpsTerm),
    };
    let mut args = Vec::new();
    let replaced = body
        .maximal_terms()
        .into_iter()
        .map(|term| {
            if term.free_vars().contains(var) {
                term.clone()
            } else {
                args.push(term.clone());
                ETerm::var(format!("w{}", args.len()))
            }
        })
        .collect::<Vec<_>>();
    let skeleton_body = body.with_maximal_terms(&mut replaced.into_iter());
    let skeleton = ETerm::eps(var.clone(), skeleton_body).alpha_normalize();
    let arity = args.len();
    Ok((Category { skeleton, arity }, args))
}

pub fn category_of(t: &ETerm) -> Result<Category, NotAnEpsTerm> {
    category_with_args(t).map(|(cat, _)| cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::parse::parse_term;

    fn t(src: &str) -> ETerm {
        parse_term(src).unwrap()
    }

    #[test]
    fn rejects_non_eps() {
        assert!(category_of(&ETerm::Zero).is_err());
    }

    #[test]
    fn abstracts_maximal_parameter_subterms() {
        // ε_x(0' + ε_y(y = 0'') = ε_z(z' = x)): the left side of the equation
        // has no free x and is abstracted wholesale; the right side keeps its
        // inner structure because x occurs inside.
        let term =
            t("(eps x (= (add (succ 0) (eps y (= y (succ (succ 0))))) (eps z (= (succ z) x))))");
        let (cat, args) = category_with_args(&term).unwrap();
        assert_eq!(cat.arity(), 1);
        assert_eq!(
            args,
            vec![t("(add (succ 0) (eps y (= y (succ (succ 0)))))")]
        );
        let expected = t("(eps x (= w1 (eps z (= (succ z) x))))").alpha_normalize();
        assert_eq!(cat.skeleton(), &expected);
        assert_eq!(cat.rank(), 2);
    }

    #[test]
    fn own_category_when_every_side_mentions_the_binder() {
        // ε_x(ε_y(y = 0'') + x = x''). Both equation sides contain x, so
        // nothing is abstracted and the term is its own category.
        let term = t("(eps x (= (add (eps y (= y (succ (succ 0)))) x) (succ (succ x))))");
        let (cat, args) = category_with_args(&term).unwrap();
        assert_eq!(cat.arity(), 0);
        assert!(args.is_empty());
        assert_eq!(cat.skeleton(), &term.alpha_normalize());
        assert_eq!(cat.rank(), 2);
    }

    #[test]
    fn rank_counts_the_head_binder() {
        let (cat, _) = category_with_args(&t("(eps x (= x (succ 0)))")).unwrap();
        assert_eq!(cat.rank(), 1);
        assert_eq!(cat.arity(), 1);
    }

    #[test]
    fn identity_is_modulo_parameters_and_renaming() {
        let a = category_of(&t("(eps x (= x (succ 0)))")).unwrap();
        let b = category_of(&t("(eps y (= y (succ (succ 0))))")).unwrap();
        assert_eq!(a, b);
        let c = category_of(&t("(eps x (= (succ x) 0))")).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn idempotent_on_skeletons() {
        // Applying category extraction to a skeleton (placeholders read as
        // parameters) reproduces the skeleton.
        let term = t("(eps x (= (add (succ 0) (eps y (= y 0))) (eps z (= (succ z) x))))");
        let (cat, _) = category_with_args(&term).unwrap();
        let (again, _) = category_with_args(cat.skeleton()).unwrap();
        assert_eq!(cat, again);
    }
}
