//! A workbench that extracts computational content from classical arithmetic
//! proofs by two independent engines.
//!
//! The first engine runs the ε-substitution method: it checks a Hilbert-style
//! proof in ε-arithmetic, iterates total substituent assignments until every
//! critical axiom resolves to true, and reads witnesses off the final state,
//! with ordinal-indexed series bookkeeping and an explicit tower of bound
//! functions. The second is a stack machine for the λ-calculus with `cc` and
//! continuation constants, a second-order typing checker, and the witness
//! extraction procedures for Π₂, Σ₂, and general prenex statements, including
//! the backtracking game against an opponent.

pub mod bounds;
pub mod cli;
pub mod corpus;
pub mod epsilon;
pub mod extract;
pub mod kam;
pub mod ordinals;
pub mod registry;
pub mod sexpr;
pub mod sol2;
pub mod subst;
