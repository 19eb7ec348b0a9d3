//! Syntax, parsing, and static analysis of ε-arithmetic.

pub mod category;
pub mod parse;
pub mod proof;
pub mod term;

pub use category::{category_of, category_with_args, Category, NotAnEpsTerm};
pub use parse::{parse_formula, parse_proof, parse_term, ParseError};
pub use proof::{
    check_proof, enumerate_categories, enumerate_eps_terms, proof_constants, Justification,
    ProofConstants, ProofStep, StepError, UserAxioms,
};
pub use term::{EFormula, ETerm};
