//! Second-order classical logic for arithmetic: formulas, the typing
//! checker, the axiom-realizer registry, and the Int-relativization.

pub mod derivation;
pub mod formula;
pub mod parse;

pub use derivation::{
    builtin_realizers, check_derivation, storage_wrapped, AxiomRealizer, DStep, Derivation,
    DerivationError, Judgment, RealizerRegistry,
};
pub use formula::{relativize, FoTerm, Pred, SOFormula};
pub use parse::{parse_derivation, parse_fo_term, parse_so_formula};
