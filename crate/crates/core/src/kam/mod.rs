//! The λc-calculus and its deterministic stack machine.

pub mod machine;
pub mod parse;
pub mod term;

pub use machine::{
    applicable_rules, readback, run, run_traced, step, HaltReason, InstructionEnv, MachineError,
    MachineOutcome, Process, Rule, StepOutcome, StepRecord, Watcher,
};
pub use parse::parse_lterm;
pub use term::{
    as_numeral_syntactic, church, storage_t, substitute, succ_term, witness_t, Instr, LTerm, Stack,
};
