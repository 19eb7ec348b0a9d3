//! A deterministic corpus of small checked proofs for the property suites:
//! single and chained witnesses, independent categories, repair chains that
//! exercise the zeroing rule, rank-2 nested categories, degree-0 proofs, and
//! registered function symbols.
//!
//! Generation is seeded (override with the WITNESS_SEED environment
//! variable); the engines themselves are deterministic.

use crate::epsilon::parse::parse_proof;
use crate::epsilon::proof::{ProofStep, UserAxioms};
use crate::registry::FunctionRegistry;

pub struct CorpusProof {
    pub name: String,
    pub proof: Vec<ProofStep>,
    pub registry: FunctionRegistry,
    pub user_axioms: UserAxioms,
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform-ish draw in 1..=max.
    fn draw(&mut self, max: u64) -> u64 {
        1 + self.next() % max
    }
}

pub fn seed_from_env() -> u64 {
    std::env::var("WITNESS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_cafe)
}

fn numeral(n: u64) -> String {
    let mut s = String::from("0");
    for _ in 0..n {
        s = format!("(succ {s})");
    }
    s
}

/// The tiny proof of ∃y(y = 0′): one category, one repair, witness 1.
pub fn tiny_proof() -> Vec<ProofStep> {
    single_witness_proof(1)
}

/// ∃y(y = n̂): II.01, the critical axiom, and the modus ponens conclusion.
pub fn single_witness_proof(n: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    parse_proof(&format!(
        "(step (= {nn} {nn}) (axiom-ii 1 {nn}))\n\
         (step (imp (= {nn} {nn}) (= (eps y (= y {nn})) {nn}))\n\
               (critical 1 y (= y {nn}) {nn}))\n\
         (step (= (eps y (= y {nn})) {nn}) (mp 1 0))"
    ))
    .expect("corpus proof parses")
}

/// ∃y(y = ε_x(x = n̂)′): the same category at two keys; witnesses n and n+1.
fn chained_witness_proof(n: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    let inner = format!("(eps x (= x {nn}))");
    let target = format!("(succ {inner})");
    parse_proof(&format!(
        "(step (= {nn} {nn}) (axiom-ii 1 {nn}))\n\
         (step (imp (= {nn} {nn}) (= {inner} {nn})) (critical 1 x (= x {nn}) {nn}))\n\
         (step (= {inner} {nn}) (mp 1 0))\n\
         (step (= {target} {target}) (axiom-ii 1 {target}))\n\
         (step (imp (= {target} {target}) (= (eps y (= y {target})) {target}))\n\
               (critical 1 y (= y {target}) {target}))\n\
         (step (= (eps y (= y {target})) {target}) (mp 4 3))"
    ))
    .expect("corpus proof parses")
}

/// Two independent categories, ε(v = w) and ε(v′ = w), each repaired once.
fn two_category_proof(n: u64, m: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    let sm = numeral(m + 1);
    let mm = numeral(m);
    parse_proof(&format!(
        "(step (imp (= {nn} {nn}) (= (eps y (= y {nn})) {nn}))\n\
               (critical 1 y (= y {nn}) {nn}))\n\
         (step (imp (= {sm} {sm}) (= (succ (eps z (= (succ z) {sm}))) {sm}))\n\
               (critical 1 z (= (succ z) {sm}) {mm}))"
    ))
    .expect("corpus proof parses")
}

/// Repair order that exercises the zeroing rule: the later category in
/// enumeration order is repaired first, then a repair of the earlier one
/// resets it, and it is repaired again.
fn zeroing_proof(n: u64, m: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    let eps_a = format!("(eps x (= x {nn}))");
    let sm = numeral(m + 1);
    let mm = numeral(m);
    parse_proof(&format!(
        "(step (= {eps_a} {eps_a}) (axiom-ii 1 {eps_a}))\n\
         (step (imp (= {sm} {sm}) (= (succ (eps z (= (succ z) {sm}))) {sm}))\n\
               (critical 1 z (= (succ z) {sm}) {mm}))\n\
         (step (imp (= {nn} {nn}) (= {eps_a} {nn})) (critical 1 x (= x {nn}) {nn}))"
    ))
    .expect("corpus proof parses")
}

/// A degree-0 proof: every term is 0 or a bare ε-term, the critical axiom is
/// already true under S₀, and every witness is 0. born(0,e,g) = 0 bounds it.
fn degree_zero_proof() -> Vec<ProofStep> {
    parse_proof(
        "(step (= 0 0) (axiom-ii 1 0))\n\
         (step (imp (= 0 0) (= (eps x (= x 0)) 0)) (critical 1 x (= x 0) 0))\n\
         (step (= (eps x (= x 0)) 0) (mp 1 0))",
    )
    .expect("corpus proof parses")
}

/// A rank-2 nested category: the critical formula for
/// ε_x(ε_y(y = n̂) + x = k̂) is repaired, then the inner repair resets it and
/// leaves it vacuously true (the antecedent turns false).
fn nested_rank2_proof(n: u64, k: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    let kk = numeral(k);
    let inner = format!("(eps y (= y {nn}))");
    let body = format!("(= (add {inner} x) {kk})");
    let outer = format!("(eps x (= (add {inner} x) {kk}))");
    parse_proof(&format!(
        "(step (imp (= (add {inner} {kk}) {kk}) (= (add {inner} {outer}) {kk}))\n\
               (critical 1 x {body} {kk}))\n\
         (step (imp (= {nn} {nn}) (= {inner} {nn})) (critical 1 y (= y {nn}) {nn}))"
    ))
    .expect("corpus proof parses")
}

/// A three-category dependent chain: e₁ = ε_x(x = n̂),
/// e₂ = ε_y(y + 1 = e₁″), e₃ = ε_z(z·1 = e₂′), with the criticals listed
/// deepest-last. Solving takes seven repairs — the later categories are
/// repaired, wiped by the e₁ repair, and repaired again at new keys — and
/// the run decomposes into two 2-series whose second opener has
/// characteristic number 2.
fn dependent_chain_proof(n: u64) -> Vec<ProofStep> {
    let nn = numeral(n);
    let e1 = format!("(eps x (= x {nn}))");
    let e2 = format!("(eps y (= (add y (succ 0)) (succ (succ {e1}))))");
    let e3 = format!("(eps z (= (mul z (succ 0)) (succ {e2})))");
    parse_proof(&format!(
        "(step (imp (= (mul (succ {e2}) (succ 0)) (succ {e2}))\n\
                    (= (mul {e3} (succ 0)) (succ {e2})))\n\
               (critical 1 z (= (mul z (succ 0)) (succ {e2})) (succ {e2})))\n\
         (step (imp (= (add (succ {e1}) (succ 0)) (succ (succ {e1})))\n\
                    (= (add {e2} (succ 0)) (succ (succ {e1}))))\n\
               (critical 1 y (= (add y (succ 0)) (succ (succ {e1}))) (succ {e1})))\n\
         (step (imp (= {nn} {nn}) (= {e1} {nn})) (critical 1 x (= x {nn}) {nn}))"
    ))
    .expect("corpus proof parses")
}

/// Witness through a registered function symbol: least y with y = double(n̂).
fn function_symbol_proof(n: u64) -> (Vec<ProofStep>, FunctionRegistry) {
    let nn = numeral(n);
    let target = format!("(fn double {nn})");
    let proof = parse_proof(&format!(
        "(step (= {target} {target}) (axiom-ii 1 {target}))\n\
         (step (imp (= {target} {target}) (= (eps y (= y {target})) {target}))\n\
               (critical 1 y (= y {target}) {target}))\n\
         (step (= (eps y (= y {target})) {target}) (mp 1 0))"
    ))
    .expect("corpus proof parses");
    let mut registry = FunctionRegistry::new();
    registry.register("double", 1, |args| args[0] * 2);
    (proof, registry)
}

/// The generated corpus: ≥20 small proofs, ≤3 categories, witnesses ≤ 10.
pub fn corpus(seed: u64) -> Vec<CorpusProof> {
    let mut rng = XorShift(seed | 1);
    let mut out = Vec::new();
    let mut push = |name: String, proof: Vec<ProofStep>, registry: FunctionRegistry| {
        out.push(CorpusProof {
            name,
            proof,
            registry,
            user_axioms: UserAxioms::new(),
        });
    };

    for i in 0..6 {
        let n = rng.draw(8);
        push(
            format!("single-{i}-n{n}"),
            single_witness_proof(n),
            FunctionRegistry::new(),
        );
    }
    for i in 0..4 {
        let n = rng.draw(6);
        push(
            format!("chained-{i}-n{n}"),
            chained_witness_proof(n),
            FunctionRegistry::new(),
        );
    }
    for i in 0..3 {
        let (n, m) = (rng.draw(6), rng.draw(5));
        push(
            format!("two-cat-{i}-n{n}-m{m}"),
            two_category_proof(n, m),
            FunctionRegistry::new(),
        );
    }
    for i in 0..3 {
        let (n, m) = (rng.draw(6), rng.draw(5));
        push(
            format!("zeroing-{i}-n{n}-m{m}"),
            zeroing_proof(n, m),
            FunctionRegistry::new(),
        );
    }
    push(
        "degree-zero".into(),
        degree_zero_proof(),
        FunctionRegistry::new(),
    );
    for i in 0..3 {
        let (n, k) = (rng.draw(5), rng.draw(6));
        push(
            format!("nested-{i}-n{n}-k{k}"),
            nested_rank2_proof(n, k),
            FunctionRegistry::new(),
        );
    }
    for i in 0..2 {
        let n = rng.draw(6);
        push(
            format!("chain3-{i}-n{n}"),
            dependent_chain_proof(n),
            FunctionRegistry::new(),
        );
    }
    for i in 0..2 {
        let n = rng.draw(5);
        let (proof, registry) = function_symbol_proof(n);
        push(format!("fn-{i}-n{n}"), proof, registry);
    }
    out
}
