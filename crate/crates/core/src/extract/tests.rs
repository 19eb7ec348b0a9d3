use std::rc::Rc;

use super::*;
use crate::kam::term::LTerm;
use crate::sol2::{check_derivation, DStep, Derivation, RealizerRegistry, SOFormula};

/// Derivation of λn.λh.((h)n)(λz.z) : [∀x∃y(f(x,y)=0)]^int, using the
/// registered true equation ∀x(f(x,x)=0).
pub fn pi2_identity_theta() -> Judgment {
    let mut registry = RealizerRegistry::with_builtins();
    let f = |a: FoTerm, b: FoTerm| FoTerm::FnApp("f".into(), vec![a, b]);
    registry
        .register(
            "f_eq_refl",
            SOFormula::forall_ind(
                "x",
                SOFormula::equals(f(FoTerm::var("x"), FoTerm::var("x")), FoTerm::Zero),
            ),
            LTerm::lam("z", LTerm::var("z")),
            "defining equation of the diagonal matrix",
        )
        .unwrap();
    let h_formula = SOFormula::forall_ind(
        "y",
        SOFormula::imp(
            SOFormula::int(FoTerm::var("y")),
            SOFormula::imp(
                SOFormula::equals(f(FoTerm::var("x"), FoTerm::var("y")), FoTerm::Zero),
                SOFormula::bottom(),
            ),
        ),
    );
    let d = Derivation {
        steps: vec![
            DStep::Hyp {
                var: "n".into(),
                formula: SOFormula::int(FoTerm::var("x")),
            },
            DStep::Hyp {
                var: "h".into(),
                formula: h_formula,
            },
            DStep::Inst1 {
                term: FoTerm::var("x"),
                premise: 1,
            },
            DStep::App {
                function: 2,
                argument: 0,
            },
            DStep::Axiom {
                id: "f_eq_refl".into(),
            },
            DStep::Inst1 {
                term: FoTerm::var("x"),
                premise: 4,
            },
            DStep::App {
                function: 3,
                argument: 5,
            },
            DStep::Lam {
                var: "h".into(),
                premise: 6,
                annotation: None,
            },
            DStep::Lam {
                var: "n".into(),
                premise: 7,
                annotation: None,
            },
            DStep::Gen1 {
                var: "x".into(),
                premise: 8,
            },
        ],
    };
    check_derivation(&d, &registry).unwrap()
}

/// Derivation of λH.((H)0̂)(λi.λz.z) : [∃x∀y(φ(x,y)=0)]^int for the matrix
/// φ(x,y) = x, whose only witness is x = 0.
pub fn sigma2_zero_theta() -> Judgment {
    let mut registry = RealizerRegistry::with_builtins();
    let phi = |a: FoTerm, b: FoTerm| FoTerm::FnApp("phi0".into(), vec![a, b]);
    let w_formula = SOFormula::forall_ind(
        "y1",
        SOFormula::imp(
            SOFormula::int(FoTerm::var("y1")),
            SOFormula::equals(phi(FoTerm::Zero, FoTerm::var("y1")), FoTerm::Zero),
        ),
    );
    registry
        .register(
            "phi0_zero",
            w_formula.clone(),
            LTerm::lam("i", LTerm::lam("z", LTerm::var("z"))),
            "φ(0,y) = 0 holds for every y",
        )
        .unwrap();
    let hyp = SOFormula::forall_ind(
        "x1",
        SOFormula::imp(
            SOFormula::int(FoTerm::var("x1")),
            SOFormula::imp(
                SOFormula::forall_ind(
                    "y1",
                    SOFormula::imp(
                        SOFormula::int(FoTerm::var("y1")),
                        SOFormula::equals(phi(FoTerm::var("x1"), FoTerm::var("y1")), FoTerm::Zero),
                    ),
                ),
                SOFormula::bottom(),
            ),
        ),
    );
    let d = Derivation {
        steps: vec![
            DStep::Hyp {
                var: "H".into(),
                formula: hyp,
            },
            DStep::Inst1 {
                term: FoTerm::Zero,
                premise: 0,
            },
            DStep::Axiom {
                id: "int_zero".into(),
            },
            DStep::App {
                function: 1,
                argument: 2,
            },
            DStep::Axiom {
                id: "phi0_zero".into(),
            },
            DStep::App {
                function: 3,
                argument: 4,
            },
            DStep::Lam {
                var: "H".into(),
                premise: 5,
                annotation: None,
            },
        ],
    };
    check_derivation(&d, &registry).unwrap()
}

/// Derivation for the depth-2 statement with matrix
/// φ(x₁,x₂,y₁,y₂) = 0 iff x₁ = 0 ∧ x₂ = y₁: ∃loise plays x₁ = 0, then copies
/// ∀bélard's reply.
pub fn prenex2_theta() -> Judgment {
    let phi =
        |a: FoTerm, b: FoTerm, c: FoTerm, d: FoTerm| FoTerm::FnApp("phi2".into(), vec![a, b, c, d]);
    let w = |x2: FoTerm, y1: FoTerm| {
        SOFormula::forall_ind(
            "y2",
            SOFormula::imp(
                SOFormula::int(FoTerm::var("y2")),
                SOFormula::equals(phi(FoTerm::Zero, x2, y1, FoTerm::var("y2")), FoTerm::Zero),
            ),
        )
    };
    let mut registry = RealizerRegistry::with_builtins();
    registry
        .register(
            "phi2_diag",
            SOFormula::forall_ind("a", w(FoTerm::var("a"), FoTerm::var("a"))),
            LTerm::lam("i", LTerm::lam("z", LTerm::var("z"))),
            "φ(0,a,a,y₂) = 0 holds for every a, y₂",
        )
        .unwrap();
    let inner_forall = |x1: FoTerm| {
        SOFormula::forall_ind(
            "x2",
            SOFormula::imp(
                SOFormula::int(FoTerm::var("x2")),
                SOFormula::imp(
                    SOFormula::forall_ind(
                        "y2",
                        SOFormula::imp(
                            SOFormula::int(FoTerm::var("y2")),
                            SOFormula::equals(
                                phi(
                                    x1.clone(),
                                    FoTerm::var("x2"),
                                    FoTerm::var("y1"),
                                    FoTerm::var("y2"),
                                ),
                                FoTerm::Zero,
                            ),
                        ),
                    ),
                    SOFormula::bottom(),
                ),
            ),
        )
    };
    let b1 = |x1: FoTerm| {
        SOFormula::forall_ind(
            "y1",
            SOFormula::imp(
                SOFormula::int(FoTerm::var("y1")),
                SOFormula::imp(inner_forall(x1.clone()), SOFormula::bottom()),
            ),
        )
    };
    let hyp = SOFormula::forall_ind(
        "x1",
        SOFormula::imp(
            SOFormula::int(FoTerm::var("x1")),
            SOFormula::imp(b1(FoTerm::var("x1")), SOFormula::bottom()),
        ),
    );
    let d = Derivation {
        steps: vec![
            // 0: H
            DStep::Hyp {
                var: "H".into(),
                formula: hyp,
            },
            // 1: H instantiated at x1 := 0
            DStep::Inst1 {
                term: FoTerm::Zero,
                premise: 0,
            },
            // 2: Int(0)
            DStep::Axiom {
                id: "int_zero".into(),
            },
            // 3: (H)0̂ : B1(0) → ⊥
            DStep::App {
                function: 1,
                argument: 2,
            },
            // 4: i1 : Int(y1)
            DStep::Hyp {
                var: "i1".into(),
                formula: SOFormula::int(FoTerm::var("y1")),
            },
            // 5: G2
            DStep::Hyp {
                var: "G2".into(),
                formula: inner_forall(FoTerm::Zero),
            },
            // 6: G2 at x2 := y1
            DStep::Inst1 {
                term: FoTerm::var("y1"),
                premise: 5,
            },
            // 7: (G2)i1 : W(0,y1,y1) → ⊥
            DStep::App {
                function: 6,
                argument: 4,
            },
            // 8: the diagonal axiom
            DStep::Axiom {
                id: "phi2_diag".into(),
            },
            // 9: instantiated at a := y1
            DStep::Inst1 {
                term: FoTerm::var("y1"),
                premise: 8,
            },
            // 10: ⊥
            DStep::App {
                function: 7,
                argument: 9,
            },
            // 11: λG2 : F(0,y1)
            DStep::Lam {
                var: "G2".into(),
                premise: 10,
                annotation: None,
            },
            // 12: λi1 : Int(y1) → F(0,y1)
            DStep::Lam {
                var: "i1".into(),
                premise: 11,
                annotation: None,
            },
            // 13: ∀y1 …  = B1(0)
            DStep::Gen1 {
                var: "y1".into(),
                premise: 12,
            },
            // 14: ⊥
            DStep::App {
                function: 3,
                argument: 13,
            },
            // 15: λH : the statement
            DStep::Lam {
                var: "H".into(),
                premise: 14,
                annotation: None,
            },
        ],
    };
    check_derivation(&d, &registry).unwrap()
}

fn phi0_statement() -> PrenexStatement {
    PrenexStatement {
        name: "phi0".into(),
        depth: 1,
        matrix: Rc::new(|xs: &[u64], _: &[u64]| xs[0]),
        polarity: Polarity::ExistsFirst,
    }
}

fn phi2_statement() -> PrenexStatement {
    PrenexStatement {
        name: "phi2".into(),
        depth: 2,
        matrix: Rc::new(|xs: &[u64], ys: &[u64]| u64::from(!(xs[0] == 0 && xs[1] == ys[0]))),
        polarity: Polarity::ExistsFirst,
    }
}

#[test]
fn pi2_returns_the_diagonal_witness() {
    let theta = pi2_identity_theta();
    let f = |x: u64, y: u64| u64::from(x != y);
    for n in [0u64, 3, 10] {
        let r = extract_pi2(&theta, "f", &f, n, 10_000).unwrap();
        assert_eq!(r.witnesses, vec![n]);
        assert!(r.machine_steps <= 10_000);
        assert_eq!(r.transcript.final_position, FinalPosition::Pi2Witness(n));
    }
}

#[test]
fn pi2_budget_one_exceeds() {
    let theta = pi2_identity_theta();
    let f = |x: u64, y: u64| u64::from(x != y);
    assert!(matches!(
        extract_pi2(&theta, "f", &f, 3, 1),
        Err(ExtractError::BudgetExceeded { .. })
    ));
}

#[test]
fn pi2_storage_insensitivity() {
    // Replacing church(n) by (λx.x)·church(n) yields the same witness.
    let theta = pi2_identity_theta();
    let f = |x: u64, y: u64| u64::from(x != y);
    for n in 0..=10u64 {
        let direct = extract_pi2(&theta, "f", &f, n, 10_000).unwrap();
        let wrapped = extract_pi2_with_input(
            &theta,
            "f",
            &f,
            n,
            LTerm::app(LTerm::lam("x", LTerm::var("x")), crate::kam::church(n)),
            10_000,
        )
        .unwrap();
        assert_eq!(direct.witnesses, wrapped.witnesses);
    }
}

#[test]
fn pi2_type_mismatch_detected() {
    let theta = sigma2_zero_theta();
    let f = |x: u64, y: u64| u64::from(x != y);
    assert!(matches!(
        extract_pi2(&theta, "f", &f, 3, 10_000),
        Err(ExtractError::TypeMismatch { .. })
    ));
}

#[test]
fn sigma2_finds_zero_against_any_strategy() {
    let theta = sigma2_zero_theta();
    let statement = phi0_statement();
    let identity = LTerm::lam("n", LTerm::var("n"));
    let id_host: HostFn = Rc::new(|args: &[u64]| args[0]);
    let const7 = LTerm::lam("n", crate::kam::church(7));
    let const7_host: HostFn = Rc::new(|_: &[u64]| 7);
    for (term, host) in [(identity, id_host), (const7, const7_host)] {
        let r = extract_sigma2_strategy(&theta, &statement, &term, &host, 10_000).unwrap();
        assert_eq!(r.witnesses, vec![0]);
        verify_transcript(&r.transcript, &statement).unwrap();
    }
}

#[test]
fn sigma2_representation_violation_detected() {
    let theta = sigma2_zero_theta();
    let statement = phi0_statement();
    // The term computes the identity but the host claims constant 9.
    let term = LTerm::lam("n", LTerm::var("n"));
    let host: HostFn = Rc::new(|_: &[u64]| 9);
    match extract_sigma2_strategy(&theta, &statement, &term, &host, 10_000) {
        Err(ExtractError::Machine(MachineError::RepresentationViolation { .. })) => {}
        other => panic!("expected a representation violation, got {other:?}"),
    }
}

#[test]
fn sigma2_strategy_contract_spot_check_passes_identity() {
    // λn.n with readback 5 ↦ 5: the spot check accepts.
    let term = LTerm::lam("n", LTerm::var("n"));
    let probe = LTerm::app(term, crate::kam::church(5));
    assert_eq!(crate::kam::readback(&probe, 10_000), Some(5));
}

#[test]
fn prenex_depth2_host_opponent() {
    let theta = prenex2_theta();
    let statement = phi2_statement();
    let gamma1: HostFn = Rc::new(|_: &[u64]| 7);
    let gamma2: HostFn = Rc::new(|args: &[u64]| args[0] + args[1]);
    let r = extract_prenex(
        &theta,
        &statement,
        Opponent::HostFunctions(vec![gamma1, gamma2]),
        100_000,
    )
    .unwrap();
    assert_eq!(r.witnesses, vec![0, 7]);
    assert_eq!(r.pairs[0], (0, 7));
    assert_eq!(r.pairs[1].0, 7);
    verify_transcript(&r.transcript, &statement).unwrap();
    kappa_ordering_holds(&r.transcript);
}

#[test]
fn prenex_depth2_term_strategy_agrees() {
    let theta = prenex2_theta();
    let statement = phi2_statement();
    let t1 = LTerm::lam("a", crate::kam::church(7));
    // γ₂(a,b) = a + b as a Church term: λa.λb.λf.λx.((a)f)(((b)f)x).
    let t2 = LTerm::lam(
        "a",
        LTerm::lam(
            "b",
            LTerm::lam(
                "f",
                LTerm::lam(
                    "x",
                    LTerm::app(
                        LTerm::app(LTerm::var("a"), LTerm::var("f")),
                        LTerm::app(
                            LTerm::app(LTerm::var("b"), LTerm::var("f")),
                            LTerm::var("x"),
                        ),
                    ),
                ),
            ),
        ),
    );
    let r = extract_prenex(
        &theta,
        &statement,
        Opponent::TermStrategy(vec![t1, t2]),
        100_000,
    )
    .unwrap();
    // Same opponent answers, same witnesses as the κ route.
    assert_eq!(r.witnesses, vec![0, 7]);
    assert_eq!(r.pairs[0], (0, 7));
    verify_transcript(&r.transcript, &statement).unwrap();
}

#[test]
fn prenex_depth1_matches_sigma2() {
    let theta = sigma2_zero_theta();
    let statement = phi0_statement();
    let term = LTerm::lam("n", LTerm::var("n"));
    let host: HostFn = Rc::new(|args: &[u64]| args[0]);
    let sigma = extract_sigma2_strategy(&theta, &statement, &term, &host, 10_000).unwrap();
    let prenex = extract_prenex(
        &theta,
        &statement,
        Opponent::TermStrategy(vec![term]),
        10_000,
    )
    .unwrap();
    assert_eq!(sigma.witnesses, prenex.witnesses);
}

#[test]
fn scripted_replay_reproduces_the_transcript() {
    let theta = prenex2_theta();
    let statement = phi2_statement();
    let gamma1: HostFn = Rc::new(|_: &[u64]| 7);
    let gamma2: HostFn = Rc::new(|args: &[u64]| args[0] + args[1]);
    let recorded = extract_prenex(
        &theta,
        &statement,
        Opponent::HostFunctions(vec![gamma1, gamma2]),
        100_000,
    )
    .unwrap();
    let answers: Vec<u64> = recorded
        .transcript
        .moves
        .iter()
        .filter(|m| m.player == Player::Forall)
        .map(|m| m.value)
        .collect();
    let replayed =
        extract_prenex(&theta, &statement, Opponent::Scripted(answers), 100_000).unwrap();
    assert_eq!(recorded.transcript, replayed.transcript);
    assert_eq!(recorded.pairs, replayed.pairs);
}

#[test]
fn interactive_abort_surfaces() {
    let theta = prenex2_theta();
    let statement = phi2_statement();
    let quit = Opponent::Interactive(Box::new(|_, _| None));
    match extract_prenex(&theta, &statement, quit, 100_000) {
        Err(ExtractError::Machine(MachineError::InteractiveAbort)) => {}
        other => panic!("expected an abort, got {other:?}"),
    }
}

fn kappa_ordering_holds(transcript: &GameTranscript) {
    // An exists move at position q requires earlier exists moves at every
    // position below q.
    let mut seen = std::collections::BTreeSet::new();
    for m in transcript
        .moves
        .iter()
        .filter(|m| m.player == Player::Exists)
    {
        for q in 1..m.position {
            assert!(
                seen.contains(&q),
                "position {} played before {q}",
                m.position
            );
        }
        seen.insert(m.position);
    }
}

#[test]
fn combine_implication_selects_branches() {
    let neg_a = PrenexStatement {
        name: "not_a".into(),
        depth: 1,
        matrix: Rc::new(|xs: &[u64], _: &[u64]| u64::from(xs[0] != 1)),
        polarity: Polarity::ExistsFirst,
    };
    let b = PrenexStatement {
        name: "b".into(),
        depth: 1,
        matrix: Rc::new(|_: &[u64], ys: &[u64]| u64::from(ys[0] != 2)),
        polarity: Polarity::ExistsFirst,
    };
    let combined = combine_implication(&neg_a, &b).unwrap();
    assert_eq!(combined.depth, 2);
    // y₀ = 0 routes to ¬A's matrix.
    assert_eq!((combined.matrix)(&[1, 9], &[0, 5]), 0);
    assert_eq!((combined.matrix)(&[3, 9], &[0, 5]), 1);
    // y₀ ≠ 0 routes to B's.
    assert_eq!((combined.matrix)(&[3, 9], &[1, 2]), 0);
    assert_eq!((combined.matrix)(&[3, 9], &[1, 5]), 1);
}

#[test]
fn padding_preserves_satisfaction() {
    let s = phi0_statement();
    let padded = pad_to_depth(&s, 2);
    assert_eq!(padded.depth, 2);
    for x in 0..3u64 {
        for junk in [0u64, 9] {
            assert_eq!(
                (s.matrix)(&[x], &[junk]),
                (padded.matrix)(&[x, junk], &[junk, x])
            );
        }
    }
    let mismatch = combine_implication(&s, &padded);
    assert!(matches!(mismatch, Err(ExtractError::DepthMismatch { .. })));
}

#[test]
fn double_bottom_probe_behaviour() {
    // The constant itself reaches its own state and not the other.
    let c = LTerm::inert(PROBE_FIRST);
    let report = double_bottom_probe(&c, 1_000);
    assert!(report.reaches_first);
    assert!(!report.reaches_second);
    assert!(!report.contradiction());

    // λx.x sticks without reaching either constant.
    let id = LTerm::lam("x", LTerm::var("x"));
    let report = double_bottom_probe(&id, 1_000);
    assert!(!report.reaches_first && !report.reaches_second);

    // A small corpus: none reaches both (determinism).
    let corpus = [
        LTerm::inert(PROBE_SECOND),
        LTerm::app(LTerm::lam("x", LTerm::var("x")), LTerm::inert(PROBE_FIRST)),
        crate::kam::church(2),
        witness_t(),
        LTerm::app(LTerm::CC, LTerm::lam("k", LTerm::inert(PROBE_SECOND))),
    ];
    for v in corpus {
        assert!(!double_bottom_probe(&v, 1_000).contradiction(), "{v}");
    }
}

#[test]
fn transcript_violations_detected() {
    let statement = phi2_statement();
    // Restart from a never-reached position: first move already at depth 2.
    let bad = GameTranscript {
        moves: vec![
            Move {
                player: Player::Exists,
                position: 2,
                value: 1,
            },
            Move {
                player: Player::Forall,
                position: 2,
                value: 1,
            },
        ],
        final_position: FinalPosition::Pairs(vec![(0, 7), (7, 7)]),
    };
    let v = verify_transcript(&bad, &statement).unwrap_err();
    assert!(v.reason.contains("never reached"));

    // Final pairs failing the matrix.
    let bad_final = GameTranscript {
        moves: vec![
            Move {
                player: Player::Exists,
                position: 1,
                value: 1,
            },
            Move {
                player: Player::Forall,
                position: 1,
                value: 4,
            },
            Move {
                player: Player::Exists,
                position: 2,
                value: 4,
            },
            Move {
                player: Player::Forall,
                position: 2,
                value: 0,
            },
        ],
        final_position: FinalPosition::Pairs(vec![(1, 4), (4, 0)]),
    };
    let v = verify_transcript(&bad_final, &statement).unwrap_err();
    assert!(v.reason.contains("matrix"));

    // Broken alternation: two exists moves in a row.
    let bad_alt = GameTranscript {
        moves: vec![
            Move {
                player: Player::Exists,
                position: 1,
                value: 0,
            },
            Move {
                player: Player::Exists,
                position: 1,
                value: 0,
            },
        ],
        final_position: FinalPosition::Pairs(vec![(0, 7), (7, 7)]),
    };
    assert!(verify_transcript(&bad_alt, &statement).is_err());
}

#[test]
fn transcript_json_shape() {
    let t = GameTranscript {
        moves: vec![
            Move {
                player: Player::Exists,
                position: 1,
                value: 0,
            },
            Move {
                player: Player::Forall,
                position: 1,
                value: 7,
            },
        ],
        final_position: FinalPosition::Pairs(vec![(0, 7)]),
    };
    assert_eq!(
        t.to_json(42),
        "{\"moves\":[{\"player\":\"exists\",\"pos\":1,\"value\":0},\
         {\"player\":\"forall\",\"pos\":1,\"value\":7}],\"final\":[[0,7]],\"steps\":42}"
    );
}
