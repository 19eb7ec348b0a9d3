//! Shared builders for the integration suites: checked derivations of the
//! demonstration statements and their prenex statements.

use std::rc::Rc;

use proofbench::extract::{Polarity, PrenexStatement};
use proofbench::kam::LTerm;
use proofbench::sol2::{
    check_derivation, parse_derivation, FoTerm, Judgment, RealizerRegistry, SOFormula,
};

/// The realizer registry the demo derivations need: builtins plus the three
/// matrix-specific equation leaves.
pub fn demo_registry() -> RealizerRegistry {
    let mut registry = RealizerRegistry::with_builtins();
    let id = LTerm::lam("z", LTerm::var("z"));
    registry
        .register(
            "f_eq_refl",
            SOFormula::forall_ind(
                "x",
                SOFormula::equals(
                    FoTerm::FnApp("f".into(), vec![FoTerm::var("x"), FoTerm::var("x")]),
                    FoTerm::Zero,
                ),
            ),
            id.clone(),
            "diagonal matrix equation",
        )
        .unwrap();
    registry
        .register(
            "phi0_zero",
            SOFormula::forall_ind(
                "y1",
                SOFormula::imp(
                    SOFormula::int(FoTerm::var("y1")),
                    SOFormula::equals(
                        FoTerm::FnApp("phi0".into(), vec![FoTerm::Zero, FoTerm::var("y1")]),
                        FoTerm::Zero,
                    ),
                ),
            ),
            LTerm::lam("i", id.clone()),
            "phi0(0,y) = 0",
        )
        .unwrap();
    registry
        .register(
            "phi2_diag",
            SOFormula::forall_ind(
                "a",
                SOFormula::forall_ind(
                    "y2",
                    SOFormula::imp(
                        SOFormula::int(FoTerm::var("y2")),
                        SOFormula::equals(
                            FoTerm::FnApp(
                                "phi2".into(),
                                vec![
                                    FoTerm::Zero,
                                    FoTerm::var("a"),
                                    FoTerm::var("a"),
                                    FoTerm::var("y2"),
                                ],
                            ),
                            FoTerm::Zero,
                        ),
                    ),
                ),
            ),
            LTerm::lam("i", id),
            "phi2(0,a,a,y2) = 0",
        )
        .unwrap();
    registry
}

fn data(path: &str) -> String {
    let full = format!("{}/tests/data/{path}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&full).unwrap_or_else(|e| panic!("cannot read {full}: {e}"))
}

pub fn pi2_theta() -> Judgment {
    let d = parse_derivation(&data("id_proof.drv")).unwrap();
    check_derivation(&d, &demo_registry()).unwrap()
}

pub fn sigma2_theta() -> Judgment {
    let d = parse_derivation(&data("sigma2_zero.drv")).unwrap();
    check_derivation(&d, &demo_registry()).unwrap()
}

pub fn prenex2_theta() -> Judgment {
    let d = parse_derivation(&data("prenex2.drv")).unwrap();
    check_derivation(&d, &demo_registry()).unwrap()
}

pub fn x1_zero_statement() -> PrenexStatement {
    PrenexStatement {
        name: "phi0".into(),
        depth: 1,
        matrix: Rc::new(|xs: &[u64], _: &[u64]| xs[0]),
        polarity: Polarity::ExistsFirst,
    }
}

pub fn diag2_statement() -> PrenexStatement {
    PrenexStatement {
        name: "phi2".into(),
        depth: 2,
        matrix: Rc::new(|xs: &[u64], ys: &[u64]| u64::from(!(xs[0] == 0 && xs[1] == ys[0]))),
        polarity: Polarity::ExistsFirst,
    }
}
