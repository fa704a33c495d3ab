#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use noloop_cli::build;
use noloop_cli::description::{self, AlgebraDescription};
use noloop_core::algebra::BoundQuiverAlgebra;
use noloop_core::Rationals;

const SQUARE: &str = include_str!("../../fixtures/fx3.quiver");

fn square() -> &'static (AlgebraDescription, BoundQuiverAlgebra<Rationals>) {
    static CELL: OnceLock<(AlgebraDescription, BoundQuiverAlgebra<Rationals>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let d = description::parse(SQUARE).unwrap();
        let alg = build::algebra(&Rationals, &d, 30).unwrap();
        (d, alg)
    })
}

// The term parser and the element builder accept exactly the same inputs.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (d, alg) = square();
    let terms = description::parse_element_terms(d, text);
    let built = build::element(alg, d, text);
    assert_eq!(terms.is_ok(), built.is_ok());
});
