#![no_main]

use libfuzzer_sys::fuzz_target;
use noloop_cli::{build, description};
use noloop_core::Rationals;

// Small cap: the search must either build an algebra or report an error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = description::parse(text) else { return };
    if d.vertices.len() > 6 || d.arrows.len() > 8 {
        return;
    }
    if let Ok(alg) = build::algebra(&Rationals, &d, 4) {
        assert_eq!(alg.vertex_count(), d.vertices.len());
        assert!(alg.dim() >= alg.vertex_count());
    }
});
