#![no_main]

use libfuzzer_sys::fuzz_target;
use noloop_core::field::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(r) = parse_rational(text) {
        assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }
});
