#![no_main]

use libfuzzer_sys::fuzz_target;
use noloop_cli::description::{parse, render};

// Anything that parses must survive a render round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse(text) {
        let canonical = render(&d);
        let again = parse(&canonical).expect("rendered description parses");
        assert_eq!(again, d);
        assert_eq!(render(&again), canonical);
    }
});
