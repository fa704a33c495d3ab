#![no_main]

use libfuzzer_sys::fuzz_target;
use noloop_cli::report::ReportDocument;

// Decoding then encoding reaches a fixed point after one step.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = ReportDocument::from_json(text) {
        let json = doc.to_json();
        let again = ReportDocument::from_json(&json).expect("encoded report decodes");
        assert_eq!(again.to_json(), json);
    }
});
