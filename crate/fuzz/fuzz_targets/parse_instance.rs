#![no_main]

use libfuzzer_sys::fuzz_target;

use barkit::formats::{emit_instance, parse_instance};

// The parser must never panic on arbitrary text, and accepted instances must
// survive the emit/parse round trip with idempotent canonical output.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 14 {
        return;
    }
    let Ok(instance) = parse_instance(text) else { return };
    let once = emit_instance(&instance);
    let reparsed = parse_instance(&once).expect("canonical output must re-parse");
    assert_eq!(once, emit_instance(&reparsed), "emission must be idempotent");
});
