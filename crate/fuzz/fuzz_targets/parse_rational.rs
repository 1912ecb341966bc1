#![no_main]

use libfuzzer_sys::fuzz_target;

use barkit::exactnum::rational::{parse_decimal, parse_rational, to_decimal_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    if let Some(r) = parse_rational(text) {
        let rendered = r.to_string();
        assert_eq!(parse_rational(&rendered), Some(r));
    }
    if let Some(d) = parse_decimal(text) {
        // decimals always have 10-power denominators, so the decimal
        // rendering exists and round-trips
        let rendered = to_decimal_string(&d).expect("decimal denominator");
        assert_eq!(parse_decimal(&rendered), Some(d));
    }
});
