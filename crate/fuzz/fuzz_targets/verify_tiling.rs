#![no_main]

use libfuzzer_sys::fuzz_target;

use barkit::formats::parse_instance;
use barkit::geometry::verify_tiling_capped;

// Instances carrying a tiling block drive the verifier: it may accept,
// reject, or report an error, but never panic or blow the cell cap.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 14 {
        return;
    }
    let Ok(instance) = parse_instance(text) else { return };
    let Some(Ok(dissection)) = instance.tiling_dissection() else { return };
    let _ = verify_tiling_capped(&dissection, 1 << 12);
});
