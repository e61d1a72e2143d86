#![no_main]

use libfuzzer_sys::fuzz_target;
use simplex_growth::io::{RunManifest, UrnOutput};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = serde_json::from_str::<UrnOutput>(text);
        let _ = serde_json::from_str::<RunManifest>(text);
    }
});
