#![no_main]

use libfuzzer_sys::fuzz_target;

// Config parsing and validation must never panic on arbitrary text; they
// either yield a validated config or an error.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = simplex_growth::config::load_config_str(text, &[]);
    }
});
