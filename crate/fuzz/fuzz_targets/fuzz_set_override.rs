#![no_main]

use libfuzzer_sys::fuzz_target;

// First line is a --set expression, the rest is the config document.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let (expr, cfg) = match text.split_once('\n') {
            Some(pair) => pair,
            None => (text, ""),
        };
        let _ = simplex_growth::config::load_config_str(cfg, &[expr.to_string()]);
    }
});
