#![no_main]

use libfuzzer_sys::fuzz_target;
use simplex_growth::io::{trace_from_csv, trace_to_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(trace) = trace_from_csv(text) {
            let again = trace_from_csv(&trace_to_csv(&trace)).expect("roundtrip parses");
            assert_eq!(trace.len(), again.len());
            for (a, b) in trace.iter().zip(again.iter()) {
                assert_eq!(a.0, b.0);
                assert_eq!(a.1.to_bits(), b.1.to_bits());
            }
        }
    }
});
