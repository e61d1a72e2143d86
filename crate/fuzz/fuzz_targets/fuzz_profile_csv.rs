#![no_main]

use libfuzzer_sys::fuzz_target;
use simplex_growth::io::{profile_from_csv, profile_to_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(profile) = profile_from_csv(text) {
            // Anything that parses must survive a write/read cycle intact.
            let again = profile_from_csv(&profile_to_csv(&profile)).expect("roundtrip parses");
            assert_eq!(profile.entries.len(), again.entries.len());
            for (a, b) in profile.entries.iter().zip(again.entries.iter()) {
                assert_eq!(a.k, b.k);
                assert_eq!(a.count.to_bits(), b.count.to_bits());
                assert_eq!(a.fraction.to_bits(), b.fraction.to_bits());
                assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
            }
        }
    }
});
