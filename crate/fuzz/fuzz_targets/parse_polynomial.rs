//! Curve parser: never panics, and accepted input survives a print/parse round trip.
//!
//! ```bash
//! cargo fuzz run parse_polynomial corpus/parse_polynomial -- -only_ascii=1
//! ```

#![no_main]

use libfuzzer_sys::fuzz_target;
use satcurve::parse_polynomial;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = parse_polynomial(s) {
            let again = parse_polynomial(&f.to_string()).expect("printed form parses");
            assert_eq!(again, f);
        }
    }
});
