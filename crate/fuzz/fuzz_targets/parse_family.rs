#![no_main]

use libfuzzer_sys::fuzz_target;
use satcurve::parse_family;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = parse_family(s) {
            assert_eq!(parse_family(&f.to_string()).expect("printed form parses"), f);
        }
    }
});
