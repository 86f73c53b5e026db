#![no_main]

use libfuzzer_sys::fuzz_target;
use satcurve::rat::parse_rat;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Some(r) = parse_rat(s) {
            assert_eq!(parse_rat(&r.to_string()), Some(r));
        }
    }
});
