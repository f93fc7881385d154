#![no_main]

use libfuzzer_sys::fuzz_target;
use qsdesign::arith::{parse_int, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(n) = parse_int(text) {
        assert_eq!(parse_int(&n.to_string()).expect("round trip"), n);
    }
    if let Ok(q) = parse_rational(text) {
        assert_eq!(parse_rational(&q.to_string()).expect("round trip"), q);
    }
});
