#![no_main]

use libfuzzer_sys::fuzz_target;
use qsdesign::srg::{parse_matrix, to_matrix_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_matrix(text) {
        let again = parse_matrix(&to_matrix_text(&g)).expect("printer output parses");
        assert_eq!(g, again);
    }
});
