#![no_main]

use libfuzzer_sys::fuzz_target;
use qsdesign::srg::{parse_graph6, srg_recognize, to_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        let again = parse_graph6(&to_graph6(&g)).expect("encoder output parses");
        assert_eq!(g, again);
        if g.order() <= 64 {
            let _ = srg_recognize(&g);
        }
    }
});
