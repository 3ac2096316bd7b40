#![no_main]

use bubblelab::algebra::ExactPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    if let Ok(p) = s.parse::<ExactPoly>() {
        let q = p.to_string().parse::<ExactPoly>().expect("display output parses");
        assert_eq!(p, q);
    }
});
