#![no_main]

use bubblelab_cli::selector::{parse_location, parse_point, ModelSelector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = s.parse::<ModelSelector>() {
        // accepted selectors print back to themselves
        assert_eq!(m.to_string(), s);
        assert_eq!(m.to_string().parse::<ModelSelector>().unwrap(), m);
    }
    let _ = parse_location(s);
    let _ = parse_point(s);
});
