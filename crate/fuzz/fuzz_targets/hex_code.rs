#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::graph::{parse_hex_code, to_hex_code};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(words) = parse_hex_code(s) {
        assert_eq!(parse_hex_code(&to_hex_code(&words)).unwrap(), words);
    }
});
