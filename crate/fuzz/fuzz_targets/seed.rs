#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify_cli::parse_seed;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_seed(s) {
        assert_eq!(parse_seed(&x.to_string()), Ok(x));
        assert_eq!(parse_seed(&format!("{x:#x}")), Ok(x));
    }
});
