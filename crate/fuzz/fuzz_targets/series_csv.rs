#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify_cli::parse_series;

fuzz_target!(|data: &[u8]| {
    let _ = parse_series(data);
});
