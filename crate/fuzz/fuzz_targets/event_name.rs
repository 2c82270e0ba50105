#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::graph::{EventSpec, Graph};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = EventSpec::parse(s) {
        let _ = q.holds(&Graph::complete(5));
        let _ = q.holds(&Graph::empty(1));
    }
});
