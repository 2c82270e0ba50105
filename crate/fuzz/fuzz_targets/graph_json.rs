#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::graph::GraphJson;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = GraphJson::parse(s) {
        let full = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        assert_eq!(GraphJson::parse(&full).unwrap(), g);
        let compact = serde_json::to_string(&GraphJson::compact(&g)).unwrap();
        assert_eq!(GraphJson::parse(&compact).unwrap(), g);
    }
});
