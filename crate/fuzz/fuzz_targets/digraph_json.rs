#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::graph::{forgetful_map, DigraphJson};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = DigraphJson::parse(s) {
        let compact = serde_json::to_string(&DigraphJson::compact(&d)).unwrap();
        assert_eq!(DigraphJson::parse(&compact).unwrap(), d);
        let g = forgetful_map(&d);
        assert!(g.edge_count() <= d.arc_count());
    }
});
