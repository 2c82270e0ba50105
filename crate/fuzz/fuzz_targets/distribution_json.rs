#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::exact::{phi_pushforward, GraphDistribution};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = GraphDistribution::from_json(s) {
        let again = GraphDistribution::from_json(&d.to_json()).unwrap();
        assert_eq!(again.pmf(), d.pmf());
        if let Ok(g) = phi_pushforward(&d) {
            assert!((g.total() - d.total()).abs() <= 1e-9);
        }
    }
});
