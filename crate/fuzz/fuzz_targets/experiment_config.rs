#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::montecarlo::{ExperimentConfig, Suite};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ExperimentConfig::from_json(s) {
        for suite in Suite::ALL {
            let _ = cfg.validate(suite);
        }
        let back = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&back).unwrap(), cfg);
    }
});
