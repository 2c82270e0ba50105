#![no_main]

use libfuzzer_sys::fuzz_target;
use undirectify::models::ModelSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(spec) = ModelSpec::from_json(s) else { return };
    if spec.validate().is_ok() && spec.n <= 64 {
        // realize types and parameters without sampling edges
        let v = spec.vertices(spec.seed.unwrap_or(0));
        if spec.class.is_selection() {
            let _ = spec.selection_mass(&v);
        } else {
            let _ = spec.arc_probabilities(&v);
        }
    }
});
