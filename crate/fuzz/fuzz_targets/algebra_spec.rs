#![no_main]

use libfuzzer_sys::fuzz_target;
use rsym_core::identity::check_variety;
use rsym_core::spec_file::{algebra_from_json, algebra_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(alg) = algebra_from_json(text) else {
        return;
    };
    let again = algebra_from_json(&algebra_to_json(&alg)).expect("emitted spec parses");
    assert_eq!(algebra_to_json(&alg), algebra_to_json(&again));
    if alg.dim() <= 6 {
        let _ = check_variety(&alg);
    }
});
