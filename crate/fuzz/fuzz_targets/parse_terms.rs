#![no_main]

use libfuzzer_sys::fuzz_target;
use rsym_core::free::normal_form;
use rsym_core::parse::parse_terms;
use rsym_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for field in [Field::Rational, Field::Prime(2)] {
        if let Ok(f) = parse_terms(field, text) {
            // keep normalisation cheap; larger inputs only exercise the parser
            let _ = normal_form(&f, 6);
        }
    }
});
