#![no_main]

use libfuzzer_sys::fuzz_target;
use rsym_core::parse::parse_linear_combination;
use rsym_core::pn::Pn;
use rsym_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let p = Pn::new(2, Field::Prime(3)).expect("P2");
    if let Ok(x) = p.algebra().parse_element(text) {
        // formatting and reparsing must give the same element back
        let again = p.algebra().parse_element(&p.algebra().format_element(&x)).expect("round trip");
        assert_eq!(x, again);
    }
    let _ = parse_linear_combination(Field::Rational, text);
});
