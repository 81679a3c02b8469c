#![no_main]

use libfuzzer_sys::fuzz_target;
use rsym_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(field) = text.parse::<Field>() {
        assert_eq!(field.to_string().parse::<Field>().ok(), Some(field));
    }
    for field in [Field::Rational, Field::Prime(2), Field::Prime(7)] {
        let _ = field.parse_scalar(text);
    }
});
