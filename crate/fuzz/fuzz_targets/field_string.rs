#![no_main]

use libfuzzer_sys::fuzz_target;
use starfold::cli::input::parse_field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(field) = parse_field(text) {
        assert_eq!(parse_field(&field.to_string()), Ok(field));
    }
});
