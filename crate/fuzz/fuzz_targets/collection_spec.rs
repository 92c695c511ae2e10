#![no_main]

use libfuzzer_sys::fuzz_target;
use starfold::cli::input::parse_spec;
use starfold::linalg::{Field, Fp, Rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_spec(text) else { return };
    // keep generic-support checks cheap
    if spec.num_vars > 8 || spec.forms.len() > 12 {
        return;
    }
    if let Ok(field) = spec.field(None) {
        match field {
            Field::Rational => {
                if let Ok(c) = spec.build::<Rational>(field) {
                    assert!(c.support_size() <= spec.forms.len());
                    assert_eq!(c.nvars(), spec.num_vars);
                }
            }
            Field::Prime(_) => {
                let _ = spec.build::<Fp>(field);
            }
        }
    }
    let _ = spec.build::<Fp>(Field::Prime(32003));
});
