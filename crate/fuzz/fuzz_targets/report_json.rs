#![no_main]

use libfuzzer_sys::fuzz_target;
use starfold::cli::report::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(report) = serde_json::from_slice::<Report>(data) else { return };
    let text = report.to_json();
    let again: Report = serde_json::from_str(&text).expect("own output parses");
    assert_eq!(again.to_json(), text);
});
