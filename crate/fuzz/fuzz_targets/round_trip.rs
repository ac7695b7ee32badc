#![no_main]

use libfuzzer_sys::fuzz_target;
use semigroupoid::format::{parse, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(structure) = parse(text) {
        let canonical = to_json(&structure);
        assert_eq!(parse(&canonical).expect("canonical output parses"), structure);
    }
});
