#![no_main]

use libfuzzer_sys::fuzz_target;
use semigroupoid::format::parse_action_family;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(family) = parse_action_family(text) {
        // The two axiom sets must give the same verdict on any family.
        assert_eq!(family.validate_e().is_ok(), family.validate_p().is_ok());
    }
});
