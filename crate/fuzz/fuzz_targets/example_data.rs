#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitcode::verify::examples;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    // Parsing only: building the field would be unbounded work.
    let _ = examples::parse_example_data(s);
});
