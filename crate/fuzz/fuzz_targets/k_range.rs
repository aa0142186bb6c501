#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitcode::text;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text::parse_range(s) {
        assert!(r.start() <= r.end());
    }
});
