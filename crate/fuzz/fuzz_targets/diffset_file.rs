#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitcode::{diffset, text};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = text::parse_diffset_file(s) else {
        return;
    };
    assert_eq!(
        text::parse_diffset_file(&text::format_diffset_file(&file)).unwrap(),
        file
    );
    if file.v > 1 << 12 {
        return;
    }
    match file.n_sub {
        None => {
            if let Ok(v) = diffset::verify_ds(&file.residues, file.v) {
                assert!(v.counting_identity_holds());
            }
        }
        Some(n) => {
            if let Ok(v) = diffset::verify_rds(&file.residues, file.v, n) {
                assert!(v.counting_identity_holds());
            }
        }
    }
});
