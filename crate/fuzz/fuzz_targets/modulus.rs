#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitcode::{text, FieldContext};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = text::parse_modulus(s) else {
        return;
    };
    // Small degrees only: building a context tabulates discrete logs.
    if m.len() < 2 || m.len() > 7 {
        return;
    }
    for p in [2, 3, 5] {
        if let Ok(ctx) = FieldContext::new(p, m.len() - 1, &m) {
            // α itself may be 0 (modulus x) or of low order; the chosen
            // primitive element never is.
            let g = ctx.primitive_element();
            assert_eq!(ctx.order(g).unwrap(), ctx.group_order());
            assert_eq!(ctx.alpha_is_primitive(), ctx.alpha() == *g);
        }
    }
});
