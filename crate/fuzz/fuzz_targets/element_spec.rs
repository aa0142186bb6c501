#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use orbitcode::{text, FieldContext};

fn primitive(p: u64, n: usize) -> FieldContext {
    FieldContext::new(p, n, &FieldContext::find_primitive_modulus(p, n).unwrap()).unwrap()
}

fn field() -> &'static FieldContext {
    static CTX: OnceLock<FieldContext> = OnceLock::new();
    CTX.get_or_init(|| primitive(3, 4))
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = text::parse_element_spec(s) else {
        return;
    };
    let ctx = field();
    if let Ok(x) = text::resolve_element(ctx, &spec) {
        let again = text::element(ctx, &text::format_element(&x)).unwrap();
        assert_eq!(again, x);
    }
});
