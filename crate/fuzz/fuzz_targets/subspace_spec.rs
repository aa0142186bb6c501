#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use orbitcode::{text, FieldContext};

fn primitive(p: u64, n: usize) -> FieldContext {
    FieldContext::new(p, n, &FieldContext::find_primitive_modulus(p, n).unwrap()).unwrap()
}

fn field() -> &'static Arc<FieldContext> {
    static CTX: OnceLock<Arc<FieldContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(primitive(2, 6)))
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = text::parse_subspace_spec(s) else {
        return;
    };
    let ctx = field();
    if let Ok(u) = text::resolve_subspace(ctx, &spec) {
        assert!(u.dim() <= ctx.n());
        let again = text::subspace(ctx, &text::format_subspace(&u)).unwrap();
        assert_eq!(again, u);
    }
});
