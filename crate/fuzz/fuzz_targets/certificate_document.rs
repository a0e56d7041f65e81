#![no_main]

use framing_core::document::{parse_certificate, render_certificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(cert) = parse_certificate(data) {
        let text = render_certificate(&cert);
        let back = parse_certificate(text.as_bytes()).expect("rendered certificate parses");
        assert_eq!(back, cert);
    }
});
