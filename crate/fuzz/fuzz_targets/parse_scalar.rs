#![no_main]

use libfuzzer_sys::fuzz_target;
use tpalg::{format_scalar, parse_scalar};

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_scalar(data) {
        let text = format_scalar(&s);
        assert_eq!(parse_scalar(&text).expect("canonical text parses"), s);
    }
});
