#![no_main]

use libfuzzer_sys::fuzz_target;
use tpalg::format::{parse_product, serialize_product};

fuzz_target!(|input: (u8, &str)| {
    let (dim, data) = input;
    let dim = usize::from(dim % 32);
    if let Ok(p) = parse_product(data, dim) {
        let text = serialize_product(&p);
        assert_eq!(parse_product(&text, dim).expect("canonical text parses"), p);
    }
});
