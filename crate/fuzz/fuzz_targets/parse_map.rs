#![no_main]

use libfuzzer_sys::fuzz_target;
use tpalg::format::{parse_map, serialize_map};

fuzz_target!(|input: (u8, &str)| {
    let (dim, data) = input;
    let dim = usize::from(dim % 32);
    if let Ok(m) = parse_map(data, dim) {
        let text = serialize_map(&m);
        assert_eq!(parse_map(&text, dim).expect("canonical text parses"), m);
    }
});
