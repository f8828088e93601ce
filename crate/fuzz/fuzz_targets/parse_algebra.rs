#![no_main]

use libfuzzer_sys::fuzz_target;
use tpalg::format::{parse_graded_algebra, serialize_algebra};

fuzz_target!(|data: &str| {
    if let Ok((alg, grading)) = parse_graded_algebra(data) {
        let text = serialize_algebra(&alg, grading.as_ref());
        let (back, back_grading) = parse_graded_algebra(&text).expect("canonical text parses");
        assert_eq!(back, alg);
        assert_eq!(back_grading, grading);
        assert_eq!(serialize_algebra(&back, back_grading.as_ref()), text);
    }
});
