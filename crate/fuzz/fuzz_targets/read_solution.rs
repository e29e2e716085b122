#![no_main]

use ilp_ls::parser::read_solution;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = read_solution(text);
    }
});
