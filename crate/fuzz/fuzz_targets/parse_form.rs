#![no_main]

use libfuzzer_sys::fuzz_target;

// Parsing only; building the catalog for arbitrary groups is too slow here.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = equiwitt::io::parse_form(s);
    }
});
