#![no_main]

use std::sync::Arc;

use equiwitt::group::standard::symmetric3;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let g = Arc::new(symmetric3());
    let _ = equiwitt::io::parse_rep(s, &g);
});
