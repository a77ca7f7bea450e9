#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = equiwitt::io::parse_group(s) {
            let _ = equiwitt::group::two_torsion_characters(&g);
        }
    }
});
