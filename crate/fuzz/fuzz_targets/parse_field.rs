#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = equiwitt::io::parse_field(s) {
            // a parsed field must survive basic arithmetic
            let a = f.alpha();
            assert!(!f.in_wp(a));
            assert_eq!(f.square(f.sqrt(a)), a);
        }
    }
});
