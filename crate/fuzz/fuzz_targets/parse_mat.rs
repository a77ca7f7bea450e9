#![no_main]

use equiwitt::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let f = FieldSpec::gf(2);
    if let Ok(m) = equiwitt::io::parse_mat(s, &f) {
        let back = serde_json::to_string(&equiwitt::io::mat_to_json(&m)).unwrap();
        assert_eq!(equiwitt::io::parse_mat(&back, &f).unwrap(), m);
        let _ = m.rank();
    }
});
