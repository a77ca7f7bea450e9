#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = equiwitt::io::parse_quadform(s) {
        if q.is_nondegenerate() {
            let split =
                equiwitt::quadspace::witt_decompose(&q).expect("non-degenerate forms split");
            assert_eq!(
                2 * split.hyperbolic_count + 2 * (split.residue as usize),
                q.dim()
            );
        }
    }
});
