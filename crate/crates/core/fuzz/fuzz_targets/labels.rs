#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::analytics::{align_labels, parse_labels, weighted_kappa, Scheme};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(labels) = parse_labels(text) {
        if let Ok((a, b)) = align_labels(&labels, &labels) {
            if let Ok(r) = weighted_kappa(&a, &b, Scheme::Linear) {
                assert_eq!(r.kappa, 1.0);
            }
        }
    }
});
