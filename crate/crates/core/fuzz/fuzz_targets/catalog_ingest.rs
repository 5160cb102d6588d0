#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::catalog::ingest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(catalog) = ingest(text) {
        assert!(catalog.validate().is_empty());
        let _ = reqlint::analytics::accuracy_distribution(&catalog);
    }
});
