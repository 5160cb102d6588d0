#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::{parse_document, DocConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = DocConfig::from_config_text(text) {
        let _ = parse_document("# Intro\n\nREQ-1: The door shall close.\n", &config);
    }
});
