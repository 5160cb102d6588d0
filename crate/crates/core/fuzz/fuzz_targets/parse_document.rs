#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::{parse_document, DocConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let doc = parse_document(text, &DocConfig::default()).expect("default config is valid");
    for block in &doc.blocks {
        assert!(block.span.end <= text.len());
        assert_eq!(&text[block.span.start..block.span.end], block.text);
    }
});
