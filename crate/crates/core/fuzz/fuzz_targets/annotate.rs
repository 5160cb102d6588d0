#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::Annotator;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let ann = Annotator::default().annotate_text(0, text);
    for t in &ann.tokens {
        assert!(t.span.start < t.span.end && t.span.end <= text.len());
    }
    for s in 0..ann.sentences.len() {
        let _ = ann.subject(s);
    }
});
