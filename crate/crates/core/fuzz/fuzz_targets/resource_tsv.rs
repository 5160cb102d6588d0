#![no_main]

use libfuzzer_sys::fuzz_target;
use reqlint::{Lexicon, Resources};

// Input is split on NUL into the four lexicon files.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = reqlint::tsv::parse_pairs(text);
    let _ = Resources::from_doc_list(text);
    let mut parts = text.splitn(4, '\0');
    let mut next = || parts.next().unwrap_or("");
    let (a, b, c, d) = (next(), next(), next(), next());
    let _ = Lexicon::from_texts(a, b, c, d);
});
