#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use reqlint::{fixtures, parse_document, DocConfig, Lexicon, Linter, Resources};

fn linter() -> &'static Linter {
    static L: OnceLock<Linter> = OnceLock::new();
    L.get_or_init(|| {
        let resources = Resources::from_doc_list(fixtures::DOCUMENT_LIST).unwrap();
        Linter::new(&fixtures::table1_catalog(), &resources, Lexicon::bundled()).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let doc = parse_document(text, &DocConfig::default()).unwrap();
    let report = linter().lint(&doc);
    for f in &report.findings {
        assert!(f.span.end <= doc.blocks[f.block].text.len());
    }
});
