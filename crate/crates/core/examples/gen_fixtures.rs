//! Writes the reference catalogs and documents to `crates/core/fixtures/`.

use std::path::PathBuf;

use reqlint::fixtures;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    for (name, contents) in fixtures::generated_files() {
        std::fs::write(dir.join(name), contents)?;
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}
