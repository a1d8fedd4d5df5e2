//! Writes a family to TOML, reads it back, and shows the first member record.

use quasi_ortho::constructions::{build_recursive, ConstructionParams};
use quasi_ortho::family_file::FamilyFile;

fn main() -> quasi_ortho::Result<()> {
    let family = build_recursive(&ConstructionParams::standard(3, 1, 2)?)?;
    let text = FamilyFile::from_family(&family).to_toml()?;
    for line in text.lines().take(13) {
        println!("{line}");
    }
    let back = FamilyFile::from_toml(&text)?.to_family()?;
    println!("round trip equal: {}", back == family);
    Ok(())
}
