//! Evaluates Tr(A1 A2) = Tr(A1) Tr(A2) / d on explicit matrices, in full or on sampled pairs.

use quasi_ortho::constructions::{build_recursive, ConstructionParams};
use quasi_ortho::verify::{verify_qo_numeric, NumericOptions};

fn main() -> quasi_ortho::Result<()> {
    let spread = build_recursive(&ConstructionParams::standard(5, 1, 2)?)?;
    print!("{}", verify_qo_numeric(&spread, &NumericOptions::default())?);

    let big = build_recursive(&ConstructionParams::standard(3, 1, 4)?)?;
    let opts = NumericOptions {
        sample: Some(50),
        ..NumericOptions::default()
    };
    print!("{}", verify_qo_numeric(&big, &opts)?);
    Ok(())
}
