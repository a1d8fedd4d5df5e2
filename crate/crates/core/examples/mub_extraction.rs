//! Diagonalizes the p^{2k}+1 MASAs of a Lagrangian spread into mutually unbiased bases.

use quasi_ortho::constructions::{build_masa_spread, ConstructionParams};
use quasi_ortho::verify::extract_and_check_mub;

fn main() -> quasi_ortho::Result<()> {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("p"));
    let masas = build_masa_spread(&ConstructionParams::standard(p, 1, 2)?)?;
    let (bases, report) = extract_and_check_mub(&masas, 1e-9)?;
    let d = bases[0].vectors.len();
    println!("{} bases of C^{d}", bases.len());
    let (x, y) = (&bases[0].vectors[0], &bases[1].vectors[0]);
    println!("|<x,y>|^2 = {:.12} (1/d = {:.12})", x.dotc(y).norm_sqr(), 1.0 / d as f64);
    print!("{report}");
    Ok(())
}
