//! The ten pairwise quasi-orthogonal copies of M_3 inside M_9, with their checks.

use quasi_ortho::cli::render_example;
use quasi_ortho::constructions::{build_spread_2, ConstructionParams};
use quasi_ortho::phase_space::check_partition;
use quasi_ortho::verify::verify_qo_symbolic;

fn main() -> quasi_ortho::Result<()> {
    print!("{}", render_example()?);
    let family = build_spread_2(&ConstructionParams::standard(3, 1, 2)?)?;
    print!("{}", verify_qo_symbolic(&family));
    print!("{}", check_partition(&family.subspaces()));
    Ok(())
}
