//! A nondegenerate subspace spans a full matrix algebra; an isotropic one does not.

use quasi_ortho::constructions::{build_c, build_d_infinity, ConstructionParams};
use quasi_ortho::verify::verify_full_algebra;

fn main() -> quasi_ortho::Result<()> {
    let params = ConstructionParams::standard(3, 1, 2)?;
    let f = &params.field;
    let d_inf = build_d_infinity(&params);
    print!("D_inf: {}", verify_full_algebra(&d_inf, true, 1e-9)?);
    let c01 = build_c(&params, &f.zero(), &f.one())?;
    print!("C_(0,1): {}", verify_full_algebra(&c01, true, 1e-9)?);
    Ok(())
}
