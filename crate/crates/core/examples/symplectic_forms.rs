//! The coordinate map GF(p^k)^4 -> Z_p^{4k} carries the traced field form to the Z_p form.

use quasi_ortho::finite_field::FieldSpec;
use quasi_ortho::phase_space::{gf_symplectic, pi1, symplectic_product, Form, GFPhasePoint};

fn main() -> quasi_ortho::Result<()> {
    let f = FieldSpec::standard(3, 2)?;
    let e = |i| f.from_index(i).unwrap();
    let a = GFPhasePoint::new(&f, [e(1), e(4), e(0), e(7)])?;
    let b = GFPhasePoint::new(&f, [e(3), e(2), e(5), e(8)])?;
    let (ua, ub) = (pi1(&f, &a)?, pi1(&f, &b)?);
    println!("pi1(a) = {:?}", ua.coords());
    println!("pi1(b) = {:?}", ub.coords());
    let field_form = gf_symplectic(&f, &a, &b, Form::Full)?;
    println!("a∘b = {field_form}, Tr(a∘b) = {}", f.trace(&field_form)?);
    println!("pi1(a)∘pi1(b) = {}", symplectic_product(&ua, &ub)?);
    Ok(())
}
