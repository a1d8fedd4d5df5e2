//! Arithmetic in GF(p^k): the default polynomial, inverses, the trace and a non-square.

use quasi_ortho::finite_field::FieldSpec;

fn main() -> quasi_ortho::Result<()> {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("p"));
    let k: usize = std::env::args().nth(2).map_or(2, |s| s.parse().expect("k"));
    let f = FieldSpec::standard(p, k)?;
    println!("GF({p}^{k}) with x^{k} + lower coefficients {:?}", f.poly());
    let t = f.basis_element(1.min(k - 1));
    println!("t = {t}, t^-1 = {}, Tr(t) = {}", f.inv(&t)?, f.trace(&t)?);
    println!("first non-square: {}", f.find_nonresidue());
    for a in f.elements().take(6) {
        println!("  {a:>6}  dual coords {:?}", f.dual_coords(&a)?);
    }
    Ok(())
}
