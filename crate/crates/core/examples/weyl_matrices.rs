//! Weyl monomials: symbolic products with phases, and their explicit matrices.

use quasi_ortho::phase_space::PhasePoint;
use quasi_ortho::weyl::{commutation_phase, synthesize, weyl_mul, WeylMonomial};

fn main() -> quasi_ortho::Result<()> {
    let s = WeylMonomial::from_point(PhasePoint::new(3, vec![1, 0])?);
    let w = WeylMonomial::from_point(PhasePoint::new(3, vec![0, 1])?);
    println!("S·W = {}", weyl_mul(&s, &w)?);
    println!("W·S = {}", weyl_mul(&w, &s)?);
    println!("S W = λ^{} W S", commutation_phase(&s.point, &w.point)?);

    let x = WeylMonomial::from_point(PhasePoint::new(3, vec![1, 2, 0, 1])?);
    let m = synthesize(&x)?;
    println!("{x} is {0}x{0}; nonzero entries:", m.dim());
    for j in 0..m.dim() {
        let i = (0..m.dim()).find(|&i| m.get(i, j).norm() > 0.5).expect("monomial column");
        let z = m.get(i, j);
        println!("  ({i},{j}) = {:+.3}{:+.3}i", z.re, z.im);
    }
    Ok(())
}
