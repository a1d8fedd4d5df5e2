//! Builds N = (p^{2kn}-1)/(p^{2k}-1) quasi-orthogonal copies of M_{p^k} in M_{p^{kn}}.
//!
//! `cargo run --example recursive_family -- 3 1 3`

use quasi_ortho::constructions::{build_recursive, ConstructionParams};
use quasi_ortho::verify::{expected_count, verify_family_symbolic};

fn main() -> quasi_ortho::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(3) as u32;
    let k = args.next().unwrap_or(1) as usize;
    let n = args.next().unwrap_or(3) as usize;
    let family = build_recursive(&ConstructionParams::standard(p, k, n)?)?;
    println!("{} members (expected {})", family.len(), expected_count(p, k, n)?);
    for label in family.labels().iter().take(4) {
        println!("  {label}");
    }
    println!("  ...");
    print!("{}", verify_family_symbolic(&family));
    Ok(())
}
