use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasi_ortho::constructions::{
    build_masa_spread, Construction, ConstructionParams, Member, MemberKind, SpreadFamily,
};
use quasi_ortho::phase_space::{PhasePoint, Subspace};
use quasi_ortho::verify::{
    check_mub, extract_and_check_mub, extract_mub, projector_algebra, qo_residual,
    verify_qo_numeric, verify_qo_symbolic, NumericOptions, DEFAULT_SEED,
};
use quasi_ortho::weyl::{synthesize, DenseMatrix, WeylMonomial};

fn random_subspace(rng: &mut ChaCha8Rng, p: u32, factors: usize, gens: usize) -> Subspace {
    let pts = (0..gens)
        .map(|_| PhasePoint::new(p, (0..2 * factors).map(|_| rng.random_range(0..p)).collect()).unwrap())
        .collect();
    Subspace::new(p, factors, pts).unwrap()
}

/// Largest trace-condition residual over dense matrices, computed directly.
fn dense_residual(a: &Subspace, b: &Subspace) -> f64 {
    let mats = |s: &Subspace| -> Vec<DenseMatrix> {
        s.points()
            .unwrap()
            .into_iter()
            .filter(|u| !u.is_zero())
            .map(|u| synthesize(&WeylMonomial::from_point(u)).unwrap())
            .collect()
    };
    let (ma, mb) = (mats(a), mats(b));
    let d = ma.first().map_or(1, DenseMatrix::dim) as f64;
    let mut worst = 0.0f64;
    for x in &ma {
        for y in &mb {
            let r = x.mul(y).trace() - x.trace() * y.trace() / d;
            worst = worst.max(r.norm());
        }
    }
    worst
}

#[test]
fn symbolic_and_numeric_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut trivial, mut overlapping) = (0, 0);
    for _ in 0..100 {
        let (ga, gb) = (rng.random_range(1..3), rng.random_range(1..3));
        let a = random_subspace(&mut rng, 3, 2, ga);
        let b = random_subspace(&mut rng, 3, 2, gb);
        let meets = a.common_point(&b).unwrap().is_some();
        let residual = dense_residual(&a, &b);
        if meets {
            overlapping += 1;
            assert!(residual > 1.0, "shared point but residual {residual}");
        } else {
            trivial += 1;
            assert!(residual < 1e-9, "trivial meet but residual {residual}");
        }
        let family = SpreadFamily {
            params: ConstructionParams::standard(3, 1, 2).unwrap(),
            construction: Construction::Custom,
            members: vec![
                Member { label: "a".into(), kind: MemberKind::MatrixAlgebra, subspace: a },
                Member { label: "b".into(), kind: MemberKind::MatrixAlgebra, subspace: b },
            ],
        };
        let symbolic_ok = verify_qo_symbolic(&family).failures.iter().all(|f| f.members.len() != 2);
        assert_eq!(symbolic_ok, !meets);
        assert_eq!(verify_qo_numeric(&family, &NumericOptions::default()).unwrap().passed, !meets);
    }
    assert!(trivial > 10 && overlapping > 10, "{trivial} / {overlapping}");
}

#[test]
fn mub_projectors_are_quasi_orthogonal() {
    let masas = build_masa_spread(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
    let (bases, report) = extract_and_check_mub(&masas, 1e-9).unwrap();
    assert!(report.passed);
    let algebras: Vec<_> = bases.iter().map(projector_algebra).collect();
    for (i, a) in algebras.iter().enumerate() {
        for b in &algebras[i + 1..] {
            assert!(qo_residual(a, b) < 1e-9);
        }
    }
    // a projector algebra is not quasi-orthogonal to itself
    assert!(qo_residual(&algebras[0], &algebras[0]) > 0.5);
}

#[test]
fn extracted_vectors_are_joint_eigenvectors() {
    let masas = build_masa_spread(&ConstructionParams::standard(5, 1, 2).unwrap()).unwrap();
    let bases = extract_mub(&masas, DEFAULT_SEED).unwrap();
    for (m, b) in masas.members.iter().zip(&bases) {
        for g in m.subspace.generators() {
            let u = synthesize(&WeylMonomial::from_point(g.clone())).unwrap();
            for v in &b.vectors {
                let uv = &u.0 * v;
                let eig: Complex64 = v.dotc(&uv);
                assert!((uv - v * eig).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn tampered_basis_fails_the_mub_check() {
    let masas = build_masa_spread(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
    let mut bases = extract_mub(&masas, DEFAULT_SEED).unwrap();
    bases[1] = bases[0].clone();
    let r = check_mub(&bases, 1e-9);
    assert!(!r.passed);
    assert_eq!(r.failures[0].members, vec!["line[0]".to_string(), "line[0]".to_string()]);
}

#[test]
fn sampled_numeric_mode_is_seeded() {
    let fam = quasi_ortho::build_recursive(&ConstructionParams::standard(3, 1, 3).unwrap()).unwrap();
    let opts = NumericOptions { sample: Some(30), ..NumericOptions::default() };
    let a = verify_qo_numeric(&fam, &opts).unwrap();
    let b = verify_qo_numeric(&fam, &opts).unwrap();
    assert!(a.passed);
    assert_eq!(a, b);
    assert!(a.name.contains("30 sampled pairs"));
}
