use quasi_ortho::constructions::{
    build_masa_spread, build_recursive, build_spread_2, ConstructionParams, MemberKind,
};
use quasi_ortho::phase_space::{check_partition, SubspaceKind};
use quasi_ortho::verify::{expected_count, verify_full_algebra, verify_qo_symbolic};

#[test]
fn masa_spreads_partition_into_lagrangians() {
    for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let fam = build_masa_spread(&ConstructionParams::standard(p, k, 2).unwrap()).unwrap();
        assert_eq!(fam.len(), (p as usize).pow(2 * k as u32) + 1);
        for m in &fam.members {
            assert_eq!(m.kind, MemberKind::Masa);
            let cl = m.subspace.classify();
            assert_eq!((cl.kind, cl.dim), (SubspaceKind::Isotropic, 2 * k));
        }
        let r = check_partition(&fam.subspaces());
        assert!(r.passed, "{r}");
        assert!(verify_qo_symbolic(&fam).passed);
    }
}

#[test]
fn spread_members_span_full_matrix_algebras() {
    let fam = build_spread_2(&ConstructionParams::standard(3, 2, 2).unwrap()).unwrap();
    for (i, m) in fam.members.iter().enumerate() {
        // numeric Gram rank on a handful, symbolic on all
        let r = verify_full_algebra(&m.subspace, i % 20 == 0, 1e-9).unwrap();
        assert!(r.passed, "{}: {r}", m.label);
    }
}

#[test]
fn larger_field_spread_partitions() {
    let fam = build_spread_2(&ConstructionParams::standard(5, 2, 2).unwrap()).unwrap();
    assert_eq!(fam.len(), 626);
    let r = check_partition(&fam.subspaces());
    assert!(r.passed, "{r}");
}

#[test]
fn recursion_over_gf9_partitions() {
    let params = ConstructionParams::standard(3, 2, 3).unwrap();
    let fam = build_recursive(&params).unwrap();
    assert_eq!(fam.len() as u128, expected_count(3, 2, 3).unwrap());
    // an exact partition already rules out any shared nonzero point
    for m in &fam.members {
        let cl = m.subspace.classify();
        assert_eq!((cl.kind, cl.dim), (SubspaceKind::Nondegenerate, 4), "{}", m.label);
    }
    let r = check_partition(&fam.subspaces());
    assert!(r.passed, "{r}");
}

#[test]
fn recursive_labels_follow_the_three_branches() {
    let fam = build_recursive(&ConstructionParams::standard(3, 1, 3).unwrap()).unwrap();
    let labels = fam.labels();
    assert_eq!(labels[0], "L(M)");
    assert_eq!(labels[1], "R(C[1,0])");
    assert_eq!(labels[10], "R(D[inf])");
    assert_eq!(labels[11], "B[A=1|C=1|a=0,b=1]");
    assert_eq!(labels.iter().filter(|l| l.starts_with("B[")).count(), 80);
    // L(M) occupies the first factor only
    for g in fam.members[0].subspace.generators() {
        assert!(g.coords()[2..].iter().all(|&c| c == 0));
    }
}

#[test]
fn overrides_give_other_valid_spreads() {
    let standard = build_spread_2(&ConstructionParams::standard(5, 1, 2).unwrap()).unwrap();
    let other = ConstructionParams::with_overrides(5, 1, 2, None, Some(vec![3])).unwrap();
    let fam = build_spread_2(&other).unwrap();
    assert_ne!(fam.subspaces(), standard.subspaces());
    assert!(check_partition(&fam.subspaces()).passed);
    let gf9 = ConstructionParams::with_overrides(3, 2, 2, Some(vec![2, 2]), None).unwrap();
    assert!(check_partition(&build_spread_2(&gf9).unwrap().subspaces()).passed);
    assert!(ConstructionParams::with_overrides(5, 1, 2, None, Some(vec![4])).is_err());
}

#[test]
fn builds_are_deterministic() {
    let params = ConstructionParams::standard(5, 1, 3).unwrap();
    assert_eq!(build_recursive(&params).unwrap(), build_recursive(&params).unwrap());
}
