//! Independent checks on constructed families.
//!
//! Two Weyl-span subalgebras satisfy `Tr(A_1 A_2) = Tr(A_1)Tr(A_2)/Tr(I)` for
//! all elements exactly when their index subspaces meet only in zero, so the
//! symbolic checks are exact computations over Z_p. The numeric checks
//! evaluate the trace condition literally on synthesized matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{
    build_masa_spread, build_recursive, Construction, MemberKind, SpreadFamily,
};
use crate::error::{invalid, Error, Result};
use crate::phase_space::{
    pairwise_trivial_labeled, partition_labeled, Subspace, SubspaceKind, SPAN_LIMIT,
};
pub use crate::report::{Failure, VerificationReport};
use crate::weyl::{synthesize_with_limit, DenseMatrix, SparseView, WeylMonomial};
use crate::zp;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Above this matrix dimension numeric pair checks are sampled by default.
pub const FULL_PAIRWISE_DIM: u64 = 81;
pub const DEFAULT_SAMPLE_PAIRS: usize = 200;
pub const DEFAULT_SEED: u64 = 0x5eed_f9a1;
const SPECTRAL_GAP: f64 = 1e-6;
const EIGEN_RETRIES: usize = 32;

/// `N_{(k,n)} = (p^{2kn} − 1) / (p^{2k} − 1)` in exact arithmetic.
pub fn expected_count(p: u32, k: usize, n: usize) -> Result<u128> {
    if p < 3 || !zp::is_prime(p as u64) {
        return Err(invalid("p must be an odd prime"));
    }
    if k == 0 || n == 0 {
        return Err(invalid("k and n must be at least 1"));
    }
    let q2 = (p as u128)
        .checked_pow(2 * k as u32)
        .ok_or_else(|| invalid("p^{2k} overflows"))?;
    let top = q2
        .checked_pow(n as u32)
        .ok_or_else(|| invalid("p^{2kn} overflows"))?;
    let (num, den) = (top - 1, q2 - 1);
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// `N_{(k,n−2)} + N_{(k,2)} + (p^{2k}−1) N_{(k,2)} N_{(k,n−2)} = N_{(k,n)}`, for n ≥ 3.
pub fn recursion_identity_holds(p: u32, k: usize, n: usize) -> Result<bool> {
    if n < 3 {
        return Err(invalid("the recursion starts at n = 3"));
    }
    let q2 = (p as u128).pow(2 * k as u32);
    let left = expected_count(p, k, n - 2)?;
    let right = expected_count(p, k, 2)?;
    Ok(left + right + (q2 - 1) * right * left == expected_count(p, k, n)?)
}

/// Pairwise trivial intersection, member classification and (when the
/// construction promises one) the member count.
pub fn verify_qo_symbolic(family: &SpreadFamily) -> VerificationReport {
    let labels = family.labels();
    let subspaces = family.subspaces();
    let mut report = pairwise_trivial_labeled(&labels, &subspaces);
    report.name = "symbolic quasi-orthogonality".into();
    let k = family.params.k();
    for m in &family.members {
        report.checks_run += 1;
        let cl = m.subspace.classify();
        let (want, what) = match m.kind {
            MemberKind::MatrixAlgebra => (SubspaceKind::Nondegenerate, "nondegenerate"),
            MemberKind::Masa => (SubspaceKind::Isotropic, "isotropic"),
        };
        if cl.kind != want || cl.dim != 2 * k {
            report.fail(
                vec![m.label.clone()],
                format!(
                    "expected {what} of dimension {}, found {:?} of dimension {} (Gram rank {})",
                    2 * k,
                    cl.kind,
                    cl.dim,
                    cl.gram_rank
                ),
            );
        }
    }
    if let Some(claimed) = family.claimed_count() {
        report.checks_run += 1;
        report.set_counts(family.len() as u64, claimed as u64);
        if family.len() as u128 != claimed {
            report.fail(
                vec![],
                format!("family has {} members, expected {claimed}", family.len()),
            );
        }
    }
    report
}

/// Exact partition check over the whole ambient, for enumerable ambients.
pub fn verify_partition(family: &SpreadFamily) -> VerificationReport {
    partition_labeled(&family.labels(), &family.subspaces())
}

/// Rebuilds the family from its recorded parameters and compares every
/// member's label, kind and generator rows.
pub fn verify_construction_consistency(family: &SpreadFamily) -> VerificationReport {
    let mut report = VerificationReport::new("construction consistency");
    let rebuilt = match family.construction {
        Construction::Recursive => build_recursive(&family.params),
        Construction::MasaSpread => build_masa_spread(&family.params),
        Construction::Custom => return report,
    };
    let rebuilt = match rebuilt {
        Ok(r) => r,
        Err(e) => {
            report.fail(vec![], format!("cannot rebuild: {e}"));
            return report;
        }
    };
    if rebuilt.len() != family.len() {
        report.fail(
            vec![],
            format!("{} members recorded, construction gives {}", family.len(), rebuilt.len()),
        );
    }
    for (got, want) in family.members.iter().zip(&rebuilt.members) {
        report.checks_run += 1;
        let rows = |s: &Subspace| -> Vec<Vec<u32>> {
            s.generators().iter().map(|g| g.coords().to_vec()).collect()
        };
        if got.label != want.label || got.kind != want.kind {
            report.fail(
                vec![got.label.clone()],
                format!("expected member {} ({:?})", want.label, want.kind),
            );
        } else if rows(&got.subspace) != rows(&want.subspace) {
            report.fail(vec![got.label.clone()], "generator rows differ from the construction");
        }
    }
    report
}

/// Everything exact: symbolic quasi-orthogonality, the partition (when the
/// ambient is enumerable and the family claims to be a spread), and
/// consistency with the recorded construction.
pub fn verify_family_symbolic(family: &SpreadFamily) -> VerificationReport {
    let mut report = verify_qo_symbolic(family);
    let ambient = (family.params.p() as u128).pow(2 * family.params.factors() as u32);
    if family.construction != Construction::Custom && ambient <= SPAN_LIMIT {
        report = report.merge(verify_partition(family));
    }
    report.merge(verify_construction_consistency(family))
}

#[derive(Clone, Debug)]
pub struct NumericOptions {
    pub tol: f64,
    /// Number of random member pairs; `None` means all pairs up to
    /// [`FULL_PAIRWISE_DIM`] and [`DEFAULT_SAMPLE_PAIRS`] above it.
    pub sample: Option<usize>,
    pub max_dim: u64,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            tol: DEFAULT_TOLERANCE,
            sample: None,
            max_dim: crate::weyl::DEFAULT_DIM_LIMIT,
            seed: DEFAULT_SEED,
        }
    }
}

impl NumericOptions {
    pub fn with_tol(tol: f64) -> Self {
        NumericOptions {
            tol,
            ..Self::default()
        }
    }
}

/// Sparse views of the non-identity basis matrices of a subspace.
fn member_matrices(s: &Subspace, max_dim: u64) -> Result<Vec<SparseView>> {
    s.points()?
        .into_iter()
        .filter(|u| !u.is_zero())
        .map(|u| synthesize_with_limit(&WeylMonomial::from_point(u), max_dim).map(|m| SparseView::new(&m)))
        .collect()
}

/// `max |Tr(A B) − Tr(A)Tr(B)/d|` over all `A` in `left`, `B` in `right`.
pub fn qo_residual(left: &[SparseView], right: &[SparseView]) -> f64 {
    let Some(d) = left.first().map(SparseView::dim) else {
        return 0.0;
    };
    let right_traces: Vec<Complex64> = right.iter().map(SparseView::trace).collect();
    left.iter()
        .map(|a| {
            let ta = a.trace();
            right
                .iter()
                .zip(&right_traces)
                .map(|(b, tb)| (a.trace_product(b) - ta * tb / d as f64).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn ambient_dim(family: &SpreadFamily, max_dim: u64) -> Result<u64> {
    let d = (family.params.p() as u128).pow(family.params.factors() as u32);
    if d > max_dim as u128 {
        return Err(Error::Oversize {
            what: "matrix dimension",
            size: d,
            limit: max_dim as u128,
        });
    }
    Ok(d as u64)
}

fn choose_pairs(n: usize, sample_size: Option<usize>, seed: u64) -> Vec<(usize, usize)> {
    let all = n * n.saturating_sub(1) / 2;
    let pair_at = |mut idx: usize| {
        let mut i = 0;
        while idx >= n - 1 - i {
            idx -= n - 1 - i;
            i += 1;
        }
        (i, i + 1 + idx)
    };
    match sample_size {
        Some(s) if s < all => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<usize> = sample(&mut rng, all, s).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(pair_at).collect()
        }
        _ => (0..all).map(pair_at).collect(),
    }
}

/// The trace condition evaluated on every pair of non-identity basis
/// matrices of every (or every sampled) pair of members.
pub fn verify_qo_numeric(family: &SpreadFamily, opts: &NumericOptions) -> Result<VerificationReport> {
    if !(opts.tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let d = ambient_dim(family, opts.max_dim)?;
    let sample_size = opts
        .sample
        .or((d > FULL_PAIRWISE_DIM).then_some(DEFAULT_SAMPLE_PAIRS));
    let pairs = choose_pairs(family.len(), sample_size, opts.seed);
    let mut needed: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    needed.sort_unstable();
    needed.dedup();
    let mut cache: Vec<Option<Vec<SparseView>>> = vec![None; family.len()];
    let built: Vec<(usize, Vec<SparseView>)> = needed
        .par_iter()
        .map(|&i| member_matrices(&family.members[i].subspace, opts.max_dim).map(|m| (i, m)))
        .collect::<Result<_>>()?;
    for (i, m) in built {
        cache[i] = Some(m);
    }

    let name = match sample_size {
        Some(s) if s < family.len() * family.len().saturating_sub(1) / 2 => {
            format!("numeric trace condition ({} sampled pairs, dim {d})", pairs.len())
        }
        _ => format!("numeric trace condition (all pairs, dim {d})"),
    };
    let mut report = VerificationReport::numeric(name, opts.tol);
    let results: Vec<(usize, usize, f64, u64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let a = cache[i].as_ref().expect("built");
            let b = cache[j].as_ref().expect("built");
            (i, j, qo_residual(a, b), (a.len() * b.len()) as u64)
        })
        .collect();
    for (i, j, r, checks) in results {
        report.checks_run += checks;
        report.record_residual(r);
        if !(r <= opts.tol) {
            report.fail(
                vec![family.members[i].label.clone(), family.members[j].label.clone()],
                format!("trace residual {r:.3e}"),
            );
        }
    }
    Ok(report)
}

/// Certifies that the span of a subspace is a full matrix algebra
/// `M_{p^{dim/2}}`: symbolically by a nondegenerate Gram matrix, and
/// numerically (optionally) by the rank of the trace Gram matrix of its
/// `p^{dim}` basis matrices together with a one-dimensional center.
pub fn verify_full_algebra(s: &Subspace, numeric: bool, tol: f64) -> Result<VerificationReport> {
    let mut report = if numeric {
        VerificationReport::numeric("full matrix algebra", tol)
    } else {
        VerificationReport::new("full matrix algebra")
    };
    let cl = s.classify();
    report.checks_run += 1;
    if cl.kind != SubspaceKind::Nondegenerate || !cl.dim.is_multiple_of(2) || cl.dim == 0 {
        report.fail(
            vec![],
            format!(
                "classification {:?} with Gram rank {} on dimension {}",
                cl.kind, cl.gram_rank, cl.dim
            ),
        );
    }
    if numeric {
        let limit = crate::weyl::DEFAULT_DIM_LIMIT;
        let d = (s.p() as u128).pow(s.factors() as u32);
        if d > limit as u128 {
            return Err(Error::Oversize {
                what: "matrix dimension",
                size: d,
                limit: limit as u128,
            });
        }
        let mats: Vec<SparseView> = s
            .points()?
            .into_iter()
            .map(|u| synthesize_with_limit(&WeylMonomial::from_point(u), limit).map(|m| SparseView::new(&m)))
            .collect::<Result<_>>()?;
        let adjoints: Vec<SparseView> = mats.iter().map(SparseView::adjoint).collect();
        let n = mats.len();
        let gram = DMatrix::from_fn(n, n, |a, b| adjoints[a].trace_product(&mats[b]));
        report.checks_run += (n * n) as u64;
        let eig = gram.symmetric_eigen();
        let scale = d as f64;
        let rank = eig.eigenvalues.iter().filter(|&&e| e > tol * scale).count();
        // For an orthogonal Weyl basis every eigenvalue is exactly d.
        let spread = eig
            .eigenvalues
            .iter()
            .map(|&e| (e - scale).abs() / scale)
            .fold(0.0, f64::max);
        report.record_residual(spread);
        report.set_counts(rank as u64, n as u64);
        if rank != n {
            report.fail(vec![], format!("span dimension {rank}, expected {n}"));
        }
        // Basis matrices are monomials, so the center is spanned by the ones
        // commuting with every other.
        let central = mats
            .par_iter()
            .filter(|a| mats.iter().all(|b| a.mul(b).max_abs_diff(&b.mul(a)) <= tol))
            .count();
        report.checks_run += (n * n) as u64;
        if central != 1 {
            report.fail(vec![], format!("center has dimension {central}, expected 1"));
        }
    }
    Ok(report)
}

/// An orthonormal basis of `C^d`, one vector per joint eigenspace of a MASA.
#[derive(Clone, Debug)]
pub struct MubBasis {
    pub label: String,
    pub vectors: Vec<DVector<Complex64>>,
}

fn fix_phase(v: &mut DVector<Complex64>) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-9).copied() {
        let rot = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= rot;
            // keep serialized output free of negative zeros
            if x.re == 0.0 {
                x.re = 0.0;
            }
            if x.im == 0.0 {
                x.im = 0.0;
            }
        }
    }
}

fn joint_eigenbasis(
    label: &str,
    generators: &[DenseMatrix],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DVector<Complex64>>> {
    let d = generators[0].dim();
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if a.mul(b).max_abs_diff(&b.mul(a)) > 1e-9 {
                return Err(Error::NonCommuting(label.to_string()));
            }
        }
    }
    for _ in 0..EIGEN_RETRIES {
        let mut h = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
        for g in generators {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h += &g.0 * c + g.0.adjoint() * c.conj();
        }
        let eig = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let gap = order
            .windows(2)
            .map(|w| eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]])
            .fold(f64::INFINITY, f64::min);
        if gap < SPECTRAL_GAP {
            continue;
        }
        return Ok(order
            .into_iter()
            .map(|i| {
                let mut v: DVector<Complex64> = eig.eigenvectors.column(i).into_owned();
                let norm = v.norm();
                v /= Complex64::new(norm, 0.0);
                fix_phase(&mut v);
                v
            })
            .collect());
    }
    Err(Error::DegenerateSpectrum(label.to_string()))
}

/// Diagonalizes each MASA of the family through a random Hermitian
/// combination of its generators.
pub fn extract_mub(masas: &SpreadFamily, seed: u64) -> Result<Vec<MubBasis>> {
    let d = ambient_dim(masas, crate::weyl::DEFAULT_DIM_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    masas
        .members
        .iter()
        .map(|m| {
            if m.kind != MemberKind::Masa {
                return Err(invalid(format!("member {} is not a MASA", m.label)));
            }
            let gens = m
                .subspace
                .generators()
                .iter()
                .map(|g| synthesize_with_limit(&WeylMonomial::from_point(g.clone()), d))
                .collect::<Result<Vec<_>>>()?;
            if gens.is_empty() {
                return Err(invalid(format!("member {} has no generators", m.label)));
            }
            Ok(MubBasis {
                label: m.label.clone(),
                vectors: joint_eigenbasis(&m.label, &gens, &mut rng)?,
            })
        })
        .collect()
}

/// Orthonormality within each basis and `|⟨ξ, ζ⟩|² = 1/d` across bases.
pub fn check_mub(bases: &[MubBasis], tol: f64) -> VerificationReport {
    let mut report = VerificationReport::numeric("mutually unbiased bases", tol);
    let Some(d) = bases.first().map(|b| b.vectors.len()) else {
        return report;
    };
    for b in bases {
        let mut worst = 0.0f64;
        for (i, x) in b.vectors.iter().enumerate() {
            for (j, y) in b.vectors.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((x.dotc(y) - Complex64::new(want, 0.0)).norm());
                report.checks_run += 1;
            }
        }
        report.record_residual(worst);
        if !(worst <= tol) {
            report.fail(vec![b.label.clone()], format!("not orthonormal: residual {worst:.3e}"));
        }
    }
    let target = 1.0 / d as f64;
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i + 1..] {
            let mut worst = 0.0f64;
            for x in &a.vectors {
                for y in &b.vectors {
                    worst = worst.max((x.dotc(y).norm_sqr() - target).abs());
                    report.checks_run += 1;
                }
            }
            report.record_residual(worst);
            if !(worst <= tol) {
                report.fail(
                    vec![a.label.clone(), b.label.clone()],
                    format!("overlap deviates from 1/{d} by {worst:.3e}"),
                );
            }
        }
    }
    report
}

pub fn extract_and_check_mub(
    masas: &SpreadFamily,
    tol: f64,
) -> Result<(Vec<MubBasis>, VerificationReport)> {
    let bases = extract_mub(masas, DEFAULT_SEED)?;
    let report = check_mub(&bases, tol);
    Ok((bases, report))
}

/// Rank-one projectors `|ξ_i⟩⟨ξ_i|` of a basis, which span its MASA.
pub fn projector_algebra(basis: &MubBasis) -> Vec<SparseView> {
    basis
        .vectors
        .iter()
        .map(|v| SparseView::new(&DenseMatrix(v * v.adjoint())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_spread_2, ConstructionParams, Member};

    #[test]
    fn count_examples() {
        assert_eq!(expected_count(3, 1, 2).unwrap(), 10);
        assert_eq!(expected_count(7, 2, 1).unwrap(), 1);
        assert_eq!(expected_count(3, 1, 3).unwrap(), 91);
        assert_eq!(expected_count(3, 1, 4).unwrap(), 820);
        assert!(expected_count(2, 1, 2).is_err());
        assert!(expected_count(3, 0, 2).is_err());
        assert!(recursion_identity_holds(5, 2, 5).unwrap());
    }

    #[test]
    fn pair_indexing_covers_all_pairs() {
        let pairs = choose_pairs(5, None, 0);
        assert_eq!(pairs.len(), 10);
        assert_eq!(pairs[0], (0, 1));
        assert_eq!(pairs[9], (3, 4));
        let sampled = choose_pairs(40, Some(25), 7);
        assert_eq!(sampled.len(), 25);
        assert!(sampled.iter().all(|&(i, j)| i < j && j < 40));
        assert_eq!(sampled, choose_pairs(40, Some(25), 7));
    }

    #[test]
    fn spread_passes_symbolic_with_45_pairs() {
        let fam = build_spread_2(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
        let r = verify_qo_symbolic(&fam);
        assert!(r.passed, "{r}");
        // 45 pairs + 10 classifications + 1 count
        assert_eq!(r.checks_run, 56);
    }

    #[test]
    fn duplicated_member_fails_both_ways() {
        let mut fam = build_spread_2(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
        let dup = Member {
            label: "copy".into(),
            ..fam.members[0].clone()
        };
        fam.members = vec![fam.members[0].clone(), dup];
        fam.construction = Construction::Custom;
        let sym = verify_qo_symbolic(&fam);
        assert!(!sym.passed);
        assert_eq!(sym.failures[0].members, vec!["C[1,0]", "copy"]);
        let num = verify_qo_numeric(&fam, &NumericOptions::default()).unwrap();
        assert!(!num.passed);
        assert!((num.max_residual - 9.0).abs() < 1e-9);
    }

    #[test]
    fn full_algebra_examples() {
        let params = ConstructionParams::standard(3, 1, 2).unwrap();
        let fam = build_spread_2(&params).unwrap();
        let c10 = &fam.member("C[1,0]").unwrap().subspace;
        let r = verify_full_algebra(c10, true, DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.covered, Some(9));
        let f = &params.field;
        let c01 = crate::constructions::build_c(&params, &f.zero(), &f.one()).unwrap();
        let r = verify_full_algebra(&c01, false, DEFAULT_TOLERANCE).unwrap();
        assert!(!r.passed);
        assert!(r.failures[0].detail.contains("Isotropic"));
        let r = verify_full_algebra(&c01, true, DEFAULT_TOLERANCE).unwrap();
        assert!(r.failures.iter().any(|f| f.detail.contains("center has dimension 9")));
    }

    #[test]
    fn numeric_guard() {
        let fam = build_recursive(&ConstructionParams::standard(3, 1, 7).unwrap());
        let fam = fam.unwrap();
        assert!(matches!(
            verify_qo_numeric(&fam, &NumericOptions::default()),
            Err(Error::Oversize { .. })
        ));
    }
}
