//! Symplectic phase space over Z_p and GF(p^k).
//!
//! A [`PhasePoint`] of `Z_p^{2m}` indexes the tensor Weyl monomial
//! `S^{k_1}W^{l_1} ⊗ ... ⊗ S^{k_m}W^{l_m}` and is stored as `m` interleaved
//! `(S-exponent, W-exponent)` pairs, one per tensor factor. The alternating
//! form `u∘v = Σ_j (k_j l'_j − k'_j l_j)` vanishes exactly on commuting pairs.
//!
//! Points of `GF(p^k)^4` are pushed to `Z_p^{4k}` by [`pi1`]: the first and
//! third components are expanded in the power basis, the second and fourth in
//! its trace-dual basis, so that `Tr(a∘b) = pi1(a)∘pi1(b)`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::finite_field::{FieldSpec, GFElement};
use crate::report::VerificationReport;
use crate::zp;

/// Largest span that [`Subspace::points`] will enumerate.
pub const SPAN_LIMIT: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PhasePoint {
    p: u32,
    coords: Vec<u32>,
}

impl PhasePoint {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self> {
        if !coords.len().is_multiple_of(2) {
            return Err(invalid("phase points have an even number of coordinates"));
        }
        if coords.iter().any(|&c| c >= p) {
            return Err(invalid(format!("coordinates must lie in [0, {p})")));
        }
        Ok(PhasePoint { p, coords })
    }

    /// Reduces arbitrary integers mod p.
    pub fn from_signed(p: u32, coords: &[i64]) -> Result<Self> {
        Self::new(
            p,
            coords.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect(),
        )
    }

    pub fn zero(p: u32, factors: usize) -> Self {
        PhasePoint {
            p,
            coords: vec![0; 2 * factors],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn factors(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `(S-exponent, W-exponent)` of factor `j`.
    pub fn factor(&self, j: usize) -> (u32, u32) {
        (self.coords[2 * j], self.coords[2 * j + 1])
    }

    fn same_ambient(&self, other: &PhasePoint) -> Result<()> {
        if self.p != other.p || self.coords.len() != other.coords.len() {
            return Err(Error::AmbientMismatch {
                p: self.p,
                expected: self.coords.len(),
                got_p: other.p,
                got: other.coords.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PhasePoint) -> Result<PhasePoint> {
        self.same_ambient(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &PhasePoint) -> PhasePoint {
        PhasePoint {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| zp::add(a, b, self.p))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> PhasePoint {
        PhasePoint {
            p: self.p,
            coords: self.coords.iter().map(|&a| zp::mul(a, c % self.p, self.p)).collect(),
        }
    }

    pub fn neg(&self) -> PhasePoint {
        self.scale(self.p - 1)
    }

    /// Concatenation: `self` on the leading factors, `right` on the trailing ones.
    pub fn concat(&self, right: &PhasePoint) -> Result<PhasePoint> {
        if self.p != right.p {
            return Err(invalid("cannot concatenate points over different primes"));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&right.coords);
        Ok(PhasePoint { p: self.p, coords })
    }

    /// Mixed-radix index of the point, used for dense point tables.
    pub fn index(&self) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// Reorders a `Z_p^{4k}` point into blocked layout
    /// `(u^(1)_1..u^(1)_k, u^(2)_1..u^(2)_k, u^(3).., u^(4)..)`, where factor
    /// `i < k` carries `(u^(1)_i, u^(2)_i)` and factor `k+i` carries `(u^(3)_i, u^(4)_i)`.
    pub fn to_blocked(&self) -> Result<Vec<u32>> {
        if !self.coords.len().is_multiple_of(4) {
            return Err(invalid("blocked layout needs 4k coordinates"));
        }
        let k = self.coords.len() / 4;
        let mut out = vec![0; 4 * k];
        for i in 0..k {
            out[i] = self.coords[2 * i];
            out[k + i] = self.coords[2 * i + 1];
            out[2 * k + i] = self.coords[2 * (k + i)];
            out[3 * k + i] = self.coords[2 * (k + i) + 1];
        }
        Ok(out)
    }

    pub fn from_blocked(p: u32, blocked: &[u32]) -> Result<PhasePoint> {
        if !blocked.len().is_multiple_of(4) {
            return Err(invalid("blocked layout needs 4k coordinates"));
        }
        let k = blocked.len() / 4;
        let mut coords = vec![0; 4 * k];
        for i in 0..k {
            coords[2 * i] = blocked[i];
            coords[2 * i + 1] = blocked[k + i];
            coords[2 * (k + i)] = blocked[2 * k + i];
            coords[2 * (k + i) + 1] = blocked[3 * k + i];
        }
        PhasePoint::new(p, coords)
    }
}

/// `u∘v` summed over every tensor factor, mod p.
pub fn symplectic_product(u: &PhasePoint, v: &PhasePoint) -> Result<u32> {
    u.same_ambient(v)?;
    Ok(form_over(u, v, u.factors()))
}

/// The form restricted to the first `factors` tensor factors.
pub fn partial_symplectic_product(u: &PhasePoint, v: &PhasePoint, factors: usize) -> Result<u32> {
    u.same_ambient(v)?;
    if factors > u.factors() {
        return Err(invalid("partial form reaches past the last factor"));
    }
    Ok(form_over(u, v, factors))
}

fn form_over(u: &PhasePoint, v: &PhasePoint, factors: usize) -> u32 {
    let p = u.p;
    (0..factors).fold(0, |acc, j| {
        let (k1, l1) = u.factor(j);
        let (k2, l2) = v.factor(j);
        zp::add(acc, zp::sub(zp::mul(k1, l2, p), zp::mul(k2, l1, p), p), p)
    })
}

/// A point `(a1, a2, a3, a4)` of `GF(p^k)^4`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GFPhasePoint(pub [GFElement; 4]);

impl GFPhasePoint {
    pub fn new(field: &FieldSpec, parts: [GFElement; 4]) -> Result<Self> {
        for a in &parts {
            field.check(a)?;
        }
        Ok(GFPhasePoint(parts))
    }

    pub fn zero(field: &FieldSpec) -> Self {
        GFPhasePoint(std::array::from_fn(|_| field.zero()))
    }

    /// Componentwise multiplication by a field scalar.
    pub fn scale(&self, field: &FieldSpec, c: &GFElement) -> Result<GFPhasePoint> {
        field.check(c)?;
        let mut parts = self.0.clone();
        for a in parts.iter_mut() {
            field.check(a)?;
            *a = field.mul_unchecked(c, a);
        }
        Ok(GFPhasePoint(parts))
    }

    pub fn add(&self, field: &FieldSpec, other: &GFPhasePoint) -> Result<GFPhasePoint> {
        let mut parts = self.0.clone();
        for (a, b) in parts.iter_mut().zip(&other.0) {
            *a = field.add(a, b)?;
        }
        Ok(GFPhasePoint(parts))
    }
}

/// Which pairs of components enter the GF(p^k) form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `a1 b2 − a2 b1 + a3 b4 − a4 b3`
    Full,
    /// `a1 b2 − a2 b1` only
    Partial,
}

pub fn gf_symplectic(
    field: &FieldSpec,
    a: &GFPhasePoint,
    b: &GFPhasePoint,
    form: Form,
) -> Result<GFElement> {
    let [a1, a2, a3, a4] = &a.0;
    let [b1, b2, b3, b4] = &b.0;
    let first = field.sub(&field.mul(a1, b2)?, &field.mul(a2, b1)?)?;
    match form {
        Form::Partial => Ok(first),
        Form::Full => {
            let second = field.sub(&field.mul(a3, b4)?, &field.mul(a4, b3)?)?;
            field.add(&first, &second)
        }
    }
}

/// The Z_p-linear isomorphism `GF(p^k)^4 → Z_p^{4k}`.
///
/// Components 1 and 3 are expanded in the power basis `1, t, ..., t^{k-1}`,
/// components 2 and 4 in its trace-dual basis. Factor `i < k` receives
/// `(a1_i, a2_i)` and factor `k + i` receives `(a3_i, a4_i)`, so points of the
/// form `(·,·,0,0)` stay on the first `k` factors. The same map also satisfies
/// the partial identity `Tr(a ∘̂ b) = pi1(a) ∘̂ pi1(b)` over the first `k` factors.
pub fn pi1(field: &FieldSpec, a: &GFPhasePoint) -> Result<PhasePoint> {
    let k = field.degree();
    let [a1, a2, a3, a4] = &a.0;
    let (s1, w1) = (a1.coords().to_vec(), field.dual_coords(a2)?);
    let (s2, w2) = (a3.coords().to_vec(), field.dual_coords(a4)?);
    field.check(a1)?;
    field.check(a3)?;
    let mut coords = Vec::with_capacity(4 * k);
    for i in 0..k {
        coords.push(s1[i]);
        coords.push(w1[i]);
    }
    for i in 0..k {
        coords.push(s2[i]);
        coords.push(w2[i]);
    }
    Ok(PhasePoint {
        p: field.p(),
        coords,
    })
}

/// Inverse of [`pi1`].
pub fn pi1_inverse(field: &FieldSpec, u: &PhasePoint) -> Result<GFPhasePoint> {
    let k = field.degree();
    if u.p != field.p() || u.coords.len() != 4 * k {
        return Err(invalid("point is not in Z_p^{4k} for this field"));
    }
    let pick = |offset: usize, which: usize| -> Vec<u32> {
        (0..k).map(|i| u.coords[2 * (offset + i) + which]).collect()
    };
    Ok(GFPhasePoint([
        field.element(pick(0, 0))?,
        field.from_dual_coords(&pick(0, 1))?,
        field.element(pick(k, 0))?,
        field.from_dual_coords(&pick(k, 1))?,
    ]))
}

/// Symplectic character of a subspace, read off its Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceKind {
    /// The Gram matrix has full rank: the span is a full matrix algebra.
    Nondegenerate,
    /// The form vanishes identically: the span is commutative.
    Isotropic,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: SubspaceKind,
    pub gram_rank: usize,
    pub dim: usize,
}

/// A linear subspace of `Z_p^{2m}`.
///
/// Keeps the caller's generators (dependent ones dropped, order preserved)
/// for enumeration and serialization, and a reduced row echelon basis for
/// equality.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u32,
    factors: usize,
    generators: Vec<PhasePoint>,
    basis: Vec<Vec<u32>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.factors == other.factors && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn new(p: u32, factors: usize, generators: Vec<PhasePoint>) -> Result<Self> {
        let mut kept: Vec<PhasePoint> = Vec::with_capacity(generators.len());
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for g in generators {
            if g.p != p || g.coords.len() != 2 * factors {
                return Err(Error::AmbientMismatch {
                    p,
                    expected: 2 * factors,
                    got_p: g.p,
                    got: g.coords.len(),
                });
            }
            let mut trial = rows.clone();
            trial.push(g.coords.clone());
            let (reduced, _) = zp::rref(&trial, p);
            if reduced.len() > rows.len() {
                rows = reduced;
                kept.push(g);
            }
        }
        Ok(Subspace {
            p,
            factors,
            generators: kept,
            basis: rows,
        })
    }

    pub fn zero(p: u32, factors: usize) -> Self {
        Subspace {
            p,
            factors,
            generators: Vec::new(),
            basis: Vec::new(),
        }
    }

    /// The whole ambient, spanned by the unit vectors.
    pub fn full(p: u32, factors: usize) -> Self {
        let gens = (0..2 * factors)
            .map(|i| {
                let mut c = vec![0; 2 * factors];
                c[i] = 1;
                PhasePoint { p, coords: c }
            })
            .collect();
        Subspace::new(p, factors, gens).expect("unit vectors share the ambient")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[PhasePoint] {
        &self.generators
    }

    /// Canonical (reduced row echelon) basis rows.
    pub fn canonical_basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, u: &PhasePoint) -> bool {
        if u.p != self.p || u.coords.len() != 2 * self.factors {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(u.coords.clone());
        zp::rank(&rows, self.p) == self.basis.len()
    }

    /// Places this subspace on factors `offset..offset+self.factors` of a
    /// `total`-factor ambient, zero elsewhere.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Subspace> {
        if offset + self.factors > total {
            return Err(invalid("embedding reaches past the ambient"));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut c = vec![0; 2 * total];
                c[2 * offset..2 * (offset + self.factors)].copy_from_slice(&g.coords);
                PhasePoint { p: self.p, coords: c }
            })
            .collect();
        Subspace::new(self.p, total, gens)
    }

    /// A nonzero point shared with `other`, if any.
    pub fn common_point(&self, other: &Subspace) -> Result<Option<PhasePoint>> {
        if self.p != other.p || self.factors != other.factors {
            return Err(Error::AmbientMismatch {
                p: self.p,
                expected: 2 * self.factors,
                got_p: other.p,
                got: 2 * other.factors,
            });
        }
        Ok(zp::common_vector(&self.basis, &other.basis, self.p).map(|coords| PhasePoint {
            p: self.p,
            coords,
        }))
    }

    /// Every point of the span. Coefficients run over the kept generators
    /// with the first coefficient varying fastest.
    pub fn points(&self) -> Result<Vec<PhasePoint>> {
        let size = (self.p as u128).pow(self.dim() as u32);
        if size > SPAN_LIMIT {
            return Err(Error::Oversize {
                what: "span",
                size,
                limit: SPAN_LIMIT,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut coef = vec![0u32; self.dim()];
        for _ in 0..size {
            let mut pt = PhasePoint::zero(self.p, self.factors);
            for (c, g) in coef.iter().zip(&self.generators) {
                if *c != 0 {
                    pt = pt.add_unchecked(&g.scale(*c));
                }
            }
            out.push(pt);
            for c in coef.iter_mut() {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        Ok(out)
    }

    /// Gram matrix `G_ij = b_i∘b_j` of the kept generators.
    pub fn gram(&self) -> Vec<Vec<u32>> {
        self.generators
            .iter()
            .map(|a| self.generators.iter().map(|b| form_over(a, b, self.factors)).collect())
            .collect()
    }

    pub fn classify(&self) -> Classification {
        let gram = self.gram();
        let gram_rank = zp::rank(&gram, self.p);
        let dim = self.dim();
        let kind = if gram_rank == 0 {
            SubspaceKind::Isotropic
        } else if gram_rank == dim {
            SubspaceKind::Nondegenerate
        } else {
            SubspaceKind::Mixed
        };
        Classification {
            kind,
            gram_rank,
            dim,
        }
    }
}

/// `span_enumerate`: every point of the subspace, including zero.
pub fn span_enumerate(s: &Subspace) -> Result<Vec<PhasePoint>> {
    s.points()
}

pub fn classify_subspace(s: &Subspace) -> Classification {
    s.classify()
}

/// A basis `s_1..s_k, w_1..w_k` with `s_i∘w_j = δ_ij` and `s_i∘s_j = w_i∘w_j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub s: Vec<PhasePoint>,
    pub w: Vec<PhasePoint>,
}

impl SymplecticBasis {
    /// Checks the standard-form Gram relations.
    pub fn validate(&self) -> Result<()> {
        if self.s.len() != self.w.len() {
            return Err(Error::BasisShape("s and w halves differ in length".into()));
        }
        for (i, si) in self.s.iter().enumerate() {
            for (j, sj) in self.s.iter().enumerate() {
                if symplectic_product(si, sj)? != 0 {
                    return Err(Error::NonNormalizedBasis(format!("s{i}∘s{j} ≠ 0")));
                }
            }
            for (j, wj) in self.w.iter().enumerate() {
                if symplectic_product(si, wj)? != u32::from(i == j) {
                    return Err(Error::NonNormalizedBasis(format!("s{i}∘w{j} ≠ δ")));
                }
                if symplectic_product(&self.w[i], wj)? != 0 {
                    return Err(Error::NonNormalizedBasis(format!("w{i}∘w{j} ≠ 0")));
                }
            }
        }
        Ok(())
    }
}

/// Symplectic Gram–Schmidt over Z_p on the kept generators of a
/// nondegenerate subspace.
pub fn symplectic_basis(s: &Subspace) -> Result<SymplecticBasis> {
    let p = s.p;
    let mut pool: Vec<PhasePoint> = s.generators.clone();
    let mut out = SymplecticBasis {
        s: Vec::new(),
        w: Vec::new(),
    };
    while let Some(x) = (!pool.is_empty()).then(|| pool.remove(0)) {
        let Some(pos) = pool.iter().position(|y| form_over(&x, y, s.factors) != 0) else {
            return Err(Error::NonNormalizedBasis(
                "subspace is degenerate under the symplectic form".into(),
            ));
        };
        let y = pool.remove(pos);
        let pairing = form_over(&x, &y, s.factors);
        let y = y.scale(zp::inv(pairing, p).expect("nonzero"));
        // z ← z − (z∘y) x + (z∘x) y clears both pairings.
        for z in pool.iter_mut() {
            let zy = form_over(z, &y, s.factors);
            let zx = form_over(z, &x, s.factors);
            *z = z.add_unchecked(&x.scale(zp::neg(zy, p))).add_unchecked(&y.scale(zx));
        }
        out.s.push(x);
        out.w.push(y);
    }
    Ok(out)
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("#{i}")).collect()
}

/// Checks that every two members meet only in zero.
pub fn check_pairwise_trivial(family: &[Subspace]) -> VerificationReport {
    pairwise_trivial_labeled(&index_labels(family.len()), family)
}

pub(crate) fn pairwise_trivial_labeled(labels: &[String], family: &[Subspace]) -> VerificationReport {
    let mut report = VerificationReport::new("pairwise trivial intersection");
    let n = family.len();
    let found: Vec<(usize, usize, String)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            ((i + 1)..n).filter_map(move |j| match family[i].common_point(&family[j]) {
                Ok(None) => None,
                Ok(Some(pt)) => Some((i, j, format!("share nonzero point {:?}", pt.coords()))),
                Err(e) => Some((i, j, e.to_string())),
            })
        })
        .collect();
    report.checks_run = (n * n.saturating_sub(1) / 2) as u64;
    for (i, j, detail) in found {
        report.fail(vec![labels[i].clone(), labels[j].clone()], detail);
    }
    report
}

fn ambient_size(family: &[Subspace]) -> Result<(u32, usize, u64)> {
    let first = family
        .first()
        .ok_or_else(|| invalid("empty family"))?;
    let (p, m) = (first.p, first.factors);
    if family.iter().any(|s| s.p != p || s.factors != m) {
        return Err(invalid("members live in different ambients"));
    }
    let size = (p as u128).pow(2 * m as u32);
    if size > SPAN_LIMIT {
        return Err(Error::Oversize {
            what: "ambient",
            size,
            limit: SPAN_LIMIT,
        });
    }
    Ok((p, m, size as u64))
}

// owner[idx] = index of the first member containing the point, with overlaps reported.
fn cover(
    labels: &[String],
    family: &[Subspace],
    size: u64,
    report: &mut VerificationReport,
) -> Result<Vec<Option<usize>>> {
    let mut owner: Vec<Option<usize>> = vec![None; size as usize];
    let mut overlaps: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    for (i, s) in family.iter().enumerate() {
        for pt in s.points()? {
            if pt.is_zero() {
                continue;
            }
            report.checks_run += 1;
            let slot = &mut owner[pt.index() as usize];
            match slot {
                None => *slot = Some(i),
                Some(j) => {
                    overlaps.entry((*j, i)).or_insert_with(|| pt.coords().to_vec());
                }
            }
        }
    }
    let mut overlaps: Vec<_> = overlaps.into_iter().collect();
    overlaps.sort();
    for ((j, i), pt) in overlaps {
        report.fail(
            vec![labels[j].clone(), labels[i].clone()],
            format!("both contain {pt:?}"),
        );
    }
    Ok(owner)
}

/// Checks that the nonzero points of the members are disjoint and cover
/// every nonzero point of the ambient.
pub fn check_partition(family: &[Subspace]) -> VerificationReport {
    partition_labeled(&index_labels(family.len()), family)
}

pub(crate) fn partition_labeled(labels: &[String], family: &[Subspace]) -> VerificationReport {
    let mut report = VerificationReport::new("partition of nonzero ambient");
    let (_, _, size) = match ambient_size(family) {
        Ok(x) => x,
        Err(e) => {
            report.fail(vec![], e.to_string());
            return report;
        }
    };
    let owner = match cover(labels, family, size, &mut report) {
        Ok(o) => o,
        Err(e) => {
            report.fail(vec![], e.to_string());
            return report;
        }
    };
    let covered = owner[1..].iter().filter(|o| o.is_some()).count() as u64;
    report.set_counts(covered, size - 1);
    if covered != size - 1 {
        report.fail(vec![], format!("{} nonzero points uncovered", size - 1 - covered));
    }
    report
}

/// Checks that two families cover exactly the same nonzero points.
pub fn check_union_equal(left: &[Subspace], right: &[Subspace]) -> VerificationReport {
    let mut report = VerificationReport::new("union equality");
    let mut all = left.to_vec();
    all.extend_from_slice(right);
    let size = match ambient_size(&all) {
        Ok((_, _, s)) => s,
        Err(e) => {
            report.fail(vec![], e.to_string());
            return report;
        }
    };
    let mut seen = [vec![false; size as usize], vec![false; size as usize]];
    for (side, fam) in [left, right].into_iter().enumerate() {
        for s in fam {
            match s.points() {
                Ok(pts) => {
                    for pt in pts {
                        seen[side][pt.index() as usize] = true;
                    }
                }
                Err(e) => report.fail(vec![], e.to_string()),
            }
        }
    }
    let mut differing = 0u64;
    let mut covered = 0u64;
    for idx in 1..size as usize {
        report.checks_run += 1;
        if seen[0][idx] != seen[1][idx] {
            differing += 1;
        }
        if seen[0][idx] {
            covered += 1;
        }
    }
    report.set_counts(covered, seen[1][1..].iter().filter(|&&b| b).count() as u64);
    if differing > 0 {
        report.fail(vec![], format!("{differing} points lie in exactly one of the unions"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: u32, c: &[i64]) -> PhasePoint {
        PhasePoint::from_signed(p, c).unwrap()
    }

    fn sub(p: u32, gens: &[&[i64]]) -> Subspace {
        let pts: Vec<_> = gens.iter().map(|g| pt(p, g)).collect();
        Subspace::new(p, pts[0].factors(), pts).unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(symplectic_product(&pt(3, &[1, 0, 0, 1]), &pt(3, &[0, 1, 2, 0])).unwrap(), 2);
        let u = pt(5, &[1, 4, 2, 3]);
        assert_eq!(symplectic_product(&u, &u).unwrap(), 0);
        assert_eq!(symplectic_product(&pt(3, &[0, 0, 1, 0]), &pt(3, &[0, 0, 0, 1])).unwrap(), 1);
        assert!(symplectic_product(&pt(3, &[0, 1]), &pt(3, &[0, 0, 0, 1])).is_err());
    }

    #[test]
    fn partial_form_examples() {
        let f = FieldSpec::standard(3, 2).unwrap();
        let x = f.element(vec![1, 2]).unwrap();
        let y = f.element(vec![0, 1]).unwrap();
        let a = GFPhasePoint([f.one(), f.zero(), x.clone(), y.clone()]);
        let b = GFPhasePoint([f.zero(), f.one(), y, x]);
        assert_eq!(gf_symplectic(&f, &a, &b, Form::Partial).unwrap(), f.one());
        assert!(gf_symplectic(&f, &a, &a, Form::Full).unwrap().is_zero());
    }

    #[test]
    fn gf_product_is_twice_a() {
        let f = FieldSpec::standard(3, 2).unwrap();
        let d = f.find_nonresidue();
        for a in f.elements() {
            for b in f.elements() {
                let g1 = GFPhasePoint([f.one(), b.clone(), f.zero(), a.clone()]);
                let g2 = GFPhasePoint([
                    f.zero(),
                    a.clone(),
                    f.constant(-1),
                    f.mul(&b, &d).unwrap(),
                ]);
                let lhs = gf_symplectic(&f, &g1, &g2, Form::Full).unwrap();
                assert_eq!(lhs, f.scale(2, &a).unwrap());
            }
        }
    }

    #[test]
    fn pi1_degree_one_is_identity() {
        let f = FieldSpec::standard(5, 1).unwrap();
        let a = GFPhasePoint([f.constant(1), f.constant(2), f.constant(3), f.constant(4)]);
        assert_eq!(pi1(&f, &a).unwrap().coords(), &[1, 2, 3, 4]);
    }

    #[test]
    fn pi1_of_t_in_gf9() {
        let f = FieldSpec::new(3, 2, vec![1, 0]).unwrap();
        let a = GFPhasePoint([f.basis_element(1), f.zero(), f.zero(), f.zero()]);
        let u = pi1(&f, &a).unwrap();
        assert_eq!(u.to_blocked().unwrap(), vec![0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(u.coords(), &[0, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(pi1_inverse(&f, &u).unwrap(), a);
    }

    #[test]
    fn blocked_layout_roundtrip() {
        let u = pt(5, &[1, 2, 3, 4, 0, 1, 2, 3]);
        let b = u.to_blocked().unwrap();
        assert_eq!(PhasePoint::from_blocked(5, &b).unwrap(), u);
    }

    #[test]
    fn span_examples() {
        let c_inf = sub(3, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let pts = c_inf.points().unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|u| u.coords()[0] == 0 && u.coords()[2] == 0));

        assert_eq!(Subspace::zero(3, 2).points().unwrap(), vec![PhasePoint::zero(3, 2)]);

        let c10 = sub(3, &[&[1, 0, 0, 1], &[0, 1, 2, 0]]);
        let pts = c10.points().unwrap();
        assert_eq!(pts.len(), 9);
        for want in [[1, 0, 0, 1], [0, 1, 2, 0], [1, 1, 2, 1]] {
            assert!(pts.iter().any(|u| u.coords() == want));
        }
    }

    #[test]
    fn oversize_span_rejected() {
        assert!(matches!(Subspace::full(3, 7).points(), Err(Error::Oversize { .. })));
    }

    #[test]
    fn canonical_equality() {
        let a = sub(3, &[&[1, 0, 0, 1], &[0, 1, 2, 0]]);
        let b = sub(3, &[&[1, 1, 2, 1], &[2, 0, 0, 2], &[0, 2, 1, 0]]);
        assert_eq!(a, b);
        assert_eq!(b.generators().len(), 2);
    }

    #[test]
    fn classify_examples() {
        let c10 = sub(3, &[&[1, 0, 0, 1], &[0, 1, -1, 0]]);
        let cl = c10.classify();
        assert_eq!((cl.kind, cl.gram_rank), (SubspaceKind::Nondegenerate, 2));
        let c01 = sub(3, &[&[1, 1, 0, 0], &[0, 0, -1, 2]]);
        assert_eq!(c01.classify().kind, SubspaceKind::Isotropic);
        let c_inf = sub(3, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(c_inf.classify().kind, SubspaceKind::Isotropic);
        let mixed = sub(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(mixed.classify().kind, SubspaceKind::Mixed);
    }

    #[test]
    fn duplicate_member_detected() {
        let c10 = sub(3, &[&[1, 0, 0, 1], &[0, 1, 2, 0]]);
        let r = check_pairwise_trivial(&[c10.clone(), c10]);
        assert!(!r.passed);
        assert_eq!(r.failures[0].members, vec!["#0", "#1"]);
    }

    #[test]
    fn symplectic_basis_normalizes() {
        let s = Subspace::full(5, 3);
        let b = symplectic_basis(&s).unwrap();
        b.validate().unwrap();
        let iso = sub(3, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert!(symplectic_basis(&iso).is_err());
        let c = sub(7, &[&[1, 3, 0, 2], &[0, 2, 6, 5]]);
        symplectic_basis(&c).unwrap().validate().unwrap();
    }
}
