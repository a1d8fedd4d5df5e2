//! Builders for the spread families.
//!
//! Everything is expressed as subspaces of `Z_p^{2kn}`: each member is the
//! index set of a Weyl-monomial basis for one subalgebra. Subspaces of
//! `GF(p^k)^4` are spanned over GF(p^k), so a pair of GF generators `g1, g2`
//! yields the `2k` Z_p generators `t^i g1, t^i g2` (i < k), pushed through
//! [`pi1`].
//!
//! Labels record the construction path and use [`GFElement::index`] for
//! field elements: `C[a,b]`, `D[a]`, `D[inf]`, `line[m]`, `line[inf]`,
//! `L(..)`/`R(..)` for members padded onto the left/right blocks, and
//! `B[A=i|C=j|a=x,b=y]` for the mixed members of the recursion.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::finite_field::{FieldSpec, GFElement};
use crate::phase_space::{
    pi1, symplectic_basis, symplectic_product, GFPhasePoint, PhasePoint, Subspace, SymplecticBasis,
};

/// Field, number of `M_{p^k}` blocks, and the non-square `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub field: FieldSpec,
    pub n: usize,
    pub nonresidue: GFElement,
}

impl ConstructionParams {
    /// Lexicographically first polynomial and non-square.
    pub fn standard(p: u32, k: usize, n: usize) -> Result<Self> {
        Self::with_overrides(p, k, n, None, None)
    }

    pub fn with_overrides(
        p: u32,
        k: usize,
        n: usize,
        poly: Option<Vec<u32>>,
        nonresidue: Option<Vec<u32>>,
    ) -> Result<Self> {
        let field = match poly {
            Some(c) => FieldSpec::new(p, k, c)?,
            None => FieldSpec::standard(p, k)?,
        };
        let nonresidue = match nonresidue {
            Some(c) => field.element(c)?,
            None => field.find_nonresidue(),
        };
        Self::new(field, n, nonresidue)
    }

    pub fn new(field: FieldSpec, n: usize, nonresidue: GFElement) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        field.check(&nonresidue)?;
        if field.is_square(&nonresidue)? {
            return Err(invalid(format!("D = {nonresidue} is a square in the field")));
        }
        Ok(ConstructionParams {
            field,
            n,
            nonresidue,
        })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn k(&self) -> usize {
        self.field.degree()
    }

    /// Number of `M_p` tensor factors, `k·n`.
    pub fn factors(&self) -> usize {
        self.k() * self.n
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.field.clone(), n, self.nonresidue.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberKind {
    /// Spans a full matrix algebra `M_{p^k}`.
    MatrixAlgebra,
    /// Spans a maximal abelian subalgebra.
    Masa,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub label: String,
    pub kind: MemberKind,
    pub subspace: Subspace,
}

/// How a family was produced; determines its claimed size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `build_recursive` (which is `build_spread_2` at n = 2).
    Recursive,
    MasaSpread,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadFamily {
    pub params: ConstructionParams,
    pub construction: Construction,
    pub members: Vec<Member>,
}

impl SpreadFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label.clone()).collect()
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.members.iter().map(|m| m.subspace.clone()).collect()
    }

    pub fn member(&self, label: &str) -> Option<&Member> {
        self.members.iter().find(|m| m.label == label)
    }

    /// Member count the construction promises, if it promises one.
    pub fn claimed_count(&self) -> Option<u128> {
        let q2 = (self.params.p() as u128).pow(2 * self.params.k() as u32);
        match self.construction {
            Construction::Recursive => {
                crate::verify::expected_count(self.params.p(), self.params.k(), self.params.n).ok()
            }
            Construction::MasaSpread => Some(q2 + 1),
            Construction::Custom => None,
        }
    }
}

fn gf_point(field: &FieldSpec, parts: [GFElement; 4]) -> GFPhasePoint {
    GFPhasePoint::new(field, parts).expect("parts built in this field")
}

/// Z_p subspace of `Z_p^{4k}` spanned over GF(p^k) by the given points.
fn gf_span(field: &FieldSpec, gens: &[GFPhasePoint]) -> Subspace {
    let k = field.degree();
    let pts = gens
        .iter()
        .flat_map(|g| {
            (0..k).map(move |i| {
                let scaled = g.scale(field, &field.basis_element(i)).expect("same field");
                pi1(field, &scaled).expect("same field")
            })
        })
        .collect();
    Subspace::new(field.p(), 2 * k, pts).expect("points share the ambient")
}

fn c_generators(params: &ConstructionParams, a: &GFElement, b: &GFElement) -> Result<[GFPhasePoint; 2]> {
    let f = &params.field;
    f.check(a)?;
    f.check(b)?;
    let bd = f.mul(b, &params.nonresidue)?;
    Ok([
        gf_point(f, [f.one(), b.clone(), f.zero(), a.clone()]),
        gf_point(f, [f.zero(), a.clone(), f.constant(-1), bd]),
    ])
}

fn d_generators(params: &ConstructionParams, a: &GFElement) -> Result<[GFPhasePoint; 2]> {
    let f = &params.field;
    f.check(a)?;
    let ad = f.mul(a, &params.nonresidue)?;
    let neg_a = f.neg(a)?;
    Ok([
        gf_point(f, [f.one(), f.one(), neg_a.clone(), ad.clone()]),
        gf_point(f, [f.one(), f.constant(2), neg_a, f.scale(2, &ad)?]),
    ])
}

fn frame(field: &FieldSpec, first: usize, second: usize) -> [GFPhasePoint; 2] {
    let unit = |pos: usize| {
        let mut parts: [GFElement; 4] = std::array::from_fn(|_| field.zero());
        parts[pos] = field.one();
        gf_point(field, parts)
    };
    [unit(first), unit(second)]
}

/// `C_{a,b} = { x(1, b, 0, a) + y(0, a, −1, bD) }`, a subspace of `Z_p^{4k}`.
pub fn build_c(params: &ConstructionParams, a: &GFElement, b: &GFElement) -> Result<Subspace> {
    Ok(gf_span(&params.field, &c_generators(params, a, b)?))
}

/// `C_∞ = { x(0,1,0,0) + y(0,0,0,1) }`.
pub fn build_c_infinity(params: &ConstructionParams) -> Subspace {
    gf_span(&params.field, &frame(&params.field, 1, 3))
}

/// `D_a = { x(1, 1, −a, aD) + y(1, 2, −a, 2aD) }`.
pub fn build_d(params: &ConstructionParams, a: &GFElement) -> Result<Subspace> {
    Ok(gf_span(&params.field, &d_generators(params, a)?))
}

/// `D_∞ = { x(0,0,1,0) + y(0,0,0,1) }`.
pub fn build_d_infinity(params: &ConstructionParams) -> Subspace {
    gf_span(&params.field, &frame(&params.field, 2, 3))
}

fn spread_2_members(params: &ConstructionParams) -> Result<Vec<Member>> {
    let f = &params.field;
    let mut out = Vec::new();
    for a in f.elements().filter(|a| !a.is_zero()) {
        for b in f.elements() {
            out.push(Member {
                label: format!("C[{},{}]", a.index(), b.index()),
                kind: MemberKind::MatrixAlgebra,
                subspace: build_c(params, &a, &b)?,
            });
        }
    }
    for a in f.elements() {
        out.push(Member {
            label: format!("D[{}]", a.index()),
            kind: MemberKind::MatrixAlgebra,
            subspace: build_d(params, &a)?,
        });
    }
    out.push(Member {
        label: "D[inf]".into(),
        kind: MemberKind::MatrixAlgebra,
        subspace: build_d_infinity(params),
    });
    Ok(out)
}

fn require_two_blocks(params: &ConstructionParams) -> Result<()> {
    if params.n != 2 {
        return Err(invalid(format!("this construction needs n = 2, got {}", params.n)));
    }
    Ok(())
}

/// The `p^{2k}+1` members `C_{a,b}` (a ≠ 0), `D_a`, `D_∞` of `M_{p^{2k}}`.
pub fn build_spread_2(params: &ConstructionParams) -> Result<SpreadFamily> {
    require_two_blocks(params)?;
    Ok(SpreadFamily {
        params: params.clone(),
        construction: Construction::Recursive,
        members: spread_2_members(params)?,
    })
}

fn masa_members(params: &ConstructionParams) -> Result<Vec<Member>> {
    let p = params.p();
    let width = 2 * params.k();
    let big = FieldSpec::standard(p, width)?;
    // (x, y) ∈ GF(p^{2k})^2 ↦ factor j carries (x_j, Tr(y t^j)).
    let point = |x: &GFElement, y: &GFElement| -> Result<PhasePoint> {
        let dual = big.dual_coords(y)?;
        let coords = x.coords().iter().zip(&dual).flat_map(|(&s, &w)| [s, w]).collect();
        PhasePoint::new(p, coords)
    };
    let mut out = Vec::new();
    for m in big.elements() {
        let gens = (0..width)
            .map(|i| {
                let x = big.basis_element(i);
                let y = big.mul(&m, &x)?;
                point(&x, &y)
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Member {
            label: format!("line[{}]", m.index()),
            kind: MemberKind::Masa,
            subspace: Subspace::new(p, width, gens)?,
        });
    }
    let gens = (0..width)
        .map(|i| point(&big.zero(), &big.basis_element(i)))
        .collect::<Result<Vec<_>>>()?;
    out.push(Member {
        label: "line[inf]".into(),
        kind: MemberKind::Masa,
        subspace: Subspace::new(p, width, gens)?,
    });
    Ok(out)
}

/// `p^{2k}+1` Lagrangian subspaces of `Z_p^{4k}` partitioning the nonzero
/// points: the lines `{(x, mx)}` and `{(0, y)}` of `GF(p^{2k})^2`.
pub fn build_masa_spread(params: &ConstructionParams) -> Result<SpreadFamily> {
    require_two_blocks(params)?;
    Ok(SpreadFamily {
        params: params.clone(),
        construction: Construction::MasaSpread,
        members: masa_members(params)?,
    })
}

/// Selects `Ĉ_{a,b}` or `Ĉ_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HatIndex {
    Pair(GFElement, GFElement),
    Infinity,
}

/// Image of `Ĉ_{a,b} = { x(1,0,a,b) + y(0,1,bD,a) }` (or `Ĉ_∞`) in `A ⊗ C`.
///
/// Coordinates `(u1, u2, u3, u4)` of a `Z_p^{4k}` point are read as
/// coefficients along `a_basis.s`, `a_basis.w`, the first `k` and the last
/// `k` vectors of `c_basis`; the result lives in the concatenated ambient.
pub fn embed_hat(
    params: &ConstructionParams,
    index: &HatIndex,
    a_basis: &SymplecticBasis,
    c_basis: &[PhasePoint],
) -> Result<Subspace> {
    let f = &params.field;
    let k = f.degree();
    let p = f.p();
    if a_basis.s.len() != k || a_basis.w.len() != k {
        return Err(Error::BasisShape(format!(
            "A needs {k}+{k} basis vectors, got {}+{}",
            a_basis.s.len(),
            a_basis.w.len()
        )));
    }
    if c_basis.len() != 2 * k {
        return Err(Error::BasisShape(format!(
            "C needs {} basis vectors, got {}",
            2 * k,
            c_basis.len()
        )));
    }
    a_basis.validate()?;
    let left_factors = a_basis.s[0].factors();
    let right_factors = c_basis[0].factors();
    for c in c_basis {
        if c.p() != p || c.factors() != right_factors {
            return Err(Error::BasisShape("C basis vectors differ in ambient".into()));
        }
        for d in c_basis {
            if symplectic_product(c, d)? != 0 {
                return Err(Error::BasisShape("C basis is not isotropic".into()));
            }
        }
    }
    let c_span = Subspace::new(p, right_factors, c_basis.to_vec())?;
    if c_span.dim() != 2 * k {
        return Err(Error::BasisShape("C basis is linearly dependent".into()));
    }

    let gens = match index {
        HatIndex::Pair(a, b) => {
            f.check(a)?;
            f.check(b)?;
            let bd = f.mul(b, &params.nonresidue)?;
            [
                gf_point(f, [f.one(), f.zero(), a.clone(), b.clone()]),
                gf_point(f, [f.zero(), f.one(), bd, a.clone()]),
            ]
        }
        HatIndex::Infinity => frame(f, 2, 3),
    };
    let coefficient_space = gf_span(f, &gens);
    let pts = coefficient_space
        .generators()
        .iter()
        .map(|u| {
            let mut left = PhasePoint::zero(p, left_factors);
            let mut right = PhasePoint::zero(p, right_factors);
            for i in 0..k {
                let (u1, u2) = u.factor(i);
                let (u3, u4) = u.factor(k + i);
                left = left.add(&a_basis.s[i].scale(u1))?.add(&a_basis.w[i].scale(u2))?;
                right = right.add(&c_basis[i].scale(u3))?.add(&c_basis[k + i].scale(u4))?;
            }
            left.concat(&right)
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::new(p, left_factors + right_factors, pts)
}

/// `N_{(k,n)} = (p^{2kn}−1)/(p^{2k}−1)` pairwise quasi-orthogonal copies of
/// `M_{p^k}` inside `M_{p^{kn}}`.
///
/// For `n > 2` the left `n−2` blocks carry the smaller family `{A_i}` and the
/// right two blocks carry both the matrix-algebra spread and the MASA spread
/// `{C_j}`; every `A_i ⊗ C_j` contributes the `p^{2k}−1` members `Ĉ_{a,b}`,
/// `(a,b) ≠ (0,0)`.
pub fn build_recursive(params: &ConstructionParams) -> Result<SpreadFamily> {
    let members = match params.n {
        1 => vec![Member {
            label: "M".into(),
            kind: MemberKind::MatrixAlgebra,
            subspace: Subspace::full(params.p(), params.k()),
        }],
        2 => spread_2_members(params)?,
        n => recursive_members(params, n)?,
    };
    Ok(SpreadFamily {
        params: params.clone(),
        construction: Construction::Recursive,
        members,
    })
}

fn recursive_members(params: &ConstructionParams, n: usize) -> Result<Vec<Member>> {
    let k = params.k();
    let total = k * n;
    let left_factors = k * (n - 2);
    let two = params.with_n(2)?;
    let left = build_recursive(&params.with_n(n - 2)?)?;
    let right = spread_2_members(&two)?;
    let masas = masa_members(&two)?;

    let mut out = Vec::with_capacity(
        crate::verify::expected_count(params.p(), k, n)?.try_into().unwrap_or(0),
    );
    for m in &left.members {
        out.push(Member {
            label: format!("L({})", m.label),
            kind: MemberKind::MatrixAlgebra,
            subspace: m.subspace.embed(0, total)?,
        });
    }
    for m in &right {
        out.push(Member {
            label: format!("R({})", m.label),
            kind: MemberKind::MatrixAlgebra,
            subspace: m.subspace.embed(left_factors, total)?,
        });
    }
    let f = &params.field;
    for (i, a_member) in left.members.iter().enumerate() {
        let a_basis = symplectic_basis(&a_member.subspace)?;
        for (j, c_member) in masas.iter().enumerate() {
            let c_basis = c_member.subspace.generators();
            for a in f.elements() {
                for b in f.elements() {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let subspace =
                        embed_hat(params, &HatIndex::Pair(a.clone(), b.clone()), &a_basis, c_basis)?;
                    out.push(Member {
                        label: format!(
                            "B[A={}|C={}|a={},b={}]",
                            i + 1,
                            j + 1,
                            a.index(),
                            b.index()
                        ),
                        kind: MemberKind::MatrixAlgebra,
                        subspace,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::SubspaceKind;

    fn p3() -> ConstructionParams {
        ConstructionParams::standard(3, 1, 2).unwrap()
    }

    fn gens(s: &Subspace) -> Vec<Vec<u32>> {
        s.generators().iter().map(|g| g.coords().to_vec()).collect()
    }

    #[test]
    fn params_reject_squares_and_bad_primes() {
        assert!(ConstructionParams::with_overrides(3, 1, 2, None, Some(vec![1])).is_err());
        assert!(ConstructionParams::standard(4, 1, 2).is_err());
        assert!(ConstructionParams::standard(3, 1, 0).is_err());
        assert_eq!(p3().nonresidue.coords(), &[2]);
    }

    #[test]
    fn c_examples() {
        let params = p3();
        let f = &params.field;
        let c10 = build_c(&params, &f.constant(1), &f.zero()).unwrap();
        assert_eq!(gens(&c10), vec![vec![1, 0, 0, 1], vec![0, 1, 2, 0]]);
        let c00 = build_c(&params, &f.zero(), &f.zero()).unwrap();
        assert_eq!(gens(&c00), vec![vec![1, 0, 0, 0], vec![0, 0, 2, 0]]);
        assert_eq!(c00.classify().kind, SubspaceKind::Isotropic);
        assert_eq!(gens(&build_c_infinity(&params)), vec![vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn gf9_c10_is_nondegenerate() {
        let params = ConstructionParams::standard(3, 2, 2).unwrap();
        let f = &params.field;
        let [g1, g2] = c_generators(&params, &f.one(), &f.zero()).unwrap();
        let form = crate::phase_space::gf_symplectic(f, &g1, &g2, crate::phase_space::Form::Full);
        assert_eq!(form.unwrap(), f.constant(2));
        let c = build_c(&params, &f.one(), &f.zero()).unwrap();
        let cl = c.classify();
        assert_eq!((cl.kind, cl.dim), (SubspaceKind::Nondegenerate, 4));
    }

    #[test]
    fn d_examples() {
        let params = p3();
        let f = &params.field;
        assert_eq!(
            gens(&build_d(&params, &f.zero()).unwrap()),
            vec![vec![1, 1, 0, 0], vec![1, 2, 0, 0]]
        );
        assert_eq!(
            gens(&build_d(&params, &f.one()).unwrap()),
            vec![vec![1, 1, 2, 2], vec![1, 2, 2, 1]]
        );
        assert_eq!(gens(&build_d_infinity(&params)), vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn spread_sizes_and_labels() {
        let fam = build_spread_2(&p3()).unwrap();
        assert_eq!(fam.len(), 10);
        assert_eq!(fam.members[0].label, "C[1,0]");
        assert_eq!(fam.members[9].label, "D[inf]");
        assert_eq!(build_spread_2(&ConstructionParams::standard(5, 1, 2).unwrap()).unwrap().len(), 26);
        assert!(build_spread_2(&ConstructionParams::standard(3, 1, 3).unwrap()).is_err());
    }

    #[test]
    fn masa_spread_shape() {
        let fam = build_masa_spread(&p3()).unwrap();
        assert_eq!(fam.len(), 10);
        for m in &fam.members {
            let cl = m.subspace.classify();
            assert_eq!((cl.kind, cl.dim), (SubspaceKind::Isotropic, 2));
        }
        let pure_w = &fam.member("line[inf]").unwrap().subspace;
        let want = Subspace::new(
            3,
            2,
            vec![
                PhasePoint::new(3, vec![0, 1, 0, 0]).unwrap(),
                PhasePoint::new(3, vec![0, 0, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(pure_w, &want);
        let pure_s = &fam.member("line[0]").unwrap().subspace;
        assert!(pure_s.canonical_basis().iter().all(|r| r[1] == 0 && r[3] == 0));
    }

    #[test]
    fn embed_hat_examples() {
        let params = ConstructionParams::standard(3, 1, 3).unwrap();
        let f = &params.field;
        let a = symplectic_basis(&Subspace::full(3, 1)).unwrap();
        let masas = build_masa_spread(&params.with_n(2).unwrap()).unwrap();
        let c = masas.member("line[inf]").unwrap().subspace.generators().to_vec();

        let b10 = embed_hat(&params, &HatIndex::Pair(f.one(), f.zero()), &a, &c).unwrap();
        assert_eq!(b10.classify().kind, SubspaceKind::Nondegenerate);
        let g = b10.generators();
        let phase = crate::weyl::commutation_phase(&g[0], &g[1]).unwrap();
        assert_eq!(crate::phase_space::symplectic_product(&g[0], &g[1]).unwrap(), 1);
        assert_eq!(phase, 2);

        let b00 = embed_hat(&params, &HatIndex::Pair(f.zero(), f.zero()), &a, &c).unwrap();
        assert_eq!(b00, Subspace::full(3, 1).embed(0, 3).unwrap());
        let binf = embed_hat(&params, &HatIndex::Infinity, &a, &c).unwrap();
        let c_sub = Subspace::new(3, 2, c.clone()).unwrap();
        assert_eq!(binf, c_sub.embed(1, 3).unwrap());

        let bad = SymplecticBasis {
            s: a.s.clone(),
            w: vec![a.w[0].scale(2)],
        };
        assert!(matches!(
            embed_hat(&params, &HatIndex::Infinity, &bad, &c),
            Err(Error::NonNormalizedBasis(_))
        ));
        assert!(matches!(
            embed_hat(&params, &HatIndex::Infinity, &a, &c[..1]),
            Err(Error::BasisShape(_))
        ));
    }

    #[test]
    fn recursive_sizes() {
        let n1 = build_recursive(&ConstructionParams::standard(3, 1, 1).unwrap()).unwrap();
        assert_eq!(n1.len(), 1);
        assert_eq!(n1.members[0].subspace.dim(), 2);
        let n3 = build_recursive(&ConstructionParams::standard(3, 1, 3).unwrap()).unwrap();
        assert_eq!(n3.len(), 91);
        let labels: std::collections::HashSet<_> = n3.labels().into_iter().collect();
        assert_eq!(labels.len(), 91);
        assert!(labels.contains("B[A=1|C=1|a=0,b=1]"));
        assert!(labels.contains("R(D[inf])"));
        assert!(labels.contains("L(M)"));
    }
}
