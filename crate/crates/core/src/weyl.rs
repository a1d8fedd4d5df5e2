//! Weyl monomials and their matrices.
//!
//! With `λ = e^{2πi/p}`, `W = diag(1, λ, ..., λ^{p-1})` and `S` the cyclic
//! shift `e_j ↦ e_{j+1 mod p}`, the monomial with point
//! `(k_1, l_1, ..., k_m, l_m)` and phase exponent `e` is
//! `λ^e · S^{k_1}W^{l_1} ⊗ ... ⊗ S^{k_m}W^{l_m}` with factor 1 leftmost.
//! Products follow `S^{k_1}W^{l_1} S^{k_2}W^{l_2} = λ^{k_2 l_1} S^{k_1+k_2}W^{l_1+l_2}`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_space::{symplectic_product, PhasePoint, Subspace};
use crate::zp;

/// Largest matrix dimension [`synthesize`] builds by default (3^6).
pub const DEFAULT_DIM_LIMIT: u64 = 729;

/// `λ^e` for `λ = e^{2πi/p}`.
pub fn root_of_unity(p: u32, e: u32) -> Complex64 {
    let e = e % p;
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / p as f64)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylMonomial {
    pub point: PhasePoint,
    pub phase_exp: u32,
}

impl WeylMonomial {
    pub fn new(point: PhasePoint, phase_exp: u32) -> Self {
        let phase_exp = phase_exp % point.p();
        WeylMonomial { point, phase_exp }
    }

    /// The monomial `π(u)` with the zero-phase representative.
    pub fn from_point(point: PhasePoint) -> Self {
        WeylMonomial { point, phase_exp: 0 }
    }

    pub fn identity(p: u32, factors: usize) -> Self {
        Self::from_point(PhasePoint::zero(p, factors))
    }

    /// The monomial in `S`, `W` and `⊗` notation, phase omitted, e.g. `SW²⊗I`.
    pub fn notation(&self) -> String {
        notation(&self.point)
    }
}

fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

fn power(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        e => format!("{base}{}", superscript(e)),
    }
}

/// `S^k W^l` factors joined by `⊗`, with `I` for trivial factors.
pub fn notation(point: &PhasePoint) -> String {
    (0..point.factors())
        .map(|j| {
            let (k, l) = point.factor(j);
            if k == 0 && l == 0 {
                "I".to_string()
            } else {
                format!("{}{}", power("S", k), power("W", l))
            }
        })
        .collect::<Vec<_>>()
        .join("⊗")
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase_exp != 0 {
            write!(f, "λ{}·", superscript(self.phase_exp))?;
        }
        f.write_str(&self.notation())
    }
}

/// Phase-tracked product `x·y`.
pub fn weyl_mul(x: &WeylMonomial, y: &WeylMonomial) -> Result<WeylMonomial> {
    let point = x.point.add(&y.point)?;
    let p = point.p();
    let cross = (0..x.point.factors()).fold(0, |acc, j| {
        let (_, l1) = x.point.factor(j);
        let (k2, _) = y.point.factor(j);
        zp::add(acc, zp::mul(k2, l1, p), p)
    });
    let phase_exp = zp::add(zp::add(x.phase_exp, y.phase_exp, p), cross, p);
    Ok(WeylMonomial { point, phase_exp })
}

/// The exponent `c` with `π(u)π(v) = λ^c π(v)π(u)`, namely `−u∘v`.
pub fn commutation_phase(u: &PhasePoint, v: &PhasePoint) -> Result<u32> {
    Ok(zp::neg(symplectic_product(u, v)?, u.p()))
}

/// A square complex matrix in double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix(pub DMatrix<Complex64>);

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        DenseMatrix(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        DenseMatrix(DMatrix::from_fn(dim, dim, f))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix(&self.0 * &other.0)
    }

    pub fn adjoint(&self) -> DenseMatrix {
        DenseMatrix(self.0.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> DenseMatrix {
        DenseMatrix(&self.0 * c)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix(self.0.kronecker(&other.0))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Nonzero entries of a matrix grouped by row, used for fast trace products.
#[derive(Clone, Debug)]
pub struct SparseView {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseView {
    pub fn new(m: &DenseMatrix) -> Self {
        let dim = m.dim();
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .filter_map(|j| {
                        let v = m.get(i, j);
                        (v != Complex64::new(0.0, 0.0)).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        SparseView { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i]
            .iter()
            .find(|&&(c, _)| c == j)
            .map_or(Complex64::new(0.0, 0.0), |&(_, v)| v)
    }

    pub fn adjoint(&self) -> SparseView {
        let mut rows = vec![Vec::new(); self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v.conj()));
            }
        }
        SparseView { dim: self.dim, rows }
    }

    /// `Tr(A B) = Σ_{ij} A_ij B_ji` over the stored entries of both factors.
    pub fn trace_product(&self, b: &SparseView) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                sum += a * b.get(j, i);
            }
        }
        sum
    }

    pub fn trace_product_dense(&self, b: &DenseMatrix) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                sum += a * b.get(j, i);
            }
        }
        sum
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, b: &SparseView) -> SparseView {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Complex64)> = Vec::new();
                for &(j, a) in row {
                    for &(l, v) in &b.rows[j] {
                        match acc.iter_mut().find(|(c, _)| *c == l) {
                            Some((_, x)) => *x += a * v,
                            None => acc.push((l, a * v)),
                        }
                    }
                }
                acc.sort_by_key(|&(c, _)| c);
                acc
            })
            .collect();
        SparseView { dim: self.dim, rows }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &SparseView) -> f64 {
        let mut worst = 0.0f64;
        for (i, (ra, rb)) in self.rows.iter().zip(&other.rows).enumerate() {
            for &(j, a) in ra {
                worst = worst.max((a - other.get(i, j)).norm());
            }
            for &(j, b) in rb {
                worst = worst.max((self.get(i, j) - b).norm());
            }
        }
        worst
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, |i, j| self.get(i, j))
    }
}

/// The clock matrix `W = diag(1, λ, ..., λ^{p-1})`.
pub fn clock(p: u32) -> DenseMatrix {
    DenseMatrix::from_fn(p as usize, |i, j| {
        if i == j {
            root_of_unity(p, i as u32)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The cyclic shift `S e_j = e_{j+1 mod p}`.
pub fn shift(p: u32) -> DenseMatrix {
    let n = p as usize;
    DenseMatrix::from_fn(n, |i, j| {
        if i == (j + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn dimension(p: u32, factors: usize, limit: u64) -> Result<usize> {
    let d = (p as u128).pow(factors as u32);
    if d > limit as u128 {
        return Err(Error::Oversize {
            what: "matrix dimension",
            size: d,
            limit: limit as u128,
        });
    }
    Ok(d as usize)
}

/// The matrix of a monomial, with the default dimension guard.
pub fn synthesize(x: &WeylMonomial) -> Result<DenseMatrix> {
    synthesize_with_limit(x, DEFAULT_DIM_LIMIT)
}

/// Column `j` with digits `j_f` (factor 1 most significant) maps to row
/// `(j_f + k_f)` with value `λ^{e + Σ l_f j_f}`.
pub fn synthesize_with_limit(x: &WeylMonomial, limit: u64) -> Result<DenseMatrix> {
    let p = x.point.p();
    let m = x.point.factors();
    let d = dimension(p, m, limit)?;
    let mut mat = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    let mut digits = vec![0u32; m];
    for col in 0..d {
        let mut rem = col;
        for f in (0..m).rev() {
            digits[f] = (rem % p as usize) as u32;
            rem /= p as usize;
        }
        let mut row = 0usize;
        let mut e = x.phase_exp;
        for (f, &jf) in digits.iter().enumerate() {
            let (k, l) = x.point.factor(f);
            row = row * p as usize + ((jf + k) % p) as usize;
            e = zp::add(e, zp::mul(l, jf, p), p);
        }
        mat[(row, col)] = root_of_unity(p, e);
    }
    Ok(DenseMatrix(mat))
}

/// One zero-phase monomial matrix per point of the span, in
/// [`Subspace::points`] order.
pub fn basis_matrices(s: &Subspace) -> Result<Vec<DenseMatrix>> {
    dimension(s.p(), s.factors(), DEFAULT_DIM_LIMIT)?;
    s.points()?
        .into_iter()
        .map(|u| synthesize(&WeylMonomial::from_point(u)))
        .collect()
}
