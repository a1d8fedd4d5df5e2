//! Arithmetic in Z_p and GF(p^k).
//!
//! A field is fixed by a monic irreducible polynomial
//! `f(x) = c_0 + c_1 x + ... + c_{k-1} x^{k-1} + x^k` over Z_p, and elements
//! are coordinate vectors in the power basis `1, t, ..., t^{k-1}` with
//! `f(t) = 0`. The degree-one case is Z_p itself with `f(x) = x`.
//!
//! The Z_p-linear functional used to pull the GF(p^k) symplectic form down to
//! Z_p is the field trace `Tr(a) = a + a^p + ... + a^{p^{k-1}}`.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::zp;

/// An element of GF(p^k) in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GFElement {
    p: u32,
    coords: Vec<u32>,
}

impl GFElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Mixed-radix index `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`.
    ///
    /// This is the enumeration order used everywhere a "first" element is
    /// selected, and the integer that labels elements in family files.
    pub fn index(&self) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }
}

impl fmt::Display for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// A finite field GF(p^k) given by its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    poly: Vec<u32>,
    // Tr(t^i) for i < k; the trace is linear so this determines it.
    trace_of_power: Vec<u32>,
}

fn check_prime(p: u32) -> Result<()> {
    if p < 3 || !zp::is_prime(p as u64) {
        return Err(invalid("p must be an odd prime"));
    }
    Ok(())
}

// Remainder of `a` modulo a monic `m`, both low-order first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                let t = zp::mul(lead, mc, p);
                r[shift + i] = zp::sub(r[shift + i], t, p);
            }
        }
    }
    r
}

fn monic_from_index(mut idx: u64, degree: usize, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Whether the monic polynomial with low-order coefficients `lower`
/// (leading 1 implied) is irreducible over Z_p. Exhaustive trial division.
pub fn is_irreducible(p: u32, lower: &[u32]) -> bool {
    let k = lower.len();
    if k <= 1 {
        return true;
    }
    let mut full = lower.to_vec();
    full.push(1);
    for d in 1..=k / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(&full, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `k` over Z_p, counting
/// coefficient vectors `(c_0, ..., c_{k-1})` as base-p integers with `c_0`
/// least significant. Degree one gives `f(x) = x`, returned as `[0]`.
pub fn find_irreducible(p: u32, k: usize) -> Result<Vec<u32>> {
    check_prime(p)?;
    if k == 0 {
        return Err(invalid("extension degree must be at least 1"));
    }
    let total = (p as u64)
        .checked_pow(k as u32)
        .ok_or_else(|| invalid("field too large"))?;
    (0..total)
        .map(|idx| {
            let mut c = monic_from_index(idx, k, p);
            c.pop();
            c
        })
        .find(|c| is_irreducible(p, c))
        .ok_or_else(|| invalid("no irreducible polynomial found"))
}

impl FieldSpec {
    /// Validates `(p, k, f)`. For `k = 1` an empty coefficient list means `f(x) = x`.
    pub fn new(p: u32, k: usize, poly: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if k == 0 {
            return Err(invalid("extension degree must be at least 1"));
        }
        let poly = if k == 1 && poly.is_empty() { vec![0] } else { poly };
        if poly.len() != k {
            return Err(invalid(format!(
                "polynomial needs {k} coefficients, got {}",
                poly.len()
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(invalid("polynomial coefficients must lie in [0, p)"));
        }
        if !is_irreducible(p, &poly) {
            return Err(invalid("polynomial is not irreducible over Z_p"));
        }
        let mut field = FieldSpec {
            p,
            k,
            poly,
            trace_of_power: Vec::new(),
        };
        field.trace_of_power = (0..k)
            .map(|i| {
                let ti = field.basis_element(i);
                let tr = field.frobenius_trace(&ti);
                debug_assert!(tr.coords[1..].iter().all(|&c| c == 0));
                tr.coords[0]
            })
            .collect();
        Ok(field)
    }

    /// GF(p^k) with the polynomial chosen by [`find_irreducible`].
    pub fn standard(p: u32, k: usize) -> Result<Self> {
        Self::new(p, k, find_irreducible(p, k)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k as u32)
    }

    pub fn zero(&self) -> GFElement {
        GFElement {
            p: self.p,
            coords: vec![0; self.k],
        }
    }

    pub fn one(&self) -> GFElement {
        self.constant(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn constant(&self, c: i64) -> GFElement {
        let mut e = self.zero();
        e.coords[0] = c.rem_euclid(self.p as i64) as u32;
        e
    }

    /// `t^i` for `i < k`.
    pub fn basis_element(&self, i: usize) -> GFElement {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<GFElement> {
        let e = GFElement { p: self.p, coords };
        self.check(&e)?;
        Ok(e)
    }

    pub fn from_index(&self, mut idx: u64) -> Result<GFElement> {
        if idx >= self.order() {
            return Err(invalid(format!("element index {idx} out of range")));
        }
        let mut e = self.zero();
        for c in e.coords.iter_mut() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        Ok(e)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GFElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i).expect("index in range"))
    }

    pub fn check(&self, a: &GFElement) -> Result<()> {
        if a.p != self.p || a.coords.len() != self.k || a.coords.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch {
                p: self.p,
                k: self.k,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GFElement, b: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &GFElement, b: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.neg_unchecked(b)))
    }

    pub fn neg(&self, a: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u32, a: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        Ok(GFElement {
            p: self.p,
            coords: a.coords.iter().map(|&x| zp::mul(c % self.p, x, self.p)).collect(),
        })
    }

    pub fn mul(&self, a: &GFElement, b: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn pow(&self, a: &GFElement, mut exp: u64) -> Result<GFElement> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            base = self.mul_unchecked(&base, &base);
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Inverse via `a^{q-2}`.
    pub fn inv(&self, a: &GFElement) -> Result<GFElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.pow(a, self.order() - 2)
    }

    /// `a + a^p + ... + a^{p^{k-1}}` evaluated literally in the field.
    pub fn frobenius_trace(&self, a: &GFElement) -> GFElement {
        let mut acc = self.zero();
        let mut conj = a.clone();
        for _ in 0..self.k {
            acc = self.add_unchecked(&acc, &conj);
            conj = self.pow(&conj, self.p as u64).expect("same field");
        }
        acc
    }

    /// The field trace as a value in Z_p.
    pub fn trace(&self, a: &GFElement) -> Result<u32> {
        self.check(a)?;
        Ok(self.trace_unchecked(a))
    }

    /// Coordinates of `a` in the trace-dual of the power basis, i.e.
    /// `Tr(a t^i)` for `i < k`.
    pub fn dual_coords(&self, a: &GFElement) -> Result<Vec<u32>> {
        self.check(a)?;
        Ok((0..self.k)
            .map(|i| self.trace_unchecked(&self.mul_unchecked(a, &self.basis_element(i))))
            .collect())
    }

    /// Rebuilds an element from its trace-dual coordinates.
    pub fn from_dual_coords(&self, coords: &[u32]) -> Result<GFElement> {
        if coords.len() != self.k {
            return Err(invalid("wrong number of dual coordinates"));
        }
        let power: Vec<GFElement> = (0..self.k).map(|i| self.basis_element(i)).collect();
        let dual = self.trace_dual_basis(&power)?;
        let mut acc = self.zero();
        for (c, f) in coords.iter().zip(&dual) {
            acc = self.add_unchecked(&acc, &self.scale(*c, f)?);
        }
        Ok(acc)
    }

    /// The basis `{f_j}` with `Tr(e_i f_j) = δ_ij`.
    pub fn trace_dual_basis(&self, basis: &[GFElement]) -> Result<Vec<GFElement>> {
        if basis.len() != self.k {
            return Err(invalid(format!(
                "a basis of GF({}^{}) has {} elements",
                self.p, self.k, self.k
            )));
        }
        for e in basis {
            self.check(e)?;
        }
        // M[i][l] = Tr(e_i t^l); the coordinates of f_j are column j of M^{-1}.
        let m: Vec<Vec<u32>> = basis
            .iter()
            .map(|e| {
                (0..self.k)
                    .map(|l| self.trace_unchecked(&self.mul_unchecked(e, &self.basis_element(l))))
                    .collect()
            })
            .collect();
        let minv = zp::invert(&m, self.p).ok_or(Error::LinearlyDependent)?;
        Ok((0..self.k)
            .map(|j| GFElement {
                p: self.p,
                coords: (0..self.k).map(|l| minv[l][j]).collect(),
            })
            .collect())
    }

    /// Membership table of the squares, indexed by [`GFElement::index`].
    pub fn square_table(&self) -> Vec<bool> {
        let mut table = vec![false; self.order() as usize];
        for x in self.elements() {
            table[self.mul_unchecked(&x, &x).index() as usize] = true;
        }
        table
    }

    pub fn is_square(&self, a: &GFElement) -> Result<bool> {
        self.check(a)?;
        let q = self.order();
        if a.is_zero() {
            return Ok(true);
        }
        // Euler's criterion in GF(q).
        Ok(self.pow(a, (q - 1) / 2)? == self.one())
    }

    /// The first nonzero non-square in index order.
    pub fn find_nonresidue(&self) -> GFElement {
        let squares = self.square_table();
        let idx = (1..self.order())
            .find(|&i| !squares[i as usize])
            .expect("odd characteristic has non-squares");
        self.from_index(idx).expect("index in range")
    }

    pub(crate) fn add_unchecked(&self, a: &GFElement, b: &GFElement) -> GFElement {
        GFElement {
            p: self.p,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| zp::add(x, y, self.p))
                .collect(),
        }
    }

    pub(crate) fn neg_unchecked(&self, a: &GFElement) -> GFElement {
        GFElement {
            p: self.p,
            coords: a.coords.iter().map(|&x| zp::neg(x, self.p)).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &GFElement, b: &GFElement) -> GFElement {
        let p = self.p;
        let k = self.k;
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                prod[i + j] = zp::add(prod[i + j], zp::mul(x, y, p), p);
            }
        }
        let mut modulus = self.poly.clone();
        modulus.push(1);
        let mut coords = poly_rem(&prod, &modulus, p);
        coords.resize(k, 0);
        GFElement { p, coords }
    }

    pub(crate) fn trace_unchecked(&self, a: &GFElement) -> u32 {
        a.coords
            .iter()
            .zip(&self.trace_of_power)
            .fold(0, |acc, (&x, &t)| zp::add(acc, zp::mul(x, t, self.p), self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldSpec {
        FieldSpec::new(3, 2, vec![1, 0]).unwrap()
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(find_irreducible(3, 1).unwrap(), vec![0]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0]);
        assert_eq!(find_irreducible(5, 2).unwrap(), vec![2, 0]);
    }

    #[test]
    fn rejects_bad_characteristic() {
        for p in [0, 1, 2, 4, 9] {
            let err = find_irreducible(p, 1).unwrap_err();
            assert_eq!(err, Error::InvalidParameter("p must be an odd prime".into()));
        }
        assert!(FieldSpec::new(3, 2, vec![2, 0]).is_err()); // x^2 + 2 = (x-1)(x+1)
    }

    #[test]
    fn irreducible_output_has_no_root() {
        for p in [3u32, 5, 7] {
            for k in 1..=3 {
                let f = find_irreducible(p, k).unwrap();
                if k == 1 {
                    continue;
                }
                for x in 0..p {
                    let mut val = 1u32;
                    for c in f.iter().rev() {
                        val = zp::add(zp::mul(val, x, p), *c, p);
                    }
                    assert_ne!(val, 0, "p={p} k={k} root {x}");
                }
            }
        }
    }

    #[test]
    fn nonresidue_examples() {
        let z3 = FieldSpec::standard(3, 1).unwrap();
        assert_eq!(z3.find_nonresidue().coords(), &[2]);
        let z7 = FieldSpec::standard(7, 1).unwrap();
        assert_eq!(z7.find_nonresidue().coords(), &[3]);
        let f = gf9();
        assert_eq!(f.find_nonresidue().coords(), &[1, 1]);
    }

    #[test]
    fn mul_examples() {
        let f = gf9();
        let one_plus_t = f.element(vec![1, 1]).unwrap();
        let t = f.basis_element(1);
        assert_eq!(f.mul(&one_plus_t, &one_plus_t).unwrap().coords(), &[0, 2]);
        assert_eq!(f.mul(&t, &t).unwrap().coords(), &[2, 0]);
        assert_eq!(f.mul(&one_plus_t, &f.one()).unwrap(), one_plus_t);
    }

    #[test]
    fn inverse_examples() {
        let f = gf9();
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.basis_element(1)).unwrap().coords(), &[0, 2]);
        let z3 = FieldSpec::standard(3, 1).unwrap();
        assert_eq!(z3.inv(&z3.constant(2)).unwrap().coords(), &[2]);
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = gf9();
        let g = FieldSpec::standard(5, 2).unwrap();
        assert!(f.mul(&f.one(), &g.one()).is_err());
        let z3 = FieldSpec::standard(3, 1).unwrap();
        assert!(f.add(&f.one(), &z3.one()).is_err());
    }

    #[test]
    fn trace_examples() {
        let f = gf9();
        assert_eq!(f.trace(&f.zero()).unwrap(), 0);
        assert_eq!(f.trace(&f.one()).unwrap(), 2);
        assert_eq!(f.trace(&f.basis_element(1)).unwrap(), 0);
    }

    #[test]
    fn trace_matches_frobenius_definition() {
        for (p, k) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = FieldSpec::standard(p, k).unwrap();
            for a in f.elements() {
                let fro = f.frobenius_trace(&a);
                assert!(fro.coords()[1..].iter().all(|&c| c == 0));
                assert_eq!(fro.coords()[0], f.trace(&a).unwrap());
            }
        }
    }

    #[test]
    fn dual_basis_examples() {
        let f = gf9();
        let dual = f
            .trace_dual_basis(&[f.one(), f.basis_element(1)])
            .unwrap();
        assert_eq!(dual[0].coords(), &[2, 0]);
        assert_eq!(dual[1].coords(), &[0, 1]);

        let z3 = FieldSpec::standard(3, 1).unwrap();
        assert_eq!(z3.trace_dual_basis(&[z3.one()]).unwrap(), vec![z3.one()]);

        let dependent = [f.one(), f.constant(2)];
        assert_eq!(f.trace_dual_basis(&dependent), Err(Error::LinearlyDependent));
    }

    #[test]
    fn dual_basis_defining_property() {
        let f = FieldSpec::standard(3, 3).unwrap();
        let basis: Vec<GFElement> = [vec![1, 1, 0], vec![0, 1, 2], vec![2, 0, 1]]
            .into_iter()
            .map(|c| f.element(c).unwrap())
            .collect();
        let dual = f.trace_dual_basis(&basis).unwrap();
        for (i, e) in basis.iter().enumerate() {
            for (j, g) in dual.iter().enumerate() {
                let tr = f.trace(&f.mul(e, g).unwrap()).unwrap();
                assert_eq!(tr, u32::from(i == j));
            }
        }
    }

    #[test]
    fn dual_coords_roundtrip() {
        let f = FieldSpec::standard(5, 2).unwrap();
        for a in f.elements() {
            let c = f.dual_coords(&a).unwrap();
            assert_eq!(f.from_dual_coords(&c).unwrap(), a);
        }
    }

    #[test]
    fn display() {
        let f = gf9();
        assert_eq!(f.element(vec![1, 1]).unwrap().to_string(), "1+t");
        assert_eq!(f.element(vec![0, 2]).unwrap().to_string(), "2t");
        assert_eq!(f.zero().to_string(), "0");
    }
}
