//! Exact linear algebra over the prime field Z_p.
//!
//! Matrices are plain row vectors of residues in `[0, p)`. Everything here is
//! small and dense; the callers never go beyond a few dozen columns.

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - (b % p) as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue (p prime).
pub fn inv(a: u32, p: u32) -> Option<u32> {
    if a % p == 0 {
        None
    } else {
        Some(pow(a, p as u64 - 2, p))
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
///
/// Pivots are chosen left to right, so the result is the unique canonical
/// basis of the row span.
pub fn rref(rows: &[Vec<u32>], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let scale = inv(m[r][c], p).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let t = mul(f, m[r][j], p);
                    m[i][j] = sub(m[i][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    rref(rows, p).0.len()
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn invert(matrix: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = matrix.len();
    let aug: Vec<Vec<u32>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, p);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Finds a nonzero vector lying in both row spans, assuming each input list
/// is linearly independent. Returns `None` when the spans meet only in zero.
pub fn common_vector(left: &[Vec<u32>], right: &[Vec<u32>], p: u32) -> Option<Vec<u32>> {
    let width = left.first().or(right.first()).map_or(0, Vec::len);
    let a = left.len();
    // Rows (u_i | e_i) and (v_j | 0); eliminate on the first `width` columns only.
    let mut m: Vec<Vec<u32>> = left
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let mut r = u.clone();
            r.extend((0..a).map(|j| u32::from(i == j)));
            r
        })
        .chain(right.iter().map(|v| {
            let mut r = v.clone();
            r.extend(std::iter::repeat_n(0, a));
            r
        }))
        .collect();
    let total = width + a;
    let mut r = 0;
    for c in 0..width {
        let Some(sel) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let scale = inv(m[r][c], p).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..total {
                    let t = mul(f, m[r][j], p);
                    m[i][j] = sub(m[i][j], t, p);
                }
            }
        }
        r += 1;
    }
    // Any row left with a zero head encodes sum c_i u_i = -sum d_j v_j.
    let row = m[r..].iter().find(|row| row[width..].iter().any(|&x| x != 0))?;
    let mut point = vec![0u32; width];
    for (coef, u) in row[width..].iter().zip(left) {
        if *coef != 0 {
            for (acc, &x) in point.iter_mut().zip(u) {
                *acc = add(*acc, mul(*coef, x, p), p);
            }
        }
    }
    Some(point)
}
