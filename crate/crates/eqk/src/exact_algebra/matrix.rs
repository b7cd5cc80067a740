//! Small dense matrices: exact rational linear algebra and integer lattice
//! normal forms (Hermite and Smith).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMat = Vec<Vec<i64>>;
pub type RatMat = Vec<Vec<BigRational>>;

pub fn identity_int(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn mul_int(a: &IntMat, b: &IntMat) -> IntMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_int_vec(a: &IntMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn to_rat(a: &IntMat) -> RatMat {
    a.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Converts a rational matrix with integral entries back to machine integers.
pub fn to_int(a: &RatMat) -> Option<IntMat> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect()
        })
        .collect()
}

pub fn identity_rat(n: usize) -> RatMat {
    to_rat(&identity_int(n))
}

pub fn mul_rat(a: &RatMat, b: &RatMat) -> RatMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(BigRational::zero(), |acc, (x, br)| acc + x * &br[j])
                })
                .collect()
        })
        .collect()
}

pub fn mul_rat_vec(a: &RatMat, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(a: &mut RatMat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(a: &RatMat) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

pub fn inverse_rat(a: &RatMat) -> Option<RatMat> {
    let n = a.len();
    let mut aug: RatMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some solution `x` of `a x = b`, if one exists.
pub fn solve_rat(a: &RatMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: RatMat = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel_rat(a: &RatMat, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn det_rat(a: &RatMat) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Row-style Hermite normal form over ℤ: returns nonzero rows in echelon form
/// with positive pivots and reduced entries above each pivot.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..m {
        if r == a.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let qt = a[i][c].div_floor(&a[r][c]);
                for j in c..m {
                    let t = &qt * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let qt = a[i][c].div_floor(&a[r][c]);
                if !qt.is_zero() {
                    for j in c..m {
                        let t = &qt * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Does the ℤ-span of a Hermite basis (from [`hermite_rows`]) contain `v`?
pub fn hermite_contains(h: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in h {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        if w[c].is_zero() {
            continue;
        }
        let (qt, rem) = w[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for j in c..w.len() {
            let t = &qt * &row[j];
            w[j] -= t;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Invariant factors (Smith normal form diagonal, nonzero entries only).
pub fn smith_invariants(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick smallest nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let qt = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let x = &qt * &m[t][j];
                m[i][j] -= x;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let qt = m[t][j].div_floor(&m[t][t]);
            for i in t..rows {
                let x = &qt * &m[i][t];
                m[i][j] -= x;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition
        let p = m[t][t].clone();
        let mut bad = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &p).is_zero() {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            for j in t..cols {
                let x = m[i][j].clone();
                m[t][j] += x;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// ℤ-basis of the integer kernel `{x ∈ ℤ^cols : a x = 0}`.
pub fn kernel_int(a: &IntMat, cols: usize) -> Vec<Vec<i64>> {
    // Hermite-reduce [a^T | I]; rows whose a^T part vanishes span the kernel.
    let rows: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut r: Vec<BigInt> = a.iter().map(|row| BigInt::from(row[j])).collect();
            r.extend((0..cols).map(|k| BigInt::from((k == j) as i64)));
            r
        })
        .collect();
    let k = a.len();
    let h = hermite_rows(&rows);
    h.into_iter()
        .filter(|r| r[..k].iter().all(|x| x.is_zero()))
        .map(|r| r[k..].iter().map(|x| x.to_i64().expect("kernel entry fits")).collect())
        .collect()
}

/// Solve `b x = v` over ℤ where the columns of `b` are independent.
pub fn solve_int_columns(b: &IntMat, v: &[i64]) -> Option<Vec<i64>> {
    let bv: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let x = solve_rat(&to_rat(b), &bv)?;
    let check: Vec<BigRational> = mul_rat_vec(&to_rat(b), &x);
    if check != bv {
        return None;
    }
    x.iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&bi(&[&[2]])), vec![BigInt::from(2)]);
        assert_eq!(
            smith_invariants(&bi(&[&[2, -1], &[-1, 2]])),
            vec![BigInt::from(1), BigInt::from(3)]
        );
        assert_eq!(smith_invariants(&bi(&[&[1, -1]])), vec![BigInt::from(1)]);
    }

    #[test]
    fn hermite_membership() {
        let h = hermite_rows(&bi(&[&[2, 0], &[1, 1]]));
        assert!(hermite_contains(&h, &[BigInt::from(3), BigInt::from(1)]));
        assert!(!hermite_contains(&h, &[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn integer_kernel() {
        let k = kernel_int(&vec![vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1], 0);
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = to_rat(&vec![vec![2, 1], vec![1, 1]]);
        let inv = inverse_rat(&a).unwrap();
        assert_eq!(mul_rat(&a, &inv), identity_rat(2));
        assert_eq!(det_rat(&a), BigRational::one());
    }
}

/// JSON matrix entry: an integer or a string such as `"-1/2"`.
#[derive(Clone, Debug, serde::Deserialize, serde::Serialize, PartialEq)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Text(String),
}

impl RatEntry {
    pub fn to_rational(&self) -> crate::error::Result<BigRational> {
        match self {
            RatEntry::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            RatEntry::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        match (q.is_integer(), q.to_integer().to_i64()) {
            (true, Some(i)) => RatEntry::Int(i),
            _ => RatEntry::Text(q.to_string()),
        }
    }
}

pub fn parse_rational(s: &str) -> crate::error::Result<BigRational> {
    let bad = || crate::error::Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| bad())?;
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat_matrix_from_json(m: &[Vec<RatEntry>]) -> crate::error::Result<RatMat> {
    m.iter().map(|r| r.iter().map(|e| e.to_rational()).collect()).collect()
}

pub fn rat_matrix_to_json(m: &RatMat) -> Vec<Vec<RatEntry>> {
    m.iter().map(|r| r.iter().map(RatEntry::from_rational).collect()).collect()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Column echelon form `a u = h` with `u` unimodular.
pub fn column_hermite(a: &IntMat) -> (IntMat, IntMat) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity_int(n);
    let mut col = 0;
    for r in 0..m {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if h[r][j] == 0 {
                continue;
            }
            let (a0, b0) = (h[r][col], h[r][j]);
            let (g, x, y) = ext_gcd(a0, b0);
            let (p, q) = (a0 / g, b0 / g);
            for mat in [&mut h, &mut u] {
                for row in mat.iter_mut() {
                    let (c1, c2) = (row[col], row[j]);
                    row[col] = x * c1 + y * c2;
                    row[j] = -q * c1 + p * c2;
                }
            }
        }
        if h[r][col] != 0 {
            col += 1;
        }
    }
    (h, u)
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve_int(a: &IntMat, b: &[i64]) -> Option<Vec<i64>> {
    let n = a.first().map_or(0, |r| r.len());
    let (h, u) = column_hermite(a);
    let mut y = vec![0i64; n];
    let mut col = 0;
    for (r, row) in h.iter().enumerate() {
        let acc: i64 = (0..col).map(|c| row[c] * y[c]).sum();
        let rest = b[r] - acc;
        if col < n && row[col] != 0 {
            if rest % row[col] != 0 {
                return None;
            }
            y[col] = rest / row[col];
            col += 1;
        } else if rest != 0 {
            return None;
        }
    }
    Some(mul_int_vec(&u, &y))
}
