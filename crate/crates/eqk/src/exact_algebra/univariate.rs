//! Dense univariate polynomials over ℚ (coefficient `i` is the coefficient of `t^i`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type UPoly = Vec<BigRational>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn from_ints(v: &[i64]) -> UPoly {
    trim(v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

pub fn from_bigints(v: &[BigInt]) -> UPoly {
    trim(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

pub fn one() -> UPoly {
    vec![BigRational::one()]
}

/// `1 - t^d`.
pub fn one_minus_t_pow(d: usize) -> UPoly {
    let mut p = vec![BigRational::zero(); d + 1];
    p[0] = BigRational::one();
    p[d] -= BigRational::one();
    trim(p)
}

/// `1 + t^e + t^{2e} + … + t^{d-e}`, i.e. `(1 - t^d)/(1 - t^e)` for `e | d`.
pub fn geometric(d: usize, e: usize) -> UPoly {
    let mut p = vec![BigRational::zero(); d - e + 1];
    let mut k = 0;
    while k <= d - e {
        p[k] = BigRational::one();
        k += e;
    }
    p
}

pub fn degree(p: &UPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

pub fn scale(a: &UPoly, c: &BigRational) -> UPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &UPoly, k: usize) -> UPoly {
    let mut acc = one();
    for _ in 0..k {
        acc = mul(&acc, a);
    }
    acc
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let b = trim(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut qt = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lb;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        qt[k] = c;
        r = trim(r);
    }
    (trim(qt), r)
}

/// Exact quotient when `b | a`.
pub fn div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let (q, r) = divrem(a, b);
    r.is_empty().then_some(q)
}

pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        x = scale(&x, &l.recip());
    }
    x
}

pub fn eval(p: &UPoly, t: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Power series expansion of `num/den` up to and including degree `order`.
/// Requires `den(0) != 0`.
pub fn series_div(num: &UPoly, den: &UPoly, order: usize) -> Vec<BigRational> {
    assert!(!den.is_empty() && !den[0].is_zero(), "denominator vanishes at 0");
    let inv0 = den[0].recip();
    let mut out = vec![BigRational::zero(); order + 1];
    for k in 0..=order {
        let mut s = num.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..=k.min(den.len() - 1) {
            s -= &den[j] * &out[k - j];
        }
        out[k] = s * &inv0;
    }
    out
}

/// Cyclotomic polynomial `Φ_m`.
pub fn cyclotomic(m: usize) -> UPoly {
    let mut p = one_minus_t_pow(m);
    p = scale(&p, &-BigRational::one());
    for d in 1..m {
        if m % d == 0 {
            p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic division");
        }
    }
    p
}

pub fn to_integers(p: &UPoly) -> Option<Vec<BigInt>> {
    p.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}
