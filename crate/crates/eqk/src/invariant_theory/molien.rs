//! Molien series and degree extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::{rat, FiniteMatrixGroup};
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{identity_rat, mul_rat, RatMat};
use crate::exact_algebra::series::PoincareSeries;
use crate::exact_algebra::univariate::{self as up, UPoly};

#[derive(Clone, Debug, Serialize)]
pub struct MolienData {
    pub series: PoincareSeries,
    pub polynomial_flag: bool,
    pub degrees: Vec<u32>,
}

/// `det(I - tA)` by Faddeev–LeVerrier.
pub fn det_one_minus_t(a: &RatMat) -> UPoly {
    let n = a.len();
    let id = identity_rat(n);
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m: RatMat = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let am = mul_rat(a, &m);
        m = am.iter().zip(&id).map(|(r, i)| r.iter().zip(i).map(|(x, y)| x + y * &c[n - k + 1]).collect()).collect();
        let amk = mul_rat(a, &m);
        let tr: BigRational = (0..n).map(|i| amk[i][i].clone()).sum();
        c[n - k] = -tr / rat(k as i64);
    }
    // det(λI - A) = Σ c_i λ^i, so det(I - tA) = Σ c_{n-k} t^k
    up::trim((0..=n).map(|k| c[n - k].clone()).collect())
}

fn element_order(g: &RatMat, bound: usize) -> Result<usize> {
    let id = identity_rat(g.len());
    let mut p = g.clone();
    for k in 1..=bound {
        if p == id {
            return Ok(k);
        }
        p = mul_rat(&p, g);
    }
    Err(Error::Input("element of infinite order".into()))
}

pub fn molien_series(g: &FiniteMatrixGroup) -> Result<MolienData> {
    let n = g.degree;
    let order = g.order();
    let mut expo = 1usize;
    for e in &g.elements {
        expo = expo.lcm(&element_order(e, order)?);
    }
    let full = up::pow(&up::one_minus_t_pow(expo), n);
    let mut sum: UPoly = Vec::new();
    for e in &g.elements {
        let d = det_one_minus_t(e);
        let q = up::div_exact(&full, &d).ok_or_else(|| Error::Inconsistent("det(I - tγ) does not divide (1 - t^M)^n".into()))?;
        sum = up::add(&sum, &q);
    }
    let sum = up::scale(&sum, &BigRational::new(BigInt::one(), BigInt::from(order)));
    let series = PoincareSeries::from_upoly(&sum, vec![expo as u32; n])?;
    let degrees = extract_degrees(&series, n, expo);
    let polynomial_flag = degrees.is_some();
    Ok(MolienData { series, polynomial_flag, degrees: degrees.unwrap_or_default() })
}

/// Greedy factorization `H = ∏ 1/(1 - t^{d_i})`, smallest `d` first.
pub fn extract_degrees(series: &PoincareSeries, max_count: usize, max_degree: usize) -> Option<Vec<u32>> {
    let horizon = max_count * max_degree + 2;
    let mut f = series.clone();
    let mut degrees: Vec<u32> = Vec::new();
    loop {
        if f.same_function(&PoincareSeries::polynomial(&[1])) {
            return Some(degrees);
        }
        let c = f.expand(horizon);
        if c.first().is_none_or(|x| !x.is_one()) {
            return None;
        }
        let (k, a) = c.iter().enumerate().skip(1).find(|(_, x)| !x.is_zero())?;
        if a < &BigInt::zero() {
            return None;
        }
        let a: usize = a.try_into().ok()?;
        if degrees.len() + a > max_count {
            return None;
        }
        let ks = vec![k as u32; a];
        f = f.mul_factors(&ks);
        degrees.extend(ks);
    }
}
