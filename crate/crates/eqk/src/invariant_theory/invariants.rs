//! Invariant polynomials by Reynolds averaging, degree by degree.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::group::{rat, FiniteMatrixGroup};
use super::molien::molien_series;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{det_rat, RatMat};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::Poly;

/// `f(γx)`.
pub fn act(g: &RatMat, f: &Poly) -> Poly {
    let n = g.len();
    let lin: Vec<Poly> = (0..n)
        .map(|i| Poly::from_terms(n, (0..n).filter(|&j| !g[i][j].is_zero()).map(|j| (Monomial::var(n, j), g[i][j].clone()))))
        .collect();
    f.substitute(&lin).expect("linear substitution")
}

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as i32;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as i32;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// Row-reduced span of polynomials, keyed by leading monomial.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<Monomial, Poly>,
}

impl Echelon {
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut p = p.clone();
        for (piv, row) in self.rows.iter().rev() {
            let c = p.coeff(piv);
            if !c.is_zero() {
                p = &p - &row.scale(&c);
            }
        }
        p
    }

    /// Adds `p` to the span; returns whether the span grew.
    pub fn insert(&mut self, p: &Poly) -> bool {
        let r = self.reduce(p);
        let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else { return false };
        let r = r.scale(&lc.recip());
        for row in self.rows.values_mut() {
            let c = row.coeff(&lm);
            if !c.is_zero() {
                *row = &*row - &r.scale(&c);
            }
        }
        self.rows.insert(lm, r);
        true
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.rows.values().rev().cloned().collect()
    }
}

/// Reynolds image `(1/|Γ|) Σ f(γx)` of every monomial of degree `d`, reduced to a basis.
pub fn invariants_of_degree(g: &FiniteMatrixGroup, d: u32) -> Vec<Poly> {
    let n = g.degree;
    let mons = monomials_of_degree(n, d);
    let mut acc: Vec<Poly> = vec![Poly::zero(n); mons.len()];
    for e in &g.elements {
        let lin: Vec<Poly> = (0..n)
            .map(|i| Poly::from_terms(n, (0..n).filter(|&j| !e[i][j].is_zero()).map(|j| (Monomial::var(n, j), e[i][j].clone()))))
            .collect();
        let mut pows: Vec<Vec<Poly>> = lin.iter().map(|l| vec![Poly::one(n), l.clone()]).collect();
        for (k, m) in mons.iter().enumerate() {
            let mut prod = Poly::one(n);
            for (i, &x) in m.exps().iter().enumerate() {
                while pows[i].len() <= x as usize {
                    let next = &pows[i][pows[i].len() - 1] * &lin[i];
                    pows[i].push(next);
                }
                if x > 0 {
                    prod = &prod * &pows[i][x as usize];
                }
            }
            acc[k] = &acc[k] + &prod;
        }
    }
    let mut ech = Echelon::default();
    for a in &acc {
        ech.insert(a);
    }
    ech.basis()
}

pub fn derivative(p: &Poly, i: usize) -> Poly {
    let n = p.nvars();
    Poly::from_terms(
        n,
        p.terms().filter(|(m, _)| m.exps()[i] != 0).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * rat(k as i64))
        }),
    )
}

/// Nonzero Jacobian determinant certified by evaluation at a point.
pub fn jacobian_nonzero(gens: &[Poly], n: usize) -> bool {
    if gens.len() != n {
        return false;
    }
    // generic points: off every hyperplane with small integer coefficients
    let points: Vec<Vec<i64>> = (0..4)
        .map(|k| (0..n).map(|i| ((i as i64 + 2 + k) * 7919 + 13) * (i as i64 + 1).pow(3 + k as u32) + 101 * k).collect())
        .collect();
    points.iter().any(|pt| {
        let q: Vec<BigRational> = pt.iter().map(|&x| rat(x)).collect();
        let j: RatMat = gens.iter().map(|f| (0..n).map(|i| derivative(f, i).eval(&q)).collect()).collect();
        !det_rat(&j).is_zero()
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GeneratorCertificate {
    /// `n` algebraically independent invariants with `∏ d_i = |Γ|`.
    Jacobian { degree_product: u64 },
    /// All degrees up to Noether's bound `|Γ|` were searched.
    NoetherBound { bound: u32 },
    /// Search stopped early; the list may be incomplete.
    Partial { bound: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantGenerators {
    #[serde(skip)]
    pub generators: Vec<Poly>,
    pub generator_text: Vec<String>,
    pub degrees: Vec<u32>,
    pub complete: bool,
    pub certificate: GeneratorCertificate,
}

fn products_of_degree(gens: &[Poly], degs: &[u32], d: u32, n: usize) -> Vec<Poly> {
    fn rec(k: usize, left: u32, gens: &[Poly], degs: &[u32], cur: Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        if k == gens.len() {
            return;
        }
        let mut p = cur.clone();
        let mut l = left;
        loop {
            rec(k + 1, l, gens, degs, p.clone(), out);
            if degs[k] > l {
                break;
            }
            l -= degs[k];
            p = &p * &gens[k];
        }
    }
    let mut out = Vec::new();
    rec(0, d, gens, degs, Poly::one(n), &mut out);
    out
}

/// Minimal homogeneous generators of `ℚ[x]^Γ`, searched degree by degree.
/// Each degree's invariant count is checked against the Molien series.
pub fn fundamental_invariants(g: &FiniteMatrixGroup, max_degree: Option<u32>) -> Result<InvariantGenerators> {
    let n = g.degree;
    let order = g.order() as u32;
    let bound = max_degree.unwrap_or(order).min(order.max(1));
    let molien = molien_series(g)?;
    let expected = molien.series.expand(bound as usize);
    let mut gens: Vec<Poly> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    for d in 1..=bound {
        let inv = invariants_of_degree(g, d);
        if num_bigint::BigInt::from(inv.len()) != expected[d as usize] {
            return Err(Error::Inconsistent(format!(
                "degree {d}: {} Reynolds invariants, Molien predicts {}",
                inv.len(),
                expected[d as usize]
            )));
        }
        let mut ech = Echelon::default();
        for p in products_of_degree(&gens, &degs, d, n) {
            ech.insert(&p);
        }
        for p in inv {
            if ech.insert(&p) {
                gens.push(p);
                degs.push(d);
            }
        }
        let prod: u64 = degs.iter().map(|&x| x as u64).product();
        if gens.len() == n && prod == order as u64 && jacobian_nonzero(&gens, n) {
            return Ok(finish(gens, degs, true, GeneratorCertificate::Jacobian { degree_product: prod }));
        }
    }
    let complete = bound >= order;
    let cert = if complete { GeneratorCertificate::NoetherBound { bound } } else { GeneratorCertificate::Partial { bound } };
    Ok(finish(gens, degs, complete, cert))
}

fn finish(gens: Vec<Poly>, degrees: Vec<u32>, complete: bool, certificate: GeneratorCertificate) -> InvariantGenerators {
    let names = crate::exact_algebra::text::indexed_names("x", gens.first().map_or(0, |p| p.nvars()));
    let generator_text = gens.iter().map(|p| crate::exact_algebra::text::format_poly(p, &names)).collect();
    InvariantGenerators { generators: gens, generator_text, degrees, complete, certificate }
}
