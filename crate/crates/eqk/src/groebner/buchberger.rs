//! Buchberger's algorithm: normal selection strategy with sugar degrees and the
//! Gebauer–Möller pair criteria, under a deterministic pair budget.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::Poly;

/// Polynomial as a term list sorted descending by a fixed monomial order.
#[derive(Clone, Debug)]
pub(crate) struct SPoly {
    pub terms: Vec<(Monomial, BigRational)>,
}

impl SPoly {
    pub fn from_poly(p: &Poly, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, BigRational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        SPoly { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigRational {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].1.recip();
        if inv.is_one() {
            return;
        }
        for t in self.terms.iter_mut() {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * g`, merging term lists.
    pub fn sub_mul(&self, c: &BigRational, m: &Monomial, g: &SPoly, ord: &MonomialOrder) -> SPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, BigRational)> =
            g.terms.iter().map(|(gm, gc)| (gm.mul(m), -(gc * c))).collect();
        while i < self.terms.len() && j < shifted.len() {
            match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted[j..].iter().cloned());
        SPoly { terms: out }
    }

    pub fn sugar(&self, w: &[u32]) -> i64 {
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max().unwrap_or(0)
    }
}

/// Full reduction of `f` modulo `basis` (which need not be a Gröbner basis).
pub(crate) fn reduce_full(f: &SPoly, basis: &[&SPoly], ord: &MonomialOrder) -> SPoly {
    let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
    let mut p = f.clone();
    while !p.is_zero() {
        let (m, c) = p.terms[0].clone();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = m.div(g.lm());
                let coef = &c / g.lc();
                p = p.sub_mul(&coef, &q, g, ord);
            }
            None => {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    SPoly { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: i64,
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.exps().iter().zip(b.exps()).all(|(&x, &y)| x == 0 || y == 0)
}

/// Statistics reported alongside a basis or a budget failure.
#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub basis_size: usize,
}

/// Reduced Gröbner basis (monic, sorted by ascending leading monomial).
pub(crate) fn buchberger(
    gens: &[Poly],
    nvars: usize,
    ord: &MonomialOrder,
    weights: &[u32],
    budget: u64,
) -> Result<(Vec<SPoly>, GbStats)> {
    let mut stats = GbStats::default();
    let mut polys: Vec<SPoly> = Vec::new();
    let mut sugars: Vec<i64> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<SPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = SPoly::from_poly(g, ord);
            s.make_monic();
            s
        })
        .collect();
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));

    for s in input {
        let refs: Vec<&SPoly> = active.iter().map(|&k| &polys[k]).collect();
        let mut h = reduce_full(&s, &refs, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let sg = s.sugar(weights);
        insert(&mut polys, &mut sugars, &mut active, &mut pairs, h, sg, weights);
        if polys.last().unwrap().lm().is_one() {
            break;
        }
    }

    while !pairs.is_empty() {
        if active.iter().any(|&k| polys[k].lm().is_one()) {
            break;
        }
        // normal strategy with sugar: minimal sugar, then minimal lcm
        let mut best = 0;
        for k in 1..pairs.len() {
            let c = pairs[k]
                .sugar
                .cmp(&pairs[best].sugar)
                .then_with(|| ord.cmp(&pairs[k].lcm, &pairs[best].lcm));
            if c == Ordering::Less {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        if stats.pairs_reduced >= budget {
            return Err(Error::budget(
                "groebner_basis",
                format!(
                    "{} pairs reduced ({} to zero), {} pending, {} basis elements",
                    stats.pairs_reduced,
                    stats.zero_reductions,
                    pairs.len() + 1,
                    active.len()
                ),
            ));
        }
        stats.pairs_reduced += 1;
        let f = &polys[p.i];
        let g = &polys[p.j];
        let mf = p.lcm.div(f.lm());
        let mg = p.lcm.div(g.lm());
        let a = SPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c / f.lc())).collect() };
        let s = a.sub_mul(&g.lc().recip(), &mg, g, ord);
        let refs: Vec<&SPoly> = active.iter().map(|&k| &polys[k]).collect();
        let mut h = reduce_full(&s, &refs, ord);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.make_monic();
        insert(&mut polys, &mut sugars, &mut active, &mut pairs, h, p.sugar, weights);
    }

    // Reduced basis.
    let mut basis: Vec<SPoly> = active.iter().map(|&k| polys[k].clone()).collect();
    if basis.iter().any(|b| b.lm().is_one()) {
        let n1 = SPoly { terms: vec![(Monomial::one(nvars), BigRational::one())] };
        stats.basis_size = 1;
        return Ok((vec![n1], stats));
    }
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<SPoly> = Vec::new();
    for b in basis {
        if !minimal.iter().any(|m| m.lm().divides(b.lm())) {
            minimal.retain(|m| !b.lm().divides(m.lm()));
            minimal.push(b);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&SPoly> = minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p).collect();
        let head = SPoly { terms: vec![minimal[i].terms[0].clone()] };
        let tail = SPoly { terms: minimal[i].terms[1..].to_vec() };
        let r = reduce_full(&tail, &others, ord);
        let mut full = head;
        full.terms.extend(r.terms);
        full.make_monic();
        reduced.push(full);
    }
    reduced.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    stats.basis_size = reduced.len();
    Ok((reduced, stats))
}

/// Gebauer–Möller update when adding `h`.
fn insert(
    polys: &mut Vec<SPoly>,
    sugars: &mut Vec<i64>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: SPoly,
    sugar: i64,
    weights: &[u32],
) {
    let hi = polys.len();
    let hlm = h.lm().clone();
    let hsugar = sugar.max(h.sugar(weights));
    polys.push(h);
    sugars.push(hsugar);

    let make = |k: usize, polys: &Vec<SPoly>, sugars: &Vec<i64>| -> Pair {
        let lcm = polys[k].lm().lcm(&hlm);
        let s1 = sugars[k] + lcm.div(polys[k].lm()).weighted_degree(weights);
        let s2 = hsugar + lcm.div(&hlm).weighted_degree(weights);
        Pair { i: k, j: hi, lcm, sugar: s1.max(s2) }
    };

    let cand: Vec<Pair> = active.iter().map(|&k| make(k, polys, sugars)).collect();
    // Chain criterion among the new pairs.
    let mut keep: Vec<Pair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let copr = coprime(polys[p.i].lm(), &hlm);
        let dominated = cand.iter().enumerate().any(|(k, q)| {
            k != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || k < idx)
        });
        if copr || !dominated {
            keep.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
        }
    }
    // Product criterion: drop coprime pairs (after they served in the chain test).
    keep.retain(|p| !coprime(polys[p.i].lm(), &hlm));
    // Remove old pairs made redundant by h.
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && polys[p.i].lm().lcm(&hlm) != p.lcm
            && polys[p.j].lm().lcm(&hlm) != p.lcm)
    });
    pairs.extend(keep);
    active.retain(|&k| !hlm.divides(polys[k].lm()));
    active.push(hi);
}
