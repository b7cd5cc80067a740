//! Characters as Laurent polynomials on the maximal torus; irreducible
//! characters by Freudenthal's multiplicity recursion.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{solve_rat, to_rat, transpose};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::{augmentation, Poly};
use crate::exact_algebra::text::format_poly;
use crate::lie_data::CompactGroup;

#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub poly: Poly,
    pub highest_weight: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct CharacterJson<'a> {
    variables: &'a [String],
    character: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    highest_weight: &'a Option<Vec<i64>>,
    dimension: String,
}

impl Character {
    pub fn new(poly: Poly) -> Self {
        Character { poly, highest_weight: None }
    }

    pub fn dimension(&self) -> BigRational {
        augmentation(&self.poly)
    }

    pub fn to_text(&self, g: &CompactGroup) -> String {
        format_poly(&self.poly, &g.coord_names)
    }

    pub fn to_json(&self, g: &CompactGroup) -> serde_json::Value {
        serde_json::to_value(CharacterJson {
            variables: &g.coord_names,
            character: self.to_text(g),
            highest_weight: &self.highest_weight,
            dimension: self.dimension().to_string(),
        })
        .expect("character serializes")
    }

    /// The same character in the simply connected cover's coordinates.
    pub fn cover_view(&self, g: &CompactGroup) -> Poly {
        let r: Vec<Vec<i64>> = g.to_cover.clone();
        self.poly.map_exponents(&r)
    }
}

pub fn weight_monomial(w: &[i64]) -> Monomial {
    Monomial(w.iter().map(|&x| x as i32).collect())
}

/// Laurent polynomial `Σ_{ν ∈ W·λ} e^ν`.
pub fn orbit_sum(g: &CompactGroup, lambda: &[i64]) -> Poly {
    let mut p = Poly::zero(g.rank).into_laurent();
    for v in g.weyl_orbit(lambda) {
        p.add_term(weight_monomial(&v), BigRational::one());
    }
    p
}

/// Is `p` fixed by every simple reflection?
pub fn is_weyl_invariant(g: &CompactGroup, p: &Poly) -> bool {
    (0..g.semisimple_rank()).all(|i| {
        let s = &g.weyl_generators[i];
        p.map_exponents(s) == *p
    })
}

/// Simple-root coordinates of `v` (rational; `None` outside the root span).
pub(crate) struct RootCoords {
    cols: Vec<Vec<BigRational>>,
}

impl RootCoords {
    pub fn new(g: &CompactGroup) -> Self {
        RootCoords { cols: to_rat(&transpose(&g.simple_roots)) }
    }

    pub fn coords(&self, v: &[i64]) -> Option<Vec<BigRational>> {
        if self.cols.first().is_none_or(|r| r.is_empty()) {
            return if v.iter().all(|&x| x == 0) { Some(Vec::new()) } else { None };
        }
        let b: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let x = solve_rat(&self.cols, &b)?;
        // solve_rat only returns a solution when one exists; verify consistency
        let ok = self.cols.iter().zip(&b).all(|(row, bi)| {
            let s: BigRational = row.iter().zip(&x).map(|(a, y)| a * y).sum();
            &s == bi
        });
        ok.then_some(x)
    }

    /// `μ ≤ λ`: `λ - μ` is a non-negative integer combination of simple roots.
    pub fn below(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let d: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        match self.coords(&d) {
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
            None => false,
        }
    }
}

/// Irreducible character with highest weight `lambda` (own coordinates).
pub fn irreducible_character(g: &CompactGroup, lambda: &[i64]) -> Result<Character> {
    if lambda.len() != g.rank {
        return Err(Error::Input(format!("weight has length {}, group rank is {}", lambda.len(), g.rank)));
    }
    if !g.is_dominant(lambda) {
        return Err(Error::Input(format!("weight {lambda:?} is not dominant for {}", g.label)));
    }
    let rc = RootCoords::new(g);
    // All weights: saturated set reached from λ by subtracting simple roots.
    let mut weights: Vec<Vec<i64>> = vec![lambda.to_vec()];
    let mut seen: std::collections::HashSet<Vec<i64>> = weights.iter().cloned().collect();
    let mut k = 0;
    while k < weights.len() {
        let w = weights[k].clone();
        k += 1;
        for a in &g.simple_roots {
            let v: Vec<i64> = w.iter().zip(a).map(|(x, y)| x - y).collect();
            if seen.contains(&v) {
                continue;
            }
            let dom = g.dominant_conjugate(&v);
            if rc.below(&dom, lambda) {
                seen.insert(v.clone());
                weights.push(v);
            }
        }
    }
    let mut dominant: Vec<Vec<i64>> = weights.iter().filter(|w| g.is_dominant(w)).cloned().collect();
    let heights: HashMap<Vec<i64>, BigRational> = dominant.iter().map(|w| (w.clone(), g.height(w))).collect();
    dominant.sort_by(|a, b| heights[b].cmp(&heights[a]).then_with(|| b.cmp(a)));

    let two_rho = g.two_rho();
    let norm = |v: &[i64]| g.inner(v, v) + g.inner(v, &two_rho);
    let top = norm(lambda);
    let mut mult: HashMap<Vec<i64>, BigInt> = HashMap::new();
    mult.insert(lambda.to_vec(), BigInt::one());
    let lookup = |mult: &HashMap<Vec<i64>, BigInt>, v: &[i64]| -> BigInt {
        if !seen.contains(v) {
            return BigInt::zero();
        }
        mult.get(&g.dominant_conjugate(v)).cloned().unwrap_or_default()
    };
    for mu in dominant.iter().skip(1) {
        let mut s = BigRational::zero();
        for a in &g.positive_roots {
            let mut kk = 1i64;
            loop {
                let v: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + kk * y).collect();
                if !seen.contains(&v) {
                    break;
                }
                let m = lookup(&mult, &v);
                if !m.is_zero() {
                    s += g.inner(&v, a) * BigRational::from_integer(m);
                }
                kk += 1;
            }
        }
        let denom = &top - norm(mu);
        let m = (BigRational::from_integer(BigInt::from(2)) * s) / denom;
        if !m.is_integer() {
            return Err(Error::Inconsistent(format!("non-integral multiplicity at {mu:?}")));
        }
        mult.insert(mu.clone(), m.to_integer());
    }
    let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for w in &weights {
        let m = mult.get(&g.dominant_conjugate(w)).cloned().unwrap_or_default();
        if !m.is_zero() {
            terms.insert(weight_monomial(w), BigRational::from_integer(m));
        }
    }
    let poly = Poly::from_terms(g.rank, terms).into_laurent();
    Ok(Character { poly, highest_weight: Some(lambda.to_vec()) })
}

/// Irreducible character from a highest weight in cover coordinates.
pub fn irreducible_character_cover(g: &CompactGroup, cover_weight: &[i64]) -> Result<Character> {
    let own = g
        .own_from_cover(cover_weight)
        .ok_or_else(|| Error::Input(format!("weight {cover_weight:?} is not in the character lattice of {}", g.label)))?;
    irreducible_character(g, &own)
}

#[cfg(test)]
pub(crate) fn to_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        num_traits::ToPrimitive::to_i64(&x.to_integer())
    } else {
        None
    }
}
