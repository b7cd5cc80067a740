//! Restriction to the `T`-fixed points `W ⊂ G/T`: `ι ∘ λ (a ⊗ b) = (a · w(b))_w`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::tor0::{tor0_presentation, Tor0};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{inverse_rat, mul_rat, rank_rat, solve_int, to_int, to_rat, IntMat, RatMat};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::format_poly;
use crate::groebner::normal_form;
use crate::lie_data::{weyl_elements, GroupPair};

#[derive(Clone, Debug, Serialize)]
pub struct IotaComponent {
    /// The Weyl element acting on the subgroup's character lattice.
    pub weyl_element: IntMat,
    /// `(tor0 generator, image in RT)`.
    pub images: Vec<(String, String)>,
    #[serde(skip)]
    pub image_polys: Vec<Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IotaMap {
    pub pair: String,
    pub components: Vec<IotaComponent>,
    #[serde(skip)]
    pub tor0: Tor0,
}

fn weyl_on_subgroup(pair: &GroupPair, w: &IntMat) -> Result<IntMat> {
    let r: RatMat = to_rat(&pair.restriction);
    let rinv = inverse_rat(&r).ok_or_else(|| Error::Input("restriction matrix is not invertible".into()))?;
    to_int(&mul_rat(&mul_rat(&r, &to_rat(w)), &rinv))
        .ok_or_else(|| Error::Input("Weyl group does not preserve the subgroup character lattice".into()))
}

fn laurent_monomial(e: &[i64]) -> Poly {
    Poly::monomial(Monomial(e.iter().map(|&x| x as i32).collect()), BigRational::one()).into_laurent()
}

pub fn iota_map(pair: &GroupPair, ctx: &Ctx) -> Result<IotaMap> {
    let h = &pair.subgroup;
    if !h.is_torus() || h.rank != pair.ambient.rank {
        return Err(Error::Input(format!("{} is not a maximal torus of {}", h.label, pair.ambient.label)));
    }
    let tor0 = tor0_presentation(pair, ctx)?;
    let rt = &tor0.map.target;
    let k = tor0.copy_size;
    let rt_basis = rt.ring.basis(ctx)?;
    let mut components = Vec::new();
    for w in weyl_elements(&pair.ambient, ctx.limits.weyl)? {
        let wh = weyl_on_subgroup(pair, &w)?;
        let mut image_polys: Vec<Poly> = (0..k).map(|i| Poly::var(k, i)).collect();
        for g in &rt.generators {
            image_polys.push(rt.express(&g.poly.map_exponents(&wh))?);
        }
        for (r, text) in tor0.ring.relation_polys.iter().zip(&tor0.ring.relations) {
            if !normal_form(&r.substitute(&image_polys)?, &rt_basis).is_zero() {
                return Err(Error::IllDefinedMap(text.clone()));
            }
        }
        let images = tor0
            .ring
            .vars
            .iter()
            .zip(&image_polys)
            .map(|(v, p)| Ok((v.clone(), format_poly(&rt.evaluate(p)?, &h.coord_names))))
            .collect::<Result<_>>()?;
        components.push(IotaComponent { weyl_element: wh, images, image_polys });
    }
    Ok(IotaMap { pair: pair.name.clone(), components, tor0 })
}

impl IotaMap {
    /// Components of `ι ∘ λ (x)` as Laurent polynomials on the torus.
    pub fn apply(&self, x: &Poly) -> Result<Vec<Poly>> {
        let rt = &self.tor0.map.target;
        self.components.iter().map(|c| rt.evaluate(&x.substitute(&c.image_polys)?)).collect()
    }

    pub fn apply_text(&self, x: &Poly) -> Result<Vec<String>> {
        let names = &self.tor0.map.target.group.coord_names;
        Ok(self.apply(x)?.iter().map(|p| format_poly(p, names)).collect())
    }

    /// `a ⊗ b` for Laurent polynomials `a, b` on the torus.
    pub fn tensor(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let rt = &self.tor0.map.target;
        Ok(&self.tor0.first(&rt.express(a)?) * &self.tor0.second(&rt.express(b)?))
    }

    /// Injectivity of the joint map on the span of `t^u ⊗ t^v`, `|u_i|, |v_i| ≤ window`.
    pub fn window_injective(&self, window: u32, ctx: &Ctx) -> Result<bool> {
        let n = self.tor0.map.target.group.rank;
        let k = window as i64;
        let side = 2 * k + 1;
        let total = side.pow(2 * n as u32);
        if total > 5000 {
            return Err(Error::budget("window_injective", format!("{total} window elements")));
        }
        let basis = self.tor0.ring.basis(ctx)?;
        let mut nf_rows = Vec::new();
        let mut img_rows = Vec::new();
        for idx in 0..total {
            let mut e = Vec::with_capacity(2 * n);
            let mut r = idx;
            for _ in 0..2 * n {
                e.push(r % side - k);
                r /= side;
            }
            let x = self.tensor(&laurent_monomial(&e[..n]), &laurent_monomial(&e[n..]))?;
            nf_rows.push(vec![normal_form(&x, &basis)]);
            img_rows.push(self.apply(&x)?);
        }
        Ok(coordinate_rank(&nf_rows) == coordinate_rank(&img_rows))
    }
}

/// Rank of a list of vectors of polynomials, read as coordinate vectors.
fn coordinate_rank(rows: &[Vec<Poly>]) -> usize {
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for row in rows {
        for (j, p) in row.iter().enumerate() {
            for (m, _) in p.terms() {
                let len = index.len();
                index.entry((j, m.clone())).or_insert(len);
            }
        }
    }
    let mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![BigRational::zero(); index.len()];
            for (j, p) in row.iter().enumerate() {
                for (m, c) in p.terms() {
                    v[index[&(j, m.clone())]] = c.clone();
                }
            }
            v
        })
        .collect();
    if index.is_empty() {
        0
    } else {
        rank_rat(&mat)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairWitness {
    pub first: String,
    pub second: String,
    /// A point `ζ` of `T` fixed by `W` with `f(ζ) ≠ g(ζ)`.
    pub separating_point: i64,
    pub augmentations: (i64, i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageComparison {
    pub pair: String,
    pub window: u32,
    /// The positive root as a character of the torus.
    pub root_exponent: i64,
    pub window_generators: usize,
    /// Pairs `(f, g)` with `f - g ∈ (1 - t^α)`, all in the image of `ι`.
    pub tested: usize,
    pub in_both: usize,
    pub iota_only: Vec<PairWitness>,
    pub contained: bool,
    pub witness: Option<PairWitness>,
}

fn laurent_text(coeffs: &BTreeMap<i64, i64>, name: &str) -> String {
    let p = Poly::from_terms(
        1,
        coeffs.iter().filter(|(_, c)| **c != 0).map(|(e, c)| (Monomial(vec![*e as i32]), BigRational::from_integer(BigInt::from(*c)))),
    )
    .into_laurent();
    format_poly(&p, &[name.to_string()])
}

fn eval_at(coeffs: &BTreeMap<i64, i64>, z: i64) -> i64 {
    coeffs.iter().map(|(e, c)| c * if z == -1 && e.rem_euclid(2) == 1 { -1 } else { 1 }).sum()
}

/// Compares `im ι` (pairs agreeing modulo `1 - t^α`) with `im ι∘λ` on a window of
/// exponents, for a semisimple-rank-one group and its maximal torus.
pub fn iota_image_comparison(pair: &GroupPair, window: u32, ctx: &Ctx) -> Result<ImageComparison> {
    let g = &pair.ambient;
    let h = &pair.subgroup;
    if g.rank != 1 || g.semisimple_rank() != 1 || !h.is_torus() || h.rank != 1 {
        return Err(Error::Input("image comparison needs a rank-one group and its maximal torus".into()));
    }
    if window == 0 {
        return Err(Error::WindowTooSmall("window 0 contains no non-trivial pair".into()));
    }
    let map = iota_map(pair, ctx)?;
    let alpha = pair.restrict_weight(&g.simple_roots[0])[0].abs();
    let s = map.components.iter().map(|c| c.weyl_element[0][0]).find(|&x| x != 1).unwrap_or(1);
    if s != -1 {
        return Err(Error::Inconsistent("Weyl reflection does not act by -1 on the torus".into()));
    }
    let k = window as i64;
    let width = (2 * k + 1) as usize;
    let pos = |e: i64| (e + k) as usize;
    // generators t^i ⊗ t^j ↦ (t^{i+j}, t^{i-j}) inside the window
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for i in -2 * k..=2 * k {
        for j in -2 * k..=2 * k {
            let (p, q) = (i + j, i - j);
            if p.abs() <= k && q.abs() <= k {
                let mut v = vec![0; 2 * width];
                v[pos(p)] = 1;
                v[width + pos(q)] = 1;
                cols.push(v);
            }
        }
    }
    let mat: IntMat = (0..2 * width).map(|r| cols.iter().map(|c| c[r]).collect()).collect();

    let mut tests: Vec<(BTreeMap<i64, i64>, BTreeMap<i64, i64>)> = Vec::new();
    let mut mono: Vec<(i64, i64)> =
        (-k..=k).flat_map(|p| (-k..=k).map(move |q| (p, q))).filter(|(p, q)| (p - q) % alpha == 0).collect();
    mono.sort_by_key(|&(p, q)| (p.abs() + q.abs(), p.abs(), q.abs(), p < 0, q < 0));
    for (p, q) in mono {
        tests.push((BTreeMap::from([(p, 1)]), BTreeMap::from([(q, 1)])));
    }
    for p in -k..=k - alpha {
        let d = BTreeMap::from([(p, 1), (p + alpha, -1)]);
        tests.push((d.clone(), BTreeMap::new()));
        tests.push((BTreeMap::new(), d));
    }

    let mut in_both = 0;
    let mut iota_only = Vec::new();
    let names = &h.coord_names[0];
    for (f, gq) in &tests {
        let mut v = vec![0; 2 * width];
        for (e, c) in f {
            v[pos(*e)] += c;
        }
        for (e, c) in gq {
            v[width + pos(*e)] += c;
        }
        if solve_int(&mat, &v).is_some() {
            in_both += 1;
            continue;
        }
        // ι∘λ(a ⊗ b)(ζ) = a(ζ) b(ζ) in both components at W-fixed ζ = ±1
        let sep = [1i64, -1].into_iter().find(|&z| eval_at(f, z) != eval_at(gq, z));
        match sep {
            Some(z) => iota_only.push(PairWitness {
                first: laurent_text(f, names),
                second: laurent_text(gq, names),
                separating_point: z,
                augmentations: (eval_at(f, 1), eval_at(gq, 1)),
            }),
            None => {
                return Err(Error::WindowTooSmall(format!(
                    "({}, {}) is outside the window span but not separated by a fixed point",
                    laurent_text(f, names),
                    laurent_text(gq, names)
                )))
            }
        }
    }
    Ok(ImageComparison {
        pair: pair.name.clone(),
        window,
        root_exponent: alpha,
        window_generators: cols.len(),
        tested: tests.len(),
        in_both,
        contained: iota_only.is_empty(),
        witness: iota_only.first().cloned(),
        iota_only,
    })
}
