//! `R(G) = R(T)^W` as a presented ring: characters attached to the Hilbert
//! basis of the dominant monoid, plus units from the central torus directions.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::character::{irreducible_character, is_weyl_invariant, orbit_sum, weight_monomial, Character};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{kernel_int, mul_int_vec, solve_int, IntMat};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::{augmentation, Poly};
use crate::groebner::{ring_map_image, PresentedRing};
use crate::lie_data::CompactGroup;

/// Which invariant attached to a dominant weight serves as a generator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorBasis {
    #[default]
    Irreducible,
    OrbitSums,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Character,
    Unit,
    UnitInverse,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingGenerator {
    pub name: String,
    pub kind: GeneratorKind,
    /// Highest weight (own coordinates) of the attached invariant.
    pub weight: Vec<i64>,
    pub character: String,
    pub dimension: String,
    #[serde(skip)]
    pub poly: Poly,
}

#[derive(Clone, Debug)]
pub struct RepRingPresentation {
    pub group: CompactGroup,
    pub ring: PresentedRing,
    pub generators: Vec<RingGenerator>,
    pub free: bool,
    pub basis_kind: GeneratorBasis,
    /// Hilbert basis of the dominant Dynkin-label monoid.
    pub hilbert_basis: IntMat,
    pub lifts: IntMat,
    pub lineality: IntMat,
    /// Box searched for the Hilbert basis (the degree-bound certificate).
    pub box_bound: Vec<i64>,
}

#[derive(Serialize)]
struct RepRingJson<'a> {
    group: &'a str,
    variables: &'a [String],
    relations: &'a [String],
    unit_pairs: &'a [(usize, usize)],
    free: bool,
    generators: &'a [RingGenerator],
    hilbert_basis: &'a IntMat,
    lineality: &'a IntMat,
    box_bound: &'a [i64],
}

fn min_multiple(c: &IntMat, j: usize, m: usize) -> Result<i64> {
    for k in 1..=10_000i64 {
        let mut v = vec![0; m];
        v[j] = k;
        if solve_int(c, &v).is_some() {
            return Ok(k);
        }
    }
    Err(Error::budget("representation_ring", "dominant monoid index above 10000"))
}

fn hilbert_basis(c: &IntMat, m: usize) -> Result<(IntMat, Vec<i64>)> {
    let bounds: Vec<i64> = (0..m).map(|j| min_multiple(c, j, m)).collect::<Result<_>>()?;
    let mut pts: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; m];
    loop {
        if cur.iter().any(|&x| x != 0) && solve_int(c, &cur).is_some() {
            pts.push(cur.clone());
        }
        let mut i = 0;
        while i < m {
            cur[i] += 1;
            if cur[i] <= bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        if pts.len() > 1_000_000 {
            return Err(Error::budget("representation_ring", "Hilbert basis box too large"));
        }
    }
    pts.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
    let mut basis: IntMat = Vec::new();
    for p in pts {
        let reducible = basis.iter().any(|h| h != &p && h.iter().zip(&p).all(|(x, y)| x <= y));
        if !reducible {
            basis.push(p);
        }
    }
    Ok((basis, bounds))
}

/// Non-negative decomposition of `h` over the Hilbert basis.
fn decompose(h: &[i64], basis: &IntMat) -> Option<Vec<i64>> {
    fn rec(h: &[i64], basis: &IntMat, start: usize, acc: &mut Vec<i64>) -> bool {
        if h.iter().all(|&x| x == 0) {
            return true;
        }
        for k in start..basis.len() {
            if basis[k].iter().zip(h).all(|(b, x)| b <= x) {
                let rest: Vec<i64> = h.iter().zip(&basis[k]).map(|(x, b)| x - b).collect();
                acc[k] += 1;
                if rec(&rest, basis, k, acc) {
                    return true;
                }
                acc[k] -= 1;
            }
        }
        false
    }
    let mut acc = vec![0; basis.len()];
    rec(h, basis, 0, &mut acc).then_some(acc)
}

fn laurent_monomial(w: &[i64]) -> Poly {
    Poly::monomial(weight_monomial(w), BigRational::one()).into_laurent()
}

pub fn representation_ring(g: &CompactGroup, ctx: &Ctx) -> Result<RepRingPresentation> {
    representation_ring_with(g, GeneratorBasis::Irreducible, ctx)
}

pub fn representation_ring_with(g: &CompactGroup, kind: GeneratorBasis, ctx: &Ctx) -> Result<RepRingPresentation> {
    let n = g.rank;
    let m = g.semisimple_rank();
    let c = g.coroots.clone();
    let (hb, box_bound) = if m == 0 { (Vec::new(), Vec::new()) } else { hilbert_basis(&c, m)? };
    let lifts: IntMat = hb
        .iter()
        .map(|h| solve_int(&c, h).ok_or_else(|| Error::Inconsistent("Hilbert basis element without lift".into())))
        .collect::<Result<_>>()?;
    let lineality = if m == 0 { crate::exact_algebra::matrix::identity_int(n) } else { kernel_int(&c, n) };
    let p = hb.len();
    let q = lineality.len();

    let char_names: Vec<String> = (1..=p).map(|i| format!("c{i}")).collect();
    let unit_names: Vec<String> = if g.is_torus() {
        g.coord_names.clone()
    } else if q == 1 {
        vec!["d".to_string()]
    } else {
        (1..=q).map(|i| format!("d{i}")).collect()
    };
    let mut generators = Vec::new();
    for (i, l) in lifts.iter().enumerate() {
        let ch = match kind {
            GeneratorBasis::Irreducible => irreducible_character(g, l)?,
            GeneratorBasis::OrbitSums => Character { poly: orbit_sum(g, l), highest_weight: Some(l.clone()) },
        };
        generators.push(RingGenerator {
            name: char_names[i].clone(),
            kind: GeneratorKind::Character,
            weight: l.clone(),
            character: ch.to_text(g),
            dimension: ch.dimension().to_string(),
            poly: ch.poly,
        });
    }
    for (which, sign) in [(GeneratorKind::Unit, 1i64), (GeneratorKind::UnitInverse, -1)] {
        for (l, v) in lineality.iter().enumerate() {
            let w: Vec<i64> = v.iter().map(|x| sign * x).collect();
            let poly = laurent_monomial(&w);
            let name = if sign > 0 { unit_names[l].clone() } else { format!("{}inv", unit_names[l]) };
            generators.push(RingGenerator {
                name,
                kind: which,
                weight: w,
                character: crate::exact_algebra::text::format_poly(&poly, &g.coord_names),
                dimension: "1".into(),
                poly,
            });
        }
    }
    let vars: Vec<String> = generators.iter().map(|x| x.name.clone()).collect();
    let pairs: Vec<(usize, usize)> = (0..q).map(|l| (p + l, p + q + l)).collect();
    let free = p == m;
    let mut ring = PresentedRing::new(vars.clone(), None, Vec::new(), pairs.clone());
    if !free {
        let target = PresentedRing::laurent(&g.coord_names);
        let images: Vec<Poly> = generators.iter().map(|x| target.import_laurent(&x.poly)).collect();
        let img = ring_map_image(&vars, &[], &target, &images, ctx)?;
        let unit_rels: Vec<Poly> = ring.ideal_generators();
        let rels: Vec<Poly> =
            img.presentation.relation_polys.iter().filter(|r| !unit_rels.contains(r)).cloned().collect();
        ring = PresentedRing::new(vars, None, rels, pairs);
    }
    Ok(RepRingPresentation {
        group: g.clone(),
        ring,
        generators,
        free,
        basis_kind: kind,
        hilbert_basis: hb,
        lifts,
        lineality,
        box_bound,
    })
}

impl RepRingPresentation {
    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn character_count(&self) -> usize {
        self.hilbert_basis.len()
    }

    pub fn unit_count(&self) -> usize {
        self.lineality.len()
    }

    /// Laurent polynomial of each generator on the maximal torus.
    pub fn generator_polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|x| x.poly.clone()).collect()
    }

    /// Dimension (augmentation) of each generator.
    pub fn augmentation_values(&self) -> Vec<BigRational> {
        self.generators.iter().map(|x| augmentation(&x.poly)).collect()
    }

    /// Evaluates a polynomial in the generators to a Laurent polynomial on the torus.
    pub fn evaluate(&self, x: &Poly) -> Result<Poly> {
        x.substitute(&self.generator_polys())
    }

    /// Writes a `W`-invariant Laurent polynomial in the generators by peeling
    /// off the dominant term of greatest height.
    pub fn express(&self, f: &Poly) -> Result<Poly> {
        let g = &self.group;
        if f.nvars() != g.rank {
            return Err(Error::VariableMismatch(f.nvars(), g.rank));
        }
        if !is_weyl_invariant(g, f) {
            return Err(Error::Input(format!("{} is not Weyl-invariant", crate::exact_algebra::text::format_poly(f, &g.coord_names))));
        }
        let nv = self.nvars();
        let p = self.character_count();
        let q = self.unit_count();
        let mut rest = f.clone().into_laurent();
        let mut out = Poly::zero(nv);
        let mut steps = 0usize;
        while !rest.is_zero() {
            steps += 1;
            if steps > 100_000 {
                return Err(Error::budget("express", "more than 100000 peeling steps"));
            }
            let (mu, coef) = rest
                .terms()
                .filter(|(m, _)| g.is_dominant(&exps64(m)))
                .map(|(m, c)| (exps64(m), c.clone()))
                .max_by(|a, b| g.height(&a.0).cmp(&g.height(&b.0)).then_with(|| a.0.cmp(&b.0)))
                .ok_or_else(|| Error::Inconsistent("invariant without dominant term".into()))?;
            let h = mul_int_vec(&g.coroots, &mu);
            let a = if p == 0 { Vec::new() } else {
                decompose(&h, &self.hilbert_basis).ok_or_else(|| Error::Inconsistent("weight outside dominant monoid".into()))?
            };
            let mut resid = mu.clone();
            for (k, &ak) in a.iter().enumerate() {
                for (r, l) in resid.iter_mut().zip(&self.lifts[k]) {
                    *r -= ak * l;
                }
            }
            let lin_cols = crate::exact_algebra::matrix::transpose(&self.lineality);
            let b = if q == 0 {
                Vec::new()
            } else {
                solve_int(&lin_cols, &resid).ok_or_else(|| Error::Inconsistent("residual weight outside lineality".into()))?
            };
            let mut e = vec![0i32; nv];
            let mut prod = laurent_monomial(&resid);
            for (k, &ak) in a.iter().enumerate() {
                e[k] = ak as i32;
                if ak > 0 {
                    prod = &prod * &self.generators[k].poly.pow(ak as u32);
                }
            }
            for (l, &bl) in b.iter().enumerate() {
                if bl > 0 {
                    e[p + l] = bl as i32;
                } else {
                    e[p + q + l] = (-bl) as i32;
                }
            }
            out.add_term(Monomial(e), coef.clone());
            rest = &rest - &prod.scale(&coef);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RepRingJson {
            group: &self.group.label,
            variables: &self.ring.vars,
            relations: &self.ring.relations,
            unit_pairs: &self.ring.unit_pairs,
            free: self.free,
            generators: &self.generators,
            hilbert_basis: &self.hilbert_basis,
            lineality: &self.lineality,
            box_bound: &self.box_bound,
        })
        .expect("presentation serializes")
    }

    /// The identity of the ring.
    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn is_unit_var(&self, i: usize) -> bool {
        i >= self.character_count()
    }
}

fn exps64(m: &Monomial) -> Vec<i64> {
    m.exps().iter().map(|&x| x as i64).collect()
}
