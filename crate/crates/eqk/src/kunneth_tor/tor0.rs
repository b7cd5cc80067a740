//! `Tor⁰ = RH ⊗_RG RH`, the assembled `K*_H(G/H)`, ordinary K-theory and the
//! degree-zero formality map.

use num_rational::BigRational;
use serde::Serialize;

use super::classify::{augmentation_quotient, classify_pair, HypothesisReport, PairCase};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::format_poly;
use crate::groebner::{fiber_dimension, normal_form, FiberDimension, PresentedRing};
use crate::lie_data::GroupPair;
use crate::rep_ring::{restriction_map, RestrictionMap};

/// `RH ⊗_RG RH` on generators `y_i` (first copy) and `y_i'` (second copy).
#[derive(Clone, Debug, Serialize)]
pub struct Tor0 {
    pub ring: PresentedRing,
    /// Number of `RH` generators; the second copy starts at this index.
    pub copy_size: usize,
    #[serde(skip)]
    pub map: RestrictionMap,
}

pub fn tor0_presentation(pair: &GroupPair, ctx: &Ctx) -> Result<Tor0> {
    let map = restriction_map(pair, ctx)?;
    Ok(tor0_from_map(map))
}

pub(crate) fn tor0_from_map(map: RestrictionMap) -> Tor0 {
    let rh = &map.target.ring;
    let k = rh.nvars();
    let mut vars = rh.vars.clone();
    vars.extend(rh.vars.iter().map(|v| format!("{v}'")));
    let mut rels = Vec::new();
    for r in &rh.relation_polys {
        rels.push(r.embed(2 * k, 0));
        rels.push(r.embed(2 * k, k));
    }
    for im in &map.images {
        let d = &im.embed(2 * k, 0) - &im.embed(2 * k, k);
        if !d.is_zero() && !rels.contains(&d) {
            rels.push(d);
        }
    }
    let mut pairs = rh.unit_pairs.clone();
    pairs.extend(rh.unit_pairs.iter().map(|&(a, b)| (a + k, b + k)));
    let ring = PresentedRing::new(vars, None, rels, pairs);
    Tor0 { ring, copy_size: k, map }
}

impl Tor0 {
    fn augmentation_targets(&self, offset: usize) -> Vec<(usize, BigRational)> {
        self.map.target.augmentation_values().into_iter().enumerate().map(|(i, e)| (offset + i, e)).collect()
    }

    /// `Tor⁰ ⊗_RH ℚ` with the first copy set to its augmentation; this is `RH//RG`.
    pub fn one_factor_fiber(&self, ctx: &Ctx) -> Result<FiberDimension> {
        fiber_dimension(&self.ring, &self.augmentation_targets(0), ctx)
    }

    /// The same fiber after extending the second copy to the maximal torus of
    /// `H`: `dim R(T_H) / (res x_j - ε(x_j))`, which multiplies the one-factor
    /// fiber by `|W_H|` when `RH → R(T_H)` is free.
    pub fn double_augmentation_fiber(&self, ctx: &Ctx) -> Result<FiberDimension> {
        let h = &self.map.target.group;
        let rt = PresentedRing::laurent(&h.coord_names);
        let n = rt.nvars();
        let rels: Vec<Poly> = self
            .map
            .image_characters
            .iter()
            .zip(self.map.source.augmentation_values())
            .map(|(c, e)| &rt.import_laurent(c) - &Poly::constant(n, e))
            .filter(|p| !p.is_zero())
            .collect();
        fiber_dimension(&rt.with_relations(rels), &[], ctx)
    }

    /// Embeds a polynomial in the `RH` generators into the first or second copy.
    pub fn first(&self, p: &Poly) -> Poly {
        p.embed(2 * self.copy_size, 0)
    }

    pub fn second(&self, p: &Poly) -> Poly {
        p.embed(2 * self.copy_size, self.copy_size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedGenerator {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessCertificate {
    /// What is claimed free, over what.
    pub module: String,
    pub fiber_dimension: FiberDimension,
    pub predicted_rank: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KTheoryReport {
    pub pair: String,
    pub case: PairCase,
    pub provenance: String,
    /// Human-readable shape, e.g. `RSp(2) ⊗ Λ[z1]`.
    pub structure: String,
    /// Even part: `Tor⁰`, simplified to `RH` in the surjective case.
    pub ring: PresentedRing,
    pub exterior_rank: usize,
    pub exterior_generators: Vec<String>,
    pub grading: Vec<GradedGenerator>,
    pub freeness_certificate: FreenessCertificate,
    pub inverted_primes: Vec<u64>,
    pub hypotheses: HypothesisReport,
}

fn exterior_names(s: usize) -> Vec<String> {
    (1..=s).map(|i| format!("z{i}")).collect()
}

fn provenance(case: PairCase) -> &'static str {
    match case {
        PairCase::Surjective => "RG → RH surjective: K*_H(G/H) ≅ RH ⊗ Λ",
        PairCase::EqualRank => "equal rank: K*_H(G/H) ≅ RH ⊗_RG RH",
        PairCase::SigmaPair => "fixed group of a finite-order automorphism: Tor⁰ ⊗ Λ",
        PairCase::ImagePolynomialFree => "RH finite free over a polynomial image of RG: Tor⁰ ⊗ Λ",
        PairCase::NotCovered => "not covered",
    }
}

fn refuse(report: &HypothesisReport) -> Error {
    Error::Refused(report.reason.clone().unwrap_or_else(|| "pair not covered".into()))
}

pub fn assemble_ktheory(pair: &GroupPair, ctx: &Ctx) -> Result<KTheoryReport> {
    let hyp = classify_pair(pair, ctx)?;
    if !hyp.covered() {
        return Err(refuse(&hyp));
    }
    let tor = tor0_presentation(pair, ctx)?;
    let fib = tor.one_factor_fiber(ctx)?;
    if let (Some(p), FiberDimension::Finite(f)) = (hyp.predicted_rank, fib) {
        if p != f {
            return Err(Error::Inconsistent(format!("Tor⁰ has rank {f} over RH, expected {p}")));
        }
    }
    let s = pair.rank_difference();
    let ring = if hyp.case == PairCase::Surjective { tor.map.target.ring.clone() } else { tor.ring.clone() };
    let ext = exterior_names(s);
    let (g, h) = (&pair.ambient.label, &pair.subgroup.label);
    let mut structure =
        if hyp.case == PairCase::Surjective { format!("R{h}") } else { format!("R{h} ⊗_R{g} R{h}") };
    if s > 0 {
        structure.push_str(&format!(" ⊗ Λ[{}]", ext.join(", ")));
    }
    let mut grading: Vec<GradedGenerator> =
        ring.vars.iter().map(|v| GradedGenerator { name: v.clone(), parity: Parity::Even }).collect();
    grading.extend(ext.iter().map(|z| GradedGenerator { name: z.clone(), parity: Parity::Odd }));
    Ok(KTheoryReport {
        pair: pair.name.clone(),
        case: hyp.case,
        provenance: provenance(hyp.case).into(),
        structure,
        ring,
        exterior_rank: s,
        exterior_generators: ext,
        grading,
        freeness_certificate: FreenessCertificate {
            module: "RH ⊗_RG RH over the first RH factor".into(),
            fiber_dimension: fib,
            predicted_rank: hyp.predicted_rank,
        },
        inverted_primes: hyp.inverted_primes.clone(),
        hypotheses: hyp,
    })
}

/// `K*(G/H) ⊗ ℚ ≅ (RH // RG) ⊗ Λ[z_1..z_s]`.
#[derive(Clone, Debug, Serialize)]
pub struct OrdinaryKTheory {
    pub pair: String,
    pub case: PairCase,
    pub ring: PresentedRing,
    pub quotient_dimension: FiberDimension,
    pub exterior_rank: usize,
    pub exterior_generators: Vec<String>,
    /// `dim (RH//RG) · 2^s`.
    pub total_rank: Option<u64>,
    /// For equal rank, `dim RH//RG = |W_G| / |W_H|`.
    pub euler_check: Option<bool>,
}

pub fn ordinary_ktheory(pair: &GroupPair, ctx: &Ctx) -> Result<OrdinaryKTheory> {
    let hyp = classify_pair(pair, ctx)?;
    if !hyp.covered() {
        return Err(refuse(&hyp));
    }
    let map = restriction_map(pair, ctx)?;
    let ring = augmentation_quotient(&map);
    let q = fiber_dimension(&ring, &[], ctx)?;
    let s = pair.rank_difference();
    let euler_check = (s == 0).then(|| {
        let (g, h) = (pair.ambient.weyl_order(), pair.subgroup.weyl_order());
        q == FiberDimension::Finite(g / h) && g % h == 0
    });
    Ok(OrdinaryKTheory {
        pair: pair.name.clone(),
        case: hyp.case,
        ring,
        quotient_dimension: q,
        exterior_rank: s,
        exterior_generators: exterior_names(s),
        total_rank: q.finite().map(|d| d << s),
        euler_check,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorWitness {
    pub generator: String,
    pub image: String,
}

/// Degree-zero part of `Tor(ε, id): RH ⊗_RG RH → ℚ ⊗_RG RH` and the quotient
/// `K*_H(G/H) // RH`.
#[derive(Clone, Debug, Serialize)]
pub struct TorFormalityReport {
    pub pair: String,
    pub surjective: bool,
    pub witnesses: Vec<GeneratorWitness>,
    pub quotient: PresentedRing,
    pub quotient_dimension: FiberDimension,
    pub exterior_rank: usize,
}

pub fn formality_criterion_tor(pair: &GroupPair, ctx: &Ctx) -> Result<TorFormalityReport> {
    let hyp = classify_pair(pair, ctx)?;
    if !hyp.covered() {
        return Err(refuse(&hyp));
    }
    let tor = tor0_presentation(pair, ctx)?;
    let quotient = augmentation_quotient(&tor.map);
    let k = tor.copy_size;
    // first copy ↦ ε, second copy ↦ the quotient generators
    let mut images: Vec<Poly> =
        tor.map.target.augmentation_values().into_iter().map(|e| Poly::constant(k, e)).collect();
    images.extend((0..k).map(|i| Poly::var(k, i)));
    let qbasis = quotient.basis(ctx)?;
    for (r, text) in tor.ring.relation_polys.iter().zip(&tor.ring.relations) {
        if !normal_form(&r.substitute(&images)?, &qbasis).is_zero() {
            return Err(Error::IllDefinedMap(text.clone()));
        }
    }
    let witnesses = (0..k)
        .map(|i| GeneratorWitness {
            generator: tor.ring.vars[k + i].clone(),
            image: format_poly(&images[k + i], &quotient.vars),
        })
        .collect();
    let qd = fiber_dimension(&quotient, &[], ctx)?;
    Ok(TorFormalityReport {
        pair: pair.name.clone(),
        surjective: true,
        witnesses,
        quotient,
        quotient_dimension: qd,
        exterior_rank: pair.rank_difference(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::text::parse_poly;
    use crate::lie_data::parse_group_name;

    fn pair(g: &str, h: &str, r: Vec<Vec<i64>>) -> GroupPair {
        GroupPair::new(format!("{g}-{h}"), parse_group_name(g).unwrap(), parse_group_name(h).unwrap(), r).unwrap()
    }

    #[test]
    fn so3_tor0() {
        let ctx = Ctx::default();
        let t = tor0_presentation(&pair("SO(3)", "SO(2)", vec![vec![1]]), &ctx).unwrap();
        assert_eq!(t.ring.vars, vec!["t", "tinv", "t'", "tinv'"]);
        let expect = parse_poly("t + tinv - t' - tinv'", &t.ring.vars).unwrap();
        assert!(t.ring.relation_polys.contains(&expect) || t.ring.relation_polys.contains(&-expect));
        assert_eq!(t.one_factor_fiber(&ctx).unwrap(), FiberDimension::Finite(2));
        assert_eq!(t.double_augmentation_fiber(&ctx).unwrap(), FiberDimension::Finite(2));
    }

    #[test]
    fn identity_pair() {
        let ctx = Ctx::default();
        let g = parse_group_name("SU(3)").unwrap();
        let id = GroupPair::identity(g);
        let t = tor0_presentation(&id, &ctx).unwrap();
        assert_eq!(t.one_factor_fiber(&ctx).unwrap(), FiberDimension::Finite(1));
        let k = assemble_ktheory(&id, &ctx).unwrap();
        assert_eq!(k.exterior_rank, 0);
        assert_eq!(k.ring.vars, vec!["c1", "c2"]);
        let o = ordinary_ktheory(&id, &ctx).unwrap();
        assert_eq!(o.total_rank, Some(1));
        assert!(formality_criterion_tor(&id, &ctx).unwrap().surjective);
    }

    #[test]
    fn su2_torus() {
        let ctx = Ctx::default();
        let p = pair("SU(2)", "T1", vec![vec![1]]);
        let k = assemble_ktheory(&p, &ctx).unwrap();
        assert_eq!(k.case, PairCase::EqualRank);
        assert_eq!(k.freeness_certificate.fiber_dimension, FiberDimension::Finite(2));
        let o = ordinary_ktheory(&p, &ctx).unwrap();
        assert_eq!(o.quotient_dimension, FiberDimension::Finite(2));
        assert_eq!(o.euler_check, Some(true));
        let f = formality_criterion_tor(&p, &ctx).unwrap();
        assert_eq!(f.quotient_dimension, FiberDimension::Finite(2));
        assert_eq!(f.witnesses[0].image, "t");
    }

    #[test]
    fn su4_sp2() {
        let ctx = Ctx::default();
        let p = pair("SU(4)", "Sp(2)", vec![vec![1, 0, 1], vec![0, 1, 0]]);
        let k = assemble_ktheory(&p, &ctx).unwrap();
        assert_eq!(k.case, PairCase::Surjective);
        assert_eq!(k.exterior_generators, vec!["z1"]);
        assert_eq!(k.ring.vars, vec!["c1", "c2"]);
        let o = ordinary_ktheory(&p, &ctx).unwrap();
        assert_eq!(o.quotient_dimension, FiberDimension::Finite(1));
        assert_eq!(o.total_rank, Some(2));
    }

    #[test]
    fn refusals() {
        let ctx = Ctx::default();
        let so = pair("SO(3)", "SO(2)", vec![vec![1]]);
        assert!(matches!(assemble_ktheory(&so, &ctx), Err(Error::Refused(r)) if r.contains("π₁")));
        let circle = pair("SU(4)", "T1", vec![vec![1, 0, 2]]);
        let h = classify_pair(&circle, &ctx).unwrap();
        assert_eq!(h.case, PairCase::NotCovered);
        let reason = h.reason.unwrap();
        assert!(reason.contains("not free over image"), "{reason}");
        assert!(h.general.unwrap().fiber_jump.is_some());
    }
}
