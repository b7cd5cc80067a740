//! Complete-intersection test, the four equivalent formality conditions, and
//! the structure of `H*_H(G/H; ℚ)`.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::normalizer::{normalizer_action, NormalizerAction, NormalizerSource};
use super::{restriction_cohomology, Primitive, RestrictionCohomology};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{rat_matrix_to_json, transpose, RatEntry, RatMat};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::series::PoincareSeries;
use crate::exact_algebra::text::format_poly;
use crate::groebner::{
    fiber_dimension, groebner_basis, hilbert_series, is_regular_sequence, normal_form, ring_map_image,
    FiberDimension, IdealPresentation, MonomialOrder, PresentedRing, RegularSequenceCertificate,
};
use crate::invariant_theory::{act, fundamental_invariants, is_pseudoreflection_group, FiniteMatrixGroup};
use crate::lie_data::GroupPair;

#[derive(Clone, Debug, Serialize)]
pub struct FormalityCheck {
    /// `H*(BK) // H*(BG)`.
    pub quotient: PresentedRing,
    pub quotient_series: Option<PoincareSeries>,
    pub quotient_dimension: Option<u64>,
    pub minimal_generators: Vec<String>,
    pub regular_sequence: Vec<String>,
    pub certificate: Option<RegularSequenceCertificate>,
    /// `None` when undecided.
    pub ci_flag: Option<bool>,
    /// Primitives of `G` whose transgressions are not needed to generate the ideal.
    pub exterior_primitives: Vec<Primitive>,
    pub restriction: RestrictionCohomology,
}

pub fn formality_check(pair: &GroupPair, ctx: &Ctx) -> Result<FormalityCheck> {
    let res = restriction_cohomology(pair, ctx)?;
    formality_from(res, ctx)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompleteIntersectionTest {
    /// Indices of a minimal homogeneous generating set, chosen greedily by degree.
    pub kept: Vec<usize>,
    pub quotient_series: PoincareSeries,
    pub quotient_dimension: Option<u64>,
    pub certificate: Option<RegularSequenceCertificate>,
    pub is_complete_intersection: bool,
}

/// Whether `ring / (gens)` is a complete intersection: a minimal generating
/// set of the ideal has `dim ring` elements and is a regular sequence.
pub fn complete_intersection_test(ring: &PresentedRing, gens: &[Poly], ctx: &Ctx) -> Result<CompleteIntersectionTest> {
    let degs = ring.degrees.clone().unwrap_or_else(|| vec![1; ring.nvars()]);
    let r = ring.nvars();
    let wdeg = |f: &Poly| f.weighted_degree(&degs).unwrap_or(0);
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by_key(|&i| wdeg(&gens[i]));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let current: Vec<Poly> = kept.iter().map(|&j| gens[j].clone()).collect();
        let b = groebner_basis(
            &IdealPresentation::graded(ring.vars.clone(), degs.clone(), current),
            &MonomialOrder::WeightedGrevLex(degs.clone()),
            ctx,
        )?;
        if !normal_form(&gens[i], &b).is_zero() {
            kept.push(i);
        }
    }
    let quotient = ring.clone().with_relations(order.iter().map(|&i| gens[i].clone()).collect());
    let series = hilbert_series(&quotient, ctx)?;
    let dim = series.eval_at_one().ok().and_then(|d| d.to_integer().to_u64());
    let kept_polys: Vec<Poly> = kept.iter().map(|&i| gens[i].clone()).collect();
    let (certificate, ci) = if kept.len() == r {
        let c = is_regular_sequence(&kept_polys, ring, ctx)?;
        let ok = c.is_regular && c.quotient_series.same_function(&series);
        (Some(c), ok)
    } else {
        (None, false)
    };
    Ok(CompleteIntersectionTest {
        kept,
        quotient_series: series,
        quotient_dimension: dim,
        certificate,
        is_complete_intersection: ci,
    })
}

fn formality_from(res: RestrictionCohomology, ctx: &Ctx) -> Result<FormalityCheck> {
    let hk = res.subgroup.ring.clone();
    let ci = complete_intersection_test(&hk, &res.image_polys, ctx)?;
    let kept = ci.kept.clone();
    let kept_polys: Vec<Poly> = kept.iter().map(|&i| res.image_polys[i].clone()).collect();
    let quotient = hk.clone().with_relations(res.image_polys.iter().filter(|p| !p.is_zero()).cloned().collect());
    let exterior_primitives = res
        .ambient
        .primitives
        .iter()
        .enumerate()
        .filter(|(i, _)| !kept.contains(i))
        .map(|(_, p)| p.clone())
        .collect();
    let names = &res.ambient.ring.vars;
    Ok(FormalityCheck {
        quotient,
        quotient_series: Some(ci.quotient_series),
        quotient_dimension: ci.quotient_dimension,
        minimal_generators: kept.iter().map(|&i| format!("ρ*{}", names[i])).collect(),
        regular_sequence: kept_polys.iter().map(|p| format_poly(p, &hk.vars)).collect(),
        certificate: ci.certificate,
        ci_flag: Some(ci.is_complete_intersection),
        exterior_primitives,
        restriction: res,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectionCertificate {
    pub group_order: usize,
    pub invariant_degrees: Vec<u32>,
    pub invariants: Vec<String>,
    pub complete: bool,
    /// `None` when the invariant list is incomplete and every listed one is hit.
    pub surjective: Option<bool>,
    pub missing: Option<String>,
}

/// Whether `H*(BG) → ℚ[y]^Γ` is onto, `Γ` acting on characters.
fn surjection_onto_invariants(
    res: &RestrictionCohomology,
    group: &FiniteMatrixGroup,
    ctx: &Ctx,
) -> Result<SurjectionCertificate> {
    let poly_group = group.transposed();
    let inv = fundamental_invariants(&poly_group, None)?;
    let torus = res.subgroup.torus_ring();
    let img = ring_map_image(&res.ambient.ring.vars, &[], &torus, &res.torus_images, ctx)?;
    let missing = inv.generators.iter().find(|f| !img.contains(f)).map(|f| format_poly(f, &torus.vars));
    let surjective = match (&missing, inv.complete) {
        (Some(_), _) => Some(false),
        (None, true) => Some(true),
        (None, false) => None,
    };
    Ok(SurjectionCertificate {
        group_order: group.order(),
        invariant_degrees: inv.degrees.iter().map(|d| 2 * d).collect(),
        invariants: inv.generators.iter().map(|f| format_poly(f, &torus.vars)).collect(),
        complete: inv.complete,
        surjective,
        missing,
    })
}

/// The matrices by which the normalizer model acts on `QH*(BK)`.
fn indecomposable_action(res: &RestrictionCohomology, norm: &NormalizerAction, ctx: &Ctx) -> Result<FiniteMatrixGroup> {
    let sub = &res.subgroup;
    let img = sub.in_torus(ctx)?;
    let r = sub.ring.nvars();
    let degs = sub.ring.degrees.clone().unwrap_or_default();
    let mut seen = std::collections::HashSet::new();
    let mut mats = Vec::new();
    for w in &norm.subgroup_group.elements {
        let gamma = transpose(w);
        let mut m: RatMat = vec![vec![BigRational::zero(); r]; r];
        for (i, f) in sub.polys.iter().enumerate() {
            let moved = act(&gamma, f);
            let e = img
                .preimage(&moved)
                .ok_or_else(|| Error::Inconsistent("normalizer element does not preserve H*(BK)".into()))?;
            for j in (0..r).filter(|&j| degs[j] == degs[i]) {
                m[i][j] = e.coeff(&Monomial::var(r, j));
            }
        }
        if seen.insert(m.clone()) {
            mats.push(m);
        }
    }
    FiniteMatrixGroup::from_elements(mats, r)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionVerdict {
    pub condition: u8,
    pub statement: String,
    pub verdict: Option<bool>,
    pub certificate: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FpDim {
    /// `dim H*(G/K)` from the complete-intersection quotient, when formal.
    pub cohomology_dimension: Option<u64>,
    pub normalizer_order: usize,
    pub rank_difference: usize,
    /// `|N| · 2^{rk G - rk K}`.
    pub predicted: u64,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalityReport {
    pub pair: String,
    pub conditions: Vec<ConditionVerdict>,
    pub isotropy_formal: Option<bool>,
    pub status: String,
    pub fpdim: FpDim,
    pub ci_flag: Option<bool>,
    pub normalizer_source: NormalizerSource,
    pub normalizer: NormalizerAction,
    pub indecomposable_action: Vec<Vec<Vec<RatEntry>>>,
    #[serde(skip)]
    pub formality: FormalityCheck,
}

fn and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

pub fn st_battery(pair: &GroupPair, ctx: &Ctx) -> Result<FormalityReport> {
    let res = restriction_cohomology(pair, ctx)?;
    let norm = normalizer_action(pair, ctx)?;
    let qh = indecomposable_action(&res, &norm, ctx)?;
    if qh.order() != norm.order {
        return Err(Error::Inconsistent(format!(
            "normalizer acts on indecomposables through {} elements, expected {}",
            qh.order(),
            norm.order
        )));
    }
    let surj_k = surjection_onto_invariants(&res, &norm.subgroup_group, ctx)?;
    let surj_s = surjection_onto_invariants(&res, &norm.torus_group, ctx)?;
    let fc = formality_from(res, ctx)?;
    let s = pair.rank_difference();
    let predicted = (norm.order as u64) << s;
    let cohomology_dimension = match fc.ci_flag {
        Some(true) => fc.quotient_dimension.map(|q| q << s),
        _ => None,
    };
    let fp_holds = cohomology_dimension.map(|d| d == predicted);

    let refl_qh = is_pseudoreflection_group(&qh)?;
    let refl_s = is_pseudoreflection_group(&norm.torus_group)?;
    let c1 = fp_holds;
    let c2 = and(fc.ci_flag, surj_k.surjective);
    let c3 = and(Some(refl_qh.is_reflection_group), surj_k.surjective);
    let c4 = and(Some(refl_s.is_reflection_group), surj_s.surjective);
    let conditions = vec![
        ConditionVerdict {
            condition: 1,
            statement: "K acts equivariantly formally on G/K: dim H*(G/K) = |N|·2^(rk G - rk K)".into(),
            verdict: c1,
            certificate: serde_json::json!({
                "cohomology_dimension": cohomology_dimension,
                "normalizer_order": norm.order,
                "predicted": predicted,
            }),
        },
        ConditionVerdict {
            condition: 2,
            statement: "G/K formal and H*(BG) → H*(BK)^N onto".into(),
            verdict: c2,
            certificate: serde_json::json!({
                "ci_flag": fc.ci_flag,
                "regular_sequence": fc.regular_sequence,
                "surjection": surj_k,
            }),
        },
        ConditionVerdict {
            condition: 3,
            statement: "N acts on QH*(BK) as a reflection group and H*(BG) → H*(BK)^N onto".into(),
            verdict: c3,
            certificate: serde_json::json!({
                "reflection_group": refl_qh.is_reflection_group,
                "reflections": refl_qh.reflections,
                "surjection": surj_k,
            }),
        },
        ConditionVerdict {
            condition: 4,
            statement: "N_G(S) acts on the Lie algebra of S as a reflection group and H*(BG) → H*(BS)^N onto".into(),
            verdict: c4,
            certificate: serde_json::json!({
                "reflection_group": refl_s.is_reflection_group,
                "reflections": refl_s.reflections,
                "surjection": surj_s,
            }),
        },
    ];
    let decided: Vec<bool> = conditions.iter().filter_map(|c| c.verdict).collect();
    if decided.len() == 4 && decided.iter().any(|&v| v != decided[0]) {
        return Err(Error::Inconsistent(format!("formality conditions disagree for {}: {decided:?}", pair.name)));
    }
    let isotropy_formal = (decided.len() == 4).then(|| decided[0]);
    Ok(FormalityReport {
        pair: pair.name.clone(),
        status: if isotropy_formal.is_some() { "decided".into() } else { "undecided".into() },
        conditions,
        isotropy_formal,
        fpdim: FpDim {
            cohomology_dimension,
            normalizer_order: norm.order,
            rank_difference: s,
            predicted,
            holds: fp_holds,
        },
        ci_flag: fc.ci_flag,
        normalizer_source: norm.source,
        indecomposable_action: qh.elements.iter().map(rat_matrix_to_json).collect(),
        normalizer: norm,
        formality: fc,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivariantCohomology {
    pub pair: String,
    /// `H*(BH) ⊗_{H*(BG)} H*(BH)` on generators `y`, `y'`.
    pub ring: PresentedRing,
    pub exterior_rank: usize,
    pub exterior_generators: Vec<Primitive>,
    pub even_series: PoincareSeries,
    pub series: PoincareSeries,
    pub pole_order: usize,
    /// `dim` of the quotient by the first copy of `H*(BH)`, times `2^s`.
    pub forgetful_dimension: Option<u64>,
}

pub fn equivariant_cohomology(pair: &GroupPair, ctx: &Ctx) -> Result<EquivariantCohomology> {
    let report = st_battery(pair, ctx)?;
    if report.isotropy_formal != Some(true) {
        return Err(Error::Refused(format!(
            "isotropy action of {} is not known to be equivariantly formal ({})",
            pair.name, report.status
        )));
    }
    let fc = &report.formality;
    let res = &fc.restriction;
    let hk = &res.subgroup.ring;
    let k = hk.nvars();
    let mut vars = hk.vars.clone();
    vars.extend(hk.vars.iter().map(|v| format!("{v}'")));
    let d = hk.degrees.clone().unwrap_or_default();
    let mut degrees = d.clone();
    degrees.extend(d.iter().copied());
    let rels: Vec<Poly> = res
        .image_polys
        .iter()
        .map(|f| &f.embed(2 * k, 0) - &f.embed(2 * k, k))
        .filter(|p| !p.is_zero())
        .collect();
    let ring = PresentedRing::new(vars, Some(degrees), rels, Vec::new());
    let even = hilbert_series(&ring, ctx)?;
    let s = pair.rank_difference();
    if fc.exterior_primitives.len() != s {
        return Err(Error::Inconsistent(format!(
            "{} exterior primitives for rank difference {s}",
            fc.exterior_primitives.len()
        )));
    }
    let mut series = even.clone();
    for p in &fc.exterior_primitives {
        let mut f = vec![0i64; p.degree as usize + 1];
        f[0] = 1;
        f[p.degree as usize] += 1;
        series = series.mul_polynomial(&f);
    }
    let pole_order = even.pole_order_at_one();
    if pole_order != pair.subgroup.rank {
        return Err(Error::Inconsistent(format!("pole of order {pole_order} at t = 1, expected {}", pair.subgroup.rank)));
    }
    let zeros: Vec<(usize, BigRational)> = (0..k).map(|i| (i, BigRational::zero())).collect();
    let forget = match fiber_dimension(&ring, &zeros, ctx)? {
        FiberDimension::Finite(q) => Some(q << s),
        FiberDimension::Infinite => None,
    };
    if forget != Some(report.fpdim.predicted) {
        return Err(Error::Inconsistent(format!(
            "quotient by H*(BH) has dimension {forget:?}, expected {}",
            report.fpdim.predicted
        )));
    }
    Ok(EquivariantCohomology {
        pair: pair.name.clone(),
        ring,
        exterior_rank: s,
        exterior_generators: fc.exterior_primitives.clone(),
        even_series: even,
        series,
        pole_order,
        forgetful_dimension: forget,
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
    fn ci_examples() {
        let ctx = Ctx::default();
        let f = formality_check(&pair("SU(2)", "T1", vec![vec![1]]), &ctx).unwrap();
        assert_eq!(f.ci_flag, Some(true));
        assert_eq!(f.quotient_dimension, Some(2));
        let f = formality_check(&pair("SU(3)", "T2", vec![vec![1, 0], vec![0, 1]]), &ctx).unwrap();
        assert_eq!(f.ci_flag, Some(true));
        assert_eq!(f.quotient_dimension, Some(6));
        assert_eq!(f.regular_sequence.len(), 2);
        let f = formality_check(&pair("SU(4)", "Sp(2)", vec![vec![1, 0, 1], vec![0, 1, 0]]), &ctx).unwrap();
        assert_eq!(f.ci_flag, Some(true));
        assert_eq!(f.exterior_primitives.len(), 1);
        assert_eq!(f.exterior_primitives[0].degree, 5);
    }

    #[test]
    fn battery() {
        let ctx = Ctx::default();
        for (p, n, dim) in [
            (pair("SU(2)", "T1", vec![vec![1]]), 2, 2),
            (pair("SU(3)", "T2", vec![vec![1, 0], vec![0, 1]]), 6, 6),
            (GroupPair::identity(parse_group_name("SU(3)").unwrap()), 1, 1),
            (pair("SU(4)", "Sp(2)", vec![vec![1, 0, 1], vec![0, 1, 0]]), 1, 2),
        ] {
            let r = st_battery(&p, &ctx).unwrap();
            assert_eq!(r.isotropy_formal, Some(true), "{}", p.name);
            assert_eq!(r.fpdim.normalizer_order, n);
            assert_eq!(r.fpdim.cohomology_dimension, Some(dim));
        }
    }

    #[test]
    fn structure() {
        let ctx = Ctx::default();
        let e = equivariant_cohomology(&pair("SU(2)", "T1", vec![vec![1]]), &ctx).unwrap();
        assert_eq!(e.ring.vars, vec!["u", "u'"]);
        let rel = parse_poly("u^2 - u'^2", &e.ring.vars).unwrap();
        assert!(e.ring.relation_polys.contains(&rel) || e.ring.relation_polys.contains(&-rel));
        assert!(e.series.same_function(&PoincareSeries::from_ints(&[1, 0, 1], &[2])));
        let e = equivariant_cohomology(&pair("SU(4)", "Sp(2)", vec![vec![1, 0, 1], vec![0, 1, 0]]), &ctx).unwrap();
        assert_eq!(e.exterior_rank, 1);
        assert_eq!(e.exterior_generators[0].degree, 5);
    }
}
