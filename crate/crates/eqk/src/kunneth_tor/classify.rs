//! Hypothesis classification of a pair `(G, H)`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::format_poly;
use crate::groebner::{
    fiber_dimension, groebner_basis, hilbert, krull_dimension, normal_form, FiberDimension, IdealPresentation,
    MonomialOrder, PresentedRing,
};
use crate::invariant_theory::derivative;
use crate::lie_data::{pi1_is_free_abelian, validate_pair, GroupPair, PairValidation, Pi1Report};
use crate::rep_ring::{is_restriction_surjective, restriction_map, RestrictionMap, SurjectivityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    Surjective,
    EqualRank,
    SigmaPair,
    ImagePolynomialFree,
    NotCovered,
}

impl std::fmt::Display for PairCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PairCase::Surjective => "surjective",
            PairCase::EqualRank => "equal_rank",
            PairCase::SigmaPair => "sigma_pair",
            PairCase::ImagePolynomialFree => "image_polynomial_free",
            PairCase::NotCovered => "not_covered",
        };
        f.write_str(s)
    }
}

/// `B/JB` against `rank · dim A/J` for the singular-locus ideal `J` of the image
/// `A`; a free module of that rank would make the two agree.
#[derive(Clone, Debug, Serialize)]
pub struct FiberJump {
    pub ideal: Vec<String>,
    pub base_dimension: u64,
    pub fiber_dimension: u64,
    pub rank: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralCaseCheck {
    /// Relations among the restricted generators beyond those of `RG`.
    pub extra_relations: Vec<String>,
    pub image_dimension: usize,
    /// `dim RH ⊗_RG ℚ` at the augmentation.
    pub augmentation_fiber: FiberDimension,
    pub source_free: bool,
    pub target_free: bool,
    pub finite_free: bool,
    pub fiber_jump: Option<FiberJump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub pair: String,
    pub validation: PairValidation,
    pub pi1: Pi1Report,
    pub case: PairCase,
    pub surjectivity: Option<SurjectivityReport>,
    pub equal_rank: bool,
    pub sigma_pair: bool,
    pub general: Option<GeneralCaseCheck>,
    /// `dim RH ⊗_RG ℚ` and the rank it should have, when known.
    pub rank_over_rg: Option<FiberDimension>,
    pub predicted_rank: Option<u64>,
    pub inverted_primes: Vec<u64>,
    /// Injectivity of `RH ⊗ ℚ → K_H(G/H) ⊗ ℚ` (collapse of the spectral sequence).
    pub collapse_injectivity: bool,
    /// Non-freeness witnessed at a point of `T_H` of prime order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_fiber_jump: Option<TorsionFiberJump>,
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    pub fn covered(&self) -> bool {
        self.case != PairCase::NotCovered
    }
}

/// `dim RH / (res x_j - ε(x_j))`.
pub(crate) fn rh_over_rg(map: &RestrictionMap, ctx: &Ctx) -> Result<FiberDimension> {
    let ring = augmentation_quotient(map);
    fiber_dimension(&ring, &[], ctx)
}

pub(crate) fn augmentation_quotient(map: &RestrictionMap) -> PresentedRing {
    let n = map.target.nvars();
    let rels: Vec<Poly> = map
        .images
        .iter()
        .zip(map.source.augmentation_values())
        .map(|(im, e)| im - &Poly::constant(n, e))
        .filter(|p| !p.is_zero())
        .collect();
    map.target.ring.clone().with_relations(rels)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionFiberJump {
    /// Exponents `a` of the point `(ζ^a_1, ..., ζ^a_m)`, `ζ` a primitive `order`-th root of unity.
    pub point: Vec<u32>,
    pub order: u64,
    pub fiber_dimension: u64,
    pub rank: u64,
}

/// Value of a character at a point of prime order `p` when it is rational:
/// `Σ c_k ζ^k ∈ ℚ` iff `c_1 = ... = c_{p-1}`, and then it equals `c_0 - c_1`.
fn rational_value_at(ch: &Poly, point: &[u32], p: u64) -> Option<BigRational> {
    let mut c = vec![BigRational::zero(); p as usize];
    for (m, coef) in ch.terms() {
        let k: i64 = m.exps().iter().zip(point).map(|(&e, &a)| e as i64 * a as i64).sum();
        c[k.rem_euclid(p as i64) as usize] += coef;
    }
    c[1..].iter().all(|x| *x == c[1]).then(|| &c[0] - &c[1])
}

/// Searches points of prime order where every restricted generator takes a
/// rational value and the fiber of `RH` is larger than `rank`.
fn torsion_fiber_jump(map: &RestrictionMap, primes: &[u64], rank: u64, ctx: &Ctx) -> Result<Option<TorsionFiberJump>> {
    let m = map.target.group.rank;
    let n = map.target.nvars();
    for &p in primes {
        let total = (p as usize).checked_pow(m as u32).filter(|&t| t <= 4096).unwrap_or(0);
        for idx in 1..total {
            let point: Vec<u32> = (0..m).map(|i| ((idx / (p as usize).pow(i as u32)) % p as usize) as u32).collect();
            let values: Option<Vec<BigRational>> =
                map.image_characters.iter().map(|ch| rational_value_at(ch, &point, p)).collect();
            let Some(values) = values else { continue };
            let rels: Vec<Poly> = map
                .images
                .iter()
                .zip(&values)
                .map(|(im, v)| im - &Poly::constant(n, v.clone()))
                .filter(|q| !q.is_zero())
                .collect();
            let ring = map.target.ring.clone().with_relations(rels);
            if let FiberDimension::Finite(d) = fiber_dimension(&ring, &[], ctx)? {
                if d > rank {
                    return Ok(Some(TorsionFiberJump { point, order: p, fiber_dimension: d, rank }));
                }
            }
        }
    }
    Ok(None)
}

fn weyl_quotient(pair: &GroupPair) -> Option<u64> {
    let (g, h) = (pair.ambient.weyl_order(), pair.subgroup.weyl_order());
    (g % h == 0).then(|| g / h)
}

pub fn classify_pair(pair: &GroupPair, ctx: &Ctx) -> Result<HypothesisReport> {
    let validation = validate_pair(pair);
    let pi1 = pi1_is_free_abelian(&pair.ambient);
    let equal_rank = pair.ambient.rank == pair.subgroup.rank;
    let mut report = HypothesisReport {
        pair: pair.name.clone(),
        validation: validation.clone(),
        pi1: pi1.clone(),
        case: PairCase::NotCovered,
        surjectivity: None,
        equal_rank,
        sigma_pair: pair.sigma_pair,
        general: None,
        rank_over_rg: None,
        predicted_rank: None,
        inverted_primes: pair.inverted_primes.clone(),
        collapse_injectivity: false,
        torsion_fiber_jump: None,
        reason: None,
        notes: Vec::new(),
    };
    if !validation.valid {
        report.reason = Some(format!("invalid pair: {}", validation.failures.join("; ")));
        return Ok(report);
    }
    let map = match restriction_map(pair, ctx) {
        Ok(m) => m,
        Err(e @ Error::Budget { .. }) => return Err(e),
        Err(e) => {
            report.reason = Some(format!("restriction map: {e}"));
            return Ok(report);
        }
    };
    let surj = is_restriction_surjective(&map, ctx)?;
    report.inverted_primes.extend(surj.inverted_primes.iter().copied());
    report.inverted_primes.sort_unstable();
    report.inverted_primes.dedup();
    let surjective = surj.surjective;
    report.surjectivity = Some(surj);

    if !pi1.free_abelian {
        report.reason = Some(format!(
            "π₁({}) is not free abelian (torsion primes {:?}); the Künneth spectral sequence need not converge",
            pair.ambient.label, pi1.torsion_primes
        ));
        if equal_rank {
            // freeness is still testable: a free module has the generic rank at every fiber
            let fib = rh_over_rg(&map, ctx)?;
            if let Some(w) = weyl_quotient(pair) {
                if let Some(j) = torsion_fiber_jump(&map, &pi1.torsion_primes, w, ctx)? {
                    report.notes.push(format!(
                        "RH is not free over RG: at the torsion point {:?} (order {}) the fiber has dimension {}, the generic rank is |W_G|/|W_H| = {w}",
                        j.point, j.order, j.fiber_dimension
                    ));
                    report.torsion_fiber_jump = Some(j);
                }
                report.predicted_rank = Some(w);
            }
            report.rank_over_rg = Some(fib);
        }
        return Ok(report);
    }

    if surjective {
        report.case = PairCase::Surjective;
        report.predicted_rank = Some(1);
        report.notes.push("RG → RH is onto after ⊗ℚ, so RH ⊗_RG RH = RH".into());
    } else if equal_rank {
        let fib = rh_over_rg(&map, ctx)?;
        let predicted = weyl_quotient(pair)
            .ok_or_else(|| Error::Inconsistent("|W_H| does not divide |W_G| for an equal-rank pair".into()))?;
        if fib != FiberDimension::Finite(predicted) {
            return Err(Error::Inconsistent(format!(
                "equal-rank pair {}: RH ⊗_RG ℚ has dimension {fib}, expected |W_G|/|W_H| = {predicted}",
                pair.name
            )));
        }
        report.case = PairCase::EqualRank;
        report.rank_over_rg = Some(fib);
        report.predicted_rank = Some(predicted);
        report.notes.push(format!("RH is free over RG of rank |W_G|/|W_H| = {predicted}"));
    } else if pair.sigma_pair {
        report.case = PairCase::SigmaPair;
        report.notes.push("H is the fixed group of a finite-order automorphism (descriptor flag)".into());
    } else {
        let check = general_case(&map, ctx)?;
        if check.finite_free {
            report.case = PairCase::ImagePolynomialFree;
            report.rank_over_rg = Some(check.augmentation_fiber);
            report.predicted_rank = check.augmentation_fiber.finite();
            report.notes.push(
                "image of RG is a polynomial ring and RH is finite over it; both regular, so RH is flat and hence free"
                    .into(),
            );
        } else {
            report.reason = Some(general_reason(&check));
        }
        report.general = Some(check);
    }
    if report.covered() {
        report.collapse_injectivity = true;
        if report.rank_over_rg.is_none() {
            report.rank_over_rg = Some(rh_over_rg(&map, ctx)?);
        }
    }
    Ok(report)
}

fn general_reason(c: &GeneralCaseCheck) -> String {
    if let Some(j) = &c.fiber_jump {
        return format!(
            "RH not free over image: the image of RG has relations {:?}; over its singular locus {:?} the fiber has dimension {} but a free module of rank {} would give {}",
            c.extra_relations,
            j.ideal,
            j.fiber_dimension,
            j.rank,
            j.rank * j.base_dimension
        );
    }
    if c.augmentation_fiber == FiberDimension::Infinite {
        return "RH not free over image: RH is not finite over the image of RG".into();
    }
    if !c.extra_relations.is_empty() {
        return format!("image of RG is not a polynomial ring on the restricted generators: relations {:?}", c.extra_relations);
    }
    if !c.target_free {
        return "RH is not a regular ring, so finite freeness over the image is not certified".into();
    }
    "RG is not a polynomial ring, so the image cannot be certified polynomial".into()
}

fn general_case(map: &RestrictionMap, ctx: &Ctx) -> Result<GeneralCaseCheck> {
    let img = map.image_ring(ctx)?;
    let src_basis = map.source.ring.basis(ctx)?;
    let svars = &map.source.ring.vars;
    let extra: Vec<Poly> = img
        .presentation
        .relation_polys
        .iter()
        .filter(|r| !normal_form(r, &src_basis).is_zero())
        .cloned()
        .collect();
    let image_dimension = krull_dimension(&img.presentation, ctx)?;
    let aug = rh_over_rg(map, ctx)?;
    let source_free = map.source.free;
    let target_free = map.target.free;
    let finite_free = extra.is_empty() && source_free && target_free && aug != FiberDimension::Infinite;
    let mut fiber_jump = None;
    if !extra.is_empty() {
        if let FiberDimension::Finite(r) = aug {
            fiber_jump = singular_fiber_jump(map, &img.presentation.ideal_generators(), image_dimension, r, ctx)?;
        }
    }
    Ok(GeneralCaseCheck {
        extra_relations: extra.iter().map(|r| format_poly(r, svars)).collect(),
        image_dimension,
        augmentation_fiber: aug,
        source_free,
        target_free,
        finite_free,
        fiber_jump,
    })
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut acc = Poly::zero(nv);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &det(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn quotient_dimension(vars: &[String], gens: Vec<Poly>, ctx: &Ctx) -> Result<Option<u64>> {
    let n = vars.len();
    let b = groebner_basis(&IdealPresentation::new(vars.to_vec(), gens), &MonomialOrder::GrevLex, ctx)?;
    if b.is_unit() {
        return Ok(Some(0));
    }
    Ok(hilbert::count_standard_monomials(&b.leading_monomials(), n, u64::MAX - 1))
}

/// Compares `dim B/JB` with `rank · dim A/J` on the Jacobian ideal `J` of the image.
fn singular_fiber_jump(
    map: &RestrictionMap,
    image_ideal: &[Poly],
    image_dimension: usize,
    rank: u64,
    ctx: &Ctx,
) -> Result<Option<FiberJump>> {
    let svars = &map.source.ring.vars;
    let n = svars.len();
    let c = n.saturating_sub(image_dimension);
    let gens: Vec<Poly> = image_ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
    if c == 0 || gens.len() < c {
        return Ok(None);
    }
    let rows = combinations(gens.len(), c);
    let cols = combinations(n, c);
    if rows.len() * cols.len() > 4000 {
        return Ok(None);
    }
    let jac: Vec<Vec<Poly>> = gens.iter().map(|g| (0..n).map(|i| derivative(g, i)).collect()).collect();
    let mut minors = Vec::new();
    for r in &rows {
        for cl in &cols {
            let m: Vec<Vec<Poly>> = r.iter().map(|&i| cl.iter().map(|&j| jac[i][j].clone()).collect()).collect();
            let d = det(&m);
            if !d.is_zero() && !minors.contains(&d) {
                minors.push(d);
            }
        }
    }
    let mut j_ideal = gens.clone();
    j_ideal.extend(minors.iter().cloned());
    let base = match quotient_dimension(svars, j_ideal.clone(), ctx)? {
        Some(0) | None => return Ok(None),
        Some(b) => b,
    };
    let b_basis = groebner_basis(
        &IdealPresentation::new(svars.clone(), j_ideal),
        &MonomialOrder::GrevLex,
        ctx,
    )?;
    let mut fiber_gens = map.target.ring.ideal_generators();
    for m in &b_basis.generators {
        fiber_gens.push(map.apply(m)?);
    }
    let fiber = match quotient_dimension(&map.target.ring.vars, fiber_gens, ctx)? {
        Some(f) => f,
        None => return Ok(None),
    };
    if fiber == rank * base {
        return Ok(None);
    }
    Ok(Some(FiberJump { ideal: b_basis.to_text(), base_dimension: base, fiber_dimension: fiber, rank }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_data::parse_group_name;

    fn maximal_torus(g: &str) -> GroupPair {
        GroupPair::new("t", parse_group_name(g).unwrap(), parse_group_name("T2").unwrap(), vec![vec![1, 0], vec![0, 1]])
            .unwrap()
    }

    #[test]
    fn torsion_fibers() {
        let ctx = Ctx::default();
        let map = restriction_map(&maximal_torus("SU(3)"), &ctx).unwrap();
        assert!(torsion_fiber_jump(&map, &[2, 3], 6, &ctx).unwrap().is_none());
        let r = classify_pair(&maximal_torus("PSU(3)"), &ctx).unwrap();
        assert!(!r.covered());
        let j = r.torsion_fiber_jump.unwrap();
        assert_eq!((j.order, j.fiber_dimension), (3, 10));
    }
}
