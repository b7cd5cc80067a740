//! Restriction `RG → RH` along a torus map and surjectivity certificates.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::character::is_weyl_invariant;
use super::presentation::{representation_ring, RepRingPresentation};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::format_poly;
use crate::groebner::{normal_form, ring_map_image, RingImage};
use crate::lie_data::GroupPair;

#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub source: RepRingPresentation,
    pub target: RepRingPresentation,
    /// Image of each source generator, in the target generators.
    pub images: Vec<Poly>,
    /// The same images as Laurent polynomials on the subgroup torus.
    pub image_characters: Vec<Poly>,
}

pub fn restriction_map(pair: &GroupPair, ctx: &Ctx) -> Result<RestrictionMap> {
    let source = representation_ring(&pair.ambient, ctx)?;
    let target = representation_ring(&pair.subgroup, ctx)?;
    restriction_between(pair, source, target, ctx)
}

pub(crate) fn restriction_between(
    pair: &GroupPair,
    source: RepRingPresentation,
    target: RepRingPresentation,
    ctx: &Ctx,
) -> Result<RestrictionMap> {
    let h = &pair.subgroup;
    let mut images = Vec::new();
    let mut image_characters = Vec::new();
    for g in &source.generators {
        let res = g.poly.map_exponents(&pair.restriction);
        if !is_weyl_invariant(h, &res) {
            return Err(Error::Input(format!(
                "restriction of {} to {} is not Weyl-invariant: {}",
                g.name,
                h.label,
                format_poly(&res, &h.coord_names)
            )));
        }
        images.push(target.express(&res)?);
        image_characters.push(res);
    }
    if !source.ring.relation_polys.is_empty() {
        let basis = target.ring.basis(ctx)?;
        for (r, text) in source.ring.relation_polys.iter().zip(&source.ring.relations) {
            let v = r.substitute(&images)?;
            if !normal_form(&v, &basis).is_zero() {
                return Err(Error::IllDefinedMap(text.clone()));
            }
        }
    }
    Ok(RestrictionMap { source, target, images, image_characters })
}

impl RestrictionMap {
    /// Image of a polynomial in the source generators.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        x.substitute(&self.images)
    }

    pub fn image_ring(&self, ctx: &Ctx) -> Result<RingImage> {
        ring_map_image(
            &self.source.ring.vars,
            &self.source.ring.ideal_generators(),
            &self.target.ring,
            &self.images,
            ctx,
        )
    }

    pub fn images_text(&self) -> Vec<(String, String)> {
        self.source
            .generators
            .iter()
            .zip(&self.images)
            .map(|(g, im)| (g.name.clone(), format_poly(im, &self.target.ring.vars)))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Preimage {
    pub generator: String,
    pub preimage: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub preimages: Vec<Preimage>,
    pub first_missing: Option<String>,
    /// Primes dividing denominators of the preimages.
    pub inverted_primes: Vec<u64>,
    #[serde(skip)]
    pub preimage_polys: Vec<Option<Poly>>,
}

fn primes_of(n: &BigInt) -> Vec<u64> {
    let mut n = n.to_u64().unwrap_or(0);
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 && p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decides whether every subgroup generator lies in the image of `RG ⊗ ℚ`.
pub fn is_restriction_surjective(map: &RestrictionMap, ctx: &Ctx) -> Result<SurjectivityReport> {
    let img = map.image_ring(ctx)?;
    let nt = map.target.nvars();
    let mut preimages = Vec::new();
    let mut polys = Vec::new();
    let mut first_missing = None;
    let mut primes = Vec::new();
    for (j, g) in map.target.generators.iter().enumerate() {
        let pre = img.preimage(&Poly::var(nt, j));
        if let Some(p) = &pre {
            let d = p.denominator_lcm();
            if !d.is_one() {
                primes.extend(primes_of(&d));
            }
        } else if first_missing.is_none() {
            first_missing = Some(g.name.clone());
        }
        preimages.push(Preimage {
            generator: g.name.clone(),
            preimage: pre.as_ref().map(|p| format_poly(p, &map.source.ring.vars)),
        });
        polys.push(pre);
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(SurjectivityReport {
        surjective: first_missing.is_none(),
        preimages,
        first_missing,
        inverted_primes: primes,
        preimage_polys: polys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::text::parse_poly;
    use crate::lie_data::parse_group_name;

    #[test]
    fn su4_sp2() {
        let ctx = Ctx::default();
        let pair = GroupPair::new(
            "SU4-Sp2",
            parse_group_name("SU(4)").unwrap(),
            parse_group_name("Sp(2)").unwrap(),
            vec![vec![1, 0, 1], vec![0, 1, 0]],
        )
        .unwrap();
        let m = restriction_map(&pair, &ctx).unwrap();
        let v = &m.target.ring.vars;
        assert_eq!(m.images[0], parse_poly("c1", v).unwrap());
        assert_eq!(m.images[1], parse_poly("c2 + 1", v).unwrap());
        assert_eq!(m.images[2], parse_poly("c1", v).unwrap());
        let s = is_restriction_surjective(&m, &ctx).unwrap();
        assert!(s.surjective);
    }

    #[test]
    fn so3_so2() {
        let ctx = Ctx::default();
        let pair = GroupPair::new("SO3-SO2", parse_group_name("SO(3)").unwrap(), parse_group_name("SO(2)").unwrap(), vec![vec![1]]).unwrap();
        let m = restriction_map(&pair, &ctx).unwrap();
        let s = is_restriction_surjective(&m, &ctx).unwrap();
        assert!(!s.surjective);
        assert_eq!(s.first_missing.as_deref(), Some("t"));
        let id = GroupPair::identity(parse_group_name("SU(3)").unwrap());
        let m = restriction_map(&id, &ctx).unwrap();
        assert!(is_restriction_surjective(&m, &ctx).unwrap().surjective);
    }
}
