//! Rational cohomology side: `H*(BG; ℚ)` from Weyl invariants, the normalizer
//! component group and its actions, the four-condition formality battery, and
//! `H*_H(G/H; ℚ)` in the isotropy-formal case.

mod battery;
mod normalizer;

pub use battery::{
    complete_intersection_test, equivariant_cohomology, formality_check, st_battery, CompleteIntersectionTest,
    ConditionVerdict, EquivariantCohomology, FormalityCheck,
    FormalityReport, FpDim, SurjectionCertificate,
};
pub use normalizer::{normalizer_action, NormalizerAction, NormalizerSource};

use serde::Serialize;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{to_rat, transpose};
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::series::PoincareSeries;
use crate::exact_algebra::text::format_poly;
use crate::groebner::{ring_map_image, PresentedRing, RingImage};
use crate::invariant_theory::{fundamental_invariants, FiniteMatrixGroup, InvariantGenerators};
use crate::lie_data::{CompactGroup, GroupPair};

/// An odd primitive of `H*(G; ℚ)` and the generator it transgresses to.
#[derive(Clone, Debug, Serialize)]
pub struct Primitive {
    pub name: String,
    pub degree: u32,
    pub transgression: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BorelCohomology {
    pub group: String,
    /// `ℚ[p_1..p_n]` with cohomological degrees `2 d_i`.
    pub ring: PresentedRing,
    pub weyl_degrees: Vec<u32>,
    /// Coordinates of `H*(BT; ℚ)`, each of degree 2.
    pub torus_vars: Vec<String>,
    /// Generators as `W`-invariant polynomials on the torus.
    pub generators: Vec<String>,
    pub primitives: Vec<Primitive>,
    pub series: PoincareSeries,
    #[serde(skip)]
    pub polys: Vec<Poly>,
    #[serde(skip)]
    pub invariants: InvariantGenerators,
}

pub(crate) fn torus_var_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["u".into()]
    } else {
        (1..=n).map(|i| format!("u{i}")).collect()
    }
}

/// `W` acting on `H*(BT) = Sym(X ⊗ ℚ)`: a lattice map `λ ↦ wλ` becomes the
/// substitution by `wᵀ`.
pub(crate) fn weyl_polynomial_group(g: &CompactGroup, ctx: &Ctx) -> Result<FiniteMatrixGroup> {
    let gens: Vec<_> = g.weyl_generators.iter().map(|w| to_rat(&transpose(w))).collect();
    Ok(FiniteMatrixGroup::generate(&gens, g.rank, ctx.limits.weyl)?.with_label(format!("W({})", g.label)))
}

pub fn borel_cohomology(g: &CompactGroup, ctx: &Ctx) -> Result<BorelCohomology> {
    let n = g.rank;
    let w = weyl_polynomial_group(g, ctx)?;
    if w.order() as u64 != g.weyl_order() {
        return Err(Error::Inconsistent(format!("|W({})| = {} but closure has {}", g.label, g.weyl_order(), w.order())));
    }
    let inv = fundamental_invariants(&w, None)?;
    if inv.generators.len() != n || !inv.complete {
        return Err(Error::Inconsistent(format!("W({}) invariants are not polynomial", g.label)));
    }
    let d = inv.degrees.clone();
    let excess: u32 = d.iter().map(|x| x - 1).sum();
    if excess as usize != g.positive_roots.len() || d.iter().map(|&x| x as u64).product::<u64>() != g.weyl_order() {
        return Err(Error::Inconsistent(format!("degrees {d:?} do not match the root system of {}", g.label)));
    }
    let torus_vars = torus_var_names(n);
    let names = if g.is_torus() {
        torus_vars.clone()
    } else if n == 1 {
        vec!["p".to_string()]
    } else {
        (1..=n).map(|i| format!("p{i}")).collect()
    };
    let degrees: Vec<u32> = d.iter().map(|x| 2 * x).collect();
    let ring = PresentedRing::polynomial(names.clone(), Some(degrees.clone()));
    let primitives = names
        .iter()
        .zip(&degrees)
        .enumerate()
        .map(|(i, (p, deg))| Primitive { name: format!("z{}", i + 1), degree: deg - 1, transgression: p.clone() })
        .collect();
    Ok(BorelCohomology {
        group: g.label.clone(),
        ring,
        weyl_degrees: d,
        generators: inv.generators.iter().map(|f| format_poly(f, &torus_vars)).collect(),
        torus_vars,
        primitives,
        series: PoincareSeries::free(&degrees),
        polys: inv.generators.clone(),
        invariants: inv,
    })
}

impl BorelCohomology {
    /// `H*(BT)` with the coordinates in degree 2.
    pub fn torus_ring(&self) -> PresentedRing {
        PresentedRing::polynomial(self.torus_vars.clone(), Some(vec![2; self.torus_vars.len()]))
    }

    /// The subalgebra generated by the invariant generators inside `H*(BT)`.
    pub(crate) fn in_torus(&self, ctx: &Ctx) -> Result<RingImage> {
        ring_map_image(&self.ring.vars, &[], &self.torus_ring(), &self.polys, ctx)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionCohomology {
    pub ambient: BorelCohomology,
    pub subgroup: BorelCohomology,
    /// `(G generator, image in the subgroup generators)`.
    pub images: Vec<(String, String)>,
    pub image_degrees: Vec<u32>,
    #[serde(skip)]
    pub image_polys: Vec<Poly>,
    /// The same images on the subgroup torus.
    #[serde(skip)]
    pub torus_images: Vec<Poly>,
}

/// `ρ*: H*(BG) → H*(BK)` along the character restriction matrix.
pub fn restriction_cohomology(pair: &GroupPair, ctx: &Ctx) -> Result<RestrictionCohomology> {
    let ambient = borel_cohomology(&pair.ambient, ctx)?;
    let subgroup = borel_cohomology(&pair.subgroup, ctx)?;
    let m = pair.subgroup.rank;
    let r = &pair.restriction;
    // u_i ↦ Σ_j R[j][i] y_j
    let lin: Vec<Poly> = (0..pair.ambient.rank)
        .map(|i| {
            let mut p = Poly::zero(m);
            for (j, row) in r.iter().enumerate() {
                if row[i] != 0 {
                    p = &p + &Poly::var(m, j).scale(&crate::exact_algebra::qi(row[i]));
                }
            }
            p
        })
        .collect();
    let img = subgroup.in_torus(ctx)?;
    let mut image_polys = Vec::new();
    let mut torus_images = Vec::new();
    let mut image_degrees = Vec::new();
    let kdeg = subgroup.ring.degrees.clone().unwrap_or_default();
    for (f, deg) in ambient.polys.iter().zip(&ambient.ring.degrees.clone().unwrap_or_default()) {
        let res = f.substitute(&lin)?;
        let pre = img.preimage(&res).ok_or_else(|| {
            Error::Input(format!(
                "restriction {} is not invariant under W({})",
                format_poly(&res, &subgroup.torus_vars),
                pair.subgroup.label
            ))
        })?;
        if !pre.is_zero() && (!pre.is_homogeneous(&kdeg) || pre.weighted_degree(&kdeg) != Some(*deg as i64)) {
            return Err(Error::Input(format!("inhomogeneous image {}", format_poly(&pre, &subgroup.ring.vars))));
        }
        image_degrees.push(*deg);
        image_polys.push(pre);
        torus_images.push(res);
    }
    let images = ambient
        .ring
        .vars
        .iter()
        .zip(&image_polys)
        .map(|(v, p)| (v.clone(), format_poly(p, &subgroup.ring.vars)))
        .collect();
    Ok(RestrictionCohomology { ambient, subgroup, images, image_degrees, image_polys, torus_images })
}
