//! Weyl-stabilizer model of the normalizer component groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{
    inverse_rat, kernel_rat, mul_rat, mul_rat_vec, rat_matrix_to_json, to_rat, transpose, RatEntry, RatMat,
};
use crate::invariant_theory::FiniteMatrixGroup;
use crate::lie_data::{weyl_elements, GroupPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizerSource {
    WeylStabilizer,
    Override,
}

/// Groups acting on the character space `X(S) ⊗ ℚ` of a maximal torus `S ⊆ K`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizerAction {
    pub source: NormalizerSource,
    /// `N_G(S)` modulo elements acting trivially on `X(S) ⊗ ℚ`.
    #[serde(skip)]
    pub torus_group: FiniteMatrixGroup,
    /// The part of `torus_group` preserving the roots of `K`; contains `W_K`.
    #[serde(skip)]
    pub subgroup_group: FiniteMatrixGroup,
    pub torus_order: usize,
    pub subgroup_weyl_order: u64,
    /// `|π₀ N_G(K)| = |subgroup_group| / |W_K|`.
    pub order: usize,
    pub torus_elements: Vec<Vec<Vec<RatEntry>>>,
}

fn preserves(m: &RatMat, roots: &HashSet<Vec<num_rational::BigRational>>) -> bool {
    roots.iter().all(|r| roots.contains(&mul_rat_vec(m, r)))
}

pub fn normalizer_action(pair: &GroupPair, ctx: &Ctx) -> Result<NormalizerAction> {
    let g = &pair.ambient;
    let k = &pair.subgroup;
    let m = k.rank;
    let r = to_rat(&pair.restriction);
    let wk_gens: Vec<RatMat> = k.weyl_generators.iter().map(to_rat).collect();
    let (source, torus_group) = match &pair.normalizer_override {
        Some(gens) => {
            let mut all = gens.clone();
            all.extend(wk_gens.iter().cloned());
            (NormalizerSource::Override, FiniteMatrixGroup::generate(&all, m, ctx.limits.group)?)
        }
        None => {
            let rt = transpose(&r);
            let rrt_inv = inverse_rat(&mul_rat(&r, &rt))
                .ok_or_else(|| Error::Input("restriction matrix does not have full row rank".into()))?;
            let right_inverse = mul_rat(&rt, &rrt_inv);
            let ker = kernel_rat(&r, g.rank);
            let mut seen = HashSet::new();
            let mut elements = Vec::new();
            for w in weyl_elements(g, ctx.limits.weyl)? {
                let wr = to_rat(&w);
                let keeps_kernel =
                    ker.iter().all(|v| mul_rat_vec(&r, &mul_rat_vec(&wr, v)).iter().all(num_traits::Zero::is_zero));
                if !keeps_kernel {
                    continue;
                }
                let ws = mul_rat(&mul_rat(&r, &wr), &right_inverse);
                if seen.insert(ws.clone()) {
                    elements.push(ws);
                }
            }
            (NormalizerSource::WeylStabilizer, FiniteMatrixGroup::from_elements(elements, m)?)
        }
    };
    let roots: HashSet<_> = k.all_roots().iter().map(|v| to_rat(&vec![v.clone()]).remove(0)).collect();
    let kept: Vec<RatMat> = torus_group.elements.iter().filter(|e| preserves(e, &roots)).cloned().collect();
    let subgroup_group = FiniteMatrixGroup::from_elements(kept, m)?;
    let set: HashSet<&RatMat> = subgroup_group.elements.iter().collect();
    let wk = FiniteMatrixGroup::generate(&wk_gens, m, ctx.limits.weyl)?;
    if wk.elements.iter().any(|e| !set.contains(e)) {
        return Err(Error::Inconsistent(format!("W({}) is not contained in the normalizer model", k.label)));
    }
    let wk_order = wk.order() as u64;
    Ok(NormalizerAction {
        source,
        torus_order: torus_group.order(),
        subgroup_weyl_order: wk_order,
        order: subgroup_group.order() / wk_order as usize,
        torus_elements: torus_group.elements.iter().map(rat_matrix_to_json).collect(),
        torus_group: torus_group.with_label(format!("N_{}(S)", g.label)),
        subgroup_group,
    })
}
