//! Finite linear groups over ℚ: Molien series, pseudoreflections, invariant
//! generators, coinvariant algebras, and the Chevalley–Shephard–Todd checks.

mod group;
mod invariants;
mod molien;

use serde::Serialize;

pub use group::{FiniteMatrixGroup, MatrixGroupFile};
pub use invariants::{
    act, derivative, fundamental_invariants, invariants_of_degree, jacobian_nonzero, monomials_of_degree,
    GeneratorCertificate, InvariantGenerators,
};
pub use molien::{det_one_minus_t, extract_degrees, molien_series, MolienData};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{rat_matrix_to_json, RatEntry};
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::{format_poly, indexed_names};
use crate::groebner::{groebner_basis, hilbert, normal_form, IdealPresentation, MonomialOrder, PresentedRing};

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub is_reflection_group: bool,
    pub reflection_count: usize,
    pub generated_order: usize,
    pub order: usize,
    pub reflections: Vec<Vec<Vec<RatEntry>>>,
}

/// True iff the subgroup generated by the pseudoreflections is all of `Γ`.
pub fn is_pseudoreflection_group(g: &FiniteMatrixGroup) -> Result<ReflectionReport> {
    let refl = g.pseudoreflections();
    let generated = if refl.is_empty() { 1 } else { FiniteMatrixGroup::generate(&refl, g.degree, g.order())?.order() };
    Ok(ReflectionReport {
        is_reflection_group: generated == g.order(),
        reflection_count: refl.len(),
        generated_order: generated,
        order: g.order(),
        reflections: refl.iter().map(rat_matrix_to_json).collect(),
    })
}

/// `∏ d_i = |Γ|`.
pub fn parameter_degree_test(degrees: &[u32], order: u64) -> bool {
    degrees.iter().map(|&d| d as u64).product::<u64>() == order
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BoundComparison {
    Equal,
    Greater,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantReport {
    pub order: usize,
    /// Exact dimension when the invariant generators are known to be complete.
    pub dimension: Option<u64>,
    /// With an incomplete generator list the computed quotient only bounds the
    /// true dimension from above (`None` when it is infinite).
    pub partial_upper_bound: Option<u64>,
    pub comparison: BoundComparison,
    pub generators: InvariantGenerators,
}

/// `dim ℚ[V] / (ℚ[V]^Γ_+)` via a Gröbner basis of the invariant generators.
pub fn coinvariant_dimension(g: &FiniteMatrixGroup, degree_bound: Option<u32>, ctx: &Ctx) -> Result<CoinvariantReport> {
    let gens = fundamental_invariants(g, degree_bound)?;
    let n = g.degree;
    let vars = indexed_names("x", n);
    let ideal = IdealPresentation::graded(vars, vec![1; n], gens.generators.clone());
    let b = groebner_basis(&ideal, &MonomialOrder::GrevLex, ctx)?;
    let count = if b.is_unit() { Some(0) } else { hilbert::count_standard_monomials(&b.leading_monomials(), n, u64::MAX - 1) };
    let order = g.order();
    let (dimension, partial, comparison) = if gens.complete {
        let d = count.ok_or_else(|| Error::Inconsistent("coinvariant algebra is infinite-dimensional".into()))?;
        let c = if d == order as u64 { BoundComparison::Equal } else if d > order as u64 { BoundComparison::Greater } else {
            return Err(Error::Inconsistent(format!("coinvariant dimension {d} below |Γ| = {order}")));
        };
        (Some(d), None, c)
    } else {
        // true dimension lies in [|Γ|, partial]
        let c = match count {
            Some(d) if d == order as u64 => BoundComparison::Equal,
            _ => BoundComparison::Undecided,
        };
        (if c == BoundComparison::Equal { count } else { None }, count, c)
    };
    Ok(CoinvariantReport { order, dimension, partial_upper_bound: partial, comparison, generators: gens })
}

#[derive(Clone, Debug, Serialize)]
pub struct CstReport {
    pub order: usize,
    pub reflection_group: bool,
    pub reflection_count: usize,
    pub molien_polynomial: bool,
    pub molien: MolienData,
    pub coinvariant_dimension: Option<u64>,
    pub coinvariant_equals_order: bool,
    pub degrees: Vec<u32>,
    pub verdict: bool,
}

/// Reflection test, Molien factorization and coinvariant count must agree.
pub fn cst_verdict(g: &FiniteMatrixGroup, ctx: &Ctx) -> Result<CstReport> {
    if !g.is_faithful_on() {
        return Err(Error::Input("group elements are not distinct".into()));
    }
    let refl = is_pseudoreflection_group(g)?;
    let molien = molien_series(g)?;
    let coinv = coinvariant_dimension(g, None, ctx)?;
    let a = refl.is_reflection_group;
    let b = molien.polynomial_flag;
    let c = coinv.comparison == BoundComparison::Equal;
    if a != b || b != c {
        return Err(Error::Inconsistent(format!(
            "reflection test {a}, Molien factorization {b}, coinvariant count {c} disagree"
        )));
    }
    if b {
        let excess: u32 = molien.degrees.iter().map(|d| d - 1).sum();
        if !parameter_degree_test(&molien.degrees, g.order() as u64) || excess as usize != refl.reflection_count {
            return Err(Error::Inconsistent("degrees violate ∏ d_i = |Γ| or Σ (d_i - 1) = #reflections".into()));
        }
    }
    Ok(CstReport {
        order: g.order(),
        reflection_group: a,
        reflection_count: refl.reflection_count,
        molien_polynomial: b,
        degrees: molien.degrees.clone(),
        molien,
        coinvariant_dimension: coinv.dimension,
        coinvariant_equals_order: c,
        verdict: a,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub ideals_equal: bool,
    /// First invariant generator outside `(A₊)B`, if any.
    pub missing_invariant: Option<String>,
    /// First `A` generator outside `(B^Γ₊)B`, if any.
    pub missing_subalgebra_generator: Option<String>,
    pub conclusion: Option<String>,
}

/// If `(A₊)B = ((B^Γ)₊)B` then `A = B^Γ`; decided by mutual ideal membership.
pub fn subalgebra_collapse_check(
    a_gens: &[(String, Poly)],
    b: &PresentedRing,
    g: &FiniteMatrixGroup,
    ctx: &Ctx,
) -> Result<CollapseReport> {
    let n = b.nvars();
    if g.degree != n {
        return Err(Error::VariableMismatch(g.degree, n));
    }
    let rel_basis = b.basis(ctx)?;
    for (name, f) in a_gens {
        for e in &g.elements {
            let diff = &act(e, f) - f;
            if !normal_form(&diff, &rel_basis).is_zero() {
                return Err(Error::Input(format!("generator {name} is not invariant")));
            }
        }
    }
    let inv = fundamental_invariants(g, None)?;
    let mut ia = b.ideal_generators();
    ia.extend(a_gens.iter().map(|(_, f)| f.clone()));
    let mut ig = b.ideal_generators();
    ig.extend(inv.generators.iter().cloned());
    let ga = groebner_basis(&IdealPresentation::new(b.vars.clone(), ia), &MonomialOrder::GrevLex, ctx)?;
    let gg = groebner_basis(&IdealPresentation::new(b.vars.clone(), ig), &MonomialOrder::GrevLex, ctx)?;
    let missing_invariant =
        inv.generators.iter().find(|f| !normal_form(f, &ga).is_zero()).map(|f| format_poly(f, &b.vars));
    let missing_subalgebra_generator =
        a_gens.iter().find(|(_, f)| !normal_form(f, &gg).is_zero()).map(|(name, _)| name.clone());
    let ideals_equal = missing_invariant.is_none() && missing_subalgebra_generator.is_none();
    Ok(CollapseReport {
        ideals_equal,
        missing_invariant,
        missing_subalgebra_generator,
        conclusion: ideals_equal.then(|| "A = B^Γ".to_string()),
    })
}
