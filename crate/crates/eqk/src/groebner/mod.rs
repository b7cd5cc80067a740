//! Buchberger-based ideal computations over ℚ.

mod buchberger;
pub mod cache;
pub mod hilbert;
pub mod order;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use buchberger::GbStats;
pub use order::MonomialOrder;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::exact_algebra::monomial::Monomial;
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::series::PoincareSeries;
use crate::exact_algebra::text::format_poly;
use buchberger::{reduce_full, SPoly};

/// Generators of an ideal in a polynomial ring with named, graded variables.
/// `order` is set once the generators form a reduced Gröbner basis for it.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub vars: Vec<String>,
    pub degrees: Vec<u32>,
    pub graded: bool,
    pub generators: Vec<Poly>,
    pub order: Option<MonomialOrder>,
}

impl IdealPresentation {
    pub fn new(vars: Vec<String>, generators: Vec<Poly>) -> Self {
        let n = vars.len();
        IdealPresentation { vars, degrees: vec![1; n], graded: false, generators, order: None }
    }

    pub fn graded(vars: Vec<String>, degrees: Vec<u32>, generators: Vec<Poly>) -> Self {
        IdealPresentation { vars, degrees, graded: true, generators, order: None }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.as_constant().is_some_and(|c| !c.is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// Leading exponent vectors under the recorded order.
    pub fn leading_monomials(&self) -> Vec<Vec<i32>> {
        let ord = self.order.clone().unwrap_or(MonomialOrder::GrevLex);
        self.generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| SPoly::from_poly(g, &ord).lm().0.clone())
            .collect()
    }

    pub fn to_text(&self) -> Vec<String> {
        self.generators.iter().map(|g| format_poly(g, &self.vars)).collect()
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn groebner_basis(ideal: &IdealPresentation, order: &MonomialOrder, ctx: &Ctx) -> Result<IdealPresentation> {
    let n = ideal.nvars();
    for g in &ideal.generators {
        if g.nvars() != n {
            return Err(Error::VariableMismatch(g.nvars(), n));
        }
        if g.has_negative_exponent() {
            return Err(Error::Input("Gröbner bases need polynomial generators; use saturation variables".into()));
        }
        if ideal.graded && !g.is_homogeneous(&ideal.degrees) {
            return Err(Error::Ungraded(format!("generator {} is not homogeneous", format_poly(g, &ideal.vars))));
        }
    }
    let key = ctx.cache.as_ref().map(|_| cache::GbCache::canonical_key(n, order, &ideal.generators));
    if let (Some(c), Some(k)) = (&ctx.cache, &key) {
        if let Some(b) = c.load(k, n) {
            return Ok(IdealPresentation { generators: b, order: Some(order.clone()), ..ideal.clone() });
        }
    }
    let weights = match order {
        MonomialOrder::WeightedGrevLex(w) => w.clone(),
        _ if ideal.graded => ideal.degrees.clone(),
        _ => vec![1; n],
    };
    let (basis, _stats) = buchberger::buchberger(&ideal.generators, n, order, &weights, ctx.limits.pairs)?;
    let mut generators: Vec<Poly> = basis.iter().map(|s| s.to_poly(n)).collect();
    if generators.is_empty() {
        generators = Vec::new();
    }
    if let (Some(c), Some(k)) = (&ctx.cache, &key) {
        c.store(k, n, order, &generators);
    }
    Ok(IdealPresentation { generators, order: Some(order.clone()), ..ideal.clone() })
}

/// Remainder of `p` modulo a Gröbner basis (zero iff `p` lies in the ideal).
pub fn normal_form(p: &Poly, basis: &IdealPresentation) -> Poly {
    let ord = basis.order.clone().unwrap_or(MonomialOrder::GrevLex);
    let n = basis.nvars();
    let sp: Vec<SPoly> = basis.generators.iter().filter(|g| !g.is_zero()).map(|g| SPoly::from_poly(g, &ord)).collect();
    let refs: Vec<&SPoly> = sp.iter().collect();
    reduce_full(&SPoly::from_poly(p, &ord), &refs, &ord).to_poly(n)
}

/// Finitely presented commutative ℚ-algebra. Each `(t, u)` in `unit_pairs`
/// contributes the implicit relation `t*u - 1` (Laurent saturation).
#[derive(Clone, Debug, Serialize)]
pub struct PresentedRing {
    pub vars: Vec<String>,
    pub degrees: Option<Vec<u32>>,
    pub relations: Vec<String>,
    #[serde(skip)]
    pub relation_polys: Vec<Poly>,
    pub unit_pairs: Vec<(usize, usize)>,
}

impl PresentedRing {
    pub fn new(vars: Vec<String>, degrees: Option<Vec<u32>>, relations: Vec<Poly>, unit_pairs: Vec<(usize, usize)>) -> Self {
        let text = relations.iter().map(|r| format_poly(r, &vars)).collect();
        PresentedRing { vars, degrees, relations: text, relation_polys: relations, unit_pairs }
    }

    pub fn polynomial(vars: Vec<String>, degrees: Option<Vec<u32>>) -> Self {
        Self::new(vars, degrees, Vec::new(), Vec::new())
    }

    /// ℚ[t_i^{±1}] realized on `t_1..t_n, u_1..u_n`.
    pub fn laurent(names: &[String]) -> Self {
        let n = names.len();
        let mut vars = names.to_vec();
        vars.extend(names.iter().map(|s| format!("{s}inv")));
        let pairs = (0..n).map(|i| (i, n + i)).collect();
        Self::new(vars, None, Vec::new(), pairs)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn with_relations(mut self, extra: Vec<Poly>) -> Self {
        for r in extra {
            self.relations.push(format_poly(&r, &self.vars));
            self.relation_polys.push(r);
        }
        self
    }

    /// All defining relations, including the saturation relations.
    pub fn ideal_generators(&self) -> Vec<Poly> {
        let n = self.nvars();
        let mut out = self.relation_polys.clone();
        for &(t, u) in &self.unit_pairs {
            let mut m = vec![0; n];
            m[t] += 1;
            m[u] += 1;
            out.push(&Poly::monomial(Monomial(m), BigRational::one()) - &Poly::one(n));
        }
        out
    }

    pub fn ideal(&self) -> IdealPresentation {
        match &self.degrees {
            Some(d) if self.unit_pairs.is_empty() => {
                IdealPresentation::graded(self.vars.clone(), d.clone(), self.ideal_generators())
            }
            _ => IdealPresentation::new(self.vars.clone(), self.ideal_generators()),
        }
    }

    pub fn basis(&self, ctx: &Ctx) -> Result<IdealPresentation> {
        let ord = match (&self.degrees, self.unit_pairs.is_empty()) {
            (Some(d), true) => MonomialOrder::WeightedGrevLex(d.clone()),
            _ => MonomialOrder::GrevLex,
        };
        groebner_basis(&self.ideal(), &ord, ctx)
    }

    pub fn is_zero_ring(&self, ctx: &Ctx) -> Result<bool> {
        Ok(self.basis(ctx)?.is_unit())
    }

    /// Reads a Laurent polynomial in the first `n` variables into the
    /// saturation encoding of a ring built by [`PresentedRing::laurent`].
    pub fn import_laurent(&self, p: &Poly) -> Poly {
        let s = p.to_saturated();
        s.embed(self.nvars(), 0)
    }

    pub fn format(&self, p: &Poly) -> String {
        format_poly(p, &self.vars)
    }
}

/// Hilbert series of a positively graded quotient via its leading-term ideal.
pub fn hilbert_series(ring: &PresentedRing, ctx: &Ctx) -> Result<PoincareSeries> {
    let degrees = match &ring.degrees {
        Some(d) if ring.unit_pairs.is_empty() && d.iter().all(|&x| x > 0) => d.clone(),
        _ => return Err(Error::Ungraded("Hilbert series needs positive degrees and no unit pairs".into())),
    };
    let b = ring.basis(ctx)?;
    let num = hilbert::hilbert_numerator(&b.leading_monomials(), &degrees);
    Ok(PoincareSeries::new(num, degrees))
}

pub fn krull_dimension(ring: &PresentedRing, ctx: &Ctx) -> Result<usize> {
    let b = ring.basis(ctx)?;
    Ok(hilbert::independent_dimension(&b.leading_monomials(), ring.nvars()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularSequenceCertificate {
    pub is_regular: bool,
    pub quotient_series: PoincareSeries,
    pub predicted_series: PoincareSeries,
    pub element_degrees: Vec<u32>,
}

/// Koszul test: `elems` is regular iff `H(R/(f)) = H(R) ∏ (1 - t^{deg f_i})`.
pub fn is_regular_sequence(elems: &[Poly], ring: &PresentedRing, ctx: &Ctx) -> Result<RegularSequenceCertificate> {
    let degrees = ring
        .degrees
        .clone()
        .ok_or_else(|| Error::Ungraded("regular-sequence test needs a grading".into()))?;
    let mut element_degrees = Vec::new();
    for e in elems {
        if e.is_zero() || !e.is_homogeneous(&degrees) {
            return Err(Error::Ungraded(format!("{} is not homogeneous", ring.format(e))));
        }
        let d = e.weighted_degree(&degrees).unwrap_or(0);
        if d <= 0 {
            return Err(Error::Ungraded(format!("{} has non-positive degree", ring.format(e))));
        }
        element_degrees.push(d as u32);
    }
    let base = hilbert_series(ring, ctx)?;
    let quotient = hilbert_series(&ring.clone().with_relations(elems.to_vec()), ctx)?;
    let predicted = base.mul_factors(&element_degrees);
    Ok(RegularSequenceCertificate {
        is_regular: quotient.same_function(&predicted),
        quotient_series: quotient,
        predicted_series: predicted,
        element_degrees,
    })
}

/// Dimension of a quotient, or the flag that it is infinite-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberDimension {
    Finite(u64),
    Infinite,
}

impl FiberDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            FiberDimension::Finite(d) => Some(d),
            FiberDimension::Infinite => None,
        }
    }
}

impl std::fmt::Display for FiberDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberDimension::Finite(d) => write!(f, "{d}"),
            FiberDimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// `dim_ℚ R / (x_i - a_i)` for the listed generator values. A unit partner
/// whose value is not given is set to the inverse value.
pub fn fiber_dimension(ring: &PresentedRing, targets: &[(usize, BigRational)], ctx: &Ctx) -> Result<FiberDimension> {
    let n = ring.nvars();
    let mut vals: Vec<Option<BigRational>> = vec![None; n];
    for (i, v) in targets {
        if *i >= n {
            return Err(Error::Input(format!("augmentation target index {i} out of range")));
        }
        vals[*i] = Some(v.clone());
    }
    for &(t, u) in &ring.unit_pairs {
        match (&vals[t], &vals[u]) {
            (Some(a), None) if !a.is_zero() => vals[u] = Some(a.recip()),
            (None, Some(b)) if !b.is_zero() => vals[t] = Some(b.recip()),
            _ => {}
        }
    }
    let extra: Vec<Poly> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.as_ref().map(|a| &Poly::var(n, i) - &Poly::constant(n, a.clone())))
        .collect();
    let mut gens = ring.ideal_generators();
    gens.extend(extra);
    let b = groebner_basis(&IdealPresentation::new(ring.vars.clone(), gens), &MonomialOrder::GrevLex, ctx)?;
    if b.is_unit() {
        return Ok(FiberDimension::Finite(0));
    }
    Ok(match hilbert::count_standard_monomials(&b.leading_monomials(), n, u64::MAX - 1) {
        Some(c) => FiberDimension::Finite(c),
        None => FiberDimension::Infinite,
    })
}

/// Fiber at the point where every variable equals 1 (augmentation).
pub fn augmentation_fiber(ring: &PresentedRing, ctx: &Ctx) -> Result<FiberDimension> {
    let t: Vec<(usize, BigRational)> = (0..ring.nvars()).map(|i| (i, BigRational::one())).collect();
    fiber_dimension(ring, &t, ctx)
}

/// Image of `ℚ[x_1..x_m]/(source relations) → target`, `x_j ↦ images[j]`.
#[derive(Clone, Debug)]
pub struct RingImage {
    pub presentation: PresentedRing,
    pub target: PresentedRing,
    basis: IdealPresentation,
}

pub fn ring_map_image(
    source_vars: &[String],
    source_relations: &[Poly],
    target: &PresentedRing,
    images: &[Poly],
    ctx: &Ctx,
) -> Result<RingImage> {
    let nt = target.nvars();
    let ns = source_vars.len();
    if images.len() != ns {
        return Err(Error::Input(format!("{} images for {} generators", images.len(), ns)));
    }
    for im in images {
        if im.nvars() != nt {
            return Err(Error::VariableMismatch(im.nvars(), nt));
        }
    }
    let target_basis = target.basis(ctx)?;
    for r in source_relations {
        let v = r.substitute(images)?;
        if !normal_form(&v, &target_basis).is_zero() {
            return Err(Error::IllDefinedMap(format_poly(r, source_vars)));
        }
    }
    let n = nt + ns;
    let mut gens: Vec<Poly> = target.ideal_generators().iter().map(|g| g.embed(n, 0)).collect();
    for (j, im) in images.iter().enumerate() {
        gens.push(&Poly::var(n, nt + j) - &im.embed(n, 0));
    }
    let mut vars = target.vars.clone();
    vars.extend(source_vars.iter().cloned());
    let basis = groebner_basis(&IdealPresentation::new(vars, gens), &MonomialOrder::Block(nt), ctx)?;
    let idx: Vec<usize> = (0..n).map(|i| i.saturating_sub(nt)).collect();
    let relations: Vec<Poly> = basis
        .generators
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= nt))
        .map(|g| g.reindex(ns, &idx))
        .collect();
    let mut rels = source_relations.to_vec();
    for r in relations {
        if !rels.contains(&r) {
            rels.push(r);
        }
    }
    let degrees = target.degrees.as_ref().and_then(|d| {
        images
            .iter()
            .map(|im| if im.is_homogeneous(d) { im.weighted_degree(d).filter(|&x| x > 0).map(|x| x as u32) } else { None })
            .collect::<Option<Vec<u32>>>()
    });
    Ok(RingImage {
        presentation: PresentedRing::new(source_vars.to_vec(), degrees, rels, Vec::new()),
        target: target.clone(),
        basis,
    })
}

impl RingImage {
    pub fn source_count(&self) -> usize {
        self.presentation.nvars()
    }

    /// A preimage in the source generators, if `p` (target variables) lies in the image.
    pub fn preimage(&self, p: &Poly) -> Option<Poly> {
        let nt = self.target.nvars();
        let n = nt + self.source_count();
        let r = normal_form(&p.embed(n, 0), &self.basis);
        if r.support_vars().iter().any(|&v| v < nt) {
            return None;
        }
        let idx: Vec<usize> = (0..n).map(|i| i.saturating_sub(nt)).collect();
        Some(r.reindex(self.source_count(), &idx))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.preimage(p).is_some()
    }

    /// True when the elimination ideal is zero (generators algebraically independent).
    pub fn is_free(&self) -> bool {
        self.presentation.relation_polys.iter().all(|r| r.is_zero())
    }

    pub fn elimination_basis(&self) -> &IdealPresentation {
        &self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::text::parse_poly;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, nm: &[String]) -> Poly {
        parse_poly(s, nm).unwrap()
    }

    #[test]
    fn lex_basis_contains_quartic() {
        let nm = names(&["x", "y"]);
        let id = IdealPresentation::new(nm.clone(), vec![p("x^2 - y", &nm), p("y^2 - x", &nm)]);
        let b = groebner_basis(&id, &MonomialOrder::Lex, &Ctx::default()).unwrap();
        assert!(b.generators.contains(&p("y^4 - y", &nm)));
        let again = groebner_basis(&b, &MonomialOrder::Lex, &Ctx::default()).unwrap();
        assert_eq!(again.generators, b.generators);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let nm = names(&["x"]);
        let b = groebner_basis(&IdealPresentation::new(nm.clone(), vec![p("x", &nm), p("x - 1", &nm)]), &MonomialOrder::GrevLex, &Ctx::default()).unwrap();
        assert!(b.is_unit());
        let z = groebner_basis(&IdealPresentation::new(nm.clone(), vec![Poly::zero(1)]), &MonomialOrder::GrevLex, &Ctx::default()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn normal_forms() {
        let nm = names(&["x", "y"]);
        let b = groebner_basis(&IdealPresentation::new(nm.clone(), vec![p("x^2 - y", &nm)]), &MonomialOrder::GrevLex, &Ctx::default()).unwrap();
        assert_eq!(normal_form(&p("x^2", &nm), &b), p("y", &nm));
        let r = PresentedRing::laurent(&names(&["t"]));
        let b = r.basis(&Ctx::default()).unwrap();
        let f = r.import_laurent(&parse_poly("t + t^-1", &names(&["t"])).unwrap());
        assert_eq!(normal_form(&f, &b), f);
    }

    #[test]
    fn hilbert_examples() {
        let ctx = Ctx::default();
        let r = PresentedRing::new(names(&["x"]), Some(vec![2]), vec![p("x^2", &names(&["x"]))], vec![]);
        assert!(hilbert_series(&r, &ctx).unwrap().same_function(&PoincareSeries::polynomial(&[1, 0, 1])));
        let nm = names(&["u", "v"]);
        let r = PresentedRing::new(nm.clone(), Some(vec![2, 2]), vec![p("u^2 - v^2", &nm)], vec![]);
        assert!(hilbert_series(&r, &ctx).unwrap().same_function(&PoincareSeries::from_ints(&[1, 0, 0, 0, -1], &[2, 2])));
        let r = PresentedRing::polynomial(names(&["x", "y"]), Some(vec![2, 3]));
        assert!(hilbert_series(&r, &ctx).unwrap().same_function(&PoincareSeries::free(&[2, 3])));
        let r = PresentedRing::polynomial(names(&["x"]), None);
        assert!(matches!(hilbert_series(&r, &ctx), Err(Error::Ungraded(_))));
    }

    #[test]
    fn krull() {
        let ctx = Ctx::default();
        let nm = names(&["x", "y"]);
        let r = PresentedRing::new(nm.clone(), None, vec![p("x*y", &nm)], vec![]);
        assert_eq!(krull_dimension(&r, &ctx).unwrap(), 1);
        assert_eq!(krull_dimension(&PresentedRing::polynomial(nm, None), &ctx).unwrap(), 2);
        assert_eq!(krull_dimension(&PresentedRing::laurent(&names(&["t"])), &ctx).unwrap(), 1);
    }

    #[test]
    fn regular_sequences() {
        let ctx = Ctx::default();
        let nm = names(&["x", "y"]);
        let r = PresentedRing::polynomial(nm.clone(), Some(vec![1, 1]));
        assert!(is_regular_sequence(&[p("x^2", &nm), p("y^2", &nm)], &r, &ctx).unwrap().is_regular);
        assert!(!is_regular_sequence(&[p("x", &nm), p("x", &nm)], &r, &ctx).unwrap().is_regular);
        let nm = names(&["a", "b", "c"]);
        let r = PresentedRing::new(nm.clone(), Some(vec![1, 1, 1]), vec![p("a + b + c", &nm)], vec![]);
        let e2 = p("a*b + a*c + b*c", &nm);
        let e3 = p("a*b*c", &nm);
        assert!(is_regular_sequence(&[e2, e3], &r, &ctx).unwrap().is_regular);
    }

    #[test]
    fn images() {
        let ctx = Ctx::default();
        let t = PresentedRing::polynomial(names(&["t"]), None);
        let img = ring_map_image(&names(&["s"]), &[], &t, &[p("t^2", &names(&["t"]))], &ctx).unwrap();
        assert!(img.is_free());
        assert!(!img.contains(&p("t", &names(&["t"]))));
        assert_eq!(img.preimage(&p("t^4 + 1", &names(&["t"]))).unwrap(), p("s^2 + 1", &names(&["s"])));

        let l = PresentedRing::laurent(&names(&["t"]));
        let c = l.import_laurent(&parse_poly("t + t^-1", &names(&["t"])).unwrap());
        let img = ring_map_image(&names(&["c"]), &[], &l, &[c.clone()], &ctx).unwrap();
        assert!(img.contains(&c));
        assert!(!img.contains(&l.import_laurent(&parse_poly("t", &names(&["t"])).unwrap())));
        let sq = l.import_laurent(&parse_poly("t^2 + t^-2", &names(&["t"])).unwrap());
        assert_eq!(img.preimage(&sq).unwrap(), p("c^2 - 2", &names(&["c"])));
    }

    #[test]
    fn ill_defined_map() {
        let ctx = Ctx::default();
        let t = PresentedRing::polynomial(names(&["t"]), None);
        let e = ring_map_image(&names(&["s"]), &[p("s^2", &names(&["s"]))], &t, &[p("t", &names(&["t"]))], &ctx);
        assert!(matches!(e, Err(Error::IllDefinedMap(_))));
    }

    #[test]
    fn fibers() {
        let ctx = Ctx::default();
        let nm = names(&["x"]);
        let r = PresentedRing::new(nm.clone(), Some(vec![2]), vec![p("x^2", &nm)], vec![]);
        assert_eq!(fiber_dimension(&r, &[], &ctx).unwrap(), FiberDimension::Finite(2));
        // imposing x = 0 as a relation leaves only the constants
        assert_eq!(fiber_dimension(&r, &[(0, BigRational::zero())], &ctx).unwrap(), FiberDimension::Finite(1));
        let free = PresentedRing::polynomial(names(&["x", "y"]), None);
        assert_eq!(fiber_dimension(&free, &[(0, BigRational::zero())], &ctx).unwrap(), FiberDimension::Infinite);
    }

    #[test]
    fn budget_is_reported() {
        let nm = names(&["x", "y", "z"]);
        let id = IdealPresentation::new(nm.clone(), vec![p("x^3 - y*z", &nm), p("y^3 - x*z", &nm), p("z^3 - x*y", &nm)]);
        let e = groebner_basis(&id, &MonomialOrder::Lex, &Ctx::with_pair_budget(1));
        assert!(matches!(e, Err(Error::Budget { .. })));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("eqk-gb-test-{}", std::process::id()));
        let ctx = Ctx { cache: Some(cache::GbCache::new(&dir)), ..Ctx::default() };
        let nm = names(&["x", "y"]);
        let id = IdealPresentation::new(nm.clone(), vec![p("x^2 - y", &nm), p("y^2 - x", &nm)]);
        let a = groebner_basis(&id, &MonomialOrder::Lex, &ctx).unwrap();
        let b = groebner_basis(&id, &MonomialOrder::Lex, &ctx).unwrap();
        let c = groebner_basis(&id, &MonomialOrder::Lex, &Ctx::default()).unwrap();
        assert_eq!(a.generators, b.generators);
        assert_eq!(a.generators, c.generators);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
