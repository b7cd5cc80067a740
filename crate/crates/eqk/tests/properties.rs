mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use common::*;
use eqk::ctx::Ctx;
use eqk::exact_algebra::matrix::{identity_int, mul_int, IntMat};
use eqk::exact_algebra::poly::{augmentation, Poly};
use eqk::exact_algebra::series::PoincareSeries;
use eqk::exact_algebra::text::{format_poly, parse_poly};
use eqk::formality::{borel_cohomology, complete_intersection_test, equivariant_cohomology, st_battery};
use eqk::groebner::{
    groebner_basis, hilbert_series, is_regular_sequence, normal_form, FiberDimension, IdealPresentation,
    MonomialOrder, PresentedRing,
};
use eqk::invariant_theory::{coinvariant_dimension, cst_verdict, is_pseudoreflection_group, molien_series, FiniteMatrixGroup};
use eqk::kunneth_tor::{assemble_ktheory, classify_pair, iota_map, ordinary_ktheory, tor0_presentation};
use eqk::lie_data::cartan::coxeter_m;
use eqk::lie_data::{parse_group_name, weyl_elements, GroupPair};
use eqk::rep_ring::{irreducible_character, representation_ring, restriction_map};

fn laurent(n: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(-2i32..=2, n), -3i64..=3), 0..5)
        .prop_map(move |terms| poly_from(n, &terms.into_iter().collect::<Vec<_>>()))
}

fn polynomial(n: usize, max_exp: i32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, n), -3i64..=3), 0..4)
        .prop_map(move |terms| poly_from(n, &terms))
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn ctx() -> Ctx {
    Ctx::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in laurent(2), b in laurent(2), c in laurent(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn augmentation_is_a_ring_map(a in laurent(2), b in laurent(2)) {
        prop_assert_eq!(augmentation(&(&a * &b)), augmentation(&a) * augmentation(&b));
        prop_assert_eq!(augmentation(&(&a + &b)), augmentation(&a) + augmentation(&b));
    }

    #[test]
    fn polynomial_text_round_trip(a in laurent(3)) {
        let n = names(3);
        prop_assert_eq!(parse_poly(&format_poly(&a, &n), &n).unwrap(), a);
    }

    #[test]
    fn series_arithmetic_matches_expansion(
        num1 in proptest::collection::vec(-3i64..=3, 1..4),
        den1 in proptest::collection::vec(1u32..=3, 0..3),
        num2 in proptest::collection::vec(-3i64..=3, 1..4),
        den2 in proptest::collection::vec(1u32..=3, 0..3),
    ) {
        let order = 10;
        let a = PoincareSeries::from_ints(&num1, &den1);
        let b = PoincareSeries::from_ints(&num2, &den2);
        let (ea, eb) = (a.expand(order), b.expand(order));
        let prod = a.mul(&b).expand(order);
        let sum = a.add(&b).expand(order);
        for k in 0..=order {
            let conv: BigInt = (0..=k).map(|i| &ea[i] * &eb[k - i]).sum();
            prop_assert_eq!(&prod[k], &conv);
            prop_assert_eq!(&sum[k], &(&ea[k] + &eb[k]));
        }
    }

    #[test]
    fn normal_form_respects_products(
        gens in proptest::collection::vec(polynomial(3, 2), 1..3),
        p in polynomial(3, 2),
        r in polynomial(3, 2),
    ) {
        let vars = names(3);
        let b = groebner_basis(&IdealPresentation::new(vars, gens.clone()), &MonomialOrder::GrevLex, &ctx()).unwrap();
        let lhs = normal_form(&(&p * &r), &b);
        let rhs = normal_form(&(&normal_form(&p, &b) * &normal_form(&r, &b)), &b);
        prop_assert_eq!(lhs, rhs);
        for g in &gens {
            prop_assert!(normal_form(g, &b).is_zero());
        }
    }

    #[test]
    fn free_hilbert_series_closed_form(degrees in proptest::collection::vec(1u32..=5, 1..5)) {
        let n = degrees.len();
        let ring = PresentedRing::polynomial(names(n), Some(degrees.clone()));
        let s = hilbert_series(&ring, &ctx()).unwrap();
        prop_assert!(s.same_function(&PoincareSeries::free(&degrees)));
    }

    #[test]
    fn regular_sequence_test_ignores_order(
        forms in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2..4), 1..3),
        perm_seed in any::<u64>(),
    ) {
        let seq: Vec<Poly> = forms.iter().map(|c| binary_form(c)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!seq.is_empty());
        let ring = PresentedRing::polynomial(vec!["x".into(), "y".into()], Some(vec![1, 1]));
        let mut shuffled = seq.clone();
        shuffled.rotate_left((perm_seed as usize) % seq.len());
        let a = is_regular_sequence(&seq, &ring, &ctx()).unwrap();
        let b = is_regular_sequence(&shuffled, &ring, &ctx()).unwrap();
        prop_assert_eq!(a.is_regular, b.is_regular);
    }

    #[test]
    fn ci_flag_ignores_generator_order(
        forms in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2..4), 1..4),
        perm_seed in any::<u64>(),
    ) {
        let gens: Vec<Poly> = forms.iter().map(|c| binary_form(c)).collect();
        let ring = PresentedRing::polynomial(vec!["x".into(), "y".into()], Some(vec![1, 1]));
        let mut shuffled = gens.clone();
        shuffled.rotate_left((perm_seed as usize) % gens.len());
        shuffled.reverse();
        let a = complete_intersection_test(&ring, &gens, &ctx()).unwrap();
        let b = complete_intersection_test(&ring, &shuffled, &ctx()).unwrap();
        prop_assert_eq!(a.is_complete_intersection, b.is_complete_intersection);
        prop_assert_eq!(a.quotient_dimension, b.quotient_dimension);
    }

    #[test]
    fn weyl_characters_are_invariant((gi, raw) in weight_instance()) {
        let g = parse_group_name(WEYL_GROUPS[gi]).unwrap();
        let lambda = g.dominant_conjugate(&raw[..g.rank]);
        let ch = irreducible_character(&g, &lambda).unwrap();
        for w in &g.weyl_generators {
            prop_assert_eq!(ch.poly.map_exponents(w), ch.poly.clone());
        }
    }

    #[test]
    fn restriction_is_multiplicative(i in 0usize..3, j in 0usize..3, pick in 0usize..4) {
        let pairs = restriction_pairs();
        let (pair, map) = &pairs[pick % pairs.len()];
        let k = map.source.nvars();
        let (i, j) = (i % k, j % k);
        let gi = &map.source.generators[i].poly;
        let gj = &map.source.generators[j].poly;
        let direct = (gi * gj).map_exponents(&pair.restriction);
        let prod = &Poly::var(k, i) * &Poly::var(k, j);
        let via = map.target.evaluate(&map.apply(&prod).unwrap()).unwrap();
        prop_assert_eq!(via, direct);
    }

    #[test]
    fn cst_tests_agree((n, gens) in finite_group_generators()) {
        let g = FiniteMatrixGroup::from_int_generators(&gens, 1000).unwrap();
        let r = cst_verdict(&g, &ctx());
        prop_assert!(r.is_ok(), "{gens:?}: {:?}", r.err());
        let r = r.unwrap();
        let m = molien_series(&g).unwrap();
        if m.polynomial_flag {
            let prod: u64 = m.degrees.iter().map(|&d| d as u64).product();
            let excess: u32 = m.degrees.iter().map(|d| d - 1).sum();
            prop_assert_eq!(prod, g.order() as u64);
            prop_assert_eq!(excess as usize, r.reflection_count);
        }
        let _ = n;
    }

    #[test]
    fn coinvariants_bound_order((n, gens) in finite_group_generators()) {
        prop_assume!(n <= 2);
        let g = FiniteMatrixGroup::from_int_generators(&gens, 1000).unwrap();
        let c = coinvariant_dimension(&g, None, &ctx()).unwrap();
        let refl = is_pseudoreflection_group(&g).unwrap().is_reflection_group;
        let dim = c.dimension.unwrap();
        prop_assert!(dim >= g.order() as u64);
        prop_assert_eq!(dim == g.order() as u64, refl);
    }
}

fn restriction_pairs() -> &'static Vec<(GroupPair, eqk::rep_ring::RestrictionMap)> {
    static CELL: OnceLock<Vec<(GroupPair, eqk::rep_ring::RestrictionMap)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["SU2-T", "SU3-T", "SU4-Sp2", "SU4-circle"]
            .iter()
            .map(|n| {
                let p = eqk::catalog::lookup(n).unwrap().pair().unwrap();
                let m = restriction_map(&p, &ctx()).unwrap();
                (p, m)
            })
            .collect()
    })
}

const GROUPS: &[&str] = &["SU(2)", "SO(3)", "U(2)", "SU(3)", "PSU(3)", "Sp(2)", "SO(5)", "G2", "SU(4)", "SO(8)"];

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn coxeter_relations() {
    for name in GROUPS {
        let g = parse_group_name(name).unwrap();
        let k = g.weyl_generators.len();
        let id = identity_int(g.rank);
        for i in 0..k {
            for j in 0..k {
                let m = if i == j { 1 } else { coxeter_m(g.cartan[i][j], g.cartan[j][i]) };
                let sij: IntMat = mul_int(&g.weyl_generators[i], &g.weyl_generators[j]);
                let mut p = id.clone();
                for step in 1..=m {
                    p = mul_int(&p, &sij);
                    if step < m {
                        assert_ne!(p, id, "{name}: (s{i} s{j})^{step} = 1 before {m}");
                    }
                }
                assert_eq!(p, id, "{name}: (s{i} s{j})^{m} != 1");
            }
        }
    }
}

#[test]
fn weyl_orders_classical() {
    let ctx = ctx();
    for n in 2..=5u64 {
        let g = parse_group_name(&format!("SU({n})")).unwrap();
        assert_eq!(weyl_elements(&g, 10_000).unwrap().len() as u64, factorial(n));
    }
    for n in 2..=3u64 {
        let sp = parse_group_name(&format!("Sp({n})")).unwrap();
        assert_eq!(weyl_elements(&sp, 10_000).unwrap().len() as u64, (1 << n) * factorial(n));
        let so = parse_group_name(&format!("SO({})", 2 * n + 1)).unwrap();
        assert_eq!(weyl_elements(&so, 10_000).unwrap().len() as u64, (1 << n) * factorial(n));
    }
    for n in 3..=4u64 {
        let so = parse_group_name(&format!("SO({})", 2 * n)).unwrap();
        assert_eq!(weyl_elements(&so, 10_000).unwrap().len() as u64, (1 << (n - 1)) * factorial(n));
    }
    let _ = ctx;
}

#[test]
fn restriction_intertwines_weyl_actions() {
    for e in eqk::catalog::all_entries() {
        let p = e.pair().unwrap();
        let wg = weyl_elements(&p.ambient, 10_000).unwrap();
        for s in &p.subgroup.weyl_generators {
            let target = mul_int(s, &p.restriction);
            assert!(
                wg.iter().any(|w| mul_int(&p.restriction, w) == target),
                "{}: W_H generator {s:?} is not induced from W_G",
                p.name
            );
        }
    }
}

#[test]
fn torus_is_free_over_rg_for_torsion_free_pi1() {
    let ctx = ctx();
    for name in ["SU(2)", "U(2)", "SU(3)", "Sp(2)", "G2"] {
        let g = parse_group_name(name).unwrap();
        let t = parse_group_name(&format!("T{}", g.rank)).unwrap();
        let pair = GroupPair::new("t", g.clone(), t, identity_int(g.rank)).unwrap();
        let r = classify_pair(&pair, &ctx).unwrap();
        assert_eq!(r.rank_over_rg, Some(FiberDimension::Finite(g.weyl_order())), "{name}");
    }
}

#[test]
fn tor0_fibers_equal_rank() {
    let ctx = ctx();
    for name in ["SU2-T", "SU3-T"] {
        let p = eqk::catalog::lookup(name).unwrap().pair().unwrap();
        let t = tor0_presentation(&p, &ctx).unwrap();
        let w = p.ambient.weyl_order() / p.subgroup.weyl_order();
        assert_eq!(t.double_augmentation_fiber(&ctx).unwrap(), FiberDimension::Finite(p.ambient.weyl_order()));
        assert_eq!(t.one_factor_fiber(&ctx).unwrap(), FiberDimension::Finite(w));
    }
}

#[test]
fn covered_pairs_have_rank_difference_exterior() {
    let ctx = ctx();
    for e in eqk::catalog::all_entries() {
        let p = e.pair().unwrap();
        if !classify_pair(&p, &ctx).unwrap().covered() {
            continue;
        }
        let k = assemble_ktheory(&p, &ctx).unwrap();
        assert_eq!(k.exterior_rank, p.rank_difference(), "{}", p.name);
        let o = ordinary_ktheory(&p, &ctx).unwrap();
        let w = p.ambient.weyl_order() / p.subgroup.weyl_order();
        let expected = if p.subgroup.is_torus() || k.case == eqk::kunneth_tor::PairCase::Surjective {
            Some((1u64 << p.rank_difference()) * if k.case == eqk::kunneth_tor::PairCase::Surjective { 1 } else { w })
        } else {
            None
        };
        if let Some(x) = expected {
            assert_eq!(o.total_rank, Some(x), "{}", p.name);
        }
    }
}

#[test]
fn identity_pair_gives_rg() {
    let ctx = ctx();
    for name in ["SU(2)", "SU(3)", "Sp(2)"] {
        let g = parse_group_name(name).unwrap();
        let k = assemble_ktheory(&GroupPair::identity(g.clone()), &ctx).unwrap();
        assert_eq!(k.exterior_rank, 0);
        assert_eq!(k.ring.vars, representation_ring(&g, &ctx).unwrap().ring.vars);
    }
}

#[test]
fn iota_components_are_ring_maps_and_jointly_injective() {
    let ctx = ctx();
    for name in ["SO3-SO2", "SU2-T", "SU3-T"] {
        let p = eqk::catalog::lookup(name).unwrap().pair().unwrap();
        let m = iota_map(&p, &ctx).unwrap();
        let n = m.tor0.ring.nvars();
        let x = Poly::var(n, 0);
        let y = Poly::var(n, n - 1);
        let xy = m.apply(&(&x * &y)).unwrap();
        let (ax, ay) = (m.apply(&x).unwrap(), m.apply(&y).unwrap());
        for (c, (a, b)) in xy.iter().zip(ax.iter().zip(&ay)) {
            assert_eq!(c, &(a * b), "{name}");
        }
        let one = m.apply(&Poly::one(n)).unwrap();
        assert!(one.iter().all(|p| p.is_one()));
        assert!(m.window_injective(2, &ctx).unwrap(), "{name}");
    }
}

#[test]
fn borel_degrees_match_root_data() {
    let ctx = ctx();
    for name in GROUPS.iter().filter(|n| **n != "SO(8)") {
        let g = parse_group_name(name).unwrap();
        let b = borel_cohomology(&g, &ctx).unwrap();
        let prod: u64 = b.weyl_degrees.iter().map(|&d| d as u64).product();
        let excess: u32 = b.weyl_degrees.iter().map(|d| d - 1).sum();
        assert_eq!(prod, g.weyl_order(), "{name}");
        assert_eq!(excess as usize, g.positive_roots.len(), "{name}");
    }
}

#[test]
fn battery_verdicts_agree_and_structure_checks() {
    let ctx = ctx();
    for e in eqk::catalog::all_entries() {
        let p = e.pair().unwrap();
        let r = st_battery(&p, &ctx).unwrap();
        let decided: Vec<bool> = r.conditions.iter().filter_map(|c| c.verdict).collect();
        if decided.len() == 4 {
            assert!(decided.iter().all(|&v| v == decided[0]), "{}", p.name);
        }
        if r.isotropy_formal == Some(true) {
            let h = equivariant_cohomology(&p, &ctx).unwrap();
            assert_eq!(h.even_series.pole_order_at_one(), p.subgroup.rank);
            assert_eq!(h.forgetful_dimension, Some((r.fpdim.normalizer_order as u64) << p.rank_difference()));
            assert_eq!(h.exterior_rank, p.rank_difference());
        }
    }
}

#[test]
fn molien_oracle_on_weyl_groups() {
    let ctx = ctx();
    for name in ["SU(3)", "Sp(2)", "G2", "SU(4)"] {
        let g = parse_group_name(name).unwrap();
        let gens: Vec<Vec<Vec<i64>>> = g.weyl_generators.clone();
        check_molien(g.rank, &gens).unwrap();
        let _ = &ctx;
    }
    let _ = (BigInt::one(), q(0));
}
