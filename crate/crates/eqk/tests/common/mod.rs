//! Test-side oracles and instance generators shared by the property suites
//! and the acceptance target. Nothing here calls the library routine under
//! test; each oracle is plain enumeration plus Gaussian elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use eqk::exact_algebra::monomial::Monomial;
use eqk::exact_algebra::poly::Poly;
use eqk::lie_data::CompactGroup;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank of a dense rational matrix.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in 0..=d {
        for mut rest in exponents(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

type Dense = BTreeMap<Vec<u32>, BigRational>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `x^e` after the substitution `x_i ↦ Σ_j g[i][j] x_j`.
fn act_monomial(g: &[Vec<i64>], e: &[u32]) -> Dense {
    let n = g.len();
    let mut acc: Dense = [(vec![0; n], BigRational::one())].into_iter().collect();
    for (i, &k) in e.iter().enumerate() {
        let lin: Dense = (0..n)
            .filter(|&j| g[i][j] != 0)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                (v, q(g[i][j]))
            })
            .collect();
        for _ in 0..k {
            acc = dense_mul(&acc, &lin);
        }
    }
    acc
}

/// `dim ℚ[x]_d^Γ` as the common kernel of `γ - 1` over the generators.
pub fn invariant_dimension(gens: &[Vec<Vec<i64>>], n: usize, d: u32) -> usize {
    let basis = exponents(n, d);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // rows of the stacked operator, one column per basis monomial
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in gens {
        let mut block = vec![vec![BigRational::zero(); basis.len()]; basis.len()];
        for (col, e) in basis.iter().enumerate() {
            for (f, c) in act_monomial(g, e) {
                block[index[&f]][col] += c;
            }
            block[col][col] -= BigRational::one();
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - rank(rows)
}

/// Generators drawn from one finite ambient group (signed permutations, or the
/// automorphisms of `x² - xy + y²`), so the closure is finite.
pub fn finite_group_generators() -> impl Strategy<Value = (usize, Vec<Vec<Vec<i64>>>)> {
    let perm_matrix = |n: usize| {
        (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(p, s)| {
                let mut m = vec![vec![0i64; n]; n];
                for i in 0..n {
                    m[i][p[i]] = if s[i] { -1 } else { 1 };
                }
                m
            },
        )
    };
    let hexagonal = proptest::sample::select(vec![
        vec![vec![1, -1], vec![1, 0]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, -1], vec![1, -1]],
        vec![vec![-1, 0], vec![0, -1]],
        vec![vec![1, 0], vec![1, -1]],
        vec![vec![-1, 1], vec![0, 1]],
    ]);
    prop_oneof![
        proptest::collection::vec(perm_matrix(1), 1..3).prop_map(|g| (1, g)),
        proptest::collection::vec(perm_matrix(2), 1..3).prop_map(|g| (2, g)),
        proptest::collection::vec(perm_matrix(3), 1..3).prop_map(|g| (3, g)),
        proptest::collection::vec(hexagonal, 1..3).prop_map(|g| (2, g)),
    ]
}

/// `∏_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(g: &CompactGroup, lambda: &[i64]) -> BigRational {
    let two_rho = g.two_rho();
    let shifted: Vec<i64> = lambda.iter().zip(&two_rho).map(|(l, r)| 2 * l + r).collect();
    let mut out = BigRational::one();
    for a in &g.positive_roots {
        out = out * g.inner(&shifted, a) / g.inner(&two_rho, a);
    }
    out
}

/// Number of monomials of weighted degree `k` not divisible by any of `gens`.
pub fn standard_monomial_counts(weights: &[u32], gens: &[Vec<u32>], top: u32) -> Vec<u64> {
    let n = weights.len();
    let mut out = vec![0u64; top as usize + 1];
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, w: &[u32], e: &mut Vec<u32>, gens: &[Vec<u32>], top: u32, out: &mut [u64]) {
        if i == w.len() {
            if gens.iter().all(|g| g.iter().zip(e.iter()).any(|(a, b)| a > b)) {
                out[(top - left) as usize] += 1;
            }
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            e[i] = k;
            rec(i + 1, left - k * w[i], w, e, gens, top, out);
            k += 1;
        }
        e[i] = 0;
    }
    rec(0, top, weights, &mut e, gens, top, &mut out);
    out
}

pub fn poly_from(n: usize, terms: &[(Vec<i32>, i64)]) -> Poly {
    Poly::from_terms(n, terms.iter().map(|(e, c)| (Monomial(e.clone()), q(*c))))
}

/// A homogeneous polynomial in two variables with the given coefficients.
pub fn binary_form(coeffs: &[i64]) -> Poly {
    let d = coeffs.len() as i32 - 1;
    poly_from(2, &coeffs.iter().enumerate().map(|(i, &c)| (vec![d - i as i32, i as i32], c)).collect::<Vec<_>>())
}

/// Whether homogeneous `p` of degree `e` is a linear combination of the
/// products of `images` (degrees `degs`) of total degree `e`.
pub fn windowed_membership(images: &[Poly], degs: &[u32], p: &Poly, e: u32) -> bool {
    let mut products: Vec<Poly> = Vec::new();
    fn rec(i: usize, left: u32, images: &[Poly], degs: &[u32], cur: Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        if i == images.len() {
            return;
        }
        let mut c = cur;
        let mut l = left;
        loop {
            rec(i + 1, l, images, degs, c.clone(), out);
            if degs[i] > l {
                break;
            }
            l -= degs[i];
            c = &c * &images[i];
        }
    }
    rec(0, e, images, degs, Poly::one(2), &mut products);
    let mons: Vec<Monomial> = (0..=e as i32).map(|i| Monomial(vec![e as i32 - i, i])).collect();
    let row = |f: &Poly| mons.iter().map(|m| f.coeff(m)).collect::<Vec<_>>();
    let base: Vec<Vec<BigRational>> = products.iter().map(row).collect();
    let r0 = if base.is_empty() { 0 } else { rank(base.clone()) };
    let mut with = base;
    with.push(row(p));
    rank(with) == r0
}

pub fn nonzero_coeff() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

// Property bodies shared by the proptest suites and the acceptance target.

use eqk::ctx::Ctx;
use eqk::groebner::{hilbert_series, ring_map_image, PresentedRing};
use eqk::invariant_theory::{molien_series, FiniteMatrixGroup};
use eqk::lie_data::parse_group_name;
use eqk::rep_ring::irreducible_character;

pub const MOLIEN_DEGREE: u32 = 8;

pub fn check_molien(n: usize, gens: &[Vec<Vec<i64>>]) -> Result<(), String> {
    let g = FiniteMatrixGroup::from_int_generators(gens, 1000).map_err(|e| e.to_string())?;
    let m = molien_series(&g).map_err(|e| e.to_string())?;
    let coeffs = m.series.expand(MOLIEN_DEGREE as usize);
    for d in 0..=MOLIEN_DEGREE {
        let oracle = invariant_dimension(gens, n, d);
        if coeffs[d as usize] != BigInt::from(oracle) {
            return Err(format!("degree {d}: Molien {} vs oracle {oracle} for {gens:?}", coeffs[d as usize]));
        }
    }
    Ok(())
}

pub const WEYL_GROUPS: &[&str] = &["SU(2)", "SO(3)", "U(2)", "SU(3)", "PSU(3)", "Sp(2)", "SO(5)", "G2", "SU(4)"];

pub fn weight_instance() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..WEYL_GROUPS.len(), proptest::collection::vec(-2i64..=2, 3))
}

pub fn check_freudenthal(gi: usize, raw: &[i64]) -> Result<(), String> {
    let g = parse_group_name(WEYL_GROUPS[gi]).map_err(|e| e.to_string())?;
    let lambda = g.dominant_conjugate(&raw[..g.rank]);
    let ch = irreducible_character(&g, &lambda).map_err(|e| e.to_string())?;
    let dim = ch.dimension();
    let oracle = weyl_dimension(&g, &lambda);
    if dim != oracle {
        return Err(format!("{} λ={lambda:?}: character dimension {dim} vs Weyl formula {oracle}", g.label));
    }
    Ok(())
}

pub const HILBERT_TOP: u32 = 12;

pub fn monomial_ring_instance() -> impl Strategy<Value = (Vec<u32>, Vec<Vec<u32>>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(1u32..=4, n),
            proptest::collection::vec(proptest::collection::vec(0u32..=3, n), 0..3),
        )
    })
}

pub fn check_hilbert(weights: &[u32], gens: &[Vec<u32>]) -> Result<(), String> {
    let n = weights.len();
    let gens: Vec<Vec<u32>> = gens.iter().filter(|g| g.iter().any(|&x| x > 0)).cloned().collect();
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let rels: Vec<Poly> =
        gens.iter().map(|g| poly_from(n, &[(g.iter().map(|&x| x as i32).collect(), 1)])).collect();
    let ring = PresentedRing::polynomial(vars, Some(weights.to_vec())).with_relations(rels);
    let s = hilbert_series(&ring, &Ctx::default()).map_err(|e| e.to_string())?;
    let got = s.expand(HILBERT_TOP as usize);
    let want = standard_monomial_counts(weights, &gens, HILBERT_TOP);
    for k in 0..=HILBERT_TOP as usize {
        if got[k] != BigInt::from(want[k]) {
            return Err(format!("weights {weights:?}, monomials {gens:?}: degree {k} series {} vs count {}", got[k], want[k]));
        }
    }
    Ok(())
}

/// Binary forms (coefficient lists, degree = len - 1) and a target.
#[derive(Clone, Debug)]
pub struct MembershipInstance {
    pub images: Vec<Vec<i64>>,
    pub target: Vec<i64>,
    /// Build the target from products of the images when set.
    pub combination: Option<Vec<i64>>,
}

pub fn membership_instance() -> impl Strategy<Value = MembershipInstance> {
    let form = (1usize..=3).prop_flat_map(|d| proptest::collection::vec(-2i64..=2, d + 1));
    (
        proptest::collection::vec(form, 1..=3),
        (1usize..=4).prop_flat_map(|e| proptest::collection::vec(-2i64..=2, e + 1)),
        proptest::option::of(proptest::collection::vec(nonzero_coeff(), 6)),
    )
        .prop_map(|(images, target, combination)| MembershipInstance { images, target, combination })
}

pub fn check_membership(inst: &MembershipInstance) -> Result<(), String> {
    let images: Vec<Poly> = inst.images.iter().map(|c| binary_form(c)).collect();
    let degs: Vec<u32> = inst.images.iter().map(|c| c.len() as u32 - 1).collect();
    let (p, e) = match &inst.combination {
        // a combination of the pairwise products and the images themselves
        Some(coeffs) => {
            let mut p = Poly::zero(2);
            let e = degs.iter().max().copied().unwrap_or(1) * 2;
            let mut k = 0;
            for i in 0..images.len() {
                for j in i..images.len() {
                    if degs[i] + degs[j] == e {
                        p = &p + &(&images[i] * &images[j]).scale(&q(coeffs[k % coeffs.len()]));
                        k += 1;
                    }
                }
            }
            (p, e)
        }
        None => (binary_form(&inst.target), inst.target.len() as u32 - 1),
    };
    let names: Vec<String> = (1..=images.len()).map(|i| format!("s{i}")).collect();
    let target = PresentedRing::polynomial(vec!["x".into(), "y".into()], None);
    let img = ring_map_image(&names, &[], &target, &images, &Ctx::default()).map_err(|e| e.to_string())?;
    let got = img.contains(&p);
    let want = windowed_membership(&images, &degs, &p, e);
    if got != want {
        return Err(format!("{inst:?}: Gröbner says {got}, windowed linear algebra says {want}"));
    }
    if inst.combination.is_some() && !got {
        return Err(format!("{inst:?}: constructed member rejected"));
    }
    Ok(())
}
