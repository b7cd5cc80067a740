//! Root data of compact connected groups: simple factors, tori, products and
//! central quotients, all expressed in the group's own character lattice ℤⁿ.
//!
//! Simply connected simple factors use fundamental-weight coordinates
//! (Dynkin labels). A central quotient is given by a Weyl-stable sublattice
//! of its cover's lattice; its own coordinates are taken with respect to the
//! supplied sublattice basis, and `to_cover` maps them back.

pub mod cartan;
mod descriptor;
mod pair;

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use descriptor::{parse_group_name, GroupDesc, QuotientDesc, SimpleDesc};
pub use pair::{validate_pair, GroupPair, PairDescriptor, PairFlags, PairValidation};

use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{
    identity_int, inverse_rat, mul_int, mul_int_vec, mul_rat, smith_invariants, to_int, to_rat, transpose,
    IntMat, RatMat,
};
use cartan::cartan_matrix;

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Simple { family: char, rank: usize },
    Torus { rank: usize },
    Product(Vec<Structure>),
    Quotient { cover: Box<Structure>, sublattice: IntMat },
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactGroup {
    pub label: String,
    pub rank: usize,
    pub structure: Structure,
    /// Simple roots as rows, in own coordinates.
    pub simple_roots: IntMat,
    /// Simple coroots as linear functionals on own coordinates (rows).
    pub coroots: IntMat,
    pub positive_roots: IntMat,
    pub weyl_generators: Vec<IntMat>,
    /// Block-diagonal Cartan matrix of the semisimple part.
    pub cartan: IntMat,
    /// Simple factors `(family, rank)` in order.
    pub factors: Vec<(char, usize)>,
    /// Weyl-invariant inner product in own coordinates.
    #[serde(skip)]
    pub gram: RatMat,
    /// Own coordinates → simply connected cover coordinates.
    pub to_cover: IntMat,
    pub coord_names: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Pi1Report {
    pub free_abelian: bool,
    pub free_rank: usize,
    pub torsion_invariants: Vec<String>,
    pub torsion_primes: Vec<u64>,
}

pub fn build_group(desc: &GroupDesc) -> Result<CompactGroup> {
    let g = match desc {
        GroupDesc::Name(s) => return parse_group_name(s),
        GroupDesc::Simple { simple } => {
            let fam = simple.family.chars().next().ok_or_else(|| Error::Input("empty family".into()))?;
            simple_group(fam, simple.rank)?
        }
        GroupDesc::Torus { torus } => torus_group(*torus),
        GroupDesc::Product { product } => {
            let parts = product.iter().map(build_group).collect::<Result<Vec<_>>>()?;
            product_group(&parts)?
        }
        GroupDesc::Quotient { quotient } => {
            let cover = build_group(&quotient.cover)?;
            quotient_group(&cover, &quotient.sublattice)?
        }
    };
    Ok(g)
}

fn names_for(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["t".to_string()]
    } else {
        (1..=n).map(|i| format!("t{i}")).collect()
    }
}

fn reflection(alpha: &[i64], coroot: &[i64]) -> IntMat {
    let n = alpha.len();
    (0..n)
        .map(|r| (0..n).map(|c| (r == c) as i64 - alpha[r] * coroot[c]).collect())
        .collect()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn simple_group(family: char, rank: usize) -> Result<CompactGroup> {
    let family = family.to_ascii_uppercase();
    let a = cartan_matrix(family, rank)?;
    let n = rank;
    // Symmetrizer d with A_ij d_j = A_ji d_i, propagated along the diagram.
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * rat(a[j][i]) / rat(a[i][j]));
                    queue.push_back(j);
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(|x| x.unwrap()).collect();
    let ainv = inverse_rat(&to_rat(&a)).ok_or_else(|| Error::Inconsistent("singular Cartan matrix".into()))?;
    let gram: RatMat = (0..n).map(|i| (0..n).map(|k| &d[i] * &ainv[k][i]).collect()).collect();
    let coroots = identity_int(n);
    let weyl_generators = (0..n).map(|i| reflection(&a[i], &coroots[i])).collect();
    let label = match family {
        'A' => format!("SU({})", n + 1),
        'B' => format!("Spin({})", 2 * n + 1),
        'C' => format!("Sp({n})"),
        'D' => format!("Spin({})", 2 * n),
        _ => format!("{family}{n}"),
    };
    let mut g = CompactGroup {
        label,
        rank: n,
        structure: Structure::Simple { family, rank: n },
        simple_roots: a.clone(),
        coroots,
        positive_roots: Vec::new(),
        weyl_generators,
        cartan: a,
        factors: vec![(family, n)],
        gram,
        to_cover: identity_int(n),
        coord_names: names_for(n),
    };
    g.positive_roots = g.compute_positive_roots();
    Ok(g)
}

pub fn torus_group(k: usize) -> CompactGroup {
    CompactGroup {
        label: format!("T{k}"),
        rank: k,
        structure: Structure::Torus { rank: k },
        simple_roots: Vec::new(),
        coroots: Vec::new(),
        positive_roots: Vec::new(),
        weyl_generators: Vec::new(),
        cartan: Vec::new(),
        factors: Vec::new(),
        gram: to_rat(&identity_int(k)),
        to_cover: identity_int(k),
        coord_names: names_for(k),
    }
}

fn embed_vec(v: &[i64], n: usize, off: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    out[off..off + v.len()].copy_from_slice(v);
    out
}

fn block_diag<T: Clone>(blocks: &[&Vec<Vec<T>>], sizes: &[usize], zero: T) -> Vec<Vec<T>> {
    let n: usize = sizes.iter().sum();
    let mut out = vec![vec![zero; n]; n];
    let mut off = 0;
    for (b, &s) in blocks.iter().zip(sizes) {
        for i in 0..s {
            for j in 0..s {
                out[off + i][off + j] = b[i][j].clone();
            }
        }
        off += s;
    }
    out
}

pub fn product_group(parts: &[CompactGroup]) -> Result<CompactGroup> {
    if parts.is_empty() {
        return Err(Error::Input("empty product".into()));
    }
    let sizes: Vec<usize> = parts.iter().map(|p| p.rank).collect();
    let n: usize = sizes.iter().sum();
    let mut simple_roots = Vec::new();
    let mut coroots = Vec::new();
    let mut positive_roots = Vec::new();
    let mut weyl_generators = Vec::new();
    let mut factors = Vec::new();
    let mut off = 0;
    for p in parts {
        simple_roots.extend(p.simple_roots.iter().map(|r| embed_vec(r, n, off)));
        coroots.extend(p.coroots.iter().map(|r| embed_vec(r, n, off)));
        positive_roots.extend(p.positive_roots.iter().map(|r| embed_vec(r, n, off)));
        for s in &p.weyl_generators {
            let mut m = identity_int(n);
            for i in 0..p.rank {
                for j in 0..p.rank {
                    m[off + i][off + j] = s[i][j];
                }
            }
            weyl_generators.push(m);
        }
        factors.extend(p.factors.iter().cloned());
        off += p.rank;
    }
    let cart_sizes: Vec<usize> = parts.iter().map(|p| p.cartan.len()).collect();
    let carts: Vec<&IntMat> = parts.iter().map(|p| &p.cartan).collect();
    let grams: Vec<&RatMat> = parts.iter().map(|p| &p.gram).collect();
    let covers: Vec<&IntMat> = parts.iter().map(|p| &p.to_cover).collect();
    Ok(CompactGroup {
        label: parts.iter().map(|p| p.label.clone()).collect::<Vec<_>>().join("x"),
        rank: n,
        structure: Structure::Product(parts.iter().map(|p| p.structure.clone()).collect()),
        simple_roots,
        coroots,
        positive_roots,
        weyl_generators,
        cartan: block_diag(&carts, &cart_sizes, 0),
        factors,
        gram: block_diag(&grams, &sizes, BigRational::zero()),
        to_cover: block_diag(&covers, &sizes, 0),
        coord_names: names_for(n),
    })
}

/// Quotient by a central subgroup: `rows` is a ℤ-basis (as rows) of the
/// character sublattice, written in the cover's own coordinates.
pub fn quotient_group(cover: &CompactGroup, rows: &IntMat) -> Result<CompactGroup> {
    let n = cover.rank;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("sublattice needs {n} basis vectors of length {n}")));
    }
    let b = transpose(rows);
    let binv = inverse_rat(&to_rat(&b)).ok_or_else(|| Error::Input("sublattice has infinite index".into()))?;
    let to_own = |v: &[i64]| -> Option<Vec<i64>> {
        let r = mul_rat(&binv, &to_rat(&v.iter().map(|&x| vec![x]).collect()));
        to_int(&r).map(|m| m.into_iter().map(|row| row[0]).collect())
    };
    let mut weyl_generators = Vec::new();
    for s in &cover.weyl_generators {
        let m = mul_rat(&mul_rat(&binv, &to_rat(s)), &to_rat(&b));
        let m = to_int(&m).ok_or_else(|| Error::Input("sublattice is not Weyl-stable".into()))?;
        weyl_generators.push(m);
    }
    let conv = |rs: &IntMat| -> Result<IntMat> {
        rs.iter()
            .map(|r| to_own(r).ok_or_else(|| Error::Input("sublattice does not contain the root lattice".into())))
            .collect()
    };
    let simple_roots = conv(&cover.simple_roots)?;
    let positive_roots = conv(&cover.positive_roots)?;
    let coroots: IntMat = cover.coroots.iter().map(|c| mul_int(&vec![c.clone()], &b)[0].clone()).collect();
    let gram = mul_rat(&mul_rat(&to_rat(&transpose(&b)), &cover.gram), &to_rat(&b));
    Ok(CompactGroup {
        label: format!("{}/Z", cover.label),
        rank: n,
        structure: Structure::Quotient { cover: Box::new(cover.structure.clone()), sublattice: rows.clone() },
        simple_roots,
        coroots,
        positive_roots,
        weyl_generators,
        cartan: cover.cartan.clone(),
        factors: cover.factors.clone(),
        gram,
        to_cover: mul_int(&cover.to_cover, &b),
        coord_names: names_for(n),
    })
}

impl CompactGroup {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn is_torus(&self) -> bool {
        self.simple_roots.is_empty()
    }

    /// `⟨λ, α_i^∨⟩` for every simple coroot.
    pub fn dynkin_labels(&self, lambda: &[i64]) -> Vec<i64> {
        mul_int_vec(&self.coroots, lambda)
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.dynkin_labels(lambda).iter().all(|&x| x >= 0)
    }

    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let k: i64 = self.coroots[i].iter().zip(lambda).map(|(a, b)| a * b).sum();
        lambda.iter().zip(&self.simple_roots[i]).map(|(l, a)| l - k * a).collect()
    }

    /// Dominant representative of the Weyl orbit.
    pub fn dominant_conjugate(&self, lambda: &[i64]) -> Vec<i64> {
        let mut v = lambda.to_vec();
        loop {
            let labels = self.dynkin_labels(&v);
            match labels.iter().position(|&x| x < 0) {
                Some(i) => v = self.reflect(i, &v),
                None => return v,
            }
        }
    }

    pub fn weyl_orbit(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([lambda.to_vec()]);
        seen.insert(lambda.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                let w = self.reflect(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            order.push(v);
        }
        order.sort();
        order
    }

    /// `(λ, μ)` under the invariant form.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    s += &self.gram[i][j] * rat(x * y);
                }
            }
        }
        s
    }

    /// `⟨λ, 2ρ^∨⟩`: strictly positive on positive roots.
    pub fn height(&self, lambda: &[i64]) -> BigRational {
        let mut h = BigRational::zero();
        for a in &self.positive_roots {
            h += rat(2) * self.inner(lambda, a) / self.inner(a, a);
        }
        h
    }

    fn compute_positive_roots(&self) -> IntMat {
        let mut seen: HashSet<Vec<i64>> = self.simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = self.simple_roots.iter().cloned().collect();
        let mut out: Vec<Vec<i64>> = Vec::new();
        while let Some(b) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                if b == self.simple_roots[i] {
                    continue;
                }
                let w = self.reflect(i, &b);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            out.push(b);
        }
        out.sort();
        out
    }

    pub fn all_roots(&self) -> IntMat {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }

    /// `|W|` from the classical order formulas of the simple factors.
    pub fn weyl_order(&self) -> u64 {
        self.factors.iter().map(|&(f, r)| cartan::weyl_order(f, r)).product()
    }

    /// `ρ` in own coordinates scaled by 2 (the sum of positive roots).
    pub fn two_rho(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for r in &self.positive_roots {
            for (x, y) in v.iter_mut().zip(r) {
                *x += y;
            }
        }
        v
    }

    /// Own coordinates of a cover-coordinate weight, if it lies in the lattice.
    pub fn own_from_cover(&self, v: &[i64]) -> Option<Vec<i64>> {
        let inv = inverse_rat(&to_rat(&self.to_cover))?;
        let r = mul_rat(&inv, &to_rat(&v.iter().map(|&x| vec![x]).collect()));
        to_int(&r).map(|m| m.into_iter().map(|row| row[0]).collect())
    }

    pub fn cover_from_own(&self, v: &[i64]) -> Vec<i64> {
        mul_int_vec(&self.to_cover, v)
    }
}

/// Complete duplicate-free list of Weyl group elements (identity first).
pub fn weyl_elements(g: &CompactGroup, budget: usize) -> Result<Vec<IntMat>> {
    let id = identity_int(g.rank);
    let mut seen: HashSet<IntMat> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for s in &g.weyl_generators {
            let p = mul_int(s, &m);
            if seen.insert(p.clone()) {
                if seen.len() > budget {
                    return Err(Error::budget(
                        "weyl_elements",
                        format!("more than {budget} elements (formula order {})", g.weyl_order()),
                    ));
                }
                out.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(out)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
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

/// `π₁ = (dual lattice) / (coroot lattice)`; free abelian iff no torsion.
pub fn pi1_is_free_abelian(g: &CompactGroup) -> Pi1Report {
    let rows: Vec<Vec<BigInt>> = g.coroots.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let inv = if rows.is_empty() { Vec::new() } else { smith_invariants(&rows) };
    let torsion: Vec<BigInt> = inv.iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
    let mut primes: Vec<u64> = torsion.iter().flat_map(|t| prime_factors(t.to_u64().unwrap_or(0))).collect();
    primes.sort_unstable();
    primes.dedup();
    Pi1Report {
        free_abelian: torsion.is_empty(),
        free_rank: g.rank - inv.len(),
        torsion_invariants: torsion.iter().map(|t| t.to_string()).collect(),
        torsion_primes: primes,
    }
}

/// Weight multiset `{w(λ)}` restricted along `r`, as a map weight → count.
pub(crate) fn restricted_orbit(g: &CompactGroup, r: &IntMat, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let mut m = BTreeMap::new();
    for v in g.weyl_orbit(lambda) {
        *m.entry(mul_int_vec(r, &v)).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_and_so3() {
        let su2 = parse_group_name("SU(2)").unwrap();
        assert_eq!(su2.rank, 1);
        assert_eq!(weyl_elements(&su2, 100).unwrap().len(), 2);
        assert_eq!(su2.weyl_generators[0], vec![vec![-1]]);
        assert!(pi1_is_free_abelian(&su2).free_abelian);
        let so3 = parse_group_name("SO(3)").unwrap();
        assert_eq!(so3.to_cover, vec![vec![2]]);
        let p = pi1_is_free_abelian(&so3);
        assert!(!p.free_abelian);
        assert_eq!(p.torsion_primes, vec![2]);
    }

    #[test]
    fn orders() {
        for (name, ord) in [("SU(3)", 6), ("Sp(2)", 8), ("SU(4)", 24), ("Spin(5)", 8), ("G2", 12), ("Spin(8)", 192), ("SO(5)", 8), ("PSU(3)", 6), ("U(3)", 6)] {
            let g = parse_group_name(name).unwrap();
            assert_eq!(weyl_elements(&g, 10_000).unwrap().len() as u64, ord, "{name}");
            assert_eq!(g.weyl_order(), ord);
        }
    }

    #[test]
    fn fundamental_groups() {
        assert!(pi1_is_free_abelian(&parse_group_name("U(2)").unwrap()).free_abelian);
        assert_eq!(pi1_is_free_abelian(&parse_group_name("U(2)").unwrap()).free_rank, 1);
        assert_eq!(pi1_is_free_abelian(&parse_group_name("PSU(3)").unwrap()).torsion_primes, vec![3]);
        assert_eq!(pi1_is_free_abelian(&parse_group_name("SO(5)").unwrap()).torsion_primes, vec![2]);
        assert!(pi1_is_free_abelian(&parse_group_name("T2").unwrap()).free_abelian);
    }

    #[test]
    fn positive_root_counts() {
        for (name, n) in [("SU(3)", 3), ("Sp(2)", 4), ("G2", 6), ("SU(4)", 6), ("Spin(7)", 9), ("Spin(8)", 12)] {
            assert_eq!(parse_group_name(name).unwrap().positive_roots.len(), n, "{name}");
        }
    }

    #[test]
    fn budget() {
        let g = parse_group_name("SU(5)").unwrap();
        assert!(matches!(weyl_elements(&g, 50), Err(Error::Budget { .. })));
    }

    #[test]
    fn gram_is_invariant() {
        for name in ["SU(3)", "Sp(3)", "G2", "Spin(7)", "SO(3)", "U(2)"] {
            let g = parse_group_name(name).unwrap();
            for s in &g.weyl_generators {
                let sr = to_rat(s);
                let back = mul_rat(&mul_rat(&to_rat(&transpose(s)), &g.gram), &sr);
                assert_eq!(back, g.gram, "{name}");
            }
        }
    }
}
