//! Hilbert numerators of monomial ideals and leading-term combinatorics.

use num_bigint::BigInt;
use num_traits::Zero;

type Mon = Vec<i32>;

fn wdeg(m: &[i32], w: &[u32]) -> usize {
    m.iter().zip(w).map(|(&e, &d)| e as usize * d as usize).sum()
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Mon>) -> Vec<Mon> {
    gens.sort_by_key(|m| m.iter().sum::<i32>());
    gens.dedup();
    let mut out: Vec<Mon> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn add_into(acc: &mut Vec<BigInt>, p: &[BigInt], shift: usize, sign: i32) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        if sign > 0 {
            acc[i + shift] += c;
        } else {
            acc[i + shift] -= c;
        }
    }
}

fn one_minus(d: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d + 1];
    v[0] += 1;
    v[d] -= 1;
    v
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Numerator `K(t)` with `H_{R/I}(t) = K(t) / ∏ (1 - t^{w_i})` for a monomial
/// ideal `I` in variables of weights `w`. Pivot recursion
/// `K(I) = K(I + (p)) + t^{deg p} K(I : p)` on pure-power pivots.
pub fn hilbert_numerator(gens: &[Mon], w: &[u32]) -> Vec<BigInt> {
    let mut k = numerator_rec(minimalize(gens.to_vec()), w);
    while k.len() > 1 && k.last().is_some_and(|c| c.is_zero()) {
        k.pop();
    }
    k
}

fn numerator_rec(gens: Vec<Mon>, w: &[u32]) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::from(1)];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![BigInt::zero()];
    }
    // Base case: pairwise coprime generators.
    let n = w.len();
    let mut used = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                used[i] += 1;
            }
        }
    }
    if used.iter().all(|&c| c <= 1) {
        let mut acc = vec![BigInt::from(1)];
        for g in &gens {
            acc = mul(&acc, &one_minus(wdeg(g, w)));
        }
        return acc;
    }
    // Pivot x^e on the variable most shared by non-pure-power generators; e is
    // below any pure power of x, so both recursive ideals are strictly simpler.
    let is_pure = |g: &Mon| g.iter().filter(|&&e| e > 0).count() == 1;
    let mut shared = vec![0usize; n];
    for g in gens.iter().filter(|g| !is_pure(g)) {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                shared[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (shared[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<i32> = gens.iter().filter(|g| !is_pure(g)).map(|g| g[var]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut p = vec![0i32; n];
    p[var] = e;

    let mut sum_gens = gens.clone();
    sum_gens.push(p.clone());
    let quot: Vec<Mon> = gens
        .iter()
        .map(|g| g.iter().zip(&p).map(|(&a, &b)| (a - b).max(0)).collect())
        .collect();
    let mut acc = numerator_rec(minimalize(sum_gens), w);
    let q = numerator_rec(minimalize(quot), w);
    add_into(&mut acc, &q, wdeg(&p, w), 1);
    acc
}

/// Largest set of variables containing no generator's support; its size is
/// the Krull dimension of `k[x]/I`.
pub fn independent_dimension(gens: &[Mon], n: usize) -> usize {
    let supports: Vec<u64> = minimalize(gens.to_vec())
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |s, (i, _)| s | (1 << i)))
        .collect();
    if supports.contains(&0) {
        return 0;
    }
    let mut best = 0;
    search(0, n, 0, &supports, &mut best);
    best
}

fn search(i: usize, n: usize, chosen: u64, supports: &[u64], best: &mut usize) {
    let cnt = chosen.count_ones() as usize;
    if cnt + (n - i) <= *best {
        return;
    }
    if i == n {
        *best = cnt;
        return;
    }
    let with = chosen | (1 << i);
    if !supports.iter().any(|&s| s & with == s) {
        search(i + 1, n, with, supports, best);
    }
    search(i + 1, n, chosen, supports, best);
}

/// Standard monomials of a zero-dimensional monomial ideal, counted; `None`
/// when some variable has no pure power among the generators.
pub fn count_standard_monomials(gens: &[Mon], n: usize, cap: u64) -> Option<u64> {
    let gens = minimalize(gens.to_vec());
    let mut bounds = vec![0i32; n];
    for i in 0..n {
        let pure = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g[i])
            .min()?;
        bounds[i] = pure;
    }
    let mut count = 0u64;
    let mut cur = vec![0i32; n];
    enumerate(0, &bounds, &mut cur, &gens, &mut count, cap);
    Some(count)
}

fn enumerate(i: usize, bounds: &[i32], cur: &mut Vec<i32>, gens: &[Mon], count: &mut u64, cap: u64) {
    if *count > cap {
        return;
    }
    if i == bounds.len() {
        *count += 1;
        return;
    }
    for e in 0..bounds[i] {
        cur[i] = e;
        // prune: the partial monomial (later exponents zero) must already be standard
        if gens.iter().any(|g| divides(g, cur)) {
            break;
        }
        enumerate(i + 1, bounds, cur, gens, count, cap);
    }
    cur[i] = 0;
}
