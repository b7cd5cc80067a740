use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by [`Monomial`], whose order is grevlex, so
/// the representation is canonical. No zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct Poly {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<Monomial, BigRational>,
}

// Equality and hashing ignore the Laurent flag: it records the ambient ring,
// not the element.
impl PartialEq for Poly {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.nvars.hash(h);
        self.terms.hash(h);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `p op q` with a variable-count check.
pub fn poly_arith(p: &Poly, q: &Poly, op: ArithOp) -> Result<Poly> {
    if p.nvars != q.nvars {
        return Err(Error::VariableMismatch(p.nvars, q.nvars));
    }
    Ok(match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
    })
}

/// Value of `p` with every variable set to 1.
pub fn augmentation(p: &Poly) -> BigRational {
    p.terms.values().fold(BigRational::zero(), |a, c| a + c)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, laurent: false, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let nvars = m.nvars();
        let laurent = m.has_negative();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, laurent, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.nvars(), nvars, "monomial length");
            p.add_term(m, c);
        }
        p
    }

    /// Mark the polynomial as living in a Laurent ring.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Grevlex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Returns the constant if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if m.has_negative() {
            self.laurent = true;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly { nvars: self.nvars, laurent: self.laurent, terms: BTreeMap::new() };
        }
        Poly {
            nvars: self.nvars,
            laurent: self.laurent,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent;
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        acc.laurent = self.laurent;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Total degree of the highest term (grevlex leads with total degree).
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn is_homogeneous(&self, w: &[u32]) -> bool {
        let mut d = None;
        for m in self.terms.keys() {
            let e = m.weighted_degree(w);
            match d {
                None => d = Some(e),
                Some(x) if x != e => return false,
                _ => {}
            }
        }
        true
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|m| m.has_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Variables that occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    /// Evaluate at a point with nonzero coordinates wherever a negative exponent occurs.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                } else if e < 0 {
                    v /= num_traits::pow(x.clone(), (-e) as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Ring map sending variable `i` to `images[i]`. Negative exponents require
    /// the image to be a single term (a unit).
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut inverses: Vec<Option<Poly>> = vec![None; images.len()];
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if e > 0 {
                    &images[i]
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(images[i].unit_inverse().ok_or_else(|| {
                            Error::Input(format!("variable {} has a non-unit image", i + 1))
                        })?);
                    }
                    inverses[i].as_ref().unwrap()
                };
                let k = e.unsigned_abs() as usize;
                if e > 0 {
                    let pw = &mut cache[i];
                    if pw.is_empty() {
                        pw.push(Poly::one(target));
                    }
                    while pw.len() <= k {
                        let nxt = &pw[pw.len() - 1] * base;
                        pw.push(nxt);
                    }
                    t = &t * &pw[k];
                } else {
                    t = &t * &base.pow(k as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial.
    pub fn unit_inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let mut p = Poly::monomial(m.inverse(), c.recip());
        p.laurent = true;
        Some(p)
    }

    /// Apply an integer lattice map to the exponent vectors: `e^λ ↦ e^{Rλ}`.
    /// `r` has one row per target coordinate.
    pub fn map_exponents(&self, r: &[Vec<i64>]) -> Poly {
        let n_out = r.len();
        let mut out = Poly::zero(n_out);
        out.laurent = self.laurent;
        for (m, c) in &self.terms {
            let e: Vec<i32> = r
                .iter()
                .map(|row| row.iter().zip(m.exps()).map(|(a, &b)| a * b as i64).sum::<i64>() as i32)
                .collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Re-embed into `n_total` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Poly {
        let mut out = Poly::zero(n_total);
        out.laurent = self.laurent;
        for (m, c) in &self.terms {
            let mut e = vec![0; n_total];
            e[offset..offset + self.nvars].copy_from_slice(m.exps());
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Re-embed by an explicit index map `idx[i]` for each variable.
    pub fn reindex(&self, n_total: usize, idx: &[usize]) -> Poly {
        let mut out = Poly::zero(n_total);
        out.laurent = self.laurent;
        for (m, c) in &self.terms {
            let mut e = vec![0; n_total];
            for (i, &x) in m.exps().iter().enumerate() {
                e[idx[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Saturation encoding of a Laurent polynomial: `t_i^{-k}` becomes `u_i^k`,
    /// with `u_i` stored at index `n + i`. The result has `2n` variables.
    pub fn to_saturated(&self) -> Poly {
        let n = self.nvars;
        let mut out = Poly::zero(2 * n);
        for (m, c) in &self.terms {
            let mut e = vec![0; 2 * n];
            for (i, &x) in m.exps().iter().enumerate() {
                if x >= 0 {
                    e[i] = x;
                } else {
                    e[n + i] = -x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`Poly::to_saturated`]: reads `u_i` as `t_i^{-1}`.
    pub fn from_saturated(&self) -> Poly {
        assert!(self.nvars % 2 == 0);
        let n = self.nvars / 2;
        let mut out = Poly::zero(n);
        out.laurent = true;
        for (m, c) in &self.terms {
            let e: Vec<i32> = (0..n).map(|i| m.exps()[i] - m.exps()[n + i]).collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |a, c| num_integer::Integer::lcm(&a, c.denom()))
    }

    /// Leading coefficient made 1 (no-op on zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|m| m.exps().iter().map(|e| e.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn coefficients_abs_max(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        super::text::format_poly(self, names)
    }

    /// Default variable names: `t1..tn` for Laurent polynomials, `x1..xn` otherwise.
    pub fn default_names(&self) -> Vec<String> {
        let p = if self.laurent { "t" } else { "x" };
        (1..=self.nvars).map(|i| format!("{p}{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&self.default_names()))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        out.laurent |= o.laurent;
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        out.laurent |= o.laurent;
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent || o.laurent;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            laurent: self.laurent,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
