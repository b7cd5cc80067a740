use std::cmp::Ordering;

/// Exponent vector of fixed length. Negative entries appear only in Laurent contexts.
///
/// The derived total order is graded reverse lexicographic, which is also the
/// canonical term order used for storage and printing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &d)| e as i64 * d as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&a| a * k as i32).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&a| -a).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn grevlex_cmp(&self, o: &Monomial) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| revlex(&self.0, &o.0))
    }

    pub fn lex_cmp(&self, o: &Monomial) -> Ordering {
        self.0.cmp(&o.0)
    }
}

/// Reverse lexicographic tie-break: the last differing exponent decides, smaller wins.
pub(crate) fn revlex(a: &[i32], b: &[i32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.grevlex_cmp(o)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
