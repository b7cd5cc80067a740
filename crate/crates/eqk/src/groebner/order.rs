use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::exact_algebra::monomial::{revlex, Monomial};

/// Monomial orders available to the Buchberger engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Weighted degree first, then reverse lexicographic.
    WeightedGrevLex(Vec<u32>),
    /// Elimination order: the first `k` variables form a block compared first
    /// (grevlex inside the block), then the rest (grevlex). Any monomial
    /// involving the first block exceeds every monomial free of it.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.lex_cmp(b),
            MonomialOrder::GrevLex => a.grevlex_cmp(b),
            MonomialOrder::WeightedGrevLex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| revlex(a.exps(), b.exps())),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps().split_at(*k);
                let (b1, b2) = b.exps().split_at(*k);
                block_grevlex(a1, b1).then_with(|| block_grevlex(a2, b2))
            }
        }
    }
}

fn block_grevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::WeightedGrevLex(w) => {
                let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "wgrevlex({})", s.join(","))
            }
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_eliminates() {
        let o = MonomialOrder::Block(1);
        // x (block 1) beats y^5 (block 2)
        assert_eq!(o.cmp(&Monomial(vec![1, 0]), &Monomial(vec![0, 5])), Ordering::Greater);
        let w = MonomialOrder::WeightedGrevLex(vec![2, 3]);
        assert_eq!(w.cmp(&Monomial(vec![0, 2]), &Monomial(vec![2, 0])), Ordering::Greater);
    }
}
