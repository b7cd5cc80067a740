//! Resource limits and the optional Gröbner cache shared by all operations.

use crate::groebner::cache::GbCache;

#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of S-pair reductions per Gröbner computation.
    pub pairs: u64,
    /// Maximum Weyl group order enumerated.
    pub weyl: usize,
    /// Maximum order of a finite matrix group closed from generators.
    pub group: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pairs: 1_000_000, weyl: 10_000, group: 10_000 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub limits: Limits,
    pub cache: Option<GbCache>,
}

impl Ctx {
    pub fn with_pair_budget(pairs: u64) -> Self {
        Ctx { limits: Limits { pairs, ..Limits::default() }, cache: None }
    }
}
