//! Subgroup embeddings given by character restriction matrices.

use serde::{Deserialize, Serialize};

use super::{restricted_orbit, CompactGroup, GroupDesc};
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{rank_rat, rat_matrix_from_json, to_rat, IntMat, RatEntry, RatMat};

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct PairFlags {
    #[serde(default)]
    pub sigma_pair: bool,
}

/// On-disk pair descriptor.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PairDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient: GroupDesc,
    pub subgroup: GroupDesc,
    /// `rank(H) × rank(G)` integer matrix acting on characters.
    pub restriction: IntMat,
    #[serde(default)]
    pub flags: PairFlags,
    /// Generators of `N` acting on the subgroup's rational weight space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalizer_override: Option<Vec<Vec<Vec<RatEntry>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverted_primes: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct GroupPair {
    pub name: String,
    pub ambient: CompactGroup,
    pub subgroup: CompactGroup,
    pub restriction: IntMat,
    pub sigma_pair: bool,
    pub normalizer_override: Option<Vec<RatMat>>,
    pub inverted_primes: Vec<u64>,
}

impl PairDescriptor {
    pub fn build(&self) -> Result<GroupPair> {
        let ambient = self.ambient.build()?;
        let subgroup = self.subgroup.build()?;
        let normalizer_override = match &self.normalizer_override {
            Some(gens) => Some(gens.iter().map(|m| rat_matrix_from_json(m)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let name = self.name.clone().unwrap_or_else(|| format!("{}-{}", ambient.label, subgroup.label));
        let pair = GroupPair {
            name,
            ambient,
            subgroup,
            restriction: self.restriction.clone(),
            sigma_pair: self.flags.sigma_pair,
            normalizer_override,
            inverted_primes: self.inverted_primes.clone().unwrap_or_default(),
        };
        pair.check_shape()?;
        Ok(pair)
    }
}

impl GroupPair {
    pub fn new(name: impl Into<String>, ambient: CompactGroup, subgroup: CompactGroup, restriction: IntMat) -> Result<Self> {
        let p = GroupPair {
            name: name.into(),
            ambient,
            subgroup,
            restriction,
            sigma_pair: false,
            normalizer_override: None,
            inverted_primes: Vec::new(),
        };
        p.check_shape()?;
        Ok(p)
    }

    /// The identity pair `(G, G)`.
    pub fn identity(g: CompactGroup) -> Self {
        let n = g.rank;
        let r = crate::exact_algebra::matrix::identity_int(n);
        GroupPair::new(format!("{}-{}", g.label, g.label), g.clone(), g, r).expect("identity shape")
    }

    fn check_shape(&self) -> Result<()> {
        let (m, n) = (self.subgroup.rank, self.ambient.rank);
        if self.restriction.len() != m || self.restriction.iter().any(|r| r.len() != n) {
            return Err(Error::Input(format!("restriction must be {m} x {n}")));
        }
        Ok(())
    }

    pub fn rank_difference(&self) -> usize {
        self.ambient.rank.saturating_sub(self.subgroup.rank)
    }

    pub fn restrict_weight(&self, v: &[i64]) -> Vec<i64> {
        crate::exact_algebra::matrix::mul_int_vec(&self.restriction, v)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PairValidation {
    pub valid: bool,
    pub ambient_rank: usize,
    pub subgroup_rank: usize,
    pub rank_difference: usize,
    pub failures: Vec<String>,
}

/// Checks ranks, that restriction is onto over ℚ (torus inclusion), and that
/// every restricted `W_G`-orbit sum of a basis weight is `W_H`-invariant.
pub fn validate_pair(pair: &GroupPair) -> PairValidation {
    let g = &pair.ambient;
    let h = &pair.subgroup;
    let mut failures = Vec::new();
    if h.rank > g.rank {
        failures.push(format!("rank {} of {} exceeds rank {} of {}", h.rank, h.label, g.rank, g.label));
    }
    if rank_rat(&to_rat(&pair.restriction)) != h.rank {
        failures.push("restriction matrix does not have full row rank".to_string());
    }
    for j in 0..g.rank {
        let mut e = vec![0; g.rank];
        e[j] = 1;
        let orbit = restricted_orbit(g, &pair.restriction, &e);
        for i in 0..h.semisimple_rank() {
            let mut moved = std::collections::BTreeMap::new();
            for (w, c) in &orbit {
                *moved.entry(h.reflect(i, w)).or_insert(0) += c;
            }
            if moved != orbit {
                failures.push(format!(
                    "restricted orbit sum of {} is not invariant under reflection {} of {}",
                    g.coord_names[j],
                    i + 1,
                    h.label
                ));
                break;
            }
        }
    }
    PairValidation {
        valid: failures.is_empty(),
        ambient_rank: g.rank,
        subgroup_rank: h.rank,
        rank_difference: pair.rank_difference(),
        failures,
    }
}
