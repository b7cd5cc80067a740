//! Finite groups of rational matrices.

use std::collections::{HashSet, VecDeque};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{
    identity_rat, mul_rat, rank_rat, rat_matrix_from_json, rat_matrix_to_json, RatEntry, RatMat,
};

/// Elements of a finite subgroup of `GL_n(ℚ)`, identity first.
///
/// The group acts on `ℚ[x_1..x_n]` by substitution `x ↦ γx`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMatrixGroup {
    pub degree: usize,
    pub elements: Vec<RatMat>,
    pub label: String,
}

/// JSON form: either `generators` (closed under multiplication) or a full
/// `elements` list (checked for closure).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<RatEntry>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<Vec<RatEntry>>>>,
}

fn check_square(m: &RatMat, n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("matrix is not {n} x {n}")));
    }
    Ok(())
}

impl FiniteMatrixGroup {
    /// Closure of `gens` under multiplication, failing beyond `budget` elements.
    pub fn generate(gens: &[RatMat], degree: usize, budget: usize) -> Result<Self> {
        for g in gens {
            check_square(g, degree)?;
            if rank_rat(g) != degree {
                return Err(Error::Input("singular generator".into()));
            }
        }
        let id = identity_rat(degree);
        let mut seen: HashSet<RatMat> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in gens {
                let p = mul_rat(g, &m);
                if seen.insert(p.clone()) {
                    if seen.len() > budget {
                        return Err(Error::budget("matrix group closure", format!("more than {budget} elements")));
                    }
                    elements.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
        Ok(FiniteMatrixGroup { degree, elements, label: String::new() })
    }

    /// Accepts a complete element list after checking closure.
    pub fn from_elements(elements: Vec<RatMat>, degree: usize) -> Result<Self> {
        let set: HashSet<RatMat> = elements.iter().cloned().collect();
        if set.len() != elements.len() {
            return Err(Error::Input("duplicate group elements".into()));
        }
        for e in &elements {
            check_square(e, degree)?;
        }
        let id = identity_rat(degree);
        if !set.contains(&id) {
            return Err(Error::Input("identity missing".into()));
        }
        for a in &elements {
            for b in &elements {
                if !set.contains(&mul_rat(a, b)) {
                    return Err(Error::Input("element list is not closed under multiplication".into()));
                }
            }
        }
        let mut elements = elements;
        let pos = elements.iter().position(|e| *e == id).unwrap();
        elements.swap(0, pos);
        Ok(FiniteMatrixGroup { degree, elements, label: String::new() })
    }

    pub fn from_int_generators(gens: &[Vec<Vec<i64>>], budget: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.len());
        let r: Vec<RatMat> = gens.iter().map(crate::exact_algebra::matrix::to_rat).collect();
        Self::generate(&r, degree, budget)
    }

    pub fn trivial(degree: usize) -> Self {
        FiniteMatrixGroup { degree, elements: vec![identity_rat(degree)], label: "trivial".into() }
    }

    pub fn with_label(mut self, l: impl Into<String>) -> Self {
        self.label = l.into();
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn from_file(f: &MatrixGroupFile, budget: usize) -> Result<Self> {
        let parse = |v: &Vec<Vec<Vec<RatEntry>>>| -> Result<Vec<RatMat>> {
            v.iter().map(|m| rat_matrix_from_json(m)).collect()
        };
        let g = match (&f.generators, &f.elements) {
            (Some(g), None) => {
                let gens = parse(g)?;
                let degree = gens.first().map(|m| m.len()).ok_or_else(|| Error::Input("no generators".into()))?;
                Self::generate(&gens, degree, budget)?
            }
            (None, Some(e)) => {
                let els = parse(e)?;
                let degree = els.first().map(|m| m.len()).ok_or_else(|| Error::Input("no elements".into()))?;
                Self::from_elements(els, degree)?
            }
            _ => return Err(Error::Input("give exactly one of `generators` or `elements`".into())),
        };
        Ok(g.with_label(f.name.clone().unwrap_or_default()))
    }

    pub fn to_file(&self) -> MatrixGroupFile {
        MatrixGroupFile {
            name: (!self.label.is_empty()).then(|| self.label.clone()),
            generators: None,
            elements: Some(self.elements.iter().map(rat_matrix_to_json).collect()),
        }
    }

    /// Transposed group (the action on polynomial functions in the dual basis).
    pub fn transposed(&self) -> Self {
        FiniteMatrixGroup {
            degree: self.degree,
            elements: self.elements.iter().map(|m| crate::exact_algebra::matrix::transpose(m)).collect(),
            label: self.label.clone(),
        }
    }

    pub fn is_faithful_on(&self) -> bool {
        let set: HashSet<&RatMat> = self.elements.iter().collect();
        set.len() == self.elements.len()
    }

    /// Elements with `rank(γ - I) = 1`.
    pub fn pseudoreflections(&self) -> Vec<RatMat> {
        let id = identity_rat(self.degree);
        self.elements
            .iter()
            .filter(|g| {
                let d: RatMat = g.iter().zip(&id).map(|(r, i)| r.iter().zip(i).map(|(a, b)| a - b).collect()).collect();
                rank_rat(&d) == 1
            })
            .cloned()
            .collect()
    }
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}
