//! JSON group descriptors and the built-in group names.

use serde::{Deserialize, Serialize};

use super::{build_group, product_group, quotient_group, simple_group, torus_group, CompactGroup};
use crate::error::{Error, Result};
use crate::exact_algebra::matrix::IntMat;

/// A group given by name (`"SU(3)"`), by a simple type, a torus, a product,
/// or a central quotient of another descriptor.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupDesc {
    Name(String),
    Simple { simple: SimpleDesc },
    Torus { torus: usize },
    Product { product: Vec<GroupDesc> },
    Quotient { quotient: QuotientDesc },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SimpleDesc {
    pub family: String,
    pub rank: usize,
}

/// `sublattice` lists a ℤ-basis of the quotient's characters, one vector per
/// row, in the cover's own coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuotientDesc {
    pub cover: Box<GroupDesc>,
    pub sublattice: IntMat,
}

fn split_name(s: &str) -> Option<(String, Option<usize>)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
    let t = t.replace(['(', ')', '^'], " ");
    let t = t.trim();
    let cut = t.find(|c: char| c.is_ascii_digit() || c == ' ').unwrap_or(t.len());
    let (head, tail) = t.split_at(cut);
    let tail = tail.trim();
    if head.is_empty() {
        return None;
    }
    if tail.is_empty() {
        return Some((head.to_string(), None));
    }
    tail.parse().ok().map(|n| (head.to_string(), Some(n)))
}

fn unit_vec(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Built-in names: `SU(n)`, `U(n)`, `PSU(n)`, `SO(n)`, `Spin(n)`, `Sp(n)`,
/// `G2`, and tori `T`, `T1`, `T^k`.
pub fn parse_group_name(s: &str) -> Result<CompactGroup> {
    let bad = || Error::Input(format!("unknown group {s:?}"));
    let (head, n) = split_name(s).ok_or_else(bad)?;
    let label = |l: String| move |g: CompactGroup| g.with_label(l);
    let g = match (head.as_str(), n) {
        ("T", k) => {
            let k = k.unwrap_or(1);
            torus_group(k).with_label(format!("T{k}"))
        }
        ("SU", Some(n)) if n >= 2 => simple_group('A', n - 1)?,
        ("SU", Some(1)) => return Err(Error::Input("SU(1) is trivial; rank 0 groups are not modelled".into())),
        ("PSU", Some(n)) if n >= 2 => {
            let su = simple_group('A', n - 1)?;
            quotient_group(&su, &su.cartan.clone()).map(label(format!("PSU({n})")))?
        }
        ("U", Some(1)) => torus_group(1).with_label("U(1)"),
        ("U", Some(n)) if n >= 2 => {
            let cover = product_group(&[simple_group('A', n - 1)?, torus_group(1)])?;
            // ε_i has Dynkin labels ω_i - ω_{i-1} and determinant weight 1.
            let rows: IntMat = (0..n)
                .map(|i| {
                    let mut v = vec![0i64; n];
                    if i < n - 1 {
                        v[i] += 1;
                    }
                    if i > 0 {
                        v[i - 1] -= 1;
                    }
                    v[n - 1] = 1;
                    v
                })
                .collect();
            quotient_group(&cover, &rows).map(label(format!("U({n})")))?
        }
        ("SP", Some(1)) => simple_group('A', 1)?.with_label("Sp(1)"),
        ("SP", Some(n)) if n >= 2 => simple_group('C', n)?,
        ("SPIN", Some(n)) if n >= 3 => spin(n)?,
        ("SO", Some(2)) => torus_group(1).with_label("SO(2)"),
        ("SO", Some(n)) if n >= 3 => {
            let cover = spin(n)?;
            let r = cover.rank;
            let rows: IntMat = if n % 2 == 1 {
                let mut rows: IntMat = (0..r).map(|i| unit_vec(r, i)).collect();
                rows[r - 1][r - 1] = 2;
                rows
            } else {
                let mut rows: IntMat = (0..r - 2).map(|i| unit_vec(r, i)).collect();
                let mut a = vec![0; r];
                a[r - 2] = 1;
                a[r - 1] = 1;
                rows.push(a);
                let mut b = vec![0; r];
                b[r - 1] = 2;
                rows.push(b);
                rows
            };
            quotient_group(&cover, &rows).map(label(format!("SO({n})")))?
        }
        ("G", Some(2)) => simple_group('G', 2)?.with_label("G2"),
        _ => return Err(bad()),
    };
    Ok(g)
}

fn spin(n: usize) -> Result<CompactGroup> {
    let g = match n {
        3 => simple_group('A', 1)?,
        4 => simple_group('D', 2)?,
        n if n % 2 == 1 => simple_group('B', (n - 1) / 2)?,
        n => simple_group('D', n / 2)?,
    };
    Ok(g.with_label(format!("Spin({n})")))
}

impl GroupDesc {
    pub fn build(&self) -> Result<CompactGroup> {
        build_group(self)
    }
}
