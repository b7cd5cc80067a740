//! Cartan matrices (Bourbaki numbering). Row `i` holds the Dynkin labels of
//! the simple root `α_i`, so `A[i][j] = ⟨α_i, α_j^∨⟩`.

use crate::error::{Error, Result};
use crate::exact_algebra::matrix::IntMat;

pub fn cartan_matrix(family: char, rank: usize) -> Result<IntMat> {
    let bad = || Error::Input(format!("unsupported simple type {family}{rank}"));
    if rank == 0 {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut IntMat, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match family.to_ascii_uppercase() {
        'A' => chain(&mut a, rank),
        'B' => {
            chain(&mut a, rank);
            if rank >= 2 {
                a[rank - 2][rank - 1] = -2;
            }
        }
        'C' => {
            chain(&mut a, rank);
            if rank >= 2 {
                a[rank - 1][rank - 2] = -2;
            }
        }
        'D' => {
            if rank < 2 {
                return Err(bad());
            }
            chain(&mut a, rank - 1);
            if rank >= 3 {
                a[rank - 3][rank - 1] = -1;
                a[rank - 1][rank - 3] = -1;
            }
        }
        'G' if rank == 2 => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

/// Coxeter exponent `m_ij` from `A_ij A_ji`.
pub fn coxeter_m(aij: i64, aji: i64) -> usize {
    match aij * aji {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => 0,
    }
}

/// Weyl group order by type.
pub fn weyl_order(family: char, rank: usize) -> u64 {
    let fact = |n: u64| (1..=n).product::<u64>();
    let n = rank as u64;
    match family.to_ascii_uppercase() {
        'A' => fact(n + 1),
        'B' | 'C' => (1u64 << n) * fact(n),
        'D' if n >= 2 => (1u64 << (n - 1)) * fact(n),
        'G' => 12,
        _ => 0,
    }
}
