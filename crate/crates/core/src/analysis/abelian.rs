//! Abelianization through the integer Smith normal form of the exponent-sum
//! matrix.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::GroupPresentation;

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Torsion coefficients as machine integers, saturating at `u64::MAX`.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Relations × generators matrix of exponent sums.
pub fn exponent_matrix(g: &GroupPresentation) -> Vec<Vec<BigInt>> {
    g.relations()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; g.num_generators()];
            for l in r.letters() {
                row[l.gen.0] += l.sign();
            }
            row.into_iter().map(BigInt::from).collect()
        })
        .collect()
}

/// Nonzero diagonal of the Smith normal form, each positive and dividing the
/// next.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&m, t..rows, t..cols) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (top, rest) = m.split_at_mut(i);
                for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * p;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in &mut m[t..] {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                // A smaller remainder sits in row or column t; move it to the pivot.
                let (pi, pj) = min_abs_in_cross(&m, t);
                m.swap(t, pi);
                swap_cols(&mut m, t, pj);
                continue;
            }
            let pivot = m[t][t].clone();
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !m[i][j].mod_floor(&pivot).is_zero())
            });
            match bad_row {
                Some(i) => {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, v) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn min_abs_entry(
    m: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(m: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let rows = m.len();
    let cols = m[0].len();
    let col_best = min_abs_entry(m, t..rows, t..t + 1);
    let row_best = min_abs_entry(m, t..t + 1, t..cols);
    match (col_best, row_best) {
        (Some(a), Some(b)) => {
            if m[a.0][a.1].abs() <= m[b.0][b.1].abs() {
                a
            } else {
                b
            }
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => (t, t),
    }
}

pub fn abelianize(g: &GroupPresentation) -> AbelianInvariants {
    let m = exponent_matrix(g);
    let diag = if m.is_empty() || g.num_generators() == 0 {
        Vec::new()
    } else {
        smith_diagonal(m)
    };
    let torsion = diag
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    AbelianInvariants {
        free_rank: g.num_generators() - diag.len(),
        torsion,
    }
}
