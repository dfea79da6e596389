// elimination updates row i from pivot row k, so columns are indexed
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use super::{MathError, Rational};

/// Dense symmetric matrix over the rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MathError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MathError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let m = SymMatrix { n, entries };
        for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MathError::NotSymmetric);
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MathError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, MathError> {
        if x.len() != self.n {
            return Err(MathError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &x[j]).sum())
            .collect())
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, MathError> {
        let my = self.mul_vec(y)?;
        if x.len() != self.n {
            return Err(MathError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(x.iter().zip(&my).map(|(a, b)| a * b).sum())
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    /// Sylvester's criterion by exact elimination without pivoting: every
    /// pivot (ratio of consecutive leading principal minors) is negative.
    pub fn is_negative_definite(&self) -> bool {
        self.negative_definite_factor().is_some()
    }

    fn negative_definite_factor(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.n;
        let mut a = self.rows();
        for k in 0..n {
            if !a[k][k].is_negative() {
                return None;
            }
            let pivot = a[k][k].clone();
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        Some(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    NegativeDefinite,
    NegativeSemidefiniteRankCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<Rational>),
    RankCheck(SemidefiniteReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidefiniteReport {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<Rational>>,
    pub negative_semidefinite: bool,
    /// Kernel is exactly one-dimensional.
    pub zariski_ok: bool,
}

pub fn solve_definite(
    m: &SymMatrix,
    b: &[Rational],
    mode: SolveMode,
) -> Result<SolveOutcome, MathError> {
    if b.len() != m.dim() {
        return Err(MathError::DimensionMismatch {
            expected: m.dim(),
            found: b.len(),
        });
    }
    match mode {
        SolveMode::NegativeSemidefiniteRankCheck => {
            Ok(SolveOutcome::RankCheck(check_neg_semidefinite(m)))
        }
        SolveMode::NegativeDefinite => {
            let n = m.dim();
            let mut a = m.rows();
            let mut rhs = b.to_vec();
            for k in 0..n {
                if !a[k][k].is_negative() {
                    return Err(MathError::SingularMatrix);
                }
                let pivot = a[k][k].clone();
                for i in (k + 1)..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let f = &a[i][k] / &pivot;
                    for j in k..n {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                    let t = &f * &rhs[k];
                    rhs[i] -= t;
                }
            }
            let mut x = vec![Rational::zero(); n];
            for i in (0..n).rev() {
                let mut s = rhs[i].clone();
                for j in (i + 1)..n {
                    s -= &a[i][j] * &x[j];
                }
                x[i] = s / &a[i][i];
            }
            debug_assert_eq!(m.mul_vec(&x).as_deref(), Ok(b));
            Ok(SolveOutcome::Solution(x))
        }
    }
}

pub fn check_neg_semidefinite(m: &SymMatrix) -> SemidefiniteReport {
    let (rank, kernel_basis) = rank_and_kernel(m);
    SemidefiniteReport {
        rank,
        zariski_ok: kernel_basis.len() == 1,
        kernel_basis,
        negative_semidefinite: is_negative_semidefinite(m),
    }
}

fn rank_and_kernel(m: &SymMatrix) -> (usize, Vec<Vec<Rational>>) {
    let n = m.dim();
    let mut a = m.rows();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip().expect("nonzero pivot");
        for j in col..n {
            a[row][j] *= &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let t = &f * &a[row][j];
                    a[r][j] -= t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let rank = pivot_cols.len();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&a[r][f];
            }
            v
        })
        .collect();
    (rank, kernel)
}

fn is_negative_semidefinite(m: &SymMatrix) -> bool {
    neg_semidefinite_rank(m).is_some()
}

/// Rank of `M` if `M` is negative semidefinite, by one symmetric
/// elimination with diagonal pivoting on `-M`: `-M` is positive
/// semidefinite iff no negative diagonal ever appears and a zero diagonal
/// always comes with a zero row. Cheaper than [`check_neg_semidefinite`]
/// when no kernel basis is needed.
pub fn neg_semidefinite_rank(m: &SymMatrix) -> Option<usize> {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return None;
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            // all remaining diagonals vanish, so the block must be zero
            let zero = active
                .iter()
                .all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
            return zero.then_some(rank);
        };
        let k = active.remove(pos);
        rank += 1;
        let pivot = a[k][k].clone();
        for &i in &active {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for &j in &active {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Some(rank)
}
