use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// A generator matrix: `k` rows of length `n` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    ctx: Arc<FieldCtx>,
    n: usize,
    rows: Vec<Vec<Fe>>,
    canonical: bool,
}

impl GenMatrix {
    pub fn new(ctx: Arc<FieldCtx>, n: usize, rows: Vec<Vec<Fe>>) -> Result<GenMatrix> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix of width {n}",
                bad.len()
            )));
        }
        Ok(GenMatrix {
            ctx,
            n,
            rows,
            canonical: false,
        })
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(ctx: &Arc<FieldCtx>, rows: &[Vec<i64>]) -> Result<GenMatrix> {
        let n = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| ctx.from_int(c)).collect())
            .collect();
        GenMatrix::new(ctx.clone(), n, rows)
    }

    pub fn identity(ctx: &Arc<FieldCtx>, k: usize) -> GenMatrix {
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![Fe::ZERO; k];
                r[i] = Fe::ONE;
                r
            })
            .collect();
        GenMatrix {
            ctx: ctx.clone(),
            n: k,
            rows,
            canonical: true,
        }
    }

    /// The zero code of length `n`.
    pub fn empty(ctx: &Arc<FieldCtx>, n: usize) -> GenMatrix {
        GenMatrix {
            ctx: ctx.clone(),
            n,
            rows: Vec::new(),
            canonical: true,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn rank(&self) -> usize {
        self.rref().rows.len()
    }

    /// Reduced row-echelon form with zero rows removed.
    pub fn rref(&self) -> GenMatrix {
        if self.canonical {
            return self.clone();
        }
        let k = &self.ctx;
        let mut rows = self.rows.clone();
        let mut pivot_row = 0;
        for col in 0..self.n {
            let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let inv = k.inv(rows[pivot_row][col]).expect("nonzero pivot");
            for c in rows[pivot_row].iter_mut() {
                *c = k.mul(*c, inv);
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pivot_row || row[col].is_zero() {
                    continue;
                }
                let factor = row[col];
                for (c, &pv) in row.iter_mut().zip(&pivot) {
                    *c = k.sub(*c, k.mul(factor, pv));
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        GenMatrix {
            ctx: self.ctx.clone(),
            n: self.n,
            rows,
            canonical: true,
        }
    }

    /// Rejects matrices whose rows are linearly dependent.
    pub fn ensure_full_rank(&self) -> Result<()> {
        let found = self.rank();
        if found == self.rows.len() {
            Ok(())
        } else {
            Err(Error::RankDeficient {
                expected: self.rows.len(),
                found,
            })
        }
    }

    pub fn encode(&self, msg: &[Fe]) -> Vec<Fe> {
        let k = &self.ctx;
        let mut out = vec![Fe::ZERO; self.n];
        for (&m, row) in msg.iter().zip(&self.rows) {
            if m.is_zero() {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(row) {
                *o = k.add(*o, k.mul(m, c));
            }
        }
        out
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &GenMatrix) -> Result<Vec<Vec<Fe>>> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        let k = &self.ctx;
        Ok(self
            .rows
            .iter()
            .map(|a| {
                other
                    .rows
                    .iter()
                    .map(|b| {
                        a.iter()
                            .zip(b)
                            .fold(Fe::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
                    })
                    .collect()
            })
            .collect())
    }

    /// Moves column `j` to position `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<GenMatrix> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {} columns",
                perm.len(),
                self.n
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![Fe::ZERO; self.n];
                for (j, &c) in row.iter().enumerate() {
                    out[perm[j]] = c;
                }
                out
            })
            .collect();
        GenMatrix::new(self.ctx.clone(), self.n, rows)
    }

    /// Every row shifted one place to the right, cyclically.
    pub fn cyclic_shift(&self) -> GenMatrix {
        let perm: Vec<usize> = (0..self.n).map(|j| (j + 1) % self.n).collect();
        self.permute_columns(&perm).expect("length matches")
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &GenMatrix) -> Result<GenMatrix> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        GenMatrix::new(self.ctx.clone(), self.n, rows)
    }
}
