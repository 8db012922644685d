//! Exhaustive codeword enumeration.
//!
//! A `q`-ary code of dimension `k` with `q = p^l` is an `F_p`-space of dimension
//! `K = k l`, spanned by `u^j r_i` for the RREF rows `r_i`. Messages over `F_p`
//! are visited in modular Gray order: step `t` adds basis vector `v_p(t)` once,
//! so every codeword costs a single packed vector addition. The top digits are
//! split across workers; each worker starts from its prefix codeword and runs
//! the Gray walk over the remaining digits.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GenMatrix, LinearCode};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub d: usize,
    pub codewords_enumerated: u64,
    pub method: String,
    pub elapsed_s: f64,
}

trait Packing: Sync {
    type Word: Clone + Send;

    fn zero(&self) -> Self::Word;
    fn add_row(&self, acc: &mut Self::Word, row: usize);
    fn weight(&self, w: &Self::Word) -> usize;
}

/// Characteristic 2: one bit plane per coordinate, XOR addition.
struct BinaryPacking {
    planes: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Packing for BinaryPacking {
    type Word = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.planes * self.words]
    }

    #[inline]
    fn add_row(&self, acc: &mut Vec<u64>, row: usize) {
        for (a, b) in acc.iter_mut().zip(&self.rows[row]) {
            *a ^= b;
        }
    }

    #[inline]
    fn weight(&self, w: &Vec<u64>) -> usize {
        (0..self.words)
            .map(|i| {
                (0..self.planes)
                    .fold(0u64, |acc, pl| acc | w[pl * self.words + i])
                    .count_ones() as usize
            })
            .sum()
    }
}

/// Odd characteristic: one byte per coordinate, symbols contiguous.
struct BytePacking {
    p: u8,
    l: usize,
    rows: Vec<Vec<u8>>,
}

impl Packing for BytePacking {
    type Word = Vec<u8>;

    fn zero(&self) -> Vec<u8> {
        vec![0; self.rows.first().map_or(0, Vec::len)]
    }

    #[inline]
    fn add_row(&self, acc: &mut Vec<u8>, row: usize) {
        let p = self.p;
        for (a, &b) in acc.iter_mut().zip(&self.rows[row]) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
    }

    #[inline]
    fn weight(&self, w: &Vec<u8>) -> usize {
        if self.l == 1 {
            w.iter().filter(|&&c| c != 0).count()
        } else {
            w.chunks_exact(self.l)
                .filter(|sym| sym.iter().any(|&c| c != 0))
                .count()
        }
    }
}

/// `F_p`-basis of the row space as coordinate vectors, `K x (n l)`.
fn prime_basis(g: &GenMatrix) -> Vec<Vec<u32>> {
    let ctx = g.ctx();
    let l = ctx.degree();
    g.rows()
        .iter()
        .flat_map(|row| {
            (0..l).map(move |j| {
                let u = ctx.basis(j);
                row.iter()
                    .flat_map(|&c| ctx.coords(ctx.mul(c, u)))
                    .collect::<Vec<u32>>()
            })
        })
        .collect()
}

/// Enumerates every codeword except zero, folding weights into per-worker state.
fn enumerate<P, S, V, M>(
    packing: &P,
    p: u64,
    digits: usize,
    init: fn() -> S,
    visit: V,
    merge: M,
) -> S
where
    P: Packing,
    S: Send,
    V: Fn(&mut S, usize) + Sync,
    M: Fn(S, S) -> S + Sync + Send,
{
    // enough prefixes to keep every worker busy
    let mut high = 0;
    while high < digits && p.pow(high as u32) < 1024 {
        high += 1;
    }
    let low = digits - high;
    let low_count = p.pow(low as u32);
    let prefixes = p.pow(high as u32);
    (0..prefixes)
        .into_par_iter()
        .fold(init, |mut state, prefix| {
            let mut word = packing.zero();
            let mut rest = prefix;
            for j in 0..high {
                for _ in 0..rest % p {
                    packing.add_row(&mut word, low + j);
                }
                rest /= p;
            }
            if prefix != 0 {
                visit(&mut state, packing.weight(&word));
            }
            let mut counter = vec![0u64; low];
            for _ in 1..low_count {
                let mut i = 0;
                loop {
                    counter[i] += 1;
                    if counter[i] == p {
                        counter[i] = 0;
                        i += 1;
                    } else {
                        break;
                    }
                }
                packing.add_row(&mut word, i);
                visit(&mut state, packing.weight(&word));
            }
            state
        })
        .reduce(init, merge)
}

fn codeword_count(ctx: &FieldCtx, k: usize) -> u128 {
    (ctx.order() as u128)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX)
}

fn run<S, V, M>(g: &GenMatrix, init: fn() -> S, visit: V, merge: M) -> S
where
    S: Send,
    V: Fn(&mut S, usize) + Sync,
    M: Fn(S, S) -> S + Sync + Send,
{
    let ctx = g.ctx();
    let p = ctx.characteristic();
    let l = ctx.degree() as usize;
    let basis = prime_basis(g);
    let digits = basis.len();
    if p == 2 {
        let n = g.n();
        let words = n.div_ceil(64).max(1);
        let rows = basis
            .iter()
            .map(|coords| {
                let mut packed = vec![0u64; l * words];
                for s in 0..n {
                    for j in 0..l {
                        if coords[s * l + j] == 1 {
                            packed[j * words + s / 64] |= 1 << (s % 64);
                        }
                    }
                }
                packed
            })
            .collect();
        let packing = BinaryPacking {
            planes: l,
            words,
            rows,
        };
        enumerate(&packing, p, digits, init, visit, merge)
    } else {
        let rows = basis
            .iter()
            .map(|coords| coords.iter().map(|&c| c as u8).collect())
            .collect();
        let packing = BytePacking {
            p: p as u8,
            l,
            rows,
        };
        enumerate(&packing, p, digits, init, visit, merge)
    }
}

/// Exact minimum distance over all `q^k - 1` nonzero codewords.
pub fn min_distance(code: &impl LinearCode, budget: u64) -> Result<DistanceReport> {
    let start = Instant::now();
    let g = code.generator_matrix().rref();
    let k = g.num_rows();
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    let nonzero = codeword_count(g.ctx(), k) - 1;
    if nonzero > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: nonzero,
            budget,
        });
    }
    let d = run(&g, || usize::MAX, |m, w| *m = (*m).min(w), usize::min);
    Ok(DistanceReport {
        d,
        codewords_enumerated: nonzero as u64,
        method: "exhaustive-messages".into(),
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

/// `A_0, ..., A_n`: number of codewords of each weight.
pub fn weight_distribution(code: &impl LinearCode, budget: u64) -> Result<Vec<u64>> {
    let g = code.generator_matrix().rref();
    let n = g.n();
    let total = codeword_count(g.ctx(), g.num_rows());
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let mut dist = run(
        &g,
        Vec::new,
        |hist: &mut Vec<u64>, w| {
            if hist.len() <= w {
                hist.resize(w + 1, 0);
            }
            hist[w] += 1;
        },
        |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    dist.resize(n + 1, 0);
    dist[0] += 1;
    Ok(dist)
}
