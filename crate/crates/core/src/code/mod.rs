//! Cyclic codes, their duals, and linear-code operations on generator matrices.

mod distance;
mod matrix;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::{self, RootsOfUnity};
use crate::error::{Error, Result};
use crate::field::{Extension, Fe, FieldCtx};
use crate::poly::Poly;

pub use distance::{min_distance, weight_distribution, DistanceReport, DEFAULT_BUDGET};
pub use matrix::GenMatrix;

/// Anything with a generator matrix.
pub trait LinearCode {
    fn field(&self) -> &Arc<FieldCtx>;
    fn length(&self) -> usize;
    fn generator_matrix(&self) -> GenMatrix;

    fn dimension(&self) -> usize {
        self.generator_matrix().rank()
    }
}

impl LinearCode for GenMatrix {
    fn field(&self) -> &Arc<FieldCtx> {
        self.ctx()
    }

    fn length(&self) -> usize {
        self.n()
    }

    fn generator_matrix(&self) -> GenMatrix {
        self.clone()
    }
}

/// A cyclic code `<g(x)>` of length `n`, `g | x^n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    g: Poly,
    h: Poly,
    label: String,
}

impl CyclicCode {
    pub fn from_generator(g: Poly, n: usize) -> Result<CyclicCode> {
        if n == 0 {
            return Err(Error::InvalidLength(0));
        }
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let (h, r) = Poly::x_n_minus_one(g.ctx(), n).divmod(&g)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor { n });
        }
        Ok(CyclicCode {
            n,
            g,
            h,
            label: String::from("custom"),
        })
    }

    /// Recovers the generator of a cyclic row space as `gcd(x^n - 1, rows)`.
    /// Fails with [`Error::NotCyclic`] if the row space is not shift-invariant.
    pub fn from_matrix(m: &GenMatrix) -> Result<CyclicCode> {
        let ctx = m.ctx();
        let mut g = Poly::x_n_minus_one(ctx, m.n());
        for row in m.rows() {
            g = g.gcd(&Poly::new(ctx.clone(), row.clone()))?;
        }
        let code = CyclicCode::from_generator(g, m.n())?;
        if code.dimension() != m.rank() {
            return Err(Error::NotCyclic);
        }
        Ok(code)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> CyclicCode {
        self.label = label.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.g.degree().expect("generator is nonzero")
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.g.ctx()
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    /// `h(x) = (x^n - 1) / g(x)`.
    pub fn check_poly(&self) -> &Poly {
        &self.h
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Euclidean dual, generated by the monic multiple of `h^*(x)`.
    ///
    /// `h^*` has leading coefficient `h(0)`, so this is `h^*(x)/h(0)`.
    pub fn dual(&self) -> CyclicCode {
        let g = self
            .h
            .reciprocal()
            .and_then(|r| r.monic())
            .expect("h(0) != 0 because x does not divide x^n - 1");
        let label = match self.label.strip_suffix('⊥') {
            Some(base) => base.to_string(),
            None => format!("{}⊥", self.label),
        };
        CyclicCode::from_generator(g, self.n)
            .expect("h^* divides x^n - 1")
            .with_label(label)
    }

    /// Parity-check matrix: the generator matrix of the dual.
    pub fn parity_check_matrix(&self) -> GenMatrix {
        self.dual().generator_matrix()
    }

    /// Defining set with respect to the canonical primitive `n`-th root of unity.
    pub fn zeros_and_nonzeros(&self) -> Result<DefiningSet> {
        let roots = RootsOfUnity::new(self.n as u64, self.ctx())?;
        defining_set_at(&self.g, self.n, roots.extension(), roots.zeta())
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            field: self.ctx().literal(),
            n: self.n,
            generator: poly_to_json(&self.g),
            k: self.k(),
            label: self.label.clone(),
        }
    }
}

impl LinearCode for CyclicCode {
    fn field(&self) -> &Arc<FieldCtx> {
        self.ctx()
    }

    fn length(&self) -> usize {
        self.n
    }

    /// Rows `x^i g(x)` for `0 <= i < k`.
    fn generator_matrix(&self) -> GenMatrix {
        let rows = (0..self.k())
            .map(|i| {
                let mut row = vec![Fe::ZERO; self.n];
                row[i..i + self.g.coeffs().len()].copy_from_slice(self.g.coeffs());
                row
            })
            .collect();
        GenMatrix::new(self.ctx().clone(), self.n, rows).expect("rows have length n")
    }

    fn dimension(&self) -> usize {
        self.k()
    }
}

fn require_valid_length(n: u64, ctx: &FieldCtx) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidLength(n));
    }
    let p = ctx.characteristic();
    if n.is_multiple_of(p) {
        return Err(Error::CharacteristicDividesN { n, p });
    }
    Ok(())
}

/// `C_n = <Q_n(x)>`, an `[n, n - phi(n)]` code.
pub fn build_cn(n: u64, ctx: &Arc<FieldCtx>) -> Result<CyclicCode> {
    require_valid_length(n, ctx)?;
    let g = cyclotomic::cyclotomic_poly(n, ctx)?;
    Ok(CyclicCode::from_generator(g, n as usize)?.with_label(format!("C_{n}")))
}

/// `C_(n,1) = <Q_n(x) Q_1(x)>` for composite `n`.
pub fn build_cn1(n: u64, ctx: &Arc<FieldCtx>) -> Result<CyclicCode> {
    require_valid_length(n, ctx)?;
    if cyclotomic::profile(n).is_prime() {
        return Err(Error::PrimeLength(n));
    }
    let g = &cyclotomic::cyclotomic_poly(n, ctx)? * &cyclotomic::cyclotomic_poly(1, ctx)?;
    Ok(CyclicCode::from_generator(g, n as usize)?.with_label(format!("C_{{{n},1}}")))
}

/// The `[n, 1, n]` repetition code `<1 + x + ... + x^(n-1)>`.
pub fn build_repetition(n: u64, ctx: &Arc<FieldCtx>) -> Result<CyclicCode> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    let g = Poly::new(ctx.clone(), vec![Fe::ONE; n as usize]);
    Ok(CyclicCode::from_generator(g, n as usize)?.with_label(format!("R_{n}")))
}

fn check_compatible(a: &impl LinearCode, b: &impl LinearCode) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.length() != b.length() {
        return Err(Error::LengthMismatch(a.length(), b.length()));
    }
    Ok(())
}

/// Equal row spaces, decided by identical reduced row-echelon forms.
pub fn same_code(a: &impl LinearCode, b: &impl LinearCode) -> Result<bool> {
    check_compatible(a, b)?;
    Ok(a.generator_matrix().rref().rows() == b.generator_matrix().rref().rows())
}

/// `a + b` as the row-reduced stack of both generator matrices.
pub fn sum_codes(a: &impl LinearCode, b: &impl LinearCode) -> Result<GenMatrix> {
    check_compatible(a, b)?;
    Ok(a.generator_matrix().stack(&b.generator_matrix())?.rref())
}

/// Codewords whose coordinates sum to zero.
pub fn zero_sum_subcode(c: &impl LinearCode) -> GenMatrix {
    let g = c.generator_matrix().rref();
    let k = c.field();
    let sums: Vec<Fe> = g
        .rows()
        .iter()
        .map(|r| r.iter().fold(Fe::ZERO, |acc, &x| k.add(acc, x)))
        .collect();
    let Some(pivot) = sums.iter().position(|s| !s.is_zero()) else {
        return g;
    };
    let inv = k.inv(sums[pivot]).expect("nonzero");
    let pivot_row = &g.rows()[pivot];
    let rows = g
        .rows()
        .iter()
        .zip(&sums)
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, (row, &s))| {
            let factor = k.mul(s, inv);
            row.iter()
                .zip(pivot_row)
                .map(|(&a, &b)| k.sub(a, k.mul(factor, b)))
                .collect()
        })
        .collect();
    GenMatrix::new(k.clone(), g.n(), rows)
        .expect("row lengths preserved")
        .rref()
}

/// `a ⊕ b` with block-diagonal generator `[[G_a, 0], [0, G_b]]`.
pub fn direct_sum(a: &impl LinearCode, b: &impl LinearCode) -> Result<GenMatrix> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (ga, gb) = (a.generator_matrix(), b.generator_matrix());
    let (na, nb) = (ga.n(), gb.n());
    let rows = ga
        .rows()
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(na + nb, Fe::ZERO);
            row
        })
        .chain(gb.rows().iter().map(|r| {
            let mut row = vec![Fe::ZERO; na];
            row.extend_from_slice(r);
            row
        }))
        .collect();
    GenMatrix::new(a.field().clone(), na + nb, rows)
}

/// Zeros `T = {i : g(root^i) = 0}` and their complement in `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSet {
    pub n: usize,
    pub zeros: BTreeSet<u64>,
    pub nonzeros: BTreeSet<u64>,
}

/// Defining set of `<g>` with respect to an explicit root of unity `root` of order `n`
/// living in `ext`.
pub fn defining_set_at(g: &Poly, n: usize, ext: &Extension, root: Fe) -> Result<DefiningSet> {
    let big = ext.field();
    let (mut zeros, mut nonzeros) = (BTreeSet::new(), BTreeSet::new());
    let mut point = Fe::ONE;
    for i in 0..n as u64 {
        if g.eval_in(ext, point)?.is_zero() {
            zeros.insert(i);
        } else {
            nonzeros.insert(i);
        }
        point = big.mul(point, root);
    }
    Ok(DefiningSet { n, zeros, nonzeros })
}

/// Units of `Z_n`: exponents of the primitive `n`-th roots of unity.
pub fn units_mod(n: u64) -> BTreeSet<u64> {
    (0..n).filter(|&i| arith::gcd(i, n) == 1).collect()
}

/// JSON descriptor `{field, n, generator, k, label}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: String,
    pub n: usize,
    pub generator: Vec<serde_json::Value>,
    pub k: usize,
    pub label: String,
}

/// Ascending coefficients: integers over a prime field, coordinate lists otherwise.
pub fn poly_to_json(f: &Poly) -> Vec<serde_json::Value> {
    let ctx = f.ctx();
    f.coeffs()
        .iter()
        .map(|&c| {
            if ctx.is_prime_field() {
                serde_json::Value::from(c.0)
            } else {
                serde_json::Value::from(ctx.coords(c))
            }
        })
        .collect()
}

/// Inverse of [`poly_to_json`].
pub fn poly_from_json(ctx: &Arc<FieldCtx>, values: &[serde_json::Value]) -> Result<Poly> {
    let bad = |v: &serde_json::Value| Error::InvalidFieldLiteral(v.to_string());
    let coeffs = values
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(num) => {
                let c = num.as_i64().ok_or_else(|| bad(v))?;
                Ok(ctx.from_int(c))
            }
            serde_json::Value::Array(items) => {
                let coords = items
                    .iter()
                    .map(|x| x.as_u64().map(|c| c as u32).ok_or_else(|| bad(v)))
                    .collect::<Result<Vec<_>>>()?;
                ctx.from_coords(&coords)
            }
            _ => Err(bad(v)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(ctx.clone(), coeffs))
}

#[cfg(test)]
mod tests;
