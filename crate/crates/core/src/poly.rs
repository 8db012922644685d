//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith;
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::field::{Extension, Fe, FieldCtx};

/// Ascending coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}](", self.ctx.literal())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.ctx.is_prime_field() {
                write!(f, "{}", c.0)?;
            } else {
                write!(f, "{:?}", self.ctx.coords(*c))?;
            }
        }
        write!(f, ")")
    }
}

impl Poly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Poly {
        let cs = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        Poly::new(ctx.clone(), cs)
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::new(ctx.clone(), Vec::new())
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::new(ctx.clone(), vec![Fe::ONE])
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, c: Fe, deg: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(ctx.clone(), coeffs)
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::monomial(ctx, Fe::ONE, 1)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(ctx: &Arc<FieldCtx>, n: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[0] = ctx.neg(Fe::ONE);
        coeffs[n] = ctx.add(coeffs[n], Fe::ONE);
        Poly::new(ctx.clone(), coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fe::ONE)
    }

    fn same_field(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let cs = self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect();
        Poly::new(self.ctx.clone(), cs)
    }

    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(self.ctx.inv(lead)?))
    }

    /// `a = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let k = &self.ctx;
        let inv_lead = k.inv(b.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let t = k.mul(c, inv_lead);
            quot[i - db] = t;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = k.sub(rem[i - db + j], k.mul(t, bj));
            }
        }
        Ok((Poly::new(k.clone(), quot), Poly::new(k.clone(), rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// `true` iff `self` divides `other`.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Horner evaluation at an element of the same field.
    pub fn eval(&self, a: Fe) -> Fe {
        let k = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| k.add(k.mul(acc, a), c))
    }

    /// Evaluation at an element of an extension, embedding the coefficients first.
    pub fn eval_in(&self, ext: &Extension, a: Fe) -> Result<Fe> {
        if **ext.base() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let big = ext.field();
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, a), ext.embed(c))))
    }

    /// Coefficients mapped into an extension field.
    pub fn embed(&self, ext: &Extension) -> Result<Poly> {
        if **ext.base() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let cs = self.coeffs.iter().map(|&c| ext.embed(c)).collect();
        Ok(Poly::new(ext.field().clone(), cs))
    }

    /// `x^deg f * f(1/x)`: the coefficient vector reversed, trailing zeros dropped.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cs = self.coeffs.clone();
        cs.reverse();
        Ok(Poly::new(self.ctx.clone(), cs))
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.ctx).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Splits `self = x^r * f` with `f(0) != 0`.
    fn strip_x(&self) -> (usize, Poly) {
        let r = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (r, Poly::new(self.ctx.clone(), self.coeffs[r..].to_vec()))
    }

    /// Least `e >= 1` with `f | x^e - 1`, after removing any factor `x^r`.
    ///
    /// An irreducible factor of degree `e` has order dividing `q^e - 1 = prod_{D | le} Phi_D(p)`,
    /// and a factor of multiplicity `a` contributes at most a `p^s >= a`. The degrees
    /// present come from a distinct-degree pass, which gives a multiple `E` of the order
    /// in factored form; primes are then stripped while `x^(E/r) = 1 (mod f)`.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, f) = self.strip_x();
        let m = f.degree().expect("nonzero");
        if m == 0 {
            return Err(Error::UnitPolynomial);
        }
        let f = f.monic()?;
        let p = self.ctx.characteristic();
        let l = self.ctx.degree() as u64;

        let mut cyclotomic_indices = std::collections::BTreeSet::new();
        for e in f.factor_degrees()? {
            cyclotomic_indices.extend(arith::divisors(l * e as u64));
        }
        let mut exps: std::collections::BTreeMap<u128, u32> = Default::default();
        for d in cyclotomic_indices {
            let value = cyclotomic::eval_integer_wide(d, p).ok_or_else(|| {
                Error::OrderSearchTooLarge(format!("Phi_{d}({p}) does not fit in 127 bits"))
            })?;
            for (r, a) in arith::factor_u128(value) {
                *exps.entry(r).or_default() += a;
            }
        }
        let mut ps = 1u64;
        while ps < m as u64 {
            ps *= p;
            *exps.entry(p as u128).or_default() += 1;
        }

        let x = Poly::x(&self.ctx).rem(&f)?;
        let one = Poly::one(&self.ctx);
        let is_one = |exps: &std::collections::BTreeMap<u128, u32>| -> Result<bool> {
            let mut h = x.clone();
            for (&r, &a) in exps {
                for _ in 0..a {
                    h = h.pow_mod(r, &f)?;
                }
            }
            Ok(h == one)
        };
        debug_assert!(is_one(&exps)?);
        let primes: Vec<u128> = exps.keys().copied().collect();
        for r in primes {
            while exps[&r] > 0 {
                *exps.get_mut(&r).unwrap() -= 1;
                if !is_one(&exps)? {
                    *exps.get_mut(&r).unwrap() += 1;
                    break;
                }
            }
        }
        exps.iter()
            .try_fold(1u64, |acc, (&r, &a)| {
                u64::try_from(r)
                    .ok()
                    .and_then(|r| r.checked_pow(a))
                    .and_then(|v| acc.checked_mul(v))
            })
            .ok_or_else(|| Error::OrderSearchTooLarge("order exceeds u64".into()))
    }

    /// Degrees `e` for which `self` has an irreducible factor of degree exactly `e`.
    ///
    /// `gcd(x^(q^e) - x, f)` is the product of the distinct irreducible factors whose
    /// degree divides `e`, so its degree is `sum_{d | e} d * N_d`.
    fn factor_degrees(&self) -> Result<Vec<usize>> {
        let m = self.degree().ok_or(Error::ZeroPolynomial)?;
        let q = self.ctx.order() as u128;
        let x = Poly::x(&self.ctx).rem(self)?;
        let mut frob = x.clone();
        let mut counts = vec![0usize; m + 1];
        let mut found = Vec::new();
        let mut covered = 0;
        for e in 1..=m {
            frob = frob.pow_mod(q, self)?;
            let g = (&frob - &x).gcd(self)?;
            let total = g.degree().unwrap_or(m);
            let lower: usize = (1..e).filter(|d| e % d == 0).map(|d| d * counts[d]).sum();
            counts[e] = (total - lower) / e;
            if counts[e] > 0 {
                found.push(e);
                covered += e * counts[e];
            }
            if covered == m {
                break;
            }
        }
        Ok(found)
    }

    /// `true` iff `self | x^c - 1`, tested directly as `x^c = 1 (mod self)`.
    pub fn order_divides(&self, c: u64) -> bool {
        if self.is_zero() {
            return false;
        }
        let x = Poly::x(&self.ctx);
        let lhs = x.pow_mod(c as u128, self).expect("nonzero modulus");
        lhs == Poly::one(&self.ctx).rem(self).expect("nonzero modulus")
    }

    /// Rabin's test: `f` of degree `m` is irreducible iff `x^(q^m) = x (mod f)`
    /// and `gcd(x^(q^(m/r)) - x, f) = 1` for every prime `r | m`.
    pub fn is_irreducible(&self) -> bool {
        let Some(m) = self.degree() else { return false };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let f = self.monic().expect("nonzero");
        let q = self.ctx.order() as u128;
        let x = Poly::x(&self.ctx).rem(&f).expect("nonzero");
        // frob[i] = x^(q^i) mod f
        let mut frob = vec![x.clone()];
        for i in 1..=m {
            let next = frob[i - 1].pow_mod(q, &f).expect("nonzero");
            frob.push(next);
        }
        if frob[m] != x {
            return false;
        }
        arith::factor(m as u64).iter().all(|&(r, _)| {
            let h = &frob[m / r as usize] - &x;
            h.gcd(&f).expect("same field").degree() == Some(0)
        })
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "polynomials over different fields");
        let k = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let cs = (0..n).map(|i| k.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(k.clone(), cs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "polynomials over different fields");
        let k = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let cs = (0..n).map(|i| k.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(k.clone(), cs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let cs = self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect();
        Poly::new(self.ctx.clone(), cs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "polynomials over different fields");
        let k = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(k);
        }
        let mut cs = vec![Fe::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                cs[i + j] = k.add(cs[i + j], k.mul(a, b));
            }
        }
        Poly::new(k.clone(), cs)
    }
}
