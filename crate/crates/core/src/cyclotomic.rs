//! Cyclotomic polynomials, cyclotomic cosets and minimal polynomials of roots of unity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{make_extension, Extension, Fe, FieldCtx};
use crate::poly::Poly;

/// Factorization-derived arithmetic functions of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticProfile {
    pub n: u64,
    pub phi: u64,
    pub omega: u32,
    /// `None` for `n = 1`; use [`ArithmeticProfile::lpf`] for a checked value.
    #[serde(rename = "lpf")]
    least_prime: Option<u64>,
    pub divisors: Vec<u64>,
    pub factorization: Vec<(u64, u32)>,
}

impl ArithmeticProfile {
    pub fn lpf(&self) -> Result<u64> {
        self.least_prime.ok_or(Error::LpfUndefined)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factorization.as_slice(), [(_, 1)])
    }

    pub fn is_composite(&self) -> bool {
        self.n > 1 && !self.is_prime()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factorization.len() == 1
    }
}

pub fn profile(n: u64) -> ArithmeticProfile {
    assert!(n >= 1, "profile of 0");
    let factorization = arith::factor(n);
    ArithmeticProfile {
        n,
        phi: arith::euler_phi(n),
        omega: factorization.len() as u32,
        least_prime: factorization.first().map(|&(p, _)| p),
        divisors: arith::divisors(n),
        factorization,
    }
}

fn memo() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Phi_n` over the integers, ascending, by dividing `x^n - 1` by `Phi_d` for each proper divisor `d`.
pub fn integer_cyclotomic(n: u64) -> Result<Arc<Vec<i64>>> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    if let Some(hit) = memo().lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let mut quot = vec![0i64; n as usize + 1];
    quot[0] = -1;
    quot[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        let divisor = integer_cyclotomic(d)?;
        quot = exact_div_monic(&quot, &divisor).ok_or(Error::CoefficientOverflow(n))?;
    }
    let result = Arc::new(quot);
    memo().lock().unwrap().insert(n, result.clone());
    Ok(result)
}

/// Exact division by a monic integer polynomial; `None` on overflow or nonzero remainder.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i - dd + j] = rem[i - dd + j].checked_sub(c.checked_mul(b)?)?;
        }
    }
    rem.iter().all(|&r| r == 0).then_some(quot)
}

/// `Phi_n(x)` as a `u128` below `2^127`, or `None` if it does not fit.
pub fn eval_integer_wide(n: u64, x: u64) -> Option<u128> {
    let coeffs = integer_cyclotomic(n).ok()?;
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(x as i128)?.checked_add(c as i128)?;
    }
    u128::try_from(acc).ok()
}

fn require_coprime_to_char(n: u64, ctx: &FieldCtx) -> Result<()> {
    let p = ctx.characteristic();
    if n.is_multiple_of(p) {
        Err(Error::CharacteristicDividesN { n, p })
    } else {
        Ok(())
    }
}

/// `Q_n` over `ctx`: the integer cyclotomic polynomial reduced mod `p`.
pub fn cyclotomic_poly(n: u64, ctx: &Arc<FieldCtx>) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    require_coprime_to_char(n, ctx)?;
    Ok(Poly::from_ints(ctx, &integer_cyclotomic(n)?))
}

/// Multiplies `Q_d` over every `d | n` and compares with `x^n - 1`.
pub fn verify_factorization(n: u64, ctx: &Arc<FieldCtx>) -> Result<bool> {
    require_coprime_to_char(n, ctx)?;
    let mut prod = Poly::one(ctx);
    for d in arith::divisors(n) {
        prod = &prod * &cyclotomic_poly(d, ctx)?;
    }
    Ok(prod == Poly::x_n_minus_one(ctx, n as usize))
}

/// The orbit of `representative` under multiplication by `q` modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub n: u64,
    pub q: u64,
    pub representative: u64,
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

/// Partition of `Z_n` into `q`-cyclotomic cosets, ordered by representative.
pub fn cosets(n: u64, q: u64) -> Result<Vec<CyclotomicCoset>> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    if arith::gcd(n, q) != 1 {
        return Err(Error::NotCoprime { a: n, b: q });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut j = s;
        while !seen[j as usize] {
            seen[j as usize] = true;
            members.push(j);
            j = arith::mul_mod(j, q, n);
        }
        members.sort_unstable();
        out.push(CyclotomicCoset {
            n,
            q,
            representative: s,
            members,
        });
    }
    Ok(out)
}

/// The splitting field of `x^n - 1` over a base field, with the canonical
/// primitive `n`-th root of unity `zeta = gamma^((q^t - 1)/n)`.
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    n: u64,
    ext: Extension,
    zeta: Fe,
}

impl RootsOfUnity {
    pub fn new(n: u64, ctx: &Arc<FieldCtx>) -> Result<RootsOfUnity> {
        if n == 0 {
            return Err(Error::InvalidLength(0));
        }
        require_coprime_to_char(n, ctx)?;
        let t = arith::multiplicative_order(ctx.order() % n, n);
        let ext = make_extension(ctx, t as u32)?;
        let zeta = ext.field().nth_root_of_unity(n)?;
        Ok(RootsOfUnity { n, ext, zeta })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn zeta(&self) -> Fe {
        self.zeta
    }

    /// `zeta^i`.
    pub fn power(&self, i: u64) -> Fe {
        self.ext.field().pow(self.zeta, (i % self.n) as u128)
    }

    /// `prod_{j in members} (x - zeta^j)` pulled back to the base field.
    pub fn product_over(&self, members: &[u64]) -> Result<Poly> {
        let big = self.ext.field();
        let mut prod = Poly::one(big);
        for &j in members {
            let factor = Poly::new(big.clone(), vec![big.neg(self.power(j)), Fe::ONE]);
            prod = &prod * &factor;
        }
        let coeffs = prod
            .coeffs()
            .iter()
            .map(|&c| self.ext.restrict(c).ok_or(Error::NotCyclic))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(self.ext.base().clone(), coeffs))
    }
}

/// Minimal polynomial `M^(s)` of `zeta^s` over `ctx`.
pub fn minimal_poly(s: u64, n: u64, ctx: &Arc<FieldCtx>) -> Result<Poly> {
    if arith::gcd(n, ctx.order()) != 1 {
        return Err(Error::NotCoprime {
            a: n,
            b: ctx.order(),
        });
    }
    let roots = RootsOfUnity::new(n, ctx)?;
    let s = s % n;
    let coset = cosets(n, ctx.order())?
        .into_iter()
        .find(|c| c.contains(s))
        .expect("cosets partition Z_n");
    roots.product_over(&coset.members)
}

/// All minimal polynomials, one per coset, sharing a single extension field.
pub fn minimal_polys(n: u64, ctx: &Arc<FieldCtx>) -> Result<Vec<(CyclotomicCoset, Poly)>> {
    if arith::gcd(n, ctx.order()) != 1 {
        return Err(Error::NotCoprime {
            a: n,
            b: ctx.order(),
        });
    }
    let roots = RootsOfUnity::new(n, ctx)?;
    cosets(n, ctx.order())?
        .into_iter()
        .map(|c| {
            let m = roots.product_over(&c.members)?;
            Ok((c, m))
        })
        .collect()
}
