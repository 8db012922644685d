//! Finite fields `F_{p^l}` in a polynomial basis over `F_p`.
//!
//! An element is stored as its canonical index `sum c_i p^i`, where `c_i` is the
//! coordinate of `u^i` and `u` is a root of the field modulus. Comparing indices
//! compares coordinate vectors from the top coordinate down, so "smallest" in
//! this crate always means smallest index.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field a base context (one given on the command line or in a config) may have.
pub const FIELD_CAP: u64 = 1 << 16;
/// Largest extension field built for root-of-unity searches.
pub const EXTENSION_CAP: u64 = 1 << 24;

const MAX_DEGREE: usize = 24;

/// A field element: the canonical index of its coordinate vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An immutable finite field context.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    degree: u32,
    /// Monic modulus over `F_p`, ascending; empty for prime fields.
    modulus: Vec<u32>,
    order: u32,
    /// `modulus` as a bit mask when `p = 2`.
    mod_bits: u32,
    pow_p: Vec<u32>,
    group_factors: Vec<(u64, u32)>,
    primitive: Fe,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.literal())
    }
}

impl FieldCtx {
    /// `F_p`.
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>> {
        Self::new(p, 1)
    }

    /// `F_{p^l}` with the canonical modulus, limited to [`FIELD_CAP`] elements.
    pub fn new(p: u64, l: u32) -> Result<Arc<FieldCtx>> {
        Self::with_cap(p, l, FIELD_CAP)
    }

    pub(crate) fn with_cap(p: u64, l: u32, cap: u64) -> Result<Arc<FieldCtx>> {
        if !arith::is_prime_small(p) {
            return Err(Error::NotPrime(p));
        }
        if l == 0 {
            return Err(Error::InvalidLength(0));
        }
        let order = (p as u128).checked_pow(l).unwrap_or(u128::MAX);
        if order > cap as u128 || l as usize > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { order, cap });
        }
        let p32 = p as u32;
        let modulus = if l == 1 {
            Vec::new()
        } else {
            canonical_modulus(p32, l)?
        };
        Ok(Arc::new(Self::assemble(p32, l, modulus)))
    }

    fn assemble(p: u32, degree: u32, modulus: Vec<u32>) -> FieldCtx {
        let order = p.pow(degree);
        let pow_p = (0..=degree).map(|i| p.pow(i)).collect();
        let mod_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut ctx = FieldCtx {
            p,
            degree,
            modulus,
            order,
            mod_bits,
            pow_p,
            group_factors: arith::factor(order as u64 - 1),
            primitive: Fe::ONE,
        };
        ctx.primitive = (1..order)
            .map(Fe)
            .find(|&a| ctx.is_generator(a))
            .unwrap_or(Fe::ONE);
        ctx
    }

    /// Parse `"p"`, `"p^l"`, or a bare prime power such as `"9"`.
    pub fn from_literal(lit: &str) -> Result<Arc<FieldCtx>> {
        let (p, l) = parse_literal(lit)?;
        Self::new(p, l)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// The modulus over `F_p` in ascending order (empty for a prime field).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn literal(&self) -> String {
        if self.degree == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.degree)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        (0..self.degree as usize)
            .map(|i| (a.0 / self.pow_p[i]) % self.p)
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() > self.degree as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidFieldLiteral(format!("{coords:?}")));
        }
        Ok(Fe(coords
            .iter()
            .enumerate()
            .map(|(i, &c)| c * self.pow_p[i])
            .sum()))
    }

    /// The basis element `u^i`.
    pub fn basis(&self, i: u32) -> Fe {
        Fe(self.pow_p[i as usize])
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for i in 0..self.degree as usize {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * self.pow_p[i];
            x /= self.p;
            y /= self.p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out) = (a.0, 0u32);
        for i in 0..self.degree as usize {
            let c = x % self.p;
            out += ((self.p - c) % self.p) * self.pow_p[i];
            x /= self.p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.degree == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if self.p == 2 {
            return Fe(self.mul_binary(a.0, b.0));
        }
        let l = self.degree as usize;
        let p = self.p as u64;
        let (mut da, mut db) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..l {
            da[i] = (x % self.p) as u64;
            db[i] = (y % self.p) as u64;
            x /= self.p;
            y /= self.p;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..l {
            if da[i] == 0 {
                continue;
            }
            for j in 0..l {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (l..2 * l - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..l {
                let m = self.modulus[j] as u64;
                prod[i - l + j] = (prod[i - l + j] + (p - c) * m) % p;
            }
        }
        Fe((0..l).map(|i| prod[i] as u32 * self.pow_p[i]).sum())
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let l = self.degree;
        let mut r = 0u64;
        for i in 0..l {
            if (b >> i) & 1 == 1 {
                r ^= (a as u64) << i;
            }
        }
        for i in (l..2 * l - 1).rev() {
            if (r >> i) & 1 == 1 {
                r ^= (self.mod_bits as u64) << (i - l);
            }
        }
        r as u32
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order as u128 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order as u64 - 1;
        for &(r, _) in &self.group_factors {
            while ord.is_multiple_of(r) && self.pow(a, (ord / r) as u128) == Fe::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn is_generator(&self, a: Fe) -> bool {
        let group = self.order as u64 - 1;
        self.group_factors
            .iter()
            .all(|&(r, _)| self.pow(a, (group / r) as u128) != Fe::ONE)
    }

    /// The canonically smallest element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Fe {
        self.primitive
    }

    /// `gamma^((q-1)/n)` for the canonical primitive element `gamma`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Fe> {
        let group = self.order as u64 - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::NotCompatible { n, group });
        }
        Ok(self.pow(self.primitive, (group / n) as u128))
    }
}

/// Splits a field literal into `(p, l)`.
pub fn parse_literal(lit: &str) -> Result<(u64, u32)> {
    let bad = || Error::InvalidFieldLiteral(lit.to_string());
    let lit = lit.trim();
    let (p, l) = match lit.split_once('^') {
        Some((p, l)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            l.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q = lit.parse::<u64>().map_err(|_| bad())?;
            let f = arith::factor(q);
            match f.as_slice() {
                [(p, l)] => (*p, *l),
                _ => return Err(Error::NotPrime(q)),
            }
        }
    };
    if l == 0 {
        return Err(bad());
    }
    Ok((p, l))
}

/// First monic irreducible of degree `l` over `F_p` in ascending canonical order.
fn canonical_modulus(p: u32, l: u32) -> Result<Vec<u32>> {
    let prime = Arc::new(FieldCtx::assemble(p, 1, Vec::new()));
    let count = (p as u64).pow(l);
    for idx in 0..count {
        if idx % p as u64 == 0 {
            // zero constant term: divisible by x
            continue;
        }
        let mut coeffs: Vec<Fe> = Vec::with_capacity(l as usize + 1);
        let mut rest = idx;
        for _ in 0..l {
            coeffs.push(Fe((rest % p as u64) as u32));
            rest /= p as u64;
        }
        coeffs.push(Fe::ONE);
        let f = Poly::new(prime.clone(), coeffs);
        if f.is_irreducible() {
            return Ok(f.coeffs().iter().map(|c| c.0).collect());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// `F_{q^m}` together with the embedding of its base field `F_q`.
#[derive(Clone, Debug)]
pub struct Extension {
    base: Arc<FieldCtx>,
    field: Arc<FieldCtx>,
    degree: u32,
    image: Vec<Fe>,
    preimage: HashMap<Fe, Fe>,
}

impl Extension {
    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// Degree over the base field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Fe) -> Fe {
        self.image[a.0 as usize]
    }

    /// Pulls an element back into the base field, if it lies in the embedded image.
    pub fn restrict(&self, b: Fe) -> Option<Fe> {
        self.preimage.get(&b).copied()
    }
}

/// Builds `F_{q^m}` from `F_q`, capped at [`EXTENSION_CAP`] elements.
pub fn make_extension(base: &Arc<FieldCtx>, m: u32) -> Result<Extension> {
    make_extension_capped(base, m, EXTENSION_CAP)
}

pub fn make_extension_capped(base: &Arc<FieldCtx>, m: u32, cap: u64) -> Result<Extension> {
    if m == 0 {
        return Err(Error::InvalidLength(0));
    }
    let field = if m == 1 {
        base.clone()
    } else {
        let total = base.degree.saturating_mul(m);
        let order = (base.order as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::DegreeTooLarge { order, cap });
        }
        FieldCtx::with_cap(base.p as u64, total, cap)?
    };
    let image: Vec<Fe> = if m == 1 {
        base.elements().collect()
    } else if base.degree == 1 {
        // prime subfield elements share their index
        base.elements().collect()
    } else {
        let root = least_modulus_root(base, &field);
        let powers: Vec<Fe> = (0..base.degree)
            .scan(Fe::ONE, |acc, _| {
                let cur = *acc;
                *acc = field.mul(*acc, root);
                Some(cur)
            })
            .collect();
        base.elements()
            .map(|a| {
                base.coords(a)
                    .iter()
                    .zip(&powers)
                    .fold(Fe::ZERO, |acc, (&c, &pw)| {
                        field.add(acc, field.mul(Fe(c), pw))
                    })
            })
            .collect()
    };
    let preimage = image
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, Fe(i as u32)))
        .collect();
    Ok(Extension {
        base: base.clone(),
        field,
        degree: m,
        image,
        preimage,
    })
}

/// Canonically least root of the base modulus inside the big field. Roots lie in
/// the subfield of order `q`, i.e. among the powers of `gamma^((Q-1)/(q-1))`.
fn least_modulus_root(base: &FieldCtx, field: &FieldCtx) -> Fe {
    let sub_gen = field
        .nth_root_of_unity(base.order as u64 - 1)
        .expect("q - 1 divides q^m - 1");
    let mut best: Option<Fe> = None;
    let mut z = Fe::ONE;
    for _ in 0..base.order - 1 {
        let val = base
            .modulus
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| field.add(field.mul(acc, z), Fe(c)));
        if val.is_zero() && best.is_none_or(|b| z < b) {
            best = Some(z);
        }
        z = field.mul(z, sub_gen);
    }
    best.expect("modulus splits in the extension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(lit: &str) -> Arc<FieldCtx> {
        FieldCtx::from_literal(lit).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Fe(0), Fe(1)]);
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.add(Fe(3), Fe(4)), Fe(2));
        assert_eq!(f5.mul(Fe(3), Fe(4)), Fe(2));
        assert_eq!(FieldCtx::prime(6).unwrap_err(), Error::NotPrime(6));
        assert_eq!(FieldCtx::prime(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn inverses() {
        assert_eq!(f("5").inv(Fe(2)).unwrap(), Fe(3));
        assert_eq!(f("7").inv(Fe(3)).unwrap(), Fe(5));
        assert_eq!(f("2").inv(Fe(1)).unwrap(), Fe(1));
        assert_eq!(f("7").inv(Fe(0)).unwrap_err(), Error::DivisionByZero);
        for lit in ["2^3", "3^2", "2^4", "5^2"] {
            let k = f(lit);
            for a in k.elements().skip(1) {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), Fe::ONE);
            }
        }
    }

    #[test]
    fn primitive_elements_and_orders() {
        assert_eq!(f("5").primitive_element(), Fe(2));
        assert_eq!(f("2").primitive_element(), Fe(1));
        assert_eq!(f("7").primitive_element(), Fe(3));
        assert_eq!(f("7").element_order(Fe(2)).unwrap(), 3);
        assert_eq!(f("5").element_order(Fe(4)).unwrap(), 2);
        assert_eq!(f("9").element_order(Fe(1)).unwrap(), 1);
        assert_eq!(
            f("5").element_order(Fe(0)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn roots_of_unity() {
        let f7 = f("7");
        let z = f7.nth_root_of_unity(3).unwrap();
        assert_eq!(z, Fe(2));
        assert_eq!(f7.element_order(z).unwrap(), 3);
        assert_eq!(f7.nth_root_of_unity(1).unwrap(), Fe::ONE);
        assert!(matches!(
            f7.nth_root_of_unity(4),
            Err(Error::NotCompatible { n: 4, group: 6 })
        ));
        let f4 = f("2^2");
        let z = f4.nth_root_of_unity(3).unwrap();
        assert_eq!(z, f4.primitive_element());
        assert_eq!(f4.element_order(z).unwrap(), 3);
    }

    #[test]
    fn literals() {
        assert_eq!(parse_literal("5").unwrap(), (5, 1));
        assert_eq!(parse_literal("2^3").unwrap(), (2, 3));
        assert_eq!(parse_literal("9").unwrap(), (3, 2));
        assert!(parse_literal("6").is_err());
        assert!(parse_literal("x").is_err());
        assert_eq!(f("2^3").order(), 8);
        assert_eq!(f("2^3").literal(), "2^3");
    }

    #[test]
    fn canonical_moduli() {
        // x^2 + x + 1, x^3 + x + 1, x^2 + 1 (first irreducibles in ascending index order)
        assert_eq!(f("2^2").modulus(), &[1, 1, 1]);
        assert_eq!(f("2^3").modulus(), &[1, 1, 0, 1]);
        assert_eq!(f("3^2").modulus(), &[1, 0, 1]);
        assert!(matches!(
            FieldCtx::new(2, 17),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn extension_of_f2() {
        let f2 = f("2");
        let e = make_extension(&f2, 3).unwrap();
        assert_eq!(e.field().order(), 8);
        let same = make_extension(&f2, 1).unwrap();
        assert_eq!(same.field(), &f2);
        assert!(matches!(
            make_extension(&f2, 25),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn f4_embeds_into_f16() {
        let f4 = f("2^2");
        let e = make_extension(&f4, 2).unwrap();
        let big = e.field();
        assert_eq!(big.order(), 16);
        for a in f4.elements() {
            let b = e.embed(a);
            assert_eq!(big.pow(b, 4), b, "embedded element must satisfy a^4 = a");
            assert_eq!(e.restrict(b), Some(a));
        }
    }

    #[test]
    fn embedding_is_an_injective_homomorphism() {
        for (lit, m) in [("2^2", 3), ("3^2", 2), ("2^3", 2), ("2^2", 2), ("5", 2)] {
            let base = f(lit);
            let e = make_extension(&base, m).unwrap();
            let big = e.field();
            let mut seen = std::collections::HashSet::new();
            for a in base.elements() {
                assert!(seen.insert(e.embed(a)));
                for b in base.elements() {
                    assert_eq!(e.embed(base.add(a, b)), big.add(e.embed(a), e.embed(b)));
                    assert_eq!(e.embed(base.mul(a, b)), big.mul(e.embed(a), e.embed(b)));
                }
            }
            for c in 0..base.characteristic() as u32 {
                assert_eq!(e.embed(Fe(c)), Fe(c));
            }
        }
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for lit in [
            "2", "3", "2^2", "5", "7", "2^3", "3^2", "2^4", "2^6", "3^4", "2^8", "5^3", "2^12",
        ] {
            let k = f(lit);
            let q = k.order() as u128;
            for a in k.elements() {
                assert_eq!(k.pow(a, q), a, "{lit}");
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        for lit in [
            "2", "3", "2^2", "5", "7", "2^3", "3^2", "2^4", "5^2", "2^5", "2^6", "2^8",
        ] {
            let k = f(lit);
            let group = k.order() - 1;
            for a in k.elements().skip(1) {
                let ord = k.element_order(a).unwrap();
                assert_eq!(group % ord, 0);
                assert_eq!(k.pow(a, ord as u128), Fe::ONE);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lit in [
            "2", "3", "2^2", "5", "7", "2^3", "3^2", "2^4", "5^2", "7^2", "2^8", "3^5", "2^16",
        ] {
            let k = f(lit);
            let q = k.order() as u32;
            for _ in 0..200 {
                let [a, b, c] = [0; 3].map(|_| Fe(rng.random_range(0..q)));
                assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                assert_eq!(k.add(a, b), k.add(b, a));
                assert_eq!(k.mul(a, b), k.mul(b, a));
                assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                assert_eq!(k.sub(k.add(a, b), b), a);
            }
        }
    }
}
