//! Integer number theory used by the field and code layers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Trial-division primality, meant for desk-scale inputs such as field characteristics.
pub fn is_prime_small(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Deterministic Miller-Rabin for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factor(1)` is empty.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d < 1000 && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += 1;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return (x as u128 * y as u128) % m;
    }
    // m < 2^127 so doubling never overflows
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_prime_u128(n: u128) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime(small);
    }
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if BASES.iter().any(|&p| n.is_multiple_of(p)) {
        return false;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho with batched gcds.
fn pollard_brent_u128(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mul_mod_u128(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u128, 1u64, 1u128, 1u128);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod_u128(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of a value below `2^127`.
pub fn factor_u128(n: u128) -> Vec<(u128, u32)> {
    assert!(n < 1u128 << 127, "factor_u128 supports values below 2^127");
    if let Ok(small) = u64::try_from(n) {
        return factor(small)
            .into_iter()
            .map(|(p, e)| (p as u128, e))
            .collect();
    }
    let mut primes = Vec::new();
    let mut rest = n;
    for d in 2u128..1000 {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if let Ok(small) = u64::try_from(m) {
            primes.extend(
                factor(small)
                    .into_iter()
                    .flat_map(|(p, e)| std::iter::repeat_n(p as u128, e as usize)),
            );
            continue;
        }
        if is_prime_u128(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent_u128(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least `t >= 1` with `a^t = 1 (mod n)`; requires `gcd(a, n) = 1`. Returns 1 for `n = 1`.
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a, n), 1);
    let group = euler_phi(n);
    let mut ord = group;
    for (p, _) in factor(group) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small_and_large() {
        assert!(factor(1).is_empty());
        assert_eq!(factor(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(9u64.pow(8) + 1), vec![(2, 1), (21523361, 1)]);
        let n = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factor(n), vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn factor_wide_values() {
        // 2^89 - 1 is a Mersenne prime
        let m89 = (1u128 << 89) - 1;
        assert_eq!(factor_u128(m89), vec![(m89, 1)]);
        let n = (1_000_000_007u128 * 998_244_353) * 1_000_000_009;
        assert_eq!(
            factor_u128(n),
            vec![(998_244_353, 1), (1_000_000_007, 1), (1_000_000_009, 1)]
        );
        let v = 3u128.pow(80) - 1;
        let product: u128 = factor_u128(v).iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(product, v);
        assert!(factor_u128(v).iter().all(|&(p, _)| is_prime_u128(p)));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), is_prime_small(n), "n = {n}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(3, 7), 6);
        assert_eq!(multiplicative_order(2, 47), 23);
        assert_eq!(multiplicative_order(5, 1), 1);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
