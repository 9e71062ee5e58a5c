//! Primality, factorization and small multiplicative-group helpers.
//!
//! Factorization is trial division up to 10^6 followed by Miller–Rabin and
//! Pollard's rho on the cofactor. Every prime this crate works with is tiny;
//! the rho path only runs for cofactors of values such as `q^d - 1`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT as u64).into_iter().map(|p| p as u32).collect())
}

/// All primes `p <= limit`, by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

fn pollard_rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn split_u64(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Prime factorization of a positive 64-bit integer. `factor_u64(1)` is empty.
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u32> {
    assert!(n > 0, "cannot factor zero");
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    split_u64(n, &mut out);
    out
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
    }
    unreachable!()
}

fn split_big(n: BigUint, out: &mut BTreeMap<u64, u32>) -> std::result::Result<(), BigUint> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(small) = n.to_u64() {
        split_u64(small, out);
        return Ok(());
    }
    if is_probable_prime_big(&n) {
        return Err(n);
    }
    let d = pollard_rho_big(&n);
    let rest = &n / &d;
    split_big(d, out)?;
    split_big(rest, out)
}

/// Prime factorization of a positive integer whose prime factors all fit in
/// 64 bits. A larger prime factor is returned as the error.
pub fn factor_biguint(n: &BigUint) -> std::result::Result<BTreeMap<u64, u32>, BigUint> {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small));
    }
    let mut n = n.clone();
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if (&pb * &pb) > n {
            break;
        }
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            *out.entry(p as u64).or_insert(0) += 1;
            n = q;
        }
        if let Some(small) = n.to_u64() {
            split_u64(small, &mut out);
            return Ok(out);
        }
    }
    split_big(n, &mut out)?;
    Ok(out)
}

/// Multiplicative order of `a` modulo `n`, or `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let group_order = totient(n);
    let mut order = group_order;
    for (p, _) in factor_u64(group_order) {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Some(order)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n > 0, "totient of zero");
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least primitive root modulo an odd prime `p` (or 1 for `p = 2`).
pub fn primitive_root(p: u64) -> u64 {
    assert!(is_prime(p), "{p} is not prime");
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| multiplicative_order(g, p) == Some(p - 1))
        .expect("every prime has a primitive root")
}

pub(crate) fn pow_mod_u64(base: u64, exp: u64, m: u64) -> u64 {
    pow_mod(base, exp, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_miller_rabin_agree() {
        let sieve = primes_up_to(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_556));
        // Carmichael number
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factors_semiprime_with_large_factors() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factor_u64(p * q);
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn factors_big_values() {
        // 2^64 + 1 = 274177 * 67280421310721
        let n = (BigUint::one() << 64u32) + BigUint::one();
        let f = factor_biguint(&n).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            vec![(274_177, 1), (67_280_421_310_721, 1)]
        );
        // (10^6 + 3)^2 * (2^61 - 1)
        let m = BigUint::from(1_000_003u64).pow(2) * BigUint::from((1u64 << 61) - 1);
        let f = factor_biguint(&m).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            vec![(1_000_003, 2), ((1u64 << 61) - 1, 1)]
        );
        // 2^89 - 1 is prime.
        let big = (BigUint::one() << 89u32) - BigUint::one();
        assert_eq!(factor_biguint(&(&big * 3u32)), Err(big));
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(multiplicative_order(7, 5), Some(4));
        assert_eq!(multiplicative_order(4, 5), Some(2));
        assert_eq!(multiplicative_order(5, 10), None);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(10), 4);
        assert_eq!(totient(16), 8);
    }
}
