use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::primes::is_prime;
use crate::error::{domain, Result};

fn check_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(domain(format!("{ell} is not prime")))
    }
}

fn strip(n: &BigUint, ell: u64) -> u64 {
    let ell = BigUint::from(ell);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&ell);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_ell(n)` for a nonzero integer.
pub fn v_ell_int(n: &BigInt, ell: u64) -> Result<u64> {
    check_prime(ell)?;
    if n.is_zero() {
        return Err(domain("valuation of zero undefined"));
    }
    Ok(strip(n.magnitude(), ell))
}

/// `v_ell(n)` for a nonzero machine integer.
pub fn v_ell_u64(n: u64, ell: u64) -> Result<u64> {
    check_prime(ell)?;
    if n == 0 {
        return Err(domain("valuation of zero undefined"));
    }
    let mut n = n;
    let mut v = 0;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    Ok(v)
}

/// The exponent of `ell` in a nonzero rational; negative for denominators.
pub fn v_ell(x: &BigRational, ell: u64) -> Result<i64> {
    check_prime(ell)?;
    if x.is_zero() {
        return Err(domain("valuation of zero undefined"));
    }
    let num = strip(x.numer().magnitude(), ell) as i64;
    let den = strip(x.denom().magnitude(), ell) as i64;
    Ok(num - den)
}
