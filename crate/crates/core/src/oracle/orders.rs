use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exact_arith::{cyclotomic_value_int, is_prime, v_ell_int, v_ell_u64, FactoredInteger};
use crate::root_data::RootSystem;

fn prime_power_base(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(domain(format!("{q} is not a prime power")));
    }
    let f = FactoredInteger::from_u64(q)?;
    let mut primes = f.primes();
    match (primes.next(), primes.next()) {
        (Some(p), None) => Ok(p),
        _ => Err(domain(format!("{q} is not a prime power"))),
    }
}

/// `q^d - 1 = Π_{e | d} Φ_e(q)`, factored piece by piece.
fn q_pow_minus_one(q: u64, d: u64) -> Result<FactoredInteger> {
    let qb = BigInt::from(q);
    let mut out = FactoredInteger::one();
    for e in (1..=d).filter(|e| d % e == 0) {
        let v = cyclotomic_value_int(e, &qb);
        out *= &FactoredInteger::from_biguint(&v.to_biguint().expect("Φ_e(q) > 0 for q ≥ 2"))?;
    }
    Ok(out)
}

fn q_power(q: u64, e: u64) -> Result<FactoredInteger> {
    let e = u32::try_from(e).map_err(|_| domain("exponent too large"))?;
    Ok(FactoredInteger::from_u64(q)?.pow(e))
}

/// `|GL_n(F_q)| = q^{n(n-1)/2} Π_{i=1..n} (q^i - 1)`.
pub fn gl_order(n: u64, q: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    prime_power_base(q)?;
    let mut out = q_power(q, n * (n - 1) / 2)?;
    for i in 1..=n {
        out *= &q_pow_minus_one(q, i)?;
    }
    Ok(out)
}

/// `|O_n(F_p)|` for odd `p`, with `r = [n/2]`:
/// `2 p^{r²} Π (p^{2i} - 1)` for `n` odd and
/// `2 p^{r(r-1)} Π (p^{2i} - 1) / (p^r + ε)` for `n` even.
pub fn o_order(n: u64, p: u64, eps: i8) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if p == 2 || !is_prime(p) {
        return Err(domain(format!("o_order needs an odd prime, got {p}")));
    }
    let r = n / 2;
    let two = FactoredInteger::from_u64(2)?;
    let mut product = FactoredInteger::one();
    for i in 1..=r {
        product *= &q_pow_minus_one(p, 2 * i)?;
    }
    if n % 2 == 1 {
        return Ok(two * q_power(p, r * r)? * product);
    }
    if eps != 1 && eps != -1 {
        return Err(domain(format!("ε must be ±1, got {eps}")));
    }
    let pr = BigInt::from(p).pow(r as u32) + BigInt::from(eps);
    let divisor = FactoredInteger::from_biguint(&pr.to_biguint().expect("p^r ± 1 > 0"))?;
    let quotient = product
        .checked_div(&divisor)
        .ok_or_else(|| Error::Validation("p^r + ε does not divide the product".into()))?;
    Ok(two * q_power(p, r * (r - 1))? * quotient)
}

/// `|G(F_q)| = q^N Π (q^{d_i} - 1)`. For `GL_n` this is [`gl_order`].
pub fn chevalley_order(root: &RootSystem, q: u64) -> Result<FactoredInteger> {
    prime_power_base(q)?;
    let mut out = q_power(q, root.positive_root_count())?;
    for d in root.degrees() {
        out *= &q_pow_minus_one(q, d)?;
    }
    Ok(out)
}

/// `Σ_{i=1..n} v_ℓ(q^i - 1)`.
pub fn sylow_exponent_formula(n: u64, q: u64, ell: u64) -> Result<u64> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    if q % ell == 0 {
        return Err(domain(format!("ℓ = {ell} divides q = {q}")));
    }
    let qb = BigInt::from(q);
    let mut total = 0;
    for i in 1..=n {
        let term: BigInt = qb.pow(i as u32) - 1;
        if term.is_zero() {
            return Err(domain("q = 1 gives a zero factor"));
        }
        total += v_ell_int(&term, ell)?;
    }
    Ok(total)
}

/// Counts `GL_2(F_p)` by running over all `p^4` matrices and returns `v_ℓ` of the count.
pub fn enumerate_gl2_sylow(p: u64, ell: u64) -> Result<u64> {
    if !is_prime(p) || !is_prime(ell) {
        return Err(domain(format!("p = {p} and ℓ = {ell} must be prime")));
    }
    if p > 7 {
        return Err(Error::Budget(format!("GL_2 enumeration is capped at p ≤ 7, got {p}")));
    }
    if p == ell {
        return Err(domain("ℓ must differ from p"));
    }
    let mut count = 0u64;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p != 0 {
                        count += 1;
                    }
                }
            }
        }
    }
    v_ell_u64(count, ell)
}

/// `|GL_2(F_p)|` by enumeration, used to pin the count itself.
pub fn enumerate_gl2_count(p: u64) -> Result<BigUint> {
    if p > 7 {
        return Err(Error::Budget(format!("GL_2 enumeration is capped at p ≤ 7, got {p}")));
    }
    let count = (0..p * p * p * p)
        .filter(|x| {
            let (a, b, c, d) = (x % p, x / p % p, x / (p * p) % p, x / (p * p * p));
            (a * d + p * p - b * c) % p != 0
        })
        .count();
    Ok(BigUint::from(count))
}
