use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::padic::PadicApprox;

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Coefficients of `Φ_d`, lowest degree first, obtained by dividing
/// `X^d - 1` by every `Φ_e` with `e | d`, `e < d`.
pub fn cyclotomic_coefficients(d: u64) -> Arc<Vec<BigInt>> {
    assert!(d >= 1, "Φ_0 is undefined");
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&d) {
        return Arc::clone(hit);
    }
    let mut xd_minus_1 = vec![BigInt::zero(); d as usize + 1];
    xd_minus_1[0] = -BigInt::one();
    xd_minus_1[d as usize] = BigInt::one();
    let divisor = (1..d)
        .filter(|e| d % e == 0)
        .fold(vec![BigInt::one()], |acc, e| poly_mul(&acc, &cyclotomic_coefficients(e)));
    let phi = Arc::new(poly_div_exact(&xd_minus_1, &divisor));
    cache().lock().expect("cache poisoned").insert(d, Arc::clone(&phi));
    phi
}

/// `Φ_d(x)` in exact integers.
pub fn cyclotomic_value_int(d: u64, x: &BigInt) -> BigInt {
    cyclotomic_coefficients(d)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `Φ_d(x)` at the precision of `x`.
pub fn cyclotomic_value(d: u64, x: &PadicApprox) -> PadicApprox {
    x.eval_poly(&cyclotomic_coefficients(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn mobius(n: u64) -> i32 {
        let f = crate::exact_arith::primes::factor_u64(n);
        if f.values().any(|&e| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `Φ_n(x) = Π_{d | n} (x^d - 1)^{μ(n/d)}` evaluated in exact integers.
    fn mobius_value(n: u64, x: i64) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            let term = BigInt::from(x).pow(d as u32) - 1;
            match mobius(n / d) {
                1 => num *= term,
                -1 => den *= term,
                _ => {}
            }
        }
        num / den
    }

    #[test]
    fn small_polynomials() {
        let c = |d| cyclotomic_coefficients(d).iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(c(1), ["-1", "1"]);
        assert_eq!(c(2), ["1", "1"]);
        assert_eq!(c(4), ["1", "0", "1"]);
        assert_eq!(c(6), ["1", "-1", "1"]);
        // First cyclotomic polynomial with a coefficient of absolute value 2.
        assert!(cyclotomic_coefficients(105).iter().any(|x| *x == BigInt::from(-2)));
    }

    #[test]
    fn examples() {
        let x = PadicApprox::from_u64(3, 5, 2).unwrap();
        assert_eq!(cyclotomic_value(1, &x).residue(), &BigUint::from(1u32));
        let x = PadicApprox::from_u64(5, 4, 2).unwrap();
        assert_eq!(cyclotomic_value(2, &x).residue(), &BigUint::from(3u32));
        let x = PadicApprox::from_u64(2, 10, 7).unwrap();
        assert_eq!(cyclotomic_value(4, &x).residue(), &BigUint::from(50u32));
    }

    #[test]
    fn agrees_with_mobius_product() {
        for n in 1..=40u64 {
            for x in [2i64, 3, 5] {
                let p = PadicApprox::new(7, 30, mobius_value(n, x)).unwrap();
                let v = cyclotomic_value(n, &PadicApprox::new(7, 30, x).unwrap());
                assert_eq!(v, p, "Φ_{n}({x})");
                assert_eq!(cyclotomic_value_int(n, &BigInt::from(x)), mobius_value(n, x));
            }
        }
    }

    proptest! {
        #[test]
        fn product_over_divisors_is_x_pow_n_minus_one(
            n in 1u64..=60,
            x in 0u64..1_000_000,
            ell in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
        ) {
            let x = PadicApprox::from_u64(ell, 12, x).unwrap();
            let one = PadicApprox::from_u64(ell, 12, 1).unwrap();
            let product = (1..=n)
                .filter(|d| n % d == 0)
                .fold(one.clone(), |acc, d| acc.mul(&cyclotomic_value(d, &x)));
            prop_assert_eq!(product, x.pow(n).sub(&one));
        }
    }
}
