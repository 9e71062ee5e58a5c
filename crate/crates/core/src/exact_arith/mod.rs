//! Exact integer and rational arithmetic: valuations, factored integers,
//! Bernoulli numbers, cyclotomic polynomials and finite-precision `ℓ`-adic
//! residues.

mod bernoulli;
mod cyclotomic;
mod factored;
mod padic;
pub mod primes;
mod valuation;

pub use bernoulli::bernoulli;
pub use cyclotomic::{cyclotomic_coefficients, cyclotomic_value, cyclotomic_value_int};
pub use factored::FactoredInteger;
pub(crate) use factored::legendre;
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use padic::{root_of_unity, teichmuller, unit_order, PadicApprox, PadicValuation};
pub use primes::is_prime;
pub use valuation::{v_ell, v_ell_int, v_ell_u64};

/// Euler's totient.
pub fn euler_phi(t: u64) -> u64 {
    primes::totient(t)
}

/// `v_ell(n!)`.
pub fn v_ell_factorial(n: u64, ell: u64) -> u64 {
    legendre(n, ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn euler_phi_by_counting_units() {
        for t in 1..=200u64 {
            let count = (1..=t).filter(|a| a.gcd(&t) == 1).count() as u64;
            assert_eq!(euler_phi(t), count, "φ({t})");
        }
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(10), 4);
        assert_eq!(euler_phi(16), 8);
    }
}
