use num_bigint::BigInt;

use crate::cyclo::CycloInvariants;
use crate::error::{domain, Error, Result};
use crate::exact_arith::primes::{multiplicative_order, primes_up_to};
use crate::exact_arith::{cyclotomic_value, root_of_unity, PadicApprox, PadicValuation};

/// `v_ℓ(Φ_d(x))` at `x = z_t (1 + ℓ^m)`, `z_t` a primitive `t`-th root of unity in `Z_ℓ`.
pub fn phi_valuation(d: u64, inv: &CycloInvariants, k: u32) -> Result<u64> {
    let ell = inv.ell();
    if ell == 2 {
        return Err(domain("phi_valuation is only defined for ℓ odd"));
    }
    let m = inv.m().finite().ok_or_else(|| domain("phi_valuation needs finite m"))?;
    if k <= m + 2 {
        return Err(domain(format!("precision K = {k} must exceed m + 2 = {}", m + 2)));
    }
    if d == 0 {
        return Err(domain("d must be at least 1"));
    }
    let z = root_of_unity(inv.t(), ell, k)?;
    let u = PadicApprox::new(ell, k, BigInt::from(ell).pow(m) + 1)?;
    match cyclotomic_value(d, &z.mul(&u)).valuation() {
        PadicValuation::Exact(v) => Ok(v as u64),
        PadicValuation::AtLeast(v) => Err(Error::InconclusivePrecision(format!(
            "v_ℓ(Φ_{d}(x)) ≥ {v} at K = {k}"
        ))),
    }
}

/// `m` if `d = t`, `1` if `d = t ℓ^α` with `α ≥ 1`, `0` otherwise.
pub fn phi_valuation_table(d: u64, t: u64, m: u64, ell: u64) -> u64 {
    if d == t {
        return m;
    }
    if d % t != 0 {
        return 0;
    }
    let mut q = d / t;
    while q % ell == 0 {
        q /= ell;
    }
    u64::from(q == 1)
}

/// The least prime whose class generates `(Z/ℓ²Z)^*`, for `ℓ` odd.
pub fn minkowski_prime(ell: u64) -> Result<u64> {
    if ell == 2 {
        return Err(domain("(Z/4Z)^* needs no generator search; ℓ must be odd"));
    }
    let modulus = ell * ell;
    let target = ell * (ell - 1);
    let mut bound = 64;
    loop {
        if let Some(p) = primes_up_to(bound)
            .into_iter()
            .find(|&p| multiplicative_order(p, modulus) == Some(target))
        {
            return Ok(p);
        }
        bound *= 4;
    }
}
