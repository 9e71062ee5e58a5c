use crate::cyclo::CycloInvariants;
use crate::error::{domain, Result};
use crate::exact_arith::{is_prime, v_ell_factorial, FactoredInteger};

/// `S_ℓ ≀ S_r` with `r = [n/(ℓ-1)]`: order `(ℓ!)^r r!` and its `ℓ`-adic valuation.
pub fn wreath_witness(n: u64, ell: u64) -> Result<(FactoredInteger, u64)> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    let r = n / (ell - 1);
    let exp = u32::try_from(r).map_err(|_| domain("n too large"))?;
    let order = FactoredInteger::factorial(ell).pow(exp) * FactoredInteger::factorial(r);
    let v = order.exponent(ell) as u64;
    Ok((order, v))
}

/// `(v_ℓ(A_N), v_ℓ(A_N¹)) = (mN + v_ℓ(N!), m(N-1) + v_ℓ(N!))`.
pub fn schur_witness(n: u64, inv: &CycloInvariants) -> Result<(u64, u64)> {
    let ell = inv.ell();
    if ell == 2 {
        return Err(domain("schur_witness needs ℓ odd"));
    }
    let m = inv
        .m()
        .finite()
        .ok_or_else(|| domain("schur_witness needs finite m"))? as u64;
    if n == 0 {
        return Err(domain("N must be at least 1"));
    }
    let f = v_ell_factorial(n, ell);
    Ok((m * n + f, m * (n - 1) + f))
}
