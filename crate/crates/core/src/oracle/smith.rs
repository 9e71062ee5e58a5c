use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::exact_arith::{is_prime, v_ell_int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelValuation {
    Finite(u64),
    Infinite,
}

impl fmt::Display for KernelValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelValuation::Finite(v) => write!(f, "{v}"),
            KernelValuation::Infinite => f.write_str("inf"),
        }
    }
}

fn check_square(u: &[Vec<BigInt>]) -> Result<usize> {
    let n = u.len();
    if n == 0 || u.iter().any(|row| row.len() != n) {
        return Err(validation("matrix must be square and nonempty"));
    }
    Ok(n)
}

/// Diagonal of a matrix equivalent to `u` over `Z`. The entries need not form
/// a divisibility chain; the cokernel is the same either way.
pub fn diagonal_form(u: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let n = check_square(u)?;
    let mut a = u.to_vec();
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(p, q)| a[i][j].abs().cmp(&a[p][q].abs()));
            let Some((pi, pj)) = pivot else {
                return Ok((0..n).map(|i| a[i][i].clone()).collect());
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                let q = a[i][k].div_floor(&a[k][k]);
                if !q.is_zero() {
                    for j in k..n {
                        let t = &q * &a[k][j];
                        a[i][j] -= t;
                    }
                }
                clean &= a[i][k].is_zero();
            }
            for j in k + 1..n {
                let q = a[k][j].div_floor(&a[k][k]);
                if !q.is_zero() {
                    for i in k..n {
                        let t = &q * &a[i][k];
                        a[i][j] -= t;
                    }
                }
                clean &= a[k][j].is_zero();
            }
            if clean {
                break;
            }
        }
    }
    Ok((0..n).map(|i| a[i][i].clone()).collect())
}

/// `v_ℓ` of the kernel of `u` on `(ℓ^{-e}Z/Z)^n`: `Σ min(v_ℓ(s_i), e)` over a
/// diagonal form, or infinite when `det u = 0`.
pub fn kernel_valuation(u: &[Vec<BigInt>], ell: u64, e: u32) -> Result<KernelValuation> {
    if e == 0 {
        return Err(validation("level e must be at least 1"));
    }
    if !is_prime(ell) {
        return Err(validation(format!("{ell} is not prime")));
    }
    let diag = diagonal_form(u)?;
    if diag.iter().any(Zero::is_zero) {
        return Ok(KernelValuation::Infinite);
    }
    let mut total = 0;
    for s in &diag {
        total += v_ell_int(s, ell)?.min(e as u64);
    }
    Ok(KernelValuation::Finite(total))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(u: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(u)?;
    let mut a = u.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(&a[n - 1][n - 1] * sign)
}
