use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `B_d` with `B_1 = -1/2`.
///
/// Uses the closed double sum
/// `B_n = Σ_{k=0}^{n} 1/(k+1) Σ_{j=0}^{k} (-1)^j C(k,j) j^n`.
pub fn bernoulli(d: u32) -> BigRational {
    if d > 1 && d % 2 == 1 {
        return BigRational::zero();
    }
    let powers: Vec<BigInt> = (0..=d).map(|j| BigInt::from(j).pow(d)).collect();
    let mut total = BigRational::zero();
    for k in 0..=d {
        let mut inner = BigInt::zero();
        let mut binom = BigInt::one();
        for j in 0..=k {
            let term = &binom * &powers[j as usize];
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        total += BigRational::new(inner, BigInt::from(k + 1));
    }
    total
}
