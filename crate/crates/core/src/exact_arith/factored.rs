use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{factor_biguint, factor_u64, is_prime};
use crate::error::{domain, Result};

/// A positive integer stored as its prime factorization.
///
/// The empty map is 1. Every key is prime and every stored exponent is at
/// least 1, so structural equality is numeric equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n`. Zero has no factorization.
    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("zero has no prime factorization"));
        }
        Ok(Self { factors: factor_u64(n) })
    }

    pub fn from_biguint(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(domain("zero has no prime factorization"));
        }
        let factors = factor_biguint(n)
            .map_err(|p| domain(format!("prime factor {p} exceeds 64 bits")))?;
        Ok(Self { factors })
    }

    /// `p^e`; `e = 0` gives 1.
    pub fn prime_power(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        Ok(Self { factors })
    }

    /// Builds from `(prime, exponent)` pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self { factors })
    }

    /// `1 * 2 * ... * n`, factored by Legendre's formula.
    pub fn factorial(n: u64) -> Self {
        let factors = super::primes::primes_up_to(n)
            .into_iter()
            .map(|p| (p, legendre(n, p) as u32))
            .collect();
        Self { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (0 when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, (&p, &e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let factors = if k == 0 {
            BTreeMap::new()
        } else {
            self.factors.iter().map(|(&p, &e)| (p, e * k)).collect()
        };
        Self { factors }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let have = factors.get_mut(&p)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                factors.remove(&p);
            }
        }
        Some(Self { factors })
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }
}

/// `v_p(n!)`.
pub(crate) fn legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

impl Mul for &FactoredInteger {
    type Output = FactoredInteger;

    fn mul(self, rhs: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Mul for FactoredInteger {
    type Output = FactoredInteger;

    fn mul(mut self, rhs: FactoredInteger) -> FactoredInteger {
        self *= &rhs;
        self
    }
}

impl MulAssign<&FactoredInteger> for FactoredInteger {
    fn mul_assign(&mut self, rhs: &FactoredInteger) {
        for (&p, &e) in &rhs.factors {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }
}

impl std::iter::Product for FactoredInteger {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Renders as `2^15·3^5·5^2·7`, or `1` for the empty product.
impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (&p, &e) in &self.factors {
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FactoredRepr {
    value: String,
    factors: Vec<(u64, u32)>,
}

/// JSON form: `{"value": "<decimal>", "factors": [[p, e], ...]}`.
impl Serialize for FactoredInteger {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredRepr {
            value: self.value().to_string(),
            factors: self.factors().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredInteger {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FactoredRepr::deserialize(deserializer)?;
        let out = FactoredInteger::from_pairs(repr.factors).map_err(D::Error::custom)?;
        if out.value().to_string() != repr.value {
            return Err(D::Error::custom("factors do not multiply to the stated value"));
        }
        Ok(out)
    }
}
