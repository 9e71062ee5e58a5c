//! Residues modulo `ℓ^K` standing in for elements of `Z_ℓ`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;

use super::primes::is_prime;
use crate::error::{domain, Result};

/// Valuation of a finite-precision element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadicValuation {
    Exact(u32),
    /// The residue vanished at this precision.
    AtLeast(u32),
}

impl PadicValuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            PadicValuation::Exact(v) => Some(v),
            PadicValuation::AtLeast(_) => None,
        }
    }

    /// The best certified lower bound.
    pub fn lower_bound(self) -> u32 {
        match self {
            PadicValuation::Exact(v) | PadicValuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for PadicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicValuation::Exact(v) => write!(f, "{v}"),
            PadicValuation::AtLeast(v) => write!(f, "≥{v}"),
        }
    }
}

/// An element of `Z/ℓ^K`.
///
/// Binary operations run at the smaller of the two precisions, so a result
/// never claims more digits than its inputs carry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    ell: u64,
    precision: u32,
    residue: BigUint,
}

fn modulus(ell: u64, precision: u32) -> BigUint {
    BigUint::from(ell).pow(precision)
}

impl PadicApprox {
    pub fn new(ell: u64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(domain(format!("{ell} is not prime")));
        }
        if precision == 0 {
            return Err(domain("precision must be at least 1"));
        }
        let m = BigInt::from(modulus(ell, precision));
        let r = value.into().mod_floor(&m);
        let residue = r.to_biguint().expect("mod_floor is non-negative");
        Ok(Self { ell, precision, residue })
    }

    pub fn from_u64(ell: u64, precision: u32, value: u64) -> Result<Self> {
        Self::new(ell, precision, BigInt::from(value))
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        modulus(self.ell, self.precision)
    }

    fn with(&self, precision: u32, residue: BigUint) -> Self {
        Self { ell: self.ell, precision, residue }
    }

    /// Reduce to a lower precision; asking for more is a no-op.
    pub fn truncate(&self, precision: u32) -> Self {
        let k = precision.min(self.precision);
        self.with(k, &self.residue % modulus(self.ell, k))
    }

    fn common(&self, other: &Self) -> (u32, BigUint, BigUint, BigUint) {
        assert_eq!(self.ell, other.ell, "mixing residues for different primes");
        let k = self.precision.min(other.precision);
        let m = modulus(self.ell, k);
        (k, &self.residue % &m, &other.residue % &m, m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (k, a, b, m) = self.common(other);
        self.with(k, (a + b) % m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (k, a, b, m) = self.common(other);
        self.with(k, (a + &m - b) % m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (k, a, b, m) = self.common(other);
        self.with(k, (a * b) % m)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        self.with(self.precision, (&m - &self.residue) % m)
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.pow_big(&BigUint::from(exp))
    }

    pub fn pow_big(&self, exp: &BigUint) -> Self {
        self.with(self.precision, self.residue.modpow(exp, &self.modulus()))
    }

    /// Adds an integer constant at this element's precision.
    pub fn add_int(&self, c: i64) -> Self {
        let m = BigInt::from(self.modulus());
        let r = (BigInt::from(self.residue.clone()) + c).mod_floor(&m);
        self.with(self.precision, r.to_biguint().expect("non-negative"))
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ell).is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(domain("non-unit has no inverse"));
        }
        let m = BigInt::from(self.modulus());
        let a = BigInt::from(self.residue.clone());
        let g = a.extended_gcd(&m);
        let inv = g.x.mod_floor(&m);
        Ok(self.with(self.precision, inv.to_biguint().expect("non-negative")))
    }

    /// `v_ℓ` of the residue; a zero residue only certifies `≥ K`.
    pub fn valuation(&self) -> PadicValuation {
        if self.residue.is_zero() {
            return PadicValuation::AtLeast(self.precision);
        }
        let ell = BigUint::from(self.ell);
        let mut r = self.residue.clone();
        let mut v = 0;
        loop {
            let (q, rem) = r.div_rem(&ell);
            if !rem.is_zero() {
                return PadicValuation::Exact(v);
            }
            r = q;
            v += 1;
        }
    }

    /// Evaluates an integer polynomial (coefficients lowest degree first).
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Self {
        let m = self.modulus();
        let mb = BigInt::from(m.clone());
        let mut acc = BigUint::zero();
        for c in coeffs.iter().rev() {
            let c = c.mod_floor(&mb).to_biguint().expect("non-negative");
            acc = (acc * &self.residue + c) % &m;
        }
        self.with(self.precision, acc)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.ell, self.precision)
    }
}

/// The Teichmüller lift of `c`: the root of unity of order dividing `ℓ - 1`
/// congruent to `c` mod `ℓ`, found by iterating `x ↦ x^ℓ` to its fixed point.
pub fn teichmuller(c: u64, ell: u64, precision: u32) -> Result<PadicApprox> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    if c % ell == 0 {
        return Err(domain(format!("{c} is not a unit mod {ell}")));
    }
    let mut x = PadicApprox::from_u64(ell, precision, c % ell)?;
    loop {
        let next = x.pow(ell);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
}

/// `z_t`: a Teichmüller root of unity of exact order `t`, for `t | ℓ - 1`.
pub fn root_of_unity(t: u64, ell: u64, precision: u32) -> Result<PadicApprox> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    if t == 0 || (ell - 1) % t != 0 {
        return Err(domain(format!("{t} does not divide {ell} - 1")));
    }
    if ell == 2 {
        return PadicApprox::from_u64(2, precision, 1);
    }
    let g = super::primes::primitive_root(ell);
    let c = super::primes::pow_mod_u64(g, (ell - 1) / t, ell);
    teichmuller(c, ell, precision)
}

impl From<&PadicApprox> for BigInt {
    fn from(x: &PadicApprox) -> BigInt {
        BigInt::from_biguint(Sign::Plus, x.residue.clone())
    }
}

/// The exact order of a unit in `(Z/ℓ^K)^*`, by checking divisors of the group order.
pub fn unit_order(x: &PadicApprox) -> Result<u64> {
    if !x.is_unit() {
        return Err(domain("order of a non-unit"));
    }
    let ell = x.ell();
    let k = x.precision();
    let group = BigUint::from(ell - 1) * BigUint::from(ell).pow(k - 1);
    let group_u64: u64 = group
        .try_into()
        .map_err(|_| domain("group order exceeds 64 bits"))?;
    let one = PadicApprox::from_u64(ell, k, 1)?;
    let mut order = group_u64;
    for (p, _) in super::primes::factor_u64(group_u64) {
        while order % p == 0 && x.pow(order / p) == one {
            order /= p;
        }
    }
    debug_assert!(x.pow(order) == one);
    Ok(order)
}
