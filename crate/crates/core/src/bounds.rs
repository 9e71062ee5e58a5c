//! Closed-form bounds on `v_ℓ(A)` for finite subgroups `A`.
//!
//! * Minkowski: `GL_n(Q)`.
//! * Schur: `GL_n` with traces in a number field.
//! * Torus and S-bound: via normalizers of maximal tori.
//! * M-bound: `inf_{x ∈ Im χ} Σ v_ℓ(x^{d_i} - 1)`, in closed form, plus a
//!   direct evaluator of the infimum used as an oracle.
//! * Achievable exponents and, when `m = ∞`, the corank bound `a(t)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{invariants, CycloInvariants, FieldDescriptor, RootLevel, TwoAdicType};
use crate::error::{domain, Error, Result};
use crate::exact_arith::primes::{is_prime, primes_up_to};
use crate::exact_arith::{
    cyclotomic_value_int, euler_phi, root_of_unity, v_ell_factorial, v_ell_u64, FactoredInteger,
    PadicApprox, PadicValuation,
};
use crate::root_data::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundExponent {
    Finite(u64),
    Infinite,
}

impl BoundExponent {
    pub fn finite(self) -> Option<u64> {
        match self {
            BoundExponent::Finite(v) => Some(v),
            BoundExponent::Infinite => None,
        }
    }
}

impl fmt::Display for BoundExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExponent::Finite(v) => write!(f, "{v}"),
            BoundExponent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for BoundExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundExponent::Finite(v) => s.serialize_u64(*v),
            BoundExponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BoundExponent::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(BoundExponent::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad bound value {s:?}"))),
        }
    }
}

/// Which bound family produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundSource {
    Minkowski,
    Schur,
    Torus,
    S,
    M,
    Achievable,
    Corank,
}

/// Serializes as `{"value": <int>|"inf", "source": <tag>}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: BoundExponent,
    pub source: BoundSource,
}

impl BoundValue {
    fn finite(v: u64, source: BoundSource) -> Self {
        Self { value: BoundExponent::Finite(v), source }
    }

    fn infinite(source: BoundSource) -> Self {
        Self { value: BoundExponent::Infinite, source }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `M(n, ℓ) = [n/(ℓ-1)] + [n/ℓ(ℓ-1)] + [n/ℓ²(ℓ-1)] + …`
pub fn minkowski_exponent(n: u64, ell: u64) -> u64 {
    let mut total = 0;
    let mut denom = ell - 1;
    while denom <= n {
        total += n / denom;
        denom = match denom.checked_mul(ell) {
            Some(d) => d,
            None => break,
        };
    }
    total
}

/// `M(n) = Π_ℓ ℓ^{M(n,ℓ)}`, the sharp multiplicative bound for finite subgroups of `GL_n(Q)`.
pub fn minkowski_bound(n: u64) -> FactoredInteger {
    FactoredInteger::from_pairs(
        primes_up_to(n + 1)
            .into_iter()
            .map(|ell| (ell, minkowski_exponent(n, ell) as u32)),
    )
    .expect("sieve output is prime")
}

fn floor_sum(n: u64, base: u64, ell: u64) -> u64 {
    // Σ_{j ≥ 1} [n / ℓ^j base]
    let mut total = 0;
    let mut denom = base.saturating_mul(ell);
    while denom <= n {
        total += n / denom;
        denom = denom.saturating_mul(ell);
    }
    total
}

fn require_finite_m(inv: &CycloInvariants, what: &str) -> Result<u64> {
    inv.m()
        .finite()
        .map(u64::from)
        .ok_or_else(|| domain(format!("{what} requires finite m")))
}

/// Schur's `M_k(n, ℓ)`.
///
/// `ℓ` odd: `m[n/t] + Σ_{j≥1} [n/ℓ^j t]`.
/// `ℓ = 2`: `n + (m'-1)[n/t] + Σ_{j≥1} [n/2^j t]`, with `m' = m + 1` in type (b).
pub fn schur_exponent(n: u64, inv: &CycloInvariants) -> Result<u64> {
    let m = require_finite_m(inv, "Schur bound")?;
    let (ell, t) = (inv.ell(), inv.t());
    if ell != 2 {
        return Ok(m * (n / t) + floor_sum(n, t, ell));
    }
    let m_prime = if inv.two_type() == Some(TwoAdicType::B) { m + 1 } else { m };
    Ok(n + (m_prime - 1) * (n / t) + floor_sum(n, t, 2))
}

fn m_times_floor(inv: &CycloInvariants, count: u64, source: BoundSource, extra: u64) -> BoundValue {
    match inv.m() {
        _ if count == 0 => BoundValue::finite(extra, source),
        RootLevel::Infinite => BoundValue::infinite(source),
        RootLevel::Finite(m) => BoundValue::finite(m as u64 * count + extra, source),
    }
}

/// `m [dim/φ(t)]`, infinite exactly when `m = ∞` and `φ(t) ≤ dim`.
pub fn torus_bound(dim: u64, inv: &CycloInvariants) -> BoundValue {
    m_times_floor(inv, dim / euler_phi(inv.t()), BoundSource::Torus, 0)
}

fn require_irreducible(root: &RootSystem, what: &str) -> Result<()> {
    if root.is_gl() {
        Err(domain(format!("{what} needs an irreducible root system, got {root}")))
    } else {
        Ok(())
    }
}

/// `m [r/φ(t)] + v_ℓ(W)`.
pub fn s_bound(root: &RootSystem, inv: &CycloInvariants) -> Result<BoundValue> {
    require_irreducible(root, "the S-bound")?;
    let count = root.rank() as u64 / euler_phi(inv.t());
    Ok(m_times_floor(inv, count, BoundSource::S, root.weyl_valuation(inv.ell())))
}

/// `r < φ(t)`: the S-bound then forces `ℓ`-torsion freeness.
pub fn s_torsion_free(root: &RootSystem, inv: &CycloInvariants) -> bool {
    (root.rank() as u64) < euler_phi(inv.t())
}

/// The M-bound in closed form.
///
/// `ℓ` odd or type (a): `Σ_{t | d_i} (m + v_ℓ(d_i))`.
/// `ℓ = 2`, types (b)/(c): `r_1 + m r_0 + v_2(W)`.
/// Infinite exactly when `m = ∞` and `a(t) ≥ 1`.
pub fn m_bound(root: &RootSystem, inv: &CycloInvariants) -> BoundValue {
    let (ell, t) = (inv.ell(), inv.t());
    let a = root.a_t(t);
    if a >= 1 && inv.m().is_infinite() {
        return BoundValue::infinite(BoundSource::M);
    }
    // With a(t) = 0 the m-dependent part is empty, so m is never read.
    let m = inv.m().finite().unwrap_or(0) as u64;
    let value = if ell == 2 && t == 2 {
        let (r0, r1) = root.parity_counts();
        r1 + m * r0 + root.weyl_valuation(2)
    } else {
        root.degrees()
            .into_iter()
            .filter(|d| d % t == 0)
            .map(|d| m + v_ell_u64(d, ell).expect("ℓ is prime"))
            .sum()
    };
    BoundValue::finite(value, BoundSource::M)
}

/// `a(t) = 0`: the M-bound is an empty sum.
pub fn m_torsion_free(root: &RootSystem, inv: &CycloInvariants) -> bool {
    root.a_t(inv.t()) == 0
}

/// Precision used by [`m_bound_direct`] callers that do not choose one:
/// the closed-form value plus 6.
pub fn default_precision(root: &RootSystem, inv: &CycloInvariants) -> Result<u32> {
    require_finite_m(inv, "direct M-bound evaluation")?;
    let closed = m_bound(root, inv).value.finite().expect("finite m");
    Ok((closed + 6) as u32)
}

/// `Σ v_ℓ(x^{d_i} - 1)` with a flag saying whether every term was certified.
fn valuation_sum(x: &PadicApprox, degrees: &[u64]) -> (u64, bool) {
    degrees.iter().fold((0, true), |(sum, exact), &d| {
        match x.pow(d).add_int(-1).valuation() {
            PadicValuation::Exact(v) => (sum + v as u64, exact),
            PadicValuation::AtLeast(v) => (sum + v as u64, false),
        }
    })
}

/// Elements of `Im χ` at precision `K`: the minimizers identified by the
/// closed form, then `samples` random elements.
fn image_elements(inv: &CycloInvariants, k: u32, samples: usize, rng: &mut impl Rng) -> Result<(Vec<PadicApprox>, Vec<PadicApprox>)> {
    let ell = inv.ell();
    let m = require_finite_m(inv, "direct M-bound evaluation")? as u32;
    let p = |v: BigInt| PadicApprox::new(ell, k, v);
    let ell_big = BigInt::from(ell);
    let one_plus = |e: u32| p(ell_big.pow(e) + 1);
    let minus_one_plus = |e: u32| p(ell_big.pow(e) - 1);
    let higher_unit = |rng: &mut dyn rand::RngCore| -> Result<PadicApprox> {
        let w = BigInt::from(rng.next_u64());
        p(ell_big.pow(m + 1) * w + 1)
    };
    let exponent = |rng: &mut dyn rand::RngCore| rng.next_u64();

    let mut minimizers = Vec::new();
    let mut random = Vec::with_capacity(samples);
    if ell != 2 {
        let z = root_of_unity(inv.t(), ell, k)?;
        let u = one_plus(m)?;
        minimizers.push(z.mul(&u));
        for _ in 0..samples {
            let j = rng.gen_range(0..inv.t());
            let x = z.pow(j).mul(&u.pow(exponent(rng))).mul(&higher_unit(rng)?);
            random.push(x);
        }
        return Ok((minimizers, random));
    }
    let ty = inv.two_type().expect("ℓ = 2 always carries a type");
    let generator = match ty {
        TwoAdicType::A => one_plus(m)?,
        TwoAdicType::B | TwoAdicType::C => minus_one_plus(m)?,
    };
    minimizers.push(generator.clone());
    if ty == TwoAdicType::C {
        minimizers.push(one_plus(m)?);
    }
    let minus_one = p(BigInt::from(-1))?;
    for _ in 0..samples {
        let x = match ty {
            TwoAdicType::A | TwoAdicType::B => generator.pow(exponent(rng)),
            TwoAdicType::C => {
                let sign = if rng.gen_bool(0.5) { minus_one.clone() } else { p(BigInt::from(1))? };
                sign.mul(&one_plus(m)?.pow(exponent(rng)))
            }
        };
        random.push(x.mul(&higher_unit(rng)?));
    }
    Ok((minimizers, random))
}

/// Evaluates `inf_{x ∈ Im χ} Σ v_ℓ(x^{d_i} - 1)` directly at precision `ℓ^K`
/// over the closed form's minimizers and `samples` random image elements.
///
/// Every term must be certified: if a minimizer's sum, or a random sum that
/// could still undercut the minimum, hits the precision ceiling, the result
/// is [`Error::InconclusivePrecision`].
pub fn m_bound_direct(root: &RootSystem, inv: &CycloInvariants, k: u32, samples: usize) -> Result<u64> {
    let seed = (inv.ell() << 32) ^ (inv.t() << 16) ^ u64::from(inv.m().finite().unwrap_or(0)) ^ u64::from(k);
    m_bound_direct_with_rng(root, inv, k, samples, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn m_bound_direct_with_rng(
    root: &RootSystem,
    inv: &CycloInvariants,
    k: u32,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<u64> {
    let degrees = root.degrees();
    let (minimizers, random) = image_elements(inv, k, samples, rng)?;
    let mut best: Option<u64> = None;
    for x in &minimizers {
        let (sum, exact) = valuation_sum(x, &degrees);
        if !exact {
            return Err(Error::InconclusivePrecision(format!(
                "K = {k} cannot certify Σ v_ℓ(x^d - 1) at {x}"
            )));
        }
        best = Some(best.map_or(sum, |b| b.min(sum)));
    }
    let mut best = best.expect("at least one minimizer");
    for x in &random {
        let (sum, exact) = valuation_sum(x, &degrees);
        if exact {
            best = best.min(sum);
        } else if sum < best {
            return Err(Error::InconclusivePrecision(format!(
                "K = {k} leaves a sample at ≥{sum}, below the running minimum {best}"
            )));
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Achievable {
    pub value: u64,
    /// Whether `value` equals the M-bound.
    pub optimal: bool,
}

/// The largest `v_ℓ(A)` known to be realized.
///
/// Equal to the M-bound except for `ℓ = 2` in type (c), where `r_0 m + v_2(W)`
/// is realized and is optimal exactly when all degrees are even.
pub fn achievable_exponent(root: &RootSystem, inv: &CycloInvariants) -> Result<Achievable> {
    require_irreducible(root, "achievable_exponent")?;
    let m = require_finite_m(inv, "achievable_exponent (use corank_bound when m = ∞)")?;
    if inv.ell() == 2 && inv.two_type() == Some(TwoAdicType::C) {
        let (r0, r1) = root.parity_counts();
        return Ok(Achievable { value: r0 * m + root.weyl_valuation(2), optimal: r1 == 0 });
    }
    let value = m_bound(root, inv).value.finite().expect("finite m");
    Ok(Achievable { value, optimal: true })
}

/// For `m = ∞`: commutative `ℓ`-subgroups have corank at most `a(t)`, and that is attained.
pub fn corank_bound(root: &RootSystem, inv: &CycloInvariants) -> Result<u64> {
    if !inv.m().is_infinite() {
        return Err(domain("corank_bound requires m = ∞"));
    }
    Ok(root.a_t(inv.t()))
}

/// The bounds that can be tabulated prime by prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    S,
    M,
    Torus,
    Achievable,
    Corank,
}

impl std::str::FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(BoundKind::S),
            "m" => Ok(BoundKind::M),
            "torus" => Ok(BoundKind::Torus),
            "achievable" => Ok(BoundKind::Achievable),
            "corank" => Ok(BoundKind::Corank),
            _ => Err(Error::Parse(format!("unknown bound kind {s:?}"))),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::S => "s",
            BoundKind::M => "m",
            BoundKind::Torus => "torus",
            BoundKind::Achievable => "achievable",
            BoundKind::Corank => "corank",
        })
    }
}

/// One bound at one prime. The torus bound uses `dim T = rank`.
pub fn bound_at(kind: BoundKind, root: &RootSystem, inv: &CycloInvariants) -> Result<BoundValue> {
    match kind {
        BoundKind::S => s_bound(root, inv),
        BoundKind::M => Ok(m_bound(root, inv)),
        BoundKind::Torus => Ok(torus_bound(root.rank() as u64, inv)),
        BoundKind::Achievable => {
            achievable_exponent(root, inv).map(|a| BoundValue::finite(a.value, BoundSource::Achievable))
        }
        BoundKind::Corank => corank_bound(root, inv).map(|a| BoundValue::finite(a, BoundSource::Corank)),
    }
}

fn prime_divisors_of_cyclotomic_values(q: u64, indices: impl IntoIterator<Item = u64>) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for e in indices {
        let v = cyclotomic_value_int(e, &BigInt::from(q));
        let v = v.to_biguint().ok_or_else(|| domain("Φ_e(q) is positive for q ≥ 2"))?;
        out.extend(FactoredInteger::from_biguint(&v)?.primes());
    }
    Ok(out)
}

/// A finite set of primes outside which `kind` vanishes for `(root, field)`.
pub fn candidate_primes(kind: BoundKind, root: &RootSystem, field: &FieldDescriptor) -> Result<BTreeSet<u64>> {
    field.validate()?;
    let degrees = root.degrees();
    let max_degree = *degrees.last().expect("rank ≥ 1");
    let r = root.rank() as u64;
    // φ(t) ≥ sqrt(t/2), so φ(t) ≤ r forces t ≤ 2r².
    let torus_indices: Vec<u64> = (1..=2 * r * r).filter(|&t| euler_phi(t) <= r).collect();
    let degree_divisors: BTreeSet<u64> = degrees
        .iter()
        .flat_map(|&d| (1..=d).filter(move |e| d % e == 0))
        .collect();
    let (over_q, cyclo_indices): (u64, Vec<u64>) = match kind {
        BoundKind::M | BoundKind::Achievable => (max_degree + 1, degree_divisors.into_iter().collect()),
        BoundKind::S => ((2 * r * r + 1).max(max_degree), torus_indices),
        BoundKind::Torus => (2 * r * r + 1, torus_indices),
        BoundKind::Corank => {
            return Err(domain("the corank bound is nonzero at infinitely many primes or none; pass a single ℓ"))
        }
    };
    let mut out: BTreeSet<u64> = BTreeSet::new();
    match *field {
        FieldDescriptor::Rationals => out.extend(primes_up_to(over_q)),
        FieldDescriptor::CyclotomicField(n) => {
            out.extend(primes_up_to(over_q));
            out.extend(FactoredInteger::from_u64(n)?.primes());
        }
        FieldDescriptor::FiniteField(q) => {
            out.extend(prime_divisors_of_cyclotomic_values(q, cyclo_indices)?);
            if kind == BoundKind::S {
                out.extend(primes_up_to(max_degree));
            }
            let p = FactoredInteger::from_u64(q)?.primes().next().expect("q ≥ 2");
            out.remove(&p);
        }
        FieldDescriptor::PadicField(p) => {
            out.extend(primes_up_to(over_q));
            out.extend(prime_divisors_of_cyclotomic_values(p, cyclo_indices)?);
        }
        _ => {
            return Err(domain(format!(
                "cannot enumerate all primes for field {field}; pass a single ℓ"
            )))
        }
    }
    Ok(out)
}

/// `(ℓ, bound)` for every prime where the bound is nonzero, in increasing `ℓ`.
pub fn bounds_over_primes(kind: BoundKind, root: &RootSystem, field: &FieldDescriptor) -> Result<Vec<(u64, BoundValue)>> {
    let mut out = Vec::new();
    for ell in candidate_primes(kind, root, field)? {
        let inv = invariants(field, ell)?;
        let b = bound_at(kind, root, &inv)?;
        if b.value != BoundExponent::Finite(0) {
            out.push((ell, b));
        }
    }
    Ok(out)
}

/// `Π ℓ^{e_ℓ}`; fails if any exponent is infinite.
pub fn assemble(entries: &[(u64, BoundValue)]) -> Result<FactoredInteger> {
    let mut pairs = Vec::with_capacity(entries.len());
    for &(ell, b) in entries {
        let e = b
            .value
            .finite()
            .ok_or_else(|| domain(format!("the bound is infinite at ℓ = {ell}")))?;
        let e = u32::try_from(e).map_err(|_| domain("exponent exceeds 32 bits"))?;
        pairs.push((ell, e));
    }
    FactoredInteger::from_pairs(pairs)
}

/// `v_ℓ(N!)`, re-exported for witness computations.
pub fn v_factorial(n: u64, ell: u64) -> u64 {
    debug_assert!(is_prime(ell));
    v_ell_factorial(n, ell)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_inv(ell: u64) -> CycloInvariants {
        invariants(&FieldDescriptor::Rationals, ell).unwrap()
    }

    fn explicit(ell: u64, t: u64, m: RootLevel, ty: Option<TwoAdicType>) -> CycloInvariants {
        CycloInvariants::new(ell, t, m, ty).unwrap()
    }

    fn fin(v: u64) -> BoundExponent {
        BoundExponent::Finite(v)
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_exponent(8, 2), 15);
        assert_eq!(minkowski_exponent(8, 3), 5);
        assert_eq!(minkowski_exponent(1, 5), 0);
        assert_eq!(minkowski_bound(4).to_u64(), Some(5760));
        assert_eq!(minkowski_bound(6).to_u64(), Some(2_903_040));
        assert_eq!(minkowski_bound(1).to_u64(), Some(2));
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_exponent(4, &q_inv(2)).unwrap(), 7);
        let c = explicit(2, 2, RootLevel::Finite(2), Some(TwoAdicType::C));
        assert_eq!(schur_exponent(2, &c).unwrap(), 3);
        let odd = explicit(3, 1, RootLevel::Finite(2), None);
        assert_eq!(schur_exponent(3, &odd).unwrap(), 7);
        let inf = explicit(3, 1, RootLevel::Infinite, None);
        assert!(matches!(schur_exponent(3, &inf), Err(Error::Domain(_))));
    }

    #[test]
    fn schur_type_b_shifts_m() {
        // F_3 at ℓ = 2 is type (b) with m = 2, so m' = 3.
        let b = invariants(&FieldDescriptor::FiniteField(3), 2).unwrap();
        assert_eq!(schur_exponent(2, &b).unwrap(), 2 + 2 + 0);
    }

    #[test]
    fn torus_examples() {
        for n in 1..10 {
            assert_eq!(torus_bound(n, &q_inv(2)).value, fin(2 * n));
        }
        assert_eq!(torus_bound(1, &explicit(5, 4, RootLevel::Finite(1), None)).value, fin(0));
        assert_eq!(
            torus_bound(3, &explicit(3, 2, RootLevel::Infinite, None)).value,
            BoundExponent::Infinite
        );
        assert_eq!(torus_bound(1, &explicit(5, 4, RootLevel::Infinite, None)).value, fin(0));
    }

    #[test]
    fn s_bound_examples() {
        assert_eq!(s_bound(&RootSystem::E8, &q_inv(5)).unwrap().value, fin(6));
        assert_eq!(s_bound(&RootSystem::E8, &q_inv(17)).unwrap().value, fin(1));
        assert_eq!(s_bound(&RootSystem::E8, &q_inv(2)).unwrap().value, fin(30));
        assert_eq!(s_bound(&RootSystem::E8, &q_inv(11)).unwrap().value, fin(2));
        assert!(s_bound(&RootSystem::GL(3), &q_inv(3)).is_err());
        assert!(s_torsion_free(&RootSystem::A(2), &q_inv(11)));
        assert!(!s_torsion_free(&RootSystem::E8, &q_inv(31)));
        assert!(!s_torsion_free(&RootSystem::A(1), &explicit(3, 1, RootLevel::Finite(1), None)));
    }

    #[test]
    fn m_bound_examples() {
        assert_eq!(m_bound(&RootSystem::A(1), &q_inv(2)).value, fin(3));
        assert_eq!(m_bound(&RootSystem::A(1), &q_inv(3)).value, fin(1));
        assert_eq!(m_bound(&RootSystem::A(1), &q_inv(7)).value, fin(0));
        let expected = [(2, 30), (3, 13), (5, 5), (7, 4), (11, 2), (13, 2), (17, 0), (19, 1), (31, 1)];
        for (ell, e) in expected {
            assert_eq!(m_bound(&RootSystem::E8, &q_inv(ell)).value, fin(e), "ℓ = {ell}");
        }
        assert!(m_torsion_free(&RootSystem::E8, &q_inv(17)));
        assert!(m_torsion_free(&RootSystem::A(1), &q_inv(5)));
        for r in RootSystem::catalogue(8) {
            assert!(!m_torsion_free(&r, &explicit(3, 1, RootLevel::Finite(1), None)));
        }
    }

    #[test]
    fn m_bound_infinite_only_when_criterion_holds() {
        let real3 = invariants(&FieldDescriptor::RealField, 3).unwrap();
        assert_eq!(m_bound(&RootSystem::E8, &real3).value, BoundExponent::Infinite);
        // t = 4 divides no degree of A_2.
        let no_t = explicit(5, 4, RootLevel::Infinite, None);
        assert_eq!(m_bound(&RootSystem::A(2), &no_t).value, fin(0));
        let gl1 = invariants(&FieldDescriptor::RealField, 2).unwrap();
        assert_eq!(m_bound(&RootSystem::GL(1), &gl1).value, fin(1));
    }

    #[test]
    fn direct_examples() {
        let e8 = m_bound_direct(&RootSystem::E8, &q_inv(5), 12, 50).unwrap();
        assert_eq!(e8, 5);
        assert_eq!(m_bound_direct(&RootSystem::A(1), &q_inv(3), 8, 50).unwrap(), 1);
        let f3 = invariants(&FieldDescriptor::FiniteField(3), 2).unwrap();
        assert_eq!(m_bound_direct(&RootSystem::GL(2), &f3, 10, 50).unwrap(), 4);
        assert_eq!(m_bound(&RootSystem::GL(2), &f3).value, fin(4));
    }

    #[test]
    fn direct_reports_inconclusive_precision() {
        let r = m_bound_direct(&RootSystem::E8, &q_inv(2), 4, 5);
        assert!(matches!(r, Err(Error::InconclusivePrecision(_))), "{r:?}");
        let inf = invariants(&FieldDescriptor::SeparablyClosed, 3).unwrap();
        assert!(matches!(m_bound_direct(&RootSystem::A(1), &inf, 10, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn achievable_examples() {
        assert_eq!(
            achievable_exponent(&RootSystem::E8, &q_inv(2)).unwrap(),
            Achievable { value: 30, optimal: true }
        );
        assert_eq!(
            achievable_exponent(&RootSystem::A(2), &q_inv(2)).unwrap(),
            Achievable { value: 3, optimal: false }
        );
        assert_eq!(
            achievable_exponent(&RootSystem::A(1), &q_inv(3)).unwrap(),
            Achievable { value: 1, optimal: true }
        );
        let real = invariants(&FieldDescriptor::RealField, 3).unwrap();
        assert!(achievable_exponent(&RootSystem::A(1), &real).is_err());
    }

    #[test]
    fn corank_examples() {
        let qbar5 = invariants(&FieldDescriptor::SeparablyClosed, 5).unwrap();
        assert_eq!(corank_bound(&RootSystem::E8, &qbar5).unwrap(), 8);
        let r7 = invariants(&FieldDescriptor::RealField, 7).unwrap();
        assert_eq!(corank_bound(&RootSystem::E8, &r7).unwrap(), 8);
        let r3 = invariants(&FieldDescriptor::RealField, 3).unwrap();
        assert_eq!(corank_bound(&RootSystem::E6, &r3).unwrap(), 4);
        assert!(corank_bound(&RootSystem::E6, &q_inv(3)).is_err());
    }

    #[test]
    fn e8_over_q_assembles() {
        let m = bounds_over_primes(BoundKind::M, &RootSystem::E8, &FieldDescriptor::Rationals).unwrap();
        assert_eq!(assemble(&m).unwrap().to_string(), "2^30·3^13·5^5·7^4·11^2·13^2·19·31");
        let s = bounds_over_primes(BoundKind::S, &RootSystem::E8, &FieldDescriptor::Rationals).unwrap();
        assert_eq!(assemble(&s).unwrap().to_string(), "2^30·3^13·5^6·7^5·11^2·13^2·17·19·31");
    }

    #[test]
    fn enumeration_over_finite_fields_matches_group_order() {
        // M-bound over F_q is the ℓ-part of |G(F_q)| for every ℓ ≠ p.
        let m = bounds_over_primes(BoundKind::M, &RootSystem::G2, &FieldDescriptor::FiniteField(2)).unwrap();
        let total = assemble(&m).unwrap();
        // |G_2(F_2)| = 2^6 · 3 · 63 = 12096; prime-to-2 part 189 = 3^3·7.
        assert_eq!(total.to_string(), "3^3·7");
        assert!(bounds_over_primes(BoundKind::M, &RootSystem::G2, &FieldDescriptor::RealField).is_err());
    }

    #[test]
    fn bound_value_json() {
        let b = BoundValue::finite(5, BoundSource::M);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"value":5,"source":"M"}"#);
        let i = BoundValue::infinite(BoundSource::Torus);
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"value":"inf","source":"Torus"}"#);
        assert_eq!(serde_json::from_str::<BoundValue>(&s).unwrap(), i);
    }
}
