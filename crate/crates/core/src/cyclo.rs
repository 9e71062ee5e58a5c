//! Cyclotomic invariants `(t, m)` of a field at a prime `ℓ`, and for `ℓ = 2`
//! the shape (a), (b) or (c) of the image of the cyclotomic character.
//!
//! For `ℓ` odd the image is `C_t × (1 + ℓ^m Z_ℓ)`. For `ℓ = 2` it is one of
//! `⟨1 + 2^m⟩` (type a, `t = 1`), `⟨-1 + 2^m⟩` (type b, `t = 2`) or
//! `⟨-1, 1 + 2^m⟩` (type c, `t = 2`), with `m ≥ 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, validation, Error, Result};
use crate::exact_arith::primes::{factor_u64, is_prime, multiplicative_order};
use crate::exact_arith::{v_ell_int, v_ell_u64, PadicApprox, PadicValuation};

/// The invariant `m`: finite, or `∞` when the field contains all `ℓ`-power
/// roots of unity up to a finite extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLevel {
    Finite(u32),
    Infinite,
}

impl RootLevel {
    pub fn finite(self) -> Option<u32> {
        match self {
            RootLevel::Finite(m) => Some(m),
            RootLevel::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == RootLevel::Infinite
    }
}

impl fmt::Display for RootLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLevel::Finite(m) => write!(f, "{m}"),
            RootLevel::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for RootLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "∞" => Ok(RootLevel::Infinite),
            _ => s
                .parse()
                .map(RootLevel::Finite)
                .map_err(|_| Error::Parse(format!("bad value for m: {s:?}"))),
        }
    }
}

impl Serialize for RootLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RootLevel::Finite(m) => s.serialize_u32(*m),
            RootLevel::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RootLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u32),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(m) => Ok(RootLevel::Finite(m)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoAdicType {
    A,
    B,
    C,
}

impl fmt::Display for TwoAdicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoAdicType::A => "a",
            TwoAdicType::B => "b",
            TwoAdicType::C => "c",
        })
    }
}

impl FromStr for TwoAdicType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(TwoAdicType::A),
            "b" => Ok(TwoAdicType::B),
            "c" => Ok(TwoAdicType::C),
            _ => Err(Error::Parse(format!("type must be a, b or c, got {s:?}"))),
        }
    }
}

/// Validated `(ℓ, t, m, type)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInvariants", into = "RawInvariants")]
pub struct CycloInvariants {
    ell: u64,
    t: u64,
    m: RootLevel,
    two_type: Option<TwoAdicType>,
}

#[derive(Serialize, Deserialize)]
struct RawInvariants {
    ell: u64,
    t: u64,
    m: RootLevel,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    two_type: Option<TwoAdicType>,
}

impl TryFrom<RawInvariants> for CycloInvariants {
    type Error = Error;

    fn try_from(r: RawInvariants) -> Result<Self> {
        CycloInvariants::new(r.ell, r.t, r.m, r.two_type)
    }
}

impl From<CycloInvariants> for RawInvariants {
    fn from(c: CycloInvariants) -> Self {
        RawInvariants { ell: c.ell, t: c.t, m: c.m, two_type: c.two_type }
    }
}

impl CycloInvariants {
    /// Validates and canonicalizes. For `ℓ = 2` a missing type is filled in
    /// when it is forced (`t = 1` gives (a); `t = 2, m = ∞` gives (b), since
    /// (b) and (c) coincide there).
    pub fn new(ell: u64, t: u64, m: RootLevel, two_type: Option<TwoAdicType>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(domain(format!("{ell} is not prime")));
        }
        if t == 0 {
            return Err(validation("t must be at least 1"));
        }
        if ell != 2 {
            if (ell - 1) % t != 0 {
                return Err(validation(format!("t = {t} does not divide {ell} - 1")));
            }
            if two_type.is_some() {
                return Err(validation("the a/b/c type only applies to ℓ = 2"));
            }
            if m == RootLevel::Finite(0) {
                return Err(validation("m must be at least 1"));
            }
            return Ok(Self { ell, t, m, two_type: None });
        }
        if let RootLevel::Finite(mm) = m {
            if mm < 2 {
                return Err(validation("for ℓ = 2, m must be at least 2"));
            }
        }
        let two_type = match (t, m, two_type) {
            (1, _, None | Some(TwoAdicType::A)) => TwoAdicType::A,
            (1, _, Some(other)) => {
                return Err(validation(format!("t = 1 forces type a, got type {other}")))
            }
            (2, _, Some(TwoAdicType::A)) => {
                return Err(validation("type a requires t = 1"));
            }
            (2, RootLevel::Infinite, _) => TwoAdicType::B,
            (2, RootLevel::Finite(_), Some(ty)) => ty,
            (2, RootLevel::Finite(_), None) => {
                return Err(validation("ℓ = 2 with t = 2 and finite m requires a type (b or c)"))
            }
            _ => return Err(validation(format!("for ℓ = 2, t must be 1 or 2, got {t}"))),
        };
        Ok(Self { ell, t, m, two_type: Some(two_type) })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn m(&self) -> RootLevel {
        self.m
    }

    pub fn two_type(&self) -> Option<TwoAdicType> {
        self.two_type
    }
}

/// Renders as `t=1 m=3 type=a` (type only for `ℓ = 2`).
impl fmt::Display for CycloInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} m={}", self.t, self.m)?;
        if let Some(ty) = self.two_type {
            write!(f, " type={ty}")?;
        }
        Ok(())
    }
}

/// The fields this crate knows how to compute invariants for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    RealField,
    SeparablyClosed,
    FiniteField(u64),
    PadicField(u64),
    CyclotomicField(u64),
    Explicit {
        t: u64,
        m: RootLevel,
        two_type: Option<TwoAdicType>,
    },
}

impl FieldDescriptor {
    /// Checks the descriptor's own invariants (prime powers, primes, `N ≥ 1`).
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldDescriptor::FiniteField(q) => {
                if q < 2 || factor_u64(q).len() != 1 {
                    return Err(validation(format!("{q} is not a prime power")));
                }
            }
            FieldDescriptor::PadicField(p) => {
                if !is_prime(p) {
                    return Err(validation(format!("{p} is not prime")));
                }
            }
            FieldDescriptor::CyclotomicField(n) => {
                if n == 0 {
                    return Err(validation("cyclotomic index must be at least 1"));
                }
            }
            FieldDescriptor::Explicit { t, m, .. } => {
                if t == 0 {
                    return Err(validation("t must be at least 1"));
                }
                if m == RootLevel::Finite(0) {
                    return Err(validation("m must be at least 1"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::RealField => f.write_str("R"),
            FieldDescriptor::SeparablyClosed => f.write_str("Qbar"),
            FieldDescriptor::FiniteField(q) => write!(f, "F:{q}"),
            FieldDescriptor::PadicField(p) => write!(f, "Qp:{p}"),
            FieldDescriptor::CyclotomicField(n) => write!(f, "QzN:{n}"),
            FieldDescriptor::Explicit { t, m, two_type } => {
                write!(f, "explicit:t={t},m={m}")?;
                if let Some(ty) = two_type {
                    write!(f, ",type={ty}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_num(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("{what} must be a positive integer, got {s:?}")))
}

/// Grammar: `Q`, `R`, `Qbar`, `F:<q>`, `Qp:<p>`, `QzN:<N>`,
/// `explicit:t=<t>,m=<m|inf>[,type=<a|b|c>]`.
impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let field = match s {
            "Q" => FieldDescriptor::Rationals,
            "R" => FieldDescriptor::RealField,
            "Qbar" => FieldDescriptor::SeparablyClosed,
            _ => {
                let (head, rest) = s
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("unknown field descriptor {s:?}")))?;
                match head {
                    "F" => FieldDescriptor::FiniteField(parse_num(rest, "q")?),
                    "Qp" => FieldDescriptor::PadicField(parse_num(rest, "p")?),
                    "QzN" => FieldDescriptor::CyclotomicField(parse_num(rest, "N")?),
                    "explicit" => parse_explicit(rest)?,
                    _ => return Err(Error::Parse(format!("unknown field descriptor {s:?}"))),
                }
            }
        };
        field.validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(field)
    }
}

fn parse_explicit(body: &str) -> Result<FieldDescriptor> {
    let mut t = None;
    let mut m = None;
    let mut two_type = None;
    for part in body.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        match key {
            "t" if t.is_none() => t = Some(parse_num(value, "t")?),
            "m" if m.is_none() => m = Some(value.parse::<RootLevel>()?),
            "type" if two_type.is_none() => two_type = Some(value.parse::<TwoAdicType>()?),
            _ => return Err(Error::Parse(format!("unexpected or repeated key {key:?}"))),
        }
    }
    Ok(FieldDescriptor::Explicit {
        t: t.ok_or_else(|| Error::Parse("explicit field needs t=".into()))?,
        m: m.ok_or_else(|| Error::Parse("explicit field needs m=".into()))?,
        two_type,
    })
}

fn finite_field_invariants(q: u64, ell: u64) -> Result<CycloInvariants> {
    if q % ell == 0 {
        return Err(domain(format!("ℓ = {ell} divides q = {q}")));
    }
    if ell == 2 {
        return if q % 4 == 1 {
            let m = v_ell_u64(q - 1, 2)? as u32;
            CycloInvariants::new(2, 1, RootLevel::Finite(m), Some(TwoAdicType::A))
        } else {
            let m = v_ell_u64(q + 1, 2)? as u32;
            CycloInvariants::new(2, 2, RootLevel::Finite(m), Some(TwoAdicType::B))
        };
    }
    let t = multiplicative_order(q % ell, ell).expect("q is a unit mod ℓ");
    let qt_minus_1 = BigInt::from(BigUint::from(q).pow(t as u32)) - 1;
    let m = v_ell_int(&qt_minus_1, ell)? as u32;
    CycloInvariants::new(ell, t, RootLevel::Finite(m), None)
}

/// `(t, m, type)` of `field` at `ℓ`.
pub fn invariants(field: &FieldDescriptor, ell: u64) -> Result<CycloInvariants> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    field.validate()?;
    let rationals = || {
        if ell == 2 {
            CycloInvariants::new(2, 2, RootLevel::Finite(2), Some(TwoAdicType::C))
        } else {
            CycloInvariants::new(ell, ell - 1, RootLevel::Finite(1), None)
        }
    };
    match *field {
        FieldDescriptor::Rationals => rationals(),
        FieldDescriptor::PadicField(p) if p == ell => rationals(),
        // Unramified ℓ-cyclotomic tower: Im χ is the closure of ⟨p⟩.
        FieldDescriptor::PadicField(p) => finite_field_invariants(p, ell),
        FieldDescriptor::FiniteField(q) => finite_field_invariants(q, ell),
        FieldDescriptor::RealField => CycloInvariants::new(
            ell,
            2,
            RootLevel::Infinite,
            (ell == 2).then_some(TwoAdicType::B),
        ),
        FieldDescriptor::SeparablyClosed => CycloInvariants::new(
            ell,
            1,
            RootLevel::Infinite,
            (ell == 2).then_some(TwoAdicType::A),
        ),
        FieldDescriptor::CyclotomicField(n) => {
            // Q(ζ_N) ∩ Q(ζ_{ℓ^∞}) = Q(ζ_{ℓ^a}).
            let n = if ell == 2 && n % 4 == 2 { n / 2 } else { n };
            let a = v_ell_u64(n, ell)? as u32;
            if ell == 2 {
                if a <= 1 {
                    CycloInvariants::new(2, 2, RootLevel::Finite(2), Some(TwoAdicType::C))
                } else {
                    CycloInvariants::new(2, 1, RootLevel::Finite(a), Some(TwoAdicType::A))
                }
            } else if a == 0 {
                rationals()
            } else {
                CycloInvariants::new(ell, 1, RootLevel::Finite(a), None)
            }
        }
        FieldDescriptor::Explicit { t, m, two_type } => CycloInvariants::new(ell, t, m, two_type),
    }
}

/// `m` as read off a finite-level image: conclusive only below the ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupLevel {
    Exact(u32),
    AtLeast(u32),
}

impl fmt::Display for SubgroupLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupLevel::Exact(m) => write!(f, "{m}"),
            SubgroupLevel::AtLeast(m) => write!(f, "≥{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupInvariants {
    pub t: u64,
    pub m: SubgroupLevel,
    /// For `ℓ = 2`; at the precision ceiling (b) and (c) are indistinguishable
    /// and (b) is reported.
    pub two_type: Option<TwoAdicType>,
}

impl SubgroupInvariants {
    /// True when this finite-level reading is consistent with `inv`.
    pub fn matches(&self, inv: &CycloInvariants) -> bool {
        let m_ok = match (self.m, inv.m()) {
            (SubgroupLevel::Exact(a), RootLevel::Finite(b)) => a == b,
            (SubgroupLevel::AtLeast(a), RootLevel::Finite(b)) => b >= a,
            (SubgroupLevel::AtLeast(_), RootLevel::Infinite) => true,
            (SubgroupLevel::Exact(_), RootLevel::Infinite) => false,
        };
        let type_ok = match self.m {
            SubgroupLevel::Exact(_) => self.two_type == inv.two_type(),
            // (b) and (c) merge at the ceiling.
            SubgroupLevel::AtLeast(_) => (self.two_type == Some(TwoAdicType::A))
                == (inv.two_type() == Some(TwoAdicType::A)),
        };
        self.t == inv.t() && m_ok && type_ok
    }
}

fn ceiling(v: PadicValuation, k: u32) -> SubgroupLevel {
    match v {
        PadicValuation::Exact(m) if m + 2 <= k => SubgroupLevel::Exact(m),
        _ => SubgroupLevel::AtLeast(k - 1),
    }
}

fn min_valuation(vals: impl Iterator<Item = PadicValuation>, k: u32) -> PadicValuation {
    vals.fold(PadicValuation::AtLeast(k), |acc, v| match (acc, v) {
        (PadicValuation::AtLeast(_), x) => x,
        (PadicValuation::Exact(a), PadicValuation::Exact(b)) => PadicValuation::Exact(a.min(b)),
        (a, PadicValuation::AtLeast(_)) => a,
    })
}

/// Reads `(t, m, type)` off the subgroup of `(Z/ℓ^K)^*` generated by
/// `generators`. `m` is only conclusive when it is at most `K - 2`;
/// otherwise `≥ K - 1` is reported.
pub fn invariants_from_subgroup(generators: &[BigInt], ell: u64, k: u32) -> Result<SubgroupInvariants> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    let min_k = if ell == 2 { 3 } else { 2 };
    if k < min_k {
        return Err(domain(format!("precision K = {k} is too small (need at least {min_k})")));
    }
    let gens = generators
        .iter()
        .map(|g| PadicApprox::new(ell, k, g.clone()))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = gens.iter().find(|g| !g.is_unit()) {
        return Err(domain(format!("generator {} is not a unit mod {ell}", bad.residue())));
    }
    let minus_one = |x: &PadicApprox| x.add_int(-1).valuation();

    if ell != 2 {
        let ell_big = BigUint::from(ell);
        let t = gens.iter().fold(1u64, |acc, g| {
            let r: u64 = (g.residue() % &ell_big).try_into().expect("residue below ℓ");
            acc.lcm(&multiplicative_order(r, ell).expect("unit"))
        });
        // v(g^{ℓ-1} - 1) is the valuation of the pro-ℓ part of g.
        let m = min_valuation(gens.iter().map(|g| minus_one(&g.pow(ell - 1))), k);
        return Ok(SubgroupInvariants { t, m: ceiling(m, k), two_type: None });
    }

    let is_positive = |g: &PadicApprox| g.residue() % 4u32 == BigUint::from(1u32);
    let Some(g0) = gens.iter().find(|g| !is_positive(g)) else {
        let m = min_valuation(gens.iter().map(minus_one), k);
        return Ok(SubgroupInvariants {
            t: 1,
            m: ceiling(m, k),
            two_type: Some(TwoAdicType::A),
        });
    };
    let u0 = g0.neg();
    let g0_inv = g0.inverse()?;
    // Generators of H ∩ (1 + 4Z).
    let units = gens.iter().map(|g| {
        if is_positive(g) {
            g.clone()
        } else {
            g.mul(&g0_inv)
        }
    });
    let mu = min_valuation(units.chain(std::iter::once(u0.pow(2))).map(|u| minus_one(&u)), k);
    let v0 = minus_one(&u0);
    let contains_minus_one = match (v0, mu) {
        (PadicValuation::AtLeast(_), _) => true,
        (PadicValuation::Exact(_), PadicValuation::AtLeast(_)) => false,
        (PadicValuation::Exact(a), PadicValuation::Exact(b)) => a >= b,
    };
    let (m, ty) = if contains_minus_one {
        (mu, TwoAdicType::C)
    } else {
        (v0, TwoAdicType::B)
    };
    let m = ceiling(m, k);
    let ty = if matches!(m, SubgroupLevel::AtLeast(_)) { TwoAdicType::B } else { ty };
    Ok(SubgroupInvariants { t: 2, m, two_type: Some(ty) })
}
