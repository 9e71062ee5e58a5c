//! Property batteries run by `sgbound verify`. Each check sweeps a grid and
//! reports the first counterexample, if any.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    achievable_exponent, m_bound, m_bound_direct, minkowski_bound, minkowski_exponent, s_bound, schur_exponent,
    BoundExponent,
};
use crate::cyclo::{invariants, invariants_from_subgroup, CycloInvariants, FieldDescriptor, RootLevel, TwoAdicType};
use crate::error::{Error, Result};
use crate::exact_arith::primes::primes_up_to;
use crate::exact_arith::{bernoulli, v_ell_int, FactoredInteger};
use crate::mass::{mass, mass_denominator_exponent, mass_sign, mass_sign_predicted};
use crate::oracle::{
    bareiss_determinant, chevalley_order, enumerate_gl2_sylow, gl_order, kernel_valuation, phi_valuation_table,
    minkowski_prime, phi_valuation, schur_witness, sylow_exponent_formula, wreath_witness, KernelValuation,
};
use crate::root_data::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Suite names in the order they run.
pub const SUITES: &[&str] = &["bounds", "cyclo", "mass", "oracle", "root_data"];

type Outcome = std::result::Result<String, String>;

/// Runs `case` over `cases`; the first `Err` or failing case is the detail.
fn sweep<T: std::fmt::Debug>(cases: impl IntoIterator<Item = T>, mut case: impl FnMut(&T) -> Result<bool>) -> Outcome {
    let mut n = 0;
    for c in cases {
        match case(&c) {
            Ok(true) => n += 1,
            Ok(false) => return Err(format!("fails at {c:?}")),
            Err(e) => return Err(format!("{e} at {c:?}")),
        }
    }
    Ok(format!("{n} case{}", if n == 1 { "" } else { "s" }))
}

fn check(suite: &str, name: &str, outcome: Outcome) -> Check {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { suite: suite.into(), name: name.into(), passed, detail }
}

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    let checks = match name {
        "bounds" => bounds_suite(),
        "cyclo" => cyclo_suite(),
        "mass" => mass_suite(),
        "oracle" => oracle_suite(),
        "root_data" => root_data_suite(),
        _ => return Err(Error::Parse(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(checks.into_iter().map(|(n, o)| check(name, n, o)).collect())
}

pub fn run_all() -> Vec<Check> {
    SUITES.iter().flat_map(|s| run_suite(s).expect("known suite")).collect()
}

fn q_inv(ell: u64) -> Result<CycloInvariants> {
    invariants(&FieldDescriptor::Rationals, ell)
}

/// Every `(t, m, type)` with `m ≤ max_m` valid at `ell`.
pub fn invariant_grid(ell: u64, max_m: u32) -> Vec<CycloInvariants> {
    let mut out = Vec::new();
    if ell == 2 {
        for m in 2..=max_m {
            let m = RootLevel::Finite(m);
            out.push(CycloInvariants::new(2, 1, m, Some(TwoAdicType::A)).expect("valid"));
            out.push(CycloInvariants::new(2, 2, m, Some(TwoAdicType::B)).expect("valid"));
            out.push(CycloInvariants::new(2, 2, m, Some(TwoAdicType::C)).expect("valid"));
        }
        return out;
    }
    for t in (1..ell).filter(|t| (ell - 1) % t == 0) {
        for m in 1..=max_m {
            out.push(CycloInvariants::new(ell, t, RootLevel::Finite(m), None).expect("valid"));
        }
    }
    out
}

fn prime_powers_up_to(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&q| FactoredInteger::from_u64(q).map(|f| f.primes().count() == 1).unwrap_or(false))
        .collect()
}

fn bounds_suite() -> Vec<(&'static str, Outcome)> {
    let catalogue = RootSystem::catalogue(8);
    let mut out = Vec::new();
    const MINKOWSKI: [u64; 8] = [2, 24, 48, 5760, 11520, 2903040, 5806080, 1393459200];
    out.push((
        "minkowski_table",
        sweep(1..=8u64, |&n| Ok(minkowski_bound(n).to_u64() == Some(MINKOWSKI[n as usize - 1]))),
    ));
    out.push((
        "minkowski_ratio_law",
        sweep(2..=30u64, |&n| {
            let ratio = minkowski_bound(n).checked_div(&minkowski_bound(n - 1));
            let expected = if n % 2 == 1 {
                BigInt::from(2)
            } else {
                (bernoulli(n as u32) / BigRational::from_integer(BigInt::from(n))).denom().clone()
            };
            Ok(ratio.map(|r| BigInt::from(r.value())) == Some(expected))
        }),
    ));
    out.push((
        "minkowski_digit_identity",
        sweep(primes_up_to(97).into_iter().flat_map(|l| (1..=200u64).map(move |n| (n, l))), |&(n, ell)| {
            let (mut q, mut i, mut total) = (n / (ell - 1), 0u32, 0u64);
            while q > 0 {
                total += (q % ell) * (ell.pow(i + 1) - 1) / (ell - 1);
                q /= ell;
                i += 1;
            }
            Ok(total == minkowski_exponent(n, ell))
        }),
    ));
    out.push((
        "schur_reduces_to_minkowski",
        sweep(primes_up_to(41).into_iter().flat_map(|l| (1..=40u64).map(move |n| (n, l))), |&(n, ell)| {
            Ok(schur_exponent(n, &q_inv(ell)?)? == minkowski_exponent(n, ell))
        }),
    ));
    out.push((
        "m_bound_at_most_s_bound",
        sweep(
            primes_up_to(31)
                .into_iter()
                .flat_map(|l| invariant_grid(l, 5))
                .flat_map(|inv| catalogue.iter().map(move |r| (*r, inv))),
            |(r, inv)| Ok(m_bound(r, inv).value <= s_bound(r, inv)?.value),
        ),
    ));
    out.push((
        "m_bound_matches_direct",
        sweep(
            primes_up_to(31)
                .into_iter()
                .flat_map(|l| invariant_grid(l, 4))
                .flat_map(|inv| catalogue.iter().map(move |r| (*r, inv)))
                .filter(|(r, inv)| r.a_t(inv.t()) > 0),
            |(r, inv)| {
                let closed = m_bound(r, inv).value;
                let k = crate::bounds::default_precision(r, inv)?;
                Ok(BoundExponent::Finite(m_bound_direct(r, inv, k, 20)?) == closed)
            },
        ),
    ));
    out.push((
        "m_bound_over_finite_fields",
        sweep(
            prime_powers_up_to(64)
                .into_iter()
                .flat_map(|q| primes_up_to(31).into_iter().filter(move |l| q % l != 0).map(move |l| (q, l)))
                .flat_map(|(q, l)| catalogue.iter().map(move |r| (*r, q, l))),
            |&(r, q, ell)| {
                let inv = invariants(&FieldDescriptor::FiniteField(q), ell)?;
                let mut direct = 0;
                for d in r.degrees() {
                    direct += v_ell_int(&(BigInt::from(q).pow(d as u32) - 1), ell)?;
                }
                Ok(m_bound(&r, &inv).value == BoundExponent::Finite(direct))
            },
        ),
    ));
    out.push((
        "achievable_at_most_m_bound",
        sweep(
            primes_up_to(31)
                .into_iter()
                .flat_map(|l| invariant_grid(l, 4))
                .flat_map(|inv| catalogue.iter().map(move |r| (*r, inv))),
            |(r, inv)| {
                let a = achievable_exponent(r, inv)?;
                let m = m_bound(r, inv).value;
                Ok(BoundExponent::Finite(a.value) <= m && a.optimal == (BoundExponent::Finite(a.value) == m))
            },
        ),
    ));
    out
}

fn cyclo_suite() -> Vec<(&'static str, Outcome)> {
    vec![(
        "finite_field_rule_matches_subgroup",
        sweep(
            (2..200u64).flat_map(|q| [2u64, 3, 5, 7, 11, 13].into_iter().map(move |l| (q, l))),
            |&(q, ell)| {
                if q % ell == 0 || FactoredInteger::from_u64(q)?.primes().count() != 1 {
                    return Ok(true);
                }
                let inv = invariants(&FieldDescriptor::FiniteField(q), ell)?;
                let k = inv.m().finite().expect("finite field") + 3;
                Ok(invariants_from_subgroup(&[BigInt::from(q)], ell, k)?.matches(&inv))
            },
        ),
    )]
}

fn mass_suite() -> Vec<(&'static str, Outcome)> {
    let rat = |n: u64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let mut out = Vec::new();
    out.push(("g2_mass", sweep([RootSystem::G2], |r| Ok(mass(r)? == rat(1, 12096)))));
    out.push((
        "f4_mass",
        sweep([RootSystem::F4], |r| {
            let den = FactoredInteger::from_pairs([(2, 15), (3, 6), (5, 2), (7, 2), (13, 1)])?;
            Ok(mass(r)? == BigRational::new(BigInt::from(691), den.value().into()))
        }),
    ));
    out.push((
        "denominator_matches_m_bound",
        sweep(
            [RootSystem::G2, RootSystem::F4, RootSystem::E8]
                .into_iter()
                .flat_map(|r| primes_up_to(61).into_iter().map(move |l| (r, l))),
            |(r, ell)| {
                let (v, b) = mass_denominator_exponent(r, *ell)?;
                Ok(v == b)
            },
        ),
    ));
    out.push((
        "sign_law",
        sweep(RootSystem::catalogue(8).into_iter().filter(|r| mass(r).is_ok()), |r| {
            Ok(mass_sign(r)? == mass_sign_predicted(r))
        }),
    ));
    out.push((
        "g2_order_is_inverse_mass",
        sweep([RootSystem::G2], |r| {
            let order = chevalley_order(r, 2)?;
            Ok(mass(r)? * BigRational::from_integer(order.value().into()) == rat(1, 1))
        }),
    ));
    out
}

fn oracle_suite() -> Vec<(&'static str, Outcome)> {
    let mut out = Vec::new();
    out.push((
        "gl_order_matches_pseudo_type",
        sweep(
            (1..=6u32).flat_map(|n| prime_powers_up_to(16).into_iter().map(move |q| (n, q))),
            |&(n, q)| Ok(gl_order(n as u64, q)? == chevalley_order(&RootSystem::GL(n), q)?),
        ),
    ));
    out.push((
        "gl2_enumeration",
        sweep(
            [2u64, 3, 5, 7].into_iter().flat_map(|p| [2u64, 3, 5, 7].into_iter().filter(move |&l| l != p).map(move |l| (p, l))),
            |&(p, ell)| Ok(enumerate_gl2_sylow(p, ell)? as u32 == gl_order(2, p)?.exponent(ell)),
        ),
    ));
    out.push((
        "wreath_witness_is_optimal",
        sweep(primes_up_to(13).into_iter().flat_map(|l| (1..=30u64).map(move |n| (n, l))), |&(n, ell)| {
            Ok(wreath_witness(n, ell)?.1 == minkowski_exponent(n, ell))
        }),
    ));
    out.push((
        "schur_witness_matches_sl",
        sweep(
            primes_up_to(13)
                .into_iter()
                .skip(1)
                .flat_map(|l| invariant_grid(l, 3))
                .filter(|inv| inv.t() <= 12)
                .flat_map(|inv| (1..=10u64).map(move |big_n| (inv, big_n))),
            |&(inv, big_n)| {
                let (va, va1) = schur_witness(big_n, &inv)?;
                let t = inv.t();
                let mut ok = true;
                for n in (big_n * t..big_n * t + t).filter(|&n| n >= 2) {
                    let b = m_bound(&RootSystem::A(n as u32 - 1), &inv).value;
                    ok &= b == BoundExponent::Finite(if t >= 2 { va } else { va1 });
                }
                Ok(ok)
            },
        ),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    out.push((
        "kernel_valuation_is_det_valuation",
        sweep((1..=4usize).flat_map(|n| [2u64, 3, 5, 7].into_iter().map(move |l| (n, l))), |&(n, ell)| {
            let mut hits = 0;
            while hits < 100 {
                let u: Vec<Vec<BigInt>> =
                    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-50i64..50))).collect()).collect();
                let det = bareiss_determinant(&u)?;
                if det == BigInt::from(0) {
                    continue;
                }
                let v = v_ell_int(&det, ell)?;
                if kernel_valuation(&u, ell, v as u32 + 1)? != KernelValuation::Finite(v) {
                    return Ok(false);
                }
                hits += 1;
            }
            Ok(true)
        }),
    ));
    out.push((
        "phi_valuation_table",
        sweep(
            [3u64, 5, 7, 11, 13]
                .into_iter()
                .flat_map(|l| invariant_grid(l, 3))
                .flat_map(|inv| (1..=100u64).map(move |d| (inv, d))),
            |(inv, d)| {
                let m = inv.m().finite().expect("finite grid");
                Ok(phi_valuation(*d, inv, m + 6)? == phi_valuation_table(*d, inv.t(), m as u64, inv.ell()))
            },
        ),
    ));
    out.push((
        "generator_prime_reproduces_minkowski",
        sweep([3u64, 5, 7, 11, 13].into_iter().flat_map(|l| (1..=20u64).map(move |n| (n, l))), |&(n, ell)| {
            Ok(sylow_exponent_formula(n, minkowski_prime(ell)?, ell)? == minkowski_exponent(n, ell))
        }),
    ));
    out
}

fn root_data_suite() -> Vec<(&'static str, Outcome)> {
    let exceptions: [(RootSystem, &[u64]); 5] = [
        (RootSystem::G2, &[]),
        (RootSystem::F4, &[]),
        (RootSystem::E6, &[5]),
        (RootSystem::E7, &[4, 5, 8, 10, 12]),
        (RootSystem::E8, &[7, 9, 14, 18]),
    ];
    vec![
        (
            "regular_numbers",
            sweep(exceptions, |(r, bad)| {
                let degrees = r.degrees();
                let mut divisors: Vec<u64> =
                    (1..=r.coxeter_number()).filter(|t| degrees.iter().any(|d| d % t == 0)).collect();
                divisors.retain(|&t| !r.is_regular_number(t));
                Ok(divisors == *bad)
            }),
        ),
        (
            "degree_identities",
            sweep(RootSystem::catalogue(12), |r| {
                let d = r.degrees();
                let h = r.coxeter_number();
                let symmetric = d.iter().zip(d.iter().rev()).all(|(a, b)| a + b == h + 2);
                let product: u64 = d.iter().product();
                let weyl = r.weyl_order().to_u64() == Some(product);
                let dims = r.dimension() == r.rank() as u64 * (h + 1);
                Ok(symmetric && weyl && dims)
            }),
        ),
    ]
}
