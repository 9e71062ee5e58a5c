//! The mass `Π ζ(1 - d_i)/2` of a split group over `Q` and its denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::bounds::{m_bound, BoundExponent};
use crate::cyclo::{invariants, FieldDescriptor};
use crate::error::{domain, Result};
use crate::exact_arith::{bernoulli, is_prime, v_ell_int, FactoredInteger};
use crate::root_data::RootSystem;

/// `χ(Γ)` for `E_8` is `c · mass(E_8)` with this `c`.
pub const E8_EULER_FACTOR: u64 = 3 * 3 * 3 * 5;

/// `ζ(1 - d) = -B_d / d` for even `d ≥ 2`.
pub fn zeta_neg(d: u64) -> Result<BigRational> {
    if d < 2 || d % 2 == 1 {
        return Err(domain(format!("ζ(1 - d) is only tabulated for even d ≥ 2, got d = {d}")));
    }
    let d32 = u32::try_from(d).map_err(|_| domain("degree too large"))?;
    Ok(-bernoulli(d32) / BigRational::from_integer(BigInt::from(d)))
}

/// `Π ζ(1 - d_i)/2`. Every degree must be even, so `A_r` (`r ≥ 2`), `D_r`
/// (`r` odd), `E_6` and `GL_n` are refused.
pub fn mass(root: &RootSystem) -> Result<BigRational> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = BigRational::from_integer(BigInt::from(1));
    for d in root.degrees() {
        if d % 2 == 1 {
            return Err(domain(format!("{root} has odd degree {d}; its mass is undefined")));
        }
        out *= zeta_neg(d)? * &half;
    }
    Ok(out)
}

/// Positive iff an even number of degrees are `≡ 2 mod 4`.
pub fn mass_sign_predicted(root: &RootSystem) -> i32 {
    let twos = root.degrees().into_iter().filter(|d| d % 4 == 2).count();
    if twos % 2 == 0 { 1 } else { -1 }
}

pub fn mass_sign(root: &RootSystem) -> Result<i32> {
    let m = mass(root)?;
    Ok(if m.is_positive() { 1 } else { -1 })
}

/// The denominator of the mass, factored.
pub fn mass_denominator(root: &RootSystem) -> Result<FactoredInteger> {
    let m = mass(root)?;
    let den = m.denom().to_biguint().expect("denominators are positive");
    FactoredInteger::from_biguint(&den)
}

/// `(v_ℓ(den mass), M-bound over Q at ℓ)`.
pub fn mass_denominator_exponent(root: &RootSystem, ell: u64) -> Result<(u64, u64)> {
    if !is_prime(ell) {
        return Err(domain(format!("{ell} is not prime")));
    }
    let m = mass(root)?;
    let v = v_ell_int(m.denom(), ell)?;
    let inv = invariants(&FieldDescriptor::Rationals, ell)?;
    let BoundExponent::Finite(b) = m_bound(root, &inv).value else {
        unreachable!("m is finite over Q");
    };
    Ok((v, b))
}

/// `Σ_i v_ℓ(den(ζ(1 - d_i)/2))`, termwise, before any cancellation with numerators.
pub fn half_zeta_denominator_exponent(root: &RootSystem, ell: u64) -> Result<u64> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut total = 0;
    for d in root.degrees() {
        let z = zeta_neg(d)? * &half;
        total += v_ell_int(z.denom(), ell)?;
    }
    Ok(total)
}

/// `c · mass(root)`.
pub fn euler_characteristic(root: &RootSystem, c: &FactoredInteger) -> Result<BigRational> {
    Ok(mass(root)? * BigRational::from_integer(c.value().into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(2).unwrap(), rat(-1, 12));
        assert_eq!(zeta_neg(4).unwrap(), rat(1, 120));
        assert_eq!(zeta_neg(6).unwrap(), rat(-1, 252));
        // ζ(-11) = 691/32760 > 0.
        assert_eq!(zeta_neg(12).unwrap(), rat(691, 32760));
        assert!(zeta_neg(3).is_err());
        assert!(zeta_neg(0).is_err());
    }

    #[test]
    fn small_masses() {
        assert_eq!(mass(&RootSystem::A(1)).unwrap(), rat(-1, 24));
        assert_eq!(mass(&RootSystem::G2).unwrap(), rat(1, 12096));
        assert!(mass(&RootSystem::A(2)).is_err());
        assert!(mass(&RootSystem::E6).is_err());
        assert!(mass(&RootSystem::GL(2)).is_err());
    }

    #[test]
    fn f4_mass() {
        let expected = rat(691, 1) / BigRational::from_integer(
            FactoredInteger::from_pairs([(2, 15), (3, 6), (5, 2), (7, 2), (13, 1)]).unwrap().value().into(),
        );
        assert_eq!(mass(&RootSystem::F4).unwrap(), expected);
    }

    #[test]
    fn e8_denominator() {
        assert_eq!(
            mass_denominator(&RootSystem::E8).unwrap().to_string(),
            "2^30·3^13·5^5·7^4·11^2·13^2·19·31"
        );
        for ell in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let (v, b) = mass_denominator_exponent(&RootSystem::E8, ell).unwrap();
            assert_eq!(v, b, "ℓ = {ell}");
        }
    }

    #[test]
    fn denominator_exponent_examples() {
        assert_eq!(mass_denominator_exponent(&RootSystem::E8, 5).unwrap(), (5, 5));
        assert_eq!(mass_denominator_exponent(&RootSystem::F4, 13).unwrap(), (1, 1));
        assert_eq!(mass_denominator_exponent(&RootSystem::F4, 691).unwrap(), (0, 0));
        assert!(mass_denominator_exponent(&RootSystem::A(2), 3).is_err());
        for ell in [2, 3, 5, 7, 11, 13] {
            let (_, b) = mass_denominator_exponent(&RootSystem::E8, ell).unwrap();
            assert_eq!(half_zeta_denominator_exponent(&RootSystem::E8, ell).unwrap(), b);
        }
    }

    #[test]
    fn f4_two_classes() {
        let a = FactoredInteger::from_pairs([(2, 15), (3, 6), (5, 2), (7, 1)]).unwrap().value();
        let b = FactoredInteger::from_pairs([(2, 12), (3, 5), (7, 2), (13, 1)]).unwrap().value();
        let sum = BigRational::new(BigInt::from(1), a.into()) + BigRational::new(BigInt::from(1), b.into());
        assert_eq!(sum, mass(&RootSystem::F4).unwrap());
    }

    #[test]
    fn signs() {
        for r in RootSystem::catalogue(8) {
            if let Ok(s) = mass_sign(&r) {
                assert_eq!(s, mass_sign_predicted(&r), "{r}");
            }
        }
        assert_eq!(mass_sign(&RootSystem::A(1)).unwrap(), -1);
        assert_eq!(mass_sign(&RootSystem::B(2)).unwrap(), -1);
        assert_eq!(mass_sign(&RootSystem::E7).unwrap(), -1);
        assert_eq!(mass_sign(&RootSystem::E8).unwrap(), 1);
    }

    #[test]
    fn euler_characteristic_of_e8() {
        let c = FactoredInteger::from_u64(E8_EULER_FACTOR).unwrap();
        let chi = euler_characteristic(&RootSystem::E8, &c).unwrap();
        assert_eq!(chi, mass(&RootSystem::E8).unwrap() * rat(135, 1));
        let den = FactoredInteger::from_biguint(&chi.denom().to_biguint().unwrap()).unwrap();
        assert_eq!(den.to_string(), "2^30·3^10·5^4·7^4·11^2·13^2·19·31");
        let one = FactoredInteger::one();
        assert_eq!(euler_characteristic(&RootSystem::G2, &one).unwrap(), mass(&RootSystem::G2).unwrap());
        let two = FactoredInteger::from_u64(2).unwrap();
        assert_eq!(
            euler_characteristic(&RootSystem::F4, &two).unwrap(),
            mass(&RootSystem::F4).unwrap() * rat(2, 1)
        );
    }
}
