//! Invariant degrees of irreducible root systems and the constants derived
//! from them, plus `GL_n` carried as a pseudo-type with degrees `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::exact_arith::{v_ell_u64, FactoredInteger};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootSystem {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    /// `GL_n`: not a root system, but the degrees `1..=n` make every
    /// degree-based formula reproduce the general linear group.
    GL(u32),
}

impl RootSystem {
    /// Checks the rank floor of the classical families.
    pub fn new(self) -> Result<Self> {
        let ok = match self {
            RootSystem::A(r) | RootSystem::GL(r) => r >= 1,
            RootSystem::B(r) | RootSystem::C(r) => r >= 2,
            RootSystem::D(r) => r >= 3,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(validation(format!("rank too small for {self}")))
        }
    }

    pub fn is_gl(&self) -> bool {
        matches!(self, RootSystem::GL(_))
    }

    pub fn rank(&self) -> u32 {
        match *self {
            RootSystem::A(r) | RootSystem::B(r) | RootSystem::C(r) | RootSystem::D(r) => r,
            RootSystem::GL(n) => n,
            RootSystem::E6 => 6,
            RootSystem::E7 => 7,
            RootSystem::E8 => 8,
            RootSystem::F4 => 4,
            RootSystem::G2 => 2,
        }
    }

    /// Invariant degrees `d_1 ≤ … ≤ d_r`.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = match *self {
            RootSystem::A(r) => (2..=r as u64 + 1).collect(),
            RootSystem::B(r) | RootSystem::C(r) => (1..=r as u64).map(|i| 2 * i).collect(),
            RootSystem::D(r) => (1..r as u64).map(|i| 2 * i).chain([r as u64]).collect(),
            RootSystem::E6 => vec![2, 5, 6, 8, 9, 12],
            RootSystem::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            RootSystem::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            RootSystem::F4 => vec![2, 6, 8, 12],
            RootSystem::G2 => vec![2, 6],
            RootSystem::GL(n) => (1..=n as u64).collect(),
        };
        d.sort_unstable();
        d
    }

    /// `|W| = Π d_i`; for `GL_n` this is `|S_n| = n!`.
    pub fn weyl_order(&self) -> FactoredInteger {
        self.degrees()
            .into_iter()
            .map(|d| FactoredInteger::from_u64(d).expect("degrees are positive"))
            .product()
    }

    /// `v_ℓ(Π d_i)`.
    pub fn weyl_valuation(&self, ell: u64) -> u64 {
        self.degrees()
            .into_iter()
            .map(|d| v_ell_u64(d, ell).expect("ℓ validated by caller"))
            .sum()
    }

    /// `h = d_r`.
    pub fn coxeter_number(&self) -> u64 {
        *self.degrees().last().expect("rank ≥ 1")
    }

    /// `a(t)`: the number of degrees divisible by `t`.
    pub fn a_t(&self, t: u64) -> u64 {
        assert!(t >= 1, "a(t) needs t ≥ 1");
        self.degrees().into_iter().filter(|d| d % t == 0).count() as u64
    }

    /// `(r_0, r_1)`: how many degrees are even and odd.
    pub fn parity_counts(&self) -> (u64, u64) {
        let even = self.degrees().into_iter().filter(|d| d % 2 == 0).count() as u64;
        (even, self.rank() as u64 - even)
    }

    /// `t` is regular iff `#{d_i ≡ 0} = #{d_i ≡ 2}` mod `t`.
    pub fn is_regular_number(&self, t: u64) -> bool {
        assert!(t >= 1, "regularity needs t ≥ 1");
        let degrees = self.degrees();
        let zero = degrees.iter().filter(|&&d| d % t == 0).count();
        let two = degrees.iter().filter(|&&d| d % t == 2 % t).count();
        zero == two
    }

    /// `N = Σ (d_i - 1)`, the number of positive roots (`n(n-1)/2` for `GL_n`).
    pub fn positive_root_count(&self) -> u64 {
        self.degrees().into_iter().map(|d| d - 1).sum()
    }

    /// `Σ (2 d_i - 1)`.
    pub fn dimension(&self) -> u64 {
        self.degrees().into_iter().map(|d| 2 * d - 1).sum()
    }

    /// Every irreducible type of rank at most `max_rank`.
    pub fn catalogue(max_rank: u32) -> Vec<RootSystem> {
        let mut out = Vec::new();
        for r in 1..=max_rank {
            out.push(RootSystem::A(r));
        }
        for r in 2..=max_rank {
            out.push(RootSystem::B(r));
            out.push(RootSystem::C(r));
        }
        for r in 3..=max_rank {
            out.push(RootSystem::D(r));
        }
        let exceptional = [RootSystem::G2, RootSystem::F4, RootSystem::E6, RootSystem::E7, RootSystem::E8];
        out.extend(exceptional.into_iter().filter(|x| x.rank() <= max_rank));
        out
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystem::A(r) => write!(f, "A:{r}"),
            RootSystem::B(r) => write!(f, "B:{r}"),
            RootSystem::C(r) => write!(f, "C:{r}"),
            RootSystem::D(r) => write!(f, "D:{r}"),
            RootSystem::E6 => f.write_str("E6"),
            RootSystem::E7 => f.write_str("E7"),
            RootSystem::E8 => f.write_str("E8"),
            RootSystem::F4 => f.write_str("F4"),
            RootSystem::G2 => f.write_str("G2"),
            RootSystem::GL(n) => write!(f, "GL:{n}"),
        }
    }
}

/// Grammar: `A:<r>`, `B:<r>`, `C:<r>`, `D:<r>`, `E6`, `E7`, `E8`, `F4`, `G2`, `GL:<n>`.
impl FromStr for RootSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = match s {
            "E6" => RootSystem::E6,
            "E7" => RootSystem::E7,
            "E8" => RootSystem::E8,
            "F4" => RootSystem::F4,
            "G2" => RootSystem::G2,
            _ => {
                let (family, rank) = s
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("unknown root system {s:?}")))?;
                let r: u32 = rank
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
                match family {
                    "A" => RootSystem::A(r),
                    "B" => RootSystem::B(r),
                    "C" => RootSystem::C(r),
                    "D" => RootSystem::D(r),
                    "GL" => RootSystem::GL(r),
                    _ => return Err(Error::Parse(format!("unknown root system {s:?}"))),
                }
            }
        };
        parsed.new().map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for RootSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn all() -> Vec<RootSystem> {
        RootSystem::catalogue(12)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(RootSystem::E8.degrees(), [2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(RootSystem::G2.degrees(), [2, 6]);
        assert_eq!(RootSystem::A(1).degrees(), [2]);
        assert_eq!(RootSystem::D(4).degrees(), [2, 4, 4, 6]);
        assert_eq!(RootSystem::D(3).degrees(), RootSystem::A(3).degrees());
        assert_eq!(RootSystem::GL(3).degrees(), [1, 2, 3]);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(RootSystem::E8.weyl_order().to_string(), "2^14·3^5·5^2·7");
        assert_eq!(RootSystem::A(1).weyl_order().to_u64(), Some(2));
        assert_eq!(RootSystem::F4.weyl_order().to_u64(), Some(1152));
        assert_eq!(RootSystem::GL(5).weyl_order(), FactoredInteger::factorial(5));
    }

    #[test]
    fn a_t_and_parity() {
        assert_eq!(RootSystem::E8.a_t(10), 2);
        assert_eq!(RootSystem::E8.a_t(16), 0);
        for r in all() {
            assert_eq!(r.a_t(1), r.rank() as u64);
        }
        assert_eq!(RootSystem::E8.parity_counts(), (8, 0));
        assert_eq!(RootSystem::E6.parity_counts(), (4, 2));
        assert_eq!(RootSystem::A(2).parity_counts(), (1, 1));
    }

    #[test]
    fn regular_numbers() {
        assert!(RootSystem::G2.is_regular_number(6));
        assert!(!RootSystem::E8.is_regular_number(7));
        assert!(RootSystem::E8.is_regular_number(30));
        assert!(RootSystem::E8.is_regular_number(1));
    }

    #[test]
    fn positive_roots() {
        assert_eq!(RootSystem::E8.positive_root_count(), 120);
        assert_eq!(RootSystem::A(1).positive_root_count(), 1);
        assert_eq!(RootSystem::G2.positive_root_count(), 6);
        assert_eq!(RootSystem::E8.dimension(), 248);
        assert_eq!(RootSystem::GL(4).positive_root_count(), 6);
    }

    #[test]
    fn catalogue_identities() {
        for r in all() {
            let d = r.degrees();
            let n = d.len();
            assert_eq!(n as u32, r.rank(), "{r}");
            assert!(d.windows(2).all(|w| w[0] <= w[1]), "{r}");
            let h = r.coxeter_number();
            for i in 0..n {
                assert_eq!(d[i] + d[n - 1 - i], h + 2, "symmetry fails for {r}");
            }
            let product: u64 = d.iter().product();
            assert_eq!(r.weyl_order().to_u64(), Some(product), "{r}");
            assert_eq!(r.dimension(), r.rank() as u64 + 2 * r.positive_root_count(), "{r}");
            assert_eq!(h, r.dimension() / r.rank() as u64 - 1, "{r}");
            for j in 1..h {
                if j.gcd(&h) == 1 {
                    assert!(d.contains(&(j + 1)), "{r}: {j} prime to h but {} not a degree", j + 1);
                }
            }
        }
    }

    #[test]
    fn grammar() {
        for s in ["A:1", "B:2", "C:5", "D:3", "E6", "E7", "E8", "F4", "G2", "GL:4"] {
            assert_eq!(s.parse::<RootSystem>().unwrap().to_string(), s);
        }
        for bad in ["A:0", "B:1", "C:1", "D:2", "GL:0", "E9", "A", "X:3", "A:x"] {
            assert!(bad.parse::<RootSystem>().is_err(), "{bad}");
        }
    }
}
