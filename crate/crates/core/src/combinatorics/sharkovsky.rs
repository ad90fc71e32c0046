//! The Sharkovsky ordering
//! `3 ≻ 5 ≻ 7 ≻ ... ≻ 2·3 ≻ 2·5 ≻ ... ≻ 4·3 ≻ ... ≻ 2^∞ ≻ ... ≻ 8 ≻ 4 ≻ 2 ≻ 1`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A position in the Sharkovsky order: a positive integer or the symbol `2^∞`
/// standing for "all powers of two".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SharkovskyKey {
    Finite(u64),
    PowersOfTwo,
}

impl SharkovskyKey {
    /// Rank in the order: smaller rank is sharper.
    fn rank(self) -> (u8, u64, u64) {
        match self {
            SharkovskyKey::Finite(0) => panic!("Sharkovsky keys are positive"),
            SharkovskyKey::Finite(k) => {
                let twos = k.trailing_zeros() as u64;
                let odd = k >> twos;
                if odd > 1 {
                    (0, twos, odd)
                } else {
                    (2, u64::MAX - twos, 0)
                }
            }
            SharkovskyKey::PowersOfTwo => (1, 0, 0),
        }
    }
}

impl fmt::Display for SharkovskyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharkovskyKey::Finite(k) => write!(f, "{k}"),
            SharkovskyKey::PowersOfTwo => f.write_str("2^inf"),
        }
    }
}

impl FromStr for SharkovskyKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "2^inf" | "2^∞" | "inf" => Ok(SharkovskyKey::PowersOfTwo),
            t => match t.parse::<u64>() {
                Ok(k) if k >= 1 => Ok(SharkovskyKey::Finite(k)),
                _ => Err(format!("invalid Sharkovsky key {s:?}")),
            },
        }
    }
}

/// `Ordering::Greater` when `a` is strictly sharper than `b`.
pub fn sharkovsky_cmp(a: SharkovskyKey, b: SharkovskyKey) -> Ordering {
    b.rank().cmp(&a.rank())
}

/// `a ≻ b` or `a = b`.
pub fn sharkovsky_ge(a: SharkovskyKey, b: SharkovskyKey) -> bool {
    sharkovsky_cmp(a, b) != Ordering::Less
}

/// `a ≻ b`, strictly.
pub fn sharkovsky_gt(a: SharkovskyKey, b: SharkovskyKey) -> bool {
    sharkovsky_cmp(a, b) == Ordering::Greater
}

/// `Sh(k) ∩ [1, bound]`: the integers `m ≤ bound` with `k ≻ m`, plus `k`
/// itself. For `2^∞` this is the powers of two up to `bound`.
pub fn sh_set(key: SharkovskyKey, bound: u64) -> BTreeSet<u64> {
    (1..=bound)
        .filter(|&m| sharkovsky_ge(key, SharkovskyKey::Finite(m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use SharkovskyKey::*;

    #[test]
    fn examples() {
        assert!(sharkovsky_ge(Finite(3), Finite(5)));
        assert!(!sharkovsky_ge(Finite(5), Finite(3)));
        assert!(sharkovsky_gt(Finite(7), Finite(6)));
        assert!(sharkovsky_gt(Finite(6), Finite(10)));
        assert!(sharkovsky_gt(Finite(12), PowersOfTwo));
        assert!(sharkovsky_gt(PowersOfTwo, Finite(1024)));
        assert!(sharkovsky_gt(Finite(4), Finite(2)));
        assert!(sharkovsky_ge(PowersOfTwo, PowersOfTwo));
        assert_eq!(sh_set(PowersOfTwo, 10), BTreeSet::from([1, 2, 4, 8]));
        assert_eq!(sh_set(Finite(6), 12), BTreeSet::from([1, 2, 4, 6, 8, 10, 12]));
        assert_eq!(sh_set(Finite(1), 5), BTreeSet::from([1]));
        for k in 1..50 {
            assert!(sharkovsky_ge(Finite(k), Finite(k)));
        }
    }

    #[test]
    fn parse_keys() {
        assert_eq!("2^inf".parse::<SharkovskyKey>().unwrap(), PowersOfTwo);
        assert_eq!("7".parse::<SharkovskyKey>().unwrap(), Finite(7));
        assert!("0".parse::<SharkovskyKey>().is_err());
    }
}
