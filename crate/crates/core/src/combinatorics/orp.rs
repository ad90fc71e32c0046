use super::pattern::{CyclicPattern, PatternError};
use super::sharkovsky::{sharkovsky_gt, SharkovskyKey};
use crate::rational::{ratio, Rational};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("({l}, {p}) is not an over-rotation pair; need 0 < l and 2l <= p")]
pub struct InvalidPair {
    pub l: u64,
    pub p: u64,
}

/// Over-rotation pair `(l, p)` of a non-fixed periodic orbit: `p` is the
/// period and `l` the number of orbit points that switch sides, halved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OverRotationPair {
    pub l: u64,
    pub p: u64,
}

impl OverRotationPair {
    pub fn new(l: u64, p: u64) -> Result<Self, InvalidPair> {
        if l == 0 || 2 * l > p {
            return Err(InvalidPair { l, p });
        }
        Ok(Self { l, p })
    }

    /// Over-rotation number `l / p`.
    pub fn rho(&self) -> Rational {
        ratio(self.l as i64, self.p as i64)
    }

    pub fn is_coprime(&self) -> bool {
        self.l.gcd(&self.p) == 1
    }

    pub fn as_general(&self) -> GeneralPair {
        GeneralPair { p: self.l, q: self.p }
    }
}

impl fmt::Display for OverRotationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l, self.p)
    }
}

/// A pair `(p, q)` of integers with `0 < p < q`, the domain of the `⋗` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralPair {
    pub p: u64,
    pub q: u64,
}

impl GeneralPair {
    pub fn new(p: u64, q: u64) -> Option<Self> {
        (0 < p && p < q).then_some(Self { p, q })
    }
}

impl From<OverRotationPair> for GeneralPair {
    fn from(pair: OverRotationPair) -> Self {
        pair.as_general()
    }
}

/// Twice the `χ`-sum over the pattern: the number of indices `j` with
/// `(θ(j) - j)(θ²(j) - θ(j)) ≤ 0`.
pub fn side_switches(pattern: &CyclicPattern) -> usize {
    let n = pattern.period();
    (1..=n)
        .filter(|&j| {
            let t = pattern.apply(j);
            let tt = pattern.apply(t);
            let d1 = t as i64 - j as i64;
            let d2 = tt as i64 - t as i64;
            d1 * d2 <= 0
        })
        .count()
}

/// Over-rotation pair of a cycle with the given pattern.
pub fn orp_of_cycle(pattern: &CyclicPattern) -> Result<OverRotationPair, PatternError> {
    pattern.ensure_nondegenerate()?;
    let switches = side_switches(pattern);
    // the sign of θ(j) - j changes an even number of times around a cycle
    debug_assert!(switches % 2 == 0);
    let l = (switches / 2) as u64;
    Ok(OverRotationPair::new(l, pattern.period() as u64)
        .expect("a cycle of period >= 2 switches sides at least twice and at most n times"))
}

/// The forcing-compatible order on pairs: `(p, q) ⋗ (r, s)` iff
/// `1/2 ≤ r/s < p/q`, or `p/q < r/s ≤ 1/2`, or `p/q = r/s = m/n` in lowest
/// terms and `p/m` is strictly Sharkovsky-sharper than `r/m`.
pub fn gtrdot(a: GeneralPair, b: GeneralPair) -> bool {
    let (p, q, r, s) = (a.p as u128, a.q as u128, b.p as u128, b.q as u128);
    // compare fractions by cross multiplication; all denominators positive
    let rs_ge_half = 2 * r >= s;
    let rs_le_half = 2 * r <= s;
    let rs_lt_pq = r * q < p * s;
    let pq_lt_rs = p * s < r * q;
    if rs_ge_half && rs_lt_pq {
        return true;
    }
    if pq_lt_rs && rs_le_half {
        return true;
    }
    if p * s == r * q {
        let m = a.p / a.p.gcd(&a.q);
        let k1 = a.p / m;
        let k2 = b.p / m;
        return sharkovsky_gt(SharkovskyKey::Finite(k1), SharkovskyKey::Finite(k2));
    }
    false
}
