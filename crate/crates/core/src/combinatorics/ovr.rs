use super::orp::OverRotationPair;
use super::sharkovsky::{sh_set, SharkovskyKey};
use crate::rational::{half, ratio, Rational};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EtaError {
    #[error("ratio {0} must lie in (0, 1/2]")]
    RatioOutOfRange(String),
    #[error("enclosure ({0}, {1}) must satisfy 0 <= lo < hi <= 1/2")]
    BadEnclosure(String, String),
    #[error("period bound must be at least 2")]
    BoundTooSmall,
}

/// The parameter `η` of an `Ovr(η)` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaSpec {
    Zero,
    Half,
    /// `(α, k)`: all pairs right of `α`, plus the multiples `(m·r, m·s)` of
    /// `α = r/s` for `m` in `Sh(k)`.
    Rational { alpha: Rational, key: SharkovskyKey },
    /// An irrational number known only to lie in the open interval `(lo, hi)`.
    Irrational { lo: Rational, hi: Rational },
}

impl EtaSpec {
    pub fn rational(alpha: Rational, key: SharkovskyKey) -> Result<Self, EtaError> {
        if alpha <= Rational::zero() || alpha > half() {
            return Err(EtaError::RatioOutOfRange(alpha.to_string()));
        }
        Ok(EtaSpec::Rational { alpha, key })
    }

    pub fn irrational(lo: Rational, hi: Rational) -> Result<Self, EtaError> {
        if lo < Rational::zero() || lo >= hi || hi > half() {
            return Err(EtaError::BadEnclosure(lo.to_string(), hi.to_string()));
        }
        Ok(EtaSpec::Irrational { lo, hi })
    }
}

/// `Ovr(η)` cut off at a period bound. `indeterminate` is only non-empty for
/// an irrational `η` and holds the pairs the enclosure cannot decide.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OvrSet {
    pub members: BTreeSet<OverRotationPair>,
    pub indeterminate: BTreeSet<OverRotationPair>,
}

fn all_pairs(bound: u64) -> impl Iterator<Item = OverRotationPair> {
    (2..=bound).flat_map(|p| (1..=p / 2).map(move |l| OverRotationPair { l, p }))
}

pub fn ovr_set(eta: &EtaSpec, period_bound: u64) -> Result<OvrSet, EtaError> {
    if period_bound < 2 {
        return Err(EtaError::BoundTooSmall);
    }
    let mut out = OvrSet::default();
    match eta {
        EtaSpec::Zero => out.members.extend(all_pairs(period_bound)),
        EtaSpec::Half => {}
        EtaSpec::Rational { alpha, key } => {
            out.members
                .extend(all_pairs(period_bound).filter(|pair| &pair.rho() > alpha));
            let r = alpha.numer().to_u64().expect("numerator fits");
            let s = alpha.denom().to_u64().expect("denominator fits");
            for m in sh_set(*key, period_bound / s) {
                out.members.insert(OverRotationPair { l: m * r, p: m * s });
            }
        }
        EtaSpec::Irrational { lo, hi } => {
            for pair in all_pairs(period_bound) {
                let rho = pair.rho();
                if &rho >= hi {
                    out.members.insert(pair);
                } else if &rho > lo {
                    out.indeterminate.insert(pair);
                }
            }
        }
    }
    Ok(out)
}

/// Membership of a single pair; `None` when an irrational enclosure is too
/// wide to decide.
pub fn in_ovr(eta: &EtaSpec, pair: OverRotationPair) -> Option<bool> {
    let rho = ratio(pair.l as i64, pair.p as i64);
    match eta {
        EtaSpec::Zero => Some(true),
        EtaSpec::Half => Some(false),
        EtaSpec::Rational { alpha, key } => {
            if &rho > alpha {
                return Some(true);
            }
            if &rho < alpha {
                return Some(false);
            }
            let s = alpha.denom().to_u64().expect("denominator fits");
            let m = pair.p / s;
            Some(super::sharkovsky::sharkovsky_ge(*key, SharkovskyKey::Finite(m)))
        }
        EtaSpec::Irrational { lo, hi } => {
            if &rho >= hi {
                Some(true)
            } else if &rho <= lo {
                Some(false)
            } else {
                None
            }
        }
    }
}
