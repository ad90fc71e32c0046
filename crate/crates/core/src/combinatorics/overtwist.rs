//! Closed-form over-twist patterns.

use super::pattern::CyclicPattern;
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OvertwistError {
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: usize, q: usize },
    #[error("need 0 < p/q < 1/2, got {p}/{q}")]
    RatioOutOfRange { p: usize, q: usize },
    #[error("r = {r} outside 1..={max}")]
    ROutOfRange { r: usize, max: usize },
}

fn check(p: usize, q: usize) -> Result<(), OvertwistError> {
    if p == 0 || 2 * p >= q {
        return Err(OvertwistError::RatioOutOfRange { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(OvertwistError::NotCoprime { p, q });
    }
    Ok(())
}

/// The unimodal over-twist `π_{p/q}`.
pub fn unimodal_overtwist(p: usize, q: usize) -> Result<CyclicPattern, OvertwistError> {
    check(p, q)?;
    let image: Vec<usize> = (1..=q)
        .map(|j| {
            if j <= q - 2 * p {
                j + p
            } else if j <= q - p {
                2 * q - 2 * p + 1 - j
            } else {
                q + 1 - j
            }
        })
        .collect();
    Ok(CyclicPattern::new(&image).expect("the unimodal over-twist formula yields a cycle"))
}

// Four-branch formula; r = 0 is allowed here and gives the flipped unimodal pattern.
pub(crate) fn bimodal_formula(r: usize, p: usize, q: usize) -> Vec<usize> {
    (1..=q)
        .map(|j| {
            if j <= r {
                j + p
            } else if j <= r + p {
                q + r + 1 - j
            } else if j <= r + 2 * p {
                2 * p + r + 1 - j
            } else {
                j - p
            }
        })
        .collect()
}

/// The bimodal over-twist `Π_{r,p,q}` for `1 ≤ r ≤ q - 2p - 1`.
pub fn bimodal_overtwist(r: usize, p: usize, q: usize) -> Result<CyclicPattern, OvertwistError> {
    check(p, q)?;
    let max = q - 2 * p - 1;
    if r == 0 || r > max {
        return Err(OvertwistError::ROutOfRange { r, max });
    }
    Ok(CyclicPattern::new(&bimodal_formula(r, p, q))
        .expect("the bimodal over-twist formula yields a cycle"))
}

/// `Π_{r,p,q}` for every admissible `r`; empty when `q - 2p - 1 < 1`.
pub fn enumerate_bimodal_overtwists(p: usize, q: usize) -> Result<Vec<CyclicPattern>, OvertwistError> {
    check(p, q)?;
    Ok((1..q - 2 * p)
        .map(|r| bimodal_overtwist(r, p, q).expect("r in range"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::orp::{orp_of_cycle, OverRotationPair};

    fn coprime_pairs(max_q: usize) -> impl Iterator<Item = (usize, usize)> {
        (3..=max_q).flat_map(|q| (1..).take_while(move |p| 2 * p < q).map(move |p| (p, q)))
            .filter(|&(p, q)| p.gcd(&q) == 1)
    }

    #[test]
    fn unimodal_examples() {
        assert_eq!(unimodal_overtwist(2, 7).unwrap().one_line(), vec![3, 4, 5, 7, 6, 2, 1]);
        assert_eq!(unimodal_overtwist(1, 3).unwrap().one_line(), vec![2, 3, 1]);
        assert!(unimodal_overtwist(2, 4).is_err());
        assert!(unimodal_overtwist(1, 2).is_err());
    }

    #[test]
    fn bimodal_example() {
        let pi = bimodal_overtwist(3, 3, 11).unwrap();
        assert_eq!(pi.one_line(), vec![4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]);
        assert_eq!(pi.cycle(), vec![1, 4, 11, 8, 2, 5, 10, 7, 3, 6, 9]);
        assert_eq!(bimodal_overtwist(5, 3, 11), Err(OvertwistError::ROutOfRange { r: 5, max: 4 }));
        assert!(bimodal_overtwist(0, 3, 11).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_bimodal_overtwists(3, 11).unwrap().len(), 4);
        assert_eq!(enumerate_bimodal_overtwists(1, 3).unwrap().len(), 0);
        assert_eq!(enumerate_bimodal_overtwists(1, 4).unwrap().len(), 1);
    }

    #[test]
    fn orp_consistency() {
        for (p, q) in coprime_pairs(15) {
            let want = OverRotationPair { l: p as u64, p: q as u64 };
            assert_eq!(orp_of_cycle(&unimodal_overtwist(p, q).unwrap()).unwrap(), want);
            let all = enumerate_bimodal_overtwists(p, q).unwrap();
            assert_eq!(all.len(), (q - 2 * p).saturating_sub(1));
            for (i, pi) in all.iter().enumerate() {
                assert_eq!(orp_of_cycle(pi).unwrap(), want);
                for other in &all[i + 1..] {
                    assert_ne!(pi, other);
                }
            }
        }
    }

    #[test]
    fn r_zero_is_the_unimodal_pattern() {
        for (p, q) in coprime_pairs(15) {
            let zero = CyclicPattern::new(&bimodal_formula(0, p, q)).unwrap();
            let uni = unimodal_overtwist(p, q).unwrap();
            assert!(zero.same_pattern(&uni));
            assert_eq!(zero, uni.flip());
        }
    }
}
