use super::anatomy::AnatomyError;
use super::map::PwlMap;
use crate::rational::{one, zero, Rational};
use serde::Serialize;

const CORE_ITERATIONS: usize = 64;

/// The affine change of coordinates from an input map to its normal form:
/// first `x ↦ (x - lo) / (hi - lo)`, then `x ↦ 1 - x` if `flipped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    #[serde(with = "crate::rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub hi: Rational,
    pub flipped: bool,
}

impl Normalization {
    pub fn identity() -> Self {
        Self { lo: zero(), hi: one(), flipped: false }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Original coordinates to normalized ones.
    pub fn forward(&self, x: &Rational) -> Rational {
        let t = (x - &self.lo) / (&self.hi - &self.lo);
        if self.flipped {
            one() - t
        } else {
            t
        }
    }

    /// Normalized coordinates back to original ones.
    pub fn backward(&self, t: &Rational) -> Rational {
        let s = if self.flipped { one() - t } else { t.clone() };
        &self.lo + s * (&self.hi - &self.lo)
    }
}

/// A map brought to normal form: restricted to the core `[min f, max f]`
/// where it is onto, rescaled to `[0, 1]`, with a unique fixed point `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prepared {
    /// `[0, a)` maps into `(a, 1]` and `(a, 1]` into `[0, a)`.
    Trivial { map: PwlMap, a: Rational, normalization: Normalization },
    /// Some point of `(a, 1]` maps to `[a, 1]`; the flip was applied if needed.
    Oriented { map: PwlMap, a: Rational, normalization: Normalization },
}

impl Prepared {
    pub fn map(&self) -> &PwlMap {
        match self {
            Prepared::Trivial { map, .. } | Prepared::Oriented { map, .. } => map,
        }
    }

    pub fn fixed_point(&self) -> &Rational {
        match self {
            Prepared::Trivial { a, .. } | Prepared::Oriented { a, .. } => a,
        }
    }

    pub fn normalization(&self) -> &Normalization {
        match self {
            Prepared::Trivial { normalization, .. } | Prepared::Oriented { normalization, .. } => {
                normalization
            }
        }
    }
}

/// Smallest interval `J` with `f(J) = J` reached from `[0, 1]` by iterating
/// images.
pub fn core_interval(f: &PwlMap) -> Result<(Rational, Rational), AnatomyError> {
    let (mut lo, mut hi) = (zero(), one());
    for _ in 0..CORE_ITERATIONS {
        let (l2, h2) = f.image(&lo, &hi);
        if l2 == lo && h2 == hi {
            if lo == hi {
                return Err(AnatomyError::DegenerateCore(lo.to_string()));
            }
            return Ok((lo, hi));
        }
        lo = l2;
        hi = h2;
    }
    Err(AnatomyError::CoreNotStable(CORE_ITERATIONS))
}

fn unique_fixed_point(f: &PwlMap, norm: &Normalization) -> Result<Rational, AnatomyError> {
    let fixed = f.fixed_points().map_err(|e| AnatomyError::MultipleFixedPoints(vec![e.to_string()]))?;
    match fixed.len() {
        1 => Ok(fixed.into_iter().next().unwrap()),
        _ => Err(AnatomyError::MultipleFixedPoints(
            fixed.iter().map(|x| norm.backward(x).to_string()).collect(),
        )),
    }
}

pub fn prepare(f: &PwlMap) -> Result<Prepared, AnatomyError> {
    let (lo, hi) = core_interval(f)?;
    let mut normalization = Normalization { lo: lo.clone(), hi: hi.clone(), flipped: false };
    let map = f.restricted(&lo, &hi).simplified();
    let a = unique_fixed_point(&map, &normalization)?;
    let xs = map.breakpoints();
    let ys = map.values();
    let left_stays = xs.iter().zip(ys).any(|(x, y)| x < &a && y <= &a);
    let right_stays = xs.iter().zip(ys).any(|(x, y)| x > &a && y >= &a);
    if !left_stays && !right_stays {
        return Ok(Prepared::Trivial { map, a, normalization });
    }
    if right_stays {
        Ok(Prepared::Oriented { map, a, normalization })
    } else {
        normalization.flipped = true;
        Ok(Prepared::Oriented { map: map.flipped(), a: one() - a, normalization })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::CyclicPattern;
    use crate::pwlmap::p_linear_from_pattern;
    use crate::rational::{int, ratio};

    #[test]
    fn stefan_cycle_is_flipped() {
        let f = p_linear_from_pattern(&CyclicPattern::new(&[2, 3, 1]).unwrap());
        let Prepared::Oriented { map, a, normalization } = prepare(&f).unwrap() else {
            panic!("oriented expected")
        };
        assert!(normalization.flipped);
        assert_eq!((normalization.lo.clone(), normalization.hi.clone()), (ratio(1, 4), ratio(3, 4)));
        assert_eq!(map.breakpoints(), &[int(0), ratio(1, 2), int(1)]);
        assert_eq!(map.values(), &[int(1), int(0), ratio(1, 2)]);
        assert_eq!(a, ratio(1, 3));
        for x in [ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(3, 7)] {
            assert_eq!(normalization.backward(&normalization.forward(&x)), x);
        }
    }

    #[test]
    fn two_cycle_is_trivial() {
        let f = p_linear_from_pattern(&CyclicPattern::new(&[2, 1]).unwrap());
        assert!(matches!(prepare(&f).unwrap(), Prepared::Trivial { .. }));
    }

    #[test]
    fn contraction_has_degenerate_core() {
        let f = PwlMap::new(vec![int(0), int(1)], vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(matches!(prepare(&f), Err(AnatomyError::DegenerateCore(_))));
    }

    #[test]
    fn several_fixed_points() {
        let tent = PwlMap::new(vec![int(0), ratio(1, 2), int(1)], vec![int(0), int(1), int(0)]).unwrap();
        assert!(matches!(prepare(&tent), Err(AnatomyError::MultipleFixedPoints(v)) if v.len() == 2));
    }
}
