use super::intervals::IntervalSet;
use super::map::{Piece, PwlMap};
use super::normalize::{prepare, Normalization, Prepared};
use crate::rational::{one, zero, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnatomyError {
    #[error("unique fixed point violated: fixed points {0:?}")]
    MultipleFixedPoints(Vec<String>),
    #[error("the map collapses its core onto the single point {0}")]
    DegenerateCore(String),
    #[error("images of [0, 1] did not stabilize after {0} steps")]
    CoreNotStable(usize),
    #[error("trivial map: [0, a] and [a, 1] are exchanged, the over-rotation interval is {{1/2}}")]
    Trivial,
    #[error("flat piece on [{0}, {1}]; strictly monotone laps are required")]
    FlatPiece(String, String),
    #[error("wrong lap structure: {0}")]
    LapStructure(String),
    #[error("f(M) = {value} at the local maximum M = {at}, expected 1")]
    MaxNotOne { at: String, value: String },
    #[error("f(m) = {value} at the local minimum m = {at}, expected 0")]
    MinNotZero { at: String, value: String },
    #[error("not well behaved: {0}")]
    NotWellBehaved(String),
}

/// Which of the two bimodal cases applies: case 1 when `f(0) ≤ a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BimodalCase {
    One,
    Two,
}

/// Landmarks of an N-bimodal map in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BimodalAnatomy {
    #[serde(skip)]
    pub map: PwlMap,
    pub normalization: Normalization,
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    /// Local maximum, `f(M) = 1`.
    #[serde(rename = "M", with = "crate::rational::serde_str")]
    pub big_m: Rational,
    /// Local minimum, `f(m) = 0`.
    #[serde(rename = "m", with = "crate::rational::serde_str")]
    pub small_m: Rational,
    #[serde(with = "crate::rational::serde_str::option")]
    pub a_prime: Option<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub a_dblprime: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub d1: Rational,
    #[serde(with = "crate::rational::serde_str::option")]
    pub d2: Option<Rational>,
    pub case: BimodalCase,
}

impl BimodalAnatomy {
    /// The trapping set `Y` read off the landmarks.
    pub fn y_set(&self) -> IntervalSet {
        match self.case {
            BimodalCase::One => IntervalSet::from_intervals([
                (zero(), self.a_prime.clone().unwrap()),
                (self.big_m.clone(), self.d1.clone()),
                (self.d2.clone().unwrap(), self.small_m.clone()),
                (self.a_dblprime.clone(), one()),
            ]),
            BimodalCase::Two => IntervalSet::from_intervals([
                (self.big_m.clone(), self.d1.clone()),
                (self.a.clone(), self.small_m.clone()),
                (self.a_dblprime.clone(), one()),
            ]),
        }
    }
}

/// Landmarks of a well-behaved map in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WellBehavedAnatomy {
    #[serde(skip)]
    pub map: PwlMap,
    pub normalization: Normalization,
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(rename = "M", with = "crate::rational::serde_str")]
    pub big_m: Rational,
    #[serde(rename = "m", with = "crate::rational::serde_str")]
    pub small_m: Rational,
    /// `min f` on `[0, a]`.
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    /// `max f` on `[a, 1]`.
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
    pub l1: IntervalSet,
    pub l2: IntervalSet,
    pub y: IntervalSet,
}

fn oriented(f: &PwlMap) -> Result<(PwlMap, Rational, Normalization), AnatomyError> {
    match prepare(f)? {
        Prepared::Trivial { .. } => Err(AnatomyError::Trivial),
        Prepared::Oriented { map, a, normalization } => {
            for p in map.pieces() {
                if p.is_flat() {
                    return Err(AnatomyError::FlatPiece(
                        normalization.backward(&p.x0).to_string(),
                        normalization.backward(&p.x1).to_string(),
                    ));
                }
            }
            Ok((map, a, normalization))
        }
    }
}

/// The point of `[lo, hi]` where a map monotone there takes the value `level`.
pub fn root_on(f: &PwlMap, level: &Rational, lo: &Rational, hi: &Rational) -> Option<Rational> {
    if &f.eval_unchecked(lo) == level {
        return Some(lo.clone());
    }
    f.pieces()
        .filter(|p| &p.x1 > lo && &p.x0 < hi)
        .filter_map(|p| p.solve(level))
        .find(|x| x >= lo && x <= hi)
}

fn sign(p: &Piece) -> i8 {
    if p.y1 > p.y0 {
        1
    } else {
        -1
    }
}

/// Landmarks of an N-bimodal map (increasing, decreasing, increasing, with
/// the outer laps possibly missing). The map is first brought to normal
/// form; the anatomy refers to normalized coordinates.
pub fn detect_bimodal(f: &PwlMap) -> Result<BimodalAnatomy, AnatomyError> {
    let (map, a, normalization) = oriented(f)?;
    // laps as (sign, start, end)
    let mut laps: Vec<(i8, Rational, Rational)> = Vec::new();
    for p in map.pieces() {
        let s = sign(&p);
        match laps.last_mut() {
            Some(last) if last.0 == s => last.2 = p.x1.clone(),
            _ => laps.push((s, p.x0.clone(), p.x1.clone())),
        }
    }
    let signs: Vec<i8> = laps.iter().map(|l| l.0).collect();
    let dec = match signs.as_slice() {
        [-1] | [-1, 1] => 0,
        [1, -1] | [1, -1, 1] => 1,
        _ => {
            let text: Vec<&str> = signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
            return Err(AnatomyError::LapStructure(format!(
                "lap signs ({}) are not increasing-decreasing-increasing",
                text.join(",")
            )));
        }
    };
    let big_m = laps[dec].1.clone();
    let small_m = laps[dec].2.clone();
    let fm = map.eval_unchecked(&big_m);
    if fm != one() {
        return Err(AnatomyError::MaxNotOne {
            at: normalization.backward(&big_m).to_string(),
            value: fm.to_string(),
        });
    }
    let fmin = map.eval_unchecked(&small_m);
    if fmin != zero() {
        return Err(AnatomyError::MinNotZero {
            at: normalization.backward(&small_m).to_string(),
            value: fmin.to_string(),
        });
    }
    if !(big_m < a && a < small_m) {
        return Err(AnatomyError::LapStructure("fixed point outside the decreasing lap".into()));
    }
    let f0 = map.eval_unchecked(&zero());
    let f1 = map.eval_unchecked(&one());
    let d1 = root_on(&map, &f1, &big_m, &a).expect("f(1) lies between a and 1");
    let a_dblprime = root_on(&map, &a, &small_m, &one()).expect("orientation gives f(1) >= a");
    let (case, a_prime, d2) = if f0 <= a {
        let ap = root_on(&map, &a, &zero(), &big_m).expect("f(0) <= a <= f(M)");
        let d2 = root_on(&map, &f0, &a, &small_m).expect("0 <= f(0) <= a");
        (BimodalCase::One, Some(ap), Some(d2))
    } else {
        (BimodalCase::Two, None, None)
    };
    Ok(BimodalAnatomy {
        map,
        normalization,
        a,
        big_m,
        small_m,
        a_prime,
        a_dblprime,
        d1,
        d2,
        case,
    })
}

/// `L1`: points `x` of `[0, a]` that are the last visit of the level `f(x)`
/// within `[0, a]`, with `f(x)` in `[α, a] ∪ (β, 1]`.
fn scan_l1(map: &PwlMap, a: &Rational, beta: &Rational) -> IntervalSet {
    let mut out = vec![(a.clone(), a.clone())];
    let mut rmin = a.clone();
    let mut rmax = a.clone();
    let pieces: Vec<Piece> = map.pieces().filter(|p| &p.x0 < a).collect();
    for p in pieces.iter().rev() {
        let w = p.x1.clone().min(a.clone());
        let fu = p.y0.clone();
        let fw = p.eval(&w);
        let piece = Piece { x0: p.x0.clone(), x1: w, y0: fu.clone(), y1: fw };
        if piece.y1 > piece.y0 {
            if fu < rmin {
                let r = piece.solve(&rmin).unwrap_or_else(|| piece.x1.clone());
                out.push((piece.x0.clone(), r));
            }
        } else {
            let level = rmax.clone().max(beta.clone());
            if fu > level {
                let r = piece.solve(&level).unwrap_or_else(|| piece.x1.clone());
                out.push((piece.x0.clone(), r));
            }
        }
        rmin = rmin.min(fu.clone());
        rmax = rmax.max(fu);
    }
    IntervalSet::from_intervals(out)
}

/// `L2`: points `x` of `[a, 1]` that are the first visit of the level `f(x)`
/// within `[a, 1]`, with `f(x)` in `[a, β] ∪ [0, α)`.
fn scan_l2(map: &PwlMap, a: &Rational, alpha: &Rational) -> IntervalSet {
    let mut out = vec![(a.clone(), a.clone())];
    let mut rmin = a.clone();
    let mut rmax = a.clone();
    for p in map.pieces().filter(|p| &p.x1 > a) {
        let u = p.x0.clone().max(a.clone());
        let fu = p.eval(&u);
        let fw = p.y1.clone();
        let piece = Piece { x0: u, x1: p.x1.clone(), y0: fu, y1: fw.clone() };
        if piece.y1 > piece.y0 {
            if fw > rmax {
                let r = piece.solve(&rmax).unwrap_or_else(|| piece.x0.clone());
                out.push((r, piece.x1.clone()));
            }
        } else {
            let level = rmin.clone().min(alpha.clone());
            if fw < level {
                let r = piece.solve(&level).unwrap_or_else(|| piece.x0.clone());
                out.push((r, piece.x1.clone()));
            }
        }
        rmin = rmin.min(fw.clone());
        rmax = rmax.max(fw);
    }
    IntervalSet::from_intervals(out)
}

/// Landmarks of a well-behaved map: unique fixed point `a`, `M` the last
/// point with `f = 1`, `m` the first point with `f = 0`, `f > a` on `[M, a)`
/// and `f < a` on `(a, m]`.
pub fn detect_well_behaved(f: &PwlMap) -> Result<WellBehavedAnatomy, AnatomyError> {
    let (map, a, normalization) = oriented(f)?;
    let big_m = map.preimages(&one()).last().cloned().expect("normal form is onto");
    let small_m = map.preimages(&zero()).first().cloned().expect("normal form is onto");
    let xs = map.breakpoints();
    let ys = map.values();
    for (x, y) in xs.iter().zip(ys) {
        if x >= &big_m && x < &a && y <= &a {
            return Err(AnatomyError::NotWellBehaved(format!(
                "f({}) = {} is not above the fixed point on [M, a)",
                normalization.backward(x),
                normalization.backward(y)
            )));
        }
        if x > &a && x <= &small_m && y >= &a {
            return Err(AnatomyError::NotWellBehaved(format!(
                "f({}) = {} is not below the fixed point on (a, m]",
                normalization.backward(x),
                normalization.backward(y)
            )));
        }
    }
    let mut alpha = a.clone();
    let mut beta = a.clone();
    for (x, y) in xs.iter().zip(ys) {
        if x <= &a && y < &alpha {
            alpha = y.clone();
        }
        if x >= &a && y > &beta {
            beta = y.clone();
        }
    }
    let l1 = scan_l1(&map, &a, &beta);
    let l2 = scan_l2(&map, &a, &alpha);
    let y = l1.union(&l2);
    Ok(WellBehavedAnatomy { map, normalization, a, big_m, small_m, alpha, beta, l1, l2, y })
}

/// The canonical inverse `h`: the preimage of `z` picked on the side of `a`
/// its value range belongs to, closest to `a` on that side.
pub fn canonical_inverse(anatomy: &WellBehavedAnatomy, z: &Rational) -> Rational {
    let a = &anatomy.a;
    let pre = anatomy.map.preimages(z);
    let left = || pre.iter().filter(|x| *x <= a).max().cloned();
    let right = || pre.iter().filter(|x| *x >= a).min().cloned();
    let pick = if z >= &anatomy.alpha && z <= a {
        left()
    } else if z >= a && z <= &anatomy.beta {
        right()
    } else if z > &anatomy.beta {
        left()
    } else {
        right()
    };
    pick.expect("normal form is onto and each side covers its value range")
}
