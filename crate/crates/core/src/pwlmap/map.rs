use crate::rational::{self, interpolate, one, solve_linear, zero, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PwlError {
    #[error("a map needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("{breakpoints} breakpoints but {values} values")]
    LengthMismatch { breakpoints: usize, values: usize },
    #[error("breakpoints must start at 0 and end at 1")]
    BadEndpoints,
    #[error("breakpoints must be strictly increasing (at index {0})")]
    NotIncreasing(usize),
    #[error("value {0} at index {1} is outside [0, 1]")]
    ValueOutOfRange(String, usize),
    #[error("point {0} is outside [0, 1]")]
    OutOfDomain(String),
    #[error("the map agrees with the identity on [{0}, {1}]")]
    FixedInterval(String, String),
    #[error(transparent)]
    Parse(#[from] rational::ParseRationalError),
}

/// A continuous piecewise-linear self-map of `[0, 1]`, given by its values
/// at finitely many breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapSpec", into = "MapSpec")]
pub struct PwlMap {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

/// Wire form of a [`PwlMap`]: rationals as `"num/den"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapSpec {
    #[serde(with = "rational::serde_str::vec")]
    pub breakpoints: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub values: Vec<Rational>,
}

impl TryFrom<MapSpec> for PwlMap {
    type Error = PwlError;
    fn try_from(spec: MapSpec) -> Result<Self, PwlError> {
        PwlMap::new(spec.breakpoints, spec.values)
    }
}

impl From<PwlMap> for MapSpec {
    fn from(map: PwlMap) -> Self {
        MapSpec { breakpoints: map.breakpoints, values: map.values }
    }
}

/// A linear piece `[x0, x1]` with end values `y0`, `y1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Piece {
    pub fn slope(&self) -> Rational {
        (&self.y1 - &self.y0) / (&self.x1 - &self.x0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        interpolate(&self.x0, &self.y0, &self.x1, &self.y1, x)
    }

    pub fn is_flat(&self) -> bool {
        self.y0 == self.y1
    }

    pub fn min_value(&self) -> &Rational {
        std::cmp::min(&self.y0, &self.y1)
    }

    pub fn max_value(&self) -> &Rational {
        std::cmp::max(&self.y0, &self.y1)
    }

    /// The unique point of the piece where the value is `level`, if any.
    pub fn solve(&self, level: &Rational) -> Option<Rational> {
        solve_linear(&self.x0, &self.y0, &self.x1, &self.y1, level)
    }
}

impl PwlMap {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self, PwlError> {
        if breakpoints.len() != values.len() {
            return Err(PwlError::LengthMismatch {
                breakpoints: breakpoints.len(),
                values: values.len(),
            });
        }
        if breakpoints.len() < 2 {
            return Err(PwlError::TooFewBreakpoints);
        }
        if breakpoints[0] != zero() || *breakpoints.last().unwrap() != one() {
            return Err(PwlError::BadEndpoints);
        }
        for i in 1..breakpoints.len() {
            if breakpoints[i] <= breakpoints[i - 1] {
                return Err(PwlError::NotIncreasing(i));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if *v < zero() || *v > one() {
                return Err(PwlError::ValueOutOfRange(v.to_string(), i));
            }
        }
        Ok(Self { breakpoints, values })
    }

    /// Parses the JSON map spec.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("map specs always serialize")
    }

    pub fn identity() -> Self {
        Self { breakpoints: vec![zero(), one()], values: vec![zero(), one()] }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        self.breakpoints.windows(2).zip(self.values.windows(2)).map(|(x, y)| Piece {
            x0: x[0].clone(),
            x1: x[1].clone(),
            y0: y[0].clone(),
            y1: y[1].clone(),
        })
    }

    /// Index of the piece containing `x`; boundary points go to the piece on
    /// their right except at 1.
    fn piece_index(&self, x: &Rational) -> usize {
        let k = self.breakpoints.partition_point(|b| b <= x);
        k.saturating_sub(1).min(self.breakpoints.len() - 2)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, PwlError> {
        if *x < zero() || *x > one() {
            return Err(PwlError::OutOfDomain(x.to_string()));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &Rational) -> Rational {
        let i = self.piece_index(x);
        interpolate(
            &self.breakpoints[i],
            &self.values[i],
            &self.breakpoints[i + 1],
            &self.values[i + 1],
            x,
        )
    }

    /// `[x, f(x), ..., f^n(x)]`.
    pub fn iterate(&self, x: &Rational, n: usize) -> Result<Vec<Rational>, PwlError> {
        self.eval(x)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for _ in 0..n {
            let next = self.eval_unchecked(out.last().unwrap());
            out.push(next);
        }
        Ok(out)
    }

    /// Same map with breakpoints between collinear pieces removed.
    pub fn simplified(&self) -> Self {
        let mut xs = vec![self.breakpoints[0].clone()];
        let mut ys = vec![self.values[0].clone()];
        for i in 1..self.breakpoints.len() - 1 {
            let left = (&self.values[i] - ys.last().unwrap()) / (&self.breakpoints[i] - xs.last().unwrap());
            let right = (&self.values[i + 1] - &self.values[i])
                / (&self.breakpoints[i + 1] - &self.breakpoints[i]);
            if left != right {
                xs.push(self.breakpoints[i].clone());
                ys.push(self.values[i].clone());
            }
        }
        xs.push(one());
        ys.push(self.values.last().unwrap().clone());
        Self { breakpoints: xs, values: ys }
    }

    pub fn min_value(&self) -> Rational {
        self.values.iter().min().unwrap().clone()
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().max().unwrap().clone()
    }

    /// `[min f, max f]` over `[lo, hi]`.
    pub fn image(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut vals = vec![self.eval_unchecked(lo), self.eval_unchecked(hi)];
        for (x, y) in self.breakpoints.iter().zip(&self.values) {
            if x > lo && x < hi {
                vals.push(y.clone());
            }
        }
        let min = vals.iter().min().unwrap().clone();
        let max = vals.iter().max().unwrap().clone();
        (min, max)
    }

    /// Every root of `f(x) = x`, sorted. A piece lying on the diagonal is an
    /// error rather than a choice of representative.
    pub fn fixed_points(&self) -> Result<Vec<Rational>, PwlError> {
        let mut out: Vec<Rational> = Vec::new();
        for p in self.pieces() {
            let d0 = &p.y0 - &p.x0;
            let d1 = &p.y1 - &p.x1;
            if d0 == zero() && d1 == zero() {
                return Err(PwlError::FixedInterval(p.x0.to_string(), p.x1.to_string()));
            }
            if let Some(x) = solve_linear(&p.x0, &d0, &p.x1, &d1, &zero()) {
                if out.last() != Some(&x) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// Finite level set `{x : f(x) = level}`, sorted, ignoring flat pieces
    /// sitting exactly at the level.
    pub fn preimages(&self, level: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for p in self.pieces() {
            let hit = if p.is_flat() { None } else { p.solve(level) };
            if let Some(x) = hit {
                if out.last() != Some(&x) {
                    out.push(x);
                }
            } else if p.is_flat() && &p.y0 == level {
                for x in [p.x0, p.x1] {
                    if out.last() != Some(&x) {
                        out.push(x);
                    }
                }
            }
        }
        out
    }

    /// The conjugate `x ↦ 1 - f(1 - x)`.
    pub fn flipped(&self) -> Self {
        let breakpoints = self.breakpoints.iter().rev().map(|x| one() - x).collect();
        let values = self.values.iter().rev().map(|y| one() - y).collect();
        Self { breakpoints, values }
    }

    /// `f` restricted to `[lo, hi]` and conjugated affinely back onto
    /// `[0, 1]`. Requires `f([lo, hi]) ⊆ [lo, hi]` and `lo < hi`.
    pub fn restricted(&self, lo: &Rational, hi: &Rational) -> Self {
        let w = hi - lo;
        let mut xs = vec![lo.clone()];
        for x in &self.breakpoints {
            if x > lo && x < hi {
                xs.push(x.clone());
            }
        }
        xs.push(hi.clone());
        let breakpoints = xs.iter().map(|x| (x - lo) / &w).collect();
        let values = xs.iter().map(|x| (self.eval_unchecked(x) - lo) / &w).collect();
        Self { breakpoints, values }
    }
}

impl fmt::Display for PwlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .map(|(x, y)| format!("{x}->{y}"))
            .collect();
        write!(f, "[{}]", pts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn tent() -> PwlMap {
        PwlMap::new(vec![int(0), ratio(1, 2), int(1)], vec![int(0), int(1), int(0)]).unwrap()
    }

    #[test]
    fn evaluation() {
        let id = PwlMap::identity();
        assert_eq!(id.eval(&ratio(1, 3)).unwrap(), ratio(1, 3));
        assert_eq!(tent().eval(&ratio(1, 4)).unwrap(), ratio(1, 2));
        assert_eq!(tent().eval(&ratio(1, 2)).unwrap(), int(1));
        assert_eq!(tent().eval(&int(1)).unwrap(), int(0));
        assert!(tent().eval(&ratio(3, 2)).is_err());
        assert_eq!(
            tent().iterate(&ratio(1, 3), 3).unwrap(),
            vec![ratio(1, 3), ratio(2, 3), ratio(2, 3), ratio(2, 3)]
        );
    }

    #[test]
    fn validation() {
        assert_eq!(PwlMap::new(vec![int(0)], vec![int(0)]), Err(PwlError::TooFewBreakpoints));
        assert!(matches!(
            PwlMap::new(vec![int(0), ratio(1, 2), ratio(1, 2), int(1)], vec![int(0); 4]),
            Err(PwlError::NotIncreasing(2))
        ));
        assert!(PwlMap::new(vec![int(0), int(1)], vec![int(0), int(2)]).is_err());
        assert!(PwlMap::new(vec![ratio(1, 2), int(1)], vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn fixed_points_and_preimages() {
        assert_eq!(tent().fixed_points().unwrap(), vec![int(0), ratio(2, 3)]);
        assert_eq!(tent().preimages(&ratio(1, 2)), vec![ratio(1, 4), ratio(3, 4)]);
        assert!(matches!(PwlMap::identity().fixed_points(), Err(PwlError::FixedInterval(..))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"breakpoints":["0","1/4","1"],"values":["1/2","1","0"]}"#;
        let f = PwlMap::from_json(text).unwrap();
        assert_eq!(f.to_json(), text);
        assert_eq!(f.eval(&ratio(1, 8)).unwrap(), ratio(3, 4));
        assert!(PwlMap::from_json(r#"{"breakpoints":["0","1"],"values":["1/0","1"]}"#).is_err());
    }

    #[test]
    fn simplify_and_flip() {
        let f = PwlMap::new(
            vec![int(0), ratio(1, 4), ratio(1, 2), int(1)],
            vec![int(0), ratio(1, 2), int(1), int(0)],
        )
        .unwrap();
        assert_eq!(f.simplified(), tent());
        assert_eq!(tent().flipped().values(), &[int(1), int(0), int(1)]);
        assert_eq!(f.flipped().flipped(), f);
    }

    #[test]
    fn restriction() {
        // 1/4 -> 3/4 -> 1/4 swap, constant outside
        let f = PwlMap::new(
            vec![int(0), ratio(1, 4), ratio(3, 4), int(1)],
            vec![ratio(3, 4), ratio(3, 4), ratio(1, 4), ratio(1, 4)],
        )
        .unwrap();
        let g = f.restricted(&ratio(1, 4), &ratio(3, 4));
        assert_eq!(g.breakpoints(), &[int(0), int(1)]);
        assert_eq!(g.values(), &[int(1), int(0)]);
    }
}
