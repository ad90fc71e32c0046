use super::LiftError;
use crate::rational::{interpolate, one, split_integer, zero, Rational};
use std::fmt::Write as _;

const DEFAULT_RESOURCE_LIMIT: usize = 1_000_000;

/// Piece budget for compositions and powers, `OVERTWIST_RESOURCE_LIMIT` if
/// set.
pub fn resource_limit() -> usize {
    std::env::var("OVERTWIST_RESOURCE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_RESOURCE_LIMIT)
}

/// A continuous non-decreasing degree-one map, given by its graph on one
/// period: knots `xs` from 0 to 1 and values `ys` with
/// `ys.last() == ys[0] + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneLift {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl MonotoneLift {
    /// Builds the map from knots, dropping repeated and collinear ones.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self, LiftError> {
        let mut xs: Vec<Rational> = Vec::with_capacity(points.len());
        let mut ys: Vec<Rational> = Vec::with_capacity(points.len());
        for (x, y) in points {
            if let Some(last) = xs.last() {
                if &x < last {
                    return Err(LiftError::Malformed(format!("knot {x} out of order")));
                }
                if &x == last {
                    if ys.last() != Some(&y) {
                        return Err(LiftError::Malformed(format!("jump at {x}")));
                    }
                    continue;
                }
                if &y < ys.last().unwrap() {
                    return Err(LiftError::Malformed(format!("decreasing before {x}")));
                }
            }
            xs.push(x);
            ys.push(y);
        }
        if xs.len() < 2 || xs[0] != zero() || xs.last().unwrap() != &one() {
            return Err(LiftError::Malformed("knots must span [0, 1]".into()));
        }
        if ys.last().unwrap() != &(&ys[0] + one()) {
            return Err(LiftError::Malformed("not of degree one".into()));
        }
        Ok(Self::merged(xs, ys))
    }

    fn merged(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let n = xs.len();
        let mut ox = vec![xs[0].clone()];
        let mut oy = vec![ys[0].clone()];
        for i in 1..n - 1 {
            let l = (&ys[i] - oy.last().unwrap()) / (&xs[i] - ox.last().unwrap());
            let r = (&ys[i + 1] - &ys[i]) / (&xs[i + 1] - &xs[i]);
            if l != r {
                ox.push(xs[i].clone());
                oy.push(ys[i].clone());
            }
        }
        ox.push(xs[n - 1].clone());
        oy.push(ys[n - 1].clone());
        Self { xs: ox, ys: oy }
    }

    pub fn knots(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(&self.ys)
    }

    pub fn piece_count(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let (k, t) = split_integer(x);
        let i = self.xs.partition_point(|b| b <= &t).clamp(1, self.xs.len() - 1) - 1;
        interpolate(&self.xs[i], &self.ys[i], &self.xs[i + 1], &self.ys[i + 1], &t)
            + Rational::from_integer(k)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneLift) -> Result<MonotoneLift, LiftError> {
        let limit = resource_limit();
        let mut xs = vec![inner.xs[0].clone()];
        for i in 0..inner.xs.len() - 1 {
            let (x0, x1) = (&inner.xs[i], &inner.xs[i + 1]);
            let (y0, y1) = (&inner.ys[i], &inner.ys[i + 1]);
            if y1 > y0 {
                let (k0, _) = split_integer(y0);
                let (k1, _) = split_integer(y1);
                let mut k = k0;
                while k <= k1 {
                    let shift = Rational::from_integer(k.clone());
                    for b in &self.xs[..self.xs.len() - 1] {
                        let level = b + &shift;
                        if &level > y0 && &level < y1 {
                            xs.push(x0 + (x1 - x0) * (&level - y0) / (y1 - y0));
                        }
                    }
                    k += 1;
                }
            }
            xs.push(x1.clone());
            if xs.len() > limit {
                return Err(LiftError::ResourceLimit { pieces: xs.len(), limit });
            }
        }
        let ys = xs.iter().map(|x| self.eval(&inner.eval(x))).collect();
        Ok(Self::merged(xs, ys))
    }

    /// `G^n` for `n ≥ 1`.
    pub fn power(&self, n: usize) -> Result<MonotoneLift, LiftError> {
        assert!(n >= 1, "power of a lift needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Maximal intervals of one period where the map is constant, as
    /// `(lo, hi)` with `lo` in `[0, 1)`; a flat spot running through 1 wraps
    /// and ends past 1.
    pub fn flat_spots(&self) -> Vec<(Rational, Rational)> {
        let mut spots: Vec<(Rational, Rational)> = Vec::new();
        for i in 0..self.xs.len() - 1 {
            if self.ys[i] == self.ys[i + 1] {
                match spots.last_mut() {
                    Some(last) if last.1 == self.xs[i] => last.1 = self.xs[i + 1].clone(),
                    _ => spots.push((self.xs[i].clone(), self.xs[i + 1].clone())),
                }
            }
        }
        if spots.len() >= 2 && spots[0].0 == zero() && spots.last().unwrap().1 == one() {
            let first = spots.remove(0);
            spots.last_mut().unwrap().1 = one() + first.1;
        }
        spots
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_left,x_right,value_left,value_right,slope\n");
        for i in 0..self.xs.len() - 1 {
            let slope = (&self.ys[i + 1] - &self.ys[i]) / (&self.xs[i + 1] - &self.xs[i]);
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                self.xs[i],
                self.xs[i + 1],
                self.ys[i],
                self.ys[i + 1],
                slope
            );
        }
        out
    }
}
