use super::sigma::SigmaConjugacy;
use super::LiftError;
use crate::pwlmap::{BimodalAnatomy, PwlMap, WellBehavedAnatomy};
use crate::rational::{interpolate, one, split_integer, Rational};
use num_bigint::BigInt;
use std::fmt::Write as _;

/// A linear piece `[t0, t1)` of a right-continuous map, with value `v0` at
/// `t0` and left limit `v1` at `t1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPiece {
    pub t0: Rational,
    pub t1: Rational,
    pub v0: Rational,
    pub v1: Rational,
}

impl LiftPiece {
    pub fn eval(&self, t: &Rational) -> Rational {
        interpolate(&self.t0, &self.v0, &self.t1, &self.v1, t)
    }

    pub fn slope(&self) -> Rational {
        (&self.v1 - &self.v0) / (&self.t1 - &self.t0)
    }

    fn shifted(&self, k: &Rational) -> Self {
        Self {
            t0: &self.t0 + k,
            t1: &self.t1 + k,
            v0: &self.v0 + k,
            v1: &self.v1 + k,
        }
    }
}

/// Degree-one lift `F(t + 1) = F(t) + 1` of the circle map conjugate to an
/// oriented map, stored on one period `[0, 1)`.
///
/// At the circle coordinates of points sent to the fixed point the map is
/// two-valued; those points are listed in `ambiguous` and `eval` refuses
/// them. Everywhere else the stored right-continuous representative is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOneLift {
    pieces: Vec<LiftPiece>,
    ambiguous: Vec<Rational>,
    a: Rational,
}

impl DegreeOneLift {
    /// The lift of an oriented map with fixed point `a`.
    pub fn from_map(map: &PwlMap, a: &Rational) -> Self {
        let sigma = SigmaConjugacy::new(a.clone());
        let preimages = map.preimages(a);
        let mut cuts: Vec<Rational> = map.breakpoints().to_vec();
        cuts.extend(preimages.iter().cloned());
        cuts.push(a.clone());
        cuts.sort();
        cuts.dedup();

        let mut left = Vec::new();
        let mut right = Vec::new();
        for w in cuts.windows(2) {
            let (x0, x1) = (&w[0], &w[1]);
            let y0 = map.eval_unchecked(x0);
            let y1 = map.eval_unchecked(x1);
            let mid = map.eval_unchecked(&((x0 + x1) / Rational::from_integer(BigInt::from(2))));
            let below = &mid < a;
            if x1 <= a {
                let (v0, v1) = if below {
                    (y0, y1)
                } else {
                    (a + one() - y0, a + one() - y1)
                };
                left.push(LiftPiece { t0: x0.clone(), t1: x1.clone(), v0, v1 });
            } else {
                let (v0, v1) = if below {
                    (one() + y1, one() + y0)
                } else {
                    (a + one() - y1, a + one() - y0)
                };
                right.push(LiftPiece { t0: sigma.apply(x1), t1: sigma.apply(x0), v0, v1 });
            }
        }
        right.reverse();
        left.extend(right);

        let mut ambiguous: Vec<Rational> =
            preimages.iter().filter(|x| *x != a).map(|x| sigma.apply(x)).collect();
        ambiguous.sort();
        ambiguous.dedup();
        Self { pieces: left, ambiguous, a: a.clone() }
    }

    /// A lift given directly by pieces covering `[0, 1)`.
    pub fn from_pieces(pieces: Vec<LiftPiece>, mut ambiguous: Vec<Rational>, a: Rational) -> Self {
        assert!(!pieces.is_empty(), "a lift needs at least one piece");
        ambiguous.sort();
        ambiguous.dedup();
        Self { pieces, ambiguous, a }
    }

    pub fn fixed_point(&self) -> &Rational {
        &self.a
    }

    pub fn pieces(&self) -> &[LiftPiece] {
        &self.pieces
    }

    /// Circle coordinates in `[0, 1)` where the lift is two-valued.
    pub fn ambiguous(&self) -> &[Rational] {
        &self.ambiguous
    }

    fn locate(&self, t: &Rational) -> usize {
        self.pieces.partition_point(|p| &p.t0 <= t) - 1
    }

    /// Value at `t` of the stored right-continuous representative, defined
    /// even at ambiguous points.
    pub fn eval_right(&self, t: &Rational) -> Rational {
        let (k, frac) = split_integer(t);
        let k = Rational::from_integer(k);
        self.pieces[self.locate(&frac)].eval(&frac) + k
    }

    /// Left limit at `t`.
    pub fn eval_left(&self, t: &Rational) -> Rational {
        let (k, frac) = split_integer(t);
        let k = Rational::from_integer(k);
        if frac == Rational::from_integer(BigInt::from(0)) {
            return self.pieces.last().unwrap().v1.clone() + k - one();
        }
        let i = self.pieces.partition_point(|p| p.t0 < frac) - 1;
        self.pieces[i].eval(&frac) + k
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, LiftError> {
        let (_, frac) = split_integer(t);
        if self.ambiguous.binary_search(&frac).is_ok() {
            return Err(LiftError::Ambiguous(t.to_string()));
        }
        Ok(self.eval_right(t))
    }

    /// Discontinuities in `[0, 1)` as `(t, left limit, value)`.
    pub fn jumps(&self) -> Vec<(Rational, Rational, Rational)> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let left = self.eval_left(&p.t0);
            if left != p.v0 {
                out.push((p.t0.clone(), left, p.v0.clone()));
            }
        }
        out
    }

    /// Pieces covering `[k, k + 1)` for each `k` in `range`.
    pub(crate) fn pieces_over(&self, range: std::ops::Range<i64>) -> Vec<LiftPiece> {
        let mut out = Vec::new();
        for k in range {
            let shift = Rational::from_integer(BigInt::from(k));
            out.extend(self.pieces.iter().map(|p| p.shifted(&shift)));
        }
        out
    }

    /// Points `(t, F(t))` tracing the lift across `[u, w]`, taking one-sided
    /// values from inside the interval at its ends. `None` if the lift jumps
    /// strictly inside.
    pub(crate) fn trace(&self, u: &Rational, w: &Rational) -> Option<Vec<(Rational, Rational)>> {
        let mut pts = vec![(u.clone(), self.eval_right(u))];
        for p in &self.pieces {
            if &p.t0 > u && &p.t0 < w {
                if self.eval_left(&p.t0) != p.v0 {
                    return None;
                }
                pts.push((p.t0.clone(), p.v0.clone()));
            }
        }
        pts.push((w.clone(), self.eval_left(w)));
        Some(pts)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_left,x_right,value_left,value_right,slope\n");
        for p in &self.pieces {
            let _ = writeln!(out, "{},{},{},{},{}", p.t0, p.t1, p.v0, p.v1, p.slope());
        }
        out
    }
}

/// The lift of an N-bimodal map in normal form.
pub fn lift_bimodal(anatomy: &BimodalAnatomy) -> DegreeOneLift {
    DegreeOneLift::from_map(&anatomy.map, &anatomy.a)
}

/// The lift of a well-behaved map in normal form.
pub fn lift_well_behaved(anatomy: &WellBehavedAnatomy) -> DegreeOneLift {
    DegreeOneLift::from_map(&anatomy.map, &anatomy.a)
}

/// The circle map `g = σ ∘ f ∘ σ` on `[0, 1)`, with values in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct ConjugatedMap {
    map: PwlMap,
    sigma: SigmaConjugacy,
}

pub fn conjugate_g(map: &PwlMap, a: &Rational) -> ConjugatedMap {
    ConjugatedMap { map: map.clone(), sigma: SigmaConjugacy::new(a.clone()) }
}

impl ConjugatedMap {
    pub fn eval(&self, t: &Rational) -> Result<Rational, LiftError> {
        let (_, frac) = split_integer(t);
        let x = self.sigma.from_circle(&frac);
        let y = self.map.eval_unchecked(&x);
        if y == self.sigma.a && x != self.sigma.a {
            return Err(LiftError::Ambiguous(t.to_string()));
        }
        Ok(self.sigma.apply(&y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{bimodal_overtwist, CyclicPattern};
    use crate::pwlmap::{detect_bimodal, p_linear_from_pattern, BimodalCase};
    use crate::rational::{int, ratio, zero};

    fn case_one() -> BimodalAnatomy {
        let f = PwlMap::new(
            vec![int(0), ratio(1, 4), ratio(3, 4), int(1)],
            vec![ratio(1, 5), int(1), int(0), ratio(4, 5)],
        )
        .unwrap();
        detect_bimodal(&f).unwrap()
    }

    // Piecewise description of the lift in terms of the landmarks.
    fn reference_lift(an: &BimodalAnatomy, t: &Rational) -> Rational {
        let f = |x: &Rational| an.map.eval_unchecked(x);
        let a = &an.a;
        let s = a + one() - t;
        match an.case {
            BimodalCase::One => {
                let ap = an.a_prime.as_ref().unwrap();
                if t < ap {
                    f(t)
                } else if t < a {
                    a + one() - f(t)
                } else if t < &(a + one() - &an.a_dblprime) {
                    a + one() - f(&s)
                } else {
                    one() + f(&s)
                }
            }
            BimodalCase::Two => {
                if t < a {
                    a + one() - f(t)
                } else if t < &(a + one() - &an.a_dblprime) {
                    a + one() - f(&s)
                } else {
                    one() + f(&s)
                }
            }
        }
    }

    fn check_against_reference(an: &BimodalAnatomy) {
        let lift = lift_bimodal(an);
        for k in 0..240 {
            let t = ratio(k, 240) + ratio(1, 997);
            if t >= one() {
                continue;
            }
            assert_eq!(lift.eval(&t).unwrap(), reference_lift(an, &t), "t = {t}");
            assert_eq!(lift.eval(&(&t + int(3))).unwrap(), reference_lift(an, &t) + int(3));
        }
    }

    #[test]
    fn matches_case_formulas() {
        let one_case = case_one();
        assert_eq!(one_case.case, BimodalCase::One);
        check_against_reference(&one_case);

        let stefan = p_linear_from_pattern(&CyclicPattern::new(&[2, 3, 1]).unwrap());
        let two_case = detect_bimodal(&stefan).unwrap();
        assert_eq!(two_case.case, BimodalCase::Two);
        check_against_reference(&two_case);

        let big = p_linear_from_pattern(&bimodal_overtwist(3, 3, 11).unwrap());
        check_against_reference(&detect_bimodal(&big).unwrap());
    }

    #[test]
    fn jumps_land_on_the_fixed_point() {
        for an in [case_one(), detect_bimodal(&p_linear_from_pattern(&CyclicPattern::new(&[2, 3, 1]).unwrap())).unwrap()] {
            let lift = lift_bimodal(&an);
            assert!(!lift.jumps().is_empty());
            for (_, left, right) in lift.jumps() {
                let hit = |v: &Rational| {
                    let (_, fr) = split_integer(v);
                    fr == zero() || fr == an.a
                };
                assert!(hit(&left) || hit(&right));
            }
        }
    }

    #[test]
    fn conjugation_identity() {
        let an = case_one();
        let g = conjugate_g(&an.map, &an.a);
        let lift = lift_bimodal(&an);
        let sigma = SigmaConjugacy::new(an.a.clone());
        for k in 0..100 {
            let x = ratio(2 * k + 1, 200);
            let fx = an.map.eval(&x).unwrap();
            if fx == an.a || x == an.a {
                continue;
            }
            let t = sigma.to_circle(&x).unwrap();
            let t = if t == one() { zero() } else { t };
            let gt = g.eval(&t).unwrap();
            assert_eq!(sigma.apply(&gt), fx);
            let d = lift.eval(&t).unwrap() - gt;
            assert!(d == zero() || d == one());
        }
        assert!(lift.eval(&an.d1).is_ok());
        let amb = lift.ambiguous().to_vec();
        assert!(!amb.is_empty());
        for t in amb {
            assert!(matches!(lift.eval(&t), Err(LiftError::Ambiguous(_))));
            assert!(matches!(g.eval(&t), Err(LiftError::Ambiguous(_))));
        }
    }

    #[test]
    fn csv_has_header() {
        let csv = lift_bimodal(&case_one()).to_csv();
        assert!(csv.starts_with("x_left,x_right,value_left,value_right,slope\n"));
        assert!(csv.lines().count() > 3);
    }
}
