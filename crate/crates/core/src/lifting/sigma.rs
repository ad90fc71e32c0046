use crate::rational::{one, Rational};

/// The involution of `[0, 1]` fixing `[0, a)` pointwise and reversing
/// `[a, 1]`, so `σ(a) = 1` and `σ(1) = a`.
///
/// On the circle side, `t` in `[0, a)` stands for the point `t` and `t` in
/// `[a, 1)` for the point `a + 1 - t` of `(a, 1]`; the fixed point `a` itself
/// has no circle coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaConjugacy {
    pub a: Rational,
}

impl SigmaConjugacy {
    pub fn new(a: Rational) -> Self {
        Self { a }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        if x < &self.a {
            x.clone()
        } else {
            &self.a + one() - x
        }
    }

    /// Interval point for the circle coordinate `t` in `[0, 1)`.
    pub fn from_circle(&self, t: &Rational) -> Rational {
        self.apply(t)
    }

    /// Circle coordinate of a point of `[0, 1]` other than `a`.
    pub fn to_circle(&self, x: &Rational) -> Option<Rational> {
        if x == &self.a {
            None
        } else {
            Some(self.apply(x))
        }
    }
}
