use crate::pwlmap::PwlMap;
use crate::rational::Rational;

fn extreme_on(f: &PwlMap, lo: &Rational, hi: &Rational, max: bool) -> Rational {
    let (mn, mx) = f.image(lo, hi);
    if max {
        mx
    } else {
        mn
    }
}

/// Looks for a fixed point `a` and points `a < b < c` with
/// `f(c) ≤ a` and `f(b) ≥ c`, or the mirror image `c < b < a` with
/// `f(c) ≥ a` and `f(b) ≤ c`.
pub fn has_horseshoe(f: &PwlMap) -> bool {
    let Ok(fixed) = f.fixed_points() else {
        return false;
    };
    for a in &fixed {
        for c in f.preimages(a) {
            // the best c on each side is a point where f returns to a
            if &c > a && extreme_on(f, a, &c, true) >= c {
                return true;
            }
            if &c < a && extreme_on(f, &c, a, false) <= c {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::CyclicPattern;
    use crate::pwlmap::p_linear_from_pattern;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        let tent = PwlMap::new(vec![int(0), ratio(1, 2), int(1)], vec![int(0), int(1), int(0)]).unwrap();
        assert!(has_horseshoe(&tent));
        assert!(!has_horseshoe(&p_linear_from_pattern(&CyclicPattern::new(&[2, 1]).unwrap())));
        assert!(has_horseshoe(&p_linear_from_pattern(&CyclicPattern::new(&[3, 1, 4, 2]).unwrap())));
        assert!(!has_horseshoe(&PwlMap::identity()));
    }
}
