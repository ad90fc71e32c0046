use super::map::PwlMap;
use crate::combinatorics::CyclicPattern;
use crate::rational::{one, ratio, zero, Rational};

/// Positions `i / (n + 1)` of the orbit points of the P-linear map.
pub fn p_linear_orbit(pattern: &CyclicPattern) -> Vec<Rational> {
    let n = pattern.period() as i64;
    (1..=n).map(|i| ratio(i, n + 1)).collect()
}

/// The P-linear map of a pattern: orbit points at `i / (n + 1)`, linear in
/// between, constant outside the orbit's hull.
pub fn p_linear_from_pattern(pattern: &CyclicPattern) -> PwlMap {
    let n = pattern.period();
    let d = n as i64 + 1;
    let mut xs = vec![zero()];
    let mut ys = vec![ratio(pattern.apply(1) as i64, d)];
    for i in 1..=n {
        xs.push(ratio(i as i64, d));
        ys.push(ratio(pattern.apply(i) as i64, d));
    }
    xs.push(one());
    ys.push(ratio(pattern.apply(n) as i64, d));
    PwlMap::new(xs, ys).expect("P-linear data is a valid map")
}
