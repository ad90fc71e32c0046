//! Seeded random patterns and maps for tests and experiments.

use crate::combinatorics::{is_convergent, CyclicPattern};
use crate::pwlmap::{detect_bimodal, p_linear_from_pattern, PwlMap};
use crate::rational::{one, ratio, zero, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform cyclic permutation of `1..=n`.
pub fn random_cyclic_pattern<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CyclicPattern {
    let mut order: Vec<usize> = (2..=n).collect();
    order.shuffle(rng);
    order.insert(0, 1);
    CyclicPattern::from_cycle(&order).expect("a shuffled cycle is a cycle")
}

pub fn random_convergent_pattern<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CyclicPattern {
    loop {
        let p = random_cyclic_pattern(rng, n);
        if is_convergent(&p) {
            return p;
        }
    }
}

/// A convergent cyclic pattern with at most two turning points whose
/// P-linear map passes bimodal detection. Needs `n ≥ 3`.
pub fn random_bimodal_pattern<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CyclicPattern {
    assert!(n >= 3, "bimodal patterns need period at least 3");
    loop {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(i..=n);
        let mut values: Vec<usize> = (1..=n).collect();
        values.shuffle(rng);
        let (a, rest) = values.split_at_mut(i);
        let (b, c) = rest.split_at_mut(j - i);
        a.sort_unstable();
        b.sort_unstable_by(|x, y| y.cmp(x));
        c.sort_unstable();
        let Ok(p) = CyclicPattern::new(&values) else { continue };
        if is_convergent(&p) && detect_bimodal(&p_linear_from_pattern(&p)).is_ok() {
            return p;
        }
    }
}

fn grid<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    ratio(rng.gen_range(lo..=hi), den)
}

/// A random increasing-decreasing-increasing map with `f(M) = 1`,
/// `f(m) = 0`, a unique fixed point and a few extra breakpoints on each lap.
pub fn random_bimodal_map<R: Rng + ?Sized>(rng: &mut R) -> PwlMap {
    const D: i64 = 60;
    loop {
        let big_m = rng.gen_range(6..D / 2);
        let small_m = rng.gen_range(big_m + 6..D - 5);
        let f0 = grid(rng, 1, D - 1, D);
        let f1 = grid(rng, 1, D - 1, D);
        let mut pts: Vec<(Rational, Rational)> = vec![(zero(), f0.clone())];
        let mut extra = |pts: &mut Vec<(Rational, Rational)>, lo: i64, hi: i64, from: &Rational, to: &Rational| {
            let k = rng.gen_range(0..=2usize);
            let mut xs: Vec<i64> = (0..k).map(|_| rng.gen_range(lo + 1..hi)).collect();
            xs.sort_unstable();
            xs.dedup();
            let mut vs: Vec<Rational> = xs
                .iter()
                .map(|_| {
                    let t = ratio(rng.gen_range(1..D), D);
                    from + (to - from) * t
                })
                .collect();
            if from < to {
                vs.sort();
            } else {
                vs.sort_by(|a, b| b.cmp(a));
            }
            for (x, v) in xs.into_iter().zip(vs) {
                pts.push((ratio(x, D), v));
            }
        };
        extra(&mut pts, 0, big_m, &f0, &one());
        pts.push((ratio(big_m, D), one()));
        extra(&mut pts, big_m, small_m, &one(), &zero());
        pts.push((ratio(small_m, D), zero()));
        extra(&mut pts, small_m, D, &zero(), &f1);
        pts.push((one(), f1.clone()));
        let (xs, ys): (Vec<Rational>, Vec<Rational>) = pts.into_iter().unzip();
        let Ok(f) = PwlMap::new(xs, ys) else { continue };
        if detect_bimodal(&f).is_ok() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_bimodal_pattern(&mut a, 9), random_bimodal_pattern(&mut b, 9));
        assert_eq!(random_bimodal_map(&mut a), random_bimodal_map(&mut b));
        let p = random_convergent_pattern(&mut a, 8);
        assert!(is_convergent(&p));
    }
}
