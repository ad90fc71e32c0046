use crate::lifting::{LiftError, MonotoneLift};
use crate::rational::{bit_size, floor, int, split_integer, zero, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;

pub const DEFAULT_MAX_DENOMINATOR: u64 = 512;
pub const DEFAULT_MAX_ITERATIONS: usize = 4096;

// orbit points past this size stop the exact iteration early
const ORBIT_BIT_BUDGET: u64 = 1 << 16;

/// Outcome of a rotation number computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RotationResult {
    /// `ρ = p/q` in lowest terms with `G^q(witness) = witness + p`.
    Exact {
        #[serde(with = "crate::rational::serde_str")]
        rho: Rational,
        #[serde(with = "crate::rational::serde_str")]
        witness: Rational,
    },
    /// `lo < ρ < hi`; no fraction with denominator up to the bound lies in
    /// between.
    Enclosure {
        #[serde(with = "crate::rational::serde_str")]
        lo: Rational,
        #[serde(with = "crate::rational::serde_str")]
        hi: Rational,
        iterations: usize,
    },
}

impl RotationResult {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RotationResult::Exact { rho, .. } => Some(rho),
            RotationResult::Enclosure { .. } => None,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RotationResult::Exact { rho, .. } => rho == x,
            RotationResult::Enclosure { lo, hi, .. } => lo < x && x < hi,
        }
    }
}

/// Where `p/q` sits relative to the rotation number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidate {
    /// `ρ < p/q`.
    Above,
    /// `ρ > p/q`.
    Below,
    /// `ρ = p/q`, with a point where `G^q(x) = x + p`.
    Hit(Rational),
}

/// Decides `p/q` against `ρ(G)` from the sign of `G^q(x) - x - p`, which is
/// 1-periodic, so its sign over the knots of one period settles it.
pub fn test_candidate(g: &MonotoneLift, p: &BigInt, q: u64) -> Result<Candidate, LiftError> {
    let gq = g.power(q as usize)?;
    let p = Rational::from_integer(p.clone());
    let d: Vec<(Rational, Rational)> = gq.knots().map(|(x, y)| (x.clone(), y - x - &p)).collect();
    if d.iter().all(|(_, v)| v > &zero()) {
        return Ok(Candidate::Below);
    }
    if d.iter().all(|(_, v)| v < &zero()) {
        return Ok(Candidate::Above);
    }
    Ok(Candidate::Hit(first_zero(&d)))
}

/// Smallest root of the piecewise linear function through the given points,
/// which must change sign or vanish somewhere.
pub(crate) fn first_zero(d: &[(Rational, Rational)]) -> Rational {
    for (i, (x, v)) in d.iter().enumerate() {
        if v.is_zero() {
            return x.clone();
        }
        if let Some((x1, v1)) = d.get(i + 1) {
            if (v < &zero()) != (v1 < &zero()) && !v1.is_zero() {
                return x - v * (x1 - x) / (v1 - v);
            }
        }
    }
    unreachable!("caller checked for a sign change")
}

/// `(G^n(0) - 1) / n`, `(G^n(0) + 1) / n` and `G^n(0)`.
pub fn enclosure(g: &MonotoneLift, n: usize) -> (Rational, Rational, Rational) {
    let mut x = zero();
    for _ in 0..n {
        x = g.eval(&x);
    }
    let nn = int(n as i64);
    ((&x - int(1)) / &nn, (&x + int(1)) / &nn, x)
}

fn exact_from_orbit(g: &MonotoneLift, max_iterations: usize) -> (Option<RotationResult>, Rational, usize) {
    let mut seen: HashMap<Rational, (usize, BigInt)> = HashMap::new();
    let mut x = zero();
    let mut n = 0;
    loop {
        let (k, t) = split_integer(&x);
        if let Some((m, km)) = seen.get(&t) {
            let period = (n - m) as i64;
            let rho = Rational::new(k - km, BigInt::from(period));
            let witness = t.clone();
            return (Some(RotationResult::Exact { rho, witness }), x, n);
        }
        if n == max_iterations || bit_size(&x) > ORBIT_BIT_BUDGET {
            return (None, x, n);
        }
        seen.insert(t, (n, k));
        x = g.eval(&x);
        n += 1;
    }
}

/// Exact rotation number of `G`, or an open enclosure of it.
///
/// The orbit of 0 is iterated exactly; if it closes up mod 1 the answer is
/// read off the orbit. Otherwise the Stern–Brocot tree is searched inside
/// `((G^n(0) - 1)/n, (G^n(0) + 1)/n)` for `p/q` with `q ≤ max_denominator`.
pub fn rotation_number(
    g: &MonotoneLift,
    max_denominator: u64,
    max_iterations: usize,
) -> Result<RotationResult, LiftError> {
    let max_iterations = max_iterations.max(1);
    let (found, x, n) = exact_from_orbit(g, max_iterations);
    if let Some(res) = found {
        return Ok(res);
    }
    let nn = int(n.max(1) as i64);
    let lo = (&x - int(1)) / &nn;
    let hi = (&x + int(1)) / &nn;
    farey_search(g, lo, hi, n, max_denominator)
}

fn frac(p: &BigInt, q: u64) -> Rational {
    Rational::new(p.clone(), BigInt::from(q))
}

/// Stern–Brocot descent towards `ρ ∈ (lo, hi)`; only nodes inside the
/// current bounds are tested.
pub fn farey_search(
    g: &MonotoneLift,
    mut lo: Rational,
    mut hi: Rational,
    iterations: usize,
    max_denominator: u64,
) -> Result<RotationResult, LiftError> {
    let exact = |rho: Rational, witness: Rational| Ok(RotationResult::Exact { rho, witness });
    // integers first, so that the descent happens between consecutive ones
    let mut k = floor(&lo);
    loop {
        let next = &k + BigInt::one();
        let r = Rational::from_integer(next.clone());
        if r >= hi {
            break;
        }
        match test_candidate(g, &next, 1)? {
            Candidate::Hit(w) => return exact(r, w),
            Candidate::Below => {
                lo = r;
                k = next;
            }
            Candidate::Above => {
                hi = r;
                break;
            }
        }
    }
    let (mut lp, mut lq) = (k.clone(), 1u64);
    let (mut rp, mut rq) = (k + BigInt::one(), 1u64);
    loop {
        let mq = lq + rq;
        if mq > max_denominator {
            break;
        }
        let mp = &lp + &rp;
        let m = frac(&mp, mq);
        if m <= lo {
            lp = mp;
            lq = mq;
            continue;
        }
        if m >= hi {
            rp = mp;
            rq = mq;
            continue;
        }
        match test_candidate(g, &mp, mq)? {
            Candidate::Hit(w) => return exact(m, w),
            Candidate::Below => {
                lo = m;
                lp = mp;
                lq = mq;
            }
            Candidate::Above => {
                hi = m;
                rp = mp;
                rq = mq;
            }
        }
    }
    Ok(RotationResult::Enclosure { lo, hi, iterations })
}
