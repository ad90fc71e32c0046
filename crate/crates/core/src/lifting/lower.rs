use super::lift::DegreeOneLift;
use super::monotone::MonotoneLift;
use super::LiftError;
use crate::pwlmap::{BimodalAnatomy, BimodalCase};
use crate::rational::{one, solve_linear, zero, Rational};

/// `G(x) = inf { F(y) : y ≥ x }`, the largest non-decreasing map below `F`.
///
/// Fails when the result is discontinuous, which happens exactly when `F` is
/// not eventually increasing.
pub fn lower_bound_g(lift: &DegreeOneLift) -> Result<MonotoneLift, LiftError> {
    let pieces = lift.pieces_over(0..2);
    let n_first = lift.pieces().len();
    let mut running: Option<Rational> = None;
    let mut segments: Vec<Vec<(Rational, Rational)>> = Vec::new();
    for (idx, p) in pieces.iter().enumerate().rev() {
        let seg: Vec<(Rational, Rational)> = if p.v1 > p.v0 {
            match &running {
                Some(r) if r <= &p.v0 => vec![(p.t0.clone(), r.clone()), (p.t1.clone(), r.clone())],
                Some(r) if r < &p.v1 => {
                    let x = solve_linear(&p.t0, &p.v0, &p.t1, &p.v1, r).unwrap();
                    vec![(p.t0.clone(), p.v0.clone()), (x, r.clone()), (p.t1.clone(), r.clone())]
                }
                _ => vec![(p.t0.clone(), p.v0.clone()), (p.t1.clone(), p.v1.clone())],
            }
        } else {
            let c = match &running {
                Some(r) if r < &p.v1 => r.clone(),
                _ => p.v1.clone(),
            };
            vec![(p.t0.clone(), c.clone()), (p.t1.clone(), c)]
        };
        if idx < n_first {
            let end = &seg.last().unwrap().1;
            if let Some(r) = &running {
                if end != r {
                    return Err(LiftError::NotEventuallyIncreasing(p.t1.to_string()));
                }
            }
            segments.push(seg.clone());
        }
        running = Some(seg[0].1.clone());
    }
    segments.reverse();
    MonotoneLift::from_points(segments.into_iter().flatten().collect())
}

pub fn is_eventually_increasing(lift: &DegreeOneLift) -> bool {
    lower_bound_g(lift).is_ok()
}

/// The monotone map built from the landmarks of an N-bimodal map, together
/// with the open intervals where it is constant and differs from the lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerMap {
    pub g: MonotoneLift,
    pub collapsed: Vec<(Rational, Rational)>,
}

enum Clause {
    Lift(Rational, Rational),
    Flat(Rational, Rational, Rational),
}

pub fn lower_g_bimodal(an: &BimodalAnatomy, lift: &DegreeOneLift) -> Result<LowerMap, LiftError> {
    let a = &an.a;
    let r = |x: &Rational| a + one() - x;
    let m_big = &an.big_m;
    let d1 = &an.d1;
    let f_d1 = lift.eval_right(d1);
    let (clauses, collapsed) = match an.case {
        BimodalCase::One => {
            let ap = an.a_prime.clone().unwrap();
            let d2 = an.d2.clone().unwrap();
            let f0 = lift.eval_right(&zero());
            (
                vec![
                    Clause::Lift(zero(), ap.clone()),
                    Clause::Flat(ap.clone(), m_big.clone(), a.clone()),
                    Clause::Lift(m_big.clone(), d1.clone()),
                    Clause::Flat(d1.clone(), a.clone(), f_d1),
                    Clause::Lift(a.clone(), r(&an.a_dblprime)),
                    Clause::Flat(r(&an.a_dblprime), r(&an.small_m), one()),
                    Clause::Lift(r(&an.small_m), r(&d2)),
                    Clause::Flat(r(&d2), one(), f0 + one()),
                ],
                vec![
                    (ap, m_big.clone()),
                    (d1.clone(), a.clone()),
                    (r(&an.a_dblprime), r(&an.small_m)),
                    (r(&d2), one()),
                ],
            )
        }
        BimodalCase::Two => (
            vec![
                Clause::Flat(zero(), m_big.clone(), a.clone()),
                Clause::Lift(m_big.clone(), d1.clone()),
                Clause::Flat(d1.clone(), a.clone(), f_d1),
                Clause::Lift(a.clone(), r(&an.a_dblprime)),
                Clause::Flat(r(&an.a_dblprime), r(&an.small_m), one()),
                Clause::Lift(r(&an.small_m), one()),
            ],
            vec![
                (zero(), m_big.clone()),
                (d1.clone(), a.clone()),
                (r(&an.a_dblprime), r(&an.small_m)),
            ],
        ),
    };
    let mut points = Vec::new();
    for clause in clauses {
        match clause {
            Clause::Lift(u, w) => {
                if u < w {
                    let pts = lift
                        .trace(&u, &w)
                        .ok_or_else(|| LiftError::Malformed(format!("lift jumps inside [{u}, {w}]")))?;
                    points.extend(pts);
                }
            }
            Clause::Flat(u, w, c) => {
                if u < w {
                    points.push((u, c.clone()));
                    points.push((w, c));
                }
            }
        }
    }
    let g = MonotoneLift::from_points(points)?;
    let collapsed = collapsed.into_iter().filter(|(u, w)| u < w).collect();
    Ok(LowerMap { g, collapsed })
}
