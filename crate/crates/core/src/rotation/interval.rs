use super::number::{first_zero, rotation_number, RotationResult, DEFAULT_MAX_DENOMINATOR, DEFAULT_MAX_ITERATIONS};
use crate::combinatorics::{is_convergent, orp_of_cycle, CyclicPattern, OverRotationPair};
use crate::lifting::{lift_bimodal, lift_well_behaved, lower_bound_g, lower_g_bimodal, DegreeOneLift, LiftError, MonotoneLift, SigmaConjugacy};
use crate::oracle;
use crate::pwlmap::{
    detect_bimodal, detect_well_behaved, p_linear_from_pattern, prepare, AnatomyError, BimodalAnatomy,
    BimodalCase, IntervalSet, Normalization, Prepared, PwlMap, WellBehavedAnatomy,
};
use crate::rational::{half, split_integer, zero, Rational};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RotationError {
    #[error(transparent)]
    Anatomy(#[from] AnatomyError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("rotation number is only enclosed, no orbit can be realized")]
    NotExact,
    #[error("no admissible orbit of rotation number {0}")]
    NoAdmissibleOrbit(String),
}

/// The anatomy a map was analysed with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapAnatomy {
    Bimodal(BimodalAnatomy),
    WellBehaved(WellBehavedAnatomy),
}

impl MapAnatomy {
    /// Detects bimodal shape first, then falls back to the well-behaved test.
    pub fn detect(f: &PwlMap) -> Result<Self, AnatomyError> {
        match detect_bimodal(f) {
            Ok(b) => Ok(MapAnatomy::Bimodal(b)),
            Err(AnatomyError::Trivial) => Err(AnatomyError::Trivial),
            Err(_) => detect_well_behaved(f).map(MapAnatomy::WellBehaved),
        }
    }

    pub fn map(&self) -> &PwlMap {
        match self {
            MapAnatomy::Bimodal(b) => &b.map,
            MapAnatomy::WellBehaved(w) => &w.map,
        }
    }

    pub fn fixed_point(&self) -> &Rational {
        match self {
            MapAnatomy::Bimodal(b) => &b.a,
            MapAnatomy::WellBehaved(w) => &w.a,
        }
    }

    pub fn normalization(&self) -> &Normalization {
        match self {
            MapAnatomy::Bimodal(b) => &b.normalization,
            MapAnatomy::WellBehaved(w) => &w.normalization,
        }
    }

    /// The trapping set `Y`, in normalized coordinates.
    pub fn y_set(&self) -> IntervalSet {
        match self {
            MapAnatomy::Bimodal(b) => b.y_set(),
            MapAnatomy::WellBehaved(w) => w.y.clone(),
        }
    }

    pub fn lift(&self) -> DegreeOneLift {
        match self {
            MapAnatomy::Bimodal(b) => lift_bimodal(b),
            MapAnatomy::WellBehaved(w) => lift_well_behaved(w),
        }
    }

    /// The lower bound map, from the landmark formula for bimodal maps and
    /// from the infimum scan otherwise.
    pub fn lower_map(&self, lift: &DegreeOneLift) -> Result<MonotoneLift, LiftError> {
        match self {
            MapAnatomy::Bimodal(b) => Ok(lower_g_bimodal(b, lift)?.g),
            MapAnatomy::WellBehaved(_) => lower_bound_g(lift),
        }
    }

    pub fn classification(&self) -> Classification {
        match self {
            MapAnatomy::Bimodal(b) => Classification::Bimodal { case: b.case },
            MapAnatomy::WellBehaved(_) => Classification::WellBehaved,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    Trivial,
    Bimodal { case: BimodalCase },
    WellBehaved,
}

/// A periodic orbit of the input map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedOrbit {
    /// Orbit in the input coordinates, in dynamical order.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub points: Vec<Rational>,
    /// The same orbit in normalized coordinates.
    #[serde(skip)]
    pub normalized: Vec<Rational>,
    #[serde(serialize_with = "serialize_pattern")]
    pub pattern: CyclicPattern,
    pub orp: OverRotationPair,
    /// The point of the lift's circle the orbit was started from.
    #[serde(with = "crate::rational::serde_str")]
    pub seed: Rational,
}

fn serialize_pattern<S: serde::Serializer>(p: &CyclicPattern, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl RealizedOrbit {
    pub fn lies_in(&self, y: &IntervalSet) -> bool {
        self.normalized.iter().all(|x| y.contains(x))
    }
}

/// Points where `D(x) = G^q(x) - x - p` vanishes, grouped into components
/// `[u, w]` of the zero set within one period.
fn zero_components(gq: &MonotoneLift, p: &Rational) -> Vec<(Rational, Rational)> {
    let d: Vec<(Rational, Rational)> = gq.knots().map(|(x, y)| (x.clone(), y - x - p)).collect();
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |u: Rational, w: Rational| match out.last_mut() {
        Some(last) if last.1 == u => last.1 = w,
        _ => out.push((u, w)),
    };
    for i in 0..d.len() {
        let (x, v) = &d[i];
        if v.is_zero() {
            push(x.clone(), x.clone());
            if let Some((x1, v1)) = d.get(i + 1) {
                if v1.is_zero() {
                    push(x.clone(), x1.clone());
                }
            }
        } else if let Some((_, v1)) = d.get(i + 1) {
            if !v1.is_zero() && (v < &zero()) != (v1 < &zero()) {
                let r = first_zero(&d[i..i + 2]);
                push(r.clone(), r);
            }
        }
    }
    out
}

/// Realizes the minimal orbit for an exact rotation number `p/q`: a point of
/// `{G^q(x) = x + p}` whose `G`-orbit runs where `G = F`, pulled back to the
/// interval map.
pub fn realize_zf(
    anatomy: &MapAnatomy,
    lift: &DegreeOneLift,
    g: &MonotoneLift,
    rho: &RotationResult,
) -> Result<RealizedOrbit, RotationError> {
    let Some(rho) = rho.exact() else {
        return Err(RotationError::NotExact);
    };
    let q = rho.denom().to_u64().expect("denominator fits in u64");
    let p = Rational::from_integer(rho.numer().clone());
    let gq = g.power(q as usize)?;
    let mut candidates: Vec<Rational> = Vec::new();
    for (u, w) in zero_components(&gq, &p) {
        candidates.push(u.clone());
        if u != w {
            candidates.push(w.clone());
            candidates.push((&u + &w) / Rational::from_integer(2.into()));
        }
    }
    let sigma = SigmaConjugacy::new(anatomy.fixed_point().clone());
    let map = anatomy.map();
    'next: for seed in candidates {
        let mut x = seed.clone();
        let mut circle = Vec::with_capacity(q as usize);
        for _ in 0..q {
            let gx = g.eval(&x);
            match lift.eval(&x) {
                Ok(fx) if fx == gx => {}
                _ => continue 'next,
            }
            circle.push(split_integer(&x).1);
            x = gx;
        }
        if x != &seed + &p {
            continue;
        }
        let normalized: Vec<Rational> = circle.iter().map(|t| sigma.from_circle(t)).collect();
        for i in 0..normalized.len() {
            let next = &normalized[(i + 1) % normalized.len()];
            if &map.eval_unchecked(&normalized[i]) != next {
                continue 'next;
            }
        }
        let points: Vec<Rational> =
            normalized.iter().map(|x| anatomy.normalization().backward(x)).collect();
        let Ok(pattern) = CyclicPattern::from_orbit(&points) else { continue };
        let Ok(orp) = orp_of_cycle(&pattern) else { continue };
        if orp.rho() != *rho || orp.p != q {
            continue;
        }
        return Ok(RealizedOrbit { points, normalized, pattern, orp, seed });
    }
    Err(RotationError::NoAdmissibleOrbit(rho.to_string()))
}

/// Tunable bounds for the rotation number search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationOptions {
    pub max_denominator: u64,
    pub max_iterations: usize,
}

impl Default for RotationOptions {
    fn default() -> Self {
        Self { max_denominator: DEFAULT_MAX_DENOMINATOR, max_iterations: DEFAULT_MAX_ITERATIONS }
    }
}

/// `[ρ, 1/2]` with the left endpoint exact or enclosed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverRotationInterval {
    pub left: RotationResult,
    #[serde(with = "crate::rational::serde_str")]
    pub right: Rational,
    pub classification: Classification,
    pub normalization: Normalization,
    /// The minimal orbit, when the left endpoint is exact and not trivial.
    pub zf: Option<RealizedOrbit>,
}

impl OverRotationInterval {
    pub fn is_degenerate(&self) -> bool {
        self.left.exact() == Some(&self.right)
    }
}

pub fn over_rotation_interval(f: &PwlMap) -> Result<OverRotationInterval, RotationError> {
    over_rotation_interval_with(f, RotationOptions::default())
}

pub fn over_rotation_interval_with(
    f: &PwlMap,
    opts: RotationOptions,
) -> Result<OverRotationInterval, RotationError> {
    if let Prepared::Trivial { normalization, .. } = prepare(f)? {
        return Ok(OverRotationInterval {
            left: RotationResult::Exact { rho: half(), witness: zero() },
            right: half(),
            classification: Classification::Trivial,
            normalization,
            zf: None,
        });
    }
    let anatomy = MapAnatomy::detect(f)?;
    let lift = anatomy.lift();
    let g = anatomy.lower_map(&lift)?;
    let left = rotation_number(&g, opts.max_denominator, opts.max_iterations)?;
    // at 1/2 the interval is a point and the orbit may only exist through
    // collapsed spots, so it is best effort there
    let zf = match left.exact() {
        Some(r) if *r == half() => realize_zf(&anatomy, &lift, &g, &left).ok(),
        Some(_) => Some(realize_zf(&anatomy, &lift, &g, &left)?),
        None => None,
    };
    Ok(OverRotationInterval {
        left,
        right: half(),
        classification: anatomy.classification(),
        normalization: anatomy.normalization().clone(),
        zf,
    })
}

/// Where the left endpoint used by [`verify_overtwist`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointSource {
    Lifting,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OvertwistReport {
    pub convergent: bool,
    pub orp: Option<OverRotationPair>,
    pub coprime: bool,
    #[serde(with = "crate::rational::serde_str::option")]
    pub left_endpoint: Option<Rational>,
    pub source: Option<EndpointSource>,
    pub overtwist: bool,
}

/// Convergent, coprime over-rotation pair, and the P-linear map's
/// over-rotation interval starting exactly at the pattern's own number.
pub fn verify_overtwist_report(pattern: &CyclicPattern) -> OvertwistReport {
    let mut report = OvertwistReport {
        convergent: is_convergent(pattern),
        orp: orp_of_cycle(pattern).ok(),
        coprime: false,
        left_endpoint: None,
        source: None,
        overtwist: false,
    };
    let Some(orp) = report.orp else { return report };
    report.coprime = orp.is_coprime();
    if !report.convergent || !report.coprime {
        return report;
    }
    let f = p_linear_from_pattern(pattern);
    match over_rotation_interval(&f) {
        Ok(iv) if iv.left.exact().is_some() => {
            report.left_endpoint = iv.left.exact().cloned();
            report.source = Some(EndpointSource::Lifting);
        }
        _ => {
            if let Ok(v) = oracle::left_endpoint(pattern) {
                report.left_endpoint = Some(v);
                report.source = Some(EndpointSource::Oracle);
            }
        }
    }
    report.overtwist = report.left_endpoint.as_ref() == Some(&orp.rho());
    report
}

pub fn verify_overtwist(pattern: &CyclicPattern) -> bool {
    verify_overtwist_report(pattern).overtwist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{bimodal_overtwist, enumerate_bimodal_overtwists, unimodal_overtwist};
    use crate::rational::ratio;

    fn pattern(v: &[usize]) -> CyclicPattern {
        CyclicPattern::new(v).unwrap()
    }

    #[test]
    fn stefan_interval() {
        let iv = over_rotation_interval(&p_linear_from_pattern(&pattern(&[2, 3, 1]))).unwrap();
        assert_eq!(iv.left.exact(), Some(&ratio(1, 3)));
        let zf = iv.zf.unwrap();
        assert!(zf.pattern.same_pattern(&pattern(&[2, 3, 1])));
    }

    #[test]
    fn degenerate_bimodal_map() {
        let f = PwlMap::from_json(r#"{"breakpoints": ["0", "1/3", "2/3", "1"], "values": ["1/2", "1", "0", "1/2"]}"#)
            .unwrap();
        let iv = over_rotation_interval(&f).unwrap();
        assert!(iv.is_degenerate());
    }

    #[test]
    fn trivial_map_is_degenerate() {
        let iv = over_rotation_interval(&p_linear_from_pattern(&pattern(&[2, 1]))).unwrap();
        assert!(iv.is_degenerate());
        assert_eq!(iv.classification, Classification::Trivial);
    }

    #[test]
    fn unimodal_two_sevenths() {
        let f = p_linear_from_pattern(&unimodal_overtwist(2, 7).unwrap());
        let iv = over_rotation_interval(&f).unwrap();
        assert_eq!(iv.left.exact(), Some(&ratio(2, 7)));
    }

    #[test]
    fn bimodal_realizes_itself() {
        let pat = bimodal_overtwist(3, 3, 11).unwrap();
        let iv = over_rotation_interval(&p_linear_from_pattern(&pat)).unwrap();
        assert_eq!(iv.left.exact(), Some(&ratio(3, 11)));
        let zf = iv.zf.unwrap();
        assert_eq!(zf.pattern, pat);
        assert_eq!(zf.orp, OverRotationPair::new(3, 11).unwrap());
    }

    #[test]
    fn verification() {
        assert!(verify_overtwist(&pattern(&[4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8])));
        for pat in enumerate_bimodal_overtwists(2, 9).unwrap() {
            assert!(verify_overtwist(&pat));
        }
        // 1 -> 3 -> 2 -> 4 -> 1 swaps sides at every step
        let r = verify_overtwist_report(&pattern(&[3, 4, 2, 1]));
        assert_eq!(r.orp, Some(OverRotationPair::new(2, 4).unwrap()));
        assert!(!r.overtwist);
    }
}
