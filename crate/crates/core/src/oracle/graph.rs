use super::OracleError;
use crate::combinatorics::{is_convergent, CyclicPattern};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_rational::Ratio;
use std::fmt::Write as _;

/// Small exact rationals; orbit coordinates here are the integers `1..=n`.
pub type Small = Ratio<i128>;

/// An affine map `x ↦ slope·x + intercept` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub slope: i128,
    pub intercept: i128,
}

impl Affine {
    pub const IDENTITY: Affine = Affine { slope: 1, intercept: 0 };

    pub fn apply(&self, x: &Small) -> Small {
        x * self.slope + self.intercept
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine {
            slope: self.slope * inner.slope,
            intercept: self.slope * inner.intercept + self.intercept,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub psi: u8,
}

/// Covering graph of a convergent pattern's P-linear map, over the intervals
/// cut out by the orbit and the fixed point.
#[derive(Debug, Clone)]
pub struct CoveringGraph {
    pub pattern: CyclicPattern,
    pub fixed_point: Small,
    pub vertices: Vec<(Small, Small)>,
    pub arcs: Vec<Arc>,
    maps: Vec<Affine>,
    adjacency: Vec<Vec<(usize, u8)>>,
}

pub(crate) fn small_to_rational(x: &Small) -> Rational {
    Rational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn fmt_small(x: &Small) -> String {
    small_to_rational(x).to_string()
}

impl CoveringGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn successors(&self, v: usize) -> &[(usize, u8)] {
        &self.adjacency[v]
    }

    /// The P-linear map restricted to vertex `v`.
    pub fn map_on(&self, v: usize) -> Affine {
        self.maps[v]
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.adjacency[from].iter().any(|(t, _)| *t == to)
    }

    /// The same graph with vertex `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> CoveringGraph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "relabeling must cover every vertex");
        let mut vertices = self.vertices.clone();
        let mut maps = self.maps.clone();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            vertices[perm[i]] = self.vertices[i];
            maps[perm[i]] = self.maps[i];
            adjacency[perm[i]] = self.adjacency[i].iter().map(|&(j, w)| (perm[j], w)).collect();
        }
        let arcs = self.arcs.iter().map(|a| Arc { from: perm[a.from], to: perm[a.to], psi: a.psi }).collect();
        CoveringGraph { pattern: self.pattern.clone(), fixed_point: self.fixed_point, vertices, arcs, maps, adjacency }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph covering {\n");
        for (i, (u, w)) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"[{}, {}]\"];", fmt_small(u), fmt_small(w));
        }
        for arc in &self.arcs {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", arc.from, arc.to, arc.psi);
        }
        out.push_str("}\n");
        out
    }
}

/// Fixed point of the P-linear map in orbit coordinates; `None` unless the
/// displacement changes sign exactly once.
pub fn pattern_fixed_point(pattern: &CyclicPattern) -> Option<Small> {
    let n = pattern.period();
    let d = |j: usize| pattern.apply(j) as i128 - j as i128;
    let mut found = None;
    for k in 1..n {
        if d(k) > 0 && d(k + 1) < 0 {
            if found.is_some() {
                return None;
            }
            let s = Small::new(d(k), d(k) - d(k + 1));
            found = Some(Small::from_integer(k as i128) + s);
        }
    }
    found
}

pub fn build_covering_graph(pattern: &CyclicPattern) -> Result<CoveringGraph, OracleError> {
    let n = pattern.period();
    if n < 2 {
        return Err(OracleError::Degenerate);
    }
    if !is_convergent(pattern) {
        return Err(OracleError::Horseshoe);
    }
    let a = pattern_fixed_point(pattern).ok_or(OracleError::Horseshoe)?;
    let mut cuts: Vec<Small> = (1..=n as i128).map(Small::from_integer).collect();
    cuts.push(a);
    cuts.sort();

    let theta = |j: i128| pattern.apply(j as usize) as i128;
    let mut vertices = Vec::new();
    let mut maps = Vec::new();
    for w in cuts.windows(2) {
        let k = w[0].floor().to_integer();
        let slope = theta(k + 1) - theta(k);
        maps.push(Affine { slope, intercept: theta(k) - slope * k });
        vertices.push((w[0], w[1]));
    }
    let mut arcs = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (i, (u, w)) in vertices.iter().enumerate() {
        let (fu, fw) = (maps[i].apply(u), maps[i].apply(w));
        let (lo, hi) = (fu.min(fw), fu.max(fw));
        for (j, (x, y)) in vertices.iter().enumerate() {
            if &lo <= x && y <= &hi {
                let psi = u8::from(u >= &a && y <= &a);
                arcs.push(Arc { from: i, to: j, psi });
                adjacency[i].push((j, psi));
            }
        }
    }
    Ok(CoveringGraph { pattern: pattern.clone(), fixed_point: a, vertices, arcs, maps, adjacency })
}
