use super::graph::{build_covering_graph, small_to_rational, Affine, CoveringGraph, Small};
use super::OracleError;
use crate::combinatorics::{gtrdot, orp_of_cycle, CyclicPattern, OverRotationPair};
use crate::rational::{ratio, Rational};
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_LOOP_LENGTH: usize = 12;

/// Minimum over directed cycles of the mean ψ weight (Karp's recurrence,
/// started from every vertex at once).
pub fn min_mean_cycle(graph: &CoveringGraph) -> Result<Rational, OracleError> {
    let n = graph.vertex_count();
    let mut d: Vec<Vec<Option<i64>>> = vec![vec![Some(0); n]];
    for k in 0..n {
        let mut next = vec![None; n];
        for u in 0..n {
            let Some(du) = d[k][u] else { continue };
            for &(v, w) in graph.successors(u) {
                let cand = du + w as i64;
                if next[v].is_none_or(|x| cand < x) {
                    next[v] = Some(cand);
                }
            }
        }
        d.push(next);
    }
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let Some(dn) = d[n][v] else { continue };
        let worst = (0..n)
            .filter_map(|k| d[k][v].map(|dk| ratio(dn - dk, (n - k) as i64)))
            .max()
            .expect("d[0] is finite");
        if best.as_ref().is_none_or(|b| &worst < b) {
            best = Some(worst);
        }
    }
    best.ok_or(OracleError::EmptyGraph)
}

/// All elementary cycles, each listed once starting from its smallest vertex.
pub fn simple_cycles(graph: &CoveringGraph) -> Vec<Vec<usize>> {
    fn walk(g: &CoveringGraph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        for &(w, _) in g.successors(v) {
            if w == start {
                out.push(path.clone());
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                walk(g, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; graph.vertex_count()];
    for s in 0..graph.vertex_count() {
        on[s] = true;
        walk(graph, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// ψ-sum of a closed walk given by its vertex sequence.
pub fn loop_weight(graph: &CoveringGraph, walk: &[usize]) -> usize {
    (0..walk.len())
        .map(|i| {
            let (u, v) = (walk[i], walk[(i + 1) % walk.len()]);
            graph.successors(u).iter().find(|(t, _)| *t == v).map_or(0, |(_, w)| *w as usize)
        })
        .sum()
}

/// Brute-force minimum of ψ-mean over elementary cycles.
pub fn min_mean_by_enumeration(graph: &CoveringGraph) -> Result<Rational, OracleError> {
    simple_cycles(graph)
        .iter()
        .map(|c| ratio(loop_weight(graph, c) as i64, c.len() as i64))
        .min()
        .ok_or(OracleError::EmptyGraph)
}

/// A closed walk resolved to a periodic point of the P-linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedLoop {
    pub walk: Vec<usize>,
    pub psi: usize,
    /// Orbit of the resolved point, one entry per step of the walk.
    pub orbit: Vec<Small>,
    /// Minimal period of the resolved point.
    pub period: usize,
}

fn clip(j: &(Small, Small), map: &Affine, target: &(Small, Small)) -> Option<(Small, Small)> {
    // points of j whose image under map lands in target
    let s = Small::from_integer(map.slope);
    let c = Small::from_integer(map.intercept);
    let p0 = (target.0 - c) / s;
    let p1 = (target.1 - c) / s;
    let lo = j.0.max(p0.min(p1));
    let hi = j.1.min(p0.max(p1));
    (lo <= hi).then_some((lo, hi))
}

/// Every admissible closed walk of length at most `max_len`, starting at its
/// smallest vertex, with the periodic point that follows it.
pub fn enumerate_loops(graph: &CoveringGraph, max_len: usize) -> Result<Vec<ResolvedLoop>, OracleError> {
    if max_len > MAX_LOOP_LENGTH {
        return Err(OracleError::MaxPeriod { requested: max_len, limit: MAX_LOOP_LENGTH });
    }
    struct Ctx<'a> {
        g: &'a CoveringGraph,
        max_len: usize,
        out: Vec<ResolvedLoop>,
    }
    fn resolve(ctx: &mut Ctx, walk: &[usize], comp: Affine, j: (Small, Small)) {
        let x = if comp.slope == 1 {
            if comp.intercept != 0 {
                return;
            }
            (j.0 + j.1) / Small::from_integer(2)
        } else {
            let x = Small::new(comp.intercept, 1 - comp.slope);
            if x < j.0 || x > j.1 {
                return;
            }
            x
        };
        if x == ctx.g.fixed_point {
            return;
        }
        let mut orbit = vec![x];
        for &v in &walk[..walk.len() - 1] {
            let next = ctx.g.map_on(v).apply(orbit.last().unwrap());
            orbit.push(next);
        }
        let period = (1..=walk.len())
            .find(|&m| walk.len() % m == 0 && (m == walk.len() || orbit[m] == x))
            .unwrap();
        let psi = super::cycles::loop_weight(ctx.g, walk);
        ctx.out.push(ResolvedLoop { walk: walk.to_vec(), psi, orbit, period });
    }
    fn dfs(ctx: &mut Ctx, walk: &mut Vec<usize>, comp: Affine, j: (Small, Small)) {
        let start = walk[0];
        let v = *walk.last().unwrap();
        let step = ctx.g.map_on(v).after(&comp);
        let succ: Vec<usize> = ctx.g.successors(v).iter().map(|(w, _)| *w).collect();
        for w in succ {
            if w < start {
                continue;
            }
            let Some(jw) = clip(&j, &step, &ctx.g.vertices[w]) else { continue };
            if w == start {
                resolve(ctx, walk, step, jw);
            }
            if walk.len() < ctx.max_len {
                walk.push(w);
                dfs(ctx, walk, step, jw);
                walk.pop();
            }
        }
    }
    let mut ctx = Ctx { g: graph, max_len, out: Vec::new() };
    for s in 0..graph.vertex_count() {
        dfs(&mut ctx, &mut vec![s], Affine::IDENTITY, graph.vertices[s]);
    }
    Ok(ctx.out)
}

/// A periodic orbit of the P-linear map found through the covering graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    pub pattern: CyclicPattern,
    pub orp: OverRotationPair,
    /// Orbit in the pattern's integer coordinates, in dynamical order.
    pub points: Vec<Rational>,
}

/// Distinct periodic orbits of period at most `max_period` of the pattern's
/// P-linear map, ordered by period, then pattern.
pub fn enumerate_cycles_upto(pattern: &CyclicPattern, max_period: usize) -> Result<Vec<CycleRecord>, OracleError> {
    let graph = build_covering_graph(pattern)?;
    let loops = enumerate_loops(&graph, max_period)?;
    let mut seen: BTreeMap<Vec<Small>, CycleRecord> = BTreeMap::new();
    for l in loops {
        let orbit = &l.orbit[..l.period];
        let mut key = orbit.to_vec();
        key.sort();
        if seen.contains_key(&key) || l.period < 2 {
            continue;
        }
        let pat = CyclicPattern::from_orbit(orbit).expect("distinct orbit points");
        let orp = orp_of_cycle(&pat).expect("period at least 2");
        let points = orbit.iter().map(small_to_rational).collect();
        seen.insert(key, CycleRecord { pattern: pat, orp, points });
    }
    let mut out: Vec<CycleRecord> = seen.into_values().collect();
    out.sort_by(|a, b| {
        (a.pattern.period(), a.pattern.one_line(), &a.points).cmp(&(b.pattern.period(), b.pattern.one_line(), &b.points))
    });
    Ok(out)
}

/// Over-rotation pairs present in an inventory.
pub fn orp_inventory(cycles: &[CycleRecord]) -> BTreeSet<OverRotationPair> {
    cycles.iter().map(|c| c.orp).collect()
}

/// Pairs `(found, missing)` where `found ⋗ missing`, `missing` has period at
/// most `bound`, yet `missing` is absent from the inventory.
pub fn downset_violations(
    orps: &BTreeSet<OverRotationPair>,
    bound: u64,
) -> Vec<(OverRotationPair, OverRotationPair)> {
    let mut out = Vec::new();
    for &have in orps {
        for period in 2..=bound {
            for l in 1..=period / 2 {
                let want = OverRotationPair { l, p: period };
                if gtrdot(have.as_general(), want.as_general()) && !orps.contains(&want) {
                    out.push((have, want));
                }
            }
        }
    }
    out
}

/// Left endpoint of the over-rotation interval of the pattern's P-linear
/// map, as the minimum ψ-mean cycle.
pub fn left_endpoint(pattern: &CyclicPattern) -> Result<Rational, OracleError> {
    min_mean_cycle(&build_covering_graph(pattern)?)
}
