use crate::plot;
use crate::{Cli, Command, Format};
use anyhow::{anyhow, bail, Context, Result};
use overtwist::combinatorics::{
    enumerate_bimodal_overtwists, orp_of_cycle, ovr_set, sharkovsky_cmp, CyclicPattern, EtaSpec,
    OverRotationPair, SharkovskyKey,
};
use overtwist::oracle::{build_covering_graph, enumerate_cycles_upto, min_mean_cycle, OracleError};
use overtwist::pwlmap::{BimodalCase, PwlMap};
use overtwist::rational::{parse, to_f64, Rational};
use overtwist::rotation::{
    over_rotation_interval_with, verify_overtwist_report, Classification, RotationOptions, RotationResult,
};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Read;

pub fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Rotnum { map } => rotnum(cli, map),
        Command::Overtwists { p, q } => overtwists(cli, *p, *q),
        Command::Verify { pattern } => verify(cli, pattern),
        Command::Oracle { pattern } => oracle(cli, pattern),
        Command::Plot { map, output_dir } => plot::run(cli, &read_map(map)?, output_dir.as_deref()),
        Command::Orp { pattern } => orp(cli, pattern),
        Command::Sharkovsky { m, n } => sharkovsky(cli, m, n),
        Command::Ovrset { eta, bound } => ovrset(cli, eta, *bound),
    }
}

pub fn format_for(cli: &Cli, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(allowed[0]);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not available for this command");
    }
    Ok(f)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn approx(cli: &Cli, x: &Rational) -> String {
    if cli.approx {
        format!(" (~{:.6})", to_f64(x))
    } else {
        String::new()
    }
}

fn read_map(src: &str) -> Result<PwlMap> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading map spec from stdin")?;
        s
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading map spec {src}"))?
    };
    PwlMap::from_json(&text).with_context(|| format!("invalid map spec {src}"))
}

fn read_pattern(text: &str) -> Result<CyclicPattern> {
    text.parse::<CyclicPattern>().with_context(|| format!("invalid pattern {text:?}"))
}

fn classification_text(c: &Classification) -> String {
    match c {
        Classification::Trivial => "trivial (the two sides of the fixed point are exchanged)".into(),
        Classification::Bimodal { case: BimodalCase::One } => "bimodal, case 1".into(),
        Classification::Bimodal { case: BimodalCase::Two } => "bimodal, case 2".into(),
        Classification::WellBehaved => "well-behaved".into(),
    }
}

#[derive(Serialize)]
struct RotnumRecord {
    rho: Option<String>,
    exact: bool,
    witness: Option<String>,
    enclosure: Option<[String; 2]>,
    iterations: Option<usize>,
    interval: [String; 2],
    degenerate: bool,
    classification: Classification,
    orbit: Vec<String>,
    pattern: Option<String>,
    orp: Option<OverRotationPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho_approx: Option<f64>,
}

fn rotnum(cli: &Cli, src: &str) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let f = read_map(src)?;
    let opts = RotationOptions {
        max_denominator: cli.max_denominator,
        max_iterations: cli.max_iterations as usize,
    };
    let iv = over_rotation_interval_with(&f, opts)?;
    let zf = iv.zf.as_ref();
    let orbit: Vec<String> = zf.map(|z| z.points.iter().map(|x| x.to_string()).collect()).unwrap_or_default();
    if fmt == Format::Json {
        let (rho, witness, enclosure, iterations) = match &iv.left {
            RotationResult::Exact { rho, witness } => (Some(rho.to_string()), Some(witness.to_string()), None, None),
            RotationResult::Enclosure { lo, hi, iterations } => {
                (None, None, Some([lo.to_string(), hi.to_string()]), Some(*iterations))
            }
        };
        let left = match &iv.left {
            RotationResult::Exact { rho, .. } => rho.to_string(),
            RotationResult::Enclosure { lo, hi, .. } => format!("({lo}, {hi})"),
        };
        let rec = RotnumRecord {
            exact: rho.is_some(),
            rho_approx: if cli.approx { iv.left.exact().map(to_f64) } else { None },
            rho,
            witness,
            enclosure,
            iterations,
            interval: [left, iv.right.to_string()],
            degenerate: iv.is_degenerate(),
            classification: iv.classification,
            orbit,
            pattern: zf.map(|z| z.pattern.to_string()),
            orp: zf.map(|z| z.orp),
        };
        return json(&rec);
    }
    let mut out = String::new();
    writeln!(out, "classification: {}", classification_text(&iv.classification))?;
    let nz = &iv.normalization;
    if !nz.is_identity() {
        let flip = if nz.flipped { ", flipped" } else { "" };
        writeln!(out, "normal form: core [{}, {}]{flip}", nz.lo, nz.hi)?;
    }
    if iv.is_degenerate() {
        writeln!(out, "I_f = {{1/2}} (degenerate)")?;
        return Ok(out);
    }
    match &iv.left {
        RotationResult::Exact { rho, witness } => {
            writeln!(out, "I_f = [{rho}, 1/2]")?;
            writeln!(out, "rho={rho} exact{}", approx(cli, rho))?;
            writeln!(out, "witness: {witness}")?;
        }
        RotationResult::Enclosure { lo, hi, iterations } => {
            writeln!(out, "I_f = [rho, 1/2] with {lo} < rho < {hi}")?;
            writeln!(
                out,
                "rho enclosed after {iterations} iterations; no p/q with q <= {} qualifies",
                cli.max_denominator
            )?;
        }
    }
    if let Some(z) = zf {
        writeln!(out, "Z_f: {}", orbit.join(" -> "))?;
        writeln!(out, "pattern: {}", z.pattern)?;
        writeln!(out, "orp: {}", z.orp)?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct OvertwistEntry {
    r: usize,
    pattern: String,
}

fn overtwists(cli: &Cli, p: usize, q: usize) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let list = enumerate_bimodal_overtwists(p, q)?;
    let entries: Vec<OvertwistEntry> =
        list.iter().enumerate().map(|(i, pat)| OvertwistEntry { r: i + 1, pattern: pat.to_string() }).collect();
    if fmt == Format::Json {
        return json(&entries);
    }
    let mut out = String::new();
    for e in entries {
        writeln!(out, "r={} {}", e.r, e.pattern)?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct VerifyRecord {
    pattern: String,
    #[serde(flatten)]
    report: overtwist::rotation::OvertwistReport,
}

fn verify(cli: &Cli, text: &str) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let pattern = read_pattern(text)?;
    let report = verify_overtwist_report(&pattern);
    if fmt == Format::Json {
        return json(&VerifyRecord { pattern: pattern.to_string(), report });
    }
    let mut out = String::new();
    writeln!(out, "pattern: {pattern}")?;
    writeln!(out, "convergent: {}", report.convergent)?;
    if let Some(orp) = report.orp {
        writeln!(out, "orp: {orp}")?;
        writeln!(out, "coprime: {}", report.coprime)?;
    }
    if let (Some(v), Some(src)) = (&report.left_endpoint, report.source) {
        let src = match src {
            overtwist::rotation::EndpointSource::Lifting => "lifting",
            overtwist::rotation::EndpointSource::Oracle => "covering graph",
        };
        writeln!(out, "left endpoint: {v}{} ({src})", approx(cli, v))?;
    }
    writeln!(out, "over-twist: {}", report.overtwist)?;
    Ok(out)
}

#[derive(Serialize)]
struct ArcRecord {
    from: usize,
    to: usize,
    psi: u8,
}

#[derive(Serialize)]
struct CycleEntry {
    period: usize,
    pattern: String,
    orp: OverRotationPair,
    points: Vec<String>,
}

#[derive(Serialize)]
struct OracleRecord {
    horseshoe: bool,
    fixed_point: Option<String>,
    vertices: Vec<[String; 2]>,
    arcs: Vec<ArcRecord>,
    min_mean: Option<String>,
    max_period: u64,
    cycles: Vec<CycleEntry>,
}

fn oracle(cli: &Cli, text: &str) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json, Format::Dot])?;
    let pattern = read_pattern(text)?;
    let graph = match build_covering_graph(&pattern) {
        Ok(g) => g,
        Err(OracleError::Horseshoe) => {
            return match fmt {
                Format::Json => json(&OracleRecord {
                    horseshoe: true,
                    fixed_point: None,
                    vertices: vec![],
                    arcs: vec![],
                    min_mean: None,
                    max_period: cli.max_period,
                    cycles: vec![],
                }),
                _ => Ok(format!("{}\n", OracleError::Horseshoe)),
            };
        }
        Err(e) => return Err(e.into()),
    };
    if fmt == Format::Dot {
        return Ok(graph.to_dot());
    }
    let small = |x: &overtwist::oracle::Small| format!("{}", Rational::new((*x.numer()).into(), (*x.denom()).into()));
    let mean = min_mean_cycle(&graph)?;
    let cycles = enumerate_cycles_upto(&pattern, cli.max_period as usize)?;
    let entries: Vec<CycleEntry> = cycles
        .iter()
        .map(|c| CycleEntry {
            period: c.pattern.period(),
            pattern: c.pattern.to_string(),
            orp: c.orp,
            points: c.points.iter().map(|x| x.to_string()).collect(),
        })
        .collect();
    if fmt == Format::Json {
        return json(&OracleRecord {
            horseshoe: false,
            fixed_point: Some(small(&graph.fixed_point)),
            vertices: graph.vertices.iter().map(|(u, w)| [small(u), small(w)]).collect(),
            arcs: graph.arcs.iter().map(|a| ArcRecord { from: a.from, to: a.to, psi: a.psi }).collect(),
            min_mean: Some(mean.to_string()),
            max_period: cli.max_period,
            cycles: entries,
        });
    }
    let mut out = String::new();
    writeln!(out, "pattern: {pattern}")?;
    writeln!(out, "fixed point: {}", small(&graph.fixed_point))?;
    writeln!(out, "vertices: {}, arcs: {}", graph.vertex_count(), graph.arcs.len())?;
    writeln!(out, "min mean cycle: {mean}{}", approx(cli, &mean))?;
    writeln!(out, "cycles of period <= {}: {}", cli.max_period, entries.len())?;
    // distinct cycles often share a pattern; list each pattern once
    let mut i = 0;
    while i < entries.len() {
        let e = &entries[i];
        let same = entries[i..].iter().take_while(|c| c.pattern == e.pattern).count();
        let mult = if same > 1 { format!("  x{same}") } else { String::new() };
        writeln!(out, "  period {:>2}  orp {}  {}{mult}", e.period, e.orp, e.pattern)?;
        i += same;
    }
    Ok(out)
}

#[derive(Serialize)]
struct OrpRecord {
    l: u64,
    p: u64,
    rho: String,
    coprime: bool,
}

fn orp(cli: &Cli, text: &str) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let pattern = read_pattern(text)?;
    let pair = orp_of_cycle(&pattern)?;
    if fmt == Format::Json {
        return json(&OrpRecord { l: pair.l, p: pair.p, rho: pair.rho().to_string(), coprime: pair.is_coprime() });
    }
    Ok(format!("{pair}\nrho={}{}\n", pair.rho(), approx(cli, &pair.rho())))
}

fn sharkovsky(cli: &Cli, m: &str, n: &str) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let a: SharkovskyKey = m.parse().map_err(|e: String| anyhow!(e))?;
    let b: SharkovskyKey = n.parse().map_err(|e: String| anyhow!(e))?;
    let (word, sym) = match sharkovsky_cmp(a, b) {
        Ordering::Greater => ("sharper", ">s"),
        Ordering::Less => ("weaker", "<s"),
        Ordering::Equal => ("equal", "=s"),
    };
    if fmt == Format::Json {
        #[derive(Serialize)]
        struct Rec {
            m: String,
            n: String,
            comparison: &'static str,
        }
        return json(&Rec { m: a.to_string(), n: b.to_string(), comparison: word });
    }
    Ok(format!("{a} {sym} {b}\n"))
}

pub fn parse_eta(text: &str) -> Result<EtaSpec> {
    let t = text.trim();
    if t == "0" {
        return Ok(EtaSpec::Zero);
    }
    if t == "half" {
        return Ok(EtaSpec::Half);
    }
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        ["irrational", lo, hi] => Ok(EtaSpec::irrational(parse(lo)?, parse(hi)?)?),
        [alpha, key] => {
            let key: SharkovskyKey = key.parse().map_err(|e: String| anyhow!(e))?;
            Ok(EtaSpec::rational(parse(alpha)?, key)?)
        }
        _ => bail!("invalid eta {text:?}; expected 0, half, ALPHA:KEY or irrational:LO:HI"),
    }
}

fn ovrset(cli: &Cli, eta: &str, bound: u64) -> Result<String> {
    let fmt = format_for(cli, &[Format::Text, Format::Json])?;
    let set = ovr_set(&parse_eta(eta)?, bound)?;
    if fmt == Format::Json {
        return json(&set);
    }
    let join = |s: &std::collections::BTreeSet<OverRotationPair>| {
        s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut out = format!("members ({}): {}\n", set.members.len(), join(&set.members));
    if !set.indeterminate.is_empty() {
        writeln!(out, "indeterminate ({}): {}", set.indeterminate.len(), join(&set.indeterminate))?;
    }
    Ok(out)
}
