use crate::commands::format_for;
use crate::{Cli, Format};
use anyhow::{Context, Result};
use overtwist::lifting::{DegreeOneLift, MonotoneLift};
use overtwist::pwlmap::{prepare, IntervalSet, PwlMap};
use overtwist::rational::{to_f64, Rational};
use overtwist::rotation::MapAnatomy;
use std::fmt::Write as _;
use std::path::Path;

const PANEL: f64 = 300.0;
const PAD: f64 = 30.0;

struct Dumps {
    map: String,
    lift: Option<String>,
    lower: Option<String>,
}

struct Analysis {
    map: PwlMap,
    y: Option<IntervalSet>,
    lift: Option<DegreeOneLift>,
    lower: Option<MonotoneLift>,
}

fn analyse(f: &PwlMap) -> Result<Analysis> {
    let prepared = prepare(f)?;
    let Ok(anatomy) = MapAnatomy::detect(f) else {
        return Ok(Analysis { map: prepared.map().clone(), y: None, lift: None, lower: None });
    };
    let lift = anatomy.lift();
    let lower = anatomy.lower_map(&lift).ok();
    Ok(Analysis { map: anatomy.map().clone(), y: Some(anatomy.y_set()), lift: Some(lift), lower })
}

fn map_csv(f: &PwlMap) -> String {
    let mut out = String::from("x,value\n");
    for (x, y) in f.breakpoints().iter().zip(f.values()) {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

fn dumps(a: &Analysis) -> Dumps {
    Dumps {
        map: map_csv(&a.map),
        lift: a.lift.as_ref().map(|l| l.to_csv()),
        lower: a.lower.as_ref().map(|g| g.to_csv()),
    }
}

// panel-local coordinates: x in [0, 1], y in [0, ymax]
struct Frame {
    left: f64,
    ymax: f64,
}

impl Frame {
    fn px(&self, x: &Rational) -> f64 {
        self.left + to_f64(x) * PANEL
    }

    fn py(&self, y: &Rational) -> f64 {
        PAD + PANEL - to_f64(y) / self.ymax * PANEL
    }

    fn pt(&self, x: &Rational, y: &Rational) -> String {
        format!("{:.3},{:.3}", self.px(x), self.py(y))
    }
}

fn polyline(out: &mut String, pts: &[String], class: &str) {
    let _ = writeln!(out, r#"  <polyline class="{class}" points="{}"/>"#, pts.join(" "));
}

fn frame_box(out: &mut String, fr: &Frame, title: &str) {
    let _ = writeln!(
        out,
        r#"  <rect class="frame" x="{:.3}" y="{PAD:.3}" width="{PANEL:.3}" height="{PANEL:.3}"/>"#,
        fr.left
    );
    let _ = writeln!(out, r#"  <text x="{:.3}" y="{:.3}">{title}</text>"#, fr.left, PAD - 10.0);
}

fn map_panel(out: &mut String, a: &Analysis) {
    let fr = Frame { left: PAD, ymax: 1.0 };
    frame_box(out, &fr, "f");
    if let Some(y) = &a.y {
        for (lo, hi) in y.parts() {
            let _ = writeln!(
                out,
                r#"  <rect class="trap" x="{:.3}" y="{PAD:.3}" width="{:.3}" height="{PANEL:.3}"/>"#,
                fr.px(lo),
                (fr.px(hi) - fr.px(lo)).max(1.0)
            );
        }
    }
    let (z, o) = (Rational::from_integer(0.into()), Rational::from_integer(1.into()));
    polyline(out, &[fr.pt(&z, &z), fr.pt(&o, &o)], "diagonal");
    let pts: Vec<String> = a.map.breakpoints().iter().zip(a.map.values()).map(|(x, y)| fr.pt(x, y)).collect();
    polyline(out, &pts, "map");
}

fn lift_panel(out: &mut String, a: &Analysis) {
    let fr = Frame { left: 2.0 * PAD + PANEL, ymax: 2.0 };
    frame_box(out, &fr, "F and G");
    if let Some(g) = &a.lower {
        let one = Rational::from_integer(1.into());
        for (lo, hi) in g.flat_spots() {
            // wrapped spots are drawn in two parts
            let parts = if hi > one { vec![(lo, one.clone()), (Rational::from_integer(0.into()), hi - &one)] } else { vec![(lo, hi)] };
            for (lo, hi) in parts {
                let _ = writeln!(
                    out,
                    r#"  <rect class="flat" x="{:.3}" y="{PAD:.3}" width="{:.3}" height="{PANEL:.3}"/>"#,
                    fr.px(&lo),
                    fr.px(&hi) - fr.px(&lo)
                );
            }
        }
    }
    if let Some(lift) = &a.lift {
        let mut run: Vec<String> = Vec::new();
        let mut last: Option<Rational> = None;
        for p in lift.pieces() {
            if last.as_ref() != Some(&p.v0) && !run.is_empty() {
                polyline(out, &run, "lift");
                run.clear();
            }
            if run.is_empty() {
                run.push(fr.pt(&p.t0, &p.v0));
            }
            run.push(fr.pt(&p.t1, &p.v1));
            last = Some(p.v1.clone());
        }
        if !run.is_empty() {
            polyline(out, &run, "lift");
        }
    }
    if let Some(g) = &a.lower {
        let pts: Vec<String> = g.knots().map(|(x, y)| fr.pt(x, y)).collect();
        polyline(out, &pts, "lower");
    }
}

fn render_svg(a: &Analysis) -> String {
    let width = 3.0 * PAD + 2.0 * PANEL;
    let height = 2.0 * PAD + PANEL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    out.push_str(concat!(
        "  <style>\n",
        "    .frame { fill: none; stroke: #888; }\n",
        "    .diagonal { fill: none; stroke: #bbb; stroke-dasharray: 4 3; }\n",
        "    .map, .lift { fill: none; stroke: #1f4e99; stroke-width: 1.5; }\n",
        "    .lower { fill: none; stroke: #c0392b; stroke-width: 1.5; }\n",
        "    .trap { fill: #f5d76e; opacity: 0.5; }\n",
        "    .flat { fill: #e8b4b0; opacity: 0.5; }\n",
        "    text { font: 12px sans-serif; }\n",
        "  </style>\n",
    ));
    let d = dumps(a);
    out.push_str("  <metadata><![CDATA[\n");
    let _ = write!(out, "# map.csv\n{}", d.map);
    if let Some(l) = &d.lift {
        let _ = write!(out, "# lift.csv\n{l}");
    }
    if let Some(g) = &d.lower {
        let _ = write!(out, "# lower.csv\n{g}");
    }
    out.push_str("]]></metadata>\n");
    map_panel(&mut out, a);
    lift_panel(&mut out, a);
    out.push_str("</svg>\n");
    out
}

pub fn run(cli: &Cli, f: &PwlMap, output_dir: Option<&Path>) -> Result<String> {
    let fmt = format_for(cli, &[Format::Svg, Format::Csv])?;
    let a = analyse(f)?;
    let d = dumps(&a);
    if let Some(dir) = output_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let write = |name: &str, body: &str| {
            let path = dir.join(name);
            std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
        };
        write("plot.svg", &render_svg(&a))?;
        write("map.csv", &d.map)?;
        if let Some(l) = &d.lift {
            write("lift.csv", l)?;
        }
        if let Some(g) = &d.lower {
            write("lower.csv", g)?;
        }
        return Ok(format!("wrote plot to {}\n", dir.display()));
    }
    if fmt == Format::Csv {
        let mut out = format!("# map\n{}", d.map);
        if let Some(l) = &d.lift {
            out += &format!("# lift\n{l}");
        }
        if let Some(g) = &d.lower {
            out += &format!("# lower\n{g}");
        }
        return Ok(out);
    }
    Ok(render_svg(&a))
}
