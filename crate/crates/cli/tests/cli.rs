use overtwist::combinatorics::CyclicPattern;
use overtwist::pwlmap::p_linear_from_pattern;
use overtwist::rational::{parse, Rational};
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overtwist")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overtwist")).args(args).env(key, value).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("overtwist-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn spec_file(name: &str, json: &str) -> PathBuf {
    let path = scratch_dir("specs").join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn pattern_spec(one_line: &[usize]) -> PathBuf {
    let f = p_linear_from_pattern(&CyclicPattern::new(one_line).unwrap());
    let name = one_line.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_");
    spec_file(&format!("{name}.json"), &f.to_json())
}

const PI_3_3_11: [usize; 11] = [4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8];

#[test]
fn rotnum_on_an_overtwist() {
    let spec = pattern_spec(&PI_3_3_11);
    let o = run(&["rotnum", spec.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "rho=3/11 exact"), "{out}");
    assert!(out.lines().any(|l| l == "pattern: 4,5,6,11,10,9,3,2,1,7,8"), "{out}");
    assert!(out.contains("I_f = [3/11, 1/2]"));

    let o = run(&["--format", "json", "rotnum", spec.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rho"], "3/11");
    assert_eq!(v["exact"], true);
    assert_eq!(v["orbit"].as_array().unwrap().len(), 11);
    assert!(v.get("rho_approx").is_none());
}

#[test]
fn trivial_map_is_degenerate() {
    let spec = spec_file("flip.json", r#"{"breakpoints": ["0", "1"], "values": ["1", "0"]}"#);
    let o = run(&["rotnum", spec.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("I_f = {1/2}"), "{}", stdout(&o));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_overtwist"))
        .args(["rotnum", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let f = p_linear_from_pattern(&CyclicPattern::new(&[2, 3, 1]).unwrap());
    child.stdin.take().unwrap().write_all(f.to_json().as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("rho=1/3 exact"));
}

#[test]
fn exit_codes() {
    let bad = spec_file("bad.json", "{ not json");
    let o = run(&["rotnum", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = run(&["rotnum", "/nonexistent/map.json"]);
    assert_eq!(o.status.code(), Some(2));

    // an increasing map has no bimodal or well-behaved anatomy
    let up = spec_file("up.json", r#"{"breakpoints": ["0", "1"], "values": ["0", "1"]}"#);
    assert_eq!(run(&["rotnum", up.to_str().unwrap()]).status.code(), Some(2));

    let spec = pattern_spec(&PI_3_3_11);
    let o = run_env(&["rotnum", spec.to_str().unwrap()], "OVERTWIST_RESOURCE_LIMIT", "4");
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));

    assert_eq!(run(&["verify", "1,1,2"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "svg", "orp", "2,1"]).status.code(), Some(2));
    assert_eq!(run(&["--max-period", "40", "oracle", "2,3,1"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn enclosure_is_a_success() {
    let spec = pattern_spec(&PI_3_3_11);
    let o = run(&["--max-iterations", "1", "--max-denominator", "2", "rotnum", spec.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("no p/q with q <= 2 qualifies"), "{out}");
    assert!(!out.contains("Z_f"));
}

#[test]
fn outputs_are_deterministic() {
    let spec = pattern_spec(&[3, 7, 6, 2, 1, 4, 5]);
    let s = spec.to_str().unwrap();
    let jobs: Vec<Vec<&str>> = vec![
        vec!["--format", "json", "rotnum", s],
        vec!["--format", "csv", "plot", s],
        vec!["--format", "json", "oracle", "3,7,6,2,1,4,5"],
        vec!["--format", "json", "overtwists", "2", "9"],
        vec!["--format", "json", "ovrset", "1/3:2^inf"],
        vec!["verify", "3,7,6,2,1,4,5"],
    ];
    for args in jobs {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn listing_commands() {
    let out = stdout(&run(&["overtwists", "3", "11"]));
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().any(|l| l == "r=3 4,5,6,11,10,9,3,2,1,7,8"));
    assert_eq!(stdout(&run(&["overtwists", "2", "5"])), "");

    assert_eq!(stdout(&run(&["sharkovsky", "3", "5"])), "3 >s 5\n");
    assert_eq!(stdout(&run(&["sharkovsky", "2^inf", "12"])), "2^inf <s 12\n");

    let out = stdout(&run(&["verify", "2,4,1,3"]));
    assert!(out.lines().any(|l| l.starts_with("over-twist: ")));

    let v: serde_json::Value = serde_json::from_slice(&run(&["--format", "json", "orp", "(1,4,11,8,2,5,10,7,3,6,9)"]).stdout).unwrap();
    assert_eq!((v["l"].as_u64(), v["p"].as_u64()), (Some(3), Some(11)));

    let out = stdout(&run(&["oracle", "2,4,1,3"]));
    assert!(out.contains("min mean cycle: 1/4"), "{out}");
    assert!(stdout(&run(&["--format", "dot", "oracle", "2,4,1,3"])).starts_with("digraph"));
    assert!(stdout(&run(&["oracle", "3,1,5,2,4"])).contains("horseshoe"));
}

// G <= F on the piece data the SVG carries
#[test]
fn plot_embeds_exact_data() {
    let spec = pattern_spec(&PI_3_3_11);
    let svg = stdout(&run(&["plot", spec.to_str().unwrap()]));
    assert!(svg.starts_with("<svg"));
    let meta = svg.split("<![CDATA[").nth(1).unwrap().split("]]>").next().unwrap();
    let section = |name: &str| -> Vec<[Rational; 4]> {
        meta.split(&format!("# {name}\n"))
            .nth(1)
            .unwrap()
            .lines()
            .skip(1)
            .take_while(|l| !l.starts_with('#'))
            .map(|l| {
                let c: Vec<Rational> = l.split(',').take(4).map(|t| parse(t).unwrap()).collect();
                [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
            })
            .collect()
    };
    let lift = section("lift.csv");
    let lower = section("lower.csv");
    assert!(!lift.is_empty() && !lower.is_empty());
    let at = |rows: &[[Rational; 4]], x: &Rational| -> Rational {
        let r = rows.iter().find(|r| &r[0] <= x && x <= &r[1]).unwrap();
        &r[2] + (&r[3] - &r[2]) * (x - &r[0]) / (&r[1] - &r[0])
    };
    for r in &lift {
        for x in [&r[0], &r[1]] {
            let f = if x == &r[0] { &r[2] } else { &r[3] };
            assert!(at(&lower, x) <= *f, "G above F at {x}");
        }
    }

    let dir = scratch_dir("plot");
    let o = run(&["plot", spec.to_str().unwrap(), "--output-dir", dir.to_str().unwrap()]);
    assert!(o.status.success());
    for f in ["plot.svg", "map.csv", "lift.csv", "lower.csv"] {
        assert!(dir.join(f).exists(), "{f} missing");
    }
    let lift_csv = std::fs::read_to_string(dir.join("lift.csv")).unwrap();
    assert!(lift_csv.starts_with("x_left,x_right,value_left,value_right,slope\n"));
}
