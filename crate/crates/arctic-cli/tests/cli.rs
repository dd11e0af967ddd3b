use std::path::Path;
use std::process::Command;

use arctic_cli::render::{lattice_to_paper, paper_to_lattice, Frame, FrameMap, RenderSpec};
use arctic_cli::{run, Cli};
use clap::Parser;

fn arctic(args: &[&str]) -> (String, i32) {
    let mut full = vec!["arctic"];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(full).expect("valid arguments");
    let mut out = Vec::new();
    let code = match run(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => e.code(),
    };
    (String::from_utf8(out).unwrap(), code)
}

fn bin(args: &[&str]) -> (String, String, i32) {
    let o = Command::new(env!("CARGO_BIN_EXE_arctic")).args(args).output().unwrap();
    (String::from_utf8_lossy(&o.stdout).into(), String::from_utf8_lossy(&o.stderr).into(), o.status.code().unwrap())
}

fn csv_points(text: &str) -> Vec<(f64, f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

#[test]
fn counts_print_exact_integers() {
    assert_eq!(arctic(&["count", "--model", "asm", "--n", "5"]).0.trim(), "429");
    assert_eq!(arctic(&["count", "--model", "hexagon", "--a", "2", "--b", "2", "--c", "2"]).0.trim(), "20");
    assert_eq!(arctic(&["count", "--model", "triangoloid", "--a", "1", "--b", "1", "--c", "1"]).0.trim(), "14");
    assert_eq!(arctic(&["count", "--model", "asm", "--n", "7"]).0.trim(), "218348");
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["count", "--model", "asm", "--n", "3"]).2, 0);
    assert_eq!(bin(&["count", "--model", "asm"]).2, 2);
    assert_eq!(bin(&["no-such-command"]).2, 2);
    assert_eq!(bin(&["curve", "--geometry", "square", "--delta", "0", "--t", "1", "--points", "1"]).2, 2);
    let (_, err, code) = bin(&["sample", "--geometry", "square", "--n", "3", "--out", "/nonexistent/dir/x"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn square_curve_endpoints() {
    let (out, code) = arctic(&["curve", "--geometry", "square", "--delta", "0", "--t", "1", "--points", "50"]);
    assert_eq!(code, 0);
    let pts = csv_points(&out);
    let (first, last) = (pts[0], *pts.last().unwrap());
    assert!((first.1 - 0.5).abs() < 1e-9 && first.2.abs() < 1e-9, "{first:?}");
    assert!((last.1 - 1.0).abs() < 1e-9 && (last.2 - 0.5).abs() < 1e-9, "{last:?}");
    // free fermion point: the arc is the inscribed circle (x − 1/2)² + (y − 1/2)² = 1/4
    for p in &pts[..pts.len() - 1] {
        assert!(((p.1 - 0.5).powi(2) + (p.2 - 0.5).powi(2) - 0.25).abs() < 1e-9, "{p:?}");
    }
}

#[test]
fn ice_square_curve_is_the_conic() {
    let (out, _) = arctic(&["curve", "--geometry", "square", "--delta", "0.5", "--t", "1", "--points", "40"]);
    for (_, x, y) in csv_points(&out) {
        // the SE arc of the ice point in the frame x from the west, y from the south
        let q = x * x + x * y + y * y - x - 2.0 * y + 0.25;
        assert!(q.abs() < 1e-8, "{q}");
    }
}

#[test]
fn regular_hexagon_arc_is_the_inscribed_circle() {
    let (out, _) = arctic(&["--frame", "paper", "curve", "--geometry", "hexagon", "--alpha", "1", "--beta", "1", "--gamma", "1", "--points", "30"]);
    let pts = csv_points(&out);
    assert_eq!(pts.len(), 30);
    for (_, x, y) in pts {
        assert!((x.hypot(y) - 3f64.sqrt() / 2.0).abs() < 1e-9);
    }
}

#[test]
fn frame_flag_rescales_the_hexagon() {
    let (unit, _) = arctic(&["curve", "--geometry", "hexagon", "--alpha", "1", "--beta", "1", "--gamma", "1", "--points", "30"]);
    for (_, x, y) in csv_points(&unit) {
        assert!((-1e-12..=1.0 + 1e-12).contains(&x) && (-1e-12..=1.0 + 1e-12).contains(&y));
    }
    assert_ne!(unit, arctic(&["--frame", "paper", "curve", "--geometry", "hexagon", "--alpha", "1", "--beta", "1", "--gamma", "1", "--points", "30"]).0);
}

#[test]
fn triangoloid_writes_every_arc_and_the_guess() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tri.csv");
    let (stdout, code) = arctic(&[
        "curve", "--geometry", "triangoloid", "--alpha", "1", "--beta", "1", "--gamma", "1", "--points", "20", "--internal-guess", "--out",
        out.to_str().unwrap(), "--svg", dir.path().join("tri.svg").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("EXPERIMENTAL"), "{stdout}");
    for name in ["tri.csv", "tri-triangoloid1.csv", "tri-triangoloid2.csv", "tri-internal-guess.csv", "tri.svg"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    // grid points plus the endpoints z = 1 and z = ∞
    assert_eq!(csv_points(&std::fs::read_to_string(&out).unwrap()).len(), 22);
    // no temporary files left behind
    assert!(std::fs::read_dir(dir.path()).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().ends_with(".tmp")));
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn sample_outputs_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let prefix = dir.path().join(format!("s{k}"));
        let (_, code) = arctic(&["sample", "--geometry", "square", "--n", "12", "--samples", "10", "--seed", "7", "--out", prefix.to_str().unwrap()]);
        assert_eq!(code, 0);
        texts.push(["svg", "-config.json", "-hist.csv", "-density.csv", "-frozen.csv"].map(|s| {
            let name = if s == "svg" { format!("s{k}.svg") } else { format!("s{k}{s}") };
            read(dir.path(), &name)
        }));
    }
    assert_eq!(texts[0], texts[1]);
    let svg = &texts[0][0];
    assert!(svg.contains(r#"class="w5" fill="blue""#) && svg.contains(r#"class="w6" fill="red""#));
    assert!(svg.contains(r#"frame="unit""#));
    let hist = &texts[0][2];
    let total: usize = hist.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 10);
    let other = dir.path().join("other");
    arctic(&["sample", "--geometry", "square", "--n", "12", "--samples", "10", "--seed", "8", "--out", other.to_str().unwrap()]);
    assert_ne!(read(dir.path(), "other-config.json"), texts[0][1]);
}

#[test]
fn refined_overlay_draws_the_tangent() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("lam");
    let (stdout, code) = arctic(&[
        "--frame", "paper", "sample", "--geometry", "lambda", "--n", "40", "--refine", "30", "--samples", "4", "--overlay", "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let svg = read(dir.path(), "lam.svg");
    assert!(svg.contains(r#"class="tangent""#), "no tangent segment");
    assert!(svg.contains(r#"class="arc""#));
    assert!(svg.contains(r#"frame="paper""#));
}

#[test]
fn pixel_round_trip() {
    let map = FrameMap::new(Frame::Unit, (0.0, 0.0, 1.0, 1.5));
    let spec = RenderSpec::new(map);
    let (n, min) = (20.0, (0, -5));
    for pos in [(0, -5), (3, 7), (19, 14), (10, 0)] {
        let paper = lattice_to_paper(pos, min, n);
        let px = spec.to_px(map.apply(paper));
        let back = spec.from_px(px);
        let (x0, y0, x1, y1) = map.bbox;
        let paper_back = (x0 + back.0 * (x1 - x0), y0 + back.1 * (y1 - y0));
        assert_eq!(paper_to_lattice(paper_back, min, n), pos);
    }
}
