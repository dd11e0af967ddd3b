//! The `arctic` command line: exact counts, arctic curves, exact samples
//! and the verification suites.

pub mod checks;
pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use arctic_exact::{
    asm_count, asm_refined, macmahon, path_corner_count, path_weight_poly, triangoloid_count, triangoloid_refined,
};
use arctic_model::{DomainKind, DomainSpec, ModelParams, TriangoloidLayout};
use arctic_sampler::{fit_slope, frozen_boundary, sample_configs, SampleStats, Polyline};
use arctic_tangent::{
    hexagon_arc, hexagon_corners, log_grid, slope_m, square_all_arcs, square_arc, square_evaluator, triangoloid_arc,
    triangoloid_internal_guess, AspectRatios, ParametricArc, REvaluator, Regime,
};

use crate::checks::Suite;
use crate::render::{lattice_to_paper, svg, Figure, Frame, FrameMap, RenderSpec};

#[derive(Debug)]
pub enum CliError {
    /// Bad combination of flags; exit status 2.
    Usage(String),
    /// Failed computation or verification; exit status 1.
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

fn fail(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

#[derive(Parser, Debug)]
#[command(name = "arctic", version, about = "Six-vertex model: exact counts, arctic curves and exact samples")]
pub struct Cli {
    /// Coordinate frame of written curves and figures.
    #[arg(long, global = true, value_enum, default_value_t = Frame::Unit)]
    pub frame: Frame,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an exact count.
    Count(CountArgs),
    /// Compute an arctic curve.
    Curve(CurveArgs),
    /// Draw exact samples and their statistics.
    Sample(SampleArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountModel {
    Asm,
    Hexagon,
    Triangoloid,
    Paths,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub model: CountModel,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    /// Refinement position (asm, triangoloid).
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long)]
    pub y: Option<usize>,
    /// Count paths with exactly this many corners (paths).
    #[arg(long)]
    pub corners: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveGeometry {
    Square,
    Hexagon,
    Triangoloid,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub geometry: CurveGeometry,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// Integer weights a,b,c instead of Δ and t; generic weights use
    /// finite-size boundary polynomials.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<i64>>,
    /// Sizes of the boundary polynomials for generic weights.
    #[arg(long, value_delimiter = ',', default_value = "5,6")]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Square: also emit the three symmetry images.
    #[arg(long)]
    pub all_arcs: bool,
    /// Triangoloid: also emit the experimental internal branch.
    #[arg(long)]
    pub internal_guess: bool,
    /// Points on the z grid; square and triangoloid arcs add their two endpoints.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// CSV output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleGeometry {
    Square,
    Lambda,
    Triangoloid,
    Convex,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub geometry: SampleGeometry,
    #[arg(long)]
    pub n: Option<usize>,
    /// Extra rows of a Λ domain.
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    /// Thick south edge at column R: the square with one extra path.
    #[arg(long)]
    pub refine: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    /// Boundary word of a convex domain.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw the analytic curve over the sample.
    #[arg(long)]
    pub overlay: bool,
    /// Density level of the extracted frozen boundary.
    #[arg(long, default_value_t = 0.05)]
    pub threshold: f64,
    /// Output prefix for the .svg, -config.json, -hist.csv, -density.csv
    /// and -frozen.csv files.
    #[arg(long, default_value = "sample")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Counts,
    Identities,
    Saddle,
    Envelope,
    Sampler,
    Gauge,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Saddle => Suite::Saddle,
            SuiteArg::Envelope => Suite::Envelope,
            SuiteArg::Sampler => Suite::Sampler,
            SuiteArg::Gauge => Suite::Gauge,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Skip the figure-scale sampling check.
    #[arg(long)]
    pub fast: bool,
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let name = path.file_name().ok_or_else(|| usage(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        fail(format!("{}: {e}", path.display()))
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required here")))
}

pub fn run(cli: Cli, stdout: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Count(a) => count(a, stdout),
        Command::Curve(a) => curve(a, cli.frame, stdout),
        Command::Sample(a) => sample(a, cli.frame, stdout),
        Command::Verify(a) => verify(a, stdout),
    }
}

fn out(stdout: &mut impl Write, s: &str) -> Result<(), CliError> {
    writeln!(stdout, "{s}").map_err(fail)
}

pub fn count(a: &CountArgs, stdout: &mut impl Write) -> Result<(), CliError> {
    let v = match a.model {
        CountModel::Asm => {
            let n = need(a.n, "n")?;
            match a.r {
                Some(r) => asm_refined(n, r).map_err(fail)?,
                None => asm_count(n),
            }
        }
        CountModel::Hexagon => macmahon(need(a.a, "a")?, need(a.b, "b")?, need(a.c, "c")?),
        CountModel::Triangoloid => {
            let (x, y, z) = (need(a.a, "a")?, need(a.b, "b")?, need(a.c, "c")?);
            if x + y == 0 || y + z == 0 || z + x == 0 {
                return Err(usage("triangoloid bundles a + b, b + c, c + a must be non-empty"));
            }
            match a.r {
                Some(r) => triangoloid_refined(x, y, z, r).map_err(fail)?,
                None => triangoloid_count(x, y, z),
            }
        }
        CountModel::Paths => {
            let (x, y) = (need(a.x, "x")?, need(a.y, "y")?);
            match a.corners {
                Some(l) => path_corner_count(x, y, l),
                None => {
                    let total = path_weight_poly(x, y).sum_coeffs();
                    if !total.is_integer() {
                        return Err(fail("path count is not an integer"));
                    }
                    total.to_integer()
                }
            }
        }
    };
    out(stdout, &v.to_string())
}

fn ratios(a: &CurveArgs, normalise: bool) -> Result<AspectRatios, CliError> {
    let (x, y, z) = (need(a.alpha, "alpha")?, need(a.beta, "beta")?, need(a.gamma, "gamma")?);
    if normalise { AspectRatios::normalized(x, y, z) } else { AspectRatios::new(x, y, z) }.map_err(|e| usage(e.to_string()))
}

fn square_regime(a: &CurveArgs) -> Result<(Regime, Option<ModelParams>), CliError> {
    match (&a.weights, a.delta, a.t) {
        (Some(w), None, None) => {
            let [x, y, z] = w[..] else { return Err(usage("--weights takes three integers a,b,c")) };
            let p = ModelParams::from_integers(x, y, z).map_err(|e| usage(e.to_string()))?;
            Ok((Regime::from(&p), Some(p)))
        }
        (None, Some(d), Some(t)) => Ok((Regime::new(d, t), None)),
        (None, None, None) => Ok((Regime::ice(), None)),
        _ => Err(usage("give either --delta and --t, or --weights")),
    }
}

fn square_r(regime: &Regime, params: Option<&ModelParams>, sizes: &[usize]) -> Result<REvaluator, CliError> {
    regime.check().map_err(fail)?;
    if let Ok(r) = square_evaluator(regime) {
        return Ok(r);
    }
    let Some(p) = params else {
        return Err(fail(format!(
            "no closed-form r(z) at Δ = {}, t = {}; pass --weights to use finite-size boundary polynomials",
            regime.delta, regime.t
        )));
    };
    let polys = sizes
        .iter()
        .map(|&n| {
            arctic_enum::boundary_correlator(&DomainSpec::square(n), p, arctic_enum::Side::South).map(|t| (n, t.h_poly))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?;
    REvaluator::finite_n(&polys).map_err(fail)
}

fn arc_label(a: &ParametricArc) -> String {
    format!("{:?}", a.label).to_lowercase().replace(['(', ')'], "")
}

fn arc_csv(arc: &ParametricArc, map: &FrameMap) -> Result<Vec<u8>, CliError> {
    let mapped = arc.map(arc.label, |x, y| map.apply((x, y)));
    let mut buf = Vec::new();
    mapped.write_csv(&mut buf).map_err(fail)?;
    Ok(buf)
}

fn triangoloid_outline(q: &AspectRatios) -> Vec<Vec<(f64, f64)>> {
    let (cx, cy) = (q.alpha + q.beta, q.alpha + q.gamma);
    let rect = |x0: f64, y0: f64, x1: f64, y1: f64| vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)];
    vec![rect(0.0, 0.0, cx, cy), rect(cx, 0.0, 1.0 + q.beta, cy), rect(cx, cy, 1.0 + q.beta, 1.0 + q.alpha)]
}

fn points(a: &ParametricArc) -> Vec<(f64, f64)> {
    a.points.iter().map(|p| (p.x, p.y)).collect()
}

pub fn curve(a: &CurveArgs, frame: Frame, stdout: &mut impl Write) -> Result<(), CliError> {
    if a.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let grid = log_grid(1.0 + 1e-3, 1e4, a.points);
    let mut fig = Figure::default();
    let (arcs, bbox, extra): (Vec<ParametricArc>, _, Option<(ParametricArc, f64, f64)>) = match a.geometry {
        CurveGeometry::Square => {
            let (regime, params) = square_regime(a)?;
            let arcs = if a.all_arcs {
                if params.is_some() && square_evaluator(&regime).is_err() {
                    return Err(fail("--all-arcs needs a closed-form r(z)"));
                }
                square_all_arcs(&regime, &grid).map_err(fail)?
            } else {
                let r = square_r(&regime, params.as_ref(), &a.sizes)?;
                vec![square_arc(&regime, &r, &grid).map_err(fail)?]
            };
            fig.title = format!("square, Δ = {}, t = {}", regime.delta, regime.t);
            fig.outline.push(vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]);
            (arcs, (0.0, 0.0, 1.0, 1.0), None)
        }
        CurveGeometry::Hexagon => {
            let q = ratios(a, false)?;
            let arc = hexagon_arc(&q, a.points).map_err(fail)?;
            let mut corners = hexagon_corners(&q);
            let xs = corners.iter().map(|p| p.0);
            let ys = corners.iter().map(|p| p.1);
            let bbox = (
                xs.clone().fold(f64::INFINITY, f64::min),
                ys.clone().fold(f64::INFINITY, f64::min),
                xs.fold(f64::NEG_INFINITY, f64::max),
                ys.fold(f64::NEG_INFINITY, f64::max),
            );
            corners.push(corners[0]);
            fig.outline.push(corners);
            fig.title = format!("hexagon, α = {}, β = {}, γ = {}", q.alpha, q.beta, q.gamma);
            (vec![arc], bbox, None)
        }
        CurveGeometry::Triangoloid => {
            let q = ratios(a, true)?;
            let arcs = (0..3).map(|k| triangoloid_arc(&grid, &q, k)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
            let guess = if a.internal_guess {
                let g = triangoloid_internal_guess(&grid, &q).map_err(fail)?;
                Some((g.arc, g.gap, g.predicted_gap))
            } else {
                None
            };
            fig.outline = triangoloid_outline(&q);
            fig.title = format!("triangoloid, α = {:.4}, β = {:.4}, γ = {:.4}", q.alpha, q.beta, q.gamma);
            (arcs, (0.0, 0.0, 1.0 + q.beta, 1.0 + q.alpha), guess)
        }
    };
    let map = FrameMap::new(frame, bbox);
    match &a.out {
        None => {
            for arc in &arcs {
                if arcs.len() > 1 {
                    out(stdout, &format!("# {}", arc_label(arc)))?;
                }
                stdout.write_all(&arc_csv(arc, &map)?).map_err(fail)?;
            }
        }
        Some(path) => {
            write_atomic(path, &arc_csv(&arcs[0], &map)?)?;
            let stem = path.with_extension("");
            for arc in &arcs[1..] {
                write_atomic(&with_suffix(&stem, &format!("-{}.csv", arc_label(arc))), &arc_csv(arc, &map)?)?;
            }
        }
    }
    if let Some((g, gap, predicted)) = &extra {
        let path = match &a.out {
            Some(p) => with_suffix(&p.with_extension(""), "-internal-guess.csv"),
            None => PathBuf::from("internal-guess.csv"),
        };
        write_atomic(&path, &arc_csv(g, &map)?)?;
        out(stdout, &format!("EXPERIMENTAL internal guess written to {}: end gap {gap:.6}, predicted {predicted:.6}", path.display()))?;
    }
    if let Some(svg_path) = &a.svg {
        fig.arcs = arcs.iter().map(points).collect();
        if let Some((g, _, _)) = &extra {
            fig.arcs.push(points(g));
            fig.meta.push(("internal-guess".into(), "experimental".into()));
        }
        let spec = RenderSpec::new(map);
        write_atomic(svg_path, svg(&fig, &spec).as_bytes())?;
    }
    Ok(())
}

fn sample_domain(a: &SampleArgs) -> Result<DomainSpec, CliError> {
    Ok(match a.geometry {
        SampleGeometry::Square => match a.refine {
            Some(r) => DomainSpec::refined_square(need(a.n, "n")?, r).map_err(|e| usage(e.to_string()))?,
            None => DomainSpec::square(need(a.n, "n")?),
        },
        SampleGeometry::Lambda => match a.refine {
            // the Λ limit with one extra path: the square refined at column R
            Some(r) => DomainSpec::refined_square(need(a.n, "n")?, r).map_err(|e| usage(e.to_string()))?,
            None => DomainSpec::lambda(need(a.n, "n")?, a.l),
        },
        SampleGeometry::Triangoloid => {
            let (x, y, z) = (need(a.a, "a")?, need(a.b, "b")?, need(a.c, "c")?);
            TriangoloidLayout::new(x, y, z).map_err(|e| usage(e.to_string()))?;
            DomainSpec::triangoloid(x, y, z)
        }
        SampleGeometry::Convex => {
            let w = a.word.as_deref().ok_or_else(|| usage("--word is required for a convex domain"))?;
            DomainSpec::digitally_convex(w)
        }
    })
}

fn polylines_csv(lines: &[Polyline], map: &FrameMap) -> Vec<u8> {
    let mut s = String::from("line,x,y\n");
    for (k, l) in lines.iter().enumerate() {
        for &p in l {
            let (x, y) = map.apply(p);
            s += &format!("{k},{x:.6},{y:.6}\n");
        }
    }
    s.into_bytes()
}

pub fn sample(a: &SampleArgs, frame: Frame, stdout: &mut impl Write) -> Result<(), CliError> {
    let domain = sample_domain(a)?;
    let ice = ModelParams::ice_point();
    let (lat, configs, method) = sample_configs(&domain, &ice, a.samples, a.seed).map_err(fail)?;
    let mut stats = SampleStats::empty(&domain, &lat, method);
    for c in &configs {
        stats.add(&lat, c).map_err(fail)?;
    }
    let unit = stats.scale();
    let min = (
        lat.vertices().iter().map(|v| v.pos.0).min().unwrap_or(0),
        lat.vertices().iter().map(|v| v.pos.1).min().unwrap_or(0),
    );
    let max = (
        lat.vertices().iter().map(|v| v.pos.0).max().unwrap_or(0),
        lat.vertices().iter().map(|v| v.pos.1).max().unwrap_or(0),
    );
    let bbox = (0.0, 0.0, (max.0 - min.0 + 1) as f64 / unit, (max.1 - min.1 + 1) as f64 / unit);
    let map = FrameMap::new(frame, bbox);
    let mut fig = Figure { title: format!("{:?}", domain.kind), ..Figure::default() };
    fig.meta.push(("samples".into(), a.samples.to_string()));
    fig.meta.push(("seed".into(), a.seed.to_string()));
    fig.meta.push(("method".into(), format!("{method:?}")));
    let tri = match domain.kind {
        DomainKind::Triangoloid { a, b, c } => Some(AspectRatios::from_sizes(a, b, c).map_err(fail)?),
        _ => None,
    };
    fig.outline = match &tri {
        Some(q) => triangoloid_outline(q),
        None => vec![vec![(0.0, 0.0), (bbox.2, 0.0), (bbox.2, bbox.3), (0.0, bbox.3), (0.0, 0.0)]],
    };
    if let Some(first) = configs.first() {
        for v in 0..lat.vertices().len() {
            let p = lattice_to_paper(lat.vertices()[v].pos, min, unit);
            match lat.classify(first, v).map_err(fail)? {
                arctic_model::VertexType::W5 => fig.w5.push(p),
                arctic_model::VertexType::W6 => fig.w6.push(p),
                _ => {}
            }
        }
        let cfg = arctic_model::Configuration::new(domain.clone(), first.clone());
        write_atomic(&with_suffix(&a.out, "-config.json"), cfg.to_json().map_err(fail)?.as_bytes())?;
    }

    let mut arcs: Vec<ParametricArc> = Vec::new();
    let refined_at = match (&domain.kind, a.refine) {
        (DomainKind::Rectangle { .. }, Some(r)) => Some(r),
        _ => None,
    };
    if a.overlay {
        let square_like = matches!(domain.kind, DomainKind::SquareDwbc { .. }) || refined_at.is_some();
        if let Some(q) = &tri {
            arcs = (0..3).map(|k| triangoloid_arc(&arctic_tangent::default_grid(), q, k)).collect::<Result<_, _>>().map_err(fail)?;
        } else if square_like {
            arcs = square_all_arcs(&Regime::ice(), &arctic_tangent::default_grid()).map_err(fail)?;
        } else {
            writeln!(std::io::stderr(), "note: no analytic curve for this geometry; overlay skipped").map_err(fail)?;
        }
        if let Some(r) = refined_at {
            let n = unit;
            let xi = (r as f64 - 0.5) / n;
            let asm = REvaluator::ClosedFormAsm;
            match asm.invert(xi) {
                Ok(z) => {
                    let touch = square_arc(&Regime::ice(), &asm, &[z]).map_err(fail)?.points[1];
                    fig.tangents.push(((xi, 0.0), (touch.x, touch.y)));
                    let m = slope_m(z, &Regime::ice()).map_err(fail)?;
                    fig.meta.push(("tangent-z".into(), format!("{z}")));
                    fig.meta.push(("tangent-slope".into(), format!("{m}")));
                    if let Some(fit) = fit_slope(&stats.entry_profile(), 0.8 * touch.y) {
                        out(stdout, &format!("refined path: fitted slope {fit:.4}, predicted m(z = {z:.4}) = {m:.4}"))?;
                    }
                }
                Err(_) => {
                    out(stdout, &format!("refined path: no tangent line, r/N = {xi:.3} lies outside the arc's range"))?;
                }
            }
        }
    }
    fig.arcs = arcs.iter().map(points).collect();

    let mut buf = Vec::new();
    stats.write_histogram_csv(&mut buf).map_err(fail)?;
    write_atomic(&with_suffix(&a.out, "-hist.csv"), &buf)?;
    let mut buf = Vec::new();
    stats.write_density_csv(&mut buf).map_err(fail)?;
    write_atomic(&with_suffix(&a.out, "-density.csv"), &buf)?;
    if a.samples > 0 {
        match frozen_boundary(&stats, a.threshold) {
            Ok(lines) => {
                write_atomic(&with_suffix(&a.out, "-frozen.csv"), &polylines_csv(&lines, &map))?;
                if !arcs.is_empty() {
                    let (mut cov, mut len) = (0.0, 0.0);
                    for arc in &arcs {
                        cov += arctic_sampler::arc_coverage(&points(arc), &lines, 0.05) * arc.length();
                        len += arc.length();
                    }
                    out(stdout, &format!("frozen boundary within 0.05 of the curve over {:.1}% of its length", 100.0 * cov / len))?;
                }
            }
            Err(e) => out(stdout, &format!("frozen boundary not extracted: {e}"))?,
        }
    }
    let spec = RenderSpec::new(map);
    write_atomic(&with_suffix(&a.out, ".svg"), svg(&fig, &spec).as_bytes())?;
    let exactness = if method.is_exact() { "exact" } else { "approximate" };
    out(stdout, &format!("{} {exactness} samples ({method:?}), seed {}, written to {}.*", a.samples, a.seed, a.out.display()))
}

pub fn verify(a: &VerifyArgs, stdout: &mut impl Write) -> Result<(), CliError> {
    let results = checks::run_suite(a.suite.into(), a.fast);
    for c in &results {
        out(stdout, &c.line())?;
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} check(s) failed")));
    }
    Ok(())
}
