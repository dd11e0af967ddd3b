//! Verification suites. Each check reports pass/fail with a short detail
//! line; tolerances are fixed here and not configurable.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use arctic_enum::{
    all_configurations, boundary_correlator, gauge_invariance_check, naive_partition_function, partition_function,
    Side,
};
use arctic_exact::{
    asm_count, asm_h, asm_refined, binomial_q, identity_hex_check, lambda_nl_partition, path_weight_poly,
    triangoloid_count, triangoloid_h, triangoloid_h_closed, triangoloid_refined, ExactPolynomial,
};
use arctic_model::{DomainSpec, ModelParams};
use arctic_sampler::{arc_coverage, collect_stats, fit_slope, frozen_boundary, Cftp};
use arctic_tangent::{
    boundary_term, default_grid, hexagon_arc, line_family, saddle_action, slope_m, solve_saddle, square_all_arcs,
    square_arc, triangoloid_arc, AspectRatios, ParametricArc, REvaluator, Regime,
};

/// Outcome of one acceptance check.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Check {
    pub fn line(&self) -> String {
        let status = if self.skipped {
            "SKIP"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        };
        format!("[{status}] {:>2} {:<28} {:>8.2}s  {}", self.id, self.name, self.seconds, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Identities,
    Saddle,
    Envelope,
    Sampler,
    Gauge,
    All,
}

impl Suite {
    pub fn ids(self) -> &'static [u8] {
        match self {
            Suite::Counts => &[1, 2],
            Suite::Identities => &[3, 4],
            Suite::Saddle => &[5],
            Suite::Envelope => &[6, 7, 8],
            Suite::Sampler => &[9, 10],
            Suite::Gauge => &[11],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        }
    }
}

pub const NAMES: [&str; 11] = [
    "exact counts",
    "refined counts",
    "lambda convolution",
    "identity suite",
    "saddle gradients",
    "envelope tangency",
    "hexagon ellipse",
    "triangoloid consistency",
    "sampler distribution",
    "figure-scale overlay",
    "gauge invariance",
];

type Outcome = Result<String, String>;

/// Runs check `id`. With `fast`, the figure-scale overlay is skipped.
pub fn run(id: u8, fast: bool) -> Check {
    let start = Instant::now();
    let name = NAMES[(id - 1) as usize];
    if fast && id == 10 {
        return Check { id, name, passed: true, skipped: true, detail: "skipped with --fast".into(), seconds: 0.0 };
    }
    let out = match id {
        1 => exact_counts(),
        2 => refined_counts(),
        3 => lambda_convolution(),
        4 => identities(),
        5 => saddle_gradients(),
        6 => envelope_tangency(),
        7 => hexagon_ellipse(),
        8 => triangoloid_consistency(),
        9 => sampler_distribution(),
        10 => overlay(&OverlayPlan::default()).map(|r| r.detail()).and_then(|d| d),
        11 => gauge(),
        _ => Err(format!("no check {id}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    match out {
        Ok(detail) => Check { id, name, passed: true, skipped: false, detail, seconds },
        Err(detail) => Check { id, name, passed: false, skipped: false, detail, seconds },
    }
}

pub fn run_suite(suite: Suite, fast: bool) -> Vec<Check> {
    suite.ids().iter().map(|&id| run(id, fast)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exact_counts() -> Outcome {
    let expected = [1i64, 2, 7, 42, 429];
    let ice = ModelParams::ice_point();
    for (k, &e) in expected.iter().enumerate() {
        let n = k + 1;
        let z = partition_function(&DomainSpec::square(n), &ice).map_err(err)?;
        ensure(z == q(e), || format!("Z({n}) = {z}, expected {e}"))?;
        ensure(asm_count(n) == BigInt::from(e), || format!("asm_count({n}) = {}", asm_count(n)))?;
    }
    // the transfer matrix agrees with plain enumeration where that is quick
    for n in 1..=4 {
        let lat = DomainSpec::square(n).lattice().map_err(err)?;
        let z = naive_partition_function(&lat, &ice).map_err(err)?;
        ensure(z == q(expected[n - 1]), || format!("enumeration Z({n}) = {z}"))?;
    }
    Ok("Z = 1, 2, 7, 42, 429 for n = 1..5".into())
}

fn refined_counts() -> Outcome {
    let ice = ModelParams::ice_point();
    for n in 1..=5 {
        let t = boundary_correlator(&DomainSpec::square(n), &ice, Side::South).map_err(err)?;
        let total = BigRational::from_integer(asm_count(n));
        for r in 1..=n {
            let ratio = BigRational::from_integer(asm_refined(n, r).map_err(err)?) / &total;
            ensure(t.h[r - 1] == ratio, || format!("n={n} r={r}: {} vs {ratio}", t.h[r - 1]))?;
        }
        ensure(t.h == asm_h(n), || format!("asm_h({n}) mismatch"))?;
    }
    let mut domains = 0;
    for a in 0..=2usize {
        for b in 0..=2usize {
            for c in 0..=2usize {
                if a + b == 0 || b + c == 0 || c + a == 0 {
                    continue;
                }
                let t = boundary_correlator(&DomainSpec::triangoloid(a, b, c), &ice, Side::South).map_err(err)?;
                let count = triangoloid_count(a, b, c);
                ensure(t.partition == BigRational::from_integer(count.clone()), || {
                    format!("triangoloid ({a},{b},{c}): Z = {} vs {count}", t.partition)
                })?;
                ensure(t.h.len() == a + 2 * b + c, || format!("({a},{b},{c}): {} positions", t.h.len()))?;
                for r in 1..=t.h.len() {
                    let refined = BigRational::from_integer(triangoloid_refined(a, b, c, r).map_err(err)?);
                    let closed = triangoloid_h_closed(a, b, c, r).map_err(err)?;
                    ensure(&t.h[r - 1] * &t.partition == refined, || format!("({a},{b},{c}) r={r}: refined count"))?;
                    ensure(t.h[r - 1] == closed, || format!("({a},{b},{c}) r={r}: closed form"))?;
                }
                ensure(t.h == triangoloid_h(a, b, c), || format!("({a},{b},{c}): h vector"))?;
                domains += 1;
            }
        }
    }
    Ok(format!("ASM n ≤ 5 and {domains} triangoloids with a, b, c ≤ 2 agree"))
}

fn lambda_convolution() -> Outcome {
    for p in [ModelParams::ice_point(), ModelParams::from_integers(1, 2, 3).map_err(err)?] {
        for n in 1..=4 {
            let sq = boundary_correlator(&DomainSpec::square(n), &p, Side::South).map_err(err)?;
            for l in 0..=3 {
                let z = partition_function(&DomainSpec::lambda(n, l), &p).map_err(err)?;
                let (_, conv) = lambda_nl_partition(n, l, &p, &sq.h, &sq.partition).map_err(err)?;
                ensure(z == conv, || format!("N={n} L={l} at {:?}: {z} vs {conv}", (p.delta, p.t)))?;
            }
        }
    }
    Ok("N ≤ 4, L ≤ 3 at the ice point and at weights (1, 2, 3)".into())
}

fn identities() -> Outcome {
    let mut n = 0;
    for a in 1..=8 {
        for b in 1..=8 {
            for c in 1..=8 {
                for r in 1..=a + 1 {
                    ensure(identity_hex_check(a, b, c, r), || format!("hexagon identity fails at ({a},{b},{c}) r={r}"))?;
                    n += 1;
                }
            }
        }
    }
    for x in 0..=12 {
        for y in 0..=12 {
            let v = path_weight_poly(x, y).eval(&BigRational::one());
            ensure(v == binomial_q((x + y) as i64, y as i64), || format!("Chu–Vandermonde fails at ({x},{y})"))?;
        }
    }
    Ok(format!("{n} hexagon identities, 169 path sums"))
}

fn fd_gradient(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> (f64, f64) {
    let h = 1e-6;
    ((f(x + h, y) - f(x - h, y)) / (2.0 * h), (f(x, y + h) - f(x, y - h)) / (2.0 * h))
}

fn fd4_gradient(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> (f64, f64) {
    let h = 1e-5;
    let d = |g: &dyn Fn(f64) -> f64| (g(-2.0 * h) - 8.0 * g(-h) + 8.0 * g(h) - g(2.0 * h)) / (12.0 * h);
    (d(&|e| f(x + e, y)), d(&|e| f(x, y + e)))
}

/// Finite-size r(z) from the exact boundary polynomials at N = 4, 5.
fn finite_r(p: &ModelParams) -> Result<REvaluator, String> {
    let polys: Vec<(usize, ExactPolynomial)> = (4..=5)
        .map(|n| boundary_correlator(&DomainSpec::square(n), p, Side::South).map(|t| (n, t.h_poly)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    REvaluator::finite_n(&polys).map_err(err)
}

fn saddle_gradients() -> Outcome {
    // rational weights with |Δ| < 1 give the (Δ, t) samples; r(z) comes from
    // their exact boundary polynomials
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cache: HashMap<(i64, i64, i64), REvaluator> = HashMap::new();
    let (mut worst, mut worst4) = (0.0f64, 0.0f64);
    let mut over = Vec::new();
    let mut k = 0;
    while k < 50 {
        let (a, b, c) = (rng.random_range(1..=9i64), rng.random_range(1..=9i64), rng.random_range(1..=9i64));
        if c >= a + b || a >= b + c || b >= a + c {
            continue;
        }
        let u: f64 = rng.random_range(0.2..=5.0);
        let p = ModelParams::from_integers(a, b, c).map_err(err)?;
        let regime = Regime::from(&p);
        if !cache.contains_key(&(a, b, c)) {
            cache.insert((a, b, c), finite_r(&p)?);
        }
        let r = &cache[&(a, b, c)];
        let s = solve_saddle(u, &regime, r).map_err(err)?;
        let failed = std::cell::RefCell::new(None);
        let action = |xi: f64, eta: f64| match saddle_action(xi, eta, u, &regime, |x| boundary_term(r, x).unwrap_or(f64::NAN)) {
            Ok(v) => v,
            Err(e) => {
                failed.borrow_mut().get_or_insert(e.to_string());
                f64::NAN
            }
        };
        let (gx, gy) = fd_gradient(&action, s.xi_sp, s.eta_sp);
        let (qx, qy) = fd4_gradient(&action, s.xi_sp, s.eta_sp);
        if let Some(e) = failed.into_inner() {
            return Err(format!("weights ({a},{b},{c}), u={u}: {e}"));
        }
        let g = gx.abs().max(gy.abs());
        if g > 1e-9 {
            over.push(format!("({a},{b},{c}) t={:.2} u={u:.2} ξ={:.3}: {g:.1e}", regime.t, s.xi_sp));
        }
        worst = worst.max(g);
        worst4 = worst4.max(qx.abs().max(qy.abs()));
        k += 1;
    }
    let summary = format!("50 samples, max |∇S| = {worst:.2e} (4th-order stencil, h = 1e-5: {worst4:.1e})");
    if over.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {} above 1e-9: {}", over.len(), over.join("; ")))
    }
}

fn support_check(arc: &ParametricArc, regime: &Regime, r: &REvaluator) -> Result<(), String> {
    for p in arc.points.iter().filter(|p| p.z.is_finite() && p.z > 1.0) {
        let line = line_family(p.z, regime, r).map_err(err)?.coefficients();
        let d: Vec<f64> = arc.points.iter().map(|w| line.signed_distance(w.x, w.y)).collect();
        let touch = d.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        ensure(touch <= 1e-6, || format!("line z={} misses the arc by {touch:.2e}", p.z))?;
        let (lo, hi) = d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        ensure(lo >= -1e-6 || hi <= 1e-6, || format!("line z={} cuts the arc ({lo:.2e}, {hi:.2e})", p.z))?;
    }
    Ok(())
}

fn envelope_tangency() -> Outcome {
    let grid = default_grid();
    ensure(grid.len() == 200, || format!("grid has {} points", grid.len()))?;
    for (regime, r) in [
        (Regime::ice(), REvaluator::ClosedFormAsm),
        (Regime::free_fermion(1.0), REvaluator::ClosedFormFreeFermion { t: 1.0 }),
        (Regime::free_fermion(2.0), REvaluator::ClosedFormFreeFermion { t: 2.0 }),
    ] {
        let arc = square_arc(&regime, &r, &grid).map_err(err)?;
        support_check(&arc, &regime, &r)?;
        let kappa = 1.0 - r.r(1.0);
        let (s, e) = (arc.points[0], arc.points[arc.len() - 1]);
        ensure((s.x - (1.0 - kappa)).abs() <= 1e-6 && s.y.abs() <= 1e-6, || format!("{regime:?}: start {s:?}"))?;
        ensure((e.x - 1.0).abs() <= 1e-6 && (e.y - kappa).abs() <= 1e-6, || format!("{regime:?}: end {e:?}"))?;
    }
    Ok("ice, Δ = 0 at t = 1 and t = 2: 200 support lines each, contacts within 1e-6".into())
}

fn hexagon_residual(x: f64, y: f64, q: &AspectRatios) -> f64 {
    // written out here rather than taken from the library
    let (a, b, g) = (q.alpha, q.beta, q.gamma);
    let k = a + 2.0 * b + g;
    3.0 * a * b * g * (a + b + g) - 3.0 * (a + g).powi(2) * x * x + 2.0 * 3f64.sqrt() * (a - g) * k * x * y
        - (k * k - 4.0 * a * g) * y * y
}

fn hexagon_ellipse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (a, b, c) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
        let q = AspectRatios::new(a, b, c).map_err(err)?;
        let arc = hexagon_arc(&q, 101).map_err(err)?;
        for p in &arc.points {
            let e = hexagon_residual(p.x, p.y, &q);
            ensure(e.abs() <= 1e-8, || format!("({a:.3},{b:.3},{c:.3}) at ξ={}: E = {e:.2e}", p.z))?;
            worst = worst.max(e.abs());
        }
    }
    Ok(format!("20 triples, max |E| = {worst:.2e}"))
}

fn triangoloid_consistency() -> Outcome {
    let grid = default_grid();
    let third = AspectRatios::normalized(1.0, 1.0, 1.0).map_err(err)?;
    let tri = triangoloid_arc(&grid, &third, 0).map_err(err)?;
    let sq = square_arc(&Regime::ice(), &REvaluator::ClosedFormAsm, &grid).map_err(err)?;
    ensure(tri.len() == sq.len(), || "arc lengths differ".into())?;
    let mut worst = 0.0f64;
    for (a, b) in tri.points.iter().zip(&sq.points) {
        let d = (a.x - 4.0 / 3.0 * b.x).hypot(a.y - 4.0 / 3.0 * b.y);
        worst = worst.max(d);
    }
    ensure(worst <= 1e-6, || format!("symmetric arc off the ASM arc by {worst:.2e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let (a, b, c): (f64, f64, f64) = (rng.random_range(0.05..1.0), rng.random_range(0.05..1.0), rng.random_range(0.05..1.0));
        let q = AspectRatios::normalized(a, b, c).map_err(err)?;
        let arc = triangoloid_arc(&grid, &q, 0).map_err(err)?;
        let kappa = (q.alpha + q.beta + q.gamma) / 2.0 + q.beta * q.gamma / (q.alpha + q.gamma);
        let s = arc.points[0];
        ensure((s.x - kappa).abs() <= 1e-9 && s.y.abs() <= 1e-9, || format!("{q:?}: south contact {s:?} vs κ = {kappa}"))?;
        let r = REvaluator::TriangoloidClosedForm(q);
        let tail = r.r_w(1e-9);
        ensure((tail - (1.0 + q.beta)).abs() <= 1e-6, || format!("{q:?}: r(w → 0) = {tail}"))?;
    }
    Ok(format!("symmetric arc within {worst:.1e}; 20 random contacts and tails"))
}

fn chi_square(n: usize, samples: usize, seed: u64) -> Result<(f64, f64, usize), String> {
    let d = DomainSpec::square(n);
    let lat = d.lattice().map_err(err)?;
    let all = all_configurations(&lat, 10_000).map_err(err)?;
    let index: HashMap<&Vec<bool>, usize> = all.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let c = Cftp::new(&d, &ModelParams::ice_point()).map_err(err)?;
    let mut counts = vec![0u64; all.len()];
    for s in c.samples(samples, seed).map_err(err)? {
        counts[*index.get(&s).ok_or("sample outside the configuration set")?] += 1;
    }
    let e = samples as f64 / all.len() as f64;
    let stat = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let crit = ChiSquared::new((all.len() - 1) as f64).map_err(err)?.inverse_cdf(0.99);
    Ok((stat, crit, all.len()))
}

fn sampler_distribution() -> Outcome {
    let mut detail = Vec::new();
    for (n, states, seed) in [(3, 7, 31u64), (4, 42, 32)] {
        let (stat, crit, k) = chi_square(n, 100_000, seed)?;
        ensure(k == states, || format!("n={n}: {k} states"))?;
        ensure(stat < crit, || format!("n={n}: χ² = {stat:.2} ≥ {crit:.2}"))?;
        detail.push(format!("χ²({n}) = {stat:.1} < {crit:.1}"));
    }
    let samples = 10_000;
    let stats = collect_stats(&DomainSpec::square(10), &ModelParams::ice_point(), samples, 33).map_err(err)?;
    let mut worst = 0.0f64;
    for (r, p) in asm_h(10).iter().enumerate() {
        let p = p.to_f64().ok_or("probability")?;
        let mean = samples as f64 * p;
        let sd = (samples as f64 * p * (1.0 - p)).sqrt();
        let z = (stats.histogram[r] as f64 - mean).abs() / sd;
        ensure(z <= 4.0, || format!("r={}: {} vs {mean:.1} ({z:.2}σ)", r + 1, stats.histogram[r]))?;
        worst = worst.max(z);
    }
    detail.push(format!("n=10 histogram max {worst:.2}σ"));
    Ok(detail.join(", "))
}

/// Sizes for the figure-scale overlay check.
#[derive(Clone, Debug)]
pub struct OverlayPlan {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub threshold: f64,
    pub band: f64,
    /// Refinement position, as a fraction of N.
    pub refine: f64,
}

impl Default for OverlayPlan {
    fn default() -> Self {
        OverlayPlan { n: 200, samples: 200, seed: 10, threshold: 0.05, band: 0.05, refine: 0.8 }
    }
}

#[derive(Clone, Debug)]
pub struct OverlayReport {
    pub coverage: f64,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
    pub z: f64,
}

impl OverlayReport {
    pub fn slope_error(&self) -> f64 {
        (self.fitted_slope - self.predicted_slope).abs() / self.predicted_slope.abs()
    }

    pub fn detail(&self) -> Result<String, String> {
        let d = format!(
            "coverage {:.1}% (need ≥ 95%), slope {:.3} vs m(z={:.3}) = {:.3} ({:.1}%, need ≤ 10%)",
            100.0 * self.coverage,
            self.fitted_slope,
            self.z,
            self.predicted_slope,
            100.0 * self.slope_error()
        );
        if self.coverage >= 0.95 && self.slope_error() <= 0.10 {
            Ok(d)
        } else {
            Err(d)
        }
    }
}

/// Frozen boundary of exact samples against the ice-point arcs, and the
/// slope of the extra path on the refined square.
pub fn overlay(plan: &OverlayPlan) -> Result<OverlayReport, String> {
    let ice = ModelParams::ice_point();
    let stats = collect_stats(&DomainSpec::square(plan.n), &ice, plan.samples, plan.seed).map_err(err)?;
    let lines = frozen_boundary(&stats, plan.threshold).map_err(err)?;
    let arcs = square_all_arcs(&Regime::ice(), &default_grid()).map_err(err)?;
    let (mut covered, mut total) = (0.0, 0.0);
    for a in &arcs {
        let pts: Vec<(f64, f64)> = a.points.iter().map(|p| (p.x, p.y)).collect();
        let len = a.length();
        covered += arc_coverage(&pts, &lines, plan.band) * len;
        total += len;
    }
    let coverage = covered / total;

    let r = ((plan.refine * plan.n as f64).round() as usize).clamp(1, plan.n);
    let rs = DomainSpec::refined_square(plan.n, r).map_err(err)?;
    let refined = collect_stats(&rs, &ice, plan.samples, plan.seed + 1).map_err(err)?;
    let asm = REvaluator::ClosedFormAsm;
    // the path starts at the centre of column r
    let xi = (r as f64 - 0.5) / plan.n as f64;
    let z = asm.invert(xi).map_err(err)?;
    let predicted_slope = slope_m(z, &Regime::ice()).map_err(err)?;
    let touch = square_arc(&Regime::ice(), &asm, &[z]).map_err(err)?.points[1];
    // straight part only: stop well before the tangency point
    let fitted_slope = fit_slope(&refined.entry_profile(), 0.8 * touch.y).ok_or("too few path points to fit")?;
    Ok(OverlayReport { coverage, fitted_slope, predicted_slope, z })
}

fn gauge() -> Outcome {
    let weights = [ModelParams::ice_point(), ModelParams::from_integers(1, 2, 3).map_err(err)?];
    let mut moves = 0;
    for (a, b, c) in [(1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1)] {
        let lat = DomainSpec::triangoloid(a, b, c).lattice().map_err(err)?;
        let canon = lat.defects().clone();
        let positions: Vec<(i32, i32)> = lat.vertices().iter().map(|v| v.pos).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..positions.len() + 4 {
            // single moves at every vertex, then random products of moves
            let pattern = if round < positions.len() {
                lat.apply_gauge(&canon, positions[round]).map_err(err)?
            } else {
                let mut p = canon.clone();
                for _ in 0..3 {
                    p = lat.apply_gauge(&p, positions[rng.random_range(0..positions.len())]).map_err(err)?;
                }
                p
            };
            for w in &weights {
                let same = gauge_invariance_check(&lat, w, &pattern).map_err(err)?;
                ensure(same, || format!("({a},{b},{c}): Z changes after rerouting (round {round})"))?;
            }
            moves += 1;
        }
    }
    Ok(format!("{moves} rerouted defect lines on 5 triangoloids, two weight sets"))
}
