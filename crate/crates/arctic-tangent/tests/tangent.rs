use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use arctic_enum::{boundary_correlator, Side};
use arctic_exact::{asm_h_poly, binomial, ExactPolynomial};
use arctic_model::{DomainSpec, ModelParams};
use arctic_tangent::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Δ = 0, t = 1 boundary polynomial: binomial(N−1, r−1)/2^(N−1).
fn domino_h(n: usize) -> ExactPolynomial {
    let den = BigInt::from(2).pow(n as u32 - 1);
    ExactPolynomial::new((0..n as i64).map(|k| BigRational::new(binomial(n as i64 - 1, k), den.clone())).collect())
}

fn asm_sizes(ns: std::ops::RangeInclusive<usize>) -> Vec<(usize, ExactPolynomial)> {
    ns.map(|n| (n, asm_h_poly(n))).collect()
}

#[test]
fn r_asm_values() {
    assert!(close(r_asm(1.0), 0.5, 1e-15));
    assert!(close(r_asm(1.0 + 1e-9), 0.5, 1e-9));
    assert_eq!(r_asm(f64::INFINITY), 1.0);
    assert!(close(r_asm(3.0), (7f64.sqrt() - 1.0) / 2.0, 1e-15));
    for z in [1.5, 2.0, 10.0, 1e3] {
        let direct = ((z * z - z + 1.0f64).sqrt() - 1.0) / (z - 1.0);
        assert!(close(r_asm(z), direct, 1e-14));
    }
    assert!(close(r_asm(1e12), 1.0, 1e-11));
}

#[test]
fn r_free_fermion_values() {
    assert_eq!(r_free_fermion(1.0, 1.0), 0.5);
    assert!(close(r_free_fermion(1.0, 2.0), 0.8, 1e-15));
    assert_eq!(r_free_fermion(f64::INFINITY, 3.0), 1.0);
}

#[test]
fn free_fermion_boundary_polynomial_is_a_power() {
    // at Δ = 0 with weights (3, 4, 5), h_N(z) = ((t²z + 1)/(t² + 1))^(N−1)
    let p = ModelParams::from_integers(3, 4, 5).unwrap();
    assert_eq!(p.delta, 0.0);
    let t2 = BigRational::new(16.into(), 9.into());
    let base = ExactPolynomial::new(vec![
        BigRational::from_integer(1.into()) / (&t2 + BigRational::from_integer(1.into())),
        &t2 / (&t2 + BigRational::from_integer(1.into())),
    ]);
    for n in 2..=5 {
        let h = boundary_correlator(&DomainSpec::square(n), &p, Side::South).unwrap().h_poly;
        let mut pow = ExactPolynomial::new(vec![BigRational::from_integer(1.into())]);
        for _ in 1..n {
            pow = &pow * &base;
        }
        assert_eq!(h, pow, "N={n}");
    }
}

#[test]
fn finite_size_extrapolation() {
    let ice = asm_sizes(3..=5);
    assert!(close(r_finite_n(2.0, &ice).unwrap(), r_asm(2.0), 0.05));
    assert!(close(r_finite_n(1.0, &ice).unwrap(), 0.5, 1e-12));
    let dom: Vec<_> = (3..=6).map(|n| (n, domino_h(n))).collect();
    for z in [1.0, 2.0, 5.0] {
        assert!(close(r_finite_n(z, &dom).unwrap(), r_free_fermion(z, 1.0), 0.05));
    }
    // |r_N − r_asm| shrinks with N
    let all = FiniteN::new(&asm_sizes(3..=6)).unwrap();
    for z in [1.5, 2.0, 4.0] {
        let errs: Vec<f64> = (0..4).map(|i| (all.r_at(i, z) - r_asm(z)).abs()).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }
    assert_eq!(r_finite_n(2.0, &[]).unwrap_err(), TangentError::EmptySequence);
    assert_eq!(r_finite_n(2.0, &asm_sizes(3..=3)).unwrap_err(), TangentError::TooFewSizes(1));
    assert_eq!(r_finite_n(0.0, &ice).unwrap_err(), TangentError::NonPositiveZ(0.0));
}

#[test]
fn slope_values() {
    let ice = Regime::ice();
    assert_eq!(slope_m(1.0, &ice).unwrap(), 0.0);
    assert!(close(slope_m(2.0, &ice).unwrap(), 1.0, 1e-15));
    let ff = Regime::free_fermion(1.0);
    for z in [1.5, 3.0, 7.0] {
        assert!(close(slope_m(z, &ff).unwrap(), (z - 1.0) * (z + 1.0) / (2.0 * z), 1e-14));
    }
    assert!(matches!(slope_m(2.0, &Regime::new(2.0, 1.0)), Err(TangentError::NonProbabilisticWeights(_))));
}

#[test]
fn line_family_limits() {
    let ice = Regime::ice();
    let l = line_family(1.0, &ice, &REvaluator::ClosedFormAsm).unwrap();
    assert_eq!((l.slope, l.x_intercept), (0.0, 0.5));
    let c = l.coefficients();
    assert!(close(c.a, 0.0, 1e-15) && close(c.c, 0.0, 1e-15));
    let l = line_family(f64::INFINITY, &ice, &REvaluator::ClosedFormAsm).unwrap();
    assert_eq!(l.x_intercept, 1.0);
    assert!(l.slope.is_infinite());
    // a vertical line through (1, ·): passes the contact point (1, κ)
    assert!(close(l.coefficients().signed_distance(1.0, 0.5), 0.0, 1e-15));
}

fn check_support(arc: &ParametricArc, regime: &Regime, r: &REvaluator) {
    for p in arc.points.iter().filter(|p| p.z.is_finite() && p.z > 1.0) {
        let line = line_family(p.z, regime, r).unwrap().coefficients();
        let d: Vec<f64> = arc.points.iter().map(|q| line.signed_distance(q.x, q.y)).collect();
        let min_abs = d.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        assert!(min_abs <= 1e-6, "z={}", p.z);
        let (lo, hi) = d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(lo >= -1e-6 || hi <= 1e-6, "z={} not one-sided: {lo} {hi}", p.z);
    }
}

#[test]
fn square_envelopes_are_supported_by_their_lines() {
    let grid = default_grid();
    assert_eq!(grid.len(), 200);
    for (regime, r) in [
        (Regime::ice(), REvaluator::ClosedFormAsm),
        (Regime::free_fermion(1.0), REvaluator::ClosedFormFreeFermion { t: 1.0 }),
        (Regime::free_fermion(2.0), REvaluator::ClosedFormFreeFermion { t: 2.0 }),
    ] {
        let arc = square_arc(&regime, &r, &grid).unwrap();
        assert_eq!(arc.len(), 202);
        check_support(&arc, &regime, &r);
        let kappa = 1.0 - r.r(1.0);
        let (first, last) = (arc.points[0], arc.points[arc.len() - 1]);
        assert!(close(first.x, 1.0 - kappa, 1e-6) && close(first.y, 0.0, 1e-6));
        assert!(close(last.x, 1.0, 1e-6) && close(last.y, kappa, 1e-6), "{last:?} κ={kappa}");
    }
}

#[test]
fn ice_arc_matches_the_ellipse() {
    let arc = square_arc(&Regime::ice(), &REvaluator::ClosedFormAsm, &default_grid()).unwrap();
    for p in &arc.points {
        let (x, y) = (p.x, p.y);
        let e = x * x + x * y + y * y - x - 2.0 * y + 0.25;
        assert!(e.abs() <= 1e-9, "{p:?}: {e}");
    }
}

#[test]
fn generic_envelope_agrees_with_the_analytic_one() {
    let regime = Regime::free_fermion(2.0);
    let r = REvaluator::ClosedFormFreeFermion { t: 2.0 };
    let grid = log_grid(1.01, 100.0, 50);
    let env = envelope(|z| family_coefficients(z, &regime, &r), &grid).unwrap();
    assert!(env.singular.is_empty());
    let exact = square_arc(&regime, &r, &grid).unwrap();
    for (a, b) in env.arc.points.iter().zip(&exact.points[1..]) {
        assert!(close(a.x, b.x, 1e-7) && close(a.y, b.y, 1e-7));
    }
    let flat = envelope(|_| Ok(GeneralLine::new(1.0, 1.0, 0.5)), &grid).unwrap();
    assert!(flat.arc.is_empty());
    assert_eq!(flat.singular.len(), grid.len());
    assert!(matches!(flat.singular[0], TangentError::SingularSystem(_)));
}

#[test]
fn finite_size_envelope_uses_differences() {
    let r = REvaluator::finite_n(&asm_sizes(4..=6)).unwrap();
    let arc = square_arc(&Regime::ice(), &r, &log_grid(1.1, 50.0, 40)).unwrap();
    assert_eq!(arc.len(), 40);
    let exact = square_arc(&Regime::ice(), &REvaluator::ClosedFormAsm, &log_grid(1.1, 50.0, 40)).unwrap();
    let worst = arc.points.iter().zip(&exact.points[1..]).map(|(a, b)| (a.x - b.x).hypot(a.y - b.y)).fold(0.0, f64::max);
    assert!(worst < 0.15, "{worst}");
}

#[test]
fn all_arcs_touch_each_side_at_the_right_place() {
    let regime = Regime::free_fermion(2.0);
    let arcs = square_all_arcs(&regime, &log_grid(1.001, 1e4, 100)).unwrap();
    let kappa = 1.0 / 5.0;
    let ends = |a: &ParametricArc| (a.points[0], a.points[a.len() - 1]);
    let (s, e) = ends(&arcs[0]);
    assert!(close(s.x, 1.0 - kappa, 1e-12) && close(e.y, kappa, 1e-12));
    let labels: Vec<ArcLabel> = arcs.iter().map(|a| a.label).collect();
    assert_eq!(labels, vec![ArcLabel::SouthEast, ArcLabel::SouthWest, ArcLabel::NorthWest, ArcLabel::NorthEast]);
    // SW meets SE on the south side, NW meets SW on the west side
    let (sw0, sw1) = ends(&arcs[1]);
    assert!(close(sw0.x, 1.0 - kappa, 1e-12) && close(sw0.y, 0.0, 1e-12));
    let (nw0, _) = ends(&arcs[2]);
    assert!(close(sw1.x, 0.0, 1e-12) && close(sw1.y, nw0.y, 1e-12));
    assert!(close(nw0.y, 1.0 - kappa, 1e-12));
    let (ne0, ne1) = ends(&arcs[3]);
    assert!(close(ne0.x, 1.0, 1e-12) && close(ne0.y, kappa, 1e-12));
    assert!(close(ne1.y, 1.0, 1e-12) && close(ne1.x, kappa, 1e-12));
    assert!(square_all_arcs(&Regime::new(0.3, 1.2), &[2.0]).is_err());
}

#[test]
fn saddle_eta_properties() {
    let ice = Regime::ice();
    assert_eq!(saddle_eta(0.0, 0.6, &ice), 0.0);
    let mut prev = 0.0;
    for k in 1..=1000 {
        let u = k as f64 * 0.1;
        let e = saddle_eta(u, 0.7, &ice);
        assert!(e > prev && e < 0.7);
        prev = e;
    }
    // θ = 0 at the ice point
    assert!(close(saddle_eta(2.0, 0.6, &ice), 1.2 / 2.6, 1e-15));
    // small θ: the quadratic root approaches ξu/(ξ + u) linearly in θ
    let (xi, u): (f64, f64) = (0.6, 1.3);
    let e0 = xi * u / (xi + u);
    for eps in [1e-3, 1e-4] {
        // Δ chosen so that θ = eps at t = 1: (2Δ − 1)/(2 − 2Δ) = eps
        let delta = (1.0 + 2.0 * eps) / (2.0 + 2.0 * eps);
        let reg = Regime::new(delta, 1.0);
        assert!(close(reg.theta(), eps, 1e-12));
        let quad = (-(xi + u) + ((xi + u).powi(2) + 4.0 * eps * xi * u).sqrt()) / (2.0 * eps);
        let e = saddle_eta(u, xi, &reg);
        assert!(close(e, quad, 1e-8));
        // first order: η ≈ η₀ − θ η₀²/(ξ + u)
        assert!(close(e, e0 - eps * e0 * e0 / (xi + u), 10.0 * eps * eps));
    }
    // η solves the η-stationarity equation
    for reg in [Regime::free_fermion(1.0), Regime::new(0.8, 1.5), Regime::new(-0.7, 0.6)] {
        let e = saddle_eta(u, xi, &reg);
        let res = (xi - e).ln() + (u - e).ln() - 2.0 * e.ln() + reg.omega().ln();
        assert!(res.abs() < 1e-12);
    }
}

fn gradient(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> (f64, f64) {
    let h = 1e-6;
    ((f(x + h, y) - f(x - h, y)) / (2.0 * h), (f(x, y + h) - f(x, y - h)) / (2.0 * h))
}

fn check_saddle(u: f64, regime: &Regime, r: &REvaluator) {
    let s = solve_saddle(u, regime, r).unwrap();
    let action = |xi: f64, eta: f64| saddle_action(xi, eta, u, regime, |x| boundary_term(r, x).unwrap()).unwrap();
    let (gx, gy) = gradient(action, s.xi_sp, s.eta_sp);
    assert!(gx.abs() < 1e-9 && gy.abs() < 1e-9, "u={u} {regime:?}: ({gx}, {gy})");
    assert!(close(s.xi_sp / u, xi_over_u(s.z, regime), 1e-9 * s.xi_sp / u));
}

#[test]
fn saddle_gradients_vanish() {
    for u in [0.2, 0.5, 1.0, 2.5, 5.0] {
        check_saddle(u, &Regime::ice(), &REvaluator::ClosedFormAsm);
        check_saddle(u, &Regime::free_fermion(1.0), &REvaluator::ClosedFormFreeFermion { t: 1.0 });
        check_saddle(u, &Regime::free_fermion(2.0), &REvaluator::ClosedFormFreeFermion { t: 2.0 });
    }
    // generic weights through finite-size boundary polynomials
    let p = ModelParams::from_integers(2, 3, 4).unwrap();
    let polys: Vec<_> = (4..=5)
        .map(|n| (n, boundary_correlator(&DomainSpec::square(n), &p, Side::South).unwrap().h_poly))
        .collect();
    let r = REvaluator::finite_n(&polys).unwrap();
    for u in [0.2, 1.0, 3.0] {
        check_saddle(u, &Regime::from(&p), &r);
    }
}

#[test]
fn saddle_endpoints_and_free_energy() {
    let ice = Regime::ice();
    let r = REvaluator::ClosedFormAsm;
    let s0 = solve_saddle(0.0, &ice, &r).unwrap();
    assert_eq!((s0.xi_sp, s0.eta_sp, s0.z), (0.5, 0.0, 1.0));
    let mut prev_xi = 0.5;
    let mut prev_f = f64::NEG_INFINITY;
    for k in 1..=40 {
        let u = k as f64 * 0.25;
        let s = solve_saddle(u, &ice, &r).unwrap();
        assert!(s.xi_sp > prev_xi && s.xi_sp < 1.0);
        assert_eq!(s.lambda, s.eta_sp);
        assert!(close(s.d_ratio, s.eta_sp / u, 1e-15));
        prev_xi = s.xi_sp;
        let f = free_energy(u, &ice, &r).unwrap();
        assert!(f.is_finite() && f > prev_f);
        prev_f = f;
    }
    assert!(matches!(solve_saddle(1.0, &Regime::new(3.0, 1.0), &r), Err(TangentError::NonProbabilisticWeights(_))));
    assert!(matches!(
        saddle_action(0.5, 0.6, 1.0, &ice, |_| 0.0),
        Err(TangentError::DomainError { .. })
    ));
}

#[test]
fn line_intercepts_match_the_saddle() {
    let regime = Regime::new(0.3, 1.4);
    for z in [1.2, 2.0, 9.0] {
        let l = line_family(z, &regime, &REvaluator::ClosedFormAsm).unwrap();
        assert!(close(1.0 / l.slope, xi_over_u(z, &regime), 1e-12));
    }
}

#[test]
fn local_criterium_residuals() {
    assert!(local_criterium_check(2.0, &Regime::ice()).unwrap() <= 1e-12);
    assert!(local_criterium_check(5.0, &Regime::free_fermion(1.0)).unwrap() <= 1e-12);
    assert!(local_criterium_check(1.0 + 1e-10, &Regime::ice()).unwrap() <= 1e-9);
    assert_eq!(local_criterium_check(f64::INFINITY, &Regime::new(0.2, 0.7)).unwrap(), 0.0);
}

fn third() -> AspectRatios {
    AspectRatios::normalized(1.0, 1.0, 1.0).unwrap()
}

#[test]
fn triangoloid_symmetric_case_is_the_square_arc() {
    let grid = default_grid();
    let tri = triangoloid_arc(&grid, &third(), 0).unwrap();
    let sq = square_arc(&Regime::ice(), &REvaluator::ClosedFormAsm, &grid).unwrap();
    assert_eq!(tri.len(), sq.len());
    // the square of side 2(a + b) in units of a + b + c
    let side = 4.0 / 3.0;
    for (a, b) in tri.points.iter().zip(&sq.points) {
        assert!(close(a.x, side * b.x, 1e-6) && close(a.y, side * b.y, 1e-6), "{a:?} {b:?}");
    }
}

#[test]
fn triangoloid_contacts_and_limits() {
    for (a, b, c) in [(1.0, 1.0, 1.0), (0.7, 0.45, 0.2), (0.52, 0.33, 0.15), (2.0, 1.0, 5.0)] {
        let q = AspectRatios::normalized(a, b, c).unwrap();
        let kappa = triangoloid_kappa(&q);
        let arc = triangoloid_arc(&[2.0], &q, 0).unwrap();
        assert!(close(arc.points[0].x, kappa, 1e-9) && arc.points[0].y.abs() < 1e-12);
        assert!(close(1.0 + q.beta - triangoloid_zeta(1.0, &q).unwrap(), kappa, 1e-9));
        let r = REvaluator::TriangoloidClosedForm(q);
        assert!(close(r.r(f64::INFINITY), 1.0 + q.beta, 1e-12));
        assert!(close(r.r(1e9), 1.0 + q.beta, 1e-6));
        assert!(close(r.r(1.0), kappa, 1e-12));
        // east contact sits on x = 1 + β
        let end = arc.points[arc.len() - 1];
        assert!(close(end.x, 1.0 + q.beta, 1e-12));
    }
}

#[test]
fn triangoloid_r_matches_finite_sizes() {
    use arctic_exact::triangoloid_h_poly;
    let q = AspectRatios::from_sizes(2, 1, 1).unwrap();
    let polys: Vec<_> = [(8, 4, 4), (10, 5, 5)]
        .iter()
        .map(|&(a, b, c)| (a + b + c, triangoloid_h_poly(a, b, c)))
        .collect();
    let r = REvaluator::finite_n(&polys).unwrap();
    let exact = REvaluator::TriangoloidClosedForm(q);
    for z in [1.0, 2.0, 6.0] {
        assert!(close(r.r(z), exact.r(z), 0.02), "z={z}: {} vs {}", r.r(z), exact.r(z));
    }
}

#[test]
fn triangoloid_arcs_join_at_contacts() {
    let q = AspectRatios::normalized(0.7, 0.45, 0.2).unwrap();
    let grid = log_grid(1.001, 1e4, 100);
    let arcs: Vec<ParametricArc> = (0..3).map(|k| triangoloid_arc(&grid, &q, k).unwrap()).collect();
    for k in 0..3 {
        let end = arcs[k].points[arcs[k].len() - 1];
        let next = arcs[(k + 1) % 3].points[0];
        assert!(close(end.x, next.x, 1e-9) && close(end.y, next.y, 1e-9), "arc {k}: {end:?} vs {next:?}");
    }
    assert!(triangoloid_arc(&grid, &q, 3).is_err());
    assert!(triangoloid_arc(&grid, &AspectRatios::new(1.0, 1.0, 1.0).unwrap(), 0).is_err());
}

#[test]
fn triangoloid_arc_is_convex_and_inside() {
    let q = AspectRatios::normalized(0.7, 0.45, 0.2).unwrap();
    let arc = triangoloid_arc(&default_grid(), &q, 0).unwrap();
    let p = &arc.points;
    for w in p.windows(3) {
        let cross = (w[1].x - w[0].x) * (w[2].y - w[1].y) - (w[1].y - w[0].y) * (w[2].x - w[1].x);
        assert!(cross >= -1e-15, "{cross}");
    }
    for pt in p {
        assert!(pt.x >= -1e-12 && pt.x <= 1.0 + q.beta + 1e-12 && pt.y >= -1e-12 && pt.y <= 1.0 + q.alpha + 1e-12);
    }
}

#[test]
fn triangoloid_degenerate_gamma() {
    let beta = 0.4;
    let q = AspectRatios::new(1.0 - beta, beta, 0.0).unwrap();
    let below = triangoloid_zeta(1.0 / beta - 1e-9, &q).unwrap();
    let above = triangoloid_zeta(1.0 / beta + 1e-9, &q).unwrap();
    // the last summand is ±β/2 on either side of z = 1/β
    assert!(close(below - above, beta, 1e-6), "{below} {above}");
    let z = 1.5;
    let sign_form = 1.0 + beta / 2.0 - (2.0 * z - 1.0) / (2.0 * (z * z - z + 1.0f64).sqrt()) + beta / 2.0;
    assert!(close(triangoloid_zeta(z, &q).unwrap(), sign_form, 1e-12));
}

#[test]
fn internal_guess_gap() {
    let grid = default_grid();
    let beta = 0.3;
    let g0 = triangoloid_internal_guess(&grid, &AspectRatios::new(1.0 - beta, beta, 0.0).unwrap()).unwrap();
    assert!(g0.experimental);
    assert!(g0.gap.abs() < 1e-12 && g0.predicted_gap == 0.0);
    let q = AspectRatios::normalized(0.49, 0.49, 0.02).unwrap();
    let g = triangoloid_internal_guess(&grid, &q).unwrap();
    assert!(((g.gap - g.predicted_gap) / g.predicted_gap).abs() < 0.05, "{} {}", g.gap, g.predicted_gap);
    assert_eq!(g.arc.label, ArcLabel::TriangoloidInternalGuess);
}

#[test]
fn hexagon_family_endpoints() {
    let q = AspectRatios::new(0.7, 1.3, 0.5).unwrap();
    let sides = hexagon_sides(&q);
    let same = |l: GeneralLine, m: GeneralLine| {
        let (l, m) = (l.normalized(), m.normalized());
        let s = if l.a * m.a + l.b * m.b < 0.0 { -1.0 } else { 1.0 };
        close(l.a, s * m.a, 1e-12) && close(l.b, s * m.b, 1e-12) && close(l.c, s * m.c, 1e-12)
    };
    assert!(same(hexagon_family(0.0, &q).unwrap(), sides[1]));
    assert!(same(hexagon_family(q.alpha, &q).unwrap(), sides[0]));
    assert!(hexagon_family(q.alpha + 0.1, &q).is_err());
    let unit = AspectRatios::new(1.0, 1.0, 1.0).unwrap();
    let l = hexagon_family(0.5, &unit).unwrap();
    assert!(close(l.signed_distance(0.0, 0.0).abs(), 3f64.sqrt() / 2.0, 1e-9));
}

#[test]
fn hexagon_residual_signs() {
    let unit = AspectRatios::new(1.0, 1.0, 1.0).unwrap();
    assert!(close(hexagon_ellipse_residual(0.0, 0.0, &unit), 9.0, 1e-12));
    for q in [unit, AspectRatios::new(0.7, 1.3, 0.5).unwrap(), AspectRatios::new(2.0, 0.5, 1.0).unwrap()] {
        let corners = hexagon_corners(&q);
        assert_eq!(corners.len(), 6);
        for (x, y) in corners {
            assert!(hexagon_ellipse_residual(x, y, &q) < 0.0);
        }
        assert!(hexagon_ellipse_residual(0.0, 0.0, &q) > 0.0);
    }
}

#[test]
fn csv_layout() {
    let arc = square_arc(&Regime::ice(), &REvaluator::ClosedFormAsm, &[2.0]).unwrap();
    let mut buf = Vec::new();
    arc.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,x,y");
    assert_eq!(lines[1], "1.0000000000000000e0,5.0000000000000000e-1,0.0000000000000000e0");
    assert!(lines[3].starts_with("inf,"));
    let l = line_family(2.0, &Regime::ice(), &REvaluator::ClosedFormAsm).unwrap();
    let mut buf = Vec::new();
    write_lines_csv(&[l], &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("z,m,r\n2.0000000000000000e0,1.0000000000000000e0,"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slope_is_increasing(delta in -0.95f64..0.95, t in 0.2f64..5.0) {
        let reg = Regime::new(delta, t);
        prop_assume!(reg.check().is_ok());
        let grid = log_grid(1.0 + 1e-6, 1e4, 100);
        let m: Vec<f64> = grid.iter().map(|&z| slope_m(z, &reg).unwrap()).collect();
        prop_assert!(m.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn saddle_identity(z in 1.01f64..100.0, delta in -0.95f64..0.95, t in 0.2f64..5.0, xi in 0.05f64..0.95) {
        let reg = Regime::new(delta, t);
        prop_assume!(reg.check().is_ok());
        // pick u so that η_sp(u, ξ) = ξ(z − 1)/z, then compare ξ/u with the closed form
        let eta = xi * (z - 1.0) / z;
        let u = eta + eta * eta / (reg.omega() * (xi - eta));
        let e = saddle_eta(u, xi, &reg);
        prop_assert!((xi / (xi - e) - z).abs() <= 1e-9 * z);
        prop_assert!((xi / u - xi_over_u(z, &reg)).abs() <= 1e-12 * (1.0 + xi / u));
    }

    #[test]
    fn local_criterium_vanishes(z in 1.0001f64..1e3, delta in -0.95f64..0.95, t in 0.2f64..5.0) {
        let reg = Regime::new(delta, t);
        prop_assume!(reg.check().is_ok());
        let res = local_criterium_check(z, &reg).unwrap();
        prop_assert!(res <= 1e-12 * (1.0 + slope_m(z, &reg).unwrap()));
    }

    #[test]
    fn hexagon_envelope_on_ellipse(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..3.0) {
        let q = AspectRatios::new(a, b, c).unwrap();
        let arc = hexagon_arc(&q, 101).unwrap();
        for p in &arc.points {
            prop_assert!(hexagon_ellipse_residual(p.x, p.y, &q).abs() <= 1e-8);
        }
    }

    #[test]
    fn evaluators_are_monotone(t in 0.2f64..5.0, a in 0.05f64..1.0, b in 0.05f64..1.0, c in 0.05f64..1.0) {
        let q = AspectRatios::normalized(a, b, c).unwrap();
        let grid = log_grid(1.0 + 1e-6, 1e6, 200);
        for r in [REvaluator::ClosedFormAsm, REvaluator::ClosedFormFreeFermion { t }, REvaluator::TriangoloidClosedForm(q)] {
            let v: Vec<f64> = grid.iter().map(|&z| r.r(z)).collect();
            prop_assert!(v.windows(2).all(|w| w[1] >= w[0] - 1e-15));
            prop_assert!(v[v.len() - 1] <= r.limit_at_infinity() + 1e-12);
        }
    }
}
