use std::collections::HashMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use arctic_enum::all_configurations;
use arctic_exact::{asm_h, triangoloid_h};
use arctic_model::{DomainSpec, ModelParams, TriangoloidLayout};
use arctic_sampler::*;

fn ice() -> ModelParams {
    ModelParams::ice_point()
}

fn chi_square_uniform(domain: &DomainSpec, samples: usize, seed: u64) -> (f64, f64) {
    let lat = domain.lattice().unwrap();
    let all = all_configurations(&lat, 1000).unwrap();
    let index: HashMap<Vec<bool>, usize> = all.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    let c = Cftp::new(domain, &ice()).unwrap();
    let mut counts = vec![0u64; all.len()];
    for s in c.samples(samples, seed).unwrap() {
        counts[index[&s]] += 1;
    }
    let e = samples as f64 / all.len() as f64;
    let stat: f64 = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let crit = ChiSquared::new((all.len() - 1) as f64).unwrap().inverse_cdf(0.99);
    (stat, crit)
}

#[test]
fn single_configuration_domain() {
    let s = cftp_sample(&DomainSpec::square(1), &ice(), 3).unwrap();
    let lat = DomainSpec::square(1).lattice().unwrap();
    assert_eq!(s.thick, all_configurations(&lat, 10).unwrap()[0]);
    let c = Cftp::new(&DomainSpec::square(1), &ice()).unwrap();
    assert_eq!(c.samples(3, 0).unwrap().len(), 3);
}

#[test]
fn samples_are_valid_and_reproducible() {
    for d in [DomainSpec::square(6), DomainSpec::lambda(4, 2), DomainSpec::refined_square(6, 4).unwrap(), DomainSpec::digitally_convex("ENENNWNWWSWSSESE")] {
        let a = cftp_sample(&d, &ice(), 11).unwrap();
        let b = cftp_sample(&d, &ice(), 11).unwrap();
        assert_eq!(a, b);
        a.validate(&d.lattice().unwrap()).unwrap();
    }
    let c = Cftp::new(&DomainSpec::square(5), &ice()).unwrap();
    let x = c.samples(70, 5).unwrap();
    assert_eq!(x, c.samples(70, 5).unwrap());
    assert_ne!(x, c.samples(70, 6).unwrap());
    // a lane's value does not depend on which other lanes are requested
    assert_eq!(c.block(5, 1, 6).unwrap(), x[64..70].to_vec());
    assert_eq!(cftp_sample(&DomainSpec::square(5), &ice(), 5).unwrap().thick, x[0]);
}

#[test]
fn uniform_on_small_squares() {
    for (n, seed) in [(3, 1u64), (4, 2)] {
        let (stat, crit) = chi_square_uniform(&DomainSpec::square(n), 100_000, seed);
        assert!(stat < crit, "n={n}: χ² = {stat} ≥ {crit}");
    }
}

#[test]
fn extremes_bound_every_configuration() {
    for d in [DomainSpec::square(4), DomainSpec::lambda(3, 2), DomainSpec::digitally_convex("ENENNWNWWSWSSESE")] {
        let (lat, grid) = FaceGrid::for_domain(&d).unwrap();
        let hi = grid.extreme(&lat, true).unwrap();
        let lo = grid.extreme(&lat, false).unwrap();
        lat.validate(&grid.to_config(&lat, &hi)).unwrap();
        lat.validate(&grid.to_config(&lat, &lo)).unwrap();
        let all = all_configurations(&lat, 5000).unwrap();
        for c in &all {
            let h = grid.from_config(&lat, c).unwrap();
            assert!(lo.le(&h) && h.le(&hi));
            assert_eq!(&grid.to_config(&lat, &h), c);
        }
    }
}

#[test]
fn coupled_update_is_monotone() {
    let domains = [
        DomainSpec::square(3),
        DomainSpec::square(4),
        DomainSpec::rectangle(3, 3).with_override((1, 2), false).with_override((2, 1), true),
        DomainSpec::refined_square(4, 2).unwrap(),
        DomainSpec::lambda(3, 1),
        DomainSpec::digitally_convex("ENENNWNWWSWSSESE"),
    ];
    for d in &domains {
        let r = monotonicity_check(d).unwrap();
        assert!(r.passed(), "{d:?}: {r:?}");
        assert!(r.ordered_pairs > r.configurations);
    }
    let r = monotonicity_check(&DomainSpec::square(3)).unwrap();
    assert_eq!(r.configurations, 7);
    assert_eq!(r.updates, r.ordered_pairs * 4 * 2);
}

#[test]
fn refinement_histogram_matches_asm_ratios() {
    let n = 10;
    let samples = 10_000;
    let stats = collect_stats(&DomainSpec::square(n), &ice(), samples, 2024).unwrap();
    assert_eq!(stats.histogram.iter().sum::<u64>(), samples as u64);
    assert_eq!(stats.unrefined, 0);
    for (r, p) in asm_h(n).iter().enumerate() {
        let p = p.to_f64().unwrap();
        let mean = samples as f64 * p;
        let sd = (samples as f64 * p * (1.0 - p)).sqrt();
        let obs = stats.histogram[r] as f64;
        assert!((obs - mean).abs() <= 4.0 * sd.max(1e-9), "r={}: {obs} vs {mean} ± {sd}", r + 1);
    }
}

#[test]
fn empty_and_rejected_requests() {
    let s = collect_stats(&DomainSpec::square(5), &ice(), 0, 1).unwrap();
    assert_eq!(s.samples, 0);
    assert!(s.histogram.iter().all(|&c| c == 0) && s.histogram.len() == 5);
    assert_eq!(frozen_boundary(&s, 0.05).unwrap_err(), SamplerError::EmptyStats);
    let p = ModelParams::from_integers(1, 2, 2).unwrap();
    assert_eq!(cftp_sample(&DomainSpec::square(3), &p, 0).unwrap_err(), SamplerError::NonIcePoint);
    assert!(matches!(cftp_sample(&DomainSpec::triangoloid(1, 1, 1), &ice(), 0), Err(SamplerError::NotMonotone(_))));
    let one = collect_stats(&DomainSpec::square(1), &ice(), 4, 1).unwrap();
    assert_eq!(frozen_boundary(&one, 0.05).unwrap_err(), SamplerError::DegenerateField);
}

#[test]
fn triangoloid_structure_report() {
    let lat = DomainSpec::triangoloid(1, 1, 1).lattice().unwrap();
    let r = glued_check(&lat).unwrap();
    assert_eq!(r.configurations, Some(14));
    assert_eq!(r.odd_faces, 1);
    assert_eq!(r.defect_edges, 2);
    assert!(!r.has_height_function());
    assert_eq!(r.flips_connected, Some(true));
    assert!(r.summary().contains("14 configurations"));
}

#[test]
fn triangoloid_exact_histogram() {
    let d = DomainSpec::triangoloid(2, 3, 4);
    let samples = 4000;
    let stats = collect_stats(&d, &ice(), samples, 9).unwrap();
    assert_eq!(stats.method, SamplingMethod::Exact);
    assert_eq!(stats.histogram.iter().sum::<u64>(), samples as u64);
    let exact = triangoloid_h(2, 3, 4);
    assert_eq!(stats.histogram.len(), exact.len());
    for (r, p) in exact.iter().enumerate() {
        let p = p.to_f64().unwrap();
        let mean = samples as f64 * p;
        let sd = (samples as f64 * p * (1.0 - p)).sqrt();
        assert!((stats.histogram[r] as f64 - mean).abs() <= 4.0 * sd.max(1e-9), "r={}", r + 1);
    }
}

#[test]
fn triangoloid_seed_configurations() {
    for (a, b, c) in [(1, 1, 1), (2, 3, 4), (0, 1, 2), (3, 0, 1), (2, 2, 0), (20, 15, 8)] {
        let layout = TriangoloidLayout::new(a, b, c).unwrap();
        let lat = DomainSpec::triangoloid(a, b, c).lattice().unwrap();
        let cfg = triangoloid_seed_config(&layout, &lat).unwrap();
        lat.validate(&cfg).unwrap();
    }
}

#[test]
fn flip_chain_stays_valid_and_reaches_all_states() {
    use rand::SeedableRng;
    let d = DomainSpec::triangoloid(1, 1, 1);
    let lat = d.lattice().unwrap();
    let start = triangoloid_seed_config(&TriangoloidLayout::new(1, 1, 1).unwrap(), &lat).unwrap();
    let all = all_configurations(&lat, 100).unwrap();
    let index: HashMap<Vec<bool>, usize> = all.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let mut counts = vec![0u64; all.len()];
    let mut cur = start;
    for _ in 0..20_000 {
        cur = flip_chain(&lat, cur, 2, &mut rng);
        lat.validate(&cur).unwrap();
        counts[index[&cur]] += 1;
    }
    // stationary law is uniform: every state visited at a comparable rate
    let e = 20_000.0 / all.len() as f64;
    assert!(counts.iter().all(|&c| (c as f64 - e).abs() < 0.2 * e), "{counts:?}");
}

#[test]
fn frozen_regions_and_boundary_extraction() {
    let d = DomainSpec::lambda(12, 4);
    let stats = collect_stats(&d, &ice(), 64, 3).unwrap();
    let lines = frozen_boundary(&stats, 0.05).unwrap();
    assert!(!lines.is_empty());
    let (n, rows) = (stats.scale(), 16.0);
    for p in lines.iter().flatten() {
        assert!(p.0 > -1.0 / n && p.0 < 1.0 + 1.0 / n && p.1 > -1.0 / n && p.1 < (rows + 1.0) / n, "{p:?}");
    }
    let s = collect_stats(&DomainSpec::square(40), &ice(), 64, 1).unwrap();
    let lines = frozen_boundary(&s, 0.05).unwrap();
    // the contour passes near the centre of each side, where the liquid region touches
    for probe in [(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)] {
        assert!(distance_to_polylines(probe, &lines) < 0.1, "{probe:?}");
    }
    assert!(distance_to_polylines((0.5, 0.5), &lines) > 0.2);
}

#[test]
fn entry_path_profile_on_refined_domain() {
    let d = DomainSpec::refined_square(12, 9).unwrap();
    let stats = collect_stats(&d, &ice(), 64, 8).unwrap();
    let prof = stats.entry_profile();
    assert!(!prof.is_empty());
    // the extra path starts at column 9 and only moves east
    assert!(prof[0].0 >= 8.5 / 12.0 - 1e-12);
    assert!(prof.windows(2).all(|w| w[1].0 >= w[0].0 - 1e-12 && w[1].1 > w[0].1));
    assert_eq!(stats.entry.iter().map(|e| e.1).max(), Some(64));
}

#[test]
fn geometry_helpers() {
    let line = vec![vec![(0.0, 0.0), (1.0, 0.0)]];
    assert!((distance_to_polylines((0.5, 0.3), &line) - 0.3).abs() < 1e-15);
    assert!((distance_to_polylines((2.0, 0.0), &line) - 1.0).abs() < 1e-15);
    let arc = vec![(0.0, 0.01), (0.5, 0.01), (1.0, 0.5)];
    let f = arc_coverage(&arc, &line, 0.05);
    let l1 = 0.5;
    let l2 = (0.25f64 + 0.49 * 0.49).sqrt();
    // the second piece is within the band while y ≤ 0.05
    let expected = (l1 + l2 * 0.04 / 0.49) / (l1 + l2);
    assert!((f - expected).abs() < 0.01, "{f} vs {expected}");
    let pts: Vec<(f64, f64)> = (0..10).map(|k| (0.2 + 0.5 * k as f64, k as f64)).collect();
    assert!((fit_slope(&pts, 100.0).unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(fit_slope(&pts, 0.5), None);
}

#[test]
fn uniform_below_is_in_range() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let bound = num_bigint::BigInt::from(3u64) << 100;
    for _ in 0..100 {
        let x = uniform_below(&mut rng, &bound);
        assert!(x >= num_bigint::BigInt::from(0) && x < bound);
    }
    let small = num_bigint::BigInt::from(7);
    let mut seen = [false; 7];
    for _ in 0..200 {
        seen[uniform_below(&mut rng, &small).to_usize().unwrap()] = true;
    }
    assert!(seen.iter().all(|&s| s));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn samples_lie_between_extremes(n in 2usize..9, seed in any::<u64>()) {
        let d = DomainSpec::square(n);
        let s = cftp_sample(&d, &ice(), seed).unwrap();
        let (lat, grid) = FaceGrid::for_domain(&d).unwrap();
        lat.validate(&s.thick).unwrap();
        let h = grid.from_config(&lat, &s.thick).unwrap();
        prop_assert!(grid.extreme(&lat, false).unwrap().le(&h));
        prop_assert!(h.le(&grid.extreme(&lat, true).unwrap()));
        prop_assert_eq!(s.type_counts(&lat).unwrap()[4] + n, s.type_counts(&lat).unwrap()[5]);
    }
}
