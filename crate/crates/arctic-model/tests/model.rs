use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use arctic_model::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// All valid configurations by brute force over internal edges.
fn brute(lat: &Lattice) -> Vec<Vec<bool>> {
    let internal: Vec<usize> = (0..lat.edges().len()).filter(|&k| !lat.edges()[k].is_external()).collect();
    let mut base = vec![false; lat.edges().len()];
    for (k, e) in lat.edges().iter().enumerate() {
        if let Some(b) = e.boundary {
            base[k] = if e.from.is_none() { b } else { b ^ lat.is_defect(k) };
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << internal.len() {
        let mut bits = base.clone();
        for (i, &k) in internal.iter().enumerate() {
            bits[k] = mask >> i & 1 == 1;
        }
        if lat.validate(&bits).is_ok() {
            out.push(bits);
        }
    }
    out
}

#[test]
fn exactly_six_local_patterns() {
    let mut seen = Vec::new();
    for m in 0..16u8 {
        let p = [m & 1 != 0, m & 2 != 0, m & 4 != 0, m & 8 != 0];
        match VertexType::classify(p[0], p[1], p[2], p[3]) {
            Ok(t) => {
                assert_eq!(t.pattern(), p);
                seen.push(t);
            }
            Err(ModelError::InvalidLocalPattern { pattern }) => assert_eq!(pattern, p),
            Err(e) => panic!("{e}"),
        }
    }
    seen.sort();
    assert_eq!(seen, VertexType::ALL.to_vec());
}

#[test]
fn named_vertex_patterns() {
    assert_eq!(VertexType::classify(false, false, false, false).unwrap(), VertexType::W1);
    assert_eq!(VertexType::classify(true, true, true, true).unwrap(), VertexType::W2);
    // thick south and west with thin north and east breaks conservation
    assert!(VertexType::classify(false, false, true, true).is_err());
    assert_eq!(VertexType::classify(false, true, true, false).unwrap(), VertexType::W5);
    assert_eq!(VertexType::classify(true, false, false, true).unwrap(), VertexType::W6);
    for t in VertexType::ALL {
        assert_eq!(t.flipped().flipped(), t);
        assert_eq!(t.flipped().class(), t.class());
    }
}

#[test]
fn params_derived_quantities() {
    let p = ModelParams::from_integers(1, 2, 3).unwrap();
    // Δ = (1 + 4 − 9)/4 = −1, t = 2, ω = 9/4, θ = (2Δt − 1)/(t² − 2Δt + 1) = −5/9
    assert_eq!(p.delta_exact(), q(-1));
    assert_eq!(p.t_exact(), q(2));
    assert_eq!(p.omega_exact(), BigRational::new(9.into(), 4.into()));
    assert_eq!(p.theta_exact(), BigRational::new((-5).into(), 9.into()));
    assert_eq!(p.gap_exact(), q(9));
    assert!(p.is_probabilistic());
    let ice = ModelParams::ice_point();
    assert_eq!(ice.delta, 0.5);
    assert_eq!(ice.t, 1.0);
    assert!(ModelParams::from_integers(1, 0, 1).is_err());
}

#[test]
fn frozen_rectangle_has_unit_weight() {
    let mut d = DomainSpec::rectangle(3, 2);
    for s in 1..=2 {
        d = d.with_override((1, 2 * s), false);
    }
    for r in 1..=3 {
        d = d.with_override((2 * r, 5), false);
    }
    let lat = d.lattice().unwrap();
    let cfg = Configuration::new(d, vec![false; lat.edges().len()]);
    let w = config_weight(&cfg, &lat, &ModelParams::ice_point()).unwrap();
    assert_eq!(w, q(1));
    assert_eq!(cfg.type_counts(&lat).unwrap(), [6, 0, 0, 0, 0, 0]);
    let w = config_weight(&cfg, &lat, &ModelParams::from_integers(2, 3, 5).unwrap()).unwrap();
    assert_eq!(w, q(64));
}

#[test]
fn single_path_in_unit_square() {
    let d = DomainSpec::square(1);
    let lat = d.lattice().unwrap();
    let all = brute(&lat);
    assert_eq!(all.len(), 1);
    let cfg = Configuration::new(d, all[0].clone());
    assert_eq!(classify_vertex(&cfg, &lat, (1, 1)).unwrap(), VertexType::W6);
    let p = ModelParams::from_integers(1, 2, 3).unwrap();
    assert_eq!(config_weight(&cfg, &lat, &p).unwrap(), q(3));
}

#[test]
fn two_by_two_dwbc() {
    let d = DomainSpec::square(2);
    let lat = d.lattice().unwrap();
    let all = brute(&lat);
    assert_eq!(all.len(), 2);
    let ice = ModelParams::ice_point();
    let total: BigRational =
        all.iter().map(|b| config_weight(&Configuration::new(d.clone(), b.clone()), &lat, &ice).unwrap()).sum();
    assert_eq!(total, q(2));
    // the two configurations weigh a²c² and b²c²
    let p = ModelParams::from_integers(2, 3, 5).unwrap();
    let total: BigRational =
        all.iter().map(|b| config_weight(&Configuration::new(d.clone(), b.clone()), &lat, &p).unwrap()).sum();
    assert_eq!(total, q(4 * 25 + 9 * 25));
}

#[test]
fn edge_order_is_row_major_horizontal_first() {
    let lat = DomainSpec::square(2).lattice().unwrap();
    let keys: Vec<EdgeKey> = lat.edges().iter().map(|e| e.key).collect();
    assert_eq!(
        keys,
        vec![(2, 1), (4, 1), (1, 2), (3, 2), (5, 2), (2, 3), (4, 3), (1, 4), (3, 4), (5, 4), (2, 5), (4, 5)]
    );
}

#[test]
fn configuration_json_roundtrip() {
    let d = DomainSpec::square(3).with_override((2, 1), false);
    let lat = d.lattice().unwrap();
    let bits = brute(&lat).remove(0);
    let cfg = Configuration::new(d, bits);
    let s = cfg.to_json().unwrap();
    assert_eq!(Configuration::from_json(&s).unwrap(), cfg);
    let spec: DomainSpec = serde_json::from_str(&serde_json::to_string(&cfg.domain).unwrap()).unwrap();
    assert_eq!(spec, cfg.domain);
}

#[test]
fn boundary_override_must_hit_external_edge() {
    let d = DomainSpec::square(2).with_override((3, 2), true);
    assert_eq!(d.lattice().unwrap_err(), ModelError::NotExternal((3, 2)));
    let d = DomainSpec::square(2).with_override((2, 1), true);
    assert_eq!(d.lattice().unwrap_err(), ModelError::NoValidConfiguration);
}

#[test]
fn gauge_on_empty_pattern() {
    let lat = DomainSpec::square(3).lattice().unwrap();
    let empty = lat.defects().clone();
    let g = lat.apply_gauge(&empty, (2, 2)).unwrap();
    assert_eq!(g.count(), 4);
    assert_eq!(lat.face_parities(&g), lat.face_parities(&empty));
    assert!(lat.face_parities(&g).iter().all(|&p| p == 0));
    assert_eq!(lat.apply_gauge(&g, (2, 2)).unwrap(), empty);
    assert_eq!(lat.apply_gauge(&empty, (0, 2)).unwrap_err(), ModelError::DegreeMismatch((0, 2)));
    assert_eq!(lat.gauge_between(&empty, &g).unwrap(), vec![(2, 2)]);
}

#[test]
fn triangoloid_structure() {
    for (a, b, c) in [(1, 1, 0), (1, 1, 1), (2, 1, 3), (0, 2, 1)] {
        let t = TriangoloidLayout::new(a, b, c).unwrap();
        let lat = DomainSpec::triangoloid(a, b, c).lattice().unwrap();
        let n_v = lat.vertices().len();
        assert_eq!(n_v, (a + b) * (a + c) + (b + c) * (a + c) + (b + c) * (a + b));
        // Euler: internal faces = internal edges − vertices + 1
        assert_eq!(lat.faces().len(), lat.internal_edge_count() - n_v + 1);
        let par = lat.face_parities(lat.defects());
        let triangles: Vec<usize> = lat.faces().iter().enumerate().filter(|(_, f)| f.len() == 3).map(|(i, _)| i).collect();
        assert_eq!(triangles.len(), 1);
        // the defect line joins the triangle to the outer face
        for (i, &p) in par.iter().enumerate() {
            let expect = i == triangles[0] || i == par.len() - 1;
            assert_eq!(p == 1, expect, "face {i} of {a},{b},{c}");
        }
        assert_eq!(lat.defects().count(), t.seam_keys().len());
    }
    assert!(TriangoloidLayout::new(1, 0, 0).is_err());
}

#[test]
fn rerouted_defect_line_keeps_parities() {
    let lat = DomainSpec::triangoloid(1, 1, 1).lattice().unwrap();
    let canon = lat.defects().clone();
    let moved = lat.apply_gauge(&canon, (1, 2)).unwrap();
    let moved = lat.apply_gauge(&moved, (2, 2)).unwrap();
    assert_ne!(moved, canon);
    assert_eq!(lat.face_parities(&moved), lat.face_parities(&canon));
    let mut s = lat.gauge_between(&canon, &moved).unwrap();
    s.sort();
    assert_eq!(s, vec![(1, 2), (2, 2)]);
    let mut broken = canon.clone();
    broken.defects[lat.edge_at((3, 2)).unwrap()] = true;
    assert_eq!(lat.gauge_between(&canon, &broken).unwrap_err(), ModelError::ParityMismatch);
}

#[test]
fn digitally_convex_words() {
    // 2×2 square traversed counterclockwise
    let cells = convex_cells("EENNWWSS").unwrap();
    assert_eq!(cells.into_iter().collect::<Vec<_>>(), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    assert!(convex_cells("EENNWS").is_err());
    // U shape with a notch on top
    assert!(convex_cells("EEENNWSWNWSS").is_err());
    // domain-wall type requires as many N as E steps
    assert!(convex_cells("EEENWWWS").is_err());
    assert!(convex_cells("EENNWWSX").is_err());
    let lat = DomainSpec::digitally_convex("EENNWWSS").lattice().unwrap();
    assert_eq!(lat.boundary_balance(), 0);
}

#[test]
fn digitally_convex_staircase_octagon() {
    let word = "ENENNWNWWSWSSESE";
    let cells = convex_cells(word).unwrap();
    assert_eq!(cells.len(), 12);
    assert!(cells.contains(&(-1, 2)) && cells.contains(&(2, 3)));
    let lat = DomainSpec::digitally_convex(word).lattice().unwrap();
    assert_eq!(lat.faces().len(), lat.internal_edge_count() - lat.vertices().len() + 1);
    assert_eq!(lat.boundary_balance(), 0);
    assert!(!brute(&lat).is_empty());
}

proptest! {
    #[test]
    fn delta_matches_weights(a in 1i64..20, b in 1i64..20, c in 1i64..20) {
        let p = ModelParams::from_integers(a, b, c).unwrap();
        let d = (a * a + b * b - c * c) as f64 / (2 * a * b) as f64;
        prop_assert!((p.delta - d).abs() < 1e-12);
        prop_assert!((p.t - b as f64 / a as f64).abs() < 1e-12);
        prop_assert!(p.is_probabilistic());
        prop_assert!(p.delta < (p.t + 1.0 / p.t) / 2.0);
        prop_assert!(p.theta > -1.0);
    }

    #[test]
    fn gauge_moves_preserve_parities(moves in proptest::collection::vec(0usize..12, 0..12)) {
        let lat = DomainSpec::triangoloid(1, 1, 1).lattice().unwrap();
        let canon = lat.defects().clone();
        let mut p = canon.clone();
        for &m in &moves {
            p = lat.apply_gauge(&p, lat.vertices()[m].pos).unwrap();
        }
        prop_assert_eq!(lat.face_parities(&p), lat.face_parities(&canon));
        prop_assert!(lat.gauge_between(&canon, &p).is_ok());
    }

    #[test]
    fn rectangle_faces_follow_euler(n in 1usize..7, m in 1usize..7) {
        let lat = DomainSpec::rectangle(n, m).lattice();
        if n == m {
            let lat = lat.unwrap();
            prop_assert_eq!(lat.faces().len(), (n - 1) * (m - 1));
        } else {
            prop_assert_eq!(lat.unwrap_err(), ModelError::NoValidConfiguration);
        }
    }
}
