#![allow(clippy::needless_range_loop)]

mod common;

use chainamp::*;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn random_complex_boundary1_columns() {
    let mut r = rng(1);
    let c = random_complex(&mut r, 20, 0.3);
    let d1 = boundary1(&c);
    for j in 0..d1.cols() {
        let col = d1.column(j);
        assert_eq!(col.iter().sum::<i32>(), 0);
        assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
        assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
    }
    assert!(verify_chain(&c).passed());
}

#[test]
fn fifty_random_ladders_pass_chain_check() {
    let mut r = rng(2);
    for _ in 0..50 {
        let c = build_ladder(r.gen_range(2..40)).unwrap();
        assert!(verify_chain(&c).passed());
    }
}

#[test]
fn kernel_equals_brute_force_laplacian() {
    let c = build_ladder(5).unwrap();
    let k = action_kernel(&c, 2.0);
    let lap = brute_force_laplacian(&c);
    for i in 0..c.vertex_count() {
        for j in 0..c.vertex_count() {
            assert_eq!(k.matrix[(i, j)], 2.0 * lap[i][j]);
        }
    }
}

#[test]
fn reconstruction_and_trace_on_random_complexes() {
    let mut r = rng(3);
    for _ in 0..10 {
        let c = random_complex(&mut r, 12, 0.35);
        let k = action_kernel(&c, 1.0);
        let s = eigendecompose(&k, DEFAULT_ZERO_TOLERANCE).unwrap();
        let scale = s.largest().max(1.0);
        let sum: f64 = s.eigenvalues().iter().sum();
        assert!((sum - k.matrix.trace()).abs() <= 1e-9 * k.matrix.trace().max(1.0));
        let rec = s.reconstruct();
        for (a, b) in rec.as_slice().iter().zip(k.matrix.as_slice()) {
            assert!((a - b).abs() < 1e-9 * scale);
        }
        for j in 0..s.dim() {
            let u = s.eigenvector(j);
            let au = k.matrix.apply(u).unwrap();
            for i in 0..s.dim() {
                assert!((au[i] - s.eigenvalues()[j] * u[i]).abs() < 1e-9 * scale);
            }
            for l in 0..s.dim() {
                let dot: f64 = u.iter().zip(s.eigenvector(l)).map(|(a, b)| a * b).sum();
                let target = if j == l { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-10);
            }
        }
        assert!(s.eigenvalues().iter().all(|&a| a >= -1e-10 * scale));
    }
}

#[test]
fn symmetry_modulus_ignores_source() {
    let c = build_ladder(6).unwrap();
    let s = eigendecompose(&action_kernel(&c, 1.0), DEFAULT_ZERO_TOLERANCE).unwrap();
    let mut r = rng(4);
    let zero = project_values(&s, &vec![0.0; c.vertex_count()]).unwrap();
    let reference = symmetry_amplitude(&s, &zero).unwrap();
    for _ in 0..20 {
        let e: Vec<f64> = (0..c.edge_count()).map(|_| r.gen_range(-2.0..2.0)).collect();
        let j = source_vector(&c, &e, 1.0).unwrap();
        let z = symmetry_amplitude(&s, &project_sources(&s, &j).unwrap()).unwrap();
        assert!((z.log_modulus - reference.log_modulus).abs() < 1e-12);
    }
}

#[test]
fn mode_weights_match_pseudoinverse_quadratic_form() {
    // J·A⁺·J through an independent regularized solve: (A + P)⁻¹ − P with P
    // the projector on the uniform vector.
    let c = build_ladder(4).unwrap();
    let n = c.vertex_count();
    let k = action_kernel(&c, 1.0);
    let s = eigendecompose(&k, DEFAULT_ZERO_TOLERANCE).unwrap();
    let mut r = rng(5);
    let e: Vec<f64> = (0..c.edge_count()).map(|_| r.gen_range(-1.0..1.0)).collect();
    let j = source_vector(&c, &e, 1.0).unwrap();
    let weights: f64 = mode_contributions(&s, &project_sources(&s, &j).unwrap())
        .unwrap()
        .iter()
        .map(|m| m.weight)
        .sum();

    let p = 1.0 / n as f64;
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|l| k.matrix[(i, l)] + p).collect();
            row.push(j.values[i]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs())).unwrap();
        aug.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = aug[row][col] / aug[col][col];
                for l in col..=n {
                    aug[row][l] -= f * aug[col][l];
                }
            }
        }
    }
    let x: Vec<f64> = (0..n).map(|i| aug[i][n] / aug[i][i]).collect();
    let quad: f64 = x.iter().zip(&j.values).map(|(a, b)| a * b).sum();
    assert!((weights - quad).abs() < 1e-10 * quad.abs().max(1.0));
}

#[test]
fn f32_pipeline_runs() {
    let c = build_ladder(3).unwrap();
    let k = action_kernel(&c, 1.0_f32);
    let s = eigendecompose(&k, f32::default_relative_tolerance()).unwrap();
    assert_eq!(s.zero_mode_count(), 1);
    let j = source_vector(&c, &[1.0_f32; 7], 1.0).unwrap();
    let z = symmetry_amplitude(&s, &project_sources(&s, &j).unwrap()).unwrap();
    assert!((z.log_modulus - 0.5 * (32.0 * std::f32::consts::PI.powi(5) / 90.0).ln()).abs() < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ladders_satisfy_chain_condition(n in 2usize..30) {
        let c = build_ladder(n).unwrap();
        prop_assert_eq!(c.vertex_count(), 2 * n);
        prop_assert_eq!(c.edge_count(), 3 * n - 2);
        prop_assert_eq!(c.plaquette_count(), n - 1);
        prop_assert!(verify_chain(&c).passed());
        let d1 = boundary1(&c);
        for j in 0..d1.cols() {
            prop_assert_eq!(d1.column(j).iter().sum::<i32>(), 0);
        }
    }

    #[test]
    fn random_complexes_satisfy_chain_condition(seed in any::<u64>(), n in 3usize..12) {
        let c = random_complex(&mut rng(seed), n, 0.5);
        prop_assert!(verify_chain(&c).passed());
    }

    #[test]
    fn sources_sum_to_zero_and_match_kernel(seed in any::<u64>(), n in 2usize..12, alpha in -3.0f64..3.0) {
        let mut r = rng(seed);
        let c = build_ladder(n).unwrap();
        let e: Vec<f64> = (0..c.edge_count()).map(|_| r.gen_range(-5.0..5.0)).collect();
        let j = source_vector(&c, &e, alpha).unwrap();
        let scale = e.iter().map(|x| x.abs()).sum::<f64>().max(1.0) * alpha.abs().max(1.0);
        prop_assert!(j.total().abs() < 1e-12 * scale);

        // e = ∂₁ᵀv turns the source into A·v
        let v: Vec<f64> = (0..c.vertex_count()).map(|_| r.gen_range(-5.0..5.0)).collect();
        let ev = boundary1(&c).map(f64::from).transpose().apply(&v).unwrap();
        let j = source_vector(&c, &ev, 1.0).unwrap();
        let av = action_kernel(&c, 1.0).matrix.apply(&v).unwrap();
        for (a, b) in av.iter().zip(&j.values) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_dimension_counts_components(seed in any::<u64>(), n in 2usize..14, p in 0.05f64..0.6) {
        let c = random_complex(&mut rng(seed), n, p);
        let s = eigendecompose(&action_kernel(&c, 1.0), DEFAULT_ZERO_TOLERANCE).unwrap();
        prop_assert_eq!(s.zero_mode_count(), component_count(&c));
    }

    #[test]
    fn closed_form_mode_weights_hold(e in proptest::collection::vec(-3.0f64..3.0, 7)) {
        let c = build_ladder(3).unwrap();
        let s = eigendecompose(&action_kernel(&c, 1.0), DEFAULT_ZERO_TOLERANCE).unwrap();
        let j = source_vector(&c, &e, 1.0).unwrap();
        let total: f64 = mode_contributions(&s, &project_sources(&s, &j).unwrap())
            .unwrap()
            .iter()
            .map(|m| m.weight)
            .sum();
        let expected: f64 = reference_mode_weights(&e).iter().sum();
        prop_assert!((total - expected).abs() < 1e-9 * expected.max(1.0));
    }

    #[test]
    fn intensities_ignore_global_phase(phases in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 1..20), global in 0.0f64..std::f64::consts::TAU) {
        use num_complex::Complex64;
        let amps: Vec<Complex64> = phases.iter().map(|&p| Complex64::new(1.0, 0.0) + Complex64::from_polar(0.5, p)).collect();
        let rotated: Vec<Complex64> = amps.iter().map(|z| z * Complex64::from_polar(1.0, global)).collect();
        let a = intensity_pattern(&amps).unwrap();
        let b = intensity_pattern(&rotated).unwrap();
        prop_assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
