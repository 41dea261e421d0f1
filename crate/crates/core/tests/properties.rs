//! Invariants checked over random inputs.

use approx::assert_abs_diff_eq;
use polyfactor::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point of the closed disk from polar coordinates in `[0,1]²`.
fn in_disk(r: f64, (s, t): (f64, f64)) -> Complex64 {
    Complex64::from_polar(r * s.sqrt(), std::f64::consts::TAU * t)
}

fn unit_pairs(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0..=1.0f64, 0.0..=1.0f64), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn constants_are_at_least_one(r in 0.01..200.0f64) {
        prop_assert!(constant_disk(r, 1e-10).unwrap().value >= 1.0);
        prop_assert!(constant_segment(r, 1e-10).unwrap().value >= 1.0);
    }

    #[test]
    fn constants_decrease_with_size(r in 0.05..50.0f64, grow in 1.01..4.0f64) {
        let s = r * grow;
        prop_assert!(constant_disk(s, 1e-10).unwrap().value < constant_disk(r, 1e-10).unwrap().value);
        prop_assert!(constant_segment(s, 1e-10).unwrap().value < constant_segment(r, 1e-10).unwrap().value);
    }

    #[test]
    fn small_sets_give_inverse_capacity(r in 0.001..=0.5f64) {
        prop_assert!((constant_disk(r, 1e-10).unwrap().value * r - 1.0).abs() < 1e-15);
        prop_assert!((constant_segment(r, 1e-10).unwrap().value * r / 2.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factor_inequality_disk(r in 0.3..4.0f64, roots in unit_pairs(12), mask in prop::collection::vec(any::<bool>(), 12)) {
        let set = CompactSet::disk(r).unwrap();
        let zs: Vec<Complex64> = roots.iter().map(|&p| in_disk(r, p)).collect();
        let keep: Vec<Complex64> = zs.iter().zip(&mask).filter(|(_, &k)| k).map(|(z, _)| *z).collect();
        let p = MonicPolynomial::new(zs.clone());
        let q = MonicPolynomial::new(keep);
        let cn = zs.len() as f64 * constant_disk(r, 1e-12).unwrap().value.ln();
        let lp = p.sup_norm(&set, 1e-10).unwrap().log_value;
        let lq = q.sup_norm(&set, 1e-10).unwrap().log_value;
        prop_assert!(lq <= cn + lp + 1e-9, "log‖q‖ = {lq}, bound {}", cn + lp);
    }

    #[test]
    fn factor_inequality_segment(a in 0.3..4.0f64, xs in prop::collection::vec(-1.0..=1.0f64, 1..=12), mask in prop::collection::vec(any::<bool>(), 12)) {
        let set = CompactSet::segment(a).unwrap();
        let zs: Vec<Complex64> = xs.iter().map(|&x| c(a * x, 0.0)).collect();
        let keep: Vec<Complex64> = zs.iter().zip(&mask).filter(|(_, &k)| k).map(|(z, _)| *z).collect();
        let p = MonicPolynomial::new(zs.clone());
        let q = MonicPolynomial::new(keep);
        let cn = zs.len() as f64 * constant_segment(a, 1e-12).unwrap().value.ln();
        let lp = p.sup_norm(&set, 1e-10).unwrap().log_value;
        let lq = q.sup_norm(&set, 1e-10).unwrap().log_value;
        prop_assert!(lq <= cn + lp + 1e-9, "log‖q‖ = {lq}, bound {}", cn + lp);
    }

    #[test]
    fn bernstein_walsh_growth(a in 0.3..4.0f64, xs in prop::collection::vec(-1.0..=1.0f64, 1..=10), zr in -10.0..10.0f64, zi in -10.0..10.0f64) {
        let set = CompactSet::segment(a).unwrap();
        let measure = equilibrium_segment(a, 256).unwrap();
        let p = MonicPolynomial::from_real_roots(&xs.iter().map(|x| a * x).collect::<Vec<_>>());
        let z = c(zr, zi);
        let lhs = p.log_abs_evaluate(z);
        let rhs = p.sup_norm(&set, 1e-10).unwrap().log_value + p.degree() as f64 * measure.green_function(z).value;
        prop_assert!(lhs <= rhs + 1e-9, "{lhs} > {rhs}");
    }

    #[test]
    fn sup_norm_dominates_samples(r in 0.3..3.0f64, roots in unit_pairs(8), probe in unit_pairs(20)) {
        let set = CompactSet::disk(r).unwrap();
        let p = MonicPolynomial::new(roots.iter().map(|&q| in_disk(r, q)).collect());
        let norm = p.sup_norm(&set, 1e-10).unwrap().log_value;
        for &q in &probe {
            prop_assert!(p.log_abs_evaluate(in_disk(r, q)) <= norm + 1e-9);
        }
    }

    #[test]
    fn truncations_partition_the_potential(r in 0.3..4.0f64, s in 0.0..1.0f64, t in 0.0..1.0f64, segment in any::<bool>()) {
        let (m, u) = if segment {
            (equilibrium_segment(r, 512).unwrap(), c(r * (2.0 * s - 1.0), 0.0))
        } else {
            (equilibrium_disk(r, 512).unwrap(), Complex64::from_polar(r, std::f64::consts::TAU * t))
        };
        let full = m.truncated_log_integral(u, Truncation::Full).value;
        let far = m.truncated_log_integral(u, Truncation::Far).value;
        let near = m.truncated_log_integral(u, Truncation::Near).value;
        prop_assert!((far + near - full).abs() < 1e-12);
        prop_assert!(far >= 0.0 && near <= 0.0);
    }

    #[test]
    fn green_function_vanishes_on_regular_sets(r in 0.2..5.0f64, s in 0.0..1.0f64) {
        let disk = equilibrium_disk(r, 512).unwrap();
        let g = disk.green_function(Complex64::from_polar(r * s, 1.0 + s));
        prop_assert!(g.value < 1e-12 && g.clamped < 1e-12, "{g:?}");
        let seg = equilibrium_segment(r, 512).unwrap();
        let g = seg.green_function(c(r * (2.0 * s - 1.0), 0.0));
        prop_assert!(g.value < 1e-12 && g.clamped < 1e-12, "{g:?}");
    }

    #[test]
    fn measures_have_unit_mass(n in 2usize..600, r in 0.1..10.0f64) {
        prop_assert!((equilibrium_disk(r, n).unwrap().mass() - 1.0).abs() < 1e-12);
        prop_assert!((equilibrium_segment(r, n).unwrap().mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_scales_linearly(r in 0.2..5.0f64, alpha in 0.1..10.0f64) {
        let set = CompactSet::segment(r).unwrap();
        let scaled = set.scale(alpha).unwrap();
        let c0 = equilibrium_for(&set, 64).unwrap().capacity();
        let c1 = equilibrium_for(&scaled, 64).unwrap().capacity();
        prop_assert!((c1 - alpha * c0).abs() < 1e-12 * c1);
        let e0 = fekete_for(&set, 24).unwrap().pair_product_capacity();
        let e1 = fekete_for(&scaled, 24).unwrap().pair_product_capacity();
        prop_assert!((e1 - alpha * e0).abs() < 1e-10 * e1);
    }

    #[test]
    fn objective_derivative_forms_agree(a in 1.05..6.0f64, s in 0.02..0.98f64) {
        let f = SegmentObjective::new(a).unwrap();
        let u = (1.0 - a) + s * 2.0 * (a - 1.0);
        let d = f.derivative(u).unwrap();
        prop_assert!(d.closed_form);
        prop_assert!((d.value - f.derivative_by_quadrature(u).unwrap()).abs() < 1e-9 * (1.0 + d.value.abs()));
        prop_assert!(d.value * u >= 0.0, "f'({u}) = {}", d.value);
    }

    #[test]
    fn general_path_matches_disk_closed_form(r in 0.55..5.0f64) {
        let set = CompactSet::disk(r).unwrap();
        let m = equilibrium_disk(r, 1024).unwrap();
        let d = constant_general_detailed(&set, &m, 64, 1e-8).unwrap();
        let exact = constant_disk(r, 1e-12).unwrap().value;
        prop_assert!((d.result.value - exact).abs() < 1e-8 * exact);
        prop_assert!(d.gap().unwrap() < 1e-9);
        prop_assert!((d.result.maximizer.norm() - r).abs() < 1e-12 * r);
    }

    #[test]
    fn general_path_picks_segment_endpoints(a in 0.55..8.0f64) {
        let set = CompactSet::segment(a).unwrap();
        let m = equilibrium_segment(a, 1024).unwrap();
        let r = constant_general(&set, &m, 64, 1e-8).unwrap();
        prop_assert!((r.maximizer - c(a, 0.0)).norm() <= 1e-6 * a, "{}", r.maximizer);
        let exact = constant_segment(a, 1e-12).unwrap().value;
        prop_assert!((r.value - exact).abs() < 1e-8 * exact);
    }
}

#[test]
fn json_is_deterministic() {
    let set = CompactSet::segment(2.0).unwrap();
    let m = equilibrium_segment(2.0, 1024).unwrap();
    let a = serde_json::to_string(&constant_general(&set, &m, 256, 1e-8).unwrap()).unwrap();
    let b = serde_json::to_string(&constant_general(&set, &m, 256, 1e-8).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn parallel_and_single_thread_results_coincide() {
    let run = || {
        let set = CompactSet::disk(1.0).unwrap();
        let m = equilibrium_disk(1.0, 1024).unwrap();
        let general = constant_general(&set, &m, 128, 1e-8).unwrap();
        let rows = sharpness_experiment(&set, c(1.0, 0.0), &[16, 32], 1e-8).unwrap();
        let leja = leja_points(&CompactSet::segment_union(vec![(-2.0, -1.0), (0.5, 3.0)]).unwrap(), 40, 800).unwrap();
        (general, rows, leja.points().to_vec())
    };
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
    let multi = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(run);
    assert_eq!(single, multi);
    assert_abs_diff_eq!(single.0.value, 1.381356444518, epsilon = 1e-11);
}
