//! Library results against independent computations: composite Simpson
//! quadrature in other parametrizations, analytic Fekete points, and
//! brute-force local optimality checks.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use polyfactor::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Composite Simpson rule with `2m` subintervals.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let mut sum = f(a) + f(b);
    for i in 1..2 * m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

#[test]
fn boyd_constant_from_its_own_integral() {
    let beta = (simpson(|t| (2.0 * (t / 2.0).cos()).ln(), 0.0, 2.0 * PI / 3.0, 20_000) / PI).exp();
    let disk = constant_disk(1.0, 1e-12).unwrap();
    assert_abs_diff_eq!(disk.value, beta, epsilon = 1e-10);
    assert_abs_diff_eq!(beta, 1.381356444518, epsilon = 1e-11);
}

#[test]
fn disk_constant_against_simpson() {
    for r in [0.6f64, 0.8, 1.5, 3.0, 10.0] {
        let upper = PI - 2.0 * (1.0 / (2.0 * r)).asin();
        let direct = (simpson(|x| (2.0 * r * (x / 2.0).cos()).ln(), 0.0, upper, 20_000) / PI).exp() / r;
        assert_abs_diff_eq!(constant_disk(r, 1e-12).unwrap().value, direct, epsilon = 1e-10);
    }
}

#[test]
fn segment_constant_in_sine_parametrization() {
    // t = a sin φ turns dt/(π√(a²−t²)) into dφ/π
    for a in [0.6f64, 0.8, 1.0, 2.0, 3.0, 7.5] {
        let lower = ((1.0 - a) / a).asin();
        let integral = simpson(|phi| (a * phi.sin() + a).ln(), lower, PI / 2.0, 40_000) / PI;
        let direct = 2.0 / a * integral.exp();
        assert_abs_diff_eq!(constant_segment(a, 1e-12).unwrap().value, direct, epsilon = 1e-9);
    }
}

#[test]
fn segment_two_equals_the_borwein_integral() {
    let direct = simpson(|x| (2.0 + 2.0 * (PI * x).cos()).ln(), 0.0, 2.0 / 3.0, 20_000).exp();
    assert_abs_diff_eq!(direct, 1.9081, epsilon = 1e-4);
    assert_abs_diff_eq!(constant_segment(2.0, 1e-12).unwrap().value, direct, epsilon = 1e-10);
    // the segment [-2, 2] is the image of the unit disk under z + 1/z, so C = β²
    let beta = constant_disk(1.0, 1e-12).unwrap().value;
    assert_abs_diff_eq!(direct, beta * beta, epsilon = 1e-10);
}

#[test]
fn borwein_bound_is_attained_by_chebyshev_factors() {
    for (n, a) in [(5, 1.0), (9, 2.0), (12, 0.7), (20, 3.0)] {
        let t = monic_chebyshev(n, a).unwrap();
        let set = CompactSet::segment(a).unwrap();
        let norm = t.sup_norm(&set, 1e-12).unwrap().value();
        assert_abs_diff_eq!(norm, 2.0 * (a / 2.0).powi(n as i32), epsilon = 1e-9 * norm);
        for m in 1..=n {
            // the m largest roots
            let q = MonicPolynomial::new(t.roots()[..m].to_vec());
            let at_left = q.evaluate(c(-a, 0.0)).norm();
            let bound = borwein_bound(n, m, a).unwrap() * norm;
            assert_abs_diff_eq!(at_left, bound, epsilon = 1e-9 * bound);
        }
    }
}

#[test]
fn borwein_limit_direct_product() {
    for n in [3, 7, 30, 300] {
        let m = 2 * n / 3;
        let mut prod = 2f64.powi(m as i32 - 1);
        for k in 1..=m {
            prod *= 1.0 + ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos();
        }
        let direct = prod.powf(1.0 / n as f64);
        assert_abs_diff_eq!(borwein_limit(n).unwrap(), direct, epsilon = 1e-12 * direct);
    }
    assert!((borwein_limit(3000).unwrap() - 1.9081456268).abs() < 1e-2);
}

#[test]
fn green_function_closed_forms() {
    let disk = equilibrium_disk(1.5, 1024).unwrap();
    let seg = equilibrium_segment(2.0, 1024).unwrap();
    for z in [c(2.0, 0.0), c(0.0, 3.0), c(-4.0, 1.0), c(1.2, 1.2), c(10.0, -7.0)] {
        assert_abs_diff_eq!(disk.green_function(z).value, (z.norm() / 1.5).ln(), epsilon = 1e-12);
        let w = z / 2.0;
        let mut exterior = w + (w * w - 1.0).sqrt();
        if exterior.norm() < 1.0 {
            exterior = w - (w * w - 1.0).sqrt();
        }
        assert_abs_diff_eq!(seg.green_function(z).value, exterior.norm().ln(), epsilon = 1e-12);
    }
}

#[test]
fn segment_objective_at_the_endpoint_gives_the_constant() {
    for a in [0.8, 1.0, 2.0, 5.0] {
        let f = SegmentObjective::new(a).unwrap().value(a).unwrap();
        let c = constant_segment(a, 1e-12).unwrap().value;
        assert_abs_diff_eq!(f.exp() / (a / 2.0), c, epsilon = 1e-10 * c);
    }
}

#[test]
fn segment_fekete_points_small_cases() {
    let e = fekete_segment(1.0, 4).unwrap();
    let s = 1.0 / 5f64.sqrt();
    let expected = [-1.0, -s, s, 1.0];
    for (z, x) in e.points().iter().zip(expected) {
        assert_abs_diff_eq!(z.re, x, epsilon = 1e-14);
    }
    // zeros of P4' = (35x³ − 15x)/2: 0, ±√(3/7)
    let e = fekete_segment(2.0, 5).unwrap();
    let t = 2.0 * (3.0f64 / 7.0).sqrt();
    let expected = [-2.0, -t, 0.0, t, 2.0];
    for (z, x) in e.points().iter().zip(expected) {
        assert_abs_diff_eq!(z.re, x, epsilon = 1e-14);
    }
}

#[test]
fn segment_fekete_points_maximize_energy_against_random_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=8 {
        let a = 1.5;
        let fekete = fekete_segment(a, n).unwrap();
        let best = fekete.energy();
        // multistart hill climbing from random configurations
        for _ in 0..20 {
            let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-a..=a)).collect();
            let energy = |x: &[f64]| {
                let pts: Vec<Complex64> = x.iter().map(|&t| c(t, 0.0)).collect();
                fekete::log_energy(&pts)
            };
            let mut e = energy(&x);
            let mut step = 0.5;
            while step > 1e-9 {
                let mut improved = false;
                for i in 0..n {
                    for dir in [-1.0, 1.0] {
                        let old = x[i];
                        x[i] = (old + dir * step).clamp(-a, a);
                        let e2 = energy(&x);
                        if e2 > e {
                            e = e2;
                            improved = true;
                        } else {
                            x[i] = old;
                        }
                    }
                }
                if !improved {
                    step /= 2.0;
                }
            }
            assert!(e <= best + 1e-9, "n={n}: search found {e} > {best}");
            assert!(e >= best - 1e-4, "n={n}: search stalled at {e}, expected {best}");
        }
    }
}

#[test]
fn disk_fekete_energy_is_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 3..=8 {
        let best = fekete_disk(1.0, n).unwrap().energy();
        for _ in 0..200 {
            let pts: Vec<Complex64> = fekete_disk(1.0, n)
                .unwrap()
                .points()
                .iter()
                .map(|z| z * Complex64::from_polar(1.0, rng.random_range(-0.05..0.05)))
                .collect();
            assert!(fekete::log_energy(&pts) <= best + 1e-12);
        }
    }
}

#[test]
fn chebyshev_norm_and_capacity_limits() {
    for a in [0.5, 1.0, 2.0, 3.0] {
        let set = CompactSet::segment(a).unwrap();
        for n in [1, 2, 7, 40] {
            let t = monic_chebyshev(n, a).unwrap();
            let log = t.sup_norm(&set, 1e-12).unwrap().log_value;
            assert_abs_diff_eq!(log, 2f64.ln() + n as f64 * (a / 2.0).ln(), epsilon = 1e-10);
        }
    }
    // ‖z^n‖ on the disk is r^n
    let set = CompactSet::disk(1.7).unwrap();
    let p = MonicPolynomial::new(vec![c(0.0, 0.0); 9]);
    assert_abs_diff_eq!(p.sup_norm(&set, 1e-12).unwrap().log_value, 9.0 * 1.7f64.ln(), epsilon = 1e-12);
}

#[test]
fn leja_points_recover_capacity() {
    let seg = CompactSet::segment(2.0).unwrap();
    let leja = leja_points(&seg, 128, 20 * 128).unwrap();
    let via_norm = capacity_via_norm(&leja, 1e-10).unwrap();
    assert!((via_norm - 1.0).abs() < 0.05, "{via_norm}");
    let union = CompactSet::segment_union(vec![(-2.0, 2.0)]).unwrap();
    let leja = leja_points(&union, 128, 20 * 128).unwrap();
    assert!((capacity_via_norm(&leja, 1e-10).unwrap() - 1.0).abs() < 0.05);
}

#[test]
fn general_path_on_sets_without_closed_form() {
    // a single interval written as a union goes through the Leja measure
    let union = CompactSet::segment_union(vec![(-2.0, 2.0)]).unwrap();
    let measure = equilibrium_for(&union, 512).unwrap();
    let general = constant_general(&union, &measure, 256, 1e-8).unwrap();
    let exact = constant_segment(2.0, 1e-12).unwrap().value;
    assert!((general.value - exact).abs() < 0.05 * exact, "{} vs {exact}", general.value);
    assert!(general.maximizer.re.abs() > 1.99);

    // a small polygon uses the shortcut
    let square = CompactSet::boundary_cloud(vec![c(0., 0.), c(0.5, 0.), c(0.5, 0.5), c(0., 0.5)], true, true).unwrap();
    let r = constant_for_set(&square, 1e-8, 256, 64).unwrap();
    assert_eq!(r.method, Method::DiamShortcut);
    assert!(r.value >= 1.0);
}
