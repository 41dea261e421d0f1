//! Logarithmic capacity, discretized equilibrium measures, logarithmic
//! potentials and the Green function of the unbounded complement.
//!
//! Closed-form measures (disk, segment) are stored as equal-mass nodes in an
//! angular parameter `θ` in which the measure has constant density. The
//! nodes are what gets exported; integrals of `log|z − u|` against such a
//! measure are taken against the density in `θ`, split at the singularity
//! and at the truncation kinks `|z − u| = 1`. Discrete measures from point
//! ensembles use the node sum.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fekete::{leja_points, FeketeEnsemble};
use crate::quadrature::adaptive_gauss_split;
use crate::sets::{CompactSet, Geometry};

/// Distances below this are floored when a node sits on the evaluation point.
pub const SINGULAR_FLOOR: f64 = 1e-14;

const DENSITY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeasureSource {
    ClosedFormDisk,
    ClosedFormSegment,
    FeketeApprox,
}

impl std::fmt::Display for MeasureSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// Node `j` at angle `2πj/N`, mass `dθ/2π`.
    Circle { center: Complex64, radius: f64 },
    /// Node `j` at `a·cos((j + ½)π/N)`, mass `dθ/π`.
    ChebyshevSegment { half_length: f64 },
    Discrete,
}

/// Which part of `log|z − u|` to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Full,
    /// `|z − u| ≥ 1` only, i.e. the integrand `max(log|z − u|, 0)`.
    Far,
    /// `|z − u| ≤ 1` only, i.e. the integrand `min(log|z − u|, 0)`.
    Near,
}

impl Truncation {
    fn apply(self, log: f64) -> f64 {
        match self {
            Truncation::Full => log,
            Truncation::Far => log.max(0.0),
            Truncation::Near => log.min(0.0),
        }
    }
}

/// A log-potential value and the number of node terms that hit the floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPotential {
    pub value: f64,
    pub floored: usize,
}

/// Green function value, clamped at zero; `clamped` is the size of the clamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenValue {
    pub value: f64,
    pub clamped: f64,
    pub floored: usize,
}

/// A discretized equilibrium measure `μ_E` with the capacity of `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumMeasure {
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
    capacity: f64,
    source: MeasureSource,
    layout: Layout,
}

/// Uniform measure on `|z| = r` with `node_count` equally spaced nodes; `cap = r`.
pub fn equilibrium_disk(r: f64, node_count: usize) -> Result<EquilibriumMeasure> {
    equilibrium_disk_centered(Complex64::new(0.0, 0.0), r, node_count)
}

pub fn equilibrium_disk_centered(center: Complex64, r: f64, node_count: usize) -> Result<EquilibriumMeasure> {
    check_nodes(node_count)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let n = node_count as f64;
    let nodes = (0..node_count)
        .map(|j| center + Complex64::from_polar(r, TAU * j as f64 / n))
        .map(snap)
        .collect();
    Ok(EquilibriumMeasure {
        nodes,
        weights: vec![1.0 / n; node_count],
        capacity: r,
        source: MeasureSource::ClosedFormDisk,
        layout: Layout::Circle { center, radius: r },
    })
}

/// Arcsine measure `dt/(π√(a²−t²))` on `[-a, a]` by Gauss–Chebyshev nodes; `cap = a/2`.
pub fn equilibrium_segment(a: f64, node_count: usize) -> Result<EquilibriumMeasure> {
    check_nodes(node_count)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-length must be positive, got {a}")));
    }
    let n = node_count as f64;
    let nodes = (0..node_count)
        .map(|j| Complex64::new(a * ((j as f64 + 0.5) * PI / n).cos(), 0.0))
        .map(snap)
        .collect();
    Ok(EquilibriumMeasure {
        nodes,
        weights: vec![1.0 / n; node_count],
        capacity: a / 2.0,
        source: MeasureSource::ClosedFormSegment,
        layout: Layout::ChebyshevSegment { half_length: a },
    })
}

/// Counting measure `τ_n` of a point ensemble, with the transfinite-diameter
/// estimate `(∏_{j<k} |a_j − a_k|)^{2/(n(n−1))}` as capacity.
pub fn equilibrium_from_fekete(ensemble: &FeketeEnsemble) -> Result<EquilibriumMeasure> {
    let n = ensemble.degree();
    if n < 2 {
        return Err(Error::Degenerate(format!("need at least 2 points, got {n}")));
    }
    let capacity = ensemble.pair_product_capacity();
    if !(capacity > 0.0 && capacity.is_finite()) {
        return Err(Error::Degenerate("ensemble has coincident points".into()));
    }
    Ok(EquilibriumMeasure {
        nodes: ensemble.points().to_vec(),
        weights: vec![1.0 / n as f64; n],
        capacity,
        source: MeasureSource::FeketeApprox,
        layout: Layout::Discrete,
    })
}

/// Closed-form measure for disks and segments; Leja-point approximation otherwise.
pub fn equilibrium_for(set: &CompactSet, node_count: usize) -> Result<EquilibriumMeasure> {
    match set.geometry() {
        Geometry::Disk { center, radius } => equilibrium_disk_centered(*center, *radius, node_count),
        Geometry::Segment { half_length } => equilibrium_segment(*half_length, node_count),
        _ => {
            let ensemble = leja_points(set, node_count, 20 * node_count)?;
            equilibrium_from_fekete(&ensemble)
        }
    }
}

fn check_nodes(node_count: usize) -> Result<()> {
    if node_count < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 nodes, got {node_count}")));
    }
    Ok(())
}

/// Rounds away sub-ulp noise from cos/sin at exact lattice angles.
fn snap(z: Complex64) -> Complex64 {
    let clean = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    Complex64::new(clean(z.re), clean(z.im))
}

fn floored_log(d: f64, floored: &mut usize) -> f64 {
    if d < SINGULAR_FLOOR {
        *floored += 1;
        SINGULAR_FLOOR.ln()
    } else {
        d.ln()
    }
}

impl EquilibriumMeasure {
    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn source(&self) -> MeasureSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `∫ log|u − t| dμ(t)`.
    pub fn log_potential(&self, u: Complex64) -> LogPotential {
        self.truncated_log_integral(u, Truncation::Full)
    }

    /// `g_Ω(z, ∞) = log(1/cap) + ∫ log|z − t| dμ(t)`, clamped at zero.
    pub fn green_function(&self, z: Complex64) -> GreenValue {
        let lp = self.log_potential(z);
        let raw = lp.value - self.capacity.ln();
        GreenValue { value: raw.max(0.0), clamped: (-raw).max(0.0), floored: lp.floored }
    }

    /// `∫ log|z − u| dμ(z)` restricted by `trunc`.
    pub fn truncated_log_integral(&self, u: Complex64, trunc: Truncation) -> LogPotential {
        match self.layout {
            Layout::Discrete => self.node_sum(u, trunc),
            _ => self.density_integral(u, trunc),
        }
    }

    fn node_sum(&self, u: Complex64, trunc: Truncation) -> LogPotential {
        let mut floored = 0;
        let mut value = 0.0;
        for (z, w) in self.nodes.iter().zip(&self.weights) {
            value += w * trunc.apply(floored_log((z - u).norm(), &mut floored));
        }
        LogPotential { value, floored }
    }

    fn density_integral(&self, u: Complex64, trunc: Truncation) -> LogPotential {
        let log_dist = |re: f64, im: f64| {
            let d = re.hypot(im);
            trunc.apply(if d > 0.0 { d.ln() } else { SINGULAR_FLOOR.ln() })
        };
        let result = match self.layout {
            Layout::Circle { center, radius: r } => {
                // ψ is the angle measured from the direction of u, so that
                // z − u = (r − ρ) − 2r sin²(ψ/2) + i r sin ψ in rotated coordinates
                let w = u - center;
                let rho = w.norm();
                let mut breaks = vec![0.0];
                if rho > 0.0 {
                    let cos_d = (r * r + rho * rho - 1.0) / (2.0 * r * rho);
                    if cos_d.abs() <= 1.0 {
                        let d = cos_d.acos();
                        breaks.extend([-d, d]);
                    }
                }
                let integrand = |psi: f64| {
                    let s = (0.5 * psi).sin();
                    log_dist((r - rho) - 2.0 * r * s * s, r * psi.sin())
                };
                adaptive_gauss_split(&integrand, -PI, PI, &breaks, DENSITY_TOL).map(|v| v.value / TAU)
            }
            Layout::ChebyshevSegment { half_length: a } => {
                let mut breaks = vec![(u.re / a).clamp(-1.0, 1.0).acos()];
                if u.im.abs() <= 1.0 {
                    let reach = (1.0 - u.im * u.im).sqrt();
                    for x in [u.re - reach, u.re + reach] {
                        if x.abs() <= a {
                            breaks.push((x / a).acos());
                        }
                    }
                }
                // a cos θ = a − 2a sin²(θ/2) = −a + 2a cos²(θ/2); pick the form
                // without cancellation near the end closest to u
                let integrand = |theta: f64| {
                    let re = if u.re >= 0.0 {
                        let s = (0.5 * theta).sin();
                        (a - u.re) - 2.0 * a * s * s
                    } else {
                        let c = (0.5 * theta).cos();
                        2.0 * a * c * c - (a + u.re)
                    };
                    log_dist(re, u.im)
                };
                adaptive_gauss_split(&integrand, 0.0, PI, &breaks, DENSITY_TOL).map(|v| v.value / PI)
            }
            Layout::Discrete => unreachable!(),
        };
        match result {
            Ok(value) => LogPotential { value, floored: 0 },
            Err(_) => self.node_sum(u, trunc),
        }
    }

    /// `re,im,weight` rows behind a `# capacity=<float> source=<tag>` comment.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# capacity={} source={}", self.capacity, self.source);
        out.push_str("re,im,weight\n");
        for (z, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(out, "{},{},{}", z.re, z.im, w);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disk_measure_layout() {
        let m = equilibrium_disk(1.0, 4).unwrap();
        assert_eq!(m.nodes(), &[c(1., 0.), c(0., 1.), c(-1., 0.), c(0., -1.)]);
        assert_eq!(m.weights(), &[0.25; 4]);
        assert_eq!(m.capacity(), 1.0);
        assert_eq!(equilibrium_disk(2.0, 8).unwrap().capacity(), 2.0);
        let m = equilibrium_disk(0.5, 16).unwrap();
        assert_eq!(m.capacity(), 0.5);
        assert_abs_diff_eq!(m.mass(), 1.0, epsilon = 1e-12);
        assert!(equilibrium_disk(0.0, 16).is_err());
        assert!(equilibrium_disk(1.0, 1).is_err());
    }

    #[test]
    fn segment_measure_layout() {
        assert_eq!(equilibrium_segment(2.0, 64).unwrap().capacity(), 1.0);
        let m = equilibrium_segment(1.0, 2).unwrap();
        assert_abs_diff_eq!(m.nodes()[0].re, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.nodes()[1].re, -(0.5f64.sqrt()), epsilon = 1e-15);
        assert_eq!(m.weights(), &[0.5, 0.5]);
        // ∫ t² dμ on [-1,1] = 1/2
        let m = equilibrium_segment(1.0, 64).unwrap();
        let second: f64 = m.nodes().iter().zip(m.weights()).map(|(z, w)| w * z.re * z.re).sum();
        assert_abs_diff_eq!(second, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn log_potential_examples() {
        let m = equilibrium_disk(1.0, 256).unwrap();
        assert_abs_diff_eq!(m.log_potential(c(0., 0.)).value, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.log_potential(c(2., 0.)).value, 2f64.ln(), epsilon = 1e-14);
        // on a node: the panel correction integrates the singularity exactly
        let lp = m.log_potential(c(1., 0.));
        assert_abs_diff_eq!(lp.value, 0.0, epsilon = 1e-10);
        assert_eq!(lp.floored, 0);

        let s = equilibrium_segment(2.0, 256).unwrap();
        assert_abs_diff_eq!(s.log_potential(c(2., 0.)).value, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(s.log_potential(c(0.3, 0.)).value, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn green_function_examples() {
        let m = equilibrium_disk(1.0, 256).unwrap();
        let e = std::f64::consts::E;
        assert_abs_diff_eq!(m.green_function(c(e, 0.)).value, 1.0, epsilon = 1e-13);
        let s = equilibrium_segment(2.0, 512).unwrap();
        for x in [-2.0, -1.3, 0.0, 0.77, 2.0] {
            let g = s.green_function(c(x, 0.));
            assert!(g.value < 1e-10 && g.clamped < 1e-10, "{x}: {g:?}");
        }
        let m = equilibrium_disk(2.0, 64).unwrap();
        assert!(m.green_function(c(2., 0.)).value < 1e-10);
    }

    #[test]
    fn discrete_measure_floors_coincident_nodes() {
        let ens = crate::fekete::fekete_disk(1.0, 16).unwrap();
        let m = equilibrium_from_fekete(&ens).unwrap();
        let lp = m.log_potential(c(1., 0.));
        assert_eq!(lp.floored, 1);
        assert!(lp.value.is_finite());
        assert_eq!(m.source(), MeasureSource::FeketeApprox);
    }

    #[test]
    fn fekete_capacity_estimates() {
        let ens = crate::fekete::fekete_disk(1.0, 32).unwrap();
        let cap = equilibrium_from_fekete(&ens).unwrap().capacity();
        assert_abs_diff_eq!(cap, 32f64.powf(1.0 / 31.0), epsilon = 1e-12);
        let pair = FeketeEnsemble::from_points(vec![c(-1., 0.), c(1., 0.)], CompactSet::segment(1.0).unwrap(), false)
            .unwrap();
        assert_abs_diff_eq!(equilibrium_from_fekete(&pair).unwrap().capacity(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn truncations_split_the_full_integral() {
        for m in [equilibrium_disk(1.3, 512).unwrap(), equilibrium_segment(1.7, 512).unwrap()] {
            for u in [c(1.3, 0.), c(0.2, 0.4), c(-1.7, 0.)] {
                let full = m.log_potential(u).value;
                let far = m.truncated_log_integral(u, Truncation::Far).value;
                let near = m.truncated_log_integral(u, Truncation::Near).value;
                assert_abs_diff_eq!(far + near, full, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn csv_export() {
        let csv = equilibrium_segment(2.0, 2).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# capacity=1 source=ClosedFormSegment"));
        assert_eq!(lines.next(), Some("re,im,weight"));
        assert_eq!(csv.lines().count(), 4);
    }
}
