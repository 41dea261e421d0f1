//! Fekete and Leja point ensembles, Fekete polynomials, and the factor
//! sharpness experiment.
//!
//! The experiment takes the Fekete polynomial `p_n` of `E`, keeps the roots
//! at distance at least 1 from a boundary point `u` as the factor `q_n`, and
//! reports `(‖q_n‖_E / ‖p_n‖_E)^{1/n}`, which approaches `C_E` from below
//! when `u` is the maximizer of the constant.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::polynomials::MonicPolynomial;
use crate::quadrature::{gauss_legendre, legendre};
use crate::sets::{BoundaryPiece, CompactSet, Geometry};

/// `n` points of `E` with their logarithmic energy `Σ_{j<k} log|a_j − a_k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeketeEnsemble {
    points: Vec<Complex64>,
    set: CompactSet,
    energy: f64,
    exact: bool,
}

impl FeketeEnsemble {
    /// Wraps arbitrary points; rejects coincident points.
    pub fn from_points(points: Vec<Complex64>, set: CompactSet, exact: bool) -> Result<Self> {
        let energy = log_energy(&points);
        if energy == f64::NEG_INFINITY || energy.is_nan() {
            return Err(Error::Degenerate("ensemble has coincident points".into()));
        }
        Ok(FeketeEnsemble { points, set, energy, exact })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn set(&self) -> &CompactSet {
        &self.set
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// True when the points come from a closed form rather than greedy selection.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Weights of the normalized counting measure `τ_n`.
    pub fn counting_weights(&self) -> Vec<f64> {
        vec![1.0 / self.degree() as f64; self.degree()]
    }

    /// Transfinite-diameter estimate `exp(2·energy / (n(n−1)))`.
    pub fn pair_product_capacity(&self) -> f64 {
        let n = self.degree() as f64;
        (2.0 * self.energy / (n * (n - 1.0))).exp()
    }
}

/// `Σ_{j<k} log|a_j − a_k|`.
pub fn log_energy(points: &[Complex64]) -> f64 {
    let rows = exec::map_range(points.len(), |j| {
        points[j + 1..].iter().map(|q| (points[j] - q).norm().ln()).sum::<f64>()
    });
    rows.into_iter().sum()
}

/// Equally spaced points `r·e^{2πik/n}`, `k = 0..n−1`: the Fekete points of a circle.
pub fn fekete_disk(r: f64, n: usize) -> Result<FeketeEnsemble> {
    fekete_disk_centered(Complex64::new(0.0, 0.0), r, n)
}

fn fekete_disk_centered(center: Complex64, r: f64, n: usize) -> Result<FeketeEnsemble> {
    check_degree(n)?;
    let set = CompactSet::disk_centered(center, r)?;
    let points = (0..n)
        .map(|k| {
            let z = Complex64::from_polar(r, TAU * k as f64 / n as f64);
            let clean = |x: f64| if x.abs() < 1e-15 * r { 0.0 } else { x };
            center + Complex64::new(clean(z.re), clean(z.im))
        })
        .collect();
    FeketeEnsemble::from_points(points, set, true)
}

/// Fekete points of `[-a, a]`: the endpoints and the zeros of `P'_{n−1}`
/// (Gauss–Lobatto nodes), in ascending order.
pub fn fekete_segment(a: f64, n: usize) -> Result<FeketeEnsemble> {
    check_degree(n)?;
    let set = CompactSet::segment(a)?;
    let unit = lobatto_nodes(n)?;
    let points = unit.iter().map(|&x| Complex64::new(a * x, 0.0)).collect();
    FeketeEnsemble::from_points(points, set, true)
}

/// Ascending Gauss–Lobatto nodes on `[-1, 1]`, `n ≥ 2`.
fn lobatto_nodes(n: usize) -> Result<Vec<f64>> {
    let m = n - 1;
    let mut x = vec![-1.0; n];
    x[n - 1] = 1.0;
    if m >= 2 {
        // zeros of P'_m interlace the zeros of P_m
        let (gauss, _) = gauss_legendre(m);
        for i in 0..m - 1 {
            x[i + 1] = derivative_zero(m, gauss[i], gauss[i + 1])?;
        }
    }
    for i in 0..n / 2 {
        let s = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok(x)
}

/// Safeguarded Newton for the single zero of `P'_m` in `(lo, hi)`.
fn derivative_zero(m: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mf = m as f64;
    let g = |x: f64| {
        let (p, dp) = legendre(m, x);
        let ddp = (2.0 * x * dp - mf * (mf + 1.0) * p) / (1.0 - x * x);
        (dp, ddp)
    };
    let g_lo = g(lo).0;
    if g_lo * g(hi).0 > 0.0 {
        return Err(Error::NotConverged { what: "Lobatto bracket", tol: 0.0, iterations: 0 });
    }
    let mut x = 0.5 * (lo + hi);
    for iter in 0..200 {
        let (v, dv) = g(x);
        if v == 0.0 {
            return Ok(x);
        }
        if (v > 0.0) == (g_lo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / dv;
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-3) || hi - lo <= f64::EPSILON {
            return Ok(next);
        }
        x = next;
        if iter == 199 {
            break;
        }
    }
    Err(Error::NotConverged { what: "Lobatto node", tol: f64::EPSILON, iterations: 200 })
}

/// Greedy Leja sequence from a dense boundary grid of `candidate_count` points.
///
/// Starts at the first candidate that attains the diameter and repeatedly
/// adds the candidate maximizing `Σ log|c − chosen|`; ties go to the earlier
/// candidate.
pub fn leja_points(set: &CompactSet, n: usize, candidate_count: usize) -> Result<FeketeEnsemble> {
    check_degree(n)?;
    if candidate_count < 10 * n {
        return Err(Error::InvalidArgument(format!(
            "Leja selection needs at least {} candidates, got {candidate_count}",
            10 * n
        )));
    }
    let candidates = dense_boundary_grid(set, candidate_count)?;
    let diam = set.diameter();
    let start = candidates
        .iter()
        .position(|&z| set.farthest_distance(z) >= diam * (1.0 - 1e-12))
        .unwrap_or(0);

    let mut acc = vec![0.0f64; candidates.len()];
    let mut chosen = Vec::with_capacity(n);
    let mut next = start;
    loop {
        let p = candidates[next];
        chosen.push(p);
        acc[next] = f64::NEG_INFINITY;
        if chosen.len() == n {
            break;
        }
        exec::for_each_mut(&mut acc, |i, v| {
            if *v > f64::NEG_INFINITY {
                *v += (candidates[i] - p).norm().ln();
            }
        });
        let mut best = f64::NEG_INFINITY;
        for (i, &v) in acc.iter().enumerate() {
            if v > best {
                best = v;
                next = i;
            }
        }
        if best == f64::NEG_INFINITY {
            return Err(Error::Degenerate("ran out of distinct Leja candidates".into()));
        }
    }
    FeketeEnsemble::from_points(chosen, set.clone(), false)
}

fn dense_boundary_grid(set: &CompactSet, count: usize) -> Result<Vec<Complex64>> {
    match set.geometry() {
        Geometry::BoundaryCloud { .. } => {
            let pieces = set.boundary_pieces();
            let perimeter: f64 = pieces.iter().map(BoundaryPiece::length).sum();
            let mut out = Vec::with_capacity(count + pieces.len());
            for piece in &pieces {
                let k = ((count as f64 * piece.length() / perimeter).round() as usize).max(1);
                // each edge contributes its start vertex and k−1 interior points
                out.extend((0..k).map(|i| piece.point(i as f64 / k as f64)));
            }
            if let Geometry::BoundaryCloud { points, closed: false } = set.geometry() {
                out.push(points[points.len() - 1]);
            }
            Ok(out)
        }
        _ => set.boundary_candidates(count),
    }
}

/// Closed-form Fekete points for disks and segments, Leja points otherwise.
pub fn fekete_for(set: &CompactSet, n: usize) -> Result<FeketeEnsemble> {
    match set.geometry() {
        Geometry::Disk { center, radius } => fekete_disk_centered(*center, *radius, n),
        Geometry::Segment { half_length } => fekete_segment(*half_length, n),
        _ => leja_points(set, n, 20 * n),
    }
}

/// `p_n(z) = ∏ (z − a_{k,n})`.
pub fn fekete_polynomial(ensemble: &FeketeEnsemble) -> MonicPolynomial {
    MonicPolynomial::new(ensemble.points.clone())
}

/// `‖p_n‖_E^{1/n}`, which tends to `cap(E)`.
pub fn capacity_via_norm(ensemble: &FeketeEnsemble, tol: f64) -> Result<f64> {
    let norm = fekete_polynomial(ensemble).sup_norm(&ensemble.set, tol)?;
    Ok((norm.log_value / ensemble.degree() as f64).exp())
}

/// One degree of the sharpness experiment. Norms are stored as logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessRow {
    pub n: usize,
    pub ratio: f64,
    pub log_norm_p: f64,
    pub log_norm_q: f64,
    pub factor_degree: usize,
}

/// For each `n`: `q_n` = roots of `p_n` with `|a_{k,n} − u| ≥ 1`, and
/// `ratio = exp((log‖q_n‖ − log‖p_n‖)/n)`.
pub fn sharpness_experiment(set: &CompactSet, u: Complex64, degrees: &[usize], tol: f64) -> Result<Vec<SharpnessRow>> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("need at least one degree".into()));
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("degrees must be strictly ascending".into()));
    }
    let scale = set.diameter().max(1.0);
    if set.distance_to(u) > 1e-8 * scale {
        return Err(Error::InvalidArgument(format!("u = {u} does not lie on E")));
    }
    for &n in degrees {
        check_degree(n)?;
    }
    let rows = exec::map(degrees, |&n| -> Result<SharpnessRow> {
        let ensemble = fekete_for(set, n)?;
        let p = fekete_polynomial(&ensemble);
        let q = p.factor_by_predicate(|z| (z - u).norm() >= 1.0);
        let log_norm_p = p.sup_norm(set, tol)?.log_value;
        let log_norm_q = q.sup_norm(set, tol)?.log_value;
        Ok(SharpnessRow {
            n,
            ratio: ((log_norm_q - log_norm_p) / n as f64).exp(),
            log_norm_p,
            log_norm_q,
            factor_degree: q.degree(),
        })
    });
    rows.into_iter().collect()
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("ensemble size must be at least 2, got {n}")));
    }
    Ok(())
}
