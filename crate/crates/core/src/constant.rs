//! The best constant `C_E` in `‖q‖_E ≤ C_E^n ‖p‖_E`.
//!
//! General sets use
//!
//! ```text
//! C_E = max_{u ∈ ∂E} exp(∫_{|z−u|≥1} log|z−u| dμ_E(z)) / cap(E)
//! ```
//!
//! and, for regular sets, the equivalent `max_u exp(−∫_{|z−u|≤1} log|z−u| dμ_E)`,
//! which is reported alongside as a consistency check. Disks and segments
//! have one-dimensional closed forms.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec;
use crate::potential::{equilibrium_for, EquilibriumMeasure, Truncation};
use crate::quadrature::{adaptive_gauss, adaptive_gauss_split, adaptive_simpson, doubling_gauss, golden_section_max};
use crate::sets::{BoundaryParam, BoundaryPiece, CompactSet, Geometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    DiskClosedForm,
    SegmentClosedForm,
    DiamShortcut,
    GeneralQuadrature,
}

/// A computed constant with the boundary point attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorConstantResult {
    pub value: f64,
    pub maximizer: Complex64,
    pub method: Method,
    pub error_estimate: f64,
}

impl Serialize for FactorConstantResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FactorConstantResult", 4)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("maximizer", &[self.maximizer.re, self.maximizer.im])?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("error_estimate", &self.error_estimate)?;
        st.end()
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Closed form for the closed disk of radius `r`:
/// `1/r` for `r ≤ 1/2`, else `(1/r)·exp((1/π)∫₀^{π−2 arcsin(1/2r)} log(2r cos(x/2)) dx)`.
pub fn constant_disk(r: f64, tol: f64) -> Result<FactorConstantResult> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    check_tol(tol)?;
    let maximizer = Complex64::new(r, 0.0);
    if r <= 0.5 {
        return Ok(FactorConstantResult { value: 1.0 / r, maximizer, method: Method::DiskClosedForm, error_estimate: 0.0 });
    }
    let upper = PI - 2.0 * (0.5 / r).asin();
    let integrand = |x: f64| (2.0 * r * (0.5 * x).cos()).ln();
    // 2r·cos(x/2) = 1 at the upper limit
    let end = integrand(upper);
    if end.abs() > 1e-12 {
        return Err(Error::NotConverged { what: "disk integrand endpoint check", tol: 1e-12, iterations: 0 });
    }
    let integral = adaptive_simpson(&integrand, 0.0, upper, tol / 10.0)?;
    let value = (integral.value / PI).exp() / r;
    Ok(FactorConstantResult {
        value,
        maximizer,
        method: Method::DiskClosedForm,
        error_estimate: value * integral.error / PI,
    })
}

/// Closed form for `[-a, a]`: `2/a` for `a ≤ 1/2`, else
/// `(2/a)·exp(∫_{1−a}^{a} log(t+a)/(π√(a²−t²)) dt)`, integrated in `t = a·cos θ`.
pub fn constant_segment(a: f64, tol: f64) -> Result<FactorConstantResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-length must be positive, got {a}")));
    }
    check_tol(tol)?;
    let maximizer = Complex64::new(a, 0.0);
    if a <= 0.5 {
        return Ok(FactorConstantResult {
            value: 2.0 / a,
            maximizer,
            method: Method::SegmentClosedForm,
            error_estimate: 0.0,
        });
    }
    let upper = ((1.0 - a) / a).acos();
    // log(a(1 + cos θ)) = log(2a) + 2 log cos(θ/2), stable near θ = π
    let ln2a = LN_2 + a.ln();
    let integrand = |theta: f64| (ln2a + 2.0 * (0.5 * theta).cos().ln()) / PI;
    let integral = doubling_gauss(&integrand, 0.0, upper, tol / 10.0)?;
    let value = 2.0 / a * integral.value.exp();
    Ok(FactorConstantResult {
        value,
        maximizer,
        method: Method::SegmentClosedForm,
        error_estimate: value * integral.error,
    })
}

/// `1/cap(E)` when `diam(E) ≤ 1`, where no point of `E` is at distance
/// more than 1 from the boundary maximizer; `None` otherwise.
pub fn constant_diam_shortcut(set: &CompactSet, measure: &EquilibriumMeasure) -> Option<FactorConstantResult> {
    if set.diameter() > 1.0 || !(measure.capacity() > 0.0 && measure.capacity().is_finite()) {
        return None;
    }
    let maximizer = set.point_at(BoundaryParam { piece: 0, s: 0.0 });
    Some(FactorConstantResult {
        value: 1.0 / measure.capacity(),
        maximizer,
        method: Method::DiamShortcut,
        error_estimate: 0.0,
    })
}

/// General-path result with the internal consistency data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralDiagnostics {
    pub result: FactorConstantResult,
    /// `exp(∫_{|z−u|≥1} log|z−u| dμ)/cap` at the maximizer.
    pub far_form: f64,
    /// `exp(−∫_{|z−u|≤1} log|z−u| dμ)` at the maximizer; regular sets only.
    pub near_form: Option<f64>,
    /// Improvement of the log objective achieved by the last refinement step.
    pub refine_increment: f64,
    /// Node terms floored because the maximizer hit a node.
    pub floored: usize,
}

impl GeneralDiagnostics {
    pub fn gap(&self) -> Option<f64> {
        self.near_form.map(|v| (v - self.far_form).abs())
    }
}

/// Log-objective differences below this are ties; the earlier candidate wins.
const TIE_TOL: f64 = 1e-10;

/// The constant from a discretized equilibrium measure and a scan of
/// `candidates` boundary points refined by golden-section search.
pub fn constant_general(
    set: &CompactSet,
    measure: &EquilibriumMeasure,
    candidates: usize,
    tol: f64,
) -> Result<FactorConstantResult> {
    Ok(constant_general_detailed(set, measure, candidates, tol)?.result)
}

pub fn constant_general_detailed(
    set: &CompactSet,
    measure: &EquilibriumMeasure,
    candidates: usize,
    tol: f64,
) -> Result<GeneralDiagnostics> {
    check_tol(tol)?;
    if candidates < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 candidates, got {candidates}")));
    }
    let cap = measure.capacity();
    if !(cap > 0.0 && cap.is_finite()) {
        return Err(Error::InvalidArgument(format!("capacity must be positive, got {cap}")));
    }
    let pieces = set.boundary_pieces();
    let params = set.candidate_params(candidates)?;
    let objective = |z: Complex64| measure.truncated_log_integral(z, Truncation::Far).value;

    let values = exec::map(&params, |p| objective(pieces[p.piece].point(p.s)));
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] + TIE_TOL {
            best = i;
        }
    }
    let mut best_param = params[best];
    let mut best_value = values[best];

    let mut refine_increment = 0.0;
    let piece = pieces[best_param.piece];
    if matches!(piece, BoundaryPiece::Circle { .. } | BoundaryPiece::Interval { .. }) {
        let same: Vec<f64> = params.iter().filter(|p| p.piece == best_param.piece).map(|p| p.s).collect();
        let k = same.iter().position(|&s| s == best_param.s).unwrap_or(0);
        let (lo, hi) = if piece.is_periodic() {
            let (d0, d1) = piece.domain();
            let period = d1 - d0;
            let prev = if k == 0 { same[same.len() - 1] - period } else { same[k - 1] };
            let next = if k + 1 == same.len() { same[0] + period } else { same[k + 1] };
            (prev, next)
        } else {
            (same[k.saturating_sub(1)], same[(k + 1).min(same.len() - 1)])
        };
        if hi > lo {
            let f = |s: f64| objective(piece.point(s));
            let g = golden_section_max(&f, lo, hi, 1e-10 * (hi - lo).max(1.0), 0.0, 200);
            if g.value > best_value + TIE_TOL {
                refine_increment = g.value - best_value;
                best_value = g.value;
                let (d0, d1) = piece.domain();
                let s = if piece.is_periodic() { d0 + (g.x - d0).rem_euclid(d1 - d0) } else { g.x };
                best_param = BoundaryParam { piece: best_param.piece, s };
            }
        }
    }

    let maximizer = set.point_at(best_param);
    let far_form = best_value.exp() / cap;
    let floored = measure.truncated_log_integral(maximizer, Truncation::Far).floored;
    let near_form = if set.is_regular() {
        Some((-measure.truncated_log_integral(maximizer, Truncation::Near).value).exp())
    } else {
        None
    };
    let gap = near_form.map_or(0.0, |v| (v - far_form).abs());
    Ok(GeneralDiagnostics {
        result: FactorConstantResult {
            value: far_form,
            maximizer,
            method: Method::GeneralQuadrature,
            error_estimate: gap + far_form * refine_increment,
        },
        far_form,
        near_form,
        refine_increment,
        floored,
    })
}

/// Dispatch used by front ends: disk and segment closed forms, then the
/// small-diameter shortcut, then the general path on an approximate measure.
pub fn constant_for_set(set: &CompactSet, tol: f64, node_count: usize, candidates: usize) -> Result<FactorConstantResult> {
    match set.geometry() {
        Geometry::Disk { center, radius } => {
            let mut r = constant_disk(*radius, tol)?;
            r.maximizer += center;
            Ok(r)
        }
        Geometry::Segment { half_length } => constant_segment(*half_length, tol),
        _ => {
            let measure = equilibrium_for(set, node_count)?;
            match constant_diam_shortcut(set, &measure) {
                Some(r) => Ok(r),
                None => constant_general(set, &measure, candidates, tol),
            }
        }
    }
}

/// `f(u) = ∫_{[-a,a] \ (u−1,u+1)} log|t−u| / (π√(a²−t²)) dt` and its
/// derivative, whose sign pattern puts the maximum of `f` at `u = ±a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentObjective {
    a: f64,
}

/// `f'(u)` with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveDerivative {
    pub value: f64,
    /// Evaluated by the closed form on `(1−a, a−1)`.
    pub closed_form: bool,
    /// `u` sits on `±(a−1)`, where only one-sided integrals are defined.
    pub band_boundary: bool,
}

impl SegmentObjective {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!("half-length must be positive, got {a}")));
        }
        Ok(SegmentObjective { a })
    }

    pub fn half_length(&self) -> f64 {
        self.a
    }

    /// `f(u)` for real `u ∈ [-a, a]`, computed as `(1/π)∫₀^π max(log|a cos θ − u|, 0) dθ`.
    pub fn value(&self, u: f64) -> Result<f64> {
        let a = self.a;
        if a <= 0.5 {
            return Ok(0.0);
        }
        let mut breaks = vec![(u / a).clamp(-1.0, 1.0).acos()];
        for x in [u - 1.0, u + 1.0] {
            if x.abs() <= a {
                breaks.push((x / a).acos());
            }
        }
        let integrand = |theta: f64| (a * theta.cos() - u).abs().ln().max(0.0) / PI;
        Ok(adaptive_gauss_split(&integrand, 0.0, PI, &breaks, 1e-14)?.value)
    }

    /// `f'(u)` for `u ∈ (−a, a)`, `a > 1/2`.
    pub fn derivative(&self, u: f64) -> Result<ObjectiveDerivative> {
        let a = self.a;
        if a <= 0.5 {
            return Err(Error::InvalidArgument(format!("derivative needs a > 1/2, got {a}")));
        }
        if !(u > -a && u < a) {
            return Err(Error::InvalidArgument(format!("u = {u} outside (−{a}, {a})")));
        }
        let edge = 1e-12 * a.max(1.0);
        let band_boundary = (u - (1.0 - a)).abs() <= edge || (u - (a - 1.0)).abs() <= edge;
        if !band_boundary && u > 1.0 - a && u < a - 1.0 {
            let root = (a * a - u * u).sqrt();
            let num = a * a - u * u + u + (a * a - (u - 1.0).powi(2)).sqrt() * root;
            let den = a * a - u * u - u + (a * a - (u + 1.0).powi(2)).sqrt() * root;
            return Ok(ObjectiveDerivative {
                value: (num / den).ln() / (PI * root),
                closed_form: true,
                band_boundary: false,
            });
        }
        Ok(ObjectiveDerivative { value: self.derivative_by_quadrature(u)?, closed_form: false, band_boundary })
    }

    /// `∫ dt / (π(u−t)√(a²−t²))` over `t ≥ u+1` and `t ≤ u−1`, valid for every `u`.
    pub fn derivative_by_quadrature(&self, u: f64) -> Result<f64> {
        let a = self.a;
        let integrand = |theta: f64| 1.0 / (PI * (u - a * theta.cos()));
        let mut total = 0.0;
        if u + 1.0 < a {
            total += adaptive_gauss(&integrand, 0.0, ((u + 1.0) / a).acos(), 1e-14)?.value;
        }
        if u - 1.0 > -a {
            total += adaptive_gauss(&integrand, ((u - 1.0) / a).acos(), PI, 1e-14)?.value;
        }
        Ok(total)
    }
}

/// `a^{m−n}·2^{n−1}·∏_{k=1}^{m}(1 + cos((2k−1)π/(2n)))`, evaluated in log form.
pub fn borwein_bound(n: usize, m: usize, a: f64) -> Result<f64> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-length must be positive, got {a}")));
    }
    let log = (m as f64 - n as f64) * a.ln() + (n - 1) as f64 * LN_2 + log_cos_product(n, m);
    Ok(log.exp())
}

/// `(2^{m−1} ∏_{k=1}^{m}(1 + cos((2k−1)π/(2n))))^{1/n}` with `m = ⌊2n/3⌋`.
pub fn borwein_limit(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n ≥ 3, got {n}")));
    }
    let m = 2 * n / 3;
    let log = (m - 1) as f64 * LN_2 + log_cos_product(n, m);
    Ok((log / n as f64).exp())
}

/// `Σ_{k=1}^{m} log(1 + cos((2k−1)π/(2n)))` using `1 + cos x = 2cos²(x/2)`.
fn log_cos_product(n: usize, m: usize) -> f64 {
    (1..=m)
        .map(|k| {
            let half = (2 * k - 1) as f64 * PI / (4 * n) as f64;
            LN_2 + 2.0 * half.cos().ln()
        })
        .sum()
}
