//! Monic polynomials in root form and their sup norms on compact sets.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::quadrature::golden_section_max;
use crate::sets::{parse_float, parse_points, BoundaryPiece, CompactSet, Geometry};

/// `p(z) = ∏ (z − z_k)`. The leading coefficient is 1 by construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonicPolynomial {
    roots: Vec<Complex64>,
}

/// Estimated `log ‖p‖_E` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNorm {
    pub log_value: f64,
    pub argmax: Complex64,
    /// Bound on the remaining error of `log_value` from the final refinement bracket.
    pub log_error: f64,
}

impl SupNorm {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

impl MonicPolynomial {
    pub fn new(roots: Vec<Complex64>) -> Self {
        MonicPolynomial { roots }
    }

    pub fn from_real_roots(roots: &[f64]) -> Self {
        Self::new(roots.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, r| acc * (z - r))
    }

    /// `Σ log|z − z_k|`; `-∞` at a root.
    pub fn log_abs_evaluate(&self, z: Complex64) -> f64 {
        self.roots.iter().map(|r| (z - r).norm().ln()).sum()
    }

    /// The monic factor made of the roots satisfying `keep`, with multiplicity.
    pub fn factor_by_predicate<F: Fn(Complex64) -> bool>(&self, keep: F) -> MonicPolynomial {
        MonicPolynomial::new(self.roots.iter().copied().filter(|&z| keep(z)).collect())
    }

    /// Splits into `(q, r)` with `p = q·r`, where `q` holds the roots satisfying `keep`.
    pub fn split_by_predicate<F: Fn(Complex64) -> bool>(&self, keep: F) -> (MonicPolynomial, MonicPolynomial) {
        let (q, r): (Vec<_>, Vec<_>) = self.roots.iter().partition(|&&z| keep(z));
        (MonicPolynomial::new(q), MonicPolynomial::new(r))
    }

    /// Estimate of `log ‖p‖_E` with error at most `tol` in the log (≈ relative error).
    ///
    /// By the maximum principle only `∂E` is searched. The boundary is scanned
    /// on `max(64, 8n)` samples per smooth piece, then every grid local
    /// maximum close to the best one is refined by golden-section search in
    /// the boundary parameter.
    pub fn sup_norm(&self, set: &CompactSet, tol: f64) -> Result<SupNorm> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        let pieces = set.boundary_pieces();
        if self.roots.is_empty() {
            return Ok(SupNorm { log_value: 0.0, argmax: pieces[0].point(0.0), log_error: 0.0 });
        }
        let base = (8 * self.degree()).max(64);
        let counts = sample_counts(set, &pieces, base);

        let mut samples: Vec<(usize, f64)> = Vec::new();
        let mut ranges = Vec::with_capacity(pieces.len());
        for (i, (piece, &count)) in pieces.iter().zip(&counts).enumerate() {
            let start = samples.len();
            samples.extend(piece.grid(count).into_iter().map(|s| (i, s)));
            ranges.push(start..samples.len());
        }
        let values = exec::map(&samples, |&(i, s)| self.log_abs_evaluate(pieces[i].point(s)));
        let grid_best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if grid_best == f64::NEG_INFINITY {
            // every sample is a root: only possible for a degenerate boundary
            return Err(Error::InvalidArgument("polynomial vanishes on every boundary sample".into()));
        }

        // brackets around grid local maxima that can still beat the grid best
        let mut brackets = Vec::new();
        for (piece_idx, range) in ranges.iter().enumerate() {
            let piece = &pieces[piece_idx];
            let vals = &values[range.clone()];
            let ss: Vec<f64> = samples[range.clone()].iter().map(|x| x.1).collect();
            let m = vals.len();
            for k in 0..m {
                if vals[k] < grid_best - REFINE_WINDOW {
                    continue;
                }
                let (lo, hi) = if piece.is_periodic() {
                    let h = ss[1] - ss[0];
                    let prev = vals[(k + m - 1) % m];
                    let next = vals[(k + 1) % m];
                    if vals[k] < prev || vals[k] < next {
                        continue;
                    }
                    (ss[k] - h, ss[k] + h)
                } else {
                    let prev = if k > 0 { vals[k - 1] } else { f64::NEG_INFINITY };
                    let next = if k + 1 < m { vals[k + 1] } else { f64::NEG_INFINITY };
                    if vals[k] < prev || vals[k] < next {
                        continue;
                    }
                    (ss[k.saturating_sub(1)], ss[(k + 1).min(m - 1)])
                };
                brackets.push((piece_idx, lo, hi));
            }
        }

        let refined = exec::map(&brackets, |&(i, lo, hi)| {
            let piece = pieces[i];
            let f = |s: f64| self.log_abs_evaluate(piece.point(s));
            let x_tol = 4.0 * f64::EPSILON * (1.0 + lo.abs().max(hi.abs()));
            (i, golden_section_max(&f, lo, hi, x_tol, 0.5 * tol, MAX_GOLDEN))
        });

        let mut best: Option<SupNorm> = None;
        for (i, g) in refined {
            if !g.converged {
                return Err(Error::NotConverged { what: "sup norm refinement", tol, iterations: g.iterations });
            }
            let candidate = SupNorm { log_value: g.value, argmax: pieces[i].point(g.x), log_error: g.spread };
            if best.is_none_or(|b| candidate.log_value > b.log_value) {
                best = Some(candidate);
            }
        }
        best.ok_or(Error::NotConverged { what: "sup norm refinement", tol, iterations: 0 })
    }

    /// Reads a root list: one `re im` pair per line.
    pub fn read_root_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::new(parse_points(&text)?))
    }

    /// Parses `@<path>` or `chebyshev:n=<int>[,a=<float>]`. Without `a`, the
    /// Chebyshev polynomial lives on `[-default_a, default_a]`.
    pub fn parse_spec(spec: &str, default_a: f64) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix('@') {
            return Self::read_root_file(Path::new(path));
        }
        let body = spec
            .strip_prefix("chebyshev:")
            .ok_or_else(|| Error::Parse(format!("expected @<file> or chebyshev:n=<int>, got {spec:?}")))?;
        let mut n = None;
        let mut a = default_a;
        for kv in body.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
            match k.trim() {
                "n" => {
                    n = Some(v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {v:?}")))?)
                }
                "a" => a = parse_float(v)?,
                other => return Err(Error::Parse(format!("unknown chebyshev parameter {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("chebyshev spec needs n=<int>".into()))?;
        monic_chebyshev(n, a)
    }
}

const REFINE_WINDOW: f64 = 0.25;
const MAX_GOLDEN: usize = 200;

fn sample_counts(set: &CompactSet, pieces: &[BoundaryPiece], base: usize) -> Vec<usize> {
    match set.geometry() {
        Geometry::BoundaryCloud { .. } => {
            let total = base.max(4 * pieces.len());
            let perimeter: f64 = pieces.iter().map(BoundaryPiece::length).sum();
            pieces
                .iter()
                .map(|p| ((total as f64 * p.length() / perimeter).round() as usize).max(2))
                .collect()
        }
        _ => vec![base; pieces.len()],
    }
}

/// Monic Chebyshev polynomial of degree `n` on `[-a, a]`:
/// roots `a·cos((2k−1)π/(2n))`, `k = 1..n`.
pub fn monic_chebyshev(n: usize, a: f64) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("Chebyshev degree must be at least 1".into()));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-length must be positive, got {a}")));
    }
    let roots = (1..=n)
        .map(|k| {
            let x = a * ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos();
            // cos(π/2) is not exactly zero in f64
            Complex64::new(if x.abs() < 1e-15 * a { 0.0 } else { x }, 0.0)
        })
        .collect();
    Ok(MonicPolynomial::new(roots))
}
