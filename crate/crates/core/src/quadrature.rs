//! One-dimensional quadrature and maximization primitives.

use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Value of the Legendre polynomial `P_m(x)` and its derivative.
pub fn legendre(m: usize, x: f64) -> (f64, f64) {
    if m == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let mf = m as f64;
    let dp = if (x * x - 1.0).abs() < 1e-300 {
        // P'_m(±1) = (±1)^{m+1} m(m+1)/2
        let s = if x > 0.0 || m % 2 == 1 { 1.0 } else { -1.0 };
        s * mf * (mf + 1.0) / 2.0
    } else {
        mf * (x * p - p_prev) / (x * x - 1.0)
    };
    (p, dp)
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

const PANEL_ORDER: usize = 15;

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Fixed 15-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Result of an adaptive integration: value plus an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Globally adaptive 15-point Gauss–Legendre quadrature.
///
/// The interval with the largest local error estimate is bisected until the
/// summed estimate drops below `abs_tol`. Integrable endpoint singularities
/// (logarithmic, inverse square root) are resolved by repeated bisection
/// toward the singular end.
pub fn adaptive_gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let mut heap = BinaryHeap::new();
    let root = Piece::new(f, a, b, gauss_panel(f, a, b));
    let mut total_err = root.error;
    heap.push(root);
    let mut settled = Vec::new();
    let mut splits = 0;
    while total_err > abs_tol && splits < MAX_SPLITS {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let scale = worst.a.abs().max(worst.b.abs());
        if worst.b - worst.a <= MIN_WIDTH_ULPS * f64::EPSILON * scale {
            // narrower pieces would place nodes on the endpoints
            settled.push(worst);
            continue;
        }
        let m = 0.5 * (worst.a + worst.b);
        total_err -= worst.error;
        let l = Piece::new(f, worst.a, m, worst.left);
        let r = Piece::new(f, m, worst.b, worst.right);
        total_err += l.error + r.error;
        heap.push(l);
        heap.push(r);
        splits += 1;
    }
    let mut pieces = heap.into_vec();
    pieces.append(&mut settled);
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = pieces.iter().map(|p| p.left + p.right).sum();
    let error: f64 = pieces.iter().map(|p| p.error).sum();
    if error > abs_tol.max(1e-13) && splits >= MAX_SPLITS {
        return Err(Error::NotConverged {
            what: "adaptive Gauss-Legendre",
            tol: abs_tol,
            iterations: splits,
        });
    }
    Ok(Integral { value, error })
}

const MAX_SPLITS: usize = 4000;
const MIN_WIDTH_ULPS: f64 = 1024.0;

struct Piece {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl Piece {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let m = 0.5 * (a + b);
        let left = gauss_panel(f, a, m);
        let right = gauss_panel(f, m, b);
        let error = (left + right - whole).abs();
        Piece { a, b, left, right, error }
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates over `[a, b]` split at the given interior breakpoints.
pub fn adaptive_gauss_split<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
) -> Result<Integral> {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let pieces = cuts.len() + 1;
    let mut out = Integral { value: 0.0, error: 0.0 };
    let mut lo = a;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        let part = adaptive_gauss(f, lo, hi, abs_tol / pieces as f64)?;
        out.value += part.value;
        out.error += part.error;
        lo = hi;
    }
    Ok(out)
}

struct SimpsonState {
    hit_cap: bool,
    error: f64,
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut state = SimpsonState { hit_cap: false, error: 0.0 };
    let value = simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0, &mut state);
    if state.hit_cap {
        return Err(Error::NotConverged {
            what: "adaptive Simpson",
            tol,
            iterations: SIMPSON_DEPTH,
        });
    }
    Ok(Integral { value, error: state.error })
}

const SIMPSON_DEPTH: usize = 50;

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    state: &mut SimpsonState,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        state.error += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    if depth >= SIMPSON_DEPTH {
        state.hit_cap = true;
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, state)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, state)
}

/// Composite Gauss–Legendre with panel doubling until two successive
/// estimates differ by at most `tol`. The returned error is the last increment.
pub fn doubling_gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    let composite = |panels: usize| {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| gauss_panel(f, a + k as f64 * h, a + (k + 1) as f64 * h))
            .sum::<f64>()
    };
    let mut panels = 1;
    let mut prev = composite(panels);
    for _ in 0..20 {
        panels *= 2;
        let next = composite(panels);
        let inc = (next - prev).abs();
        if inc <= tol {
            return Ok(Integral { value: next, error: inc });
        }
        prev = next;
    }
    Err(Error::NotConverged {
        what: "Gauss-Legendre doubling",
        tol,
        iterations: 20,
    })
}

/// Outcome of a golden-section search for a maximum.
#[derive(Debug, Clone, Copy)]
pub struct GoldenMax {
    pub x: f64,
    pub value: f64,
    /// Final bracket.
    pub lo: f64,
    pub hi: f64,
    /// Largest drop from the best value to a bracket end.
    pub spread: f64,
    /// Improvement of the best value on the last iteration.
    pub last_increment: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `x_tol` or when both bracket ends
/// are within `f_tol` of the best value seen. The ends themselves are
/// evaluated, so a maximum sitting on the boundary is found exactly.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    x_tol: f64,
    f_tol: f64,
    max_iter: usize,
) -> GoldenMax {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);

    let best_of = |pts: [(f64, f64); 4]| {
        let mut best = pts[0];
        for p in &pts[1..] {
            if p.1 > best.1 {
                best = *p;
            }
        }
        best
    };

    let mut best = best_of([(a, fa), (c, fc), (d, fd), (b, fb)]);
    let mut last_increment = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let spread = best.1 - fa.min(fb);
        if (b - a) <= x_tol || spread <= f_tol {
            converged = true;
            break;
        }
        iterations += 1;
        if fc >= fd {
            b = d;
            fb = fd;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            fa = fc;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        let next = best_of([(a, fa), (c, fc), (d, fd), (b, fb)]);
        let next = if next.1 >= best.1 { next } else { best };
        last_increment = next.1 - best.1;
        best = next;
    }
    let spread = best.1 - fa.min(fb);
    if !converged && ((b - a) <= x_tol || spread <= f_tol) {
        converged = true;
    }
    GoldenMax {
        x: best.0,
        value: best.1,
        lo: a,
        hi: b,
        spread,
        last_increment: if last_increment.is_finite() { last_increment } else { 0.0 },
        iterations,
        converged,
    }
}
