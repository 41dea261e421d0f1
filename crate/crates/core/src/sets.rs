//! Compact planar sets, their boundaries, and boundary sampling.
//!
//! Disks and segments carry exact geometry. Finite unions of real intervals
//! and boundary point clouds cover sets without closed-form potentials; the
//! latter describe a polygon (or polyline) through the given points.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SetKind {
    Disk,
    Segment,
    SegmentUnion,
    BoundaryCloud,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SetKind::Disk => "disk",
            SetKind::Segment => "segment",
            SetKind::SegmentUnion => "union",
            SetKind::BoundaryCloud => "cloud",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Disk { center: Complex64, radius: f64 },
    /// The interval `[-half_length, half_length]` on the real axis.
    Segment { half_length: f64 },
    /// Disjoint real intervals `(lo, hi)`, sorted ascending.
    SegmentUnion(Vec<(f64, f64)>),
    BoundaryCloud { points: Vec<Complex64>, closed: bool },
}

/// An immutable compact set `E ⊂ ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    geometry: Geometry,
    regular: bool,
}

/// One smooth piece of `∂E` with its parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPiece {
    /// `center + radius·e^{is}`, `s ∈ [0, 2π)`, periodic.
    Circle { center: Complex64, radius: f64 },
    /// `mid + half·cos(s)`, `s ∈ [0, π]`; `s = 0` is the right endpoint.
    Interval { mid: f64, half: f64 },
    /// `from + s·(to − from)`, `s ∈ [0, 1]`.
    Edge { from: Complex64, to: Complex64 },
}

impl BoundaryPiece {
    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            BoundaryPiece::Circle { center, radius } => center + Complex64::from_polar(radius, s),
            BoundaryPiece::Interval { mid, half } => Complex64::new(mid + half * s.cos(), 0.0),
            BoundaryPiece::Edge { from, to } => from + (to - from) * s,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            BoundaryPiece::Circle { .. } => (0.0, TAU),
            BoundaryPiece::Interval { .. } => (0.0, PI),
            BoundaryPiece::Edge { .. } => (0.0, 1.0),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BoundaryPiece::Circle { .. })
    }

    pub fn length(&self) -> f64 {
        match *self {
            BoundaryPiece::Circle { radius, .. } => TAU * radius,
            BoundaryPiece::Interval { half, .. } => 2.0 * half,
            BoundaryPiece::Edge { from, to } => (to - from).norm(),
        }
    }

    /// `count` parameters covering the piece. Periodic pieces are sampled
    /// uniformly without repeating the seam; intervals uniformly in `s`
    /// (Chebyshev-like in the real coordinate) including both ends.
    pub fn grid(&self, count: usize) -> Vec<f64> {
        let (lo, hi) = self.domain();
        if self.is_periodic() {
            (0..count).map(|k| lo + (hi - lo) * k as f64 / count as f64).collect()
        } else {
            let count = count.max(2);
            (0..count)
                .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                .collect()
        }
    }
}

/// A location on `∂E`: piece index plus parameter. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryParam {
    pub piece: usize,
    pub s: f64,
}

impl CompactSet {
    pub fn disk(radius: f64) -> Result<Self> {
        Self::disk_centered(Complex64::new(0.0, 0.0), radius)
    }

    pub fn disk_centered(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidGeometry(format!("disk radius must be positive, got {radius}")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidGeometry("disk center must be finite".into()));
        }
        Ok(CompactSet { geometry: Geometry::Disk { center, radius }, regular: true })
    }

    pub fn segment(half_length: f64) -> Result<Self> {
        if !(half_length > 0.0 && half_length.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "segment half-length must be positive, got {half_length}"
            )));
        }
        Ok(CompactSet { geometry: Geometry::Segment { half_length }, regular: true })
    }

    pub fn segment_union(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidGeometry("segment union needs at least one interval".into()));
        }
        let mut intervals = intervals;
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidGeometry(format!("interval [{lo}, {hi}] has empty interior")));
            }
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in intervals.windows(2) {
            if w[1].0 <= w[0].1 {
                return Err(Error::InvalidGeometry(format!(
                    "intervals [{}, {}] and [{}, {}] overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(CompactSet { geometry: Geometry::SegmentUnion(intervals), regular: true })
    }

    /// A set described by boundary samples. `regular` is the caller's assertion.
    pub fn boundary_cloud(points: Vec<Complex64>, closed: bool, regular: bool) -> Result<Self> {
        if points.iter().any(|p| !(p.re.is_finite() && p.im.is_finite())) {
            return Err(Error::InvalidGeometry("cloud points must be finite".into()));
        }
        let mut distinct: Vec<Complex64> = Vec::with_capacity(points.len());
        for &p in &points {
            if !distinct.iter().any(|&q| (q - p).norm() == 0.0) {
                distinct.push(p);
            }
        }
        if distinct.len() < 3 {
            return Err(Error::InvalidGeometry(format!(
                "boundary cloud needs at least 3 distinct points, got {}",
                distinct.len()
            )));
        }
        Ok(CompactSet { geometry: Geometry::BoundaryCloud { points, closed }, regular })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn kind(&self) -> SetKind {
        match self.geometry {
            Geometry::Disk { .. } => SetKind::Disk,
            Geometry::Segment { .. } => SetKind::Segment,
            Geometry::SegmentUnion(_) => SetKind::SegmentUnion,
            Geometry::BoundaryCloud { .. } => SetKind::BoundaryCloud,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Euclidean diameter `max |z − ζ|` over `E`.
    pub fn diameter(&self) -> f64 {
        match &self.geometry {
            Geometry::Disk { radius, .. } => 2.0 * radius,
            Geometry::Segment { half_length } => 2.0 * half_length,
            Geometry::SegmentUnion(iv) => iv[iv.len() - 1].1 - iv[0].0,
            Geometry::BoundaryCloud { points, .. } => {
                let mut d: f64 = 0.0;
                for (i, p) in points.iter().enumerate() {
                    for q in &points[i + 1..] {
                        d = d.max((p - q).norm());
                    }
                }
                d
            }
        }
    }

    /// Distance from `z` to the farthest point of `E`.
    pub fn farthest_distance(&self, z: Complex64) -> f64 {
        match &self.geometry {
            Geometry::Disk { center, radius } => (z - center).norm() + radius,
            Geometry::Segment { half_length: a } => {
                (z - *a).norm().max((z + *a).norm())
            }
            Geometry::SegmentUnion(iv) => {
                (z - iv[0].0).norm().max((z - iv[iv.len() - 1].1).norm())
            }
            Geometry::BoundaryCloud { points, .. } => {
                points.iter().map(|p| (z - p).norm()).fold(0.0, f64::max)
            }
        }
    }

    /// Distance from `z` to `E`. Clouds are treated as their polygon boundary.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match &self.geometry {
            Geometry::Disk { center, radius } => ((z - center).norm() - radius).max(0.0),
            Geometry::Segment { half_length: a } => {
                Complex64::new(z.re - z.re.clamp(-a, *a), z.im).norm()
            }
            Geometry::SegmentUnion(iv) => iv
                .iter()
                .map(|&(lo, hi)| Complex64::new(z.re - z.re.clamp(lo, hi), z.im).norm())
                .fold(f64::INFINITY, f64::min),
            Geometry::BoundaryCloud { .. } => self
                .boundary_pieces()
                .iter()
                .map(|piece| match *piece {
                    BoundaryPiece::Edge { from, to } => point_edge_distance(z, from, to),
                    _ => unreachable!(),
                })
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Dilation by `alpha > 0` about the origin.
    pub fn scale(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("dilation factor must be positive, got {alpha}")));
        }
        let geometry = match &self.geometry {
            Geometry::Disk { center, radius } => {
                Geometry::Disk { center: center * alpha, radius: radius * alpha }
            }
            Geometry::Segment { half_length } => Geometry::Segment { half_length: half_length * alpha },
            Geometry::SegmentUnion(iv) => {
                Geometry::SegmentUnion(iv.iter().map(|&(l, h)| (l * alpha, h * alpha)).collect())
            }
            Geometry::BoundaryCloud { points, closed } => Geometry::BoundaryCloud {
                points: points.iter().map(|p| p * alpha).collect(),
                closed: *closed,
            },
        };
        Ok(CompactSet { geometry, regular: self.regular })
    }

    /// Smooth pieces of `∂E` in canonical order.
    pub fn boundary_pieces(&self) -> Vec<BoundaryPiece> {
        match &self.geometry {
            Geometry::Disk { center, radius } => {
                vec![BoundaryPiece::Circle { center: *center, radius: *radius }]
            }
            Geometry::Segment { half_length } => {
                vec![BoundaryPiece::Interval { mid: 0.0, half: *half_length }]
            }
            Geometry::SegmentUnion(iv) => iv
                .iter()
                .map(|&(lo, hi)| BoundaryPiece::Interval { mid: 0.5 * (lo + hi), half: 0.5 * (hi - lo) })
                .collect(),
            Geometry::BoundaryCloud { points, closed } => {
                let mut edges: Vec<BoundaryPiece> = points
                    .windows(2)
                    .map(|w| BoundaryPiece::Edge { from: w[0], to: w[1] })
                    .collect();
                if *closed {
                    edges.push(BoundaryPiece::Edge { from: points[points.len() - 1], to: points[0] });
                }
                edges
            }
        }
    }

    pub fn point_at(&self, param: BoundaryParam) -> Complex64 {
        self.boundary_pieces()[param.piece].point(param.s)
    }

    /// Candidate locations on `∂E` for maximizing over the boundary, in
    /// parameter order.
    ///
    /// Disk: `count` equally spaced angles starting at angle 0. Segment: both
    /// endpoints plus `count − 2` Chebyshev points. Union: every interval gets
    /// its endpoints and the rest is shared by length. Cloud: the points.
    pub fn candidate_params(&self, count: usize) -> Result<Vec<BoundaryParam>> {
        if count < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 boundary candidates, got {count}")));
        }
        let pieces = self.boundary_pieces();
        let params = match &self.geometry {
            Geometry::Disk { .. } => (0..count)
                .map(|k| BoundaryParam { piece: 0, s: TAU * k as f64 / count as f64 })
                .collect(),
            Geometry::Segment { .. } => chebyshev_interval_params(0, count),
            Geometry::SegmentUnion(iv) => {
                if count < 2 * iv.len() {
                    return Err(Error::InvalidArgument(format!(
                        "need at least {} candidates for {} intervals",
                        2 * iv.len(),
                        iv.len()
                    )));
                }
                let lengths: Vec<f64> = pieces.iter().map(BoundaryPiece::length).collect();
                let shares = apportion(count - 2 * iv.len(), &lengths);
                shares
                    .iter()
                    .enumerate()
                    .flat_map(|(i, extra)| chebyshev_interval_params(i, extra + 2))
                    .collect()
            }
            Geometry::BoundaryCloud { points, closed } => {
                let n = points.len();
                (0..n)
                    .map(|i| {
                        if i + 1 == n && !closed {
                            BoundaryParam { piece: i - 1, s: 1.0 }
                        } else {
                            BoundaryParam { piece: i, s: 0.0 }
                        }
                    })
                    .collect()
            }
        };
        Ok(params)
    }

    /// Points on `∂E` used as candidates for the boundary maximum.
    pub fn boundary_candidates(&self, count: usize) -> Result<Vec<Complex64>> {
        let pieces = self.boundary_pieces();
        Ok(self
            .candidate_params(count)?
            .into_iter()
            .map(|p| pieces[p.piece].point(p.s))
            .collect())
    }

    /// Parses the textual descriptor syntax:
    /// `disk:r=<float>`, `segment:a=<float>`, `union:[l1,u1];[l2,u2];...`,
    /// or `cloud:@<path>` with one `x y` point per line.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <kind>:<params>, got {text:?}")))?;
        match kind {
            "disk" => Self::disk(parse_keyed(body, "r")?),
            "segment" => Self::segment(parse_keyed(body, "a")?),
            "union" => {
                let mut intervals = Vec::new();
                for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                    let inner = part
                        .strip_prefix('[')
                        .and_then(|p| p.strip_suffix(']'))
                        .ok_or_else(|| Error::Parse(format!("interval {part:?} must look like [lo,hi]")))?;
                    let (lo, hi) = inner
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("interval {part:?} must look like [lo,hi]")))?;
                    intervals.push((parse_float(lo)?, parse_float(hi)?));
                }
                Self::segment_union(intervals)
            }
            "cloud" => {
                let path = body
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse("cloud descriptor must be cloud:@<path>".into()))?;
                let points = read_point_file(Path::new(path))?;
                Self::boundary_cloud(points, true, false)
            }
            other => Err(Error::Parse(format!("unknown set kind {other:?}"))),
        }
    }
}

fn chebyshev_interval_params(piece: usize, count: usize) -> Vec<BoundaryParam> {
    let interior = count - 2;
    let mut out = Vec::with_capacity(count);
    out.push(BoundaryParam { piece, s: 0.0 });
    out.extend((1..=interior).map(|j| BoundaryParam {
        piece,
        s: (2 * j - 1) as f64 * PI / (2 * interior) as f64,
    }));
    out.push(BoundaryParam { piece, s: PI });
    out
}

/// Largest-remainder split of `total` proportionally to `lengths`.
fn apportion(total: usize, lengths: &[f64]) -> Vec<usize> {
    let sum: f64 = lengths.iter().sum();
    let exact: Vec<f64> = lengths.iter().map(|l| total as f64 * l / sum).collect();
    let mut shares: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
    let mut left = total - shares.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|&i, &j| (exact[j] - exact[j].floor()).total_cmp(&(exact[i] - exact[i].floor())));
    for i in order {
        if left == 0 {
            break;
        }
        shares[i] += 1;
        left -= 1;
    }
    shares
}

fn point_edge_distance(z: Complex64, from: Complex64, to: Complex64) -> f64 {
    let d = to - from;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - from).norm();
    }
    let t = ((z - from) * d.conj()).re / len2;
    (z - (from + d * t.clamp(0.0, 1.0))).norm()
}

fn parse_keyed(body: &str, key: &str) -> Result<f64> {
    let (k, v) = body
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected {key}=<float>, got {body:?}")))?;
    if k.trim() != key {
        return Err(Error::Parse(format!("expected parameter {key:?}, got {:?}", k.trim())));
    }
    parse_float(v)
}

pub(crate) fn parse_float(s: &str) -> Result<f64> {
    let s = s.trim();
    s.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// Parses `x y` lines into complex points; blank lines and `#` comments are skipped.
pub fn parse_points(text: &str) -> Result<Vec<Complex64>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected two whitespace-separated floats, got {line:?}",
                lineno + 1
            )));
        }
        points.push(Complex64::new(parse_float(fields[0])?, parse_float(fields[1])?));
    }
    Ok(points)
}

pub fn read_point_file(path: &Path) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path)?;
    parse_points(&text)
}
