//! Planar convex-polygon helpers over complex points.

use crate::linalg::C64;

#[inline]
fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Indices of the convex hull vertices in counter-clockwise order
/// (Andrew's monotone chain). Collinear and duplicate points are dropped.
pub fn convex_hull(points: &[C64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .re
            .total_cmp(&points[b].re)
            .then(points[a].im.total_cmp(&points[b].im))
    });
    idx.dedup_by(|a, b| (points[*a] - points[*b]).norm() == 0.0);
    if idx.len() < 3 {
        return idx;
    }
    let scale = points.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let eps = 1e-14 * scale * scale;
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for &i in &idx {
        while hull.len() >= 2 && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= eps {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= eps
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Signed distance from `z` to the boundary of a counter-clockwise convex
/// polygon: positive inside, negative outside (the most violated edge).
/// Returns `None` for polygons with fewer than three vertices.
pub fn signed_margin(vertices: &[C64], z: C64) -> Option<f64> {
    if vertices.len() < 3 {
        return None;
    }
    let n = vertices.len();
    let mut m = f64::INFINITY;
    for k in 0..n {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        let len = (b - a).norm();
        if len == 0.0 {
            continue;
        }
        m = m.min(cross(a, b, z) / len);
    }
    Some(m)
}

/// Distance from `z` to the segment `[a, b]` and the segment parameter of the
/// nearest point.
pub fn segment_distance(a: C64, b: C64, z: C64) -> (f64, f64) {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return ((z - a).norm(), 0.0);
    }
    let t = ((z - a) * d.conj()).re / len2;
    let tc = t.clamp(0.0, 1.0);
    ((a + d * tc - z).norm(), t)
}

/// The two points where the line through `z` with direction `dir` meets the
/// boundary of a convex polygon, ordered along `dir`. Each crossing carries
/// the indices (into `vertices`) of the edge it lies on and the edge parameter.
pub fn chord(vertices: &[C64], z: C64, dir: C64) -> Option<[(C64, usize, usize, f64); 2]> {
    let n = vertices.len();
    if n < 2 {
        return None;
    }
    let dir = dir / dir.norm();
    // rotate so the line is horizontal through the origin
    let rot = dir.conj();
    let local: Vec<C64> = vertices.iter().map(|&v| (v - z) * rot).collect();
    let mut crossings: Vec<(f64, C64, usize, usize, f64)> = Vec::new();
    for k in 0..n {
        let (ia, ib) = (k, (k + 1) % n);
        let (a, b) = (local[ia], local[ib]);
        if (a.im > 0.0 && b.im > 0.0) || (a.im < 0.0 && b.im < 0.0) || a.im == b.im {
            continue;
        }
        let t = a.im / (a.im - b.im);
        let x = a.re + t * (b.re - a.re);
        let point = vertices[ia] + (vertices[ib] - vertices[ia]) * t;
        crossings.push((x, point, ia, ib, t));
    }
    if crossings.len() < 2 {
        return None;
    }
    let lo = crossings.iter().min_by(|p, q| p.0.total_cmp(&q.0))?;
    let hi = crossings.iter().max_by(|p, q| p.0.total_cmp(&q.0))?;
    Some([(lo.1, lo.2, lo.3, lo.4), (hi.1, hi.2, hi.3, hi.4)])
}
