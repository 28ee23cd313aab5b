//! Injectivity of a function restricted to one slice.
//!
//! A grid over the slice disc gives the separation constant
//! `c = min |f(z) - f(w)| / |z - w|`. Grid pairs that are far apart yet nearly
//! collide are then refined by Levenberg–Marquardt on `f(z) - f(w) = 0`, so a
//! genuine collision is reported even when it falls between grid nodes.

use nalgebra::{Matrix4, Vector4};
use serde_json::json;

use crate::clifford::Multivector;
use crate::error::Result;
use crate::verify::report::CheckReport;
use crate::verify::seeds::SliceFunction;
use crate::verify::SAMPLE_RADIUS;

/// Residual below which a refined pair counts as a collision.
pub const COLLISION_TOL: f64 = 1e-10;
/// Minimum separation of a collision pair.
pub const COLLISION_MIN_DISTANCE: f64 = 0.1;
const CANDIDATE_MIN_DISTANCE: f64 = 0.2;
const CANDIDATES: usize = 8;
const LM_ITERATIONS: usize = 200;

#[derive(Clone, Debug)]
struct Node {
    a: f64,
    b: f64,
    value: Multivector,
}

#[derive(Clone, Debug)]
pub struct Collision {
    pub z: (f64, f64),
    pub w: (f64, f64),
    pub residual: f64,
}

/// Slice point `a + bJ` inside the closed disc of `radius`, as `(a, b)` coordinates.
fn grid(radius: f64, size: usize) -> Vec<(f64, f64)> {
    let step = 2.0 * radius / (size.max(2) - 1) as f64;
    let mut out = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let (a, b) = (-radius + step * i as f64, -radius + step * j as f64);
            if a * a + b * b <= radius * radius * (1.0 + 1e-12) {
                out.push((a, b));
            }
        }
    }
    out
}

fn residual_vector(f: &dyn SliceFunction, p: &Vector4<f64>, axis: &Multivector) -> Multivector {
    f.value(p[0], p[1], axis) - f.value(p[2], p[3], axis)
}

/// Levenberg–Marquardt on `f(a + bJ) - f(c + dJ) = 0` from `start`.
fn refine(f: &dyn SliceFunction, axis: &Multivector, start: Vector4<f64>) -> (Vector4<f64>, f64) {
    let mut p = start;
    let mut r = residual_vector(f, &p, axis);
    let mut mu = 1e-3;
    for _ in 0..LM_ITERATIONS {
        let dz = f.derivative_value(p[0], p[1], axis);
        let dw = f.derivative_value(p[2], p[3], axis);
        let cols = [dz.clone(), axis * &dz, -&dw, -(axis * &dw)];
        let mut jtj = Matrix4::zeros();
        let mut jtr = Vector4::zeros();
        for i in 0..4 {
            for k in 0..4 {
                jtj[(i, k)] = cols[i].inner(&cols[k]).expect("same context");
            }
            jtr[i] = cols[i].inner(&r).expect("same context");
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut damped = jtj;
            for i in 0..4 {
                damped[(i, i)] += mu * (1.0 + jtj[(i, i)]);
            }
            let Some(step) = damped.lu().solve(&(-jtr)) else {
                mu *= 10.0;
                continue;
            };
            let q = p + step;
            let rq = residual_vector(f, &q, axis);
            if rq.norm() < r.norm() {
                p = q;
                r = rq;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved || r.norm() < 1e-15 {
            break;
        }
    }
    (p, r.norm())
}

/// Separation constant on the `axis` slice and any collision found by refinement.
///
/// Residual is `1` when a collision is found or `c <= 0`, else `0`.
pub fn check_slice_injectivity(f: &dyn SliceFunction, axis: &Multivector, grid_size: usize) -> Result<CheckReport> {
    f.structure().check_axis(axis)?;
    let nodes: Vec<Node> = grid(SAMPLE_RADIUS, grid_size)
        .into_iter()
        .map(|(a, b)| Node {
            a,
            b,
            value: f.value(a, b, axis),
        })
        .collect();

    let mut c = f64::INFINITY;
    let mut c_pair = (0, 0);
    // (normalized defect, i, j), kept sorted and short
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let (ni, nj) = (&nodes[i], &nodes[j]);
            let dist = (ni.a - nj.a).hypot(ni.b - nj.b);
            let ratio = ni.value.distance(&nj.value) / dist;
            if ratio < c {
                c = ratio;
                c_pair = (i, j);
            }
            if dist >= CANDIDATE_MIN_DISTANCE
                && (candidates.len() < CANDIDATES || ratio < candidates[CANDIDATES - 1].0)
            {
                let pos = candidates.partition_point(|x| x.0 <= ratio);
                candidates.insert(pos, (ratio, i, j));
                candidates.truncate(CANDIDATES);
            }
        }
    }

    let mut collision: Option<Collision> = None;
    for &(_, i, j) in &candidates {
        let start = Vector4::new(nodes[i].a, nodes[i].b, nodes[j].a, nodes[j].b);
        let (p, res) = refine(f, axis, start);
        let inside = |a: f64, b: f64| a.hypot(b) <= SAMPLE_RADIUS + 1e-9;
        let sep = (p[0] - p[2]).hypot(p[1] - p[3]);
        let scale = 1.0 + f.value(p[0], p[1], axis).norm();
        if res / scale <= COLLISION_TOL && sep >= COLLISION_MIN_DISTANCE && inside(p[0], p[1]) && inside(p[2], p[3]) {
            collision = Some(Collision {
                z: (p[0], p[1]),
                w: (p[2], p[3]),
                residual: res,
            });
            break;
        }
    }

    let residual = if collision.is_some() || c <= 0.0 || !c.is_finite() { 1.0 } else { 0.0 };
    let (i, j) = c_pair;
    Ok(CheckReport::new(
        "slice_injectivity",
        nodes.len() * nodes.len().saturating_sub(1) / 2,
        residual,
        0.0,
        json!({
            "axis": axis,
            "grid_size": grid_size,
            "separation": c,
            "separation_pair": [[nodes[i].a, nodes[i].b], [nodes[j].a, nodes[j].b]],
            "collision": collision.map(|c| json!({"z": [c.z.0, c.z.1], "w": [c.w.0, c.w.1], "residual": c.residual})),
        }),
    ))
}

/// `x + 0.9x²`, which is not injective on the disc (its derivative vanishes at `-1/1.8`).
pub fn negative_control(structure: &crate::slice::SliceStructure) -> crate::series::SliceSeries {
    let mut coeffs = vec![Multivector::zero(structure.context()), structure.one()];
    coeffs.push(Multivector::scalar(structure.context(), 0.9));
    crate::series::SliceSeries::new(structure.clone(), coeffs).expect("same structure")
}
