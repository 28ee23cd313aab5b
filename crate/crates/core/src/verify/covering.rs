//! Covering of the ball `B(0, 1/4)` by normalized slice-injective functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::slice::StructureKind;
use crate::verify::report::CheckReport;
use crate::verify::seeds::{SeedFunction, SliceFunction};

/// Angular nodes on each circle.
pub const ANGULAR_NODES: usize = 4096;
/// Radius of the contour for root counting.
pub const CONTOUR_RADIUS: f64 = 0.999;
pub const WINDING_TOL: f64 = 0.1;
pub const COVERING_TOL: f64 = 1e-8;
/// Agreement between sampled-axis minima and the single-slice reduction.
pub const REDUCTION_TOL: f64 = 1e-12;

pub const DEFAULT_RADII: [f64; 6] = [0.5, 0.75, 0.9, 0.95, 0.99, 0.999];

pub fn default_targets() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.2, 0.0),
        Complex64::new(-0.2, 0.0),
        Complex64::new(0.0, 0.2),
        Complex64::new(0.0, -0.24),
        Complex64::from_polar(0.24, 2.5),
        Complex64::new(0.1, 0.1),
    ]
}

pub fn default_controls() -> Vec<Complex64> {
    vec![Complex64::new(-0.3, 0.0)]
}

/// Steps turning by more than this are subdivided.
const MAX_STEP_TURN: f64 = PI / 2.0;
const MAX_SUBDIVISION: u32 = 24;

/// Argument increment of `h - w` from angle `a` to `b`, bisecting steps that turn too far.
fn arg_increment(
    h: &impl Fn(Complex64) -> Complex64,
    w: Complex64,
    radius: f64,
    (a, ha): (f64, Complex64),
    (b, hb): (f64, Complex64),
    depth: u32,
) -> Result<f64> {
    let d = (hb / ha).arg();
    if d.abs() <= MAX_STEP_TURN {
        return Ok(d);
    }
    if depth == MAX_SUBDIVISION {
        return Err(Error::Numerical(format!(
            "argument of h - {w} is unresolved near angle {a}; resample with more nodes"
        )));
    }
    let m = 0.5 * (a + b);
    let hm = checked(h(Complex64::from_polar(radius, m)) - w, w)?;
    Ok(arg_increment(h, w, radius, (a, ha), (m, hm), depth + 1)?
        + arg_increment(h, w, radius, (m, hm), (b, hb), depth + 1)?)
}

fn checked(v: Complex64, w: Complex64) -> Result<Complex64> {
    if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Numerical(format!("contour passes through the target {w}")));
    }
    Ok(v)
}

/// Roots of `h - w` inside the circle of `radius`: the summed argument increments of `h - w`
/// over `nodes` equally spaced points, divided by `2π`.
pub fn winding_count(h: impl Fn(Complex64) -> Complex64, w: Complex64, radius: f64, nodes: usize) -> Result<i64> {
    let angle = |j: usize| 2.0 * PI * j as f64 / nodes as f64;
    let first = checked(h(Complex64::from_polar(radius, 0.0)) - w, w)?;
    let mut prev = (0.0, first);
    let mut total = 0.0;
    for j in 1..=nodes {
        let cur = if j == nodes {
            (angle(j), first)
        } else {
            (angle(j), checked(h(Complex64::from_polar(radius, angle(j))) - w, w)?)
        };
        total += arg_increment(&h, w, radius, prev, cur, 0)?;
        prev = cur;
    }
    let turns = total / (2.0 * PI);
    let count = turns.round();
    if (turns - count).abs() > WINDING_TOL {
        return Err(Error::Numerical(format!("winding number {turns} is not an integer")));
    }
    Ok(count as i64)
}

/// Minimum of `|F(re^{iφ})|` over the angular nodes.
pub fn boundary_minimum(form: impl Fn(Complex64) -> Complex64, r: f64) -> f64 {
    (0..ANGULAR_NODES)
        .map(|j| form(Complex64::from_polar(r, 2.0 * PI * j as f64 / ANGULAR_NODES as f64)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Minimum of `|f(u + vJ)|` on `|q| = r` over sampled axes, `φ ∈ [0, π]`.
fn sampled_minimum(f: &SeedFunction, r: f64, axes: &[crate::clifford::Multivector]) -> f64 {
    let half = ANGULAR_NODES / 2;
    let mut m = f64::INFINITY;
    for j in axes {
        for i in 0..=half {
            let phi = PI * i as f64 / half as f64;
            m = m.min(f.value(r * phi.cos(), r * phi.sin(), j).norm());
        }
    }
    m
}

/// Boundary margins `min_{|q|=r} |f| >= r/(1+r)²`, their monotonicity in `r`, and root counts
/// for targets in `B(0, 1/4)` on the preserved slice. Control targets are reported only.
pub fn check_koebe_quarter(
    f: &SeedFunction,
    radii: &[f64],
    targets: &[Complex64],
    controls: &[Complex64],
    axes: usize,
    seed: u64,
) -> Result<CheckReport> {
    if f.structure.kind() != StructureKind::Quaternion {
        return Err(Error::Precondition("the covering check needs the quaternion structure".into()));
    }
    if !f.normalized || f.rotation.is_some() {
        return Err(Error::Precondition(format!("{} is not normalized and slice preserving", f.name)));
    }
    if let Some(w) = targets.iter().find(|w| w.norm() >= 0.25) {
        return Err(Error::Usage(format!("target {w} lies outside B(0, 1/4)")));
    }
    let form = |z: Complex64| f.form.value(z);
    let mut sample_axes = vec![f.axis.clone(), -&f.axis];
    sample_axes.extend(f.structure.sphere_sample(axes, seed));

    let mut residual: f64 = 0.0;
    let mut minima = Vec::new();
    let mut sampled = Vec::new();
    for &r in radii {
        let m = boundary_minimum(form, r);
        let sm = sampled_minimum(f, r, &sample_axes);
        residual = residual.max(r / ((1.0 + r) * (1.0 + r)) - COVERING_TOL - m);
        // the sampled minimum includes ±I, so it can only differ from the reduction by rounding
        if (sm - m).abs() > REDUCTION_TOL * (1.0 + m) {
            residual = residual.max((sm - m).abs());
        }
        if let Some(&prev) = minima.last() {
            residual = residual.max(prev - m);
        }
        minima.push(m);
        sampled.push(sm);
    }

    let mut coverage = Vec::new();
    for &w in targets {
        let count = winding_count(form, w, CONTOUR_RADIUS, ANGULAR_NODES)?;
        if count < 1 {
            residual = residual.max(1.0);
        }
        coverage.push(json!({"w": [w.re, w.im], "count": count}));
    }
    let mut control_counts = Vec::new();
    for &w in controls {
        let count = winding_count(form, w, CONTOUR_RADIUS, ANGULAR_NODES)?;
        control_counts.push(json!({"w": [w.re, w.im], "count": count}));
    }

    Ok(CheckReport::new(
        format!("koebe_quarter_{}", f.name),
        radii.len() + targets.len(),
        residual.max(0.0),
        COVERING_TOL,
        json!({
            "function": f.name,
            "radii": radii,
            "minima": minima,
            "sampled_minima": sampled,
            "lower_bounds": radii.iter().map(|r| r / ((1.0 + r) * (1.0 + r))).collect::<Vec<_>>(),
            "r0_estimate": minima.last(),
            "targets": coverage,
            "controls": control_counts,
        }),
    ))
}
