//! Growth, distortion and ratio bounds for normalized catalog functions.

use num_complex::Complex64;
use serde_json::json;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::series::{embed_complex, CoeffBound, SliceSeries};
use crate::verify::random::random_half_disc;
use crate::verify::report::{CheckReport, Worst};
use crate::verify::seeds::SeedFunction;
use crate::verify::SAMPLE_RADIUS;

pub const BOUND_TOL: f64 = 1e-8;
/// Largest admissible truncation tail at a sample radius.
pub const TAIL_TARGET: f64 = 1e-12;
/// Relative slack every non-Koebe entry keeps away from the bounds for `|x| >= EQUALITY_MIN_RADIUS`.
pub const EQUALITY_GAP: f64 = 1e-4;
pub const EQUALITY_MIN_RADIUS: f64 = 0.25;
/// Coefficient bound of `x f'(x) * f^{-*}(x)` for every catalog entry.
pub const RATIO_BOUND: CoeffBound = CoeffBound::new(2.0, 0);

const QUANTITIES: [&str; 6] = [
    "growth_lower",
    "growth_upper",
    "distortion_lower",
    "distortion_upper",
    "ratio_lower",
    "ratio_upper",
];

/// `(lower, upper)` pairs for `|f|`, `|f'|` and `|x f' * f^{-*}|` at `|x| = r`.
pub fn bounds_at(r: f64) -> [(f64, f64); 3] {
    [
        (r / ((1.0 + r) * (1.0 + r)), r / ((1.0 - r) * (1.0 - r))),
        ((1.0 - r) / (1.0 + r).powi(3), (1.0 + r) / (1.0 - r).powi(3)),
        ((1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r)),
    ]
}

/// Truncation tails of the value, derivative and ratio series at radius `r`.
pub fn tails(f: &SeedFunction, r: f64) -> [f64; 3] {
    let n = f.series.degree();
    match f.bound {
        Some(b) => [b.tail(n, r), b.derivative_tail(n, r), RATIO_BOUND.tail(n - 1, r)],
        None => [0.0; 3],
    }
}

/// Largest radius, at most `min(0.9, rmax)`, where all three tails stay below [`TAIL_TARGET`].
pub fn sample_radius(f: &SeedFunction, rmax: f64) -> f64 {
    let cap = SAMPLE_RADIUS.min(rmax);
    let ok = |r: f64| tails(f, r).iter().all(|t| *t < TAIL_TARGET);
    if ok(cap) {
        return cap;
    }
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Moduli of value, derivative and ratio at one point, with tail-adjusted signed margins.
#[derive(Clone, Debug)]
pub struct GrowthSample {
    pub x: Multivector,
    pub r: f64,
    pub values: [f64; 3],
    /// Margins in [`QUANTITIES`] order; negative means a violation beyond the tail slack.
    pub margins: [f64; 6],
    pub bounds: [f64; 6],
}

struct Evaluators {
    value: SliceSeries,
    derivative: SliceSeries,
    ratio: SliceSeries,
}

fn require_normalized(f: &SeedFunction) -> Result<()> {
    let one = f.structure.one();
    let c = f.series.coeffs();
    if !f.normalized || c.len() < 2 || c[0].norm() > 1e-12 || c[1].distance(&one) > 1e-12 {
        return Err(Error::Precondition(format!("{} is not normalized", f.name)));
    }
    Ok(())
}

impl Evaluators {
    fn new(f: &SeedFunction) -> Result<Self> {
        require_normalized(f)?;
        Ok(Self {
            value: f.series.clone(),
            derivative: f.series.derivative(),
            ratio: f.series.ratio_series()?,
        })
    }

    fn sample(&self, f: &SeedFunction, z: Complex64, axis: &Multivector) -> GrowthSample {
        let r = z.norm();
        let x = embed_complex(&f.structure, z, axis);
        let values = [
            self.value.eval_plane(z, axis).norm(),
            self.derivative.eval_plane(z, axis).norm(),
            self.ratio.eval_plane(z, axis).norm(),
        ];
        let tail = tails(f, r);
        let b = bounds_at(r);
        let mut margins = [0.0; 6];
        let mut bounds = [0.0; 6];
        for q in 0..3 {
            margins[2 * q] = values[q] - b[q].0 + tail[q];
            margins[2 * q + 1] = b[q].1 - values[q] + tail[q];
            bounds[2 * q] = b[q].0;
            bounds[2 * q + 1] = b[q].1;
        }
        GrowthSample {
            x,
            r,
            values,
            margins,
            bounds,
        }
    }
}

/// Half the points on the defining slice (both half planes), half on random slices.
pub fn growth_samples(f: &SeedFunction, points: usize, seed: u64, rmax: f64) -> Result<Vec<GrowthSample>> {
    let ev = Evaluators::new(f)?;
    let radius = sample_radius(f, rmax);
    Ok((0..points)
        .map(|p| {
            let rng = &mut substream(seed, "growth-point", p as u64);
            let (u, v) = random_half_disc(radius, rng);
            let axis = match p % 4 {
                0 => f.axis.clone(),
                1 => -&f.axis,
                _ => f.structure.random_axis(rng),
            };
            ev.sample(f, Complex64::new(u, v), &axis)
        })
        .collect())
}

/// Worst tail-adjusted violation of the six bounds over the sampled points.
pub fn check_growth_distortion(f: &SeedFunction, points: usize, seed: u64, rmax: f64) -> Result<CheckReport> {
    let samples = growth_samples(f, points, seed, rmax)?;
    let mut worst = Worst::default();
    for s in &samples {
        let (q, m) = s
            .margins
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, m)| if m < acc.1 { (i, m) } else { acc });
        worst.observe((-m).max(0.0), || {
            json!({
                "function": f.name,
                "x": s.x,
                "quantity": QUANTITIES[q],
                "value": s.values[q / 2],
                "bound": s.bounds[q],
                "margin": m,
            })
        });
    }
    let mut report = worst.report(format!("growth_distortion_{}", f.name), BOUND_TOL);
    if report.witness.is_object() {
        report.witness["sample_radius"] = json!(sample_radius(f, rmax));
    }
    Ok(report)
}

/// Axis and angle of a Koebe rotation `a_k = k e^{I(k-1)θ}`, with `θ ∈ [0, π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoebeRotation {
    pub axis: Multivector,
    pub theta: f64,
}

/// Fits `e^{Iθ} = a_2 / 2` and checks every coefficient, each within `tol·k`.
pub fn is_koebe_rotation(f: &SliceSeries, tol: f64) -> Option<KoebeRotation> {
    let s = f.structure();
    let c = f.coeffs();
    if c.len() < 3 || c[0].norm() > tol || c[1].distance(&s.one()) > tol {
        return None;
    }
    let e = c[2].scale(0.5);
    let scalar = e.scalar_part();
    let mut imag = e.clone();
    imag.coeffs_mut()[0] = 0.0;
    let v = imag.norm();
    let axis = if v > tol { imag.scale(1.0 / v) } else { s.default_axis() };
    s.check_axis(&axis).ok()?;
    let theta = v.atan2(scalar);
    for (k, a) in c.iter().enumerate().skip(1) {
        let expected = embed_complex(s, Complex64::from_polar(k as f64, (k - 1) as f64 * theta), &axis);
        if a.distance(&expected) > tol * k as f64 {
            return None;
        }
    }
    Some(KoebeRotation { axis, theta })
}

/// Koebe entries attain the bounds along `±r e^{-Iθ}`; all other entries stay at least
/// [`EQUALITY_GAP`] (relative) inside them once `|x| >= 1/4`.
pub fn check_equality_cases(catalog: &[SeedFunction], points: usize, seed: u64, rmax: f64) -> Result<CheckReport> {
    let mut worst = Worst::default();
    for f in catalog.iter().filter(|f| f.normalized) {
        let detected = is_koebe_rotation(&f.series, 1e-9);
        if detected.is_some() != f.is_koebe() {
            worst.observe(1.0, || json!({"function": f.name, "koebe_detected": detected.is_some()}));
            continue;
        }
        match detected {
            Some(KoebeRotation { axis, theta }) => {
                let ev = Evaluators::new(f)?;
                let radius = sample_radius(f, rmax);
                for r in [EQUALITY_MIN_RADIUS, 0.5, radius] {
                    for (sign, side) in [(1.0, 1usize), (-1.0, 0usize)] {
                        let z = Complex64::from_polar(sign * r, -theta);
                        let s = ev.sample(f, z, &axis);
                        for q in 0..3 {
                            let slack = (s.values[q] - s.bounds[2 * q + side]).abs();
                            worst.observe(slack, || {
                                json!({"function": f.name, "x": s.x, "quantity": QUANTITIES[2 * q + side], "slack": slack})
                            });
                        }
                    }
                }
            }
            None => {
                let samples = growth_samples(f, points, seed, rmax)?;
                let mut min_slack = f64::INFINITY;
                let mut at = None;
                for s in samples.iter().filter(|s| s.r >= EQUALITY_MIN_RADIUS) {
                    for q in 0..6 {
                        let rel = s.margins[q] / s.bounds[q];
                        if rel < min_slack {
                            min_slack = rel;
                            at = Some((s.x.clone(), q));
                        }
                    }
                }
                let violation = if min_slack < EQUALITY_GAP { 1.0 } else { 0.0 };
                worst.observe(violation, || {
                    json!({
                        "function": f.name,
                        "min_relative_slack": min_slack,
                        "x": at.as_ref().map(|a| &a.0),
                        "quantity": at.as_ref().map(|a| QUANTITIES[a.1]),
                    })
                });
            }
        }
    }
    Ok(worst.report("equality_cases", BOUND_TOL))
}
