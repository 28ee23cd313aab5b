//! Recognition of quaternionic functions of the form `g(q)·u` with `g` slice preserving.

use num_complex::Complex64;
use serde_json::json;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::series::{embed_complex, ext, SliceSeries};
use crate::slice::{SliceStructure, StructureKind};
use crate::splitting::splitting;
use crate::verify::random::{random_disc, random_half_disc, random_plane_series, random_series, random_unit};
use crate::verify::report::{CheckReport, Worst};
use crate::verify::{relative_mv, SAMPLE_RADIUS};

pub const CRITERION_TOL: f64 = 1e-10;
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
/// Samples with `|G(z)|` below this are left out of the `λ` fit.
pub const G_FLOOR: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Detection {
    /// `F = λG`; `None` when `G ≡ 0`.
    pub lambda: Option<Complex64>,
    pub u: Multivector,
    pub g: SliceSeries,
    /// Largest relative `|f(x) - g(x)u|` over the off-slice samples.
    pub residual: f64,
}

/// Splits `f_I = F + G·K` and tests `F(z)G(z̄) = F(z̄)G(z)`.
///
/// Returns `None` when the criterion fails on a sample or the recovered pair does not
/// reproduce `f` within [`RECONSTRUCTION_TOL`].
pub fn detect_rotated_slice_preserving(
    f: &SliceSeries,
    axis: &Multivector,
    samples: usize,
    seed: u64,
) -> Result<Option<Detection>> {
    let s = f.structure();
    if s.kind() != StructureKind::Quaternion {
        return Err(Error::Precondition("the detector needs the quaternion structure".into()));
    }
    let sp = splitting(f, axis)?;
    let (big_f, big_g) = (&sp.components[0], &sp.components[1]);
    let k = &sp.completion[0];
    let zs: Vec<Complex64> = (0..samples)
        .map(|i| random_disc(SAMPLE_RADIUS, &mut substream(seed, "detector-z", i as u64)))
        .collect();

    for &z in &zs {
        let (fz, fc, gz, gc) = (big_f.eval(z), big_f.eval(z.conj()), big_g.eval(z), big_g.eval(z.conj()));
        let gap = (fz * gc - fc * gz).norm();
        if gap > CRITERION_TOL * (1.0 + fz.norm() * gc.norm() + fc.norm() * gz.norm()) {
            return Ok(None);
        }
    }

    let (lambda, u, g) = if big_g.max_abs() <= 1e-12 * (1.0 + big_f.max_abs()) {
        (None, s.one(), f.clone())
    } else {
        let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
        for &z in &zs {
            let gz = big_g.eval(z);
            if gz.norm() > G_FLOOR {
                num += gz.conj() * big_f.eval(z);
                den += gz.norm_sqr();
            }
        }
        if den == 0.0 {
            return Ok(None);
        }
        let lambda = num / den;
        let scale = (1.0 + lambda.norm_sqr()).sqrt();
        let u = (embed_complex(s, lambda, axis) + k).scale(1.0 / scale);
        let g = SliceSeries::new(
            s.clone(),
            ext(big_g, axis, s)?.coeffs().iter().map(|c| c.scale(scale)).collect(),
        )?;
        (Some(lambda), u, g)
    };

    let mut residual: f64 = 0.0;
    for i in 0..samples {
        let rng = &mut substream(seed, "detector-x", i as u64);
        let (a, b) = random_half_disc(SAMPLE_RADIUS, rng);
        let j = s.random_axis(rng);
        residual = residual.max(relative_mv(&f.eval_slice(a, b, &j), &(g.eval_slice(a, b, &j) * &u)));
    }
    if residual > RECONSTRUCTION_TOL {
        return Ok(None);
    }
    Ok(Some(Detection { lambda, u, g, residual }))
}

/// `count` constructed `g·u` instances must be detected and `count` generic series rejected.
pub fn check_detector(count: usize, degree: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let s = SliceStructure::quaternion();
    let mut worst = Worst::default();
    for t in 0..count {
        let rng = &mut substream(seed, "detector-positive", t as u64);
        let axis = s.random_axis(rng);
        let g = random_plane_series(&s, &axis, degree, rng);
        let u = random_unit(&s, rng);
        let f = g.right_mul(&u)?;
        let residual = match detect_rotated_slice_preserving(&f, &axis, samples, seed)? {
            Some(d) => d.residual,
            None => 1.0,
        };
        worst.observe(residual, || json!({"case": "positive", "instance": t, "axis": axis, "u": u}));

        let rng = &mut substream(seed, "detector-negative", t as u64);
        let h = random_series(&s, degree.max(2), rng);
        let detected = detect_rotated_slice_preserving(&h, &axis, samples, seed)?.is_some();
        worst.observe(if detected { 1.0 } else { 0.0 }, || json!({"case": "negative", "instance": t}));
    }
    Ok(worst.report("rotation_detector", RECONSTRUCTION_TOL))
}
