//! Modulus identities across slices and the representation formula.

use serde_json::json;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::series::{plane_defect, SliceSeries};
use crate::verify::random::random_half_disc;
use crate::verify::report::{CheckReport, Worst};
use crate::verify::{relative, relative_mv, SAMPLE_RADIUS};

/// Tolerance on terms that vanish identically (cross term, quaternion imaginary-part form).
pub const VANISHING_TOL: f64 = 1e-12;

/// Largest relative distance of `a_k ū` from `ℂ_I`.
pub fn preservation_defect(f: &SliceSeries, axis: &Multivector, rotation: Option<&Multivector>) -> f64 {
    let u_bar = rotation.map(Multivector::conjugate);
    f.coeffs()
        .iter()
        .map(|a| {
            let g = match &u_bar {
                Some(ub) => a * ub,
                None => a.clone(),
            };
            plane_defect(&g, axis) / a.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

fn require_preserving(f: &SliceSeries, axis: &Multivector, rotation: Option<&Multivector>) -> Result<()> {
    f.structure().check_axis(axis)?;
    if let Some(u) = rotation {
        if (u.norm() - 1.0).abs() > VANISHING_TOL {
            return Err(Error::Precondition(format!("rotation {u} is not a unit")));
        }
    }
    let defect = preservation_defect(f, axis, rotation);
    if defect > VANISHING_TOL {
        return Err(Error::Precondition(format!(
            "coefficients leave the plane of {axis} by {defect:e}"
        )));
    }
    Ok(())
}

/// Values `f(y)`, `f(ȳ)` at `y = u + vI`.
fn endpoints(f: &SliceSeries, u: f64, v: f64, axis: &Multivector) -> (Multivector, Multivector) {
    (f.eval_slice(u, v, axis), f.eval_slice(u, -v, axis))
}

/// `½⟨A B̄ - B Ā, I∧J⟩`.
fn cross_term(a: &Multivector, b: &Multivector, wedge: &Multivector) -> f64 {
    let anti = a * &b.conjugate() - b * &a.conjugate();
    0.5 * anti.inner(wedge).expect("same context")
}

/// Checks `|f(x)|² = (1+⟨I,J⟩)/2 |f(y)|² + (1-⟨I,J⟩)/2 |f(ȳ)|² - ½⟨f(y)f(ȳ)‾ - f(ȳ)f(y)‾, I∧J⟩`
/// for arbitrary coefficients; quaternion structures also compare the imaginary-part form of the cross term.
pub fn check_identity_general(
    f: &SliceSeries,
    axis: &Multivector,
    points: usize,
    axes: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<CheckReport>> {
    let s = f.structure();
    s.check_axis(axis)?;
    let quaternion = s.kind() == crate::slice::StructureKind::Quaternion;
    let js = s.sphere_sample(axes, seed);
    let mut identity = Worst::default();
    let mut im_form = Worst::default();
    for p in 0..points {
        let (u, v) = random_half_disc(SAMPLE_RADIUS, &mut substream(seed, "identity-point", p as u64));
        let (a, b) = endpoints(f, u, v, axis);
        for j in &js {
            let t = axis.inner(j)?;
            let wedge = axis.wedge_half(j)?;
            let lhs = f.eval_slice(u, v, j).norm_sqr();
            let cross = cross_term(&a, &b, &wedge);
            let rhs = 0.5 * (1.0 + t) * a.norm_sqr() + 0.5 * (1.0 - t) * b.norm_sqr() - cross;
            identity.observe(relative(lhs, rhs), || json!({"u": u, "v": v, "axis": j, "lhs": lhs, "rhs": rhs}));
            if quaternion {
                let prod = &a * &b.conjugate();
                let mut im = prod.clone();
                im.coeffs_mut()[0] = 0.0;
                let im_term = im.inner(&wedge)?;
                im_form.observe(relative(im_term, cross), || {
                    json!({"u": u, "v": v, "axis": j, "im_form": im_term, "antisymmetric_form": cross})
                });
            }
        }
    }
    let mut out = vec![identity.report("identity_general", tol)];
    if quaternion {
        out.push(im_form.report("identity_im_form", VANISHING_TOL));
    }
    Ok(out)
}

/// Convex-combination identity for `f` with coefficients in `ℂ_I u`, its vanishing cross term,
/// and the affine dependence of `|f(u+vJ)|²` on `⟨I,J⟩`.
pub fn check_convex_combination(
    f: &SliceSeries,
    axis: &Multivector,
    rotation: Option<&Multivector>,
    points: usize,
    axes: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<CheckReport>> {
    require_preserving(f, axis, rotation)?;
    let s = f.structure();
    let mut js = vec![axis.clone(), -axis];
    js.extend(s.sphere_sample(axes, seed));
    let ts: Vec<f64> = js.iter().map(|j| axis.inner(j).expect("same context")).collect();

    let mut convex = Worst::default();
    let mut cross = Worst::default();
    let mut affine = Worst::default();
    for p in 0..points {
        let (u, v) = random_half_disc(SAMPLE_RADIUS, &mut substream(seed, "convex-point", p as u64));
        let (a, b) = endpoints(f, u, v, axis);
        let (na, nb) = (a.norm_sqr(), b.norm_sqr());
        let mut values = Vec::with_capacity(js.len());
        for (j, &t) in js.iter().zip(&ts) {
            let lhs = f.eval_slice(u, v, j).norm_sqr();
            let rhs = 0.5 * (1.0 + t) * na + 0.5 * (1.0 - t) * nb;
            convex.observe(relative(lhs, rhs), || json!({"u": u, "v": v, "axis": j, "lhs": lhs, "rhs": rhs}));
            let c = cross_term(&a, &b, &axis.wedge_half(j)?);
            cross.observe(c.abs() / (1.0 + na + nb), || json!({"u": u, "v": v, "axis": j, "cross_term": c}));
            values.push(lhs);
        }
        let (alpha, beta) = line_fit(&ts, &values);
        for (t, y) in ts.iter().zip(&values) {
            let fit = alpha + beta * t;
            affine.observe((y - fit).abs() / (1.0 + y.abs()), || {
                json!({"u": u, "v": v, "inner": t, "value": y, "fit": fit})
            });
        }
    }
    Ok(vec![
        convex.report("convex_combination", tol),
        cross.report("cross_term", VANISHING_TOL),
        affine.report("affine_fit", tol),
    ])
}

/// Least-squares line `y ≈ α + βt`.
fn line_fit(t: &[f64], y: &[f64]) -> (f64, f64) {
    let n = t.len() as f64;
    let mt = t.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let stt: f64 = t.iter().map(|t| (t - mt) * (t - mt)).sum();
    let sty: f64 = t.iter().zip(y).map(|(t, y)| (t - mt) * (y - my)).sum();
    let beta = if stt > 0.0 { sty / stt } else { 0.0 };
    (my - beta * mt, beta)
}

/// Sampled extrema of `|f(u+vJ)|` over `J ∈ 𝕊` against `max/min(|f(u+vI)|, |f(u-vI)|)`.
///
/// The sample always contains `±I`, where the endpoint values are attained.
#[allow(clippy::too_many_arguments)]
pub fn sphere_extrema_check(
    f: &SliceSeries,
    axis: &Multivector,
    rotation: Option<&Multivector>,
    u: f64,
    v: f64,
    axis_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    require_preserving(f, axis, rotation)?;
    let (a, b) = endpoints(f, u, v, axis);
    let (ea, eb) = (a.norm(), b.norm());
    let (emax, emin) = (ea.max(eb), ea.min(eb));
    let mut js = vec![axis.clone(), -axis];
    js.extend(f.structure().sphere_sample(axis_samples, seed));
    let values: Vec<f64> = js.iter().map(|j| f.eval_slice(u, v, j).norm()).collect();
    let smax = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let smin = values.iter().copied().fold(f64::INFINITY, f64::min);
    let residual = relative(smax, emax).max(relative(smin, emin));
    Ok(CheckReport::new(
        "sphere_extrema",
        js.len(),
        residual,
        tol,
        json!({"u": u, "v": v, "sampled_max": smax, "sampled_min": smin, "endpoint_max": emax, "endpoint_min": emin}),
    ))
}

/// Representation formula from a random reference slice against direct evaluation.
pub fn check_representation(f: &SliceSeries, points: usize, seed: u64, tol: f64) -> Result<CheckReport> {
    let s = f.structure();
    let mut worst = Worst::default();
    for p in 0..points {
        let rng = &mut substream(seed, "representation-point", p as u64);
        let (u, v) = random_half_disc(SAMPLE_RADIUS, rng);
        let reference = s.random_axis(rng);
        let j = s.random_axis(rng);
        let x = crate::series::embed_complex(s, num_complex::Complex64::new(u, v), &j);
        let lhs = f.eval_representation(&reference, &x)?;
        let rhs = f.eval(&x)?;
        worst.observe(relative_mv(&lhs, &rhs), || json!({"x": x, "reference_axis": reference}));
    }
    Ok(worst.report("representation_formula", tol))
}
