//! Algebra axioms, splitting round trips and `*`-inverses.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use serde_json::json;

use crate::clifford::{context, Multivector};
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::series::{embed_complex, SliceSeries};
use crate::slice::{SliceStructure, StructureKind};
use crate::splitting::{completion, splitting};
use crate::verify::random::{gaussian_multivector, gaussian_variable, random_disc, random_half_disc};
use crate::verify::report::{CheckReport, Worst};
use crate::verify::{relative, relative_mv, SAMPLE_RADIUS};

pub const ALGEBRA_TOL: f64 = 1e-12;
pub const SPLITTING_TOL: f64 = 1e-10;
pub const STAR_INVERSE_TOL: f64 = 1e-10;
pub const ROUTE_TOL: f64 = 1e-8;

/// Random associativity and conjugation checks plus the full generator anticommutation table of `R_n`.
pub fn check_algebra_axioms(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let s = SliceStructure::paravector(n)?;
    let ctx = s.context();
    let mut worst = Worst::default();
    for i in 1..=n {
        for j in 1..=n {
            let (ei, ej) = (Multivector::generator(ctx, i), Multivector::generator(ctx, j));
            let expected = Multivector::scalar(ctx, if i == j { -2.0 } else { 0.0 });
            let got = &ei * &ej + &ej * &ei;
            worst.observe(got.distance(&expected), || json!({"law": "anticommutation", "i": i, "j": j}));
        }
    }
    for t in 0..trials {
        let rng = &mut substream(seed, "algebra", t as u64);
        let a = gaussian_multivector(&s, rng);
        let b = gaussian_multivector(&s, rng);
        let c = gaussian_multivector(&s, rng);
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        worst.observe(relative_mv(&left, &right), || json!({"law": "associativity", "trial": t}));
        let conj_prod = (&a * &b).conjugate();
        let prod_conj = &b.conjugate() * &a.conjugate();
        worst.observe(relative_mv(&conj_prod, &prod_conj), || json!({"law": "conjugate_antiautomorphism", "trial": t}));
    }
    Ok(worst.report(format!("algebra_axioms_r{n}"), ALGEBRA_TOL))
}

/// `|ab| = |a||b|` whenever one factor is a paravector, in both orders.
pub fn check_norm_multiplicativity(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let s = SliceStructure::paravector(n)?;
    let mut worst = Worst::default();
    for t in 0..trials {
        let rng = &mut substream(seed, "norm-mult", t as u64);
        let x = gaussian_variable(&s, rng);
        let b = gaussian_multivector(&s, rng);
        let expected = x.norm() * b.norm();
        for prod in [&x * &b, &b * &x] {
            let got = prod.norm();
            worst.observe(relative(got, expected), || json!({"trial": t, "product_norm": got, "norm_product": expected}));
        }
    }
    Ok(worst.report(format!("norm_multiplicativity_r{n}"), ALGEBRA_TOL))
}

/// `(1 + e_123)(1 - e_123)` in `R_3`, which vanishes although neither factor does.
pub fn zero_divisor_witness() -> (Multivector, Multivector, Multivector) {
    let ctx = context(3).expect("n = 3 is in range");
    let e123 = Multivector::blade(&ctx, 0b111);
    let a = Multivector::one(&ctx) + &e123;
    let b = Multivector::one(&ctx) - &e123;
    let p = &a * &b;
    (a, b, p)
}

/// `Σ_A F_A(z) I_A` against `f` on the plane of `axis`.
pub fn check_splitting(f: &SliceSeries, axis: &Multivector, points: usize, seed: u64) -> Result<CheckReport> {
    let sp = splitting(f, axis)?;
    let mut worst = Worst::default();
    for p in 0..points {
        let z = random_disc(SAMPLE_RADIUS, &mut substream(seed, "splitting-point", p as u64));
        let direct = f.eval_plane(z, axis);
        let rebuilt = sp.reconstruct(z);
        worst.observe(relative_mv(&rebuilt, &direct), || json!({"z": [z.re, z.im], "axis": axis}));
    }
    Ok(worst.report(format!("splitting_round_trip_{}", f.structure().n()), SPLITTING_TOL))
}

/// Builds `f_I = F + G·J` from random complex `F`, `G` and checks the split returns them.
pub fn check_quaternion_split_recovery(count: usize, degree: usize, seed: u64) -> Result<CheckReport> {
    let s = SliceStructure::quaternion();
    let mut worst = Worst::default();
    for t in 0..count {
        let rng = &mut substream(seed, "split-recovery", t as u64);
        let axis = s.random_axis(rng);
        let j = completion(&s, &axis).remove(0);
        let mut normal = || -> f64 { StandardNormal.sample(&mut *rng) };
        let big_f: Vec<Complex64> = (0..=degree).map(|_| Complex64::new(normal(), normal())).collect();
        let big_g: Vec<Complex64> = (0..=degree).map(|_| Complex64::new(normal(), normal())).collect();
        let coeffs = big_f
            .iter()
            .zip(&big_g)
            .map(|(&a, &b)| embed_complex(&s, a, &axis) + embed_complex(&s, b, &axis) * &j)
            .collect();
        let f = SliceSeries::new(s.clone(), coeffs)?;
        let sp = splitting(&f, &axis)?;
        for (k, (a, b)) in big_f.iter().zip(&big_g).enumerate() {
            let err = (sp.components[0].coeffs()[k] - a)
                .norm()
                .max((sp.components[1].coeffs()[k] - b).norm());
            worst.observe(err, || json!({"instance": t, "k": k, "axis": axis}));
        }
    }
    Ok(worst.report("quaternion_split_recovery", ALGEBRA_TOL))
}

/// Coefficients of `f * f^{-*}` and `f^{-*} * f` against the unit series, each scaled by `1 + Σ_j |a_j||b_{k-j}|`.
pub fn check_star_inverse(f: &SliceSeries) -> Result<CheckReport> {
    let g = f.star_inverse()?;
    let n = f.degree();
    let mut worst = Worst::default();
    for (order, (l, r)) in [("right", (f, &g)), ("left", (&g, f))] {
        let prod = l.star_product_capped(r, n)?;
        for k in 0..=n {
            let scale: f64 = (0..=k).map(|j| l.coeffs()[j].norm() * r.coeffs()[k - j].norm()).sum();
            let mut c = prod.coeffs()[k].clone();
            if k == 0 {
                c.coeffs_mut()[0] -= 1.0;
            }
            worst.observe(c.norm() / (1.0 + scale), || json!({"order": order, "k": k}));
        }
    }
    Ok(worst.report("star_inverse_two_sided", STAR_INVERSE_TOL))
}

/// `f^s(x)^{-1} f^c(x)` against the evaluated inverse series.
pub fn check_inverse_routes(f: &SliceSeries, points: usize, seed: u64) -> Result<CheckReport> {
    let s = f.structure();
    let series = f.star_inverse()?;
    let pointwise = crate::series::PointwiseStarInverse::new(f);
    let mut worst = Worst::default();
    for p in 0..points {
        let rng = &mut substream(seed, "inverse-route", p as u64);
        let (u, v) = random_half_disc(SAMPLE_RADIUS, rng);
        let j = s.random_axis(rng);
        let x = embed_complex(s, Complex64::new(u, v), &j);
        let a = pointwise.eval(&x)?;
        let b = series.eval(&x)?;
        worst.observe(relative_mv(&a, &b), || json!({"x": x}));
    }
    Ok(worst.report("star_inverse_routes", ROUTE_TOL))
}

/// Merges reports of the same check over several inputs; the witness records which input was worst.
pub fn merge_reports(name: &str, reports: Vec<CheckReport>) -> Result<CheckReport> {
    let tolerance = reports
        .first()
        .map(|r| r.tolerance)
        .ok_or_else(|| Error::Usage("nothing to merge".into()))?;
    let mut worst = Worst::default();
    for (i, r) in reports.into_iter().enumerate() {
        let samples = r.samples;
        let mut w = Worst::default();
        w.observe(r.max_residual, || json!({"input": i, "witness": r.witness}));
        w.samples = samples;
        worst.merge(w);
    }
    Ok(worst.report(name, tolerance))
}

/// Structure kind name with its generator count, e.g. `paravector_r3`.
pub fn structure_label(s: &SliceStructure) -> String {
    match s.kind() {
        StructureKind::Quaternion => "quaternion".into(),
        StructureKind::Paravector => format!("paravector_r{}", s.n()),
    }
}
