//! Normalized test functions with known slice restrictions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::series::{embed_complex, representation, CoeffBound, ComplexSeries, SliceSeries};
use crate::slice::{SliceStructure, StructureKind};

/// Evaluation of a function at `u + v·axis` (any real `v`) together with its slice derivative.
pub trait SliceFunction: Sync {
    fn structure(&self) -> &SliceStructure;
    fn value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector;
    fn derivative_value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector;
}

impl SliceFunction for SliceSeries {
    fn structure(&self) -> &SliceStructure {
        SliceSeries::structure(self)
    }

    fn value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        self.eval_slice(u, v, axis)
    }

    fn derivative_value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        self.derivative().eval_slice(u, v, axis)
    }
}

/// Closed form of a catalog entry on its defining slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SliceForm {
    Identity,
    /// `z / (1 - z)`
    Cayley,
    /// `z - z²/2`
    HalfSquare,
    /// `z / (1 - e^{iθ} z)²`
    Koebe { theta: f64 },
    /// `(z - a) / (1 - z ā)`
    Moebius { a: Complex64 },
}

impl SliceForm {
    pub fn value(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            SliceForm::Identity => z,
            SliceForm::Cayley => z / (one - z),
            SliceForm::HalfSquare => z - z * z * 0.5,
            SliceForm::Koebe { theta } => {
                let d = one - Complex64::from_polar(1.0, theta) * z;
                z / (d * d)
            }
            SliceForm::Moebius { a } => (z - a) / (one - z * a.conj()),
        }
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            SliceForm::Identity => one,
            SliceForm::Cayley => one / ((one - z) * (one - z)),
            SliceForm::HalfSquare => one - z,
            SliceForm::Koebe { theta } => {
                let e = Complex64::from_polar(1.0, theta);
                let d = one - e * z;
                (one + e * z) / (d * d * d)
            }
            SliceForm::Moebius { a } => {
                let d = one - z * a.conj();
                (one - a.norm_sqr()) / (d * d)
            }
        }
    }

    /// Complex Taylor coefficients up to `degree`.
    pub fn taylor(&self, degree: usize) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        (0..=degree)
            .map(|k| match *self {
                SliceForm::Identity => (if k == 1 { 1.0 } else { 0.0 }).into(),
                SliceForm::Cayley => (if k >= 1 { 1.0 } else { 0.0 }).into(),
                SliceForm::HalfSquare => match k {
                    1 => 1.0.into(),
                    2 => (-0.5).into(),
                    _ => zero,
                },
                SliceForm::Koebe { theta } if k >= 1 => Complex64::from_polar(k as f64, (k - 1) as f64 * theta),
                SliceForm::Koebe { .. } => zero,
                SliceForm::Moebius { a } if k == 0 => -a,
                SliceForm::Moebius { a } => a.conj().powu(k as u32 - 1) * (1.0 - a.norm_sqr()),
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SeedFunction {
    pub name: String,
    pub structure: SliceStructure,
    /// Axis of the slice the function preserves (before rotation).
    pub axis: Multivector,
    /// Right factor `u` for functions of the form `g·u`.
    pub rotation: Option<Multivector>,
    pub normalized: bool,
    /// Coefficient growth of the full (untruncated) series; `None` when the series is a polynomial of degree at most N.
    pub bound: Option<CoeffBound>,
    pub form: SliceForm,
    pub series: SliceSeries,
}

impl SeedFunction {
    pub fn is_koebe(&self) -> bool {
        matches!(self.form, SliceForm::Koebe { .. })
    }

    fn from_closed_form(
        name: &str,
        structure: &SliceStructure,
        axis: &Multivector,
        form: SliceForm,
        bound: Option<CoeffBound>,
        degree: usize,
    ) -> Result<Self> {
        let f = ComplexSeries::new(form.taylor(degree))?;
        Ok(Self {
            name: name.to_string(),
            structure: structure.clone(),
            axis: axis.clone(),
            rotation: None,
            normalized: true,
            bound,
            form,
            series: crate::series::ext(&f, axis, structure)?,
        })
    }
}

impl SliceFunction for SeedFunction {
    fn structure(&self) -> &SliceStructure {
        &self.structure
    }

    fn value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        self.lift(|z| self.form.value(z), u, v, axis)
    }

    fn derivative_value(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        self.lift(|z| self.form.derivative(z), u, v, axis)
    }
}

impl SeedFunction {
    /// Representation-formula lift of a closed form on `ℂ_I` to the slice of `axis`.
    fn lift(&self, h: impl Fn(Complex64) -> Complex64, u: f64, v: f64, axis: &Multivector) -> Multivector {
        let at_y = embed_complex(&self.structure, h(Complex64::new(u, v)), &self.axis);
        let at_ybar = embed_complex(&self.structure, h(Complex64::new(u, -v)), &self.axis);
        let g = representation(&at_y, &at_ybar, &self.axis, axis);
        match &self.rotation {
            Some(rot) => g * rot,
            None => g,
        }
    }
}

/// `k_{I,θ}`: coefficients `a_k = k e^{I(k-1)θ}`.
pub fn koebe_series(structure: &SliceStructure, axis: &Multivector, theta: f64, degree: usize) -> Result<SliceSeries> {
    if degree < 1 {
        return Err(Error::Usage("the Koebe series needs degree >= 1".into()));
    }
    let c = ComplexSeries::new(SliceForm::Koebe { theta }.taylor(degree))?;
    crate::series::ext(&c, axis, structure)
}

/// Unit tolerance for the rotation factor of a Möbius map.
const UNIT_TOL: f64 = 1e-12;

/// `(1 - xā)^{-*} * (x - a) u`, truncated at `degree`.
pub fn moebius_series(a: &Multivector, u: &Multivector, degree: usize) -> Result<SliceSeries> {
    let structure = SliceStructure::quaternion();
    if a.n() != 2 || u.n() != 2 {
        return Err(Error::Usage("Möbius maps are defined on the quaternions".into()));
    }
    if a.norm() >= 1.0 {
        return Err(Error::Usage(format!("|a| = {} must be < 1", a.norm())));
    }
    if (u.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Usage(format!("|u| = {} must be 1", u.norm())));
    }
    let a_bar = a.conjugate();
    let mut powers = Vec::with_capacity(degree + 1);
    let mut p = structure.one();
    for _ in 0..=degree {
        powers.push(p.clone());
        p = &p * &a_bar;
    }
    let geometric = SliceSeries::new(structure.clone(), powers)?;
    let linear = SliceSeries::new(structure.clone(), vec![-a, structure.one()])?;
    geometric.star_product_capped(&linear, degree)?.truncate(degree).right_mul(u)
}

/// Catalog axis of the tilted Koebe entry, `(e_1 + 2e_2)/√5`.
pub fn tilted_axis(structure: &SliceStructure) -> Option<Multivector> {
    if structure.n() < 2 {
        return None;
    }
    let ctx = structure.context();
    let e = Multivector::generator(ctx, 1) + Multivector::generator(ctx, 2).scale(2.0);
    Some(e.scale(1.0 / 5f64.sqrt()))
}

/// The test corpus for `structure` at `degree`.
///
/// Every entry is injective on its defining slice: `z`, `z/(1-z)` (half plane),
/// `z - z²/2` (derivative `1 - z` has positive real part), the Koebe rotations
/// and the disc automorphisms.
pub fn seed_catalog(structure: &SliceStructure, degree: usize) -> Result<Vec<SeedFunction>> {
    if degree < 2 {
        return Err(Error::Config("the catalog needs degree >= 2".into()));
    }
    let e1 = structure.default_axis();
    let mut out = vec![
        SeedFunction::from_closed_form("identity", structure, &e1, SliceForm::Identity, None, degree)?,
        SeedFunction::from_closed_form("cayley", structure, &e1, SliceForm::Cayley, Some(CoeffBound::new(1.0, 0)), degree)?,
        SeedFunction::from_closed_form("halfsquare", structure, &e1, SliceForm::HalfSquare, None, degree)?,
        SeedFunction::from_closed_form(
            "koebe_theta0",
            structure,
            &e1,
            SliceForm::Koebe { theta: 0.0 },
            Some(CoeffBound::new(1.0, 1)),
            degree,
        )?,
        SeedFunction::from_closed_form(
            "koebe_theta_pi3",
            structure,
            &e1,
            SliceForm::Koebe { theta: PI / 3.0 },
            Some(CoeffBound::new(1.0, 1)),
            degree,
        )?,
    ];
    if let Some(tilted) = tilted_axis(structure) {
        out.push(SeedFunction::from_closed_form(
            "koebe_tilted",
            structure,
            &tilted,
            SliceForm::Koebe { theta: -1.1 },
            Some(CoeffBound::new(1.0, 1)),
            degree,
        )?);
    }
    if structure.kind() == StructureKind::Quaternion {
        let ctx = structure.context();
        let a = Multivector::scalar(ctx, 0.3) - Multivector::generator(ctx, 1).scale(0.2);
        let u = (Multivector::generator(ctx, 1) + Multivector::generator(ctx, 2)).scale(std::f64::consts::FRAC_1_SQRT_2);
        out.push(SeedFunction {
            name: "moebius".into(),
            structure: structure.clone(),
            axis: e1.clone(),
            rotation: Some(u.clone()),
            normalized: false,
            bound: Some(CoeffBound::new(1.0, 0)),
            form: SliceForm::Moebius {
                a: Complex64::new(0.3, -0.2),
            },
            series: moebius_series(&a, &u, degree)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Multivector, b: &Multivector, tol: f64) {
        assert!(a.distance(b) <= tol, "{a} vs {b}");
    }

    #[test]
    fn koebe_theta0_coefficients_and_value() {
        let s = SliceStructure::quaternion();
        let f = koebe_series(&s, &s.default_axis(), 0.0, 256).unwrap();
        for (k, a) in f.coeffs().iter().enumerate() {
            assert_eq!(*a, Multivector::scalar(s.context(), k as f64));
        }
        let v = f.eval(&Multivector::scalar(s.context(), 0.5)).unwrap();
        assert!((v.scalar_part() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn koebe_matches_star_construction() {
        // x * ((1 - x e^{Iθ})^{-*})^{*2}
        let s = SliceStructure::paravector(3).unwrap();
        let axis = s.sphere_sample(1, 4).remove(0);
        let theta = 0.7;
        let n = 40;
        let e = embed_complex(&s, Complex64::from_polar(1.0, theta), &axis);
        let base = SliceSeries::new(s.clone(), vec![s.one(), -e]).unwrap().truncate(n);
        let inv = base.star_inverse().unwrap();
        let sq = inv.star_product_capped(&inv, n).unwrap();
        let built = SliceSeries::identity(&s).star_product_capped(&sq, n).unwrap();
        let f = koebe_series(&s, &axis, theta, n).unwrap();
        for (a, b) in f.coeffs().iter().zip(built.coeffs()) {
            close(a, b, 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn koebe_derivative_coefficients() {
        let s = SliceStructure::quaternion();
        let theta = 0.4;
        let d = koebe_series(&s, &s.default_axis(), theta, 20).unwrap().derivative();
        for k in 1..=20usize {
            let expected = Complex64::from_polar((k * k) as f64, (k - 1) as f64 * theta);
            close(&d.coeffs()[k - 1], &embed_complex(&s, expected, &s.default_axis()), 1e-12);
        }
    }

    #[test]
    fn moebius_examples() {
        let s = SliceStructure::quaternion();
        let ctx = s.context();
        let zero = Multivector::zero(ctx);
        assert_eq!(moebius_series(&zero, &s.one(), 8).unwrap().truncate(1), SliceSeries::identity(&s));
        let e1 = Multivector::generator(ctx, 1);
        let f = moebius_series(&zero, &e1, 8).unwrap();
        assert_eq!(f.coeffs()[1], e1);
        assert!(f.coeffs().iter().enumerate().all(|(k, a)| k == 1 || a.norm() == 0.0));

        let a = e1.scale(0.5);
        let g = moebius_series(&a, &s.one(), 200).unwrap();
        assert!(g.eval(&a).unwrap().norm() < 1e-12);

        assert!(moebius_series(&e1, &s.one(), 4).is_err());
        assert!(moebius_series(&zero, &e1.scale(2.0), 4).is_err());
    }

    #[test]
    fn catalog_entries() {
        let s = SliceStructure::quaternion();
        let cat = seed_catalog(&s, 64).unwrap();
        let get = |name: &str| cat.iter().find(|f| f.name == name).unwrap();
        assert_eq!(get("identity").series.coeffs()[1], s.one());
        assert!(get("cayley").series.coeffs()[1..].iter().all(|a| *a == s.one()));
        let hs = &get("halfsquare").series;
        assert_eq!(hs.coeffs()[2], Multivector::scalar(s.context(), -0.5));
        assert!(hs.coeffs()[3..].iter().all(|a| a.norm() == 0.0));
        assert!(!get("moebius").normalized);
        for f in cat.iter().filter(|f| f.normalized) {
            assert!(f.series.coeffs()[0].norm() < 1e-15);
            assert!(f.series.coeffs()[1].distance(&s.one()) < 1e-15);
        }
        assert_eq!(seed_catalog(&SliceStructure::paravector(1).unwrap(), 8).unwrap().len(), 5);
    }

    #[test]
    fn closed_forms_match_series() {
        let s = SliceStructure::quaternion();
        let cat = seed_catalog(&s, 400).unwrap();
        let axes = s.sphere_sample(3, 2);
        for f in &cat {
            let d = f.series.derivative();
            for j in &axes {
                for &(u, v) in &[(0.3, 0.2), (-0.4, 0.1), (0.1, -0.5)] {
                    close(&f.value(u, v, j), &f.series.eval_slice(u, v, j), 1e-12);
                    close(&f.derivative_value(u, v, j), &d.eval_slice(u, v, j), 1e-11);
                }
            }
        }
    }
}
