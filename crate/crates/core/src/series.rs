//! Truncated power series `f(x) = Σ_{k=0}^{N} x^k a_k` with `R_n` coefficients.
//!
//! The variable always sits on the left of the coefficient. Evaluation splits
//! `x = u + vI`, raises `w = u + iv` to powers in `ℂ` and maps `w^k` back to
//! `Re(w^k) + Im(w^k) I`, which is exactly `x^k` because `x` lives in the
//! commutative plane `ℂ_I`.
//!
//! Everything here is pure: operations return fresh series.

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::slice::{SlicePoint, SliceStructure};

/// Default degree cap for `*`-products.
pub const DEFAULT_MAX_DEGREE: usize = 512;

/// Radius up to which evaluation is considered within contract.
pub const DEFAULT_R_MAX: f64 = 0.95;

/// Tolerance used when a coefficient is required to vanish.
pub const COEFF_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SliceSeries {
    structure: SliceStructure,
    coeffs: Vec<Multivector>,
}

/// A complex power series `Σ c_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a series needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Usage("non-finite complex coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `re + im·I` in the plane `ℂ_I`.
pub fn embed_complex(structure: &SliceStructure, z: Complex64, axis: &Multivector) -> Multivector {
    let mut m = axis.scale(z.im);
    m.coeffs_mut()[0] += z.re;
    let _ = structure;
    m
}

/// Coordinates of `x` along `1` and `I`; exact for elements of `ℂ_I`.
pub fn plane_coords(x: &Multivector, axis: &Multivector) -> Complex64 {
    Complex64::new(
        x.scalar_part(),
        x.coeffs().iter().zip(axis.coeffs()).map(|(a, b)| a * b).sum(),
    )
}

/// Distance from `x` to the plane `ℂ_I` (for a unit imaginary `I`).
pub fn plane_defect(x: &Multivector, axis: &Multivector) -> f64 {
    let z = plane_coords(x, axis);
    let mut r = x.clone();
    r.coeffs_mut()[0] -= z.re;
    r.add_scaled(-z.im, axis);
    r.norm()
}

impl SliceSeries {
    pub fn new(structure: SliceStructure, coeffs: Vec<Multivector>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a series needs at least one coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.n() != structure.n()) {
            return Err(Error::ContextMismatch {
                left: structure.n(),
                right: bad.n(),
            });
        }
        Ok(Self { structure, coeffs })
    }

    pub fn zero(structure: &SliceStructure, degree: usize) -> Self {
        let z = Multivector::zero(structure.context());
        Self {
            structure: structure.clone(),
            coeffs: vec![z; degree + 1],
        }
    }

    /// The constant series `1`.
    pub fn unit(structure: &SliceStructure) -> Self {
        Self {
            structure: structure.clone(),
            coeffs: vec![structure.one()],
        }
    }

    /// `f(x) = x`.
    pub fn identity(structure: &SliceStructure) -> Self {
        Self::monomial(structure, 1, structure.one())
    }

    /// `x^k c`.
    pub fn monomial(structure: &SliceStructure, k: usize, coeff: Multivector) -> Self {
        let mut s = Self::zero(structure, k);
        s.coeffs[k] = coeff;
        s
    }

    pub fn structure(&self) -> &SliceStructure {
        &self.structure
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Multivector] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Multivector> {
        self.coeffs.get(k)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(Multivector::norm).fold(0.0, f64::max)
    }

    fn check_structure(&self, other: &Self) -> Result<()> {
        if self.structure != other.structure {
            return Err(Error::Usage(format!(
                "series over different structures ({} R_{} vs {} R_{})",
                self.structure.kind().as_str(),
                self.structure.n(),
                other.structure.kind().as_str(),
                other.structure.n()
            )));
        }
        Ok(())
    }

    /// `Σ x^k a_k` at a point of the variable space.
    pub fn eval(&self, x: &Multivector) -> Result<Multivector> {
        let p = self.structure.decompose(x)?;
        Ok(self.eval_slice(p.u, p.v, &p.axis))
    }

    pub fn eval_point(&self, p: &SlicePoint) -> Result<Multivector> {
        self.structure.check_axis(&p.axis)?;
        Ok(self.eval_slice(p.u, p.v, &p.axis))
    }

    /// Evaluation at `u + vI` for an axis already known to be valid.
    pub fn eval_slice(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        let ctx = self.structure.context();
        let mut real_part = Multivector::zero(ctx);
        let mut imag_part = Multivector::zero(ctx);
        let w = Complex64::new(u, v);
        let mut power = Complex64::new(1.0, 0.0);
        for a in &self.coeffs {
            real_part.add_scaled(power.re, a);
            imag_part.add_scaled(power.im, a);
            power *= w;
        }
        real_part + axis * &imag_part
    }

    /// Values on `ℂ_I` at `z`, i.e. `f(Re z + Im z · I)` allowing negative imaginary part.
    pub fn eval_plane(&self, z: Complex64, axis: &Multivector) -> Multivector {
        if z.im >= 0.0 {
            self.eval_slice(z.re, z.im, axis)
        } else {
            self.eval_slice(z.re, -z.im, &-axis)
        }
    }

    /// Representation formula: reconstructs `f(u + vJ)` from `f(u ± vI)`.
    pub fn eval_representation(&self, axis: &Multivector, x: &Multivector) -> Result<Multivector> {
        self.structure.check_axis(axis)?;
        let p = self.structure.decompose(x)?;
        Ok(representation(
            &self.eval_slice(p.u, p.v, axis),
            &self.eval_slice(p.u, p.v, &-axis),
            axis,
            &p.axis,
        ))
    }

    /// Termwise slice derivative; the zero series for constants.
    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero(&self.structure, 0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, a)| a.scale((k + 1) as f64))
            .collect();
        Self {
            structure: self.structure.clone(),
            coeffs,
        }
    }

    /// `*`-product truncated at `min(N₁ + N₂, DEFAULT_MAX_DEGREE)`.
    pub fn star_product(&self, other: &Self) -> Result<Self> {
        self.star_product_capped(other, DEFAULT_MAX_DEGREE)
    }

    /// Cauchy product `c_k = Σ_j a_j b_{k-j}` with `self` on the left, truncated at `min(N₁ + N₂, cap)`.
    pub fn star_product_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_structure(other)?;
        let degree = (self.degree() + other.degree()).min(cap);
        let ctx = self.structure.context();
        let mut coeffs = Vec::with_capacity(degree + 1);
        for k in 0..=degree {
            let mut c = Multivector::zero(ctx);
            let lo = k.saturating_sub(other.degree());
            let hi = k.min(self.degree());
            for j in lo..=hi {
                c += &(&self.coeffs[j] * &other.coeffs[k - j]);
            }
            coeffs.push(c);
        }
        Ok(Self {
            structure: self.structure.clone(),
            coeffs,
        })
    }

    /// Coefficientwise sum, padding the shorter series with zeros.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_structure(other)?;
        let degree = self.degree().max(other.degree());
        let mut out = Self::zero(&self.structure, degree);
        for (k, a) in self.coeffs.iter().enumerate() {
            out.coeffs[k] += a;
        }
        for (k, b) in other.coeffs.iter().enumerate() {
            out.coeffs[k] += b;
        }
        Ok(out)
    }

    /// `f^c(x) = Σ x^k ā_k`.
    pub fn conjugate(&self) -> Self {
        Self {
            structure: self.structure.clone(),
            coeffs: self.coeffs.iter().map(Multivector::conjugate).collect(),
        }
    }

    /// `f^s = f * f^c`.
    pub fn symmetrization(&self) -> Self {
        self.star_product(&self.conjugate())
            .expect("a series and its conjugate share a structure")
    }

    /// Series `g` with `f * g = g * f = 1` up to the degree of `f`.
    pub fn star_inverse(&self) -> Result<Self> {
        let head_inv = self.coeffs[0].inverse()?;
        let ctx = self.structure.context();
        let mut out: Vec<Multivector> = Vec::with_capacity(self.coeffs.len());
        out.push(head_inv.clone());
        for k in 1..=self.degree() {
            let mut acc = Multivector::zero(ctx);
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&head_inv * &acc));
        }
        Ok(Self {
            structure: self.structure.clone(),
            coeffs: out,
        })
    }

    /// Pointwise `f^s(x)^{-1} f^c(x)`.
    pub fn star_inverse_eval(&self, x: &Multivector) -> Result<Multivector> {
        PointwiseStarInverse::new(self).eval(x)
    }

    /// First `degree + 1` coefficients (zero padded when the series is shorter).
    pub fn truncate(&self, degree: usize) -> Self {
        let mut coeffs: Vec<Multivector> = self.coeffs.iter().take(degree + 1).cloned().collect();
        while coeffs.len() < degree + 1 {
            coeffs.push(Multivector::zero(self.structure.context()));
        }
        Self {
            structure: self.structure.clone(),
            coeffs,
        }
    }

    /// `g` with `f = x g`; requires `a_0 = 0`.
    pub fn divide_by_variable(&self) -> Result<Self> {
        if self.coeffs[0].norm() > COEFF_ZERO_TOL {
            return Err(Error::Usage(format!(
                "cannot divide by x: constant term {} is nonzero",
                self.coeffs[0]
            )));
        }
        if self.degree() == 0 {
            return Ok(Self::zero(&self.structure, 0));
        }
        Ok(Self {
            structure: self.structure.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// The series of `x f'(x) * f^{-*}(x)`, computed as `f' * g^{-*}` with `f = x g`.
    ///
    /// Only the first `N` coefficients of the product are exact for a degree-`N`
    /// input, so the result is truncated at degree `N - 1`.
    pub fn ratio_series(&self) -> Result<Self> {
        let g = self.divide_by_variable()?;
        let g_inv = g.star_inverse()?;
        let d = self.derivative();
        let cap = self.degree().saturating_sub(1);
        Ok(d.star_product_capped(&g_inv, cap)?.truncate(cap))
    }

    pub fn ratio_eval(&self, x: &Multivector) -> Result<Multivector> {
        self.ratio_series()?.eval(x)
    }

    /// Coefficients `a_k u`, the series of `x ↦ f(x) u`.
    pub fn right_mul(&self, u: &Multivector) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(u))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            structure: self.structure.clone(),
            coeffs,
        })
    }

    /// Largest distance of a coefficient from the plane `ℂ_I`.
    pub fn plane_defect(&self, axis: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .map(|a| plane_defect(a, axis))
            .fold(0.0, f64::max)
    }

    /// Complex coefficients of a series whose coefficients lie in `ℂ_I`.
    pub fn plane_series(&self, axis: &Multivector) -> ComplexSeries {
        ComplexSeries {
            coeffs: self.coeffs.iter().map(|a| plane_coords(a, axis)).collect(),
        }
    }
}

/// `½(f(y) + f(ȳ)) + ½ J I (f(ȳ) - f(y))` with `y = u + vI`.
pub fn representation(
    at_y: &Multivector,
    at_ybar: &Multivector,
    axis: &Multivector,
    target_axis: &Multivector,
) -> Multivector {
    let mean = (at_y + at_ybar).scale(0.5);
    let jump = (at_ybar - at_y).scale(0.5);
    mean + (target_axis * axis) * jump
}

/// Precomputed `f^s` and `f^c` for repeated pointwise inverse evaluation.
#[derive(Clone, Debug)]
pub struct PointwiseStarInverse {
    symmetrization: SliceSeries,
    conjugate: SliceSeries,
}

impl PointwiseStarInverse {
    pub fn new(f: &SliceSeries) -> Self {
        Self {
            symmetrization: f.symmetrization(),
            conjugate: f.conjugate(),
        }
    }

    pub fn eval(&self, x: &Multivector) -> Result<Multivector> {
        let s = self.symmetrization.eval(x)?;
        let inv = s.inverse().map_err(|_| Error::ZeroSet)?;
        Ok(inv * self.conjugate.eval(x)?)
    }
}

/// Slice extension: `a_k = Re(c_k) + Im(c_k)·I`.
pub fn ext(f: &ComplexSeries, axis: &Multivector, structure: &SliceStructure) -> Result<SliceSeries> {
    structure.check_axis(axis)?;
    let coeffs = f
        .coeffs
        .iter()
        .map(|&c| embed_complex(structure, c, axis))
        .collect();
    SliceSeries::new(structure.clone(), coeffs)
}

/// Coefficient growth model `|a_k| <= c·k^p` for `k >= 1`, used to bound truncation tails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffBound {
    pub c: f64,
    pub p: i32,
}

impl CoeffBound {
    pub const fn new(c: f64, p: i32) -> Self {
        Self { c, p }
    }

    /// `Σ_{k>N} c k^p r^k`, summed until the terms are negligible.
    pub fn tail(&self, degree: usize, r: f64) -> f64 {
        power_tail(self.c, self.p, degree, r, 0)
    }

    /// Tail of the derivative series, `Σ_{k>N} c k^{p+1} r^{k-1}`.
    pub fn derivative_tail(&self, degree: usize, r: f64) -> f64 {
        power_tail(self.c, self.p + 1, degree, r, 1)
    }
}

fn power_tail(c: f64, p: i32, degree: usize, r: f64, shift: i32) -> f64 {
    assert!((0.0..1.0).contains(&r), "tail bounds need 0 <= r < 1");
    if c == 0.0 || r == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut k = degree as f64 + 1.0;
    loop {
        let term = c * k.powi(p) * r.powf(k - f64::from(shift));
        sum += term;
        // terms decrease once k > p / (1 - r)
        if k > f64::from(p.max(0)) / (1.0 - r) && term <= sum * 1e-17 {
            break;
        }
        if !sum.is_finite() {
            return f64::INFINITY;
        }
        k += 1.0;
    }
    sum
}

/// Closed form of `C Σ_{k>N} k r^k = C r^{N+1}((N+1)(1-r)+r)/(1-r)²`.
pub fn linear_growth_tail(c: f64, degree: usize, r: f64) -> f64 {
    let n1 = degree as f64 + 1.0;
    c * r.powf(n1) * (n1 * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Multivector as Mv;

    fn quat() -> SliceStructure {
        SliceStructure::quaternion()
    }

    fn gen(s: &SliceStructure, i: usize) -> Mv {
        Mv::generator(s.context(), i)
    }

    fn close(a: &Mv, b: &Mv, tol: f64) {
        assert!(a.distance(b) <= tol, "{a} vs {b}");
    }

    #[test]
    fn eval_identity() {
        let s = SliceStructure::paravector(3).unwrap();
        let f = SliceSeries::identity(&s);
        let x = s.point_from_coords(&[0.3, 0.0, 0.4, 0.0]).unwrap();
        close(&f.eval(&x).unwrap(), &x, 1e-16);
    }

    #[test]
    fn eval_monomial_matches_direct_product() {
        let s = SliceStructure::paravector(3).unwrap();
        let f = SliceSeries::monomial(&s, 2, gen(&s, 1));
        let x = gen(&s, 2);
        close(&f.eval(&x).unwrap(), &-gen(&s, 1), 1e-15);
        // direct x·x·a
        let y = s.point_from_coords(&[0.2, -0.1, 0.5, 0.3]).unwrap();
        let direct = &(&y * &y) * &gen(&s, 1);
        close(&f.eval(&y).unwrap(), &direct, 1e-15);
    }

    #[test]
    fn eval_rejects_outside_points() {
        let s = SliceStructure::paravector(2).unwrap();
        let f = SliceSeries::identity(&s);
        let bad = Mv::blade(s.context(), 0b11);
        assert!(matches!(f.eval(&bad), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn ext_of_geometric_series() {
        let s = SliceStructure::paravector(2).unwrap();
        let mut c = vec![Complex64::new(1.0, 0.0); 80];
        c[0] = Complex64::new(0.0, 0.0);
        let f = ext(&ComplexSeries::new(c).unwrap(), &gen(&s, 1), &s).unwrap();
        let v = f.eval(&Mv::scalar(s.context(), 0.5)).unwrap();
        assert!((v.scalar_part() - 1.0).abs() <= linear_growth_tail(1.0, 79, 0.5));
    }

    #[test]
    fn ext_embedding_rule() {
        let s = SliceStructure::paravector(3).unwrap();
        let c = vec![0.0.into(), 1.0.into(), Complex64::new(0.0, 1.0)];
        let f = ext(&ComplexSeries::new(c).unwrap(), &gen(&s, 2), &s).unwrap();
        assert_eq!(f.coeffs()[1], s.one());
        assert_eq!(f.coeffs()[2], gen(&s, 2));
        assert!(ext(&ComplexSeries::new(vec![1.0.into()]).unwrap(), &s.one(), &s).is_err());
    }

    #[test]
    fn derivative_examples() {
        let s = quat();
        assert_eq!(SliceSeries::identity(&s).derivative(), SliceSeries::unit(&s));
        let f = SliceSeries::monomial(&s, 3, gen(&s, 2));
        let d = f.derivative();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.coeffs()[2], gen(&s, 2).scale(3.0));
        assert_eq!(SliceSeries::unit(&s).derivative(), SliceSeries::zero(&s, 0));
    }

    #[test]
    fn star_product_examples() {
        let s = quat();
        let f = SliceSeries::monomial(&s, 1, gen(&s, 1));
        let g = SliceSeries::monomial(&s, 1, gen(&s, 2));
        let fg = f.star_product(&g).unwrap();
        assert_eq!(fg.coeffs()[2], Mv::blade(s.context(), 0b11));
        let gf = g.star_product(&f).unwrap();
        assert_eq!(gf.coeffs()[2], -Mv::blade(s.context(), 0b11));

        assert_eq!(f.star_product(&SliceSeries::unit(&s)).unwrap(), f);
        let x = SliceSeries::identity(&s);
        let x2 = x.star_product(&x).unwrap();
        assert_eq!(x2, SliceSeries::monomial(&s, 2, s.one()));

        let p = SliceSeries::paravector_mismatch_probe();
        assert!(matches!(x.star_product(&p), Err(Error::Usage(_))));
    }

    impl SliceSeries {
        fn paravector_mismatch_probe() -> Self {
            SliceSeries::identity(&SliceStructure::paravector(2).unwrap())
        }
    }

    #[test]
    fn star_product_respects_cap() {
        let s = quat();
        let x = SliceSeries::identity(&s);
        let p = x.star_product_capped(&x, 1).unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn conjugate_and_symmetrization() {
        let s = quat();
        let f = SliceSeries::monomial(&s, 1, gen(&s, 1));
        assert_eq!(f.conjugate().coeffs()[1], -gen(&s, 1));
        assert_eq!(f.conjugate().conjugate(), f);
        let fs = f.symmetrization();
        assert_eq!(fs, SliceSeries::monomial(&s, 2, s.one()));
        assert_eq!(SliceSeries::unit(&s).symmetrization(), SliceSeries::unit(&s));
    }

    #[test]
    fn star_inverse_geometric() {
        let s = quat();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q0 = (&gen(&s, 1) + &Mv::blade(s.context(), 0b11)).scale(h);
        let f = SliceSeries::new(s.clone(), vec![s.one(), -&q0]).unwrap().truncate(6);
        let inv = f.star_inverse().unwrap();
        let mut power = s.one();
        for k in 0..=6 {
            close(&inv.coeffs()[k], &power, 1e-15);
            power = &power * &q0;
        }
        assert_eq!(SliceSeries::unit(&s).star_inverse().unwrap(), SliceSeries::unit(&s));
    }

    #[test]
    fn star_inverse_needs_invertible_head() {
        let s = SliceStructure::paravector(3).unwrap();
        let zd = &s.one() + &Mv::blade(s.context(), 0b111);
        let f = SliceSeries::new(s.clone(), vec![zd, s.one()]).unwrap();
        assert_eq!(f.star_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn pointwise_inverse_examples() {
        let s = SliceStructure::paravector(2).unwrap();
        let x = s.point_from_coords(&[0.1, 0.2, -0.3]).unwrap();
        close(&SliceSeries::unit(&s).star_inverse_eval(&x).unwrap(), &s.one(), 1e-15);

        let f = SliceSeries::new(s.clone(), vec![s.one(), -gen(&s, 1)]).unwrap();
        let half = Mv::scalar(s.context(), 0.5);
        let expected = (&s.one() + &gen(&s, 1).scale(0.5)).scale(1.0 / 1.25);
        close(&f.star_inverse_eval(&half).unwrap(), &expected, 1e-15);

        let id = SliceSeries::identity(&s);
        assert_eq!(id.star_inverse_eval(&Mv::zero(s.context())), Err(Error::ZeroSet));
    }

    #[test]
    fn divide_by_variable_examples() {
        let s = quat();
        let x = SliceSeries::identity(&s);
        assert_eq!(x.divide_by_variable().unwrap(), SliceSeries::unit(&s));
        let one_plus_x = SliceSeries::new(s.clone(), vec![s.one(), s.one()]).unwrap();
        assert!(matches!(one_plus_x.divide_by_variable(), Err(Error::Usage(_))));
    }

    #[test]
    fn ratio_of_identity_is_one() {
        let s = quat();
        let x = SliceSeries::identity(&s);
        let p = s.point_from_coords(&[0.2, 0.1, -0.3, 0.4]).unwrap();
        close(&x.ratio_eval(&p).unwrap(), &s.one(), 1e-15);
        close(&x.ratio_eval(&Mv::zero(s.context())).unwrap(), &s.one(), 1e-15);
    }

    #[test]
    fn representation_collapses_on_axis() {
        let s = quat();
        let f = SliceSeries::new(
            s.clone(),
            vec![gen(&s, 2), gen(&s, 1), Mv::blade(s.context(), 3).scale(0.5)],
        )
        .unwrap();
        let i = gen(&s, 1);
        let y = s.embed(&SlicePoint::new(0.2, 0.3, i.clone()).unwrap()).unwrap();
        close(&f.eval_representation(&i, &y).unwrap(), &f.eval(&y).unwrap(), 1e-15);
        let ybar = s.embed(&SlicePoint::new(0.2, 0.3, -&i).unwrap()).unwrap();
        close(&f.eval_representation(&i, &ybar).unwrap(), &f.eval(&ybar).unwrap(), 1e-15);
    }

    #[test]
    fn tail_closed_form_matches_sum() {
        for &(n, r) in &[(10usize, 0.5), (128, 0.75), (512, 0.9), (64, 0.95)] {
            let closed = linear_growth_tail(2.0, n, r);
            let summed = CoeffBound::new(2.0, 1).tail(n, r);
            assert!((closed - summed).abs() <= 1e-12 * closed.max(1e-300), "{n} {r}");
        }
        assert!(linear_growth_tail(1.0, 512, 0.9) < 1e-12);
        assert_eq!(CoeffBound::new(0.0, 1).tail(5, 0.5), 0.0);
    }

    #[test]
    fn plane_helpers() {
        let s = SliceStructure::paravector(3).unwrap();
        let i = gen(&s, 2);
        let z = Complex64::new(0.3, -0.7);
        let m = embed_complex(&s, z, &i);
        assert_eq!(plane_coords(&m, &i), z);
        assert!(plane_defect(&m, &i) < 1e-16);
        assert!((plane_defect(&gen(&s, 1), &i) - 1.0).abs() < 1e-16);
    }
}
