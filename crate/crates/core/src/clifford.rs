//! Dense arithmetic in the real Clifford algebra `R_n` with `e_i e_j + e_j e_i = -2 δ_ij`.
//!
//! Blades are addressed by bitmask: bit `i - 1` set means `e_i` is a factor, and
//! factors are kept in increasing index order. The product of two blades is
//! always the blade `a ^ b`; only the sign depends on the pair, and it is
//! precomputed once per dimension.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 8;

/// Relative pivot threshold below which a left-multiplication operator is treated as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

/// Blade sign table for `R_n`.
#[derive(Debug, PartialEq)]
pub struct CliffordContext {
    n: usize,
    dim: usize,
    signs: Vec<f64>,
}

/// Sign of `e_a e_b` relative to the canonically ordered blade `e_{a^b}`.
///
/// Moving each generator of `b` leftward past the higher generators of `a`
/// costs one transposition each; every shared generator then squares to `-1`.
pub fn blade_product_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the Clifford conjugate on a blade of grade `r`: `(-1)^{r(r+1)/2}`.
pub fn conjugation_sign(grade: u32) -> f64 {
    match grade % 4 {
        0 | 3 => 1.0,
        _ => -1.0,
    }
}

impl CliffordContext {
    /// Builds the sign table for `R_n`, `1 <= n <= 8`.
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_GENERATORS).contains(&n) {
            return Err(Error::Config(format!(
                "generator count must lie in 1..={MAX_GENERATORS}, got {n}"
            )));
        }
        let dim = 1usize << n;
        let mut signs = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                signs.push(blade_product_sign(a, b));
            }
        }
        Ok(Self { n, dim, signs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(sign, mask)` with `e_a e_b = sign * e_mask`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> (f64, usize) {
        (self.signs[a * self.dim + b], a ^ b)
    }
}

/// Shared, lazily built context for `R_n`. Contexts are immutable, so one per `n` suffices.
pub fn context(n: usize) -> Result<Arc<CliffordContext>> {
    static CACHE: [OnceLock<Arc<CliffordContext>>; MAX_GENERATORS] =
        [const { OnceLock::new() }; MAX_GENERATORS];
    if !(1..=MAX_GENERATORS).contains(&n) {
        return Err(Error::Config(format!(
            "generator count must lie in 1..={MAX_GENERATORS}, got {n}"
        )));
    }
    Ok(CACHE[n - 1]
        .get_or_init(|| Arc::new(CliffordContext::new(n).expect("n validated above")))
        .clone())
}

/// An element `b = Σ_A b_A e_A` of `R_n`, stored densely in blade-mask order.
#[derive(Clone)]
pub struct Multivector {
    ctx: Arc<CliffordContext>,
    coeffs: Vec<f64>,
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(R_{}: {})", self.ctx.n, self)
    }
}

/// Writes a blade mask as `e1`, `e12`, `e134`, ...
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return String::new();
    }
    let mut s = String::from("e");
    for i in 0..MAX_GENERATORS {
        if mask & (1 << i) != 0 {
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            if mask == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{}", blade_name(mask))?;
            } else {
                write!(f, "{mag}{}", blade_name(mask))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Multivector {
    pub fn new(ctx: Arc<CliffordContext>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != ctx.dim {
            return Err(Error::Usage(format!(
                "R_{} needs {} coefficients, got {}",
                ctx.n,
                ctx.dim,
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Usage(format!("non-finite coefficient {bad}")));
        }
        Ok(Self { ctx, coeffs })
    }

    pub fn zero(ctx: &Arc<CliffordContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            coeffs: vec![0.0; ctx.dim],
        }
    }

    pub fn scalar(ctx: &Arc<CliffordContext>, value: f64) -> Self {
        let mut m = Self::zero(ctx);
        m.coeffs[0] = value;
        m
    }

    pub fn one(ctx: &Arc<CliffordContext>) -> Self {
        Self::scalar(ctx, 1.0)
    }

    /// The basis blade `e_mask`.
    pub fn blade(ctx: &Arc<CliffordContext>, mask: usize) -> Self {
        assert!(mask < ctx.dim, "blade mask {mask} out of range for R_{}", ctx.n);
        let mut m = Self::zero(ctx);
        m.coeffs[mask] = 1.0;
        m
    }

    /// The generator `e_i`, `1 <= i <= n`.
    pub fn generator(ctx: &Arc<CliffordContext>, i: usize) -> Self {
        assert!((1..=ctx.n).contains(&i), "generator e{i} out of range for R_{}", ctx.n);
        Self::blade(ctx, 1 << (i - 1))
    }

    /// `x_0 + x_1 e_1 + ... + x_n e_n`.
    pub fn paravector(ctx: &Arc<CliffordContext>, components: &[f64]) -> Result<Self> {
        if components.len() != ctx.n + 1 {
            return Err(Error::Usage(format!(
                "paravector in R^{} needs {} components, got {}",
                ctx.n + 1,
                ctx.n + 1,
                components.len()
            )));
        }
        let mut m = Self::zero(ctx);
        m.coeffs[0] = components[0];
        for (i, &x) in components[1..].iter().enumerate() {
            m.coeffs[1 << i] = x;
        }
        Self::new(ctx.clone(), m.coeffs)
    }

    pub fn context(&self) -> &Arc<CliffordContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Euclidean norm on `R_n ≅ R^{2^n}`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx.n != other.ctx.n {
            return Err(Error::ContextMismatch {
                left: self.ctx.n,
                right: other.ctx.n,
            });
        }
        Ok(())
    }

    /// Euclidean inner product `Sc(a b̄) = Σ_A a_A b_A`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.dot(other))
    }

    #[inline]
    fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.geometric(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out -= other;
        Ok(out)
    }

    fn geometric(&self, other: &Self) -> Self {
        let dim = self.ctx.dim;
        let mut out = vec![0.0; dim];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            let row = &self.ctx.signs[a * dim..(a + 1) * dim];
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb != 0.0 {
                    out[a ^ b] += row[b] * ca * cb;
                }
            }
        }
        Self {
            ctx: self.ctx.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self += s * other`, the workhorse of series evaluation.
    pub fn add_scaled(&mut self, s: f64, other: &Self) {
        debug_assert_eq!(self.ctx.n, other.ctx.n);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    /// Clifford conjugate, the anti-automorphism with `ē_i = -e_i`.
    pub fn conjugate(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(mask, &c)| c * conjugation_sign(mask.count_ones()))
                .collect(),
        }
    }

    /// True when every blade of grade above one is within `tol` of zero.
    pub fn is_paravector(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| mask.count_ones() <= 1 || c.abs() <= tol)
    }

    /// Two-sided inverse.
    ///
    /// Paravectors use `x̄ / |x|²`. Everything else solves `L_a y = 1` for the
    /// left-multiplication operator of `a` with partial pivoting; if the smallest
    /// pivot falls below `PIVOT_THRESHOLD` times the largest, `a` is reported as
    /// a zero divisor.
    pub fn inverse(&self) -> Result<Self> {
        let nsq = self.norm_sqr();
        if nsq == 0.0 {
            return Err(Error::NotInvertible);
        }
        if self.is_paravector(0.0) {
            return Ok(self.conjugate().scale(1.0 / nsq));
        }
        let dim = self.ctx.dim;
        let op = self.left_operator();
        let lu = op.lu();
        let u = lu.u();
        let pivots = u.diagonal().map(f64::abs);
        let (min, max) = (pivots.min(), pivots.max());
        if max == 0.0 || min.is_nan() || max.is_nan() || min < PIVOT_THRESHOLD * max {
            return Err(Error::NotInvertible);
        }
        let mut rhs = DVector::zeros(dim);
        rhs[0] = 1.0;
        let sol = lu.solve(&rhs).ok_or(Error::NotInvertible)?;
        Self::new(self.ctx.clone(), sol.iter().copied().collect())
    }

    /// Matrix of `y ↦ self * y` in the blade basis.
    pub fn left_operator(&self) -> DMatrix<f64> {
        let dim = self.ctx.dim;
        let mut op = DMatrix::zeros(dim, dim);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for b in 0..dim {
                let (s, c) = self.ctx.product(a, b);
                op[(c, b)] += s * ca;
            }
        }
        op
    }

    /// `½(ab - ba)`.
    pub fn wedge_half(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ab = self.geometric(other);
        let ba = other.geometric(self);
        Ok((ab - ba).scale(0.5))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn assert_same(a: &Multivector, b: &Multivector) {
    assert_eq!(
        a.ctx.n, b.ctx.n,
        "multivector context mismatch: R_{} vs R_{}",
        a.ctx.n, b.ctx.n
    );
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_same(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_same(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                assert_same(self, rhs);
                $body(self, rhs)
            }
        }
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $tr<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Multivector, b: &Multivector| {
    let mut out = a.clone();
    out += b;
    out
});
forward_binop!(Sub, sub, |a: &Multivector, b: &Multivector| {
    let mut out = a.clone();
    out -= b;
    out
});
forward_binop!(Mul, mul, |a: &Multivector, b: &Multivector| a.geometric(b));

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<CliffordContext> {
        context(n).unwrap()
    }

    fn mv(n: usize, terms: &[(usize, f64)]) -> Multivector {
        let c = ctx(n);
        let mut m = Multivector::zero(&c);
        for &(mask, v) in terms {
            m.coeffs[mask] += v;
        }
        m
    }

    fn assert_close(a: &Multivector, b: &Multivector, tol: f64) {
        assert!(a.distance(b) <= tol, "{a} != {b}");
    }

    #[test]
    fn context_range() {
        assert!(matches!(CliffordContext::new(0), Err(Error::Config(_))));
        assert!(matches!(CliffordContext::new(9), Err(Error::Config(_))));
        assert_eq!(CliffordContext::new(8).unwrap().dim(), 256);
    }

    #[test]
    fn blade_products() {
        let c2 = ctx(2);
        assert_eq!(c2.product(0b01, 0b10), (1.0, 0b11));
        assert_eq!(c2.product(0b01, 0b01), (-1.0, 0));
        let c3 = ctx(3);
        assert_eq!(c3.product(0b10, 0b01), (-1.0, 0b11));
    }

    #[test]
    fn generators_square_to_minus_one_and_anticommute() {
        for n in 1..=MAX_GENERATORS {
            let c = ctx(n);
            for i in 0..n {
                assert_eq!(c.product(1 << i, 1 << i), (-1.0, 0));
                for j in 0..n {
                    if i != j {
                        let (s1, m1) = c.product(1 << i, 1 << j);
                        let (s2, m2) = c.product(1 << j, 1 << i);
                        assert_eq!(m1, m2);
                        assert_eq!(s1, -s2);
                    }
                }
            }
        }
    }

    #[test]
    fn sign_table_is_associative() {
        let c = ctx(4);
        for a in 0..16 {
            for b in 0..16 {
                for d in 0..16 {
                    let (s1, m1) = c.product(a, b);
                    let (s2, m2) = c.product(m1, d);
                    let (t1, k1) = c.product(b, d);
                    let (t2, k2) = c.product(a, k1);
                    assert_eq!(m2, k2);
                    assert_eq!(s1 * s2, t1 * t2, "({a},{b},{d})");
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let a = mv(1, &[(0, 1.0), (1, 1.0)]);
        let b = mv(1, &[(0, 1.0), (1, -1.0)]);
        assert_eq!(&a * &b, mv(1, &[(0, 2.0)]));

        let e12 = mv(2, &[(3, 1.0)]);
        assert_eq!(&e12 * &e12, mv(2, &[(0, -1.0)]));

        let p = mv(3, &[(0, 1.0), (7, 1.0)]);
        let q = mv(3, &[(0, 1.0), (7, -1.0)]);
        let prod = &p * &q;
        assert!(prod.coeffs().iter().all(|&c| c == 0.0));
        let e123 = mv(3, &[(7, 1.0)]);
        assert_eq!(&e123 * &e123, mv(3, &[(0, 1.0)]));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = mv(2, &[(0, 1.0)]);
        let b = mv(3, &[(0, 1.0)]);
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::ContextMismatch { left: 2, right: 3 })
        );
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let e1 = mv(2, &[(1, 1.0)]);
        assert_eq!(e1.conjugate(), mv(2, &[(1, -1.0)]));
        let e12 = mv(2, &[(3, 1.0)]);
        assert_eq!(e12.conjugate(), mv(2, &[(3, -1.0)]));
        assert_eq!(mv(2, &[(0, 3.0)]).conjugate(), mv(2, &[(0, 3.0)]));
        // grade 3 keeps its sign
        assert_eq!(mv(3, &[(7, 2.0)]).conjugate(), mv(3, &[(7, 2.0)]));
    }

    #[test]
    fn inner_examples() {
        let e1 = mv(2, &[(1, 1.0)]);
        let e2 = mv(2, &[(2, 1.0)]);
        assert_eq!(e1.inner(&e1).unwrap(), 1.0);
        assert_eq!(e1.inner(&e2).unwrap(), 0.0);
        let a = mv(2, &[(0, 1.0), (3, 2.0)]);
        let b = mv(2, &[(0, 3.0), (3, 4.0)]);
        assert_eq!(a.inner(&b).unwrap(), 11.0);
        // Sc(a b̄) agrees with the dot product
        assert_eq!((&a * &b.conjugate()).scalar_part(), 11.0);
    }

    #[test]
    fn inverse_examples() {
        let a = mv(1, &[(0, 1.0), (1, 1.0)]);
        assert_close(&a.inverse().unwrap(), &mv(1, &[(0, 0.5), (1, -0.5)]), 1e-15);

        let e12 = mv(2, &[(3, 1.0)]);
        assert_close(&e12.inverse().unwrap(), &mv(2, &[(3, -1.0)]), 1e-15);

        let zd = mv(3, &[(0, 1.0), (7, 1.0)]);
        assert_eq!(zd.inverse(), Err(Error::NotInvertible));
        assert_eq!(Multivector::zero(&ctx(3)).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn general_inverse_is_two_sided() {
        let a = mv(4, &[(0, 0.3), (3, 1.0), (5, -0.7), (14, 0.25), (15, 0.1)]);
        let inv = a.inverse().unwrap();
        let one = Multivector::one(&ctx(4));
        assert_close(&(&a * &inv), &one, 1e-12);
        assert_close(&(&inv * &a), &one, 1e-12);
    }

    #[test]
    fn wedge_examples() {
        let c = ctx(3);
        let e1 = Multivector::generator(&c, 1);
        let e2 = Multivector::generator(&c, 2);
        assert_eq!(e1.wedge_half(&e2).unwrap(), Multivector::blade(&c, 0b11));
        assert_eq!(e1.wedge_half(&e1).unwrap(), Multivector::zero(&c));
        let j = (&e1 + &e2).scale(std::f64::consts::FRAC_1_SQRT_2);
        let w = e1.wedge_half(&j).unwrap();
        assert!((w.norm_sqr() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn display_is_readable() {
        let m = mv(3, &[(0, 1.5), (1, -1.0), (6, 2.0)]);
        assert_eq!(m.to_string(), "1.5 - e1 + 2e23");
        assert_eq!(Multivector::zero(&ctx(2)).to_string(), "0");
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Multivector::new(ctx(1), vec![f64::NAN, 0.0]).is_err());
        assert!(Multivector::new(ctx(1), vec![0.0]).is_err());
    }
}
