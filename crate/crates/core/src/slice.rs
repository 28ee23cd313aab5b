//! Variable spaces and their slice geometry.
//!
//! A [`SliceStructure`] fixes the algebra, the subspace in which the variable
//! lives and the imaginary sphere `𝕊` of admissible slice axes. Every variable
//! `x` decomposes as `u + vI` with `v >= 0` and `I ∈ 𝕊`.

use std::sync::Arc;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::clifford::{context, CliffordContext, Multivector};
use crate::error::{Error, Result};
use crate::rng::substream;

/// Absolute tolerance on stray blade coefficients and on the unit/imaginary tests.
pub const SUBSPACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    /// Paravectors `x_0 + x_1 e_1 + ... + x_n e_n` in `R_n`.
    Paravector,
    /// All of `ℍ ≅ R_2` with `i = e_1`, `j = e_2`, `k = e_1 e_2`.
    Quaternion,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Paravector => "paravector",
            StructureKind::Quaternion => "quaternion",
        }
    }
}

impl std::str::FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paravector" => Ok(StructureKind::Paravector),
            "quaternion" => Ok(StructureKind::Quaternion),
            other => Err(Error::Parse(format!("unknown structure `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SliceStructure {
    kind: StructureKind,
    ctx: Arc<CliffordContext>,
    imaginary: Vec<usize>,
}

impl PartialEq for SliceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.ctx.n() == other.ctx.n()
    }
}

/// A point `u + vI` in slice form.
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePoint {
    pub u: f64,
    pub v: f64,
    pub axis: Multivector,
}

impl SlicePoint {
    pub fn new(u: f64, v: f64, axis: Multivector) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) || v < 0.0 {
            return Err(Error::InvalidPoint(format!(
                "slice coordinates must be finite with v >= 0, got u={u}, v={v}"
            )));
        }
        Ok(Self { u, v, axis })
    }

    /// The conjugate point `u - vI`, written with axis `-I`.
    pub fn reflected(&self) -> Self {
        Self {
            u: self.u,
            v: self.v,
            axis: -&self.axis,
        }
    }
}

impl SliceStructure {
    pub fn paravector(n: usize) -> Result<Self> {
        let ctx = context(n)?;
        Ok(Self {
            kind: StructureKind::Paravector,
            imaginary: (0..n).map(|i| 1 << i).collect(),
            ctx,
        })
    }

    pub fn quaternion() -> Self {
        Self {
            kind: StructureKind::Quaternion,
            ctx: context(2).expect("R_2 exists"),
            imaginary: vec![0b01, 0b10, 0b11],
        }
    }

    /// Builds a structure from its kind and generator count; quaternions require `n = 2`.
    pub fn from_kind(kind: StructureKind, n: usize) -> Result<Self> {
        match kind {
            StructureKind::Paravector => Self::paravector(n),
            StructureKind::Quaternion if n == 2 => Ok(Self::quaternion()),
            StructureKind::Quaternion => Err(Error::Config(format!(
                "quaternion structure lives in R_2, got n = {n}"
            ))),
        }
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn context(&self) -> &Arc<CliffordContext> {
        &self.ctx
    }

    /// Blade masks spanning the ambient space of `𝕊`.
    pub fn imaginary_masks(&self) -> &[usize] {
        &self.imaginary
    }

    /// Real dimension of the variable space (`n + 1` or `4`).
    pub fn variable_dim(&self) -> usize {
        self.imaginary.len() + 1
    }

    pub fn one(&self) -> Multivector {
        Multivector::one(&self.ctx)
    }

    /// The default axis `e_1`, used for real points.
    pub fn default_axis(&self) -> Multivector {
        Multivector::generator(&self.ctx, 1)
    }

    fn stray(&self, x: &Multivector) -> f64 {
        x.coeffs()
            .iter()
            .enumerate()
            .filter(|(mask, _)| *mask != 0 && !self.imaginary.contains(mask))
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    fn check_context(&self, x: &Multivector) -> Result<()> {
        if x.n() != self.n() {
            return Err(Error::ContextMismatch {
                left: self.n(),
                right: x.n(),
            });
        }
        Ok(())
    }

    /// Whether `x` lies in the variable subspace.
    pub fn contains(&self, x: &Multivector) -> bool {
        x.n() == self.n() && self.stray(x) <= SUBSPACE_TOL
    }

    /// Validates that `axis` is a unit element of `𝕊` squaring to `-1`.
    pub fn check_axis(&self, axis: &Multivector) -> Result<()> {
        self.check_context(axis)?;
        if self.stray(axis) > SUBSPACE_TOL || axis.scalar_part().abs() > SUBSPACE_TOL {
            return Err(Error::InvalidPoint(format!(
                "axis {axis} is not purely imaginary for the {} structure",
                self.kind.as_str()
            )));
        }
        if (axis.norm() - 1.0).abs() > SUBSPACE_TOL {
            return Err(Error::InvalidPoint(format!("axis {axis} is not a unit element")));
        }
        let sq = axis * axis;
        let minus_one = Multivector::scalar(&self.ctx, -1.0);
        if sq.distance(&minus_one) > SUBSPACE_TOL {
            return Err(Error::InvalidPoint(format!("axis {axis} does not square to -1")));
        }
        Ok(())
    }

    /// `u + vI`.
    pub fn embed(&self, p: &SlicePoint) -> Result<Multivector> {
        self.check_axis(&p.axis)?;
        Ok(self.embed_unchecked(p.u, p.v, &p.axis))
    }

    pub(crate) fn embed_unchecked(&self, u: f64, v: f64, axis: &Multivector) -> Multivector {
        let mut x = axis.scale(v);
        x.coeffs_mut()[0] += u;
        x
    }

    /// Splits `x` into `u + vI` with `v >= 0`; real points get the default axis `e_1`.
    pub fn decompose(&self, x: &Multivector) -> Result<SlicePoint> {
        self.check_context(x)?;
        if self.stray(x) > SUBSPACE_TOL {
            return Err(Error::InvalidPoint(format!(
                "{x} is outside the {} variable space",
                self.kind.as_str()
            )));
        }
        let u = x.scalar_part();
        let mut imag = vec![0.0; self.ctx.dim()];
        for &m in &self.imaginary {
            imag[m] = x.get(m);
        }
        let im = Multivector::new(self.ctx.clone(), imag)?;
        let v = im.norm();
        let axis = if v > f64::MIN_POSITIVE {
            im.scale(1.0 / v)
        } else {
            self.default_axis()
        };
        SlicePoint::new(u, if v > f64::MIN_POSITIVE { v } else { 0.0 }, axis)
    }

    /// Point of the variable space from its real coordinates (`1` then the imaginary masks).
    pub fn point_from_coords(&self, coords: &[f64]) -> Result<Multivector> {
        if coords.len() != self.variable_dim() {
            return Err(Error::InvalidPoint(format!(
                "{} point needs {} coordinates, got {}",
                self.kind.as_str(),
                self.variable_dim(),
                coords.len()
            )));
        }
        let mut c = vec![0.0; self.ctx.dim()];
        c[0] = coords[0];
        for (&m, &x) in self.imaginary.iter().zip(&coords[1..]) {
            c[m] = x;
        }
        Multivector::new(self.ctx.clone(), c).map_err(|e| Error::InvalidPoint(e.to_string()))
    }

    /// Normalizes an isotropic Gaussian vector of the imaginary subspace.
    pub fn random_axis<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Multivector {
        loop {
            let mut c = vec![0.0; self.ctx.dim()];
            for &m in &self.imaginary {
                c[m] = StandardNormal.sample(rng);
            }
            let g = Multivector::new(self.ctx.clone(), c).expect("finite normals");
            let r = g.norm();
            if r > 1e-8 {
                return g.scale(1.0 / r);
            }
        }
    }

    /// `count` axes drawn uniformly from `𝕊`; sample `i` depends only on `(seed, i)`.
    pub fn sphere_sample(&self, count: usize, seed: u64) -> Vec<Multivector> {
        (0..count as u64)
            .map(|i| self.random_axis(&mut substream(seed, "sphere", i)))
            .collect()
    }
}
