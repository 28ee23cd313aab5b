//! Random inputs for the property checks.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::clifford::Multivector;
use crate::series::{embed_complex, SliceSeries};
use crate::slice::SliceStructure;

pub fn gaussian_multivector<R: Rng + ?Sized>(structure: &SliceStructure, rng: &mut R) -> Multivector {
    let ctx = structure.context();
    let c = (0..ctx.dim()).map(|_| StandardNormal.sample(rng)).collect();
    Multivector::new(ctx.clone(), c).expect("finite normals")
}

/// Gaussian point of the variable space.
pub fn gaussian_variable<R: Rng + ?Sized>(structure: &SliceStructure, rng: &mut R) -> Multivector {
    let mut c = vec![0.0; structure.context().dim()];
    c[0] = StandardNormal.sample(rng);
    for &m in structure.imaginary_masks() {
        c[m] = StandardNormal.sample(rng);
    }
    Multivector::new(structure.context().clone(), c).expect("finite normals")
}

/// Unit element of the variable space.
pub fn random_unit<R: Rng + ?Sized>(structure: &SliceStructure, rng: &mut R) -> Multivector {
    loop {
        let g = gaussian_variable(structure, rng);
        if g.norm() > 1e-8 {
            return g.scale(1.0 / g.norm());
        }
    }
}

/// Series with independent Gaussian coefficients in the whole algebra.
pub fn random_series<R: Rng + ?Sized>(structure: &SliceStructure, degree: usize, rng: &mut R) -> SliceSeries {
    let coeffs = (0..=degree).map(|_| gaussian_multivector(structure, rng)).collect();
    SliceSeries::new(structure.clone(), coeffs).expect("coefficients share the structure")
}

/// Series with Gaussian coefficients in the plane `ℂ_I`.
pub fn random_plane_series<R: Rng + ?Sized>(
    structure: &SliceStructure,
    axis: &Multivector,
    degree: usize,
    rng: &mut R,
) -> SliceSeries {
    let coeffs = (0..=degree)
        .map(|_| {
            let z = num_complex::Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
            embed_complex(structure, z, axis)
        })
        .collect();
    SliceSeries::new(structure.clone(), coeffs).expect("coefficients share the structure")
}

/// `a_0 = 1` and `a_k = c_k 4^{-k}` with `|c_k| <= 1/2`, so the `*`-inverse decays like `(3/8)^k`.
///
/// With `plane = Some(I)` the `c_k` lie in `ℂ_I`.
pub fn random_unit_head_series<R: Rng + ?Sized>(
    structure: &SliceStructure,
    plane: Option<&Multivector>,
    degree: usize,
    rng: &mut R,
) -> SliceSeries {
    let mut coeffs = vec![structure.one()];
    let mut scale = 1.0;
    for _ in 1..=degree {
        scale *= 0.25;
        let dir = match plane {
            Some(axis) => {
                let phi = rng.random_range(0.0..2.0 * PI);
                embed_complex(structure, num_complex::Complex64::from_polar(1.0, phi), axis)
            }
            None => loop {
                let g = gaussian_multivector(structure, rng);
                if g.norm() > 1e-8 {
                    break g.scale(1.0 / g.norm());
                }
            },
        };
        coeffs.push(dir.scale(scale * rng.random_range(0.0..=0.5)));
    }
    SliceSeries::new(structure.clone(), coeffs).expect("coefficients share the structure")
}

/// Slice coordinates `(u, v)` with `v >= 0`, uniform in the upper half of the disc of `radius`.
pub fn random_half_disc<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> (f64, f64) {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = rng.random_range(0.0..=PI);
    (r * phi.cos(), r * phi.sin())
}

/// Complex number uniform in the disc of `radius`.
pub fn random_disc<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> num_complex::Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    num_complex::Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI))
}
