//! Decomposition of a slice restriction `f_I(z) = Σ_A F_A(z) I_A` into complex components.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::Result;
use crate::series::{embed_complex, ComplexSeries, SliceSeries};
use crate::slice::{SliceStructure, StructureKind};

#[derive(Clone, Debug)]
pub struct SplittingResult {
    pub axis: Multivector,
    /// Orthonormal imaginary units completing the axis, in construction order.
    pub completion: Vec<Multivector>,
    /// Module basis `I_A`; entry `m` is the ordered product of the completion elements selected by the bits of `m`.
    pub basis: Vec<Multivector>,
    /// `F_A`, indexed like `basis`.
    pub components: Vec<ComplexSeries>,
    structure: SliceStructure,
}

impl SplittingResult {
    /// `Σ_A F_A(z) I_A` with `F_A(z)` read in `ℂ_I`.
    pub fn reconstruct(&self, z: Complex64) -> Multivector {
        let mut out = Multivector::zero(self.structure.context());
        for (f, b) in self.components.iter().zip(&self.basis) {
            let value = embed_complex(&self.structure, f.eval(z), &self.axis);
            out += &(value * b);
        }
        out
    }
}

/// Ambient imaginary directions of the variable space (quaternions include `e12`).
fn ambient_imaginary(structure: &SliceStructure) -> Vec<Multivector> {
    structure
        .imaginary_masks()
        .iter()
        .map(|&m| Multivector::blade(structure.context(), m))
        .collect()
}

/// Unit imaginary elements orthogonal to `axis` and to each other.
pub fn completion(structure: &SliceStructure, axis: &Multivector) -> Vec<Multivector> {
    let ambient = ambient_imaginary(structure);
    let overlap = |e: &Multivector| axis.inner(e).expect("same context").abs();
    let skip = (0..ambient.len())
        .fold(0, |best, j| if overlap(&ambient[j]) > overlap(&ambient[best]) { j } else { best });

    let mut frame = vec![axis.clone()];
    for (j, e) in ambient.iter().enumerate() {
        if j == skip {
            continue;
        }
        let mut w = e.clone();
        for q in &frame {
            let c = w.inner(q).expect("same context");
            w.add_scaled(-c, q);
        }
        let norm = w.norm();
        assert!(norm > 1e-6, "Gram-Schmidt breakdown for a unit axis");
        frame.push(w.scale(1.0 / norm));
    }
    frame.remove(0);
    if structure.kind() == StructureKind::Quaternion {
        frame.truncate(1);
    }
    frame
}

fn module_basis(structure: &SliceStructure, completion: &[Multivector]) -> Vec<Multivector> {
    (0..1usize << completion.len())
        .map(|mask| {
            completion
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(structure.one(), |acc, (_, e)| acc * e)
        })
        .collect()
}

/// Splits `f` along the slice of `axis`.
pub fn splitting(f: &SliceSeries, axis: &Multivector) -> Result<SplittingResult> {
    let structure = f.structure().clone();
    structure.check_axis(axis)?;
    let completion = completion(&structure, axis);
    let basis = module_basis(&structure, &completion);
    let dim = structure.context().dim();
    debug_assert_eq!(2 * basis.len(), dim);

    let mut m = DMatrix::zeros(dim, dim);
    for (a, b) in basis.iter().enumerate() {
        let twisted = axis * b;
        for r in 0..dim {
            m[(r, 2 * a)] = b.coeffs()[r];
            m[(r, 2 * a + 1)] = twisted.coeffs()[r];
        }
    }
    let lu = m.lu();

    let mut columns = vec![Vec::with_capacity(f.degree() + 1); basis.len()];
    for a_k in f.coeffs() {
        let rhs = DVector::from_column_slice(a_k.coeffs());
        let c = lu.solve(&rhs).expect("module basis is a real basis");
        for (a, col) in columns.iter_mut().enumerate() {
            col.push(Complex64::new(c[2 * a], c[2 * a + 1]));
        }
    }
    let components = columns
        .into_iter()
        .map(ComplexSeries::new)
        .collect::<Result<Vec<_>>>()?;

    Ok(SplittingResult {
        axis: axis.clone(),
        completion,
        basis,
        components,
        structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use crate::series::ext;
    use rand::Rng;

    fn random_series(s: &SliceStructure, degree: usize, seed: u64) -> SliceSeries {
        let mut rng = substream(seed, "splitting-test", 0);
        let coeffs = (0..=degree)
            .map(|_| {
                let c = (0..s.context().dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
                Multivector::new(s.context().clone(), c).unwrap()
            })
            .collect();
        SliceSeries::new(s.clone(), coeffs).unwrap()
    }

    #[test]
    fn quaternion_right_side_component() {
        let s = SliceStructure::quaternion();
        let e1 = Multivector::generator(s.context(), 1);
        let e2 = Multivector::generator(s.context(), 2);
        let f = SliceSeries::monomial(&s, 1, e2.clone());
        let sp = splitting(&f, &e1).unwrap();
        assert_eq!(sp.completion, vec![e2]);
        assert!(sp.components[0].max_abs() < 1e-15);
        assert!((sp.components[1].coeffs()[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(sp.components[1].coeffs()[0].norm() < 1e-15);
    }

    #[test]
    fn constant_on_second_generator() {
        let s = SliceStructure::paravector(3).unwrap();
        let e1 = Multivector::generator(s.context(), 1);
        let f = SliceSeries::new(s.clone(), vec![Multivector::generator(s.context(), 2)]).unwrap();
        let sp = splitting(&f, &e1).unwrap();
        assert_eq!(sp.components.len(), 4);
        for (m, c) in sp.components.iter().enumerate() {
            let expected = if m == 1 { 1.0 } else { 0.0 };
            assert!((c.coeffs()[0] - Complex64::new(expected, 0.0)).norm() < 1e-15, "{m}");
        }
    }

    #[test]
    fn completion_is_orthonormal() {
        let s = SliceStructure::paravector(5).unwrap();
        let axis = s.sphere_sample(1, 3).remove(0);
        let c = completion(&s, &axis);
        assert_eq!(c.len(), 4);
        let mut all = c.clone();
        all.push(axis);
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b).unwrap() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_random_n4() {
        let s = SliceStructure::paravector(4).unwrap();
        let f = random_series(&s, 12, 9);
        let axis = s.sphere_sample(1, 5).remove(0);
        let sp = splitting(&f, &axis).unwrap();
        for k in 0..50 {
            let z = Complex64::from_polar(0.8 * (k as f64 + 0.5) / 50.0, 0.37 * k as f64);
            let direct = f.eval_plane(z, &axis);
            assert!(sp.reconstruct(z).distance(&direct) <= 1e-10 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn ext_is_a_section() {
        let s = SliceStructure::paravector(3).unwrap();
        let axis = s.sphere_sample(1, 11).remove(0);
        let big = ComplexSeries::new(vec![
            Complex64::new(0.1, 0.0),
            Complex64::new(1.0, -0.5),
            Complex64::new(0.0, 2.0),
        ])
        .unwrap();
        let sp = splitting(&ext(&big, &axis, &s).unwrap(), &axis).unwrap();
        for (c, e) in sp.components[0].coeffs().iter().zip(big.coeffs()) {
            assert!((c - e).norm() < 1e-12);
        }
        assert!(sp.components[1..].iter().all(|c| c.max_abs() < 1e-12));
    }
}
