//! Property tests against independent oracles: naive power sums, finite differences,
//! and closed forms.

use hyperslice::clifford::context;
use hyperslice::verify::koebe_series;
use hyperslice::{json, Multivector, SliceSeries, SliceStructure};
use proptest::prelude::*;

fn coeffs(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, dim)
}

fn mv(n: usize, c: Vec<f64>) -> Multivector {
    Multivector::new(context(n).unwrap(), c).unwrap()
}

/// `Σ x^k a_k` with powers built by repeated multiplication.
fn naive_eval(f: &SliceSeries, x: &Multivector) -> Multivector {
    let mut power = Multivector::one(x.context());
    let mut sum = Multivector::zero(x.context());
    for a in f.coeffs() {
        sum = sum + &power * a;
        power = &power * x;
    }
    sum
}

fn paravector_point(n: usize, raw: &[f64], radius: f64) -> Multivector {
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
    let scaled: Vec<f64> = raw.iter().map(|v| v * radius / norm).collect();
    Multivector::paravector(&context(n).unwrap(), &scaled).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(n in 1usize..=4, seed in coeffs(48)) {
        let dim = 1 << n;
        let (a, b, c) = (mv(n, seed[..dim].to_vec()), mv(n, seed[dim..2 * dim].to_vec()), mv(n, seed[2 * dim..3 * dim].to_vec()));
        let l = &(&a * &b) * &c;
        let r = &a * &(&b * &c);
        prop_assert!(l.distance(&r) <= 1e-12 * (1.0 + l.norm()));
    }

    #[test]
    fn paravector_inverse(n in 1usize..=5, raw in coeffs(6)) {
        let x = Multivector::paravector(&context(n).unwrap(), &raw[..=n]).unwrap();
        prop_assume!(x.norm() > 1e-3);
        let one = Multivector::one(x.context());
        prop_assert!((&x * &x.inverse().unwrap()).distance(&one) < 1e-12);
    }

    #[test]
    fn series_eval_matches_power_sum(n in 2usize..=4, raw in coeffs(5), c in coeffs(6 * 16), r in 0.05f64..0.9) {
        let s = SliceStructure::paravector(n).unwrap();
        let dim = 1 << n;
        let f = SliceSeries::new(s, (0..6).map(|k| mv(n, c[k * dim..(k + 1) * dim].to_vec())).collect()).unwrap();
        let x = paravector_point(n, &raw[..=n], r);
        let fast = f.eval(&x).unwrap();
        let slow = naive_eval(&f, &x);
        prop_assert!(fast.distance(&slow) <= 1e-12 * (1.0 + slow.norm()), "{fast:?} vs {slow:?}");
    }

    #[test]
    fn real_left_factor_multiplies_pointwise(raw in coeffs(4), re in coeffs(5), c in coeffs(5 * 4), r in 0.05f64..0.9) {
        let s = SliceStructure::quaternion();
        let ctx = s.context().clone();
        let f = SliceSeries::new(s.clone(), re.iter().map(|&v| Multivector::scalar(&ctx, v)).collect()).unwrap();
        let g = SliceSeries::new(s.clone(), (0..5).map(|k| mv(2, c[4 * k..4 * k + 4].to_vec())).collect()).unwrap();
        let x = {
            let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
            s.point_from_coords(&raw.iter().map(|v| v * r / norm).collect::<Vec<_>>()).unwrap()
        };
        let star = f.star_product(&g).unwrap().eval(&x).unwrap();
        let pointwise = &f.eval(&x).unwrap() * &g.eval(&x).unwrap();
        prop_assert!(star.distance(&pointwise) <= 1e-12 * (1.0 + pointwise.norm()));
    }

    #[test]
    fn derivative_matches_finite_difference(c in coeffs(7 * 8), u in -0.7f64..0.7) {
        let s = SliceStructure::paravector(3).unwrap();
        let f = SliceSeries::new(s.clone(), (0..7).map(|k| mv(3, c[8 * k..8 * k + 8].to_vec())).collect()).unwrap();
        let h = 1e-5;
        let at = |t: f64| f.eval(&Multivector::scalar(s.context(), t)).unwrap();
        let fd = (at(u + h) - at(u - h)).scale(0.5 / h);
        let d = f.derivative().eval(&Multivector::scalar(s.context(), u)).unwrap();
        prop_assert!(fd.distance(&d) <= 1e-7 * (1.0 + d.norm()));
    }

    #[test]
    fn series_json_round_trip(c in coeffs(4 * 4)) {
        let s = SliceStructure::quaternion();
        let f = SliceSeries::new(s, (0..4).map(|k| mv(2, c[4 * k..4 * k + 4].to_vec())).collect()).unwrap();
        let back: SliceSeries = json::from_str(&json::to_string(&f)).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn koebe_coefficients_are_integers() {
    let s = SliceStructure::quaternion();
    let k = koebe_series(&s, &s.default_axis(), 0.0, 64).unwrap();
    for (i, a) in k.coeffs().iter().enumerate() {
        assert_eq!(a, &Multivector::scalar(s.context(), i as f64));
    }
}

#[test]
fn koebe_closed_form_off_the_real_axis() {
    // k(z) = z/(1 - z)² on the slice of e1, computed with complex arithmetic
    let s = SliceStructure::quaternion();
    let k = koebe_series(&s, &s.default_axis(), 0.0, 400).unwrap();
    let z = num_complex::Complex64::new(0.3, 0.4);
    let w = z / ((1.0 - z) * (1.0 - z));
    let x = s.point_from_coords(&[0.3, 0.4, 0.0, 0.0]).unwrap();
    let v = k.eval(&x).unwrap();
    assert!((v.get(0) - w.re).abs() < 1e-12 && (v.get(1) - w.im).abs() < 1e-12);
}
