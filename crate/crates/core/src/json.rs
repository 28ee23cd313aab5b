//! JSON wire formats shared by the library and the command line.
//!
//! ```text
//! Multivector    {"n": 2, "coeffs": [c_0, c_1, c_2, c_12]}
//! SlicePoint     {"u": 0.1, "v": 0.2, "axis": <multivector>}
//! SliceSeries    {"structure": "quaternion", "n": 2, "degree": N, "coefficients": [[..], ..]}
//! ComplexSeries  {"degree": N, "coefficients": [[re, im], ..]}
//! ```

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{context, Multivector};
use crate::error::{Error, Result};
use crate::series::{ComplexSeries, SliceSeries};
use crate::slice::{SlicePoint, SliceStructure, StructureKind};

#[derive(Serialize, Deserialize)]
struct MultivectorWire {
    n: usize,
    coeffs: Vec<f64>,
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultivectorWire {
            n: self.n(),
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MultivectorWire::deserialize(d)?;
        let ctx = context(w.n).map_err(D::Error::custom)?;
        Multivector::new(ctx, w.coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SlicePointWire {
    u: f64,
    v: f64,
    axis: Multivector,
}

impl Serialize for SlicePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SlicePointWire {
            u: self.u,
            v: self.v,
            axis: self.axis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlicePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SlicePointWire::deserialize(d)?;
        SlicePoint::new(w.u, w.v, w.axis).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SliceSeriesWire {
    structure: StructureKind,
    n: usize,
    degree: usize,
    coefficients: Vec<Vec<f64>>,
}

impl Serialize for SliceSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SliceSeriesWire {
            structure: self.structure().kind(),
            n: self.structure().n(),
            degree: self.degree(),
            coefficients: self.coeffs().iter().map(|a| a.coeffs().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SliceSeriesWire::deserialize(d)?;
        series_from_wire(w).map_err(D::Error::custom)
    }
}

fn series_from_wire(w: SliceSeriesWire) -> Result<SliceSeries> {
    let structure = SliceStructure::from_kind(w.structure, w.n)?;
    if w.coefficients.len() != w.degree + 1 {
        return Err(Error::Parse(format!(
            "degree {} needs {} coefficients, found {}",
            w.degree,
            w.degree + 1,
            w.coefficients.len()
        )));
    }
    let coeffs = w
        .coefficients
        .into_iter()
        .map(|c| Multivector::new(structure.context().clone(), c))
        .collect::<Result<Vec<_>>>()?;
    SliceSeries::new(structure, coeffs)
}

#[derive(Serialize, Deserialize)]
struct ComplexSeriesWire {
    degree: usize,
    coefficients: Vec<[f64; 2]>,
}

impl Serialize for ComplexSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexSeriesWire {
            degree: self.degree(),
            coefficients: self.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ComplexSeriesWire::deserialize(d)?;
        if w.coefficients.len() != w.degree + 1 {
            return Err(D::Error::custom(format!(
                "degree {} needs {} coefficients, found {}",
                w.degree,
                w.degree + 1,
                w.coefficients.len()
            )));
        }
        let c = w.coefficients.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexSeries::new(c).map_err(D::Error::custom)
    }
}

/// Parses any of the wire types, mapping failures to [`Error::Parse`].
pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types always serialize");
    s.push('\n');
    s
}
