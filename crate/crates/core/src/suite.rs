//! The full verification suite behind `hyperslice verify`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::substream;
use crate::series::{DEFAULT_MAX_DEGREE, SliceSeries};
use crate::slice::{SliceStructure, StructureKind};
use crate::verify::calculus::{
    check_algebra_axioms, check_inverse_routes, check_norm_multiplicativity, check_quaternion_split_recovery,
    check_splitting, check_star_inverse, merge_reports,
};
use crate::verify::covering::{default_controls, default_targets, DEFAULT_RADII};
use crate::verify::injectivity::negative_control;
use crate::verify::random::{random_plane_series, random_series, random_unit_head_series};
use crate::verify::{
    check_convex_combination, check_detector, check_equality_cases, check_growth_distortion, check_identity_general,
    check_koebe_quarter, check_representation, check_slice_injectivity, detect_rotated_slice_preserving, seed_catalog,
    sphere_extrema_check, CheckReport, SeedFunction,
};

/// Random series per identity-family check.
const RANDOM_SERIES: usize = 8;
/// Degree of the arbitrary-coefficient series.
const RANDOM_DEGREE: usize = 24;
const ALGEBRA_TRIALS: usize = 1000;
const INJECTIVITY_GRID: usize = 48;
const DETECTOR_INSTANCES: usize = 20;
const STAR_INVERSE_DEGREE: usize = 32;
const EXTREMA_POINTS: [(f64, f64); 3] = [(0.2, 0.3), (-0.5, 0.4), (0.6, 0.1)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub structure: StructureKind,
    pub n: usize,
    pub degree: usize,
    pub points: usize,
    pub axes: usize,
    pub seed: u64,
    pub tol: f64,
    pub rmax: f64,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            structure: StructureKind::Quaternion,
            n: 2,
            degree: 128,
            points: 200,
            axes: 32,
            seed: 42,
            tol: 1e-9,
            rmax: 0.95,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<SliceStructure> {
        let structure = SliceStructure::from_kind(self.structure, self.n).map_err(|e| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        })?;
        if !(2..=DEFAULT_MAX_DEGREE).contains(&self.degree) {
            return Err(Error::Config(format!("degree {} must lie in 2..={DEFAULT_MAX_DEGREE}", self.degree)));
        }
        if self.points == 0 || self.axes == 0 {
            return Err(Error::Config("sample counts must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tolerance {} must be positive", self.tol)));
        }
        if !(self.rmax > 0.0 && self.rmax < 1.0) {
            return Err(Error::Config(format!("rmax {} must lie in (0, 1)", self.rmax)));
        }
        Ok(structure)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Vec<CheckReport>> + Send + Sync + 'a>;

fn suite_series(seed: u64, label: &str, count: usize, make: impl Fn(&mut rand_chacha::ChaCha8Rng) -> SliceSeries) -> Vec<SliceSeries> {
    (0..count).map(|i| make(&mut substream(seed, label, i as u64))).collect()
}

fn rotation(f: &SeedFunction) -> Option<&crate::clifford::Multivector> {
    f.rotation.as_ref()
}

/// Runs every check for `config`; checks run in parallel and are reported in a fixed order.
pub fn run_suite(config: &RunConfig) -> Result<SuiteReport> {
    let s = config.validate()?;
    let c = config.clone();
    let catalog = seed_catalog(&s, c.degree)?;
    let quaternion = s.kind() == StructureKind::Quaternion;
    let axis = s.default_axis();

    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(Box::new(|| Ok(vec![check_algebra_axioms(s.n(), ALGEBRA_TRIALS, c.seed)?])));
    tasks.push(Box::new(|| Ok(vec![check_norm_multiplicativity(s.n(), ALGEBRA_TRIALS, c.seed)?])));
    tasks.push(Box::new(|| {
        let series = suite_series(c.seed, "suite-general", RANDOM_SERIES, |r| random_series(&s, RANDOM_DEGREE, r));
        let mut identity = Vec::new();
        let mut im_form = Vec::new();
        for f in &series {
            let mut r = check_identity_general(f, &axis, c.points, c.axes, c.seed, c.tol)?.into_iter();
            identity.extend(r.next());
            im_form.extend(r.next());
        }
        let mut out = vec![merge_reports("identity_general", identity)?];
        if quaternion {
            out.push(merge_reports("identity_im_form", im_form)?);
        }
        Ok(out)
    }));
    tasks.push(Box::new(|| {
        let planes = suite_series(c.seed, "suite-plane", RANDOM_SERIES, |r| random_plane_series(&s, &axis, RANDOM_DEGREE, r));
        let mut groups: [Vec<CheckReport>; 3] = Default::default();
        let inputs = catalog
            .iter()
            .map(|f| (&f.series, &f.axis, rotation(f)))
            .chain(planes.iter().map(|f| (f, &axis, None)));
        for (f, a, rot) in inputs {
            for (g, r) in groups.iter_mut().zip(check_convex_combination(f, a, rot, c.points, c.axes, c.seed, c.tol)?) {
                g.push(r);
            }
        }
        let [convex, cross, affine] = groups;
        Ok(vec![
            merge_reports("convex_combination", convex)?,
            merge_reports("cross_term", cross)?,
            merge_reports("affine_fit", affine)?,
        ])
    }));
    tasks.push(Box::new(|| {
        let mut reports = Vec::new();
        for f in &catalog {
            for &(u, v) in &EXTREMA_POINTS {
                reports.push(sphere_extrema_check(&f.series, &f.axis, rotation(f), u, v, c.axes, c.seed, c.tol)?);
            }
        }
        Ok(vec![merge_reports("sphere_extrema", reports)?])
    }));
    tasks.push(Box::new(|| {
        let series = suite_series(c.seed, "suite-representation", RANDOM_SERIES, |r| random_series(&s, RANDOM_DEGREE, r));
        let reports = series
            .iter()
            .map(|f| check_representation(f, c.points, c.seed, c.tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(vec![merge_reports("representation_formula", reports)?])
    }));
    tasks.push(Box::new(|| {
        let series = suite_series(c.seed, "suite-splitting", RANDOM_SERIES, |r| random_series(&s, RANDOM_DEGREE, r));
        let axes = s.sphere_sample(RANDOM_SERIES, c.seed);
        let reports = series
            .iter()
            .zip(&axes)
            .map(|(f, a)| check_splitting(f, a, c.points, c.seed))
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![merge_reports("splitting_round_trip", reports)?];
        if quaternion {
            out.push(check_quaternion_split_recovery(DETECTOR_INSTANCES, RANDOM_DEGREE, c.seed)?);
        }
        Ok(out)
    }));
    tasks.push(Box::new(|| {
        let degree = c.degree.min(STAR_INVERSE_DEGREE);
        let general = suite_series(c.seed, "suite-star", RANDOM_SERIES, |r| random_unit_head_series(&s, None, degree, r));
        let planes =
            suite_series(c.seed, "suite-star-plane", RANDOM_SERIES, |r| random_unit_head_series(&s, Some(&axis), degree, r));
        let two_sided = general.iter().map(check_star_inverse).collect::<Result<Vec<_>>>()?;
        let routes = planes
            .iter()
            .map(|f| check_inverse_routes(f, c.points, c.seed))
            .collect::<Result<Vec<_>>>()?;
        Ok(vec![
            merge_reports("star_inverse_two_sided", two_sided)?,
            merge_reports("star_inverse_routes", routes)?,
        ])
    }));
    for f in catalog.iter().filter(|f| f.normalized) {
        tasks.push(Box::new(move || Ok(vec![check_growth_distortion(f, c.points, c.seed, c.rmax)?])));
    }
    tasks.push(Box::new(|| Ok(vec![check_equality_cases(&catalog, c.points, c.seed, c.rmax)?])));
    tasks.push(Box::new(|| {
        let j = s.sphere_sample(1, c.seed ^ 0x51).remove(0);
        let mut out = Vec::new();
        for f in &catalog {
            let mut r = check_slice_injectivity(f, &j, INJECTIVITY_GRID)?;
            r.name = format!("slice_injectivity_{}", f.name);
            out.push(r);
        }
        let control = check_slice_injectivity(&negative_control(&s), &j, INJECTIVITY_GRID)?;
        let found = !control.witness["collision"].is_null();
        out.push(CheckReport::new(
            "slice_injectivity_negative_control",
            control.samples,
            if found { 0.0 } else { 1.0 },
            0.0,
            control.witness,
        ));
        Ok(out)
    }));
    if quaternion {
        tasks.push(Box::new(|| {
            let mut out = vec![check_detector(DETECTOR_INSTANCES, RANDOM_DEGREE, c.points, c.seed)?];
            if let Some(m) = catalog.iter().find(|f| f.rotation.is_some()) {
                let d = detect_rotated_slice_preserving(&m.series, &m.axis, c.points, c.seed)?;
                out.push(CheckReport::new(
                    format!("rotation_detector_{}", m.name),
                    c.points,
                    d.as_ref().map_or(1.0, |d| d.residual),
                    crate::verify::detector::RECONSTRUCTION_TOL,
                    serde_json::json!({"function": m.name, "u": d.map(|d| d.u)}),
                ));
            }
            Ok(out)
        }));
        for f in catalog.iter().filter(|f| f.normalized) {
            tasks.push(Box::new(move || {
                Ok(vec![check_koebe_quarter(
                    f,
                    &DEFAULT_RADII,
                    &default_targets(),
                    &default_controls(),
                    c.axes,
                    c.seed,
                )?])
            }));
        }
    }

    let results: Vec<Result<Vec<CheckReport>>> = tasks.par_iter().map(|t| t()).collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(SuiteReport {
        config: config.clone(),
        checks,
    })
}
