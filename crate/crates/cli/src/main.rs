//! `hyperslice`: run the verification suite, evaluate series, and write seed functions.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error,
//! 3 numerical failure.

mod literal;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use hyperslice::verify::{koebe_series, moebius_series, seed_catalog};
use hyperslice::{json, run_suite, ComplexSeries, Error, RunConfig, SliceSeries, SliceStructure, StructureKind};
use serde_json::json;

use literal::{parse_axis, parse_multivector};

#[derive(Parser)]
#[command(name = "hyperslice", version, about = "Slice regular functions over quaternions and Clifford algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a series file at a point of the variable space.
    Eval(EvalArgs),
    /// Write a seed function as a series file.
    Generate(GenerateArgs),
}

#[derive(Args, Clone)]
struct StructureArgs {
    /// `quaternion` or `paravector`.
    #[arg(long, default_value = "quaternion")]
    structure: StructureKind,
    /// Number of generators; defaults to 2 for quaternions and 3 for paravectors.
    #[arg(long)]
    n: Option<usize>,
}

impl StructureArgs {
    fn n(&self) -> usize {
        self.n.unwrap_or(match self.structure {
            StructureKind::Quaternion => 2,
            StructureKind::Paravector => 3,
        })
    }

    fn build(&self) -> hyperslice::Result<SliceStructure> {
        SliceStructure::from_kind(self.structure, self.n())
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    structure: StructureArgs,
    /// Truncation degree of the seed series.
    #[arg(long, default_value_t = 128)]
    degree: usize,
    /// Sample points per check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Sampled slice axes per point.
    #[arg(long, default_value_t = 32)]
    axes: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance of the identity checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Largest radius for the growth and distortion checks.
    #[arg(long, default_value_t = 0.95)]
    rmax: f64,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Series file.
    series: PathBuf,
    /// Real coordinates of the point: the scalar part, then the imaginary units.
    #[arg(required = true, allow_negative_numbers = true)]
    point: Vec<f64>,
    /// Evaluate through the representation formula from the slice of `--axis`.
    #[arg(long, requires = "axis")]
    representation: bool,
    #[arg(long)]
    axis: Option<String>,
    /// Radius beyond which the truncated series is flagged as unreliable.
    #[arg(long, default_value_t = 0.95)]
    rmax: f64,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Koebe rotation with coefficients `k e^{I(k-1)θ}`.
    Koebe {
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value = "e1")]
        axis: String,
        #[arg(long, default_value_t = 128)]
        degree: usize,
    },
    /// Quaternionic disc automorphism `(1 - qā)^{-*} * (q - a) u`.
    Moebius {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 128)]
        degree: usize,
    },
    /// Slice extension of a complex series along an axis.
    Ext {
        #[command(flatten)]
        structure: StructureArgs,
        /// Complex series file.
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long, default_value = "e1")]
        axis: String,
    },
    /// The seed catalog, or one entry of it.
    Catalog {
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, default_value_t = 128)]
        degree: usize,
        /// Name of a single entry to write as a series file.
        #[arg(long)]
        entry: Option<String>,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Numerical(_) | Error::NotInvertible | Error::ZeroSet) => 3,
        _ => 2,
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn verify(args: VerifyArgs) -> anyhow::Result<bool> {
    let config = RunConfig {
        structure: args.structure.structure,
        n: args.structure.n(),
        degree: args.degree,
        points: args.samples,
        axes: args.axes,
        seed: args.seed,
        tol: args.tol,
        rmax: args.rmax,
        out: args.out.as_ref().map(|p| p.display().to_string()),
    };
    let report = run_suite(&config)?;
    for c in &report.checks {
        eprintln!(
            "{} {:<40} residual {:.3e}  tol {:.0e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.max_residual,
            c.tolerance
        );
    }
    write_output(args.out.as_deref(), &report.to_json())?;
    Ok(report.all_pass())
}

fn eval(args: EvalArgs) -> anyhow::Result<()> {
    let f: SliceSeries = json::from_str(&read_input(&args.series)?)?;
    let s = f.structure();
    let x = s.point_from_coords(&args.point)?;
    let radius = x.norm();
    if radius > args.rmax {
        eprintln!(
            "warning: |x| = {radius} exceeds rmax = {}; the degree-{} truncation may be inaccurate",
            args.rmax,
            f.degree()
        );
    }
    let value = match (&args.axis, args.representation) {
        (Some(a), true) => f.eval_representation(&parse_axis(a, s)?, &x)?,
        _ => f.eval(&x)?,
    };
    let out = json!({"point": x, "value": value, "norm": value.norm()});
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn generate(args: GenerateArgs) -> anyhow::Result<()> {
    let text = match args.kind {
        GenerateKind::Koebe { structure, theta, axis, degree } => {
            let s = structure.build()?;
            json::to_string(&koebe_series(&s, &parse_axis(&axis, &s)?, theta, degree)?)
        }
        GenerateKind::Moebius { a, u, degree } => {
            let s = SliceStructure::quaternion();
            json::to_string(&moebius_series(&parse_multivector(&a, &s)?, &parse_multivector(&u, &s)?, degree)?)
        }
        GenerateKind::Ext { structure, coeffs, axis } => {
            let s = structure.build()?;
            let c: ComplexSeries = json::from_str(&read_input(&coeffs)?)?;
            json::to_string(&hyperslice::ext(&c, &parse_axis(&axis, &s)?, &s)?)
        }
        GenerateKind::Catalog { structure, degree, entry } => {
            let catalog = seed_catalog(&structure.build()?, degree)?;
            match entry {
                Some(name) => {
                    let f = catalog.iter().find(|f| f.name == name).ok_or_else(|| {
                        let names: Vec<_> = catalog.iter().map(|f| f.name.as_str()).collect();
                        anyhow!(Error::Usage(format!("no entry `{name}`; choose from {}", names.join(", "))))
                    })?;
                    json::to_string(&f.series)
                }
                None => {
                    let entries: Vec<_> = catalog
                        .iter()
                        .map(|f| {
                            json!({
                                "name": f.name,
                                "axis": f.axis,
                                "rotation": f.rotation,
                                "normalized": f.normalized,
                                "series": f.series,
                            })
                        })
                        .collect();
                    json::to_string(&entries)
                }
            }
        }
    };
    write_output(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify(args) => verify(args).map(|pass| if pass { 0 } else { 1 }),
        Command::Eval(args) => eval(args).map(|_| 0),
        Command::Generate(args) => generate(args).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
