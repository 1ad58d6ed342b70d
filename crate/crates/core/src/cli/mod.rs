//! Command-line entry point: binds the models, the tropical classifier,
//! amoeba output and the numeric verifiers into reproducible runs.
//!
//! Exit status 0 on success, 2 on input errors, 3 on numeric failures.
//! Runs are deterministic: the same configuration produces byte-identical
//! output files.

pub mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;

pub use config::{ConfigFile, InputSource, ModelSpec, Overrides, RunConfig};

use crate::newton_amoeba::{
    amoeba_sample, detect_hole, newton_polygon, render_svg, spine_approx, AmoebaError,
};
use crate::numerics::{
    cycle_notation, holonomy_trace, splitting_exponent, LoopMode, NumericsError,
};
use crate::tropical::{ep_order, render_fraction, tropicalize, EpKind};

#[derive(Debug, Clone, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<AmoebaError> for CliError {
    fn from(e: AmoebaError) -> Self {
        match e {
            AmoebaError::Eigen(inner) => CliError::Numeric(inner.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::BadSpec(msg) => CliError::Input(msg),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

/// The six run modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Newton,
    Amoeba,
    Spine,
    Verify,
    Holonomy,
}

impl Command {
    pub const ALL: [(&'static str, Command); 6] = [
        ("analyze", Command::Analyze),
        ("newton", Command::Newton),
        ("amoeba", Command::Amoeba),
        ("spine", Command::Spine),
        ("verify", Command::Verify),
        ("holonomy", Command::Holonomy),
    ];

    pub fn name(&self) -> &'static str {
        Command::ALL
            .iter()
            .find(|(_, c)| c == self)
            .map(|(n, _)| *n)
            .expect("every command is listed")
    }
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("output directory {}: {e}", dir.display())))
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn write_report(dir: &Path, report: &serde_json::Value) -> Result<PathBuf, CliError> {
    let text = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    write_file(dir, "report.json", &format!("{text}\n"))
}

fn classification_json(cls: &crate::tropical::EPClassification) -> serde_json::Value {
    json!({
        "roots": cls
            .roots
            .iter()
            .map(|(r, m)| json!({"root": render_fraction(*r), "multiplicity": m}))
            .collect::<Vec<_>>(),
        "order": cls.order(),
        "degenerate": matches!(cls.kind, EpKind::Degenerate),
        "summary": cls.to_string(),
    })
}

/// Run one command against a resolved configuration; returns the text that
/// goes to stdout. Output files land in `config.out_dir`.
pub fn execute(command: Command, config: &RunConfig) -> Result<String, CliError> {
    ensure_out_dir(&config.out_dir)?;
    match command {
        Command::Analyze => run_analyze(config),
        Command::Newton => run_newton(config),
        Command::Amoeba => run_amoeba(config),
        Command::Spine => run_spine(config),
        Command::Verify => run_verify(config),
        Command::Holonomy => run_holonomy(config),
    }
}

fn run_analyze(config: &RunConfig) -> Result<String, CliError> {
    let p = config.load_poly()?;
    let trop = tropicalize(&p).map_err(|e| CliError::Input(e.to_string()))?;
    let cls = ep_order(&trop);
    let np = newton_polygon(&p)?;

    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(out, "characteristic polynomial: {p}").unwrap();
    writeln!(out, "tropicalization: {}", trop.render()).unwrap();
    if cls.roots.is_empty() {
        writeln!(out, "no tropical roots").unwrap();
    }
    for (root, mult) in &cls.roots {
        writeln!(
            out,
            "tropical root {} (multiplicity {})",
            render_fraction(*root),
            mult
        )
        .unwrap();
    }
    writeln!(out, "{cls}").unwrap();
    if np.is_segment() {
        writeln!(out, "Newton polygon is a segment (skin-effect signature)").unwrap();
    }

    let report = json!({
        "schema": 1,
        "command": "analyze",
        "input": config.source_label(),
        "tropicalization": trop.render(),
        "classification": classification_json(&cls),
        "newton_polygon_is_segment": np.is_segment(),
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

fn run_newton(config: &RunConfig) -> Result<String, CliError> {
    let p = config.load_poly()?;
    let np = newton_polygon(&p)?;

    let mut csv = String::from("kind,a,b\n");
    for (i, k) in &np.hull {
        csv.push_str(&format!("vertex,{i},{k}\n"));
    }
    for e in &np.edges {
        csv.push_str(&format!("normal,{},{}\n", e.normal.0, e.normal.1));
    }
    write_file(&config.out_dir, "newton.csv", &csv)?;

    let interior = np.interior_lattice_points();
    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(out, "hull vertices: {:?}", np.hull).unwrap();
    writeln!(out, "outer normals: {:?}", np.tentacle_directions()).unwrap();
    writeln!(out, "interior lattice points: {}", interior.len()).unwrap();
    if np.is_segment() {
        writeln!(out, "Newton polygon is a segment (skin-effect signature)").unwrap();
    }

    let report = json!({
        "schema": 1,
        "command": "newton",
        "input": config.source_label(),
        "hull": np.hull,
        "normals": np.tentacle_directions(),
        "interior_lattice_points": interior,
        "is_segment": np.is_segment(),
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

fn run_amoeba(config: &RunConfig) -> Result<String, CliError> {
    let p = config.load_poly()?;
    let cloud = amoeba_sample(&p, &config.grid)?;
    write_file(&config.out_dir, "amoeba.csv", &cloud.to_csv())?;

    let hole = detect_hole(&cloud, 4.0, 64);
    let np = newton_polygon(&p)?;
    let interior = np.interior_lattice_points();

    if config.svg {
        let spine = spine_approx(&p)?;
        let svg = render_svg(&cloud, Some(&spine), Some(&np));
        write_file(&config.out_dir, "amoeba.svg", &svg)?;
    }

    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(out, "sampled {} points", cloud.points.len()).unwrap();
    writeln!(
        out,
        "bounded-hole flag: {} ({} cells)",
        hole.has_hole, hole.hole_cells
    )
    .unwrap();
    writeln!(out, "interior lattice points: {}", interior.len()).unwrap();

    let report = json!({
        "schema": 1,
        "command": "amoeba",
        "input": config.source_label(),
        "points": cloud.points.len(),
        "grid": {
            "r_min": config.grid.r_min,
            "r_max": config.grid.r_max,
            "radii": config.grid.radii,
            "angles": config.grid.angles,
        },
        "hole": {"detected": hole.has_hole, "cells": hole.hole_cells},
        "interior_lattice_points": interior,
        "spine_note": "spine output is the corner locus of the log-modulus \
                       tropical surrogate; vertex placement may differ from \
                       the exact spine",
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

fn run_spine(config: &RunConfig) -> Result<String, CliError> {
    let p = config.load_poly()?;
    let curve = spine_approx(&p)?;
    write_file(&config.out_dir, "spine.csv", &curve.to_csv())?;

    if config.svg {
        let cloud = amoeba_sample(&p, &config.grid)?;
        let np = newton_polygon(&p)?;
        let svg = render_svg(&cloud, Some(&curve), Some(&np));
        write_file(&config.out_dir, "spine.svg", &svg)?;
    }

    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(
        out,
        "spine: {} vertices, {} segments, {} rays",
        curve.vertices.len(),
        curve.segments.len(),
        curve.rays.len()
    )
    .unwrap();

    let report = json!({
        "schema": 1,
        "command": "spine",
        "input": config.source_label(),
        "vertices": curve.vertices.len(),
        "segments": curve.segments.len(),
        "rays": curve.rays.iter().map(|r| r.direction).collect::<Vec<_>>(),
        "note": "corner locus of max(k x + i y + log|a_ik|); ray structure \
                 exact, vertex placement approximate",
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

fn display_tol(value: f64, tol: f64) -> f64 {
    if value.abs() < tol {
        0.0
    } else {
        value
    }
}

fn run_verify(config: &RunConfig) -> Result<String, CliError> {
    let m = config.load_matrix()?;
    let p = crate::charpoly::char_poly(&m);
    let trop = tropicalize(&p).map_err(|e| CliError::Input(e.to_string()))?;
    let cls = ep_order(&trop);
    let fit = splitting_exponent(&m, config.decades)?;

    let mut csv = String::from("nu,splitting\n");
    for (nu, s) in &fit.samples {
        csv.push_str(&format!("{nu:.16e},{s:.16e}\n"));
    }
    write_file(&config.out_dir, "splitting.csv", &csv)?;

    let prediction = cls.order().map(|n| 1.0 / n as f64);
    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(out, "tropical classification: {cls}").unwrap();
    match prediction {
        Some(pred) => writeln!(
            out,
            "tropical prediction: splitting exponent 1/{} = {:.6}",
            cls.order().unwrap(),
            pred
        )
        .unwrap(),
        None => writeln!(out, "tropical prediction: none (degenerate point)").unwrap(),
    }
    writeln!(
        out,
        "numeric fit: exponent {:.6} +/- {:.6} over {} samples",
        display_tol(fit.exponent, config.zero_tol),
        fit.stderr,
        fit.samples.len()
    )
    .unwrap();
    if let Some(pred) = prediction {
        writeln!(
            out,
            "absolute deviation: {:.6}",
            (fit.exponent - pred).abs()
        )
        .unwrap();
    }

    let report = json!({
        "schema": 1,
        "command": "verify",
        "input": config.source_label(),
        "classification": classification_json(&cls),
        "tropical_prediction": prediction,
        "fit": {
            "exponent": fit.exponent,
            "stderr": fit.stderr,
            "samples": fit.samples,
        },
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

fn run_holonomy(config: &RunConfig) -> Result<String, CliError> {
    let m = config.load_matrix()?;
    let (spec, mode) = config.loop_spec()?;
    let result = holonomy_trace(&m, &spec)?;

    let mut csv = String::from("psi,index,re,im\n");
    for (idx, traj) in result.trajectories.iter().enumerate() {
        for (t, z) in traj.iter().enumerate() {
            csv.push_str(&format!(
                "{:.12},{},{:.12e},{:.12e}\n",
                result.psi[t], idx, z.re, z.im
            ));
        }
    }
    write_file(&config.out_dir, "trajectories.csv", &csv)?;

    let mut out = String::new();
    writeln!(out, "input: {}", config.source_label()).unwrap();
    writeln!(
        out,
        "loop: radius {}, {} points, {} mode",
        spec.radius,
        result.steps_used,
        match mode {
            LoopMode::Enclosing => "enclosing",
            LoopMode::Touching => "touching",
        }
    )
    .unwrap();
    writeln!(out, "permutation: {}", cycle_notation(&result.permutation)).unwrap();
    if let Some(petals) = result.petal_count {
        writeln!(out, "petal count: {petals}").unwrap();
    }

    let report = json!({
        "schema": 1,
        "command": "holonomy",
        "input": config.source_label(),
        "permutation": result.permutation,
        "cycle_notation": cycle_notation(&result.permutation),
        "petal_count": result.petal_count,
        "steps_used": result.steps_used,
    });
    write_report(&config.out_dir, &report)?;
    Ok(out)
}

/// Entry point used by the binary: parse arguments, run, map errors to the
/// documented exit codes. Returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let parsed = match Args::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            if code != 0 {
                eprintln!(
                    "valid commands: {}",
                    Command::ALL
                        .iter()
                        .map(|(n, _)| *n)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            return code;
        }
    };
    let (command, opts) = parsed.split();
    let overrides = opts.into_overrides();
    let config = match RunConfig::resolve(&overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match execute(command, &config) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(clap::Parser, Debug)]
#[command(
    name = "tropical-ep",
    version,
    about = "Classify degeneracies of parametric non-Hermitian Hamiltonians \
             via tropical geometry"
)]
struct Args {
    #[command(subcommand)]
    command: SubCommand,
}

#[derive(clap::Subcommand, Debug)]
enum SubCommand {
    /// Tropicalization, tropical roots, and the order classification
    Analyze(CliOpts),
    /// Newton polygon: hull vertices and outer normals
    Newton(CliOpts),
    /// Sample the amoeba point cloud
    Amoeba(CliOpts),
    /// Piecewise-linear spine approximation
    Spine(CliOpts),
    /// Numeric splitting-exponent fit against the tropical prediction
    Verify(CliOpts),
    /// Eigenvalue holonomy around a loop in the perturbation plane
    Holonomy(CliOpts),
}

#[derive(clap::Args, Debug)]
struct CliOpts {
    /// JSON run configuration (schema 1)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polynomial input: one term per line, `i k re_num/re_den im_num/im_den`
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Matrix input: JSON {"n": int, "entries": [[poly, ...], ...]}
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    /// Output directory (default `out`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Amoeba grid: r_min,r_max,n_r,n_theta
    #[arg(long)]
    grid: Option<String>,
    /// Splitting-fit decades: k_min,k_max (samples at 10^-k)
    #[arg(long)]
    decades: Option<String>,
    /// Holonomy loop: c,K,mode with mode in {enclosing, touching}
    #[arg(long = "loop")]
    loop_: Option<String>,
    /// Display threshold for numeric output (exact pipeline ignores it)
    #[arg(long)]
    zero_tol: Option<f64>,
    /// Also write an SVG rendering (amoeba and spine commands)
    #[arg(long)]
    svg: bool,
}

impl Args {
    fn split(self) -> (Command, CliOpts) {
        match self.command {
            SubCommand::Analyze(o) => (Command::Analyze, o),
            SubCommand::Newton(o) => (Command::Newton, o),
            SubCommand::Amoeba(o) => (Command::Amoeba, o),
            SubCommand::Spine(o) => (Command::Spine, o),
            SubCommand::Verify(o) => (Command::Verify, o),
            SubCommand::Holonomy(o) => (Command::Holonomy, o),
        }
    }
}

impl CliOpts {
    fn into_overrides(self) -> Overrides {
        Overrides {
            config: self.config,
            poly_file: self.poly_file,
            matrix_file: self.matrix_file,
            out: self.out,
            grid: self.grid,
            decades: self.decades,
            loop_: self.loop_,
            zero_tol: self.zero_tol,
            svg: self.svg,
        }
    }
}
