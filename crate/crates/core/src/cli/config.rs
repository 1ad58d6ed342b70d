//! Run configuration: JSON config files (`"schema": 1`), model parameter
//! blocks, and the merge with command-line overrides.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::charpoly::ParametricMatrix;
use crate::cli::CliError;
use crate::models;
use crate::newton_amoeba::GridSpec;
use crate::numerics::{DecadeRange, LoopMode, LoopSpec};
use crate::poly::BiPoly;
use crate::rational::{rational_from_str, Scalar};

pub const CONFIG_SCHEMA: u32 = 1;

/// On-disk config shape.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema: u32,
    #[serde(default)]
    pub model: Option<ModelSpec>,
    #[serde(default)]
    pub poly_file: Option<PathBuf>,
    #[serde(default)]
    pub matrix_file: Option<PathBuf>,
    #[serde(default)]
    pub grid: Option<GridCfg>,
    #[serde(default)]
    pub decades: Option<DecadesCfg>,
    #[serde(default, rename = "loop")]
    pub loop_cfg: Option<LoopCfg>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub zero_tol: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    TwoSite {
        kappa: String,
        gamma: String,
    },
    ThreeSite {
        kappa: String,
        gamma: String,
        tan_phi: String,
    },
    SshChain {
        sites: usize,
        t1: String,
        t2: String,
        gamma: String,
    },
    HatanoNelson {
        #[serde(default = "default_hn_sites")]
        sites: usize,
        cos_theta: String,
        sin_theta: String,
        cos_phi: String,
        sin_phi: String,
        #[serde(default)]
        disorder: Option<[String; 6]>,
    },
}

fn default_hn_sites() -> usize {
    4
}

impl ModelSpec {
    pub fn display_name(&self) -> &'static str {
        match self {
            ModelSpec::TwoSite { .. } => "two_site",
            ModelSpec::ThreeSite { .. } => "three_site",
            ModelSpec::SshChain { .. } => "ssh_chain",
            ModelSpec::HatanoNelson { .. } => "hatano_nelson",
        }
    }

    pub fn build(&self) -> Result<ParametricMatrix, CliError> {
        let rat = |field: &str, s: &str| {
            rational_from_str(s).map_err(|e| CliError::Input(format!("model field `{field}`: {e}")))
        };
        let scal = |field: &str, s: &str| {
            Scalar::from_str_exact(s)
                .map_err(|e| CliError::Input(format!("model field `{field}`: {e}")))
        };
        let model_err = |e: models::ModelError| CliError::Input(e.to_string());
        match self {
            ModelSpec::TwoSite { kappa, gamma } => {
                let p = models::TwoSiteParams::new(scal("kappa", kappa)?, scal("gamma", gamma)?)
                    .map_err(model_err)?;
                models::two_site(&p).map_err(model_err)
            }
            ModelSpec::ThreeSite {
                kappa,
                gamma,
                tan_phi,
            } => {
                let p = models::TrimerParams::new(
                    rat("kappa", kappa)?,
                    scal("gamma", gamma)?,
                    rat("tan_phi", tan_phi)?,
                )
                .map_err(model_err)?;
                models::three_site(&p).map_err(model_err)
            }
            ModelSpec::SshChain {
                sites,
                t1,
                t2,
                gamma,
            } => {
                let p = models::SSHParams::new(
                    *sites,
                    rat("t1", t1)?,
                    rat("t2", t2)?,
                    rat("gamma", gamma)?,
                )
                .map_err(model_err)?;
                models::ssh_chain(&p).map_err(model_err)
            }
            ModelSpec::HatanoNelson {
                sites,
                cos_theta,
                sin_theta,
                cos_phi,
                sin_phi,
                disorder,
            } => {
                let mut p = models::HNParams::with_sites(
                    *sites,
                    rat("cos_theta", cos_theta)?,
                    rat("sin_theta", sin_theta)?,
                    rat("cos_phi", cos_phi)?,
                    rat("sin_phi", sin_phi)?,
                )
                .map_err(model_err)?;
                if let Some(d) = disorder {
                    let mut parsed = Vec::with_capacity(6);
                    for s in d {
                        parsed.push(rat("disorder", s)?);
                    }
                    p = p
                        .with_disorder(parsed.try_into().expect("length checked"))
                        .map_err(model_err)?;
                }
                models::hatano_nelson(&p).map_err(model_err)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridCfg {
    pub r_min: f64,
    pub r_max: f64,
    pub radii: usize,
    pub angles: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecadesCfg {
    pub min: u32,
    pub max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopCfg {
    pub c: f64,
    pub k: usize,
    pub mode: String,
}

/// Exactly one of the three input sources.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum InputSource {
    Model(ModelSpec),
    PolyFile(PathBuf),
    MatrixFile(PathBuf),
}

/// Fully resolved run configuration (config file merged with flag
/// overrides).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: InputSource,
    pub grid: GridSpec,
    pub decades: DecadeRange,
    pub loop_cfg: Option<LoopCfg>,
    pub out_dir: PathBuf,
    pub zero_tol: f64,
    pub svg: bool,
}

/// Command-line overrides collected by the binary.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub poly_file: Option<PathBuf>,
    pub matrix_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub grid: Option<String>,
    pub decades: Option<String>,
    pub loop_: Option<String>,
    pub zero_tol: Option<f64>,
    pub svg: bool,
}

impl RunConfig {
    pub fn resolve(ov: &Overrides) -> Result<Self, CliError> {
        let file: Option<ConfigFile> = match &ov.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read config {}: {e}", path.display()))
                })?;
                let cfg: ConfigFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("bad config: {e}")))?;
                if cfg.schema != CONFIG_SCHEMA {
                    return Err(CliError::Input(format!(
                        "unsupported config schema {} (expected {CONFIG_SCHEMA})",
                        cfg.schema
                    )));
                }
                Some(cfg)
            }
            None => None,
        };

        let mut sources: Vec<InputSource> = Vec::new();
        if let Some(cfg) = &file {
            if let Some(m) = &cfg.model {
                sources.push(InputSource::Model(m.clone()));
            }
            if let Some(p) = &cfg.poly_file {
                sources.push(InputSource::PolyFile(p.clone()));
            }
            if let Some(p) = &cfg.matrix_file {
                sources.push(InputSource::MatrixFile(p.clone()));
            }
        }
        if let Some(p) = &ov.poly_file {
            sources.push(InputSource::PolyFile(p.clone()));
        }
        if let Some(p) = &ov.matrix_file {
            sources.push(InputSource::MatrixFile(p.clone()));
        }
        if sources.len() != 1 {
            return Err(CliError::Input(format!(
                "exactly one input source required (model, poly file, or matrix file); got {}",
                sources.len()
            )));
        }
        let source = sources.pop().expect("checked length");

        let grid = match (&ov.grid, file.as_ref().and_then(|f| f.grid)) {
            (Some(s), _) => parse_grid_flag(s)?,
            (None, Some(g)) => GridSpec {
                r_min: g.r_min,
                r_max: g.r_max,
                radii: g.radii,
                angles: g.angles,
            },
            (None, None) => GridSpec::default(),
        };
        let decades = match (&ov.decades, file.as_ref().and_then(|f| f.decades)) {
            (Some(s), _) => parse_decades_flag(s)?,
            (None, Some(d)) => DecadeRange {
                min: d.min,
                max: d.max,
            },
            (None, None) => DecadeRange::default(),
        };
        let loop_cfg = match (&ov.loop_, file.as_ref().and_then(|f| f.loop_cfg.clone())) {
            (Some(s), _) => Some(parse_loop_flag(s)?),
            (None, l) => l,
        };
        let out_dir = ov
            .out
            .clone()
            .or_else(|| file.as_ref().and_then(|f| f.out.clone()))
            .unwrap_or_else(|| PathBuf::from("out"));
        let zero_tol = ov
            .zero_tol
            .or(file.as_ref().and_then(|f| f.zero_tol))
            .unwrap_or(0.0);

        Ok(RunConfig {
            source,
            grid,
            decades,
            loop_cfg,
            out_dir,
            zero_tol,
            svg: ov.svg,
        })
    }

    /// The polynomial under analysis: a characteristic polynomial for
    /// matrix-like sources, the parsed file for polynomial input.
    pub fn load_poly(&self) -> Result<BiPoly, CliError> {
        match &self.source {
            InputSource::Model(m) => Ok(crate::charpoly::char_poly(&m.build()?)),
            InputSource::MatrixFile(path) => {
                let m = load_matrix(path)?;
                Ok(crate::charpoly::char_poly(&m))
            }
            InputSource::PolyFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                BiPoly::from_text(&text).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }

    /// A matrix for eigenvalue-based commands. Polynomial input works when
    /// it is monic in lambda (a companion matrix reproduces it exactly).
    pub fn load_matrix(&self) -> Result<ParametricMatrix, CliError> {
        match &self.source {
            InputSource::Model(m) => m.build(),
            InputSource::MatrixFile(path) => load_matrix(path),
            InputSource::PolyFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                let p = BiPoly::from_text(&text).map_err(|e| CliError::Input(e.to_string()))?;
                let d = p
                    .lambda_degree()
                    .ok_or_else(|| CliError::Input("polynomial is zero".into()))?;
                if d == 0 || p.lambda_coefficient(d) != crate::poly::UniPoly::one() {
                    return Err(CliError::Input(
                        "this command needs eigenvalues; polynomial input must be monic \
                         in lambda with degree at least 1"
                            .into(),
                    ));
                }
                let coeffs: Vec<crate::poly::UniPoly> =
                    (0..d).map(|i| p.lambda_coefficient(i)).collect();
                models::companion(&coeffs).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }

    pub fn source_label(&self) -> String {
        match &self.source {
            InputSource::Model(m) => format!("model {}", m.display_name()),
            InputSource::PolyFile(p) => format!("polynomial file {}", p.display()),
            InputSource::MatrixFile(p) => format!("matrix file {}", p.display()),
        }
    }

    pub fn loop_spec(&self) -> Result<(LoopSpec, LoopMode), CliError> {
        let cfg = self.loop_cfg.clone().unwrap_or(LoopCfg {
            c: 0.1,
            k: 512,
            mode: "enclosing".into(),
        });
        let mode = match cfg.mode.as_str() {
            "enclosing" => LoopMode::Enclosing,
            "touching" => LoopMode::Touching,
            other => {
                return Err(CliError::Input(format!(
                    "loop mode must be `enclosing` or `touching`, got `{other}`"
                )))
            }
        };
        let spec = LoopSpec::new(cfg.c, cfg.k, mode).map_err(|e| CliError::Input(e.to_string()))?;
        Ok((spec, mode))
    }
}

fn load_matrix(path: &Path) -> Result<ParametricMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    ParametricMatrix::from_json(&text).map_err(CliError::Input)
}

fn parse_grid_flag(s: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(
            "--grid expects r_min,r_max,n_r,n_theta".into(),
        ));
    }
    let parse_f = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("bad grid number `{v}`")))
    };
    let parse_u = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Input(format!("bad grid count `{v}`")))
    };
    Ok(GridSpec {
        r_min: parse_f(parts[0])?,
        r_max: parse_f(parts[1])?,
        radii: parse_u(parts[2])?,
        angles: parse_u(parts[3])?,
    })
}

fn parse_decades_flag(s: &str) -> Result<DecadeRange, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Input("--decades expects k_min,k_max".into()));
    }
    let parse = |v: &str| {
        v.trim()
            .parse::<u32>()
            .map_err(|_| CliError::Input(format!("bad decade `{v}`")))
    };
    Ok(DecadeRange {
        min: parse(parts[0])?,
        max: parse(parts[1])?,
    })
}

fn parse_loop_flag(s: &str) -> Result<LoopCfg, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input("--loop expects c,K,mode".into()));
    }
    Ok(LoopCfg {
        c: parts[0]
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad loop radius `{}`", parts[0])))?,
        k: parts[1]
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad loop step count `{}`", parts[1])))?,
        mode: parts[2].trim().to_string(),
    })
}
