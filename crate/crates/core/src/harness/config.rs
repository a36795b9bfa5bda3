//! Experiment configuration and its `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! pipeline = image
//! methods = gfrft, agfrft-ii
//! axes = yaw
//! families = df
//! sigmas = 20, 30
//! optimizer = grid
//! alpha_grid = 0:0.1:1
//! theta_grid = 0:0.628:6.2832
//! seed = 7
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::filtering::{GdConfig, Grid};
use crate::graphs::GsoKind;
use crate::rotations::{AxisKind, Family};
use crate::scalar::Scalar;
use crate::spectral::{Method, TransformKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Timeseries,
    Image,
    Pointcloud,
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pipeline::Timeseries => "timeseries",
            Pipeline::Image => "image",
            Pipeline::Pointcloud => "pointcloud",
        })
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "timeseries" => Ok(Pipeline::Timeseries),
            "image" => Ok(Pipeline::Image),
            "pointcloud" => Ok(Pipeline::Pointcloud),
            other => Err(Error::param(format!(
                "unknown pipeline '{other}' (timeseries|image|pointcloud)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OptimizerKind {
    #[default]
    Grid,
    Gd,
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizerKind::Grid => "grid",
            OptimizerKind::Gd => "gd",
        })
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "grid" => Ok(OptimizerKind::Grid),
            "gd" | "gradient" | "gradient-descent" => Ok(OptimizerKind::Gd),
            other => Err(Error::param(format!("unknown optimizer '{other}' (grid|gd)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig<T> {
    pub pipeline: Pipeline,
    pub kinds: Vec<TransformKind>,
    pub axes: Vec<AxisKind>,
    pub families: Vec<Family>,
    /// Noise levels: raw units for series and clouds, 0–255 for images.
    pub sigmas: Vec<T>,
    /// k of the sequence and point-cloud graphs.
    pub knn_k: usize,
    /// k of the image pixel graphs.
    pub image_k: usize,
    pub gso_kind: GsoKind,
    pub optimizer: OptimizerKind,
    pub grid: Grid<T>,
    pub gd: GdConfig<T>,
    pub seed: u64,
    pub checkpoints: Vec<usize>,
    pub max_patch: usize,
    pub block_size: usize,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl<T: Scalar> ExperimentConfig<T> {
    pub fn new(pipeline: Pipeline) -> Self {
        let sigmas = match pipeline {
            Pipeline::Timeseries | Pipeline::Pointcloud => vec![T::lit(0.5), T::one(), T::lit(1.5)],
            Pipeline::Image => vec![T::lit(20.0), T::lit(30.0), T::lit(40.0)],
        };
        let checkpoints = match pipeline {
            Pipeline::Timeseries => vec![100, 200, 300],
            _ => Vec::new(),
        };
        Self {
            pipeline,
            kinds: vec![
                TransformKind::Gfrft,
                TransformKind::Agft,
                TransformKind::AgfrftI,
                TransformKind::AgfrftII,
            ],
            axes: vec![AxisKind::Yaw],
            families: vec![Family::DegeneracyFriendly],
            sigmas,
            knn_k: 10,
            image_k: 4,
            gso_kind: GsoKind::Laplacian,
            optimizer: OptimizerKind::Grid,
            grid: Grid::standard(),
            gd: GdConfig::default(),
            seed: 0,
            checkpoints,
            max_patch: 100,
            block_size: 8,
            input: None,
            out: None,
        }
    }

    /// Every transform kind crossed with the configured axes and families;
    /// kinds without a rotation appear once.
    pub fn methods(&self) -> Vec<Method> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            if !kind.uses_angle() {
                out.push(Method::new(kind, AxisKind::Yaw, Family::DegeneracyFriendly));
                continue;
            }
            for &axis in &self.axes {
                for &family in &self.families {
                    out.push(Method::new(kind, axis, family));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.kinds.is_empty() || self.axes.is_empty() || self.families.is_empty() {
            return Err(Error::param("at least one method, axis and family is required"));
        }
        if self.sigmas.is_empty() {
            return Err(Error::param("at least one noise level is required"));
        }
        if self.sigmas.iter().any(|s| !(*s >= T::zero()) || !s.is_finite()) {
            return Err(Error::param("noise levels must be finite and nonnegative"));
        }
        if self.knn_k == 0 || self.image_k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        if self.block_size == 0 || self.max_patch == 0 {
            return Err(Error::param("block and patch sizes must be at least 1"));
        }
        if self.pipeline == Pipeline::Timeseries && self.checkpoints.is_empty() {
            return Err(Error::param("at least one checkpoint is required"));
        }
        Grid::new(self.grid.theta.clone(), self.grid.alpha.clone())?;
        if !(self.gd.learning_rate > T::zero()) || self.gd.max_iter == 0 {
            return Err(Error::param("learning rate and epoch count must be positive"));
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "pipeline" => self.pipeline = value.parse()?,
            "methods" | "method" => self.kinds = parse_list(value)?,
            "axes" | "axis" => self.axes = parse_list(value)?,
            "families" | "family" => self.families = parse_list(value)?,
            "sigmas" | "sigma" => self.sigmas = parse_reals(value)?,
            "k" | "knn_k" => self.knn_k = parse_one(value)?,
            "image_k" => self.image_k = parse_one(value)?,
            "gso" => self.gso_kind = value.parse()?,
            "optimizer" => self.optimizer = value.parse()?,
            "alpha_grid" => self.grid.alpha = parse_grid(value)?,
            "theta_grid" => self.grid.theta = parse_grid(value)?,
            "lr" | "learning_rate" => self.gd.learning_rate = T::lit(parse_one::<f64>(value)?),
            "epochs" | "max_iter" => self.gd.max_iter = parse_one(value)?,
            "fd_step" => self.gd.fd_step = T::lit(parse_one::<f64>(value)?),
            "seed" => self.seed = parse_one(value)?,
            "t" | "checkpoints" => self.checkpoints = parse_list(value)?,
            "max_patch" => self.max_patch = parse_one(value)?,
            "block" | "block_size" => self.block_size = parse_one(value)?,
            "input" | "in" => self.input = Some(PathBuf::from(value)),
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(Error::param(format!("unknown configuration key '{other}'"))),
        }
        Ok(())
    }

    /// Applies every setting of a `key = value` text; the pipeline key, if
    /// present, resets the pipeline-specific defaults first.
    pub fn apply_text(&mut self, text: &str, path: &Path) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("expected 'key = value', found '{line}'"),
            })?;
            self.set(k, v).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn from_file(path: impl AsRef<Path>, default_pipeline: Pipeline) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let pipeline = text
            .lines()
            .filter_map(|l| l.split('#').next()?.split_once('='))
            .find(|(k, _)| k.trim().eq_ignore_ascii_case("pipeline"))
            .map(|(_, v)| v.parse())
            .transpose()?
            .unwrap_or(default_pipeline);
        let mut cfg = Self::new(pipeline);
        cfg.apply_text(&text, path)?;
        Ok(cfg)
    }
}

fn parse_one<V: FromStr>(s: &str) -> Result<V> {
    s.trim()
        .parse()
        .map_err(|_| Error::param(format!("cannot parse '{}'", s.trim())))
}

fn parse_list<V: FromStr>(s: &str) -> Result<Vec<V>> {
    let out: Vec<V> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_one)
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::param("empty list"));
    }
    Ok(out)
}

pub fn parse_reals<T: Scalar>(s: &str) -> Result<Vec<T>> {
    Ok(parse_list::<f64>(s)?.into_iter().map(T::lit).collect())
}

/// `start:step:end` (inclusive) or a comma-separated list.
pub fn parse_grid<T: Scalar>(s: &str) -> Result<Vec<T>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, step, end] => Grid::range(
            T::lit(parse_one(start)?),
            T::lit(parse_one(step)?),
            T::lit(parse_one(end)?),
        ),
        [_] => parse_reals(s),
        _ => Err(Error::param(format!("grid '{s}' is neither start:step:end nor a list"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_expand() {
        let mut cfg = ExperimentConfig::<f64>::new(Pipeline::Timeseries);
        cfg.set("methods", "gfrft, agfrft-ii").unwrap();
        cfg.set("axes", "roll,yaw").unwrap();
        let m = cfg.methods();
        assert_eq!(m.len(), 3);
        assert_eq!(m[0].kind, TransformKind::Gfrft);
        assert_eq!(m[2].axis, AxisKind::Yaw);
    }

    #[test]
    fn grids() {
        let g: Vec<f64> = parse_grid("0:0.1:1").unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(parse_grid::<f64>("0.5, 1").unwrap(), vec![0.5, 1.0]);
        assert!(parse_grid::<f64>("0:1").is_err());
    }

    #[test]
    fn file_with_line_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.cfg");
        std::fs::write(&p, "pipeline = image\n# note\nsigmas = 20\nseed = 3\n").unwrap();
        let cfg = ExperimentConfig::<f64>::from_file(&p, Pipeline::Timeseries).unwrap();
        assert_eq!(cfg.pipeline, Pipeline::Image);
        assert_eq!(cfg.sigmas, vec![20.0]);
        assert_eq!(cfg.seed, 3);
        std::fs::write(&p, "seed = 3\nbogus = 1\n").unwrap();
        let err = ExperimentConfig::<f64>::from_file(&p, Pipeline::Timeseries).unwrap_err().to_string();
        assert!(err.contains(":2:"), "{err}");
    }
}
