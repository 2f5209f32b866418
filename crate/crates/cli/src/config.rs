//! Run configuration: a JSON file merged with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Ml,
    Solve,
    Linear,
    Compare,
    Oscillator,
    Laplace,
    Suite,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().unwrap().get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Step,
    Picard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Phi {
    One,
    T,
    #[default]
    Relax,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub h: Option<f64>,
    pub t_end: Option<f64>,
}

/// Every field is optional; unset fields take the command's default.
/// Field names double as JSON keys.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Fractional order in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// `{"h": .., "t_end": ..}`; the flat keys take precedence.
    #[arg(skip)]
    pub grid: Option<Grid>,
    /// Grid step.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// End of the time window.
    #[arg(long = "t-end", allow_hyphen_values = true)]
    pub t_end: Option<f64>,
    /// Rate in `f = λ v + c` and in `e_{γ,λ}`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Constant forcing for `linear` and `compare`.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Initial value of scalar problems.
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// Initial momentum of two-component systems.
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<f64>,
    /// Initial position of two-component systems.
    #[arg(long, allow_hyphen_values = true)]
    pub q0: Option<f64>,
    /// Right-hand side: zero, identity, neg_identity, linear, relax_forced,
    /// square, one_plus_square, oscillator.
    #[arg(long)]
    pub rhs: Option<String>,
    /// `solve`: explicit marching or Picard iteration.
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Picard stopping tolerance on the max-norm increment.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Picard iteration cap.
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    /// Initial-value gap of the sub-solution for `compare`.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// `ml`: first Mittag-Leffler parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// `ml`: second Mittag-Leffler parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// `ml`: argument.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// `laplace`: test function 1, t, or e_{γ,λ}.
    #[arg(long, value_enum)]
    pub phi: Option<Phi>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Omit the timestamp line so runs are byte-identical.
    #[arg(long)]
    #[serde(default)]
    pub reproducible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." {
                "config".to_string()
            } else {
                path
            };
            // serde_json appends " at line L column C"; keep it, it is one line
            ConfigError::new(field, e.into_inner().to_string())
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `self` with every field set in `over` replaced.
    pub fn merged(mut self, over: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => {$(
                if over.$f.is_some() {
                    self.$f = over.$f;
                }
            )*};
        }
        take!(
            command, gamma, grid, h, t_end, lambda, c, v0, p0, q0, rhs, method, tol, max_iter,
            delta, alpha, beta, z, phi, out, format
        );
        self.reproducible |= over.reproducible;
        self
    }

    pub fn step(&self) -> Option<f64> {
        self.h.or(self.grid.and_then(|g| g.h))
    }

    pub fn horizon(&self) -> Option<f64> {
        self.t_end.or(self.grid.and_then(|g| g.t_end))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_json(
            r#"{"command": "solve", "gamma": 0.3, "h": 0.01, "rhs": "square"}"#,
        )
        .unwrap();
        let flags = RunConfig {
            gamma: Some(0.7),
            reproducible: true,
            ..Default::default()
        };
        let m = file.merged(flags);
        assert_eq!(m.command, Some(Command::Solve));
        assert_eq!(m.gamma, Some(0.7));
        assert_eq!(m.h, Some(0.01));
        assert_eq!(m.rhs.as_deref(), Some("square"));
        assert!(m.reproducible);
    }

    #[test]
    fn nested_grid_is_a_fallback() {
        let c = RunConfig::from_json(r#"{"grid": {"h": 0.5, "t_end": 2}, "h": 0.25}"#).unwrap();
        assert_eq!(c.step(), Some(0.25));
        assert_eq!(c.horizon(), Some(2.0));
    }

    #[test]
    fn errors_name_the_field() {
        let e = RunConfig::from_json(r#"{"gamma": "half"}"#).unwrap_err();
        assert_eq!(e.field, "gamma");
        let e = RunConfig::from_json(r#"{"grid": {"h": true}}"#).unwrap_err();
        assert_eq!(e.field, "grid.h");
        let e = RunConfig::from_json(r#"{"command": "integrate"}"#).unwrap_err();
        assert_eq!(e.field, "command");
        let e = RunConfig::from_json(r#"{"gama": 0.5}"#).unwrap_err();
        assert!(e.message.contains("gama"), "{e}");
        assert!(!e.to_string().contains('\n'));
    }

    #[test]
    fn empty_config_is_all_defaults() {
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
    }
}
