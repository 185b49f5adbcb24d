//! Run configuration: a TOML file with shared top-level keys and one optional
//! section per experiment.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::path::{Path, PathBuf};

use equiconv::asymptotics::Lemma;
use equiconv::expansion::PiecewiseFunction;
use equiconv::kernels::SummabilitySequence;
use equiconv::operator::{JacobiParams, OperatorSpec, PerturbationB};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Spectrum,
    Eigfun,
    Asymptotics,
    KernelDiff,
    Equiconv,
    Selftest,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Spectrum => "spectrum",
            Experiment::Eigfun => "eigfun",
            Experiment::Asymptotics => "asymptotics",
            Experiment::KernelDiff => "kernel-diff",
            Experiment::Equiconv => "equiconv",
            Experiment::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summability {
    Rectangular,
    Cesaro,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    #[serde(default = "half")]
    pub alpha: f64,
    #[serde(default = "half")]
    pub beta: f64,
    /// `a_1, a_2, ...` of `B(t) = 1 + Σ a_k cos 2kt`.
    #[serde(default)]
    pub b_coeffs: Vec<f64>,
    #[serde(default = "default_basis_size")]
    pub basis_size: usize,
    /// Defaults to twice the basis size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_points: Option<usize>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigfun: Option<EigfunParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotics: Option<AsymptoticsParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_diff: Option<KernelDiffParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equiconv: Option<EquiconvParams>,
}

fn half() -> f64 {
    0.5
}

fn default_basis_size() -> usize {
    128
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumParams {
    pub n_max: usize,
}

impl Default for SpectrumParams {
    fn default() -> Self {
        Self { n_max: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EigfunParams {
    pub n_max: usize,
    pub grid_points: usize,
}

impl Default for EigfunParams {
    fn default() -> Self {
        Self {
            n_max: 20,
            grid_points: 201,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AsymptoticsParams {
    pub lemmas: Vec<String>,
    pub n_min: usize,
    pub n_max: usize,
    /// Points per `n` across each lemma's window.
    pub t_points: usize,
    /// Fixed `t` values; replaces the per-`n` grid when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_values: Option<Vec<f64>>,
    pub halves_factor: f64,
}

impl Default for AsymptoticsParams {
    fn default() -> Self {
        Self {
            lemmas: Lemma::ALL.iter().map(|l| l.tag().to_string()).collect(),
            n_min: 16,
            n_max: 60,
            t_points: 64,
            t_values: None,
            halves_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelDiffParams {
    pub x_list: Vec<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub y_points: usize,
    pub summability: Summability,
    pub theta: f64,
    pub quartile_factor: f64,
    /// Largest accepted `max C_x / min C_x` for the single-constant fit.
    pub spread_factor: f64,
}

impl Default for KernelDiffParams {
    fn default() -> Self {
        Self {
            x_list: vec![FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8],
            n_min: 1,
            n_max: 200,
            y_points: 800,
            summability: Summability::Rectangular,
            theta: 1.0,
            quartile_factor: 1.2,
            spread_factor: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EquiconvParams {
    pub function: String,
    pub summability: Summability,
    pub theta: f64,
    pub gamma: [f64; 2],
    pub grid_points: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub early: [usize; 2],
    pub late: [usize; 2],
    pub decay_factor: f64,
}

impl Default for EquiconvParams {
    fn default() -> Self {
        Self {
            function: "indicator(0.3,0.8)".into(),
            summability: Summability::Rectangular,
            theta: 1.0,
            gamma: [0.2, 1.3],
            grid_points: 400,
            n_min: 10,
            n_max: 200,
            early: [10, 30],
            late: [150, 200],
            decay_factor: 0.5,
        }
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Config {
        field: field.into(),
        message: message.into(),
    }
}

fn from_core(prefix: &str, e: equiconv::Error) -> CliError {
    match e {
        equiconv::Error::InvalidParameter { field, reason } => invalid(format!("{prefix}{field}"), reason),
        other => invalid(prefix.trim_end_matches('.'), other.to_string()),
    }
}

/// Names the key a TOML error points at, prefixed with its section.
fn error_field(err: &toml::de::Error, src: &str) -> String {
    let msg = err.message();
    if let Some(rest) = msg.split("unknown field `").nth(1) {
        if let Some(name) = rest.split('`').next() {
            return name.to_string();
        }
    }
    if let Some(rest) = msg.split("missing field `").nth(1) {
        if let Some(name) = rest.split('`').next() {
            return name.to_string();
        }
    }
    let Some(span) = err.span() else {
        return "config".into();
    };
    let before = &src[..span.start.min(src.len())];
    let section = before
        .lines()
        .rev()
        .find_map(|l| l.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .map(|s| format!("{}.", s.trim()));
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let line = src[line_start..].lines().next().unwrap_or("");
    match line.split_once('=') {
        Some((key, _)) => format!("{}{}", section.unwrap_or_default(), key.trim()),
        None => line.trim().trim_matches(['[', ']']).to_string(),
    }
}

impl RunConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            alpha: half(),
            beta: half(),
            b_coeffs: Vec::new(),
            basis_size: default_basis_size(),
            quad_points: None,
            output_dir: default_output_dir(),
            seed: 0,
            spectrum: None,
            eigfun: None,
            asymptotics: None,
            kernel_diff: None,
            equiconv: None,
        }
    }

    /// Parses and validates.
    pub fn from_toml_str(src: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(src).map_err(|e| invalid(error_field(&e, src), e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&src)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("run configuration serializes to TOML")
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points.unwrap_or(2 * self.basis_size)
    }

    /// `⌊3K/4⌋` eigenpairs are trusted.
    pub fn usable(&self) -> usize {
        3 * self.basis_size / 4
    }

    pub fn operator_spec(&self) -> Result<OperatorSpec<f64>, CliError> {
        let params = JacobiParams::new(self.alpha, self.beta).map_err(|e| {
            let field = if !(self.alpha > -0.5 && self.alpha.is_finite()) { "alpha" } else { "beta" };
            match e {
                equiconv::Error::InvalidParameter { reason, .. } => invalid(field, reason),
                other => invalid(field, other.to_string()),
            }
        })?;
        let b = PerturbationB::new(self.b_coeffs.clone()).map_err(|e| match e {
            equiconv::Error::InvalidParameter { reason, .. } => invalid("b_coeffs", reason),
            other => invalid("b_coeffs", other.to_string()),
        })?;
        OperatorSpec::new(params, b).map_err(|e| from_core("", e))
    }

    fn check_n(&self, field: &str, n: usize) -> Result<(), CliError> {
        if n >= self.usable() {
            return Err(invalid(
                field,
                format!("{n} exceeds the usable range 0..{} of basis_size {}", self.usable(), self.basis_size),
            ));
        }
        Ok(())
    }

    /// Re-checks every parameter constraint of the modules the experiment uses.
    pub fn validate(&self) -> Result<(), CliError> {
        self.operator_spec()?;
        if self.basis_size < 8 {
            return Err(invalid("basis_size", "must be at least 8"));
        }
        if self.quad_points() < 2 * self.basis_size {
            return Err(invalid("quad_points", "must be at least 2 * basis_size"));
        }
        match self.experiment {
            Experiment::Spectrum => {
                let p = self.spectrum.clone().unwrap_or_default();
                self.check_n("spectrum.n_max", p.n_max)?;
            }
            Experiment::Eigfun => {
                let p = self.eigfun.clone().unwrap_or_default();
                self.check_n("eigfun.n_max", p.n_max)?;
                if p.grid_points < 2 {
                    return Err(invalid("eigfun.grid_points", "need at least 2 points"));
                }
            }
            Experiment::Asymptotics => {
                let p = self.asymptotics.clone().unwrap_or_default();
                for tag in &p.lemmas {
                    if Lemma::from_tag(tag).is_none() {
                        return Err(invalid("asymptotics.lemmas", format!("unknown lemma {tag:?}")));
                    }
                }
                if p.n_min == 0 || p.n_min > p.n_max {
                    return Err(invalid("asymptotics.n_min", "need 1 <= n_min <= n_max"));
                }
                self.check_n("asymptotics.n_max", p.n_max + 1)?;
                if p.t_points == 0 {
                    return Err(invalid("asymptotics.t_points", "need at least 1 point"));
                }
                if let Some(ts) = &p.t_values {
                    if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && *t < std::f64::consts::FRAC_PI_2)) {
                        return Err(invalid("asymptotics.t_values", "values must lie in (0, π/2)"));
                    }
                }
                if p.halves_factor.is_nan() || p.halves_factor <= 0.0 {
                    return Err(invalid("asymptotics.halves_factor", "must be positive"));
                }
            }
            Experiment::KernelDiff => {
                let p = self.kernel_diff.clone().unwrap_or_default();
                if p.x_list.is_empty() {
                    return Err(invalid("kernel_diff.x_list", "empty"));
                }
                if let Some(x) = p.x_list.iter().find(|x| !(**x > 0.0 && **x < std::f64::consts::FRAC_PI_2)) {
                    return Err(invalid("kernel_diff.x_list", format!("{x} lies outside (0, π/2)")));
                }
                if p.n_min > p.n_max {
                    return Err(invalid("kernel_diff.n_min", "need n_min <= n_max"));
                }
                self.check_n("kernel_diff.n_max", p.n_max)?;
                if p.y_points < 4 {
                    return Err(invalid("kernel_diff.y_points", "need at least 4 points"));
                }
                summability(p.summability, p.theta).map_err(|e| from_core("kernel_diff.", e))?;
            }
            Experiment::Equiconv => {
                let p = self.equiconv.clone().unwrap_or_default();
                p.function
                    .parse::<PiecewiseFunction<f64>>()
                    .map_err(|e| from_core("equiconv.", e))?;
                summability(p.summability, p.theta).map_err(|e| from_core("equiconv.", e))?;
                let [g0, g1] = p.gamma;
                if !(g0 > 0.0 && g0 < g1 && g1 < std::f64::consts::FRAC_PI_2) {
                    return Err(invalid("equiconv.gamma", "need 0 < a < b < π/2"));
                }
                if p.grid_points < 2 {
                    return Err(invalid("equiconv.grid_points", "need at least 2 points"));
                }
                if p.n_min > p.n_max {
                    return Err(invalid("equiconv.n_min", "need n_min <= n_max"));
                }
                self.check_n("equiconv.n_max", p.n_max)?;
                for (name, w) in [("equiconv.early", p.early), ("equiconv.late", p.late)] {
                    if w[0] > w[1] || w[0] < p.n_min || w[1] > p.n_max {
                        return Err(invalid(name, "window must lie inside [n_min, n_max]"));
                    }
                }
            }
            Experiment::Selftest => {}
        }
        Ok(())
    }
}

pub fn summability(kind: Summability, theta: f64) -> equiconv::Result<SummabilitySequence<f64>> {
    match kind {
        Summability::Rectangular => Ok(SummabilitySequence::rectangular()),
        Summability::Cesaro => SummabilitySequence::cesaro(theta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(src: &str) -> String {
        match RunConfig::from_toml_str(src) {
            Err(CliError::Config { field, .. }) => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_and_round_trip() {
        let cfg = RunConfig::from_toml_str("experiment = \"spectrum\"\n").unwrap();
        assert_eq!(cfg, RunConfig::new(Experiment::Spectrum));
        assert_eq!(cfg.quad_points(), 256);
        let mut full = RunConfig::new(Experiment::KernelDiff);
        full.b_coeffs = vec![0.0, 0.2];
        full.basis_size = 272;
        full.alpha = 0.6;
        full.beta = 0.2;
        full.quad_points = Some(600);
        full.kernel_diff = Some(KernelDiffParams::default());
        full.asymptotics = Some(AsymptoticsParams {
            t_values: Some(vec![0.1, std::f64::consts::FRAC_PI_6]),
            ..Default::default()
        });
        full.equiconv = Some(EquiconvParams::default());
        let text = full.to_toml_string();
        assert_eq!(RunConfig::from_toml_str(&text).unwrap(), full);
        full.basis_size = 128;
        assert!(matches!(full.validate(), Err(CliError::Config { field, .. }) if field == "kernel_diff.n_max"));
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(field_of("experiment = \"spectrum\"\nalpha = \"x\"\n"), "alpha");
        assert_eq!(field_of("experiment = \"spectrum\"\nalpah = 1.0\n"), "alpah");
        assert_eq!(field_of("alpha = 1.0\n"), "experiment");
        assert_eq!(field_of("experiment = \"spectrum\"\nalpha = 0.1\nbeta = 0.4\n"), "beta");
        assert_eq!(field_of("experiment = \"spectrum\"\nb_coeffs = [0.7, 0.5]\n"), "b_coeffs");
        assert_eq!(
            field_of("experiment = \"kernel-diff\"\n[kernel_diff]\nx_list = [0.3, 2.0]\n"),
            "kernel_diff.x_list"
        );
        assert_eq!(
            field_of("experiment = \"equiconv\"\n[equiconv]\nn_max = \"lots\"\n"),
            "equiconv.n_max"
        );
        assert_eq!(
            field_of("experiment = \"equiconv\"\n[equiconv]\nfunction = \"wave(2)\"\n"),
            "equiconv.function"
        );
        assert_eq!(field_of("experiment = \"spectrum\"\n[spectrum]\nn_max = 500\n"), "spectrum.n_max");
        assert_eq!(field_of("experiment = \"spectrum\"\nquad_points = 10\n"), "quad_points");
    }
}
