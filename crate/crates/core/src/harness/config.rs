use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::hardgraphs::{ProbRule, Variant};
use crate::sim::DEFAULT_C_L;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
}

fn bad(key: &str, msg: impl fmt::Display) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        msg: msg.to_string(),
    }
}

/// A graph family, written as `kind key=value ...`, e.g. `gnp n=1000 d=16`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Empty { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Matching { pairs: usize },
    StarForest { stars: usize, leaves: usize },
    Petersen,
    /// `G(n, p)` with `p = d / (n - 1)`.
    Gnp { n: usize, d: f64 },
    /// Line graph of `G(n, d / (n - 1))`.
    LineGnp { n: usize, d: f64 },
    Interval { count: usize, span: f64 },
    Cliques { sizes: Vec<usize>, cross: f64 },
    Hard { k: u64, levels: u32, b: u32, variant: Variant },
    File { path: PathBuf },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        match self {
            Empty { n } => write!(f, "empty n={n}"),
            Complete { n } => write!(f, "complete n={n}"),
            Path { n } => write!(f, "path n={n}"),
            Cycle { n } => write!(f, "cycle n={n}"),
            Star { leaves } => write!(f, "star leaves={leaves}"),
            Matching { pairs } => write!(f, "matching pairs={pairs}"),
            StarForest { stars, leaves } => write!(f, "star-forest stars={stars} leaves={leaves}"),
            Petersen => write!(f, "petersen"),
            Gnp { n, d } => write!(f, "gnp n={n} d={d}"),
            LineGnp { n, d } => write!(f, "line-gnp n={n} d={d}"),
            Interval { count, span } => write!(f, "interval count={count} span={span}"),
            Cliques { sizes, cross } => {
                let s: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "cliques sizes={} cross={cross}", s.join("/"))
            }
            Hard { k, levels, b, variant } => {
                let v = match variant {
                    Variant::Mis => "mis",
                    Variant::Mm => "mm",
                };
                write!(f, "hard k={k} levels={levels} b={b} variant={v}")
            }
            File { path } => write!(f, "file path={}", path.display()),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or_else(|| bad("generator", "empty"))?;
        let mut params = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| bad("generator", format!("expected key=value, got `{w}`")))?;
            params.insert(k.to_string(), v.to_string());
        }
        let mut take = |key: &str| -> Result<String, ConfigError> {
            params
                .remove(key)
                .ok_or_else(|| bad("generator", format!("`{kind}` needs `{key}`")))
        };
        fn num<T: FromStr>(key: &str, v: String) -> Result<T, ConfigError>
        where
            T::Err: fmt::Display,
        {
            v.parse().map_err(|e| bad("generator", format!("{key}: {e}")))
        }
        use GeneratorSpec::*;
        let spec = match kind {
            "empty" => Empty { n: num("n", take("n")?)? },
            "complete" => Complete { n: num("n", take("n")?)? },
            "path" => Path { n: num("n", take("n")?)? },
            "cycle" => Cycle { n: num("n", take("n")?)? },
            "star" => Star { leaves: num("leaves", take("leaves")?)? },
            "matching" => Matching { pairs: num("pairs", take("pairs")?)? },
            "star-forest" => StarForest {
                stars: num("stars", take("stars")?)?,
                leaves: num("leaves", take("leaves")?)?,
            },
            "petersen" => Petersen,
            "gnp" => Gnp {
                n: num("n", take("n")?)?,
                d: num("d", take("d")?)?,
            },
            "line-gnp" => LineGnp {
                n: num("n", take("n")?)?,
                d: num("d", take("d")?)?,
            },
            "interval" => Interval {
                count: num("count", take("count")?)?,
                span: num("span", take("span")?)?,
            },
            "cliques" => Cliques {
                sizes: take("sizes")?
                    .split('/')
                    .map(|x| num("sizes", x.to_string()))
                    .collect::<Result<_, _>>()?,
                cross: num("cross", take("cross")?)?,
            },
            "hard" => Hard {
                k: num("k", take("k")?)?,
                levels: num("levels", take("levels")?)?,
                b: num("b", take("b")?)?,
                variant: match take("variant")?.as_str() {
                    "mis" => Variant::Mis,
                    "mm" => Variant::Mm,
                    other => return Err(bad("generator", format!("variant `{other}`"))),
                },
            },
            "file" => File {
                path: PathBuf::from(take("path")?),
            },
            other => return Err(bad("generator", format!("unknown kind `{other}`"))),
        };
        if let Some(extra) = params.keys().next() {
            return Err(bad("generator", format!("unexpected parameter `{extra}`")));
        }
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    MisAvgDegree,
    MisIndependence,
    MisNeighborhood,
    MmAvgDegree,
    MmIndependence,
    MmNeighborhood,
    ReduceMis,
    ReduceMm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::MisAvgDegree,
        Algorithm::MisIndependence,
        Algorithm::MisNeighborhood,
        Algorithm::MmAvgDegree,
        Algorithm::MmIndependence,
        Algorithm::MmNeighborhood,
        Algorithm::ReduceMis,
        Algorithm::ReduceMm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MisAvgDegree => "mis-avg-degree",
            Algorithm::MisIndependence => "mis-independence",
            Algorithm::MisNeighborhood => "mis-neighborhood",
            Algorithm::MmAvgDegree => "mm-avg-degree",
            Algorithm::MmIndependence => "mm-independence",
            Algorithm::MmNeighborhood => "mm-neighborhood",
            Algorithm::ReduceMis => "reduce-mis",
            Algorithm::ReduceMm => "reduce-mm",
        }
    }

    pub fn is_mis(self) -> bool {
        matches!(
            self,
            Algorithm::MisAvgDegree | Algorithm::MisIndependence | Algorithm::MisNeighborhood | Algorithm::ReduceMis
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| bad("algorithm", format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(bad("format", format!("`{s}` is not csv or json"))),
        }
    }
}

/// Checks with a statistical threshold; validity is always checked and is
/// a hard failure.
pub const CHECK_NAMES: [&str; 3] = ["admissible", "trace-monotone", "cluster-independence"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub generator: GeneratorSpec,
    pub algorithm: Algorithm,
    /// Independence parameter for the `*-independence` pipelines.
    pub mu: f64,
    /// Sampling rule for `reduce-mis`.
    pub rule: ProbRule,
    /// First seed; trial `i` uses `seed + i`.
    pub seed: u64,
    pub reps: u64,
    pub checks: Vec<String>,
    /// Minimum success fraction per check, default 1.
    pub thresholds: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub c_l: u64,
}

impl ExperimentConfig {
    pub fn new(generator: GeneratorSpec, algorithm: Algorithm) -> ExperimentConfig {
        ExperimentConfig {
            generator,
            algorithm,
            mu: 0.5,
            rule: ProbRule::UniformAvg,
            seed: 0,
            reps: 1,
            checks: Vec::new(),
            thresholds: BTreeMap::new(),
            out: None,
            format: Format::Csv,
            c_l: DEFAULT_C_L,
        }
    }

    /// Parses a `key = value` file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                msg: "expected key = value".into(),
            })?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let generator = pairs
            .iter()
            .find(|(k, _)| k == "generator")
            .ok_or(ConfigError::Missing("generator"))?
            .1
            .parse()?;
        let algorithm = pairs
            .iter()
            .find(|(k, _)| k == "algorithm")
            .ok_or(ConfigError::Missing("algorithm"))?
            .1
            .parse()?;
        let mut cfg = ExperimentConfig::new(generator, algorithm);
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one `key = value` setting, as from a file line or a command
    /// line override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "generator" => self.generator = value.parse()?,
            "algorithm" => self.algorithm = value.parse()?,
            "mu" => self.mu = value.parse().map_err(|e| bad(key, e))?,
            "rule" => {
                self.rule = match value {
                    "uniform-avg" => ProbRule::UniformAvg,
                    "uniform-min" => ProbRule::UniformMin,
                    "per-vertex-degree" => ProbRule::PerVertexDegree,
                    _ => return Err(bad(key, format!("unknown rule `{value}`"))),
                }
            }
            "seed" => self.seed = value.parse().map_err(|e| bad(key, e))?,
            "reps" => self.reps = value.parse().map_err(|e| bad(key, e))?,
            "checks" => {
                self.checks = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "budget_cl" | "c_l" => self.c_l = value.parse().map_err(|e| bad(key, e))?,
            _ => {
                if let Some(check) = key.strip_prefix("threshold.") {
                    let t: f64 = value.parse().map_err(|e| bad(key, e))?;
                    self.thresholds.insert(check.to_string(), t);
                } else {
                    return Err(ConfigError::UnknownKey(key.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.reps == 0 {
            return Err(bad("reps", "must be at least 1"));
        }
        if self.seed.checked_add(self.reps).is_none() {
            return Err(bad("seed", "seed range overflows"));
        }
        if self.mu.is_nan() || self.mu <= 0.0 {
            return Err(bad("mu", "must be positive"));
        }
        if self.c_l == 0 {
            return Err(bad("budget_cl", "must be positive"));
        }
        for c in self.checks.iter().chain(self.thresholds.keys()) {
            if !CHECK_NAMES.contains(&c.as_str()) {
                return Err(bad("checks", format!("unknown check `{c}`")));
            }
        }
        for (c, &t) in &self.thresholds {
            if !(0.0..=1.0).contains(&t) {
                return Err(bad(&format!("threshold.{c}"), "must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> {
        self.seed..self.seed + self.reps
    }

    /// Canonical text of the settings that determine a trial's result.
    /// Seeds, repetitions and output settings are left out, so a trial keeps
    /// its hash when the batch around it changes.
    pub fn canonical(&self) -> String {
        let rule = match self.rule {
            ProbRule::UniformAvg => "uniform-avg",
            ProbRule::UniformMin => "uniform-min",
            ProbRule::PerVertexDegree => "per-vertex-degree",
        };
        let mut s = format!(
            "generator = {}\nalgorithm = {}\nmu = {}\nrule = {}\nbudget_cl = {}\nchecks = {}\n",
            self.generator,
            self.algorithm,
            self.mu,
            rule,
            self.c_l,
            self.checks.join(",")
        );
        for (c, t) in &self.thresholds {
            s.push_str(&format!("threshold.{c} = {t}\n"));
        }
        s
    }

    /// First 16 hex digits of the SHA-256 of [`canonical`](Self::canonical).
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn threshold(&self, check: &str) -> f64 {
        self.thresholds.get(check).copied().unwrap_or(1.0)
    }
}
