//! Run configuration.
//!
//! Settings come from three layers, lowest precedence first:
//!
//! 1. a flat `key = value` file named by `--config` (keys are the long flag
//!    names without dashes, e.g. `truncation-target = 1e-9`),
//! 2. environment variables `FERROFLOW_<KEY>` with dashes as underscores,
//!    e.g. `FERROFLOW_TRUNCATION_TARGET`,
//! 3. command-line flags.
//!
//! Mutually exclusive groups (`graph`/`graph-file`, `lambda`/`beta`+`couplings`)
//! are taken whole from the highest layer that mentions any member.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use ferroflow_core::poisson::IntensityVector;
use ferroflow_core::potts::PottsParams;
use ferroflow_core::{Limits, Multigraph, Vertex};

use crate::error::{CliError, CliResult};
use crate::graph_io::GraphSource;

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat key = value settings file; environment and flags override it
    #[arg(long, global = true, env = "FERROFLOW_CONFIG", value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in graph: k2, digon, triangle, k4, path:<n>, cycle:<n>, ladder:<n>
    #[arg(long, global = true, env = "FERROFLOW_GRAPH", value_name = "NAME")]
    pub graph: Option<String>,
    /// Graph file: `n m` header then one `tail head` line per edge
    #[arg(long, global = true, env = "FERROFLOW_GRAPH_FILE", value_name = "PATH")]
    pub graph_file: Option<String>,
    /// Number of Potts states
    #[arg(long, global = true, env = "FERROFLOW_Q")]
    pub q: Option<String>,
    /// Edge intensities: one value for every edge, or a comma-separated list
    #[arg(long, global = true, env = "FERROFLOW_LAMBDA", value_name = "L[,L...]")]
    pub lambda: Option<String>,
    /// Inverse temperature; intensities become beta * J
    #[arg(long, global = true, env = "FERROFLOW_BETA")]
    pub beta: Option<String>,
    /// Edge couplings J, one value or a comma-separated list (default 1)
    #[arg(long, global = true, env = "FERROFLOW_COUPLINGS", value_name = "J[,J...]")]
    pub couplings: Option<String>,
    #[arg(long, global = true, env = "FERROFLOW_X")]
    pub x: Option<String>,
    #[arg(long, global = true, env = "FERROFLOW_Y")]
    pub y: Option<String>,
    #[arg(long, global = true, env = "FERROFLOW_Z")]
    pub z: Option<String>,
    /// Monte Carlo seed
    #[arg(long, global = true, env = "FERROFLOW_SEED")]
    pub seed: Option<String>,
    /// Monte Carlo sample count
    #[arg(long, global = true, env = "FERROFLOW_SAMPLES")]
    pub samples: Option<String>,
    /// Target for certified truncation error bounds
    #[arg(long, global = true, env = "FERROFLOW_TRUNCATION_TARGET", value_name = "EPS")]
    pub truncation_target: Option<String>,
    /// Maximum edge count for subset enumeration
    #[arg(long, global = true, env = "FERROFLOW_CAP_SUBSET_EDGES", value_name = "N")]
    pub cap_subset_edges: Option<String>,
    /// Maximum number of brute-force flow assignments
    #[arg(long, global = true, env = "FERROFLOW_CAP_FLOW_ASSIGNMENTS", value_name = "N")]
    pub cap_flow_assignments: Option<String>,
    /// Maximum number of spin configurations
    #[arg(long, global = true, env = "FERROFLOW_CAP_SPIN_CONFIGS", value_name = "N")]
    pub cap_spin_configs: Option<String>,
    /// Maximum number of random-cluster configurations
    #[arg(long, global = true, env = "FERROFLOW_CAP_RC_CONFIGS", value_name = "N")]
    pub cap_rc_configs: Option<String>,
    /// Maximum edge count of a sampled multigraph
    #[arg(long, global = true, env = "FERROFLOW_CAP_SAMPLE_EDGES", value_name = "N")]
    pub cap_sample_edges: Option<String>,
    /// Maximum number of sub-multisets in switching enumerations
    #[arg(long, global = true, env = "FERROFLOW_CAP_SWITCHING_SUBSETS", value_name = "N")]
    pub cap_switching_subsets: Option<String>,
    /// Maximum number of multiplicity vectors enumerated directly
    #[arg(long, global = true, env = "FERROFLOW_CAP_MULTIPLICITY_VECTORS", value_name = "N")]
    pub cap_multiplicity_vectors: Option<String>,
    /// Largest truncation level the adaptive search may use
    #[arg(long, global = true, env = "FERROFLOW_CAP_TRUNCATION", value_name = "M")]
    pub cap_truncation: Option<String>,
    /// Output format: json (one record per line), csv or table
    #[arg(long, global = true, env = "FERROFLOW_FORMAT")]
    pub format: Option<String>,
    /// Worker threads (0 picks the number of cores); results do not depend on it
    #[arg(long, global = true, env = "FERROFLOW_WORKERS", value_name = "N")]
    pub workers: Option<String>,
}

impl CommonArgs {
    fn entries(&self) -> [(&'static str, &Option<String>); 22] {
        [
            ("graph", &self.graph),
            ("graph-file", &self.graph_file),
            ("q", &self.q),
            ("lambda", &self.lambda),
            ("beta", &self.beta),
            ("couplings", &self.couplings),
            ("x", &self.x),
            ("y", &self.y),
            ("z", &self.z),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("truncation-target", &self.truncation_target),
            ("cap-subset-edges", &self.cap_subset_edges),
            ("cap-flow-assignments", &self.cap_flow_assignments),
            ("cap-spin-configs", &self.cap_spin_configs),
            ("cap-rc-configs", &self.cap_rc_configs),
            ("cap-sample-edges", &self.cap_sample_edges),
            ("cap-switching-subsets", &self.cap_switching_subsets),
            ("cap-multiplicity-vectors", &self.cap_multiplicity_vectors),
            ("cap-truncation", &self.cap_truncation),
            ("format", &self.format),
            ("workers", &self.workers),
        ]
    }

    fn known_key(key: &str) -> bool {
        CommonArgs::default().entries().iter().any(|(k, _)| *k == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" | "ndjson" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(CliError::usage(format!("unknown format `{s}` (expected json, csv or table)"))),
        }
    }
}

/// How edge intensities were specified.
#[derive(Debug, Clone, PartialEq)]
pub enum IntensitySpec {
    Lambda(Vec<f64>),
    Coupled { beta: f64, couplings: Vec<f64> },
}

impl IntensitySpec {
    pub fn potts(&self, q: u32, edges: usize) -> CliResult<PottsParams> {
        let params = match self {
            IntensitySpec::Lambda(l) => PottsParams::new(q, 1.0, broadcast("lambda", l, edges)?),
            IntensitySpec::Coupled { beta, couplings } => {
                PottsParams::new(q, *beta, broadcast("couplings", couplings, edges)?)
            }
        };
        Ok(params?)
    }

    pub fn intensities(&self, edges: usize) -> CliResult<IntensityVector> {
        // q only enters the Potts check; intensities are β J either way.
        Ok(IntensityVector::new(self.potts(2, edges)?.intensities())?)
    }
}

fn broadcast(what: &str, values: &[f64], edges: usize) -> CliResult<Vec<f64>> {
    match values.len() {
        1 => Ok(vec![values[0]; edges]),
        n if n == edges => Ok(values.to_vec()),
        n => Err(CliError::usage(format!("{what}: expected 1 or {edges} values, got {n}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub graph: Option<GraphSource>,
    pub q: u32,
    pub intensity: Option<IntensitySpec>,
    pub x: Option<Vertex>,
    pub y: Option<Vertex>,
    pub z: Option<Vertex>,
    pub seed: u64,
    pub samples: u64,
    pub truncation_target: f64,
    pub limits: Limits,
    pub format: Format,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            graph: None,
            q: 2,
            intensity: None,
            x: None,
            y: None,
            z: None,
            seed: 1,
            samples: 10_000,
            truncation_target: 1e-10,
            limits: Limits::default(),
            format: Format::Table,
            workers: 0,
        }
    }
}

type Layer = BTreeMap<String, String>;

/// Parses a flat `key = value` file. `#` starts a comment.
pub fn parse_config_file(text: &str) -> CliResult<Layer> {
    let mut out = Layer::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if !CommonArgs::known_key(&key) {
            return Err(CliError::usage(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        out.insert(key, value.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

fn parse<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.trim().parse().map_err(|_| CliError::usage(format!("invalid value `{value}` for {key}")))
}

fn parse_list(key: &str, value: &str) -> CliResult<Vec<f64>> {
    value.split(',').map(|v| parse(key, v)).collect()
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> CliResult<RunConfig> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
                parse_config_file(&text)?
            }
            None => Layer::new(),
        };
        let flags: Layer =
            args.entries().iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect();
        RunConfig::from_layers(&file, &flags)
    }

    fn from_layers(file: &Layer, flags: &Layer) -> CliResult<RunConfig> {
        let group = |keys: &[&str]| if keys.iter().any(|k| flags.contains_key(*k)) { flags } else { file };
        let get = |key: &str| group(&[key]).get(key).map(String::as_str);
        let mut cfg = RunConfig::default();

        let layer = group(&["graph", "graph-file"]);
        cfg.graph = match (layer.get("graph"), layer.get("graph-file")) {
            (Some(_), Some(_)) => return Err(CliError::usage("give either --graph or --graph-file, not both")),
            (Some(name), None) => Some(GraphSource::Builtin(name.clone())),
            (None, Some(path)) => Some(GraphSource::File(path.into())),
            (None, None) => None,
        };

        let layer = group(&["lambda", "beta", "couplings"]);
        cfg.intensity = match (layer.get("lambda"), layer.get("beta"), layer.get("couplings")) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(CliError::usage("give either --lambda or --beta/--couplings, not both"))
            }
            (Some(l), None, None) => Some(IntensitySpec::Lambda(parse_list("lambda", l)?)),
            (None, None, None) => None,
            (None, beta, couplings) => Some(IntensitySpec::Coupled {
                beta: beta.map_or(Ok(1.0), |b| parse("beta", b))?,
                couplings: couplings.map_or(Ok(vec![1.0]), |c| parse_list("couplings", c))?,
            }),
        };

        if let Some(v) = get("q") {
            cfg.q = parse("q", v)?;
        }
        cfg.x = get("x").map(|v| parse("x", v)).transpose()?;
        cfg.y = get("y").map(|v| parse("y", v)).transpose()?;
        cfg.z = get("z").map(|v| parse("z", v)).transpose()?;
        if let Some(v) = get("seed") {
            cfg.seed = parse("seed", v)?;
        }
        if let Some(v) = get("samples") {
            cfg.samples = parse("samples", v)?;
        }
        if let Some(v) = get("truncation-target") {
            cfg.truncation_target = parse("truncation-target", v)?;
            if !(cfg.truncation_target > 0.0 && cfg.truncation_target.is_finite()) {
                return Err(CliError::usage("truncation-target must be positive"));
            }
        }
        let l = &mut cfg.limits;
        if let Some(v) = get("cap-subset-edges") {
            l.subset_edges = parse("cap-subset-edges", v)?;
        }
        if let Some(v) = get("cap-flow-assignments") {
            l.flow_assignments = parse("cap-flow-assignments", v)?;
        }
        if let Some(v) = get("cap-spin-configs") {
            l.spin_configs = parse("cap-spin-configs", v)?;
        }
        if let Some(v) = get("cap-rc-configs") {
            l.rc_configs = parse("cap-rc-configs", v)?;
        }
        if let Some(v) = get("cap-sample-edges") {
            l.sample_edges = parse("cap-sample-edges", v)?;
        }
        if let Some(v) = get("cap-switching-subsets") {
            l.switching_subsets = parse("cap-switching-subsets", v)?;
        }
        if let Some(v) = get("cap-multiplicity-vectors") {
            l.multiplicity_vectors = parse("cap-multiplicity-vectors", v)?;
        }
        if let Some(v) = get("cap-truncation") {
            l.max_truncation = parse("cap-truncation", v)?;
        }
        if let Some(v) = get("format") {
            cfg.format = v.parse()?;
        }
        if let Some(v) = get("workers") {
            cfg.workers = parse("workers", v)?;
        }
        Ok(cfg)
    }

    pub fn graph(&self) -> CliResult<(String, Multigraph)> {
        let source = self.graph.as_ref().ok_or_else(|| CliError::usage("no graph given; use --graph or --graph-file"))?;
        Ok((source.label(), source.load()?))
    }

    pub fn intensity(&self) -> CliResult<&IntensitySpec> {
        self.intensity.as_ref().ok_or_else(|| CliError::usage("no intensities given; use --lambda or --beta/--couplings"))
    }

    pub fn vertex(&self, name: &str, value: Option<Vertex>) -> CliResult<Vertex> {
        value.ok_or_else(|| CliError::usage(format!("--{name} is required")))
    }

    /// A thread pool honouring `--workers`.
    pub fn pool(&self) -> CliResult<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CliError::usage(format!("cannot start worker threads: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(pairs: &[(&str, &str)]) -> Layer {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn config_file_syntax() {
        let l = parse_config_file("# run\nq = 3\ntruncation_target=1e-9 # tight\n\ngraph = \"cycle:4\"\n").unwrap();
        assert_eq!(l, layer(&[("q", "3"), ("truncation-target", "1e-9"), ("graph", "cycle:4")]));
        assert!(parse_config_file("q 3").is_err());
        assert!(parse_config_file("colour = red").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = layer(&[("q", "3"), ("seed", "9"), ("graph", "k4"), ("lambda", "0.3")]);
        let flags = layer(&[("q", "4"), ("graph-file", "g.txt"), ("beta", "2")]);
        let cfg = RunConfig::from_layers(&file, &flags).unwrap();
        assert_eq!(cfg.q, 4);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.graph, Some(GraphSource::File("g.txt".into())));
        assert_eq!(cfg.intensity, Some(IntensitySpec::Coupled { beta: 2.0, couplings: vec![1.0] }));
    }

    #[test]
    fn exclusive_groups() {
        let both = layer(&[("lambda", "0.5"), ("beta", "1")]);
        assert!(RunConfig::from_layers(&Layer::new(), &both).is_err());
        let both = layer(&[("graph", "k2"), ("graph-file", "x")]);
        assert!(RunConfig::from_layers(&both, &Layer::new()).is_err());
    }

    #[test]
    fn caps_and_format() {
        let flags = layer(&[("cap-spin-configs", "5"), ("cap-truncation", "40"), ("format", "csv")]);
        let cfg = RunConfig::from_layers(&Layer::new(), &flags).unwrap();
        assert_eq!(cfg.limits.spin_configs, 5);
        assert_eq!(cfg.limits.max_truncation, 40);
        assert_eq!(cfg.format, Format::Csv);
        let bad = layer(&[("format", "xml")]);
        assert!(RunConfig::from_layers(&Layer::new(), &bad).is_err());
    }

    #[test]
    fn intensities_broadcast() {
        let spec = IntensitySpec::Coupled { beta: 0.5, couplings: vec![1.0, 2.0] };
        assert_eq!(spec.intensities(2).unwrap().as_slice(), &[0.5, 1.0]);
        assert!(spec.intensities(3).is_err());
        assert_eq!(IntensitySpec::Lambda(vec![0.2]).intensities(3).unwrap().as_slice(), &[0.2; 3]);
    }
}
