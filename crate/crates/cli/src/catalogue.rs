//! Versioned catalogue of verification instances (TOML).

use std::fs;
use std::path::Path;

use ferroflow_core::graph::random::random_catalogue;
use ferroflow_core::poly::ExactScalar;
use ferroflow_core::{Multigraph, Vertex};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::rational::parse_exact;

pub const CATALOGUE_VERSION: u32 = 1;

/// The catalogue shipped with the binary.
pub const BUILTIN: &str = include_str!("../data/catalogue.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalogue {
    #[serde(default = "current_version")]
    version: u32,
    #[serde(default)]
    q: Vec<u32>,
    #[serde(default)]
    lambda: Vec<f64>,
    #[serde(default)]
    p: Vec<String>,
    #[serde(default)]
    q_real: Vec<f64>,
    #[serde(default)]
    graph: Vec<RawGraph>,
    random: Option<RandomBlock>,
    #[serde(default)]
    theorem1: Theorem1Block,
    #[serde(default)]
    switching: SwitchingBlock,
    #[serde(default)]
    products: ProductsBlock,
    #[serde(default)]
    simon: Vec<SimonInstance>,
}

fn current_version() -> u32 {
    CATALOGUE_VERSION
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    name: String,
    vertices: Option<usize>,
    edges: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomBlock {
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_edges: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Block {
    pub max_vertices: usize,
}

impl Default for Theorem1Block {
    fn default() -> Self {
        Theorem1Block { max_vertices: 4 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchingBlock {
    #[serde(default = "default_switching_edges")]
    pub max_edges: usize,
    #[serde(default = "default_switching_total")]
    pub max_total: u32,
    #[serde(default)]
    pub graphs: Vec<String>,
    #[serde(default)]
    pub lambda: Vec<f64>,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
}

fn default_switching_edges() -> usize {
    4
}

fn default_switching_total() -> u32 {
    8
}

fn default_truncation() -> u32 {
    16
}

impl Default for SwitchingBlock {
    fn default() -> Self {
        SwitchingBlock {
            max_edges: default_switching_edges(),
            max_total: default_switching_total(),
            graphs: Vec::new(),
            lambda: Vec::new(),
            truncation: default_truncation(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductsBlock {
    #[serde(default)]
    pub graphs: Vec<String>,
    #[serde(default)]
    pub lambda: Vec<f64>,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
}

impl Default for ProductsBlock {
    fn default() -> Self {
        ProductsBlock { graphs: Vec::new(), lambda: Vec::new(), truncation: default_truncation() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimonInstance {
    pub graph: String,
    pub x: Vertex,
    pub z: Vertex,
    pub w: Vec<Vertex>,
    /// Intensities for this instance; the catalogue grid when absent.
    pub lambda: Option<Vec<f64>>,
    /// Whether the two sides must agree, as on a path cut at one vertex.
    #[serde(default)]
    pub equality: bool,
}

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Multigraph,
}

/// A parsed catalogue with every graph built.
#[derive(Debug, Clone)]
pub struct Catalogue {
    pub q: Vec<u32>,
    pub lambda: Vec<f64>,
    pub p: Vec<ExactScalar>,
    pub q_real: Vec<f64>,
    pub graphs: Vec<NamedGraph>,
    pub theorem1: Theorem1Block,
    pub switching: SwitchingBlock,
    pub products: ProductsBlock,
    pub simon: Vec<SimonInstance>,
}

impl Catalogue {
    pub fn builtin() -> CliResult<Catalogue> {
        Catalogue::parse(BUILTIN).map_err(|e| CliError::usage(format!("built-in catalogue: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Catalogue> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Catalogue::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> CliResult<Catalogue> {
        let raw: RawCatalogue = toml::from_str(text).map_err(CliError::usage)?;
        if raw.version != CATALOGUE_VERSION {
            return Err(CliError::usage(format!(
                "catalogue version {} is not supported (expected {CATALOGUE_VERSION})",
                raw.version
            )));
        }
        let mut graphs = Vec::new();
        for g in &raw.graph {
            let graph = match (g.vertices, &g.edges) {
                (None, None) => Multigraph::builtin(&g.name)?,
                (Some(n), Some(edges)) => Multigraph::new(n, edges.iter().map(|&[t, h]| (t, h)))?,
                _ => return Err(CliError::usage(format!("graph `{}`: give both vertices and edges, or neither", g.name))),
            };
            graphs.push(NamedGraph { name: g.name.clone(), graph });
        }
        if let Some(r) = &raw.random {
            for (i, graph) in random_catalogue(r.seed, r.count, r.max_vertices, r.max_edges).into_iter().enumerate() {
                graphs.push(NamedGraph { name: format!("random#{i}"), graph });
            }
        }
        let p = raw.p.iter().map(|s| parse_exact(s)).collect::<CliResult<Vec<_>>>()?;
        Ok(Catalogue {
            q: raw.q,
            lambda: raw.lambda,
            p,
            q_real: raw.q_real,
            graphs,
            theorem1: raw.theorem1,
            switching: raw.switching,
            products: raw.products,
            simon: raw.simon,
        })
    }

    /// A catalogue graph by name, falling back to the built-in families.
    pub fn resolve(&self, name: &str) -> CliResult<Multigraph> {
        match self.graphs.iter().find(|g| g.name == name) {
            Some(g) => Ok(g.graph.clone()),
            None => Ok(Multigraph::builtin(name)?),
        }
    }
}
