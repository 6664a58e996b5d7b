use clap::{ArgGroup, Args, ValueEnum};
use ferroflow_core::poly::{
    count_flows_dc, count_flows_enum, count_flows_whitney, flow_polynomial, tutte_eval, whitney_eval,
};
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{cell, Record};
use crate::rational::parse_exact;

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("quantity").required(true).args(["whitney", "tutte", "flow", "flowpoly"])))]
pub struct PolyArgs {
    /// Whitney rank-generating function W(u, v)
    #[arg(long)]
    pub whitney: bool,
    /// Tutte polynomial T(u, v)
    #[arg(long)]
    pub tutte: bool,
    /// Number of non-zero mod-q flows
    #[arg(long)]
    pub flow: bool,
    /// Flow polynomial coefficients, lowest degree first
    #[arg(long)]
    pub flowpoly: bool,
    /// First evaluation point (integer, fraction or decimal)
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Second evaluation point (integer, fraction or decimal)
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Flow counting route
    #[arg(long, value_enum, default_value_t = FlowMethod::Dc)]
    pub method: FlowMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlowMethod {
    /// Deletion-contraction
    Dc,
    /// Brute force over assignments
    Enum,
    /// Read off the Whitney function
    Whitney,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyRecord {
    pub graph: String,
    pub quantity: &'static str,
    pub u: Option<String>,
    pub v: Option<String>,
    pub q: Option<u32>,
    pub value: String,
    pub coefficients: Option<Vec<Value>>,
}

impl Record for PolyRecord {
    const COLUMNS: &'static [&'static str] = &["graph", "quantity", "u", "v", "q", "value", "coefficients"];

    fn cells(&self) -> Vec<String> {
        let coefficients = self.coefficients.as_ref().map(|c| {
            let items: Vec<String> = c.iter().map(|v| v.to_string().trim_matches('"').to_string()).collect();
            format!("[{}]", items.join(", "))
        });
        vec![
            self.graph.clone(),
            self.quantity.to_string(),
            cell(&self.u),
            cell(&self.v),
            cell(&self.q),
            self.value.clone(),
            coefficients.unwrap_or_default(),
        ]
    }
}

pub fn run(args: &PolyArgs, cfg: &RunConfig) -> CliResult<PolyRecord> {
    let (label, g) = cfg.graph()?;
    let point = || -> CliResult<_> {
        let u = args.u.as_deref().ok_or_else(|| CliError::usage("--u is required"))?;
        let v = args.v.as_deref().ok_or_else(|| CliError::usage("--v is required"))?;
        Ok((parse_exact(u)?, parse_exact(v)?))
    };
    let mut record =
        PolyRecord { graph: label, quantity: "", u: None, v: None, q: None, value: String::new(), coefficients: None };
    if args.whitney || args.tutte {
        let (u, v) = point()?;
        let (quantity, value) = if args.whitney {
            ("whitney", whitney_eval(&g, &u, &v, &cfg.limits)?)
        } else {
            ("tutte", tutte_eval(&g, &u, &v, &cfg.limits)?)
        };
        record.quantity = quantity;
        record.u = Some(u.to_string());
        record.v = Some(v.to_string());
        record.value = value.to_string();
    } else if args.flow {
        if cfg.q < 2 {
            return Err(CliError::usage("--q must be at least 2"));
        }
        let count = match args.method {
            FlowMethod::Dc => count_flows_dc(&g, cfg.q),
            FlowMethod::Enum => count_flows_enum(&g, cfg.q, &cfg.limits)?,
            FlowMethod::Whitney => count_flows_whitney(&g, cfg.q, &cfg.limits)?,
        };
        record.quantity = "flow";
        record.q = Some(cfg.q);
        record.value = count.to_string();
    } else {
        let poly = flow_polynomial(&g)?;
        record.quantity = "flowpoly";
        record.value = poly.to_string();
        record.coefficients = Some(
            poly.coefficients()
                .iter()
                .map(|c| i64::try_from(c).map_or_else(|_| Value::String(c.to_string()), Value::from))
                .collect(),
        );
    }
    Ok(record)
}
