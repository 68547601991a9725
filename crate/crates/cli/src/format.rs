//! Channel JSON input, CSV and JSON output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use polar_order_core::infoset::InfoSet;
use polar_order_core::{Channel, DeltaDistribution, Kernel, OrderingVerdict, Witness};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    ChannelSpec { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] polar_order_core::Error),
}

pub fn read_channel(path: &Path) -> Result<Channel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })?;
    parse_channel(&value).map_err(|message| CliError::ChannelSpec {
        path: path.to_owned(),
        message,
    })
}

/// Accepts `{"outputs", "row0", "row1"}` or one of the shorthands
/// `{"bsc": ε}`, `{"bec": ε}`, `{"z": p}`.
pub fn parse_channel(value: &Value) -> Result<Channel, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| "channel spec must be a JSON object".to_string())?;
    let number = |key: &str| {
        obj[key]
            .as_f64()
            .ok_or_else(|| format!("\"{key}\" must be a number"))
    };
    if obj.len() == 1 {
        let built = if obj.contains_key("bsc") {
            Some(Channel::bsc(number("bsc")?))
        } else if obj.contains_key("bec") {
            Some(Channel::bec(number("bec")?))
        } else if obj.contains_key("z") {
            Some(Channel::z(number("z")?))
        } else {
            None
        };
        if let Some(c) = built {
            return c.map_err(|e| e.to_string());
        }
    }
    let field = |key: &str| {
        obj.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| format!("missing array \"{key}\""))
    };
    let outputs = field("outputs")?
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err("output labels must be strings".to_string()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let row = |key: &str| {
        field(key)?
            .iter()
            .map(|v| {
                v.as_f64()
                    .ok_or_else(|| format!("\"{key}\" entries must be numbers"))
            })
            .collect::<Result<Vec<_>, _>>()
    };
    Channel::from_rows(outputs, row("row0")?, row("row1")?).map_err(|e| e.to_string())
}

/// `value,weight` with 17 significant digits.
pub fn delta_csv(d: &DeltaDistribution) -> String {
    let mut out = String::from("value,weight\n");
    for a in d.atoms() {
        writeln!(out, "{:.16e},{:.16e}", a.value, a.weight).unwrap();
    }
    out
}

fn kernel_json(kind: &str, k: &Kernel) -> Value {
    json!({
        "kind": kind,
        "inputs": k.input_labels(),
        "outputs": k.output_labels(),
        "matrix": k.rows(),
    })
}

pub fn verdict_json(v: &OrderingVerdict) -> Value {
    let witness = match &v.witness {
        Witness::None => json!({ "kind": "none" }),
        Witness::CutThreshold(delta) => json!({ "kind": "cut_threshold", "delta": delta }),
        Witness::StopLoss { t, lhs, rhs } => {
            json!({ "kind": "stop_loss", "t": t, "lhs": lhs, "rhs": rhs })
        }
        Witness::DegradingKernel(k) => kernel_json("degrading_kernel", k),
        Witness::MeanPreservingKernel(k) => kernel_json("mean_preserving_kernel", k),
    };
    json!({
        "holds": v.holds,
        "method": v.method.name(),
        "witness": witness,
    })
}

/// `sequence,index,value,member`, one row per sign sequence in index order.
pub fn report_csv(set: &InfoSet) -> String {
    let mut out = String::from("sequence,index,value,member\n");
    for (s, value, member) in set.report() {
        writeln!(out, "{s},{},{value:.16e},{member}", s.index()).unwrap();
    }
    out
}

pub fn summary_json(set: &InfoSet) -> Value {
    let members: Vec<String> = set.members().map(|s| s.to_string()).collect();
    json!({
        "n": set.n(),
        "phi": set.phi().to_string(),
        "eps": set.eps(),
        "budget": set.budget().to_string(),
        "size": set.size(),
        "members": members,
    })
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes to `path`, or returns the text for stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: String) -> Result<Option<String>, CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map(|_| None)
            .map_err(|source| CliError::Write {
                path: p.to_owned(),
                source,
            }),
        None => Ok(Some(text)),
    }
}
