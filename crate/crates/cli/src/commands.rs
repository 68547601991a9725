//! Validated run configurations and the work each subcommand does.
//!
//! Every `*Config::validate` reads and checks all inputs; `run` then only
//! computes, so a bad invocation never produces partial output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use polar_order_core::infoset::{InfoSet, SynthesisTree, MAX_DEPTH};
use polar_order_core::ordering::{
    self, blackwell_check, cut_criterion, cx_check_tol, degradation_check, icx_check_tol,
    z_bsc_thresholds, EXACT_TOL,
};
use polar_order_core::polar::synthesize;
use polar_order_core::{
    Budget, Channel, DeltaDistribution, Functional, Method, OrderingVerdict, SignSequence,
};

use crate::format::{self, CliError};

/// What a subcommand prints and how it exits.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn budget_from_flags(budget: Option<usize>, exact: bool) -> Result<Budget, CliError> {
    match (budget, exact) {
        (Some(_), true) => Err(CliError::Usage("--budget and --exact are exclusive".into())),
        (Some(0), false) => Err(CliError::Usage("--budget must be at least 1".into())),
        (Some(m), false) => Ok(Budget::Atoms(m)),
        (None, true) => Ok(Budget::Exact),
        (None, false) => Ok(Budget::default()),
    }
}

pub fn tol_from_flag(tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        None => Ok(EXACT_TOL),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Some(t) => Err(CliError::Usage(format!(
            "--tol must be a nonnegative number, got {t}"
        ))),
    }
}

fn root_distribution(w: &Channel, budget: Budget) -> Result<DeltaDistribution, CliError> {
    let d = w.delta_distribution();
    Ok(match budget {
        Budget::Atoms(m) => d.quantize(m)?,
        Budget::Exact => d,
    })
}

pub struct SynthConfig {
    pub channel: Channel,
    pub sequence: SignSequence,
    pub budget: Budget,
    pub output: Option<PathBuf>,
}

impl SynthConfig {
    pub fn validate(
        channel: &Path,
        sequence: &str,
        budget: Budget,
        output: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let sequence = sequence.parse()?;
        Ok(SynthConfig {
            channel: format::read_channel(channel)?,
            sequence,
            budget,
            output,
        })
    }

    pub fn run(&self) -> Result<Output, CliError> {
        let root = root_distribution(&self.channel, self.budget)?;
        let d = synthesize(&root, &self.sequence, self.budget)?;
        let mut stderr = String::new();
        let s = if self.sequence.is_empty() {
            "(empty)".to_string()
        } else {
            self.sequence.to_string()
        };
        let mut line = |key: &str, value: String| writeln!(stderr, "{key:<30} {value}").unwrap();
        line("sequence", s);
        line("budget", self.budget.to_string());
        line("atoms", d.len().to_string());
        line("bhattacharyya", d.bhattacharyya().mean().to_string());
        for phi in Functional::builtins() {
            line(&format!("E[{phi}]"), d.expectation(&phi).to_string());
        }
        let stdout =
            format::emit(self.output.as_deref(), format::delta_csv(&d))?.unwrap_or_default();
        Ok(Output {
            stdout,
            stderr,
            code: 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OrderMethod {
    Icx,
    Cx,
    Cut,
    Degradation,
    Blackwell,
    Symmetric,
}

pub struct OrderConfig {
    pub lhs: Channel,
    pub rhs: Channel,
    pub method: OrderMethod,
    /// Compare `|Δ|` instead of `Δ` for icx, cx, cut and blackwell.
    pub abs: bool,
    pub tol: f64,
}

impl OrderConfig {
    pub fn validate(
        lhs: &Path,
        rhs: &Path,
        method: OrderMethod,
        abs: bool,
        tol: f64,
    ) -> Result<Self, CliError> {
        if abs && matches!(method, OrderMethod::Degradation | OrderMethod::Symmetric) {
            return Err(CliError::Usage(
                "--abs only applies to icx, cx, cut and blackwell".into(),
            ));
        }
        Ok(OrderConfig {
            lhs: format::read_channel(lhs)?,
            rhs: format::read_channel(rhs)?,
            method,
            abs,
            tol,
        })
    }

    /// Is the left channel below the right one in the chosen order?
    pub fn verdict(&self) -> Result<OrderingVerdict, CliError> {
        let laws = || {
            let (x, y) = (self.lhs.delta_distribution(), self.rhs.delta_distribution());
            if self.abs {
                (x.abs(), y.abs())
            } else {
                (x, y)
            }
        };
        Ok(match self.method {
            OrderMethod::Icx => {
                let (x, y) = laws();
                icx_check_tol(&x, &y, self.tol)
            }
            OrderMethod::Cx => {
                let (x, y) = laws();
                cx_check_tol(&x, &y, self.tol)
            }
            OrderMethod::Cut => {
                let (x, y) = laws();
                cut_criterion(&x, &y)
            }
            OrderMethod::Blackwell => {
                let (x, y) = laws();
                blackwell_check(&x, &y)?
            }
            OrderMethod::Degradation => degradation_check(&self.rhs, &self.lhs)?,
            OrderMethod::Symmetric => {
                let x = self.lhs.delta_distribution().abs();
                let y = self.rhs.delta_distribution().abs();
                let v = icx_check_tol(&x, &y, self.tol);
                OrderingVerdict {
                    method: Method::SymmetricConvex,
                    ..v
                }
            }
        })
    }

    pub fn run(&self) -> Result<Output, CliError> {
        let v = self.verdict()?;
        Ok(Output {
            stdout: format::pretty(&format::verdict_json(&v)),
            stderr: String::new(),
            code: if v.holds { 0 } else { 1 },
        })
    }
}

pub struct InfoSetConfig {
    pub channel: Channel,
    pub n: usize,
    pub phi: Functional,
    pub eps: f64,
    pub budget: Budget,
    pub output: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

impl InfoSetConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn validate(
        channel: &Path,
        n: usize,
        phi: &str,
        eps: f64,
        budget: Budget,
        output: Option<PathBuf>,
        summary: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        if n > MAX_DEPTH {
            return Err(CliError::Usage(format!(
                "--n must be at most {MAX_DEPTH}, got {n}"
            )));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(CliError::Usage(format!(
                "--eps must lie in (0, 1), got {eps}"
            )));
        }
        let phi = phi.parse()?;
        Ok(InfoSetConfig {
            channel: format::read_channel(channel)?,
            n,
            phi,
            eps,
            budget,
            output,
            summary,
        })
    }

    pub fn build(&self) -> Result<InfoSet, CliError> {
        let root = root_distribution(&self.channel, self.budget)?;
        let tree = SynthesisTree::build(&root, self.n, self.budget)?;
        Ok(InfoSet::from_tree(&tree, self.n, &self.phi, self.eps)?)
    }

    pub fn run(&self) -> Result<Output, CliError> {
        let set = self.build()?;
        let summary = format::pretty(&format::summary_json(&set));
        let stdout = format::emit(self.output.as_deref(), format::report_csv(&set))?;
        let stderr = format::emit(self.summary.as_deref(), summary)?;
        Ok(Output {
            stdout: stdout.unwrap_or_default(),
            stderr: stderr.unwrap_or_default(),
            code: 0,
        })
    }
}

pub struct ZBscConfig {
    pub p: f64,
    pub resolution: f64,
}

impl ZBscConfig {
    pub fn validate(p: f64, resolution: f64) -> Result<Self, CliError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(CliError::Usage(format!("--p must lie in (0, 1), got {p}")));
        }
        if !(resolution > 0.0 && resolution < 0.5) {
            return Err(CliError::Usage(format!(
                "--resolution must lie in (0, 0.5), got {resolution}"
            )));
        }
        Ok(ZBscConfig { p, resolution })
    }

    pub fn thresholds(&self) -> Result<ordering::ZBscThresholds, CliError> {
        Ok(z_bsc_thresholds(self.p, self.resolution)?)
    }

    pub fn run(&self) -> Result<Output, CliError> {
        let t = self.thresholds()?;
        let mut out = String::new();
        writeln!(
            out,
            "Z({}) against BSC(eps), bisection resolution {}",
            t.p, self.resolution
        )
        .unwrap();
        writeln!(
            out,
            "{:<18} {:>20} {:>20}",
            "route", "closed form", "bisection"
        )
        .unwrap();
        let deg = t.degradation_closed_form();
        let sym = t.symmetric_convex_closed_form();
        writeln!(
            out,
            "{:<18} {:>20.12} {:>20.12}",
            "degradation", deg, t.degradation
        )
        .unwrap();
        writeln!(
            out,
            "{:<18} {:>20.12} {:>20.12}",
            "symmetric convex", sym, t.symmetric_convex
        )
        .unwrap();
        writeln!(
            out,
            "{:<18} {:>20.12} {:>20.12}",
            "symmetrization", sym, t.symmetrization
        )
        .unwrap();
        writeln!(out, "p/2 < p/(1+p): {}", sym < deg).unwrap();
        Ok(Output {
            stdout: out,
            stderr: String::new(),
            code: 0,
        })
    }
}
