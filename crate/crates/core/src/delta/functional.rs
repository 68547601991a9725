use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// An increasing convex `φ` on `[0, 1]` with `φ(0) = 0` and `φ(1) = 1`.
///
/// `E[φ(|Δ_W|)]` is the channel parameter used to decide whether a
/// synthetic channel is good.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    /// `φ(x) = x`; the expectation is the variational distance.
    Variational,
    /// `φ(x) = 1 - sqrt(1 - x^2)`; the expectation is `1 - B(W)`.
    BhattacharyyaComplement,
    /// `φ(x) = 1 - h((1 + x) / 2)` in bits; the expectation is `I(W)`.
    Capacity,
    /// `φ(x) = x^k`, `k >= 1`.
    Power(f64),
    /// Linear interpolation between knots `(x, φ(x))`.
    PiecewiseLinear(Vec<(f64, f64)>),
}

const GRID_STEPS: usize = 1000;

impl Functional {
    pub fn power(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 1.0 {
            return Err(Error::InvalidFunctional(format!(
                "power exponent {k} must be finite and >= 1"
            )));
        }
        Ok(Functional::Power(k))
    }

    /// Builds a piecewise-linear functional, rejecting knot sets that are
    /// not convex and nondecreasing on a `1e-3` grid.
    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidFunctional(msg.to_string()));
        if knots.len() < 2 {
            return bad("piecewise_linear needs at least two knots");
        }
        if knots.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return bad("knots must be finite");
        }
        if knots[0] != (0.0, 0.0) || knots[knots.len() - 1] != (1.0, 1.0) {
            return bad("knots must start at (0, 0) and end at (1, 1)");
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return bad("knot abscissae must be strictly increasing");
        }
        let phi = Functional::PiecewiseLinear(knots);
        let grid: Vec<f64> = (0..=GRID_STEPS)
            .map(|i| phi.eval(i as f64 / GRID_STEPS as f64))
            .collect();
        if grid.windows(2).any(|w| w[1] < w[0] - 1e-12) {
            return bad("functional must be nondecreasing");
        }
        if grid.windows(3).any(|w| w[2] - 2.0 * w[1] + w[0] < -1e-12) {
            return bad("functional must be convex");
        }
        Ok(phi)
    }

    /// The three channel-parameter functionals.
    pub fn builtins() -> [Functional; 3] {
        [
            Functional::Variational,
            Functional::BhattacharyyaComplement,
            Functional::Capacity,
        ]
    }

    /// Evaluates `φ(x)`; `x` is clamped to `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        match self {
            Functional::Variational => x,
            Functional::BhattacharyyaComplement => 1.0 - super::one_minus_square_sqrt(x),
            Functional::Capacity => {
                // 1 - h((1+x)/2) = ((1+x) log2(1+x) + (1-x) log2(1-x)) / 2
                0.5 * (xlog2x(1.0 + x) + xlog2x(1.0 - x))
            }
            Functional::Power(k) => libm::pow(x, *k),
            Functional::PiecewiseLinear(knots) => {
                let i = knots.partition_point(|&(kx, _)| kx <= x);
                if i == 0 {
                    return knots[0].1;
                }
                if i == knots.len() {
                    return knots[knots.len() - 1].1;
                }
                let (x0, y0) = knots[i - 1];
                let (x1, y1) = knots[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Symmetric extension `f(d) = φ(|d|)` on `[-1, 1]`.
    pub fn eval_symmetric(&self, d: f64) -> f64 {
        self.eval(d.abs())
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * libm::log2(x)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Variational => f.write_str("variational"),
            Functional::BhattacharyyaComplement => f.write_str("bhattacharyya_complement"),
            Functional::Capacity => f.write_str("capacity"),
            Functional::Power(k) => write!(f, "power:{k}"),
            Functional::PiecewiseLinear(knots) => {
                f.write_str("piecewise_linear:")?;
                for (i, (x, y)) in knots.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}/{y}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Functional {
    type Err = Error;

    /// Accepts `variational`, `bhattacharyya_complement` (or `bhattacharyya`),
    /// `capacity`, `power:K` and `piecewise_linear:x/y,x/y,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidFunctional(format!("bad number {t:?}")))
        };
        match (name.trim(), arg) {
            ("variational", None) => Ok(Functional::Variational),
            ("bhattacharyya_complement" | "bhattacharyya", None) => {
                Ok(Functional::BhattacharyyaComplement)
            }
            ("capacity", None) => Ok(Functional::Capacity),
            ("power", Some(k)) => Functional::power(number(k)?),
            ("piecewise_linear", Some(list)) => {
                let knots = list
                    .split(',')
                    .map(|pair| {
                        let (x, y) = pair.split_once('/').ok_or_else(|| {
                            Error::InvalidFunctional(format!("knot {pair:?} is not x/y"))
                        })?;
                        Ok((number(x)?, number(y)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Functional::piecewise_linear(knots)
            }
            _ => Err(Error::InvalidFunctional(format!(
                "unknown functional {s:?}"
            ))),
        }
    }
}
