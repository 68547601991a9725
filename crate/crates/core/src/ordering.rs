//! Stochastic-order tests between Δ-distributions and between channels.
//!
//! For finitely supported laws the stop-loss transform `t ↦ E[(X - t)+]`
//! is piecewise linear with knots at the support points, so
//! `X ≼icx Y` is decided by comparing stop-loss values on the union of the
//! two supports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::delta::DeltaDistribution;
use crate::lp;
use crate::{Channel, Kernel, Result};

/// Slack for comparisons fed by exact constructions.
pub const EXACT_TOL: f64 = 1e-12;
/// Slack for comparisons after quantized synthesis.
pub const QUANTIZED_TOL: f64 = 1e-9;
/// Allowed mean mismatch in the convex order.
pub const MEAN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Icx,
    Dcv,
    Cx,
    SymmetricConvex,
    Cut,
    CutInconclusive,
    Degradation,
    Blackwell,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Icx => "icx",
            Method::Dcv => "dcv",
            Method::Cx => "cx",
            Method::SymmetricConvex => "symmetric",
            Method::Cut => "cut",
            Method::CutInconclusive => "cut-inconclusive",
            Method::Degradation => "degradation",
            Method::Blackwell => "blackwell",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    None,
    /// Cut point `δ` of a single-crossing CDF pattern.
    CutThreshold(f64),
    /// A point where `E[(X - t)+] > E[(Y - t)+]`.
    StopLoss {
        t: f64,
        lhs: f64,
        rhs: f64,
    },
    /// `P` with `V = W ∘ P`.
    DegradingKernel(Kernel),
    /// Mean-preserving `T` carrying the left law onto the right one.
    MeanPreservingKernel(Kernel),
}

/// Outcome of an order test together with a checkable witness.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingVerdict {
    pub holds: bool,
    pub method: Method,
    pub witness: Witness,
}

impl OrderingVerdict {
    fn new(holds: bool, method: Method, witness: Witness) -> Self {
        OrderingVerdict {
            holds,
            method,
            witness,
        }
    }
}

fn union_support(x: &DeltaDistribution, y: &DeltaDistribution) -> Vec<f64> {
    let mut knots: Vec<f64> = x.values().chain(y.values()).collect();
    knots.sort_unstable_by(f64::total_cmp);
    knots.dedup();
    knots
}

/// `min_t (E[(Y - t)+] - E[(X - t)+])` over the union of supports, with the
/// knot attaining it. Nonnegative exactly when `X ≼icx Y`.
pub fn stop_loss_slack(x: &DeltaDistribution, y: &DeltaDistribution) -> (f64, f64) {
    union_support(x, y)
        .into_iter()
        .map(|t| (y.stop_loss(t) - x.stop_loss(t), t))
        .fold((f64::INFINITY, 0.0), |best, cur| {
            if cur.0 < best.0 {
                cur
            } else {
                best
            }
        })
}

/// `X ≼icx Y` with the default slack of `1e-12`.
pub fn icx_check(x: &DeltaDistribution, y: &DeltaDistribution) -> OrderingVerdict {
    icx_check_tol(x, y, EXACT_TOL)
}

pub fn icx_check_tol(x: &DeltaDistribution, y: &DeltaDistribution, tol: f64) -> OrderingVerdict {
    let (slack, t) = stop_loss_slack(x, y);
    if slack >= -tol {
        OrderingVerdict::new(true, Method::Icx, Witness::None)
    } else {
        OrderingVerdict::new(
            false,
            Method::Icx,
            Witness::StopLoss {
                t,
                lhs: x.stop_loss(t),
                rhs: y.stop_loss(t),
            },
        )
    }
}

/// `X ≼dcv Y`, i.e. `Y ≼icx X`. The witness refers to the swapped pair.
pub fn dcv_check(x: &DeltaDistribution, y: &DeltaDistribution) -> OrderingVerdict {
    let v = icx_check(y, x);
    OrderingVerdict::new(v.holds, Method::Dcv, v.witness)
}

/// `X ≼cx Y`: equal means and `X ≼icx Y`.
pub fn cx_check(x: &DeltaDistribution, y: &DeltaDistribution) -> OrderingVerdict {
    cx_check_tol(x, y, EXACT_TOL)
}

pub fn cx_check_tol(x: &DeltaDistribution, y: &DeltaDistribution, tol: f64) -> OrderingVerdict {
    let icx = icx_check_tol(x, y, tol);
    let means_equal = (x.mean() - y.mean()).abs() <= MEAN_TOL;
    OrderingVerdict::new(means_equal && icx.holds, Method::Cx, icx.witness)
}

/// `|Δ_V| ≼icx |Δ_W|`.
pub fn symmetric_convex_check(v: &Channel, w: &Channel) -> OrderingVerdict {
    let x = v.delta_distribution().abs();
    let y = w.delta_distribution().abs();
    let icx = icx_check(&x, &y);
    OrderingVerdict::new(icx.holds, Method::SymmetricConvex, icx.witness)
}

/// Karlin–Novikoff cut criterion, a sufficient condition for `X ≼icx Y`.
///
/// `F - G` is evaluated on each half-open interval between consecutive
/// points of the merged support; the sign pattern may change at most once,
/// from nonpositive to nonnegative, exact zeros ignored. More crossings
/// give an inconclusive verdict; callers then fall back to [`icx_check`].
pub fn cut_criterion(x: &DeltaDistribution, y: &DeltaDistribution) -> OrderingVerdict {
    if x.mean() > y.mean() + EXACT_TOL {
        return OrderingVerdict::new(false, Method::Cut, Witness::None);
    }
    let knots = union_support(x, y);
    let mut delta = None;
    for &t in &knots[..knots.len().saturating_sub(1)] {
        let diff = x.cdf_at(t) - y.cdf_at(t);
        if diff > EXACT_TOL {
            delta.get_or_insert(t);
        } else if diff < -EXACT_TOL && delta.is_some() {
            return OrderingVerdict::new(false, Method::CutInconclusive, Witness::None);
        }
    }
    let delta = delta.unwrap_or_else(|| knots.last().copied().unwrap_or(0.0));
    OrderingVerdict::new(true, Method::Cut, Witness::CutThreshold(delta))
}

/// Is `V` stochastically degraded with respect to `W`, i.e. is there a
/// kernel `P` with `V(y|x) = Σ_z W(z|x) P(y|z)`?
pub fn degradation_check(w: &Channel, v: &Channel) -> Result<OrderingVerdict> {
    let kw = w.num_outputs();
    let kv = v.num_outputs();
    let var = |z: usize, y: usize| z * kv + y;
    let nvars = kw * kv;
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(kw + 2 * kv);
    let mut b = Vec::with_capacity(kw + 2 * kv);
    for z in 0..kw {
        let mut row = alloc::vec![0.0; nvars];
        for y in 0..kv {
            row[var(z, y)] = 1.0;
        }
        a.push(row);
        b.push(1.0);
    }
    for x in 0..2 {
        for y in 0..kv {
            let mut row = alloc::vec![0.0; nvars];
            for z in 0..kw {
                row[var(z, y)] = w.row(x)[z];
            }
            a.push(row);
            b.push(v.row(x)[y]);
        }
    }
    let verdict = match lp::find_feasible(&a, &b)? {
        Some(p) => {
            let rows = (0..kw).map(|z| p[z * kv..(z + 1) * kv].to_vec()).collect();
            let kernel =
                Kernel::from_parts_unchecked(w.labels().to_vec(), v.labels().to_vec(), rows);
            OrderingVerdict::new(true, Method::Degradation, Witness::DegradingKernel(kernel))
        }
        None => OrderingVerdict::new(false, Method::Degradation, Witness::None),
    };
    Ok(verdict)
}

fn value_labels(d: &DeltaDistribution) -> Vec<String> {
    d.values().map(|v| format!("{v}")).collect()
}

/// Mean-preserving Markov kernel `T` from `supp X` to `supp Y` with
/// `Σ_y T(y|x) y = x` and `Σ_x P(X = x) T(y|x) = P(Y = y)`. Exists exactly
/// when `X ≼cx Y`.
pub fn find_mean_preserving_kernel(
    x: &DeltaDistribution,
    y: &DeltaDistribution,
) -> Result<Option<Kernel>> {
    let kx = x.len();
    let ky = y.len();
    let nvars = kx * ky;
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(2 * kx + ky);
    let mut b = Vec::with_capacity(2 * kx + ky);
    for (i, ax) in x.atoms().iter().enumerate() {
        let mut sum = alloc::vec![0.0; nvars];
        let mut mean = alloc::vec![0.0; nvars];
        for (j, ay) in y.atoms().iter().enumerate() {
            sum[i * ky + j] = 1.0;
            mean[i * ky + j] = ay.value;
        }
        a.push(sum);
        b.push(1.0);
        a.push(mean);
        b.push(ax.value);
    }
    for (j, ay) in y.atoms().iter().enumerate() {
        let mut row = alloc::vec![0.0; nvars];
        for (i, ax) in x.atoms().iter().enumerate() {
            row[i * ky + j] = ax.weight;
        }
        a.push(row);
        b.push(ay.weight);
    }
    Ok(lp::find_feasible(&a, &b)?.map(|t| {
        let rows = (0..kx).map(|i| t[i * ky..(i + 1) * ky].to_vec()).collect();
        Kernel::from_parts_unchecked(value_labels(x), value_labels(y), rows)
    }))
}

/// Convex order decided through the Blackwell kernel.
pub fn blackwell_check(x: &DeltaDistribution, y: &DeltaDistribution) -> Result<OrderingVerdict> {
    Ok(match find_mean_preserving_kernel(x, y)? {
        Some(k) => OrderingVerdict::new(true, Method::Blackwell, Witness::MeanPreservingKernel(k)),
        None => OrderingVerdict::new(false, Method::Blackwell, Witness::None),
    })
}

/// Erasure probability of the BEC with the same variational distance,
/// `ε = 1 - E|Δ_W|`; then `|Δ_W| ≼icx |Δ_BEC(ε)|`.
pub fn dominating_bec_variational(w: &Channel) -> f64 {
    (1.0 - w.delta_distribution().abs().mean()).clamp(0.0, 1.0)
}

/// Erasure probability of the BEC with the same Bhattacharyya parameter,
/// `ε = B(W)`; then `B_W ≼icx B_BEC(ε)`.
pub fn dominating_bec_bhattacharyya(w: &Channel) -> f64 {
    w.delta_distribution()
        .bhattacharyya()
        .mean()
        .clamp(0.0, 1.0)
}

/// Smallest BSC crossover in `[0, 1/2]` accepted by a monotone predicate,
/// located by bisection to within `tol`.
pub fn min_bsc_crossover(
    mut accepts: impl FnMut(&Channel) -> Result<bool>,
    tol: f64,
) -> Result<f64> {
    let mut lo = 0.0;
    let mut hi = 0.5;
    if accepts(&Channel::bsc(lo)?)? {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if accepts(&Channel::bsc(mid)?)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Best BSC approximations of a Z-channel under the three orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZBscThresholds {
    pub p: f64,
    /// Bisection on `degradation_check(Z(p), BSC(ε))`.
    pub degradation: f64,
    /// Bisection on `symmetric_convex_check(BSC(ε), Z(p))`.
    pub symmetric_convex: f64,
    /// Bisection on `degradation_check(symmetrize(Z(p)), BSC(ε))`.
    pub symmetrization: f64,
}

impl ZBscThresholds {
    /// `p / (1 + p)`.
    pub fn degradation_closed_form(&self) -> f64 {
        self.p / (1.0 + self.p)
    }

    /// `p / 2`.
    pub fn symmetric_convex_closed_form(&self) -> f64 {
        self.p / 2.0
    }
}

pub fn z_bsc_thresholds(p: f64, tol: f64) -> Result<ZBscThresholds> {
    let z = Channel::z(p)?;
    let zs = z.symmetrize();
    let degradation = min_bsc_crossover(|v| Ok(degradation_check(&z, v)?.holds), tol)?;
    let symmetric_convex = min_bsc_crossover(|v| Ok(symmetric_convex_check(v, &z).holds), tol)?;
    let symmetrization = min_bsc_crossover(|v| Ok(degradation_check(&zs, v)?.holds), tol)?;
    Ok(ZBscThresholds {
        p,
        degradation,
        symmetric_convex,
        symmetrization,
    })
}
