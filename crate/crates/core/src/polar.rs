//! Minus/plus polarization transforms on channels and on Δ-distributions.
//!
//! Channel level:
//!
//! ```text
//! W-(y1 y2 | u1)    = Σ_u2 W(y1 | u1 ⊕ u2) W(y2 | u2) / 2
//! W+(y1 y2 u1 | u2) =      W(y1 | u1 ⊕ u2) W(y2 | u2) / 2
//! ```
//!
//! Δ level, with `Y1, Y2` independent under `q_W`:
//!
//! ```text
//! Δ-  = Δ(Y1) Δ(Y2)
//! Δ+  = (Δ(Y1) + s Δ(Y2)) / (1 + s Δ(Y1) Δ(Y2)),  s = (-1)^u1,
//!       branch weight (1 + s Δ(Y1) Δ(Y2)) / 2
//! ```

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::delta::{Atom, DeltaDistribution, Functional, LogHistogram, DEFAULT_MERGE_TOL};
use crate::{Channel, Error, Result};

/// Default cap on the output alphabet of a channel-level transform.
pub const DEFAULT_OUTPUT_CAP: usize = 1_000_000;
/// Cap on the raw atom count of an exact Δ-level transform.
pub const EXACT_ATOM_CAP: usize = 1_000_000;
/// Default quantization budget for synthesis.
pub const DEFAULT_BUDGET: usize = 256;
/// Plus-transform branches whose probability factor is at most this are
/// skipped; this covers the `0/0` case `d1 d2 = ∓1`.
pub const BRANCH_EPS: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// A path in the polarization tree, leftmost sign applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignSequence(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row index in `1..=2^n`: `-` is bit 0, `+` is bit 1, read MSB first.
    pub fn index(&self) -> u64 {
        1 + self
            .0
            .iter()
            .fold(0u64, |acc, s| (acc << 1) | u64::from(*s == Sign::Plus))
    }

    /// Inverse of [`SignSequence::index`] for length `n`.
    ///
    /// # Panics
    ///
    /// Panics if `index` is 0.
    pub fn from_index(n: usize, index: u64) -> Self {
        let bits = index - 1;
        SignSequence(
            (0..n)
                .rev()
                .map(|i| {
                    if (bits >> i) & 1 == 1 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect(),
        )
    }

    /// All `2^n` sequences in index order.
    pub fn all(n: usize) -> impl Iterator<Item = SignSequence> {
        (1..=1u64 << n).map(move |i| SignSequence::from_index(n, i))
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::InvalidSign(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSequence)
    }
}

/// Support control during synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// No quantization; fails once a step would exceed [`EXACT_ATOM_CAP`].
    Exact,
    /// Quantize to at most this many atoms after every step.
    Atoms(usize),
}

impl Default for Budget {
    fn default() -> Self {
        Budget::Atoms(DEFAULT_BUDGET)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Exact => f.write_str("exact"),
            Budget::Atoms(m) => write!(f, "{m}"),
        }
    }
}

fn check_outputs(outputs: usize, cap: usize) -> Result<()> {
    if outputs > cap {
        Err(Error::OutputCapExceeded { outputs, cap })
    } else {
        Ok(())
    }
}

/// `W-` with outputs labeled `(y1,y2)`.
pub fn channel_minus(w: &Channel, cap: usize) -> Result<Channel> {
    let k = w.num_outputs();
    check_outputs(k.saturating_mul(k), cap)?;
    let mut labels = Vec::with_capacity(k * k);
    let mut rows = [Vec::with_capacity(k * k), Vec::with_capacity(k * k)];
    for y1 in 0..k {
        for y2 in 0..k {
            labels.push(format!("({},{})", w.labels()[y1], w.labels()[y2]));
            for (u1, row) in rows.iter_mut().enumerate() {
                let p: f64 = (0..2)
                    .map(|u2| 0.5 * w.row(u1 ^ u2)[y1] * w.row(u2)[y2])
                    .sum();
                row.push(p);
            }
        }
    }
    let [row0, row1] = rows;
    Ok(Channel::from_rows_unchecked(labels, row0, row1))
}

/// `W+` with outputs labeled `(y1,y2,u1)`.
pub fn channel_plus(w: &Channel, cap: usize) -> Result<Channel> {
    let k = w.num_outputs();
    check_outputs(k.saturating_mul(k).saturating_mul(2), cap)?;
    let mut labels: Vec<String> = Vec::with_capacity(2 * k * k);
    let mut rows = [Vec::with_capacity(2 * k * k), Vec::with_capacity(2 * k * k)];
    for y1 in 0..k {
        for y2 in 0..k {
            for u1 in 0..2 {
                labels.push(format!("({},{},{u1})", w.labels()[y1], w.labels()[y2]));
                for (u2, row) in rows.iter_mut().enumerate() {
                    row.push(0.5 * w.row(u1 ^ u2)[y1] * w.row(u2)[y2]);
                }
            }
        }
    }
    let [row0, row1] = rows;
    Ok(Channel::from_rows_unchecked(labels, row0, row1))
}

/// Feeds every `(value, weight)` atom of `Δ-` to `emit`, pairing `(i, j)`
/// and `(j, i)` since the product is symmetric.
fn emit_minus(d: &DeltaDistribution, mut emit: impl FnMut(f64, f64)) {
    let atoms = d.atoms();
    for (i, a) in atoms.iter().enumerate() {
        emit(a.value * a.value, a.weight * a.weight);
        for b in &atoms[i + 1..] {
            emit(a.value * b.value, 2.0 * a.weight * b.weight);
        }
    }
}

/// Feeds every atom of `Δ+` to `emit`. The `u1 = 0` branch is symmetric in
/// `(i, j)`; the `u1 = 1` branch maps `(j, i)` to minus the value of `(i, j)`.
fn emit_plus(d: &DeltaDistribution, mut emit: impl FnMut(f64, f64)) {
    let atoms = d.atoms();
    let branch = |a: &Atom, b: &Atom, s: f64| {
        let prod = s * a.value * b.value;
        let factor = 0.5 * (1.0 + prod);
        (factor > BRANCH_EPS).then(|| ((a.value + s * b.value) / (1.0 + prod), factor))
    };
    for (i, a) in atoms.iter().enumerate() {
        let diag = a.weight * a.weight;
        if let Some((v, f)) = branch(a, a, 1.0) {
            emit(v, diag * f);
        }
        if let Some((_, f)) = branch(a, a, -1.0) {
            emit(0.0, diag * f);
        }
        for b in &atoms[i + 1..] {
            let pair = a.weight * b.weight;
            if let Some((v, f)) = branch(a, b, 1.0) {
                emit(v, 2.0 * pair * f);
            }
            if let Some((v, f)) = branch(a, b, -1.0) {
                emit(v, pair * f);
                emit(-v, pair * f);
            }
        }
    }
}

fn collect(d: &DeltaDistribution, sign: Sign) -> DeltaDistribution {
    let mut out = Vec::with_capacity(raw_atoms(d.len(), sign));
    let push = |v: f64, w: f64| out.push(Atom::new(v, w));
    match sign {
        Sign::Minus => emit_minus(d, push),
        Sign::Plus => emit_plus(d, push),
    }
    DeltaDistribution::from_raw(out, DEFAULT_MERGE_TOL)
}

/// Law of `Δ-`.
pub fn minus_transform(d: &DeltaDistribution) -> DeltaDistribution {
    collect(d, Sign::Minus)
}

/// Law of `Δ+`.
pub fn plus_transform(d: &DeltaDistribution) -> DeltaDistribution {
    collect(d, Sign::Plus)
}

pub fn transform(d: &DeltaDistribution, sign: Sign) -> DeltaDistribution {
    match sign {
        Sign::Minus => minus_transform(d),
        Sign::Plus => plus_transform(d),
    }
}

fn raw_atoms(len: usize, sign: Sign) -> usize {
    let pairs = len.saturating_mul(len);
    match sign {
        Sign::Minus => pairs,
        Sign::Plus => pairs.saturating_mul(2),
    }
}

/// Budgeted steps whose raw output exceeds this multiple of the budget are
/// pre-binned on a log-scale histogram instead of sorted.
const HISTOGRAM_FACTOR: usize = 16;

/// One synthesis step under `budget`.
pub fn step(d: &DeltaDistribution, sign: Sign, budget: Budget) -> Result<DeltaDistribution> {
    match budget {
        Budget::Exact => {
            let atoms = raw_atoms(d.len(), sign);
            if atoms > EXACT_ATOM_CAP {
                return Err(Error::AtomCapExceeded {
                    atoms,
                    cap: EXACT_ATOM_CAP,
                });
            }
            Ok(transform(d, sign))
        }
        Budget::Atoms(m) => {
            if m == 0 {
                return Err(Error::ZeroBudget);
            }
            if raw_atoms(d.len(), sign) <= HISTOGRAM_FACTOR.saturating_mul(m) {
                return transform(d, sign).quantize(m);
            }
            let mut hist = LogHistogram::for_budget(m);
            match sign {
                Sign::Minus => emit_minus(d, |v, w| hist.add(v, w)),
                Sign::Plus => emit_plus(d, |v, w| hist.add(v, w)),
            }
            Ok(DeltaDistribution::from_histogram(hist, m))
        }
    }
}

/// Law of `Δ_{W^s}` given the law of `Δ_W`.
pub fn synthesize(
    d: &DeltaDistribution,
    s: &SignSequence,
    budget: Budget,
) -> Result<DeltaDistribution> {
    s.signs()
        .iter()
        .try_fold(d.clone(), |acc, &sign| step(&acc, sign, budget))
}

/// `f+(d1, d2)` for the symmetric extension `f(x) = φ(|x|)`:
///
/// ```text
/// (1 + d1 d2)/2 · f((d1 + d2)/(1 + d1 d2)) + (1 - d1 d2)/2 · f((d1 - d2)/(1 - d1 d2))
/// ```
///
/// A term whose prefactor vanishes contributes 0.
pub fn f_plus_compose(phi: &Functional, d1: f64, d2: f64) -> f64 {
    f_plus_compose_with(|x| phi.eval_symmetric(x), d1, d2)
}

pub fn f_plus_compose_with(f: impl Fn(f64) -> f64, d1: f64, d2: f64) -> f64 {
    let prod = d1 * d2;
    [1.0, -1.0]
        .iter()
        .map(|&s| {
            let factor = 0.5 * (1.0 + s * prod);
            if factor <= BRANCH_EPS {
                0.0
            } else {
                factor * f(((d1 + s * d2) / (1.0 + s * prod)).clamp(-1.0, 1.0))
            }
        })
        .sum()
}
