//! Discrete Δ-distributions and the functionals evaluated on them.

use alloc::vec::Vec;

use crate::{Error, Result, PROB_TOL};

mod functional;
mod quantize;

pub(crate) use quantize::LogHistogram;

pub use functional::Functional;

/// Tolerance used to merge atoms after every transform.
pub const DEFAULT_MERGE_TOL: f64 = 1e-12;

/// A support point of a [`DeltaDistribution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub weight: f64,
}

impl Atom {
    pub const fn new(value: f64, weight: f64) -> Self {
        Atom { value, weight }
    }
}

/// A finitely supported law on `[-1, 1]`, atoms sorted by strictly
/// increasing value, every weight positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaDistribution {
    atoms: Vec<Atom>,
}

impl DeltaDistribution {
    /// Validates and normalizes a list of atoms.
    ///
    /// Weights must be non-negative and sum to 1 within `1e-12`; values may
    /// overshoot `[-1, 1]` by at most `1e-12` and are clamped. Zero-weight
    /// atoms are dropped and exactly equal values are combined.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let mut sum = 0.0;
        for a in &atoms {
            if !a.value.is_finite() || a.value.abs() > 1.0 + PROB_TOL {
                return Err(Error::ValueOutOfRange { value: a.value });
            }
            if !a.weight.is_finite() || a.weight < 0.0 {
                return Err(Error::WeightsNotNormalized { sum: a.weight });
            }
            sum += a.weight;
        }
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::WeightsNotNormalized { sum });
        }
        Ok(Self::from_raw(atoms, 0.0))
    }

    pub fn point_mass(value: f64) -> Result<Self> {
        Self::new(alloc::vec![Atom::new(value, 1.0)])
    }

    /// Sorts, clamps and merges without checking normalization.
    pub(crate) fn from_raw(mut atoms: Vec<Atom>, tol: f64) -> Self {
        atoms.retain(|a| a.weight > 0.0);
        for a in &mut atoms {
            a.value = a.value.clamp(-1.0, 1.0);
        }
        atoms.sort_unstable_by(|a, b| a.value.total_cmp(&b.value));
        DeltaDistribution {
            atoms: merge_sorted(&atoms, tol),
        }
    }

    /// Budgeted reduction of a histogram's nonempty bins.
    pub(crate) fn from_histogram(hist: LogHistogram, max_atoms: usize) -> Self {
        let atoms = hist.into_atoms();
        let atoms = if atoms.len() > max_atoms {
            quantize::reduce(&atoms, max_atoms)
        } else {
            atoms
        };
        DeltaDistribution { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn mean(&self) -> f64 {
        self.expectation_with(|x| x)
    }

    /// `E[f(X)]` for an arbitrary `f`.
    pub fn expectation_with(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|a| a.weight * f(a.value)).sum()
    }

    /// `E[φ(|X|)]`.
    pub fn expectation(&self, phi: &Functional) -> f64 {
        self.expectation_with(|x| phi.eval(x.abs()))
    }

    /// Law of `|X|`; `±` pairs collapse onto one atom.
    pub fn abs(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.value.abs(), a.weight))
            .collect();
        Self::from_raw(atoms, DEFAULT_MERGE_TOL)
    }

    /// Combines atoms whose values are chained within `tol` of each other,
    /// placing each cluster at its weighted mean.
    pub fn merge(&self, tol: f64) -> Self {
        DeltaDistribution {
            atoms: merge_sorted(&self.atoms, tol.max(0.0)),
        }
    }

    /// Reduces the support to at most `max_atoms` points by adjacent merges
    /// at conditional means, cheapest increase in squared-error loss first.
    /// The mean is preserved and `E[f(X)]` can only drop for convex `f`.
    pub fn quantize(&self, max_atoms: usize) -> Result<Self> {
        if max_atoms == 0 {
            return Err(Error::ZeroBudget);
        }
        if self.atoms.len() <= max_atoms {
            return Ok(self.clone());
        }
        Ok(DeltaDistribution {
            atoms: quantize::reduce(&self.atoms, max_atoms),
        })
    }

    /// Law of `B = sqrt(1 - X^2)`; its mean is the Bhattacharyya parameter.
    pub fn bhattacharyya(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(one_minus_square_sqrt(a.value), a.weight))
            .collect();
        Self::from_raw(atoms, DEFAULT_MERGE_TOL)
    }

    /// Right-continuous CDF `P(X <= x)`.
    pub fn cdf_at(&self, x: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.value <= x)
            .map(|a| a.weight)
            .sum()
    }

    /// `E[max(X - t, 0)]`.
    pub fn stop_loss(&self, t: f64) -> f64 {
        self.atoms
            .iter()
            .rev()
            .take_while(|a| a.value > t)
            .map(|a| a.weight * (a.value - t))
            .sum()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.value)
    }
}

/// `sqrt(1 - x^2)` written as `sqrt((1 - x)(1 + x))`.
pub(crate) fn one_minus_square_sqrt(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    libm::sqrt((1.0 - x) * (1.0 + x))
}

fn merge_sorted(atoms: &[Atom], tol: f64) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    let mut i = 0;
    while i < atoms.len() {
        let mut weight = atoms[i].weight;
        let mut moment = atoms[i].weight * atoms[i].value;
        let mut j = i + 1;
        while j < atoms.len() && atoms[j].value - atoms[j - 1].value <= tol {
            weight += atoms[j].weight;
            moment += atoms[j].weight * atoms[j].value;
            j += 1;
        }
        let value = if j == i + 1 {
            atoms[i].value
        } else {
            (moment / weight).clamp(atoms[i].value, atoms[j - 1].value)
        };
        if weight > 0.0 {
            out.push(Atom::new(value, weight));
        }
        i = j;
    }
    out
}
