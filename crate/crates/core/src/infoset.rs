//! Information sets `A_N^{φ,ε}(W) = { s : E[φ(|Δ_{W^s}|)] >= 1 - ε }`.

use alloc::vec::Vec;

use crate::delta::{DeltaDistribution, Functional};
use crate::polar::{self, Budget, Sign, SignSequence};
use crate::{Channel, Error, Result};

/// Largest supported depth.
pub const MAX_DEPTH: usize = 20;
/// Absolute slack on the membership threshold, absorbing rounding when a
/// report value sits exactly on `1 - ε`.
pub const MEMBERSHIP_SLACK: f64 = 1e-12;

/// Δ-distributions of every `W^s` with `|s| <= depth`, each node computed
/// once from its parent.
#[derive(Debug, Clone)]
pub struct SynthesisTree {
    budget: Budget,
    /// `levels[l][i]` is the law for the length-`l` sequence of index `i + 1`.
    levels: Vec<Vec<DeltaDistribution>>,
}

fn children(d: &DeltaDistribution, budget: Budget) -> Result<[DeltaDistribution; 2]> {
    Ok([
        polar::step(d, Sign::Minus, budget)?,
        polar::step(d, Sign::Plus, budget)?,
    ])
}

#[cfg(feature = "parallel")]
fn next_level(level: &[DeltaDistribution], budget: Budget) -> Result<Vec<DeltaDistribution>> {
    use rayon::prelude::*;
    let pairs: Vec<[DeltaDistribution; 2]> = level
        .par_iter()
        .map(|d| children(d, budget))
        .collect::<Result<_>>()?;
    Ok(pairs.into_iter().flatten().collect())
}

#[cfg(not(feature = "parallel"))]
fn next_level(level: &[DeltaDistribution], budget: Budget) -> Result<Vec<DeltaDistribution>> {
    let mut out = Vec::with_capacity(2 * level.len());
    for d in level {
        out.extend(children(d, budget)?);
    }
    Ok(out)
}

impl SynthesisTree {
    pub fn build(root: &DeltaDistribution, depth: usize, budget: Budget) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::DepthTooLarge {
                n: depth,
                max: MAX_DEPTH,
            });
        }
        let root = match budget {
            Budget::Exact => root.clone(),
            Budget::Atoms(m) => root.quantize(m)?,
        };
        let mut levels = alloc::vec![alloc::vec![root]];
        for _ in 0..depth {
            let next = next_level(levels.last().expect("root level"), budget)?;
            levels.push(next);
        }
        Ok(SynthesisTree { budget, levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// All `2^n` laws at depth `n`, in index order.
    pub fn level(&self, n: usize) -> &[DeltaDistribution] {
        &self.levels[n]
    }

    pub fn get(&self, s: &SignSequence) -> &DeltaDistribution {
        &self.levels[s.len()][(s.index() - 1) as usize]
    }
}

/// A thresholded report of `E[φ(|Δ_{W^s}|)]` over all `s` of length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoSet {
    n: usize,
    phi: Functional,
    eps: f64,
    budget: Budget,
    /// Indexed by `index(s) - 1`.
    report: Vec<f64>,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "information-set epsilon",
            value: eps,
            min: 0.0,
            max: 1.0,
        })
    }
}

/// Builds `A_N^{φ,ε}(W)` for `N = 2^n`.
pub fn build_info_set(
    w: &Channel,
    n: usize,
    phi: &Functional,
    eps: f64,
    budget: Budget,
) -> Result<InfoSet> {
    check_eps(eps)?;
    let tree = SynthesisTree::build(&w.delta_distribution(), n, budget)?;
    InfoSet::from_tree(&tree, n, phi, eps)
}

impl InfoSet {
    pub fn from_tree(tree: &SynthesisTree, n: usize, phi: &Functional, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        if n > tree.depth() {
            return Err(Error::DepthTooLarge {
                n,
                max: tree.depth(),
            });
        }
        let report = tree
            .level(n)
            .iter()
            .map(|d| d.expectation(phi).clamp(0.0, 1.0))
            .collect();
        Ok(InfoSet {
            n,
            phi: phi.clone(),
            eps,
            budget: tree.budget(),
            report,
        })
    }

    /// Same report, new threshold.
    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(InfoSet {
            eps,
            ..self.clone()
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &Functional {
        &self.phi
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn threshold(&self) -> f64 {
        1.0 - self.eps
    }

    pub fn value(&self, s: &SignSequence) -> f64 {
        self.report[(s.index() - 1) as usize]
    }

    fn passes(&self, value: f64) -> bool {
        value >= self.threshold() - MEMBERSHIP_SLACK
    }

    pub fn contains(&self, s: &SignSequence) -> bool {
        s.len() == self.n && self.passes(self.value(s))
    }

    /// `(sequence, value, member)` for every sequence, in index order.
    pub fn report(&self) -> impl Iterator<Item = (SignSequence, f64, bool)> + '_ {
        self.report.iter().enumerate().map(move |(i, &v)| {
            (
                SignSequence::from_index(self.n, i as u64 + 1),
                v,
                self.passes(v),
            )
        })
    }

    pub fn members(&self) -> impl Iterator<Item = SignSequence> + '_ {
        self.report().filter(|r| r.2).map(|r| r.0)
    }

    pub fn size(&self) -> usize {
        self.report.iter().filter(|&&v| self.passes(v)).count()
    }
}

/// A sequence in the left set but not in the right one.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub sequence: SignSequence,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Containment {
    pub contained: bool,
    pub violations: Vec<Violation>,
}

/// Checks `A ⊆ B`. Both sets must share `n`, `φ` and `ε`.
pub fn containment(a: &InfoSet, b: &InfoSet) -> Result<Containment> {
    if a.n != b.n {
        return Err(Error::InfoSetMismatch("n"));
    }
    if a.phi != b.phi {
        return Err(Error::InfoSetMismatch("phi"));
    }
    if a.eps != b.eps {
        return Err(Error::InfoSetMismatch("eps"));
    }
    let violations: Vec<Violation> = a
        .report()
        .zip(b.report())
        .filter(|((_, _, in_a), (_, _, in_b))| *in_a && !*in_b)
        .map(|((sequence, lhs, _), (_, rhs, _))| Violation { sequence, lhs, rhs })
        .collect();
    Ok(Containment {
        contained: violations.is_empty(),
        violations,
    })
}
