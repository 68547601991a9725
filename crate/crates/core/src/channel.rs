//! Binary-input DMCs and degrading kernels.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::delta::{Atom, DeltaDistribution, DEFAULT_MERGE_TOL};
use crate::{Error, Result, PROB_TOL};

/// A B-DMC `W: {0, 1} -> Y` over a labeled finite output alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    labels: Vec<String>,
    row0: Vec<f64>,
    row1: Vec<f64>,
}

fn check_probability(what: &'static str, value: f64, max: f64) -> Result<()> {
    if (0.0..=max).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value,
            min: 0.0,
            max,
        })
    }
}

fn check_row(name: &str, row: &[f64], expected_len: usize) -> Result<()> {
    if row.len() != expected_len {
        return Err(Error::LengthMismatch {
            what: "probability row",
            expected: expected_len,
            found: row.len(),
        });
    }
    for (index, &value) in row.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeEntry {
                row: name.to_string(),
                index,
                value,
            });
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::RowNotStochastic {
            row: name.to_string(),
            sum,
        });
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateLabel(w[0].clone())),
        None => Ok(()),
    }
}

fn binary_labels() -> Vec<String> {
    vec!["0".to_string(), "1".to_string()]
}

impl Channel {
    /// Builds a channel from its two transition rows `W(y|0)` and `W(y|1)`.
    pub fn from_rows(labels: Vec<String>, row0: Vec<f64>, row1: Vec<f64>) -> Result<Self> {
        check_labels(&labels)?;
        check_row("row0", &row0, labels.len())?;
        check_row("row1", &row1, labels.len())?;
        Ok(Channel { labels, row0, row1 })
    }

    /// Rows are assumed stochastic up to rounding.
    pub(crate) fn from_rows_unchecked(labels: Vec<String>, row0: Vec<f64>, row1: Vec<f64>) -> Self {
        debug_assert!(labels.len() == row0.len() && labels.len() == row1.len());
        Channel { labels, row0, row1 }
    }

    /// Binary symmetric channel with crossover probability `eps ∈ [0, 1/2]`.
    pub fn bsc(eps: f64) -> Result<Self> {
        check_probability("BSC crossover", eps, 0.5)?;
        Ok(Channel::from_rows_unchecked(
            binary_labels(),
            vec![1.0 - eps, eps],
            vec![eps, 1.0 - eps],
        ))
    }

    /// Z-channel: input 0 is noiseless, input 1 flips to output 0 with
    /// probability `p`.
    pub fn z(p: f64) -> Result<Self> {
        check_probability("Z-channel crossover", p, 1.0)?;
        Ok(Channel::from_rows_unchecked(
            binary_labels(),
            vec![1.0, 0.0],
            vec![p, 1.0 - p],
        ))
    }

    /// Binary erasure channel with outputs `0`, `e`, `1`.
    pub fn bec(eps: f64) -> Result<Self> {
        check_probability("BEC erasure", eps, 1.0)?;
        Ok(Channel::from_rows_unchecked(
            vec!["0".to_string(), "e".to_string(), "1".to_string()],
            vec![1.0 - eps, eps, 0.0],
            vec![0.0, eps, 1.0 - eps],
        ))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn row0(&self) -> &[f64] {
        &self.row0
    }

    pub fn row1(&self) -> &[f64] {
        &self.row1
    }

    pub fn row(&self, input: usize) -> &[f64] {
        if input == 0 {
            &self.row0
        } else {
            &self.row1
        }
    }

    pub fn num_outputs(&self) -> usize {
        self.labels.len()
    }

    /// Uniform-input output law `q_W(y)`.
    pub fn output_law(&self) -> Vec<f64> {
        self.row0
            .iter()
            .zip(&self.row1)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    /// Law of `Δ_W(Y)` under `q_W`. Zero-probability outputs are dropped.
    pub fn delta_distribution(&self) -> DeltaDistribution {
        let atoms = self
            .row0
            .iter()
            .zip(&self.row1)
            .filter(|(a, b)| **a + **b > 0.0)
            .map(|(a, b)| Atom::new((a - b) / (a + b), 0.5 * (a + b)))
            .collect();
        DeltaDistribution::from_raw(atoms, DEFAULT_MERGE_TOL)
    }

    /// `W_s((y, z) | x) = W(y | x ⊕ z) / 2`, outputs labeled `y|z`.
    pub fn symmetrize(&self) -> Channel {
        let k = self.num_outputs();
        let mut labels = Vec::with_capacity(2 * k);
        let mut row0 = Vec::with_capacity(2 * k);
        let mut row1 = Vec::with_capacity(2 * k);
        for (y, label) in self.labels.iter().enumerate() {
            for z in 0..2 {
                labels.push(format!("{label}|{z}"));
                row0.push(0.5 * self.row(z)[y]);
                row1.push(0.5 * self.row(1 - z)[y]);
            }
        }
        Channel::from_rows_unchecked(labels, row0, row1)
    }

    /// Composes the channel with `kernel`: `V(y|x) = Σ_z W(z|x) P(y|z)`.
    pub fn degrade(&self, kernel: &Kernel) -> Result<Channel> {
        if kernel.input_labels != self.labels {
            return Err(Error::LabelMismatch);
        }
        let compose = |row: &[f64]| -> Vec<f64> {
            (0..kernel.output_labels.len())
                .map(|y| row.iter().zip(&kernel.rows).map(|(w, p)| w * p[y]).sum())
                .collect()
        };
        Ok(Channel::from_rows_unchecked(
            kernel.output_labels.clone(),
            compose(&self.row0),
            compose(&self.row1),
        ))
    }

    /// True when some output permutation `π` has `W(y|0) = W(π(y)|1)`
    /// for every `y`, entries compared within `1e-12`.
    pub fn is_symmetric(&self) -> bool {
        let mut pairs: Vec<(f64, f64)> = self
            .row0
            .iter()
            .copied()
            .zip(self.row1.iter().copied())
            .collect();
        let mut swapped: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let mut unmatched = vec![true; swapped.len()];
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        swapped.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let close = |a: (f64, f64), b: (f64, f64)| {
            (a.0 - b.0).abs() <= PROB_TOL && (a.1 - b.1).abs() <= PROB_TOL
        };
        pairs.iter().all(|&p| {
            match (0..swapped.len()).find(|&j| unmatched[j] && close(p, swapped[j])) {
                Some(j) => {
                    unmatched[j] = false;
                    true
                }
                None => false,
            }
        })
    }
}

/// A Markov kernel `P(y|z)` between two labeled alphabets.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    input_labels: Vec<String>,
    output_labels: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Kernel {
    pub fn new(
        input_labels: Vec<String>,
        output_labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_labels(&input_labels)?;
        check_labels(&output_labels)?;
        if rows.len() != input_labels.len() {
            return Err(Error::LengthMismatch {
                what: "kernel rows",
                expected: input_labels.len(),
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            check_row(&format!("kernel row {i}"), row, output_labels.len())?;
        }
        Ok(Kernel {
            input_labels,
            output_labels,
            rows,
        })
    }

    /// Solver witnesses: rows are stochastic up to the solver tolerance.
    pub(crate) fn from_parts_unchecked(
        input_labels: Vec<String>,
        output_labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Self {
        Kernel {
            input_labels,
            output_labels,
            rows,
        }
    }

    pub fn identity(labels: &[String]) -> Kernel {
        let rows = (0..labels.len())
            .map(|i| {
                (0..labels.len())
                    .map(|j| if i == j { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        Kernel::from_parts_unchecked(labels.to_vec(), labels.to_vec(), rows)
    }

    /// BSC-shaped kernel on the binary alphabet `{0, 1}`.
    pub fn binary_symmetric(eps: f64) -> Result<Kernel> {
        Kernel::binary(eps, eps)
    }

    /// Binary kernel with `P(1|0) = a` and `P(0|1) = b`.
    pub fn binary(a: f64, b: f64) -> Result<Kernel> {
        check_probability("kernel flip probability", a, 1.0)?;
        check_probability("kernel flip probability", b, 1.0)?;
        Ok(Kernel::from_parts_unchecked(
            binary_labels(),
            binary_labels(),
            vec![vec![1.0 - a, a], vec![b, 1.0 - b]],
        ))
    }

    pub fn input_labels(&self) -> &[String] {
        &self.input_labels
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, input: usize, output: usize) -> f64 {
        self.rows[input][output]
    }
}
