#![allow(dead_code)]

use polar_order_core::{Atom, Channel, DeltaDistribution, Kernel};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("y{i}")).collect()
}

/// Probability vector of length `k`; with probability 1/4 one entry is zeroed.
pub fn simplex(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
    if k > 1 && rng.gen_bool(0.25) {
        v[rng.gen_range(0..k)] = 0.0;
    }
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

pub fn channel(rng: &mut impl Rng, k: usize) -> Channel {
    loop {
        let row0 = simplex(rng, k);
        let row1 = simplex(rng, k);
        // avoid outputs with zero probability under both inputs
        if row0.iter().zip(&row1).all(|(a, b)| a + b > 0.0) {
            return Channel::from_rows(labels(k), row0, row1).unwrap();
        }
    }
}

/// Channel with between 2 and `max_k` outputs.
pub fn channel_upto(rng: &mut impl Rng, max_k: usize) -> Channel {
    let k = rng.gen_range(2..=max_k);
    channel(rng, k)
}

pub fn kernel(rng: &mut impl Rng, inputs: &[String], k: usize) -> Kernel {
    let rows = inputs.iter().map(|_| simplex(rng, k)).collect();
    Kernel::new(inputs.to_vec(), labels(k), rows).unwrap()
}

/// `(V, W)` with `V = W ∘ P`.
pub fn degraded_pair(rng: &mut impl Rng, max_k: usize) -> (Channel, Channel) {
    let w = channel_upto(rng, max_k);
    let k = rng.gen_range(2..=max_k);
    let p = kernel(rng, w.labels(), k);
    (w.degrade(&p).unwrap(), w)
}

/// Arbitrary law on `[lo, hi]` with at most `k` atoms.
pub fn dist(rng: &mut impl Rng, k: usize, lo: f64, hi: f64) -> DeltaDistribution {
    let w = simplex(rng, k);
    let atoms = w
        .into_iter()
        .map(|w| Atom::new(rng.gen_range(lo..=hi), w))
        .collect();
    DeltaDistribution::new(atoms).unwrap()
}

/// Splits every atom of `x` into two atoms inside `[-1, 1]` around it,
/// keeping its mean, so `x ≼cx` the result.
pub fn spread(rng: &mut impl Rng, x: &DeltaDistribution) -> DeltaDistribution {
    let mut atoms = Vec::new();
    for a in x.atoms() {
        let down = rng.gen_range(0.0..=1.0) * (a.value + 1.0);
        let up = rng.gen_range(0.0..=1.0) * (1.0 - a.value);
        if down + up == 0.0 {
            atoms.push(*a);
            continue;
        }
        atoms.push(Atom::new(a.value - down, a.weight * up / (down + up)));
        atoms.push(Atom::new(a.value + up, a.weight * down / (down + up)));
    }
    DeltaDistribution::new(atoms).unwrap()
}

/// Independent stop-loss oracle: `E[(X - t)+]` by direct summation.
pub fn stop_loss(x: &DeltaDistribution, t: f64) -> f64 {
    x.atoms()
        .iter()
        .map(|a| a.weight * (a.value - t).max(0.0))
        .sum()
}

/// Minimum of `E[(Y - t)+] - E[(X - t)+]` over both supports and a grid.
pub fn icx_slack_oracle(x: &DeltaDistribution, y: &DeltaDistribution) -> f64 {
    let grid = (0..=400).map(|i| -1.0 + i as f64 / 200.0);
    x.atoms()
        .iter()
        .chain(y.atoms())
        .map(|a| a.value)
        .chain(grid)
        .map(|t| stop_loss(y, t) - stop_loss(x, t))
        .fold(f64::INFINITY, f64::min)
}
