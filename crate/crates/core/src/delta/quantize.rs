use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::Atom;

const NONE: u32 = u32::MAX;

/// Doubly linked list of clusters, stored column-wise.
struct Clusters {
    weight: Vec<f64>,
    moment: Vec<f64>,
    prev: Vec<u32>,
    next: Vec<u32>,
}

impl Clusters {
    fn mean(&self, i: usize) -> f64 {
        self.moment[i] / self.weight[i]
    }

    /// Increase of `E[(X - Q(X))^2]` when `left` and its successor share
    /// one point. Costs are nonnegative, so their bit patterns sort like
    /// the values.
    fn cost_key(&self, left: usize) -> u64 {
        let right = self.next[left] as usize;
        let (wa, wb) = (self.weight[left], self.weight[right]);
        let d = self.mean(left) - self.mean(right);
        (wa * wb / (wa + wb) * d * d).to_bits()
    }
}

/// Clusters left after the batched phase, as a multiple of the budget.
const BATCH_FACTOR: usize = 4;

/// Reduces sorted atoms to `max_atoms` by merging adjacent atoms at their
/// conditional mean, cheapest squared-error increase first.
///
/// Large inputs first go through batched rounds: each round takes the
/// cheapest non-overlapping adjacent pairs (at most half the excess) and
/// merges them in one linear pass. Once `BATCH_FACTOR * max_atoms` clusters
/// remain, the exact one-at-a-time greedy finishes.
pub(super) fn reduce(atoms: &[Atom], max_atoms: usize) -> Vec<Atom> {
    let target = max_atoms.saturating_mul(BATCH_FACTOR);
    if atoms.len() <= target {
        return greedy_merge(atoms, max_atoms);
    }
    let mut weight: Vec<f64> = atoms.iter().map(|a| a.weight).collect();
    let mut moment: Vec<f64> = atoms.iter().map(|a| a.weight * a.value).collect();
    let mut mean: Vec<f64> = atoms.iter().map(|a| a.value).collect();
    let mut costs: Vec<u64> = Vec::new();
    let mut scratch: Vec<u64> = Vec::new();
    while weight.len() > target {
        let n = weight.len();
        costs.clear();
        costs.extend((0..n - 1).map(|i| {
            let (wa, wb) = (weight[i], weight[i + 1]);
            let d = mean[i] - mean[i + 1];
            (wa * wb / (wa + wb) * d * d).to_bits()
        }));
        let quota = ((n - target) / 2).max(1);
        scratch.clear();
        scratch.extend_from_slice(&costs);
        let (_, &mut cutoff, _) = scratch.select_nth_unstable(quota - 1);

        let mut merged = 0;
        let mut out = 0;
        let mut i = 0;
        while i < n {
            if merged < quota && i + 1 < n && costs[i] <= cutoff {
                weight[out] = weight[i] + weight[i + 1];
                moment[out] = moment[i] + moment[i + 1];
                mean[out] = moment[out] / weight[out];
                merged += 1;
                i += 2;
            } else {
                weight[out] = weight[i];
                moment[out] = moment[i];
                mean[out] = mean[i];
                i += 1;
            }
            out += 1;
        }
        weight.truncate(out);
        moment.truncate(out);
        mean.truncate(out);
    }
    let coarse: Vec<Atom> = weight
        .iter()
        .zip(&moment)
        .map(|(&w, &m)| Atom::new(m / w, w))
        .collect();
    greedy_merge(&coarse, max_atoms)
}

/// Greedy adjacent merging down to `max_atoms` clusters. The heap pops the
/// cheapest merge first, ties going to the leftmost pair; entries whose
/// stored cost no longer matches the current pair are stale and skipped.
fn greedy_merge(atoms: &[Atom], max_atoms: usize) -> Vec<Atom> {
    let n = atoms.len();
    let mut c = Clusters {
        weight: atoms.iter().map(|a| a.weight).collect(),
        moment: atoms.iter().map(|a| a.weight * a.value).collect(),
        prev: (0..n as u32)
            .map(|i| if i == 0 { NONE } else { i - 1 })
            .collect(),
        next: (0..n as u32)
            .map(|i| if i as usize + 1 == n { NONE } else { i + 1 })
            .collect(),
    };
    let mut alive = alloc::vec![true; n];

    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = (0..n.saturating_sub(1))
        .map(|i| Reverse((c.cost_key(i), i as u32)))
        .collect();

    let mut remaining = n;
    while remaining > max_atoms {
        let Some(Reverse((key, l))) = heap.pop() else {
            break;
        };
        let l = l as usize;
        if !alive[l] || c.next[l] == NONE || c.cost_key(l) != key {
            continue;
        }
        let r = c.next[l] as usize;
        c.weight[l] += c.weight[r];
        c.moment[l] += c.moment[r];
        c.next[l] = c.next[r];
        alive[r] = false;
        if c.next[l] != NONE {
            c.prev[c.next[l] as usize] = l as u32;
            heap.push(Reverse((c.cost_key(l), l as u32)));
        }
        let p = c.prev[l];
        if p != NONE {
            heap.push(Reverse((c.cost_key(p as usize), p)));
        }
        remaining -= 1;
    }

    let mut out = Vec::with_capacity(remaining);
    let mut i = 0u32;
    while i != NONE {
        let k = i as usize;
        out.push(Atom::new(c.mean(k).clamp(-1.0, 1.0), c.weight[k]));
        i = c.next[k];
    }
    out
}

/// Fixed histogram over `[-1, 1]` whose bins are log-spaced in the distance
/// to the nearest of `0` and `±1`. Each bin keeps weight and first moment,
/// so it holds its atoms at their conditional mean.
pub(crate) struct LogHistogram {
    mant_bits: u32,
    /// Bins per half line, `2L + 2` for `L` bins per quarter.
    half: usize,
    weight: Vec<f64>,
    moment: Vec<f64>,
}

const OCTAVES: i64 = 96;

impl LogHistogram {
    /// Resolution grows with the budget: about `M / 2` bins per octave.
    pub(crate) fn for_budget(max_atoms: usize) -> Self {
        let log2 = usize::BITS - max_atoms.max(2).saturating_sub(1).leading_zeros();
        let mant_bits = log2.saturating_sub(1).clamp(4, 16);
        let quarter = ((OCTAVES as usize) << mant_bits) + 1;
        let half = 2 * quarter + 2;
        LogHistogram {
            mant_bits,
            half,
            weight: alloc::vec![0.0; 2 * half],
            moment: alloc::vec![0.0; 2 * half],
        }
    }

    /// Monotone bin of `u ∈ [0, 1/2]`, 0 for anything below `2^-OCTAVES`.
    fn small_bin(&self, u: f64) -> usize {
        let bits = u.to_bits() & !(1 << 63);
        let exp = (bits >> 52) as i64 - 1023;
        if exp < -OCTAVES {
            return 0;
        }
        let mant = (bits >> (52 - self.mant_bits)) & ((1 << self.mant_bits) - 1);
        ((((exp + OCTAVES) as u64) << self.mant_bits) | mant) as usize + 1
    }

    /// Monotone bin of `a ∈ [0, 1]`.
    fn abs_bin(&self, a: f64) -> usize {
        let quarter = (self.half - 2) / 2;
        if a <= 0.5 {
            self.small_bin(a)
        } else {
            2 * quarter + 1 - self.small_bin(1.0 - a)
        }
    }

    fn bin(&self, v: f64) -> usize {
        if v >= 0.0 {
            self.half + self.abs_bin(v.min(1.0))
        } else {
            self.half - 1 - self.abs_bin((-v).min(1.0))
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, value: f64, weight: f64) {
        let b = self.bin(value);
        self.weight[b] += weight;
        self.moment[b] += weight * value;
    }

    /// Nonempty bins in increasing order of value.
    pub(crate) fn into_atoms(self) -> Vec<Atom> {
        self.weight
            .iter()
            .zip(&self.moment)
            .filter(|(&w, _)| w > 0.0)
            .map(|(&w, &m)| Atom::new((m / w).clamp(-1.0, 1.0), w))
            .collect()
    }
}
