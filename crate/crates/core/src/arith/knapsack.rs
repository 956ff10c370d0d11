//! Exact-sum knapsack search over a multiset of positive integers.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnapsackMode {
    /// Each distinct value at most as often as it occurs in the input.
    Bounded,
    /// Each distinct value any number of times.
    Unbounded,
}

/// A solution as multiplicities aligned with `values`, the sorted distinct
/// input values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnapsackSolution {
    pub values: Vec<u64>,
    pub multiplicities: Vec<u64>,
}

impl KnapsackSolution {
    pub fn total(&self) -> u128 {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .map(|(&v, &m)| v as u128 * m as u128)
            .sum()
    }
}

/// Distinct values in increasing order with their multiplicities.
fn collect(values: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    counts.into_iter().unzip()
}

/// Every way of writing `target` as a sum of input values.
///
/// Solutions appear in the order of a depth-first search that picks values
/// smallest first, i.e. by decreasing lexicographic order of multiplicity
/// vectors. Zero values are ignored; `target = 0` has the single empty
/// solution.
pub fn knapsack(values: &[u64], target: u64, mode: KnapsackMode) -> Vec<KnapsackSolution> {
    let positive: Vec<u64> = values.iter().copied().filter(|&v| v > 0).collect();
    let (distinct, avail) = collect(&positive);
    let k = distinct.len();
    let mut suffix_sum = vec![0u128; k + 1];
    let mut suffix_gcd = vec![0u64; k + 1];
    for i in (0..k).rev() {
        suffix_sum[i] = suffix_sum[i + 1] + distinct[i] as u128 * avail[i] as u128;
        suffix_gcd[i] = suffix_gcd[i + 1].gcd(&distinct[i]);
    }
    let mut out = Vec::new();
    let mut counts = vec![0u64; k];
    let ctx = Search {
        distinct: &distinct,
        avail: &avail,
        mode,
        suffix_sum: &suffix_sum,
        suffix_gcd: &suffix_gcd,
    };
    ctx.run(0, target, &mut counts, &mut out);
    out
}

struct Search<'a> {
    distinct: &'a [u64],
    avail: &'a [u64],
    mode: KnapsackMode,
    suffix_sum: &'a [u128],
    suffix_gcd: &'a [u64],
}

impl Search<'_> {
    fn run(&self, i: usize, rest: u64, counts: &mut Vec<u64>, out: &mut Vec<KnapsackSolution>) {
        if rest == 0 {
            out.push(KnapsackSolution {
                values: self.distinct.to_vec(),
                multiplicities: counts.clone(),
            });
            return;
        }
        if i == self.distinct.len() {
            return;
        }
        let feasible = match self.mode {
            KnapsackMode::Bounded => rest as u128 <= self.suffix_sum[i],
            KnapsackMode::Unbounded => rest % self.suffix_gcd[i] == 0,
        };
        if !feasible {
            return;
        }
        let v = self.distinct[i];
        let mut max = rest / v;
        if self.mode == KnapsackMode::Bounded {
            max = max.min(self.avail[i]);
        }
        for c in (0..=max).rev() {
            counts[i] = c;
            self.run(i + 1, rest - c * v, counts, out);
        }
        counts[i] = 0;
    }
}

/// Whether `target` is a sum of input values, without listing solutions.
pub fn knapsack_exists(values: &[u128], target: u128, mode: KnapsackMode) -> bool {
    if target == 0 {
        return true;
    }
    let mut items: Vec<u128> = values.iter().copied().filter(|&v| v > 0 && v <= target).collect();
    items.sort_unstable();
    if items.is_empty() {
        return false;
    }
    match mode {
        KnapsackMode::Bounded => bounded_exists(&items, target),
        KnapsackMode::Unbounded => unbounded_exists(&items, target),
    }
}

fn bounded_exists(items: &[u128], target: u128) -> bool {
    // largest first, pruning on the remaining total
    let mut desc: Vec<u128> = items.to_vec();
    desc.reverse();
    let mut suffix = vec![0u128; desc.len() + 1];
    for i in (0..desc.len()).rev() {
        suffix[i] = suffix[i + 1] + desc[i];
    }
    fn go(desc: &[u128], suffix: &[u128], i: usize, rest: u128) -> bool {
        if rest == 0 {
            return true;
        }
        if i == desc.len() || suffix[i] < rest {
            return false;
        }
        if desc[i] <= rest && go(desc, suffix, i + 1, rest - desc[i]) {
            return true;
        }
        // skip every copy of this value at once
        let mut j = i + 1;
        while j < desc.len() && desc[j] == desc[i] {
            j += 1;
        }
        go(desc, suffix, j, rest)
    }
    go(&desc, &suffix, 0, target)
}

/// Shortest paths over residues modulo the least value: `target` is
/// representable iff the least representable number in its residue class
/// does not exceed it.
fn unbounded_exists(items: &[u128], target: u128) -> bool {
    let a = items[0];
    if a == 1 {
        return true;
    }
    let g = items.iter().fold(0u128, |g, &v| g.gcd(&v));
    if target % g != 0 {
        return false;
    }
    if a <= 1 << 22 {
        let a_us = a as usize;
        let mut dist = vec![u128::MAX; a_us];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u128, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &v in &items[1..] {
                let nd = d + v;
                let nr = ((r as u128 + v) % a) as usize;
                if nd < dist[nr] && nd <= target {
                    dist[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        return dist[(target % a) as usize] <= target;
    }
    // few terms: depth-first over multiplicities, largest value first
    let desc: Vec<u128> = items.iter().rev().copied().collect();
    fn go(desc: &[u128], i: usize, rest: u128) -> bool {
        if rest == 0 {
            return true;
        }
        if i == desc.len() {
            return false;
        }
        let v = desc[i];
        (0..=rest / v).rev().any(|c| go(desc, i + 1, rest - c * v))
    }
    go(&desc, 0, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mults(sols: &[KnapsackSolution]) -> Vec<Vec<u64>> {
        sols.iter().map(|s| s.multiplicities.clone()).collect()
    }

    #[test]
    fn small_examples() {
        let sols = knapsack(&[2, 3, 5], 5, KnapsackMode::Bounded);
        assert_eq!(mults(&sols), vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let sols = knapsack(&[8, 12, 24, 24, 24, 24, 48], 36, KnapsackMode::Bounded);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].values, vec![8, 12, 24, 48]);
        assert_eq!(sols[0].multiplicities, vec![0, 1, 1, 0]);
        assert!(knapsack(&[2, 3], 1, KnapsackMode::Unbounded).is_empty());
        assert_eq!(mults(&knapsack(&[4], 0, KnapsackMode::Bounded)), vec![vec![0]]);
    }

    #[test]
    fn bounded_respects_multiplicity() {
        assert!(knapsack(&[1], 3, KnapsackMode::Bounded).is_empty());
        assert_eq!(mults(&knapsack(&[1], 3, KnapsackMode::Unbounded)), vec![vec![3]]);
        assert_eq!(
            mults(&knapsack(&[1, 2], 2, KnapsackMode::Unbounded)),
            vec![vec![2, 0], vec![0, 1]]
        );
    }

    #[test]
    fn existence_agrees_with_enumeration() {
        for target in 0..60u64 {
            for vals in [vec![6u64, 10, 15], vec![4, 4, 9], vec![7], vec![3, 5, 5, 11]] {
                for mode in [KnapsackMode::Bounded, KnapsackMode::Unbounded] {
                    let v128: Vec<u128> = vals.iter().map(|&v| v as u128).collect();
                    assert_eq!(
                        knapsack_exists(&v128, target as u128, mode),
                        !knapsack(&vals, target, mode).is_empty(),
                        "{vals:?} {target} {mode:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn unbounded_existence_with_large_target() {
        // Frobenius number of {6, 10, 15} is 29
        let v = [6u128, 10, 15];
        assert!(!knapsack_exists(&v, 29, KnapsackMode::Unbounded));
        assert!(knapsack_exists(&v, 10u128.pow(30) + 1, KnapsackMode::Unbounded));
        assert!(!knapsack_exists(&[1u128 << 40], (1u128 << 40) + 1, KnapsackMode::Unbounded));
    }
}
