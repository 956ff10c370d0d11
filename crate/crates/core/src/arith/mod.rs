//! Arithmetic filters on quadrangle orders: candidate orders for a given
//! point count, the orders-of-elements test, the line-orbit test and the
//! knapsack search they share.

mod ecm;
pub mod factor;
mod knapsack;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use knapsack::{knapsack, knapsack_exists, KnapsackMode, KnapsackSolution};

/// A feasible order `(s, t)` of a thick generalised quadrangle with
/// `num_points = (s+1)(st+1)` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderCandidate {
    #[serde(with = "crate::io::decimal")]
    pub s: BigUint,
    #[serde(with = "crate::io::decimal")]
    pub t: BigUint,
    #[serde(with = "crate::io::decimal")]
    pub num_points: BigUint,
    #[serde(with = "crate::io::decimal")]
    pub num_lines: BigUint,
}

impl OrderCandidate {
    pub fn new(s: BigUint, t: BigUint) -> Self {
        let st1 = &s * &t + 1u32;
        OrderCandidate {
            num_points: (&s + 1u32) * &st1,
            num_lines: (&t + 1u32) * &st1,
            s,
            t,
        }
    }

    pub fn from_u64(s: u64, t: u64) -> Self {
        Self::new(BigUint::from(s), BigUint::from(t))
    }

    /// `st + 1`, which is `num_lines / (t+1)`.
    pub fn st1(&self) -> BigUint {
        &self.s * &self.t + 1u32
    }

    /// Thickness, the Higman inequalities and `(s+t) | st(st+1)`.
    pub fn satisfies_constraints(&self) -> bool {
        let two = BigUint::from(2u32);
        let (s, t) = (&self.s, &self.t);
        let st = s * t;
        s >= &two
            && t >= &two
            && s <= &(t * t)
            && t <= &(s * s)
            && (&st * (&st + 1u32)).is_multiple_of(&(s + t))
            && self.num_points == (s + 1u32) * (&st + 1u32)
            && self.num_lines == (t + 1u32) * (&st + 1u32)
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.s, self.t)
    }
}

/// Work spent factoring `n - 1` before falling back to the divisors of `n`.
const NM1_EFFORT: factor::Effort = factor::Effort {
    rho_iterations: 1 << 14,
    ecm_curves: 0,
};

/// All feasible orders `(s, t)` with `(s+1)(st+1) = num_points`, sorted by
/// `s` then `t`.
///
/// With `j = s + 1` a divisor of `num_points`, `t = (num_points/j - 1)/(j-1)`.
/// Since `num_points = j(st+1)` forces `j - 1 | num_points - 1`, and the
/// inequalities `t <= s^2`, `s <= t^2` confine `j` to roughly
/// `[n^(1/4), n^(2/5)]`, only divisors in that window are tested.
pub fn enumerate_orders(num_points: &BigUint) -> Vec<OrderCandidate> {
    let n = num_points;
    if n < &BigUint::from(2u32) {
        return Vec::new();
    }
    let factors = factor::factorize(n);
    // j^4 >= j((j-1)^3 + 1) >= n and j^2 (j-1)^3 < n^2
    let lo = n.nth_root(4).max(BigUint::from(3u32));
    let hi = (n * n).nth_root(5) + 2u32;
    let mut out = Vec::new();
    let mut check = |j: &BigUint| {
        if let Some(c) = candidate_for_divisor(n, j) {
            out.push(c);
        }
    };
    // j - 1 divides n - 1, which usually has few divisors once factored
    let (nm1_factors, stuck) = factor::factorize_within(&(n - 1u32), Some(NM1_EFFORT));
    if stuck.is_empty() {
        for s in all_divisors(&nm1_factors) {
            let j = s + 1u32;
            if j >= lo && j <= hi {
                check(&j);
            }
        }
    } else if hi < BigUint::one() << 96 {
        let limbs = n.to_u32_digits();
        let limbs64 = n.to_u64_digits();
        let nm1_ok = |j: u128| match u64::try_from(j - 1) {
            Ok(s) => factor::rem_u64(&limbs64, s) == 1 % s,
            Err(_) => factor::rem_u128(&limbs, j - 1) == 1,
        };
        let lo = lo.to_u128().unwrap();
        let hi = hi.to_u128().unwrap();
        let fs: Vec<(u128, u32)> = factors
            .iter()
            .filter_map(|(p, e)| p.to_u128().map(|p| (p, *e)))
            .filter(|&(p, _)| p <= hi)
            .collect();
        // largest value reachable from the primes at positions >= i
        let mut reach = vec![1u128; fs.len() + 1];
        for i in (0..fs.len()).rev() {
            reach[i] = reach[i + 1].saturating_mul(fs[i].0.saturating_pow(fs[i].1));
        }
        let mut stack: Vec<(usize, u128)> = vec![(0, 1)];
        while let Some((i, d)) = stack.pop() {
            if d.saturating_mul(reach[i]) < lo {
                continue;
            }
            if i == fs.len() {
                if d >= lo && d <= hi && nm1_ok(d) {
                    check(&BigUint::from(d));
                }
                continue;
            }
            let (p, e) = fs[i];
            let mut x = d;
            for k in 0..=e {
                stack.push((i + 1, x));
                if k == e {
                    break;
                }
                match x.checked_mul(p) {
                    Some(y) if y <= hi => x = y,
                    _ => break,
                }
            }
        }
    } else {
        for j in all_divisors(&factors) {
            if j >= lo && j <= hi {
                check(&j);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn all_divisors(factors: &[(BigUint, u32)]) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=*e {
                next.push(x.clone());
                x *= p;
            }
        }
        divs = next;
    }
    divs
}

/// The candidate `(j-1, t)` for a divisor `j` of `n`, if all constraints hold.
fn candidate_for_divisor(n: &BigUint, j: &BigUint) -> Option<OrderCandidate> {
    let one = BigUint::one();
    if j <= &one || j >= n {
        return None;
    }
    let (m, r) = n.div_rem(j);
    if !r.is_zero() {
        return None;
    }
    let s = j - 1u32;
    let (t, r) = (m - 1u32).div_rem(&s);
    if !r.is_zero() {
        return None;
    }
    let c = OrderCandidate::new(s, t);
    c.satisfies_constraints().then_some(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Keep,
    Eliminate,
}

impl Verdict {
    pub fn keeps(self) -> bool {
        self == Verdict::Keep
    }
}

/// Eliminates `cand` iff some prime `q` dividing `|G|` exceeds both `s+1`
/// and `t+1` while dividing `|M|` or not dividing the number of lines.
pub fn orders_of_elements_test(
    group_order: &BigUint,
    stabiliser_order: &BigUint,
    cand: &OrderCandidate,
) -> Verdict {
    match orders_of_elements_witness(group_order, stabiliser_order, cand) {
        Some(_) => Verdict::Eliminate,
        None => Verdict::Keep,
    }
}

/// The least prime witnessing elimination, if any.
pub fn orders_of_elements_witness(
    group_order: &BigUint,
    stabiliser_order: &BigUint,
    cand: &OrderCandidate,
) -> Option<BigUint> {
    let s1 = &cand.s + 1u32;
    let t1 = &cand.t + 1u32;
    factor::prime_divisors(group_order).into_iter().find(|q| {
        q > &s1
            && q > &t1
            && (stabiliser_order.is_multiple_of(q) || !cand.num_lines.is_multiple_of(q))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineTestMode {
    /// Each k-value may be used as often as it arises from the indices.
    Strict,
    /// Each k-value may be used any number of times.
    Sound,
}

impl LineTestMode {
    pub fn knapsack_mode(self) -> KnapsackMode {
        match self {
            LineTestMode::Strict => KnapsackMode::Bounded,
            LineTestMode::Sound => KnapsackMode::Unbounded,
        }
    }
}

/// Outcome of [`line_orbits_test`] with the k-values it searched over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOrbitsOutcome {
    pub verdict: Verdict,
    /// `lcm(b, st+1)/(st+1)` for each index `b` with `lcm(b, st+1)` at most
    /// the number of lines, in the order of the indices.
    #[serde(with = "crate::io::decimal::vec")]
    pub k_values: Vec<BigUint>,
}

/// A line orbit of a point-transitive group has size `k(st+1)` where every
/// point lies on `k` lines of the orbit, and its stabiliser lies in some
/// maximal subgroup, so its size is a multiple of `lcm(b, st+1)` for an
/// index `b`. Keeps `cand` iff the resulting k-values can sum to `t+1`.
pub fn line_orbits_test(
    max_indices: &[BigUint],
    cand: &OrderCandidate,
    mode: LineTestMode,
    primitivity_refinement: bool,
) -> LineOrbitsOutcome {
    let k0 = cand.st1();
    let lines = &cand.num_lines;
    let k_values: Vec<BigUint> = max_indices
        .iter()
        .filter_map(|b| {
            let l = b.lcm(&k0);
            (&l <= lines).then(|| l / &k0)
        })
        .collect();
    let target = &cand.t + 1u32;
    let usable: Vec<BigUint> = k_values
        .iter()
        .filter(|k| !(primitivity_refinement && (k.is_one() || *k == &cand.t)))
        .cloned()
        .collect();
    let verdict = match (
        usable.iter().map(|k| k.to_u128()).collect::<Option<Vec<u128>>>(),
        target.to_u128(),
    ) {
        (Some(vals), Some(target)) => {
            if knapsack_exists(&vals, target, mode.knapsack_mode()) {
                Verdict::Keep
            } else {
                Verdict::Eliminate
            }
        }
        // beyond 128 bits nothing is eliminated
        _ => Verdict::Keep,
    };
    LineOrbitsOutcome { verdict, k_values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pairs(c: &[OrderCandidate]) -> Vec<(u64, u64)> {
        c.iter()
            .map(|c| (c.s.to_u64().unwrap(), c.t.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn orders_for_table_point_counts() {
        assert_eq!(pairs(&enumerate_orders(&big(15))), vec![(2, 2)]);
        assert_eq!(pairs(&enumerate_orders(&big(4180))), vec![(21, 9)]);
        assert_eq!(pairs(&enumerate_orders(&big(6))), vec![]);
        assert_eq!(pairs(&enumerate_orders(&big(165))), vec![(4, 8)]);
        assert_eq!(pairs(&enumerate_orders(&big(280))), vec![(9, 3)]);
        assert_eq!(pairs(&enumerate_orders(&big(1360))), vec![(9, 15)]);
        assert_eq!(pairs(&enumerate_orders(&big(325))), vec![(4, 16)]);
        assert_eq!(pairs(&enumerate_orders(&big(2))), vec![]);
    }

    /// Direct evaluation over every `j` in `2..n`.
    fn brute(n: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for j in 2..n {
            if n % j != 0 {
                continue;
            }
            let s = j - 1;
            let m = n / j - 1;
            if m % s != 0 {
                continue;
            }
            let t = m / s;
            if s >= 2 && t >= 2 && s <= t * t && t <= s * s && (s * t * (s * t + 1)) % (s + t) == 0 {
                out.push((s, t));
            }
        }
        out
    }

    #[test]
    fn enumeration_is_complete_for_small_counts() {
        for n in 2..20000u64 {
            assert_eq!(pairs(&enumerate_orders(&big(n))), brute(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_on_constructed_counts() {
        // every feasible (s,t) is found again from its point count
        for s in 2..40u64 {
            for t in 2..=s * s {
                let c = OrderCandidate::from_u64(s, t);
                if !c.satisfies_constraints() {
                    continue;
                }
                let found = enumerate_orders(&c.num_points);
                assert!(found.contains(&c), "({s},{t}) missing");
            }
        }
    }

    #[test]
    fn orders_of_elements_examples() {
        // |J2.2| = 2^8 3^3 5^2 7
        let j22 = big(1209600);
        let m = big(1209600 / 280);
        assert_eq!(
            orders_of_elements_test(&j22, &m, &OrderCandidate::from_u64(9, 3)),
            Verdict::Keep
        );
        let g = big(4 * 3 * 11);
        assert_eq!(
            orders_of_elements_test(&g, &big(11), &OrderCandidate::from_u64(2, 2)),
            Verdict::Eliminate
        );
        assert_eq!(
            orders_of_elements_witness(&g, &big(11), &OrderCandidate::from_u64(2, 2)),
            Some(big(11))
        );
    }

    fn indices(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn line_test_j1() {
        let j1 = indices(&[266, 1045, 1463, 1540, 1596, 2926, 4180]);
        let c = OrderCandidate::from_u64(21, 9);
        for mode in [LineTestMode::Strict, LineTestMode::Sound] {
            let out = line_orbits_test(&j1, &c, mode, false);
            assert_eq!(out.k_values, vec![big(7)]);
            assert_eq!(out.verdict, Verdict::Eliminate);
        }
    }

    #[test]
    fn line_test_m11() {
        let m11 = indices(&[11, 12, 55, 66, 165]);
        let c = OrderCandidate::from_u64(4, 8);
        let out = line_orbits_test(&m11, &c, LineTestMode::Strict, false);
        assert_eq!(out.k_values, indices(&[1, 4, 5, 2, 5]));
        assert_eq!(out.verdict, Verdict::Keep);
    }

    #[test]
    fn line_test_mode_divergence() {
        // single index b = st+1 gives k = 1 once; t+1 = 3 needs three copies
        let c = OrderCandidate::from_u64(2, 2);
        let b = indices(&[5]);
        assert_eq!(
            line_orbits_test(&b, &c, LineTestMode::Strict, false).verdict,
            Verdict::Eliminate
        );
        assert_eq!(
            line_orbits_test(&b, &c, LineTestMode::Sound, false).verdict,
            Verdict::Keep
        );
        assert_eq!(
            line_orbits_test(&b, &c, LineTestMode::Sound, true).verdict,
            Verdict::Eliminate
        );
    }
}
