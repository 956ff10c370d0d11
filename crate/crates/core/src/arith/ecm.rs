//! Lenstra's elliptic curve method on Montgomery curves, with a
//! baby-step giant-step second stage. Used for cofactors that rho does not
//! split quickly.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::small_primes;

/// Giant step width for the second stage.
const WHEEL: u64 = 2310;

struct Ring<'a> {
    n: &'a BigUint,
}

#[derive(Clone)]
struct Point {
    x: BigUint,
    z: BigUint,
}

impl Ring<'_> {
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % self.n
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if &s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    fn double(&self, p: &Point, a24: &BigUint) -> Point {
        let s = self.add(&p.x, &p.z);
        let d = self.sub(&p.x, &p.z);
        let t1 = self.mul(&s, &s);
        let t2 = self.mul(&d, &d);
        let t3 = self.sub(&t1, &t2);
        Point {
            x: self.mul(&t1, &t2),
            z: self.mul(&t3, &self.add(&t2, &self.mul(a24, &t3))),
        }
    }

    /// `p + q` given `p - q`.
    fn diff_add(&self, p: &Point, q: &Point, diff: &Point) -> Point {
        let u1 = self.mul(&self.sub(&p.x, &p.z), &self.add(&q.x, &q.z));
        let u2 = self.mul(&self.add(&p.x, &p.z), &self.sub(&q.x, &q.z));
        let s = self.add(&u1, &u2);
        let d = self.sub(&u1, &u2);
        Point {
            x: self.mul(&diff.z, &self.mul(&s, &s)),
            z: self.mul(&diff.x, &self.mul(&d, &d)),
        }
    }

    fn ladder(&self, p: &Point, k: u64, a24: &BigUint) -> Point {
        if k == 1 {
            return p.clone();
        }
        let mut r0 = p.clone();
        let mut r1 = self.double(p, a24);
        for bit in (0..63 - k.leading_zeros()).rev() {
            if k >> bit & 1 == 1 {
                r0 = self.diff_add(&r1, &r0, p);
                r1 = self.double(&r1, a24);
            } else {
                r1 = self.diff_add(&r0, &r1, p);
                r0 = self.double(&r0, a24);
            }
        }
        r0
    }
}

enum Outcome {
    Factor(BigUint),
    Nothing,
}

fn nontrivial(g: BigUint, n: &BigUint) -> Outcome {
    if !g.is_one() && &g != n {
        Outcome::Factor(g)
    } else {
        Outcome::Nothing
    }
}

/// Smoothness bound for the `i`-th curve.
fn stage_one_bound(i: u32) -> u64 {
    match i {
        0..=24 => 2_000,
        25..=89 => 11_000,
        90..=299 => 50_000,
        _ => 250_000,
    }
}

/// Tries `curves` curves (unbounded if `None`) and returns a proper factor
/// of the odd composite `n` if one turns up.
pub(crate) fn find_factor(n: &BigUint, curves: Option<u32>) -> Option<BigUint> {
    let mut primes: Vec<u32> = Vec::new();
    let mut i = 0u32;
    while curves.is_none_or(|c| i < c) {
        let b1 = stage_one_bound(i);
        if primes.last().is_none_or(|&p| (p as u64) < 100 * b1) {
            primes = small_primes((100 * b1) as u32);
        }
        if let Outcome::Factor(d) = curve(n, 6 + i as u64, b1, &primes) {
            return Some(d);
        }
        i += 1;
    }
    None
}

fn curve(n: &BigUint, sigma: u64, b1: u64, primes: &[u32]) -> Outcome {
    let ring = Ring { n };
    // Suyama's parametrisation
    let sigma = BigUint::from(sigma) % n;
    let u = ring.sub(&ring.mul(&sigma, &sigma), &(BigUint::from(5u32) % n));
    let v = ring.mul(&sigma, &(BigUint::from(4u32) % n));
    let u3 = ring.mul(&ring.mul(&u, &u), &u);
    let vmu = ring.sub(&v, &u);
    let num = ring.mul(
        &ring.mul(&ring.mul(&vmu, &vmu), &vmu),
        &ring.add(&ring.mul(&u, &(BigUint::from(3u32) % n)), &v),
    );
    let den = ring.mul(&ring.mul(&u3, &v), &(BigUint::from(16u32) % n));
    let Some(inv) = den.modinv(n) else {
        return nontrivial(den.gcd(n), n);
    };
    let a24 = ring.mul(&num, &inv);
    let mut q = Point {
        x: u3,
        z: ring.mul(&ring.mul(&v, &v), &v),
    };
    for &p in primes.iter().take_while(|&&p| p as u64 <= b1) {
        let p = p as u64;
        let mut pk = p;
        while pk * p <= b1 {
            pk *= p;
        }
        q = ring.ladder(&q, pk, &a24);
    }
    let g = q.z.gcd(n);
    if !g.is_one() {
        return nontrivial(g, n);
    }
    stage_two(&ring, &q, &a24, b1, 100 * b1)
}

fn stage_two(ring: &Ring, q: &Point, a24: &BigUint, b1: u64, b2: u64) -> Outcome {
    let n = ring.n;
    let half = WHEEL / 2;
    // odd multiples j*q for j < WHEEL/2, keeping those prime to WHEEL
    let q2 = ring.double(q, a24);
    let mut baby: Vec<Point> = Vec::new();
    let (mut prev, mut cur) = (q.clone(), ring.diff_add(&q2, q, q));
    baby.push(q.clone());
    let mut j = 3;
    while j < half {
        if j.gcd(&WHEEL) == 1 {
            baby.push(cur.clone());
        }
        let next = ring.diff_add(&cur, &q2, &prev);
        prev = cur;
        cur = next;
        j += 2;
    }
    let w = ring.ladder(q, WHEEL, a24);
    let m0 = (b1 / WHEEL).max(1);
    let m1 = b2.div_ceil(WHEEL);
    let mut g_prev = ring.ladder(&w, m0, a24);
    let mut g_cur = ring.ladder(&w, m0 + 1, a24);
    let mut acc = BigUint::one();
    for m in m0..=m1 {
        let g = if m == m0 { &g_prev } else { &g_cur };
        for b in &baby {
            let t = ring.sub(&ring.mul(&g.x, &b.z), &ring.mul(&b.x, &g.z));
            acc = ring.mul(&acc, &t);
        }
        if m > m0 {
            let next = ring.diff_add(&g_cur, &w, &g_prev);
            g_prev = std::mem::replace(&mut g_cur, next);
        }
        if acc.is_zero() {
            return Outcome::Nothing;
        }
    }
    nontrivial(acc.gcd(n), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from((1u64 << 61) - 1);
        let n = &p * &q;
        let d = find_factor(&n, Some(50)).expect("factor");
        assert!(d == p || d == q);
    }
}
