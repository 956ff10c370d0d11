//! Integer factorization for arbitrary-precision integers: trial division,
//! Miller-Rabin, Pollard-Brent rho and elliptic curves.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ecm;

const TRIAL_LIMIT: u32 = 1 << 16;

/// Rho iterations tried on a cofactor before switching to elliptic curves.
const RHO_FIRST: u64 = 1 << 16;

/// How hard to work on each composite cofactor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effort {
    pub rho_iterations: u64,
    pub ecm_curves: u32,
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    factorize_within(n, None).0
}

/// Like [`factorize`], but gives up on a cofactor that survives `effort`.
/// Returns the primes found and the composite cofactors left over; every
/// prime factor of a leftover cofactor exceeds 2^16.
pub fn factorize_within(n: &BigUint, effort: Option<Effort>) -> (Vec<(BigUint, u32)>, Vec<BigUint>) {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut stuck = Vec::new();
    if n.is_zero() {
        return (out, stuck);
    }
    let mut rest = n.clone();
    for p in small_primes(TRIAL_LIMIT) {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = vec![rest];
    let mut big: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            big.push(m);
            continue;
        }
        if let Some(r) = perfect_power_root(&m) {
            let (base, k) = r;
            for _ in 0..k {
                stack.push(base.clone());
            }
            continue;
        }
        let rho = effort.map_or(RHO_FIRST, |e| e.rho_iterations);
        let d = pollard_brent(&m, Some(rho))
            .or_else(|| ecm::find_factor(&m, effort.map(|e| e.ecm_curves)));
        let Some(d) = d else {
            stuck.push(m);
            continue;
        };
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    big.sort();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort();
    (out, stuck)
}

pub fn prime_divisors(n: &BigUint) -> Vec<BigUint> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn small_primes(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    if limit >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=limit as u32).filter(|&i| sieve[i as usize]).collect()
}

/// Deterministic for n < 3.3e24, and a strong probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for b in BASES {
        let bb = BigUint::from(b);
        if n == &bb {
            return true;
        }
        if (n % &bb).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for b in BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn perfect_power_root(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in 2..=bits {
        let r = n.nth_root(k);
        if r < BigUint::from(2u32) {
            break;
        }
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// A non-trivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint, budget: Option<u64>) -> Option<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    let mut spent: u64 = 0;
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g == one {
            if budget.is_some_and(|b| spent > b) {
                return None;
            }
            spent += r;
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        c += 1u32;
    }
}

/// `n mod m`, via 64-bit limbs.
pub(crate) fn rem_u64(limbs: &[u64], m: u64) -> u64 {
    let mut r: u64 = 0;
    for &l in limbs.iter().rev() {
        r = ((((r as u128) << 64) | l as u128) % m as u128) as u64;
    }
    r
}

/// `n mod m` for `m` below 2^96, via 32-bit limbs.
pub(crate) fn rem_u128(limbs: &[u32], m: u128) -> u128 {
    debug_assert!(m > 0 && m < 1 << 96);
    let mut r: u128 = 0;
    for &l in limbs.iter().rev() {
        r = ((r << 32) | l as u128) % m;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn product(f: &[(BigUint, u32)]) -> BigUint {
        f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn factors_small_and_smooth() {
        let n = BigUint::from(4180u32);
        let f = factorize(&n);
        let expect: Vec<(BigUint, u32)> = [(2u32, 2), (5, 1), (11, 1), (19, 1)]
            .iter()
            .map(|&(p, e)| (BigUint::from(p), e))
            .collect();
        assert_eq!(f, expect);
        assert!(factorize(&BigUint::one()).is_empty());
    }

    #[test]
    fn factors_with_large_primes() {
        // two primes above the trial division limit
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * &q * BigUint::from(12u32);
        let f = factorize(&n);
        assert_eq!(product(&f), n);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
        assert_eq!(f.last().unwrap(), &(p, 1));
    }

    #[test]
    fn primality_against_sieve() {
        let sieve = small_primes(5000);
        for n in 0u32..5000 {
            assert_eq!(
                is_probable_prime(&BigUint::from(n)),
                sieve.binary_search(&n).is_ok(),
                "{n}"
            );
        }
    }

    #[test]
    fn limb_remainder() {
        let n: BigUint = "808017424794512875886459904961710757005754368000000000"
            .parse()
            .unwrap();
        let limbs = n.to_u32_digits();
        for m in [7u128, 1 << 70, 123_456_789_012_345_678_901] {
            assert_eq!(rem_u128(&limbs, m), (&n % BigUint::from(m)).to_u128().unwrap());
        }
        let limbs = n.to_u64_digits();
        for m in [7u64, 1 << 40, u64::MAX, 18_446_744_073_709_551_557] {
            assert_eq!(rem_u64(&limbs, m), (&n % BigUint::from(m)).to_u64().unwrap());
        }
    }
}
