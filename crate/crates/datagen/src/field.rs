//! Small finite fields GF(p^k) with table arithmetic.

/// Elements are `0..q`, encoded as base-`p` digit vectors of polynomials
/// modulo a primitive polynomial. `0` is zero and `1` is one.
#[derive(Clone, Debug)]
pub struct Field {
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(q: usize) -> Field {
        let (p, k) = prime_power(q);
        if k == 1 {
            return Self::from_ops(q, |a, b| (a + b) % p, |a, b| (a * b) % p);
        }
        let poly = find_primitive(p, k);
        let digits = |mut x: usize| {
            let mut d = vec![0usize; k];
            for c in d.iter_mut() {
                *c = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let add = |a: usize, b: usize| {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s)
        };
        let mul = |a: usize, b: usize| {
            let prod = poly_mul_mod(&digits(a), &digits(b), &poly, p);
            undigits(&prod)
        };
        Self::from_ops(q, add, mul)
    }

    fn from_ops(
        q: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Field {
        let mut f = Field {
            q,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
        };
        for a in 0..q {
            for b in 0..q {
                f.add[a * q + b] = add(a, b) as u8;
                f.mul[a * q + b] = mul(a, b) as u8;
            }
        }
        for a in 0..q {
            f.neg[a] = (0..q).find(|&b| f.add(a as u8, b as u8) == 0).unwrap() as u8;
            if a != 0 {
                f.inv[a] = (1..q).find(|&b| f.mul(a as u8, b as u8) == 1).unwrap() as u8;
            }
        }
        f
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: usize) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// An element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> u8 {
        (2..self.q as u8)
            .chain(std::iter::once(1))
            .find(|&a| {
                let mut x = a;
                let mut n = 1;
                while x != 1 {
                    x = self.mul(x, a);
                    n += 1;
                }
                n == self.q - 1
            })
            .unwrap()
    }
}

fn prime_power(q: usize) -> (usize, usize) {
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let mut k = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    assert_eq!(x, 1, "{q} is not a prime power");
    (p, k)
}

fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    // modulus is monic of degree k, given by its k low coefficients
    let k = a.len();
    let mut prod = vec![0usize; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[d - k + i] = (prod[d - k + i] + (p - m) * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// Low coefficients of a monic degree-`k` polynomial for which `x` has
/// order `p^k - 1`.
fn find_primitive(p: usize, k: usize) -> Vec<usize> {
    let q = p.pow(k as u32);
    for code in 0..q {
        let mut modulus = vec![0usize; k];
        let mut c = code;
        for m in modulus.iter_mut() {
            *m = c % p;
            c /= p;
        }
        if modulus[0] == 0 {
            continue;
        }
        let mut x = vec![0usize; k];
        x[1 % k] = 1;
        let one: Vec<usize> = (0..k).map(|i| usize::from(i == 0)).collect();
        let mut acc = x.clone();
        let mut n = 1;
        while acc != one && n < q {
            acc = poly_mul_mod(&acc, &x, &modulus, p);
            n += 1;
        }
        if n == q - 1 {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 8, 9, 11, 16] {
            let f = Field::new(q);
            for a in 0..q as u8 {
                assert_eq!(f.add(a, f.sub(0, a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q as u8 {
                    for c in 0..q as u8 {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            let w = f.primitive_element();
            assert_eq!(f.pow(w, q - 1), 1);
        }
    }
}
