//! Projective point sets over small fields and the permutations induced
//! on them by (semi)linear maps.

use std::collections::HashMap;

use gqprim::permgroup::Permutation;

use crate::field::Field;

pub type Vector = Vec<u8>;

/// A set of projective points of PG(n-1, q), each stored normalized so
/// that its first non-zero coordinate is one.
pub struct PointSet {
    pub points: Vec<Vector>,
    index: HashMap<Vector, u32>,
}

impl PointSet {
    /// All points of PG(n-1, q) satisfying `keep`.
    pub fn new(f: &Field, n: usize, keep: impl Fn(&[u8]) -> bool) -> PointSet {
        let mut points = Vec::new();
        let total = f.q.pow(n as u32);
        for code in 1..total {
            let mut v = vec![0u8; n];
            let mut c = code;
            for x in v.iter_mut().rev() {
                *x = (c % f.q) as u8;
                c /= f.q;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) && keep(&v) {
                points.push(v);
            }
        }
        let index = points
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        PointSet { points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn position(&self, f: &Field, v: &[u8]) -> Option<usize> {
        self.index.get(&normalize(f, v)).map(|&i| i as usize)
    }

    /// The permutation induced by `map`, which must preserve the set.
    pub fn perm(&self, f: &Field, map: impl Fn(&[u8]) -> Vector) -> Permutation {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|v| {
                self.position(f, &map(v))
                    .expect("map does not preserve the point set") as u32
            })
            .collect();
        Permutation::from_images(images).expect("map is a bijection")
    }
}

pub fn normalize(f: &Field, v: &[u8]) -> Vector {
    let lead = *v.iter().find(|&&x| x != 0).expect("non-zero vector");
    let c = f.inv(lead);
    v.iter().map(|&x| f.mul(x, c)).collect()
}

/// `x + c v`.
pub fn axpy(f: &Field, x: &[u8], c: u8, v: &[u8]) -> Vector {
    x.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
}

/// Alternating form `x0 y3 - x3 y0 + x1 y2 - x2 y1`.
pub fn symplectic(f: &Field, x: &[u8], y: &[u8]) -> u8 {
    let a = f.sub(f.mul(x[0], y[3]), f.mul(x[3], y[0]));
    let b = f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1]));
    f.add(a, b)
}

/// Hermitian form `sum x_i y_{n-1-i}^r` over GF(r^2).
pub fn hermitian(f: &Field, x: &[u8], y: &[u8]) -> u8 {
    let n = x.len();
    let r = (f.q as f64).sqrt().round() as usize;
    (0..n).fold(0, |acc, i| f.add(acc, f.mul(x[i], f.pow(y[n - 1 - i], r))))
}
