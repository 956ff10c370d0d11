use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::GroupError;

/// A permutation of `{0, .., degree - 1}` acting on the right.
///
/// Products follow the right-action convention: `a.mul(&b)` applies `a`
/// first and then `b`, so `x^(ab) = (x^a)^b`. File formats use 1-based
/// images; conversion happens in [`Permutation::from_one_based`] and
/// [`Permutation::to_one_based`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::Malformed(format!(
                    "image {} of point {} is out of range for degree {}",
                    x + 1,
                    i + 1,
                    n
                )));
            }
            if seen[x] {
                return Err(GroupError::Malformed(format!(
                    "point {} is hit twice, the array is not a bijection",
                    x + 1
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn from_one_based(images: &[u64]) -> Result<Self, GroupError> {
        let mut out = Vec::with_capacity(images.len());
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > images.len() as u64 {
                return Err(GroupError::Malformed(format!(
                    "image {} of point {} is out of range for degree {}",
                    x,
                    i + 1,
                    images.len()
                )));
            }
            out.push((x - 1) as u32);
        }
        Permutation::from_images(out)
    }

    /// Builds a permutation of the given degree from disjoint cycles on
    /// 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x as usize >= degree || y as usize >= degree {
                    return Err(GroupError::Malformed(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                if touched[x as usize] {
                    return Err(GroupError::Malformed(format!(
                        "point {} appears in two cycles",
                        x + 1
                    )));
                }
                touched[x as usize] = true;
                images[x as usize] = y;
            }
        }
        Permutation::from_images(images)
    }

    pub fn to_one_based(&self) -> Vec<u64> {
        self.images.iter().map(|&x| x as u64 + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().mul(self).mul(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// Element order as a machine integer, saturating at `u64::MAX`.
    pub fn order_u64(&self) -> u64 {
        let mut acc: u64 = 1;
        for c in self.cycles() {
            let l = c.len() as u64;
            acc = match (acc / acc.gcd(&l)).checked_mul(l) {
                Some(v) => v,
                None => return u64::MAX,
            };
        }
        acc
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        Permutation::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_composition() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!((&a * &b).image(0), 2);
        assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_one_based(&[1, 1, 3]).is_err());
        assert!(Permutation::from_one_based(&[1, 4, 3]).is_err());
        assert!(Permutation::from_one_based(&[0, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn order_and_cycles() {
        let g = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
        assert_eq!(g.order_u64(), 6);
        assert!(g.pow(6).is_identity());
        assert_eq!(format!("{g:?}"), "(1,2)(3,4,5)");
    }
}
