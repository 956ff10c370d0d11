use rand::Rng;

use super::Permutation;

/// A random word of the given length in the generators and their inverses.
pub fn random_word<R: Rng>(rng: &mut R, gens: &[Permutation], degree: usize, len: usize) -> Permutation {
    let mut acc = Permutation::identity(degree);
    if gens.is_empty() {
        return acc;
    }
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        acc = if rng.gen_bool(0.5) {
            acc.mul(g)
        } else {
            acc.mul(&g.inverse())
        };
    }
    acc
}

/// Product replacement generator of (nearly) uniform random elements.
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new<R: Rng>(rng: &mut R, gens: &[Permutation], degree: usize) -> Self {
        let mut slots: Vec<Permutation> = gens.to_vec();
        if slots.is_empty() {
            slots.push(Permutation::identity(degree));
        }
        let base = slots.clone();
        while slots.len() < 10.max(base.len() + 1) {
            slots.push(base[slots.len() % base.len()].clone());
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let sj = if rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if rng.gen_bool(0.5) {
            self.slots[i].mul(&sj)
        } else {
            sj.mul(&self.slots[i])
        };
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }
}
