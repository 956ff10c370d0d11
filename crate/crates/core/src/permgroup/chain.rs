use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of a stabilizer chain: the stabilizer of the earlier base
/// points, its generators, and the orbit of `point` with explicit
/// transversal elements.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: u32,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// Position of each point inside `orbit`, or `NOT_IN_ORBIT`.
    slot: Vec<u32>,
    /// `trans[i]` maps `point` to `orbit[i]`.
    pub trans: Vec<Permutation>,
    pub trans_inv: Vec<Permutation>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut lvl = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NOT_IN_ORBIT; degree],
            trans: Vec::new(),
            trans_inv: Vec::new(),
        };
        lvl.recompute(degree);
        lvl
    }

    fn recompute(&mut self, degree: usize) {
        self.orbit.clear();
        self.trans.clear();
        self.trans_inv.clear();
        self.slot.iter_mut().for_each(|s| *s = NOT_IN_ORBIT);
        let id = Permutation::identity(degree);
        self.slot[self.point as usize] = 0;
        self.orbit.push(self.point);
        self.trans_inv.push(id.clone());
        self.trans.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head] as usize;
            for g in &self.gens {
                let gamma = g.image(beta);
                if self.slot[gamma] == NOT_IN_ORBIT {
                    let u = self.trans[head].mul(g);
                    self.slot[gamma] = self.orbit.len() as u32;
                    self.orbit.push(gamma as u32);
                    self.trans_inv.push(u.inverse());
                    self.trans.push(u);
                }
            }
            head += 1;
        }
    }

    #[inline]
    pub fn slot(&self, point: usize) -> Option<usize> {
        match self.slot[point] {
            NOT_IN_ORBIT => None,
            s => Some(s as usize),
        }
    }
}

/// Raised when a partial order exceeds a caller-supplied bound.
#[derive(Debug)]
pub(crate) struct OrderBoundExceeded;

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier-Sims. The base starts with `prefix` and is
    /// extended only when a strong generator fixes every base point so far.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        prefix: &[u32],
        order_bound: Option<&BigUint>,
    ) -> Result<StabChain, OrderBoundExceeded> {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<u32> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.image(b as usize) == b as usize) {
                let p = g.first_moved_point().expect("non-identity");
                base.push(p as u32);
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &gens {
            for (l, lvl) in levels.iter_mut().enumerate() {
                lvl.gens.push(g.clone());
                if g.image(base[l] as usize) != base[l] as usize {
                    break;
                }
            }
        }
        for lvl in levels.iter_mut() {
            lvl.recompute(degree);
        }
        let mut chain = StabChain { degree, levels };
        chain.check_bound(order_bound)?;

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            for oi in 0..chain.levels[lvl].orbit.len() {
                for gi in 0..chain.levels[lvl].gens.len() {
                    let level = &chain.levels[lvl];
                    let beta = level.orbit[oi] as usize;
                    let g = &level.gens[gi];
                    let gb = g.image(beta);
                    let gs = level.slot(gb).expect("orbit is closed");
                    let schreier = level.trans[oi].mul(g).mul(&level.trans_inv[gs]);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = chain.strip_from(schreier, lvl + 1);
                    if j == chain.levels.len() && h.is_identity() {
                        continue;
                    }
                    if j == chain.levels.len() {
                        let p = h.first_moved_point().expect("non-identity residue");
                        chain.levels.push(Level::new(p as u32, degree));
                    }
                    for l in lvl + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].recompute(degree);
                    }
                    chain.check_bound(order_bound)?;
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        Ok(chain)
    }

    fn check_bound(&self, bound: Option<&BigUint>) -> Result<(), OrderBoundExceeded> {
        match bound {
            Some(b) if &self.order() > b => Err(OrderBoundExceeded),
            _ => Ok(()),
        }
    }

    /// Sifts `g` through the levels starting at `from`; returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it went
    /// all the way through).
    pub fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let lvl = &self.levels[l];
            let beta = g.image(lvl.point as usize);
            match lvl.slot(beta) {
                None => return (g, l),
                Some(s) => g = g.mul(&lvl.trans_inv[s]),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Rebuilds the unique element with the given base images, if any.
    pub fn element_from_base_images(&self, images: &[u32]) -> Option<Permutation> {
        if images.len() != self.levels.len() {
            return None;
        }
        let mut targets: Vec<u32> = images.to_vec();
        let mut acc = Permutation::identity(self.degree);
        for l in 0..self.levels.len() {
            let lvl = &self.levels[l];
            let s = lvl.slot(targets[l] as usize)?;
            // element = h * u with h in the next stabilizer
            acc = lvl.trans[s].mul(&acc);
            let inv = &lvl.trans_inv[s];
            for t in targets.iter_mut().skip(l + 1) {
                *t = inv.image(*t as usize) as u32;
            }
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let gens = vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        let chain = StabChain::build(5, &gens, &[], None).unwrap();
        assert_eq!(chain.order(), BigUint::from(120u32));
        assert!(chain.contains(&cyc(5, &[&[2, 4]])));
    }

    #[test]
    fn bound_aborts() {
        let gens = vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
        let r = StabChain::build(6, &gens, &[], Some(&BigUint::from(100u32)));
        assert!(r.is_err());
    }

    #[test]
    fn prefix_is_respected_and_base_images_rebuild() {
        let gens = vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])];
        let chain = StabChain::build(6, &gens, &[5, 4], None).unwrap();
        assert_eq!(&chain.base()[..2], &[5, 4]);
        assert_eq!(chain.order(), BigUint::from(9u32));
        let g = gens[0].mul(&gens[1]).mul(&gens[1]);
        let imgs: Vec<u32> = chain.base().iter().map(|&b| g.image(b as usize) as u32).collect();
        assert_eq!(chain.element_from_base_images(&imgs), Some(g));
    }
}
