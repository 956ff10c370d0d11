//! Permutation groups: stabilizer chains, membership, orbits, coset actions
//! and subdegrees.

mod chain;
mod coset;
mod perm;
mod random;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use coset::{coset_action, coset_action_until, CosetActionData, SuborbitId, DEFAULT_DEGREE_CAP};
pub use perm::Permutation;
pub use random::{random_word, ProductReplacement};

use chain::StabChain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("generator {generator} (1-based) of the subgroup is not an element of the group")]
    NotASubgroup { generator: usize },
    #[error("coset action of degree {index} exceeds the configured cap of {cap}")]
    ResourceLimit { index: BigUint, cap: usize },
    #[error("stage time budget exhausted")]
    TimedOut,
}

/// A permutation group together with a stabilizer chain.
///
/// Immutable after construction; the order is exact.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// As [`PermGroup::new`], but the chain's base starts with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::Malformed(format!(
                    "generator {} has degree {}, expected {}",
                    i + 1,
                    g.degree(),
                    degree
                )));
            }
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(GroupError::Malformed(format!("base point {} out of range", p + 1)));
        }
        let prefix: Vec<u32> = prefix.iter().map(|&p| p as u32).collect();
        let chain = StabChain::build(degree, &generators, &prefix, None)
            .expect("no order bound was given");
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    /// Builds the group only if its order does not exceed `bound`.
    pub fn with_order_bound(
        degree: usize,
        generators: Vec<Permutation>,
        bound: &BigUint,
    ) -> Option<Self> {
        let chain = StabChain::build(degree, &generators, &[], Some(bound)).ok()?;
        let order = chain.order();
        Some(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base().into_iter().map(|b| b as usize).collect()
    }

    /// Fundamental orbit lengths along the chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    /// Residue of `g` after sifting through the chain; the identity iff
    /// `g` is a member.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.chain.strip_from(g.clone(), 0).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn element_from_base_images(&self, images: &[usize]) -> Option<Permutation> {
        let imgs: Vec<u32> = images.iter().map(|&x| x as u32).collect();
        self.chain.element_from_base_images(&imgs)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    /// All orbits, each sorted, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Point stabilizer, computed by rebuilding the chain with `point` first.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let rebased =
            PermGroup::with_base_prefix(self.degree, self.strong_generators(), &[point])
                .expect("same degree");
        let gens = rebased
            .chain
            .levels
            .get(1)
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// `|self : sub|`, after checking that every generator of `sub` lies in
    /// `self`.
    pub fn subgroup_index(&self, sub: &PermGroup) -> Result<BigUint, GroupError> {
        if sub.degree != self.degree {
            return Err(GroupError::Malformed(format!(
                "subgroup degree {} differs from group degree {}",
                sub.degree, self.degree
            )));
        }
        if let Some(i) = sub.generators.iter().position(|g| !self.contains(g)) {
            return Err(GroupError::NotASubgroup { generator: i + 1 });
        }
        let (q, r) = self.order.div_rem(&sub.order);
        debug_assert!(r.is_zero());
        Ok(q)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        other.subgroup_index(self).is_ok()
    }

    pub fn order_is_one(&self) -> bool {
        self.order.is_one()
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        head += 1;
    }
    orbit.sort_unstable();
    orbit
}

/// Orbits of the group generated by `gens`, each sorted, listed by least point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let orb = orbit_of(degree, gens, p);
        for &x in &orb {
            seen[x] = true;
        }
        out.push(orb);
    }
    out
}

/// Whether the transitive group generated by `gens` on `degree` points is
/// primitive, by computing the minimal block containing `{0, p}` for one
/// `p` in each orbit of the stabilizer of 0 (given by `suborbit_reps`).
pub fn is_primitive_with_suborbits(
    degree: usize,
    gens: &[Permutation],
    suborbit_reps: &[usize],
) -> bool {
    if degree <= 2 {
        return true;
    }
    suborbit_reps
        .iter()
        .all(|&p| minimal_block_size(degree, gens, p) == degree)
}

/// Size of the finest block system in which 0 and `p` share a block
/// (Atkinson's union-find method).
pub fn minimal_block_size(degree: usize, gens: &[Permutation], p: usize) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let (a, b) = (find(&mut parent, 0), find(&mut parent, p));
    if a != b {
        parent[b] = a;
        queue.push((0, p));
    }
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let gx = find(&mut parent, g.image(x));
            let gy = find(&mut parent, g.image(y));
            if gx != gy {
                parent[gy] = gx;
                queue.push((gx, gy));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..degree).filter(|&x| find(&mut parent, x) == root).count()
}
