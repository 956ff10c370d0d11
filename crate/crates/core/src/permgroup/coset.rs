use std::collections::HashMap;
use std::time::Instant;

use num_traits::ToPrimitive;

use super::chain::StabChain;
use super::{is_primitive_with_suborbits, GroupError, PermGroup, Permutation};

/// Default cap on the number of coset labels.
pub const DEFAULT_DEGREE_CAP: usize = 1 << 22;

/// Index of a suborbit inside [`CosetActionData::suborbits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuborbitId(pub usize);

/// The action of `G` on the right cosets of `M`.
///
/// Label 0 is the coset `M` itself; further labels are assigned in
/// breadth-first order from it, using the generators of `G` in their given
/// order. Suborbits are the orbits of the image of `M` (the stabilizer of
/// label 0) on the remaining labels, listed by least label.
#[derive(Clone, Debug)]
pub struct CosetActionData {
    degree: usize,
    generator_images: Vec<Permutation>,
    inverse_images: Vec<Permutation>,
    stabilizer_images: Vec<Permutation>,
    /// Breadth-first tree: `parent[x] = (y, k)` with `x = y^{g_k}`.
    parent: Vec<(u32, u32)>,
    suborbits: Vec<Vec<u32>>,
    suborbit_of: Vec<u32>,
    /// Base-image key of the canonical representative of each label.
    keys: Vec<Vec<u32>>,
    labels: HashMap<Vec<u32>, u32>,
    group: PermGroup,
    sub_chain: PermGroup,
}

const BASE: u32 = u32::MAX;

impl CosetActionData {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_coset(&self) -> usize {
        0
    }

    /// Images of the generators of `G` acting on coset labels.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// Images of the generators of `M`, which fix label 0.
    pub fn stabilizer_images(&self) -> &[Permutation] {
        &self.stabilizer_images
    }

    pub fn suborbits(&self) -> &[Vec<u32>] {
        &self.suborbits
    }

    pub fn suborbit(&self, id: SuborbitId) -> &[u32] {
        &self.suborbits[id.0]
    }

    pub fn suborbit_count(&self) -> usize {
        self.suborbits.len()
    }

    /// Suborbit containing `label`, or `None` for the base coset.
    pub fn suborbit_of(&self, label: usize) -> Option<SuborbitId> {
        match self.suborbit_of[label] {
            BASE => None,
            s => Some(SuborbitId(s as usize)),
        }
    }

    /// Suborbit sizes aligned with [`CosetActionData::suborbits`].
    pub fn subdegrees(&self) -> Vec<usize> {
        self.suborbits.iter().map(Vec::len).collect()
    }

    pub fn sorted_subdegrees(&self) -> Vec<usize> {
        let mut d = self.subdegrees();
        d.sort_unstable();
        d
    }

    /// Generator indices along the tree path from label 0 to `label`.
    pub fn transversal_word(&self, label: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut x = label;
        while x != 0 {
            let (p, k) = self.parent[x];
            word.push(k as usize);
            x = p as usize;
        }
        word.reverse();
        word
    }

    /// Image of `point` under the transversal element taking 0 to `label`.
    pub fn apply_transversal(&self, label: usize, point: usize) -> usize {
        self.transversal_word(label)
            .iter()
            .fold(point, |p, &k| self.generator_images[k].image(p))
    }

    /// Image of `point` under the inverse of the transversal element for `label`.
    pub fn apply_transversal_inverse(&self, label: usize, point: usize) -> usize {
        self.transversal_word(label)
            .iter()
            .rev()
            .fold(point, |p, &k| self.inverse_images[k].image(p))
    }

    /// Labels in breadth-first order together with their tree parent, for
    /// propagating per-label data from the root outwards.
    pub fn tree_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (1..self.degree).map(|x| {
            let (p, k) = self.parent[x];
            (x, p as usize, k as usize)
        })
    }

    /// The paired suborbit: if `x` lies in `O`, the pair of `O` holds the
    /// image of label 0 under the inverse of an element taking 0 to `x`.
    pub fn orbital_pairing(&self, id: SuborbitId) -> SuborbitId {
        let x = self.suborbits[id.0][0] as usize;
        let y = self.apply_transversal_inverse(x, 0);
        self.suborbit_of(y).expect("pairing of a non-trivial suborbit is non-trivial")
    }

    pub fn is_self_paired(&self, id: SuborbitId) -> bool {
        self.orbital_pairing(id) == id
    }

    pub fn is_transitive(&self) -> bool {
        super::orbit_of(self.degree, &self.generator_images, 0).len() == self.degree
    }

    /// Image of an arbitrary element of `G` in the coset action, or `None`
    /// if `x` does not lie in `G`.
    pub fn act(&self, x: &Permutation) -> Option<Permutation> {
        if !self.group.contains(x) {
            return None;
        }
        let canon = Canonicalizer {
            chain: &self.sub_chain.chain,
            base: self.group.chain.base(),
        };
        let mut images = Vec::with_capacity(self.degree);
        for key in &self.keys {
            let key: Vec<usize> = key.iter().map(|&k| k as usize).collect();
            let rep = self.group.element_from_base_images(&key)?;
            let (k, _) = canon.canonical(rep.mul(x));
            images.push(*self.labels.get(&k)?);
        }
        Some(Permutation::from_images_unchecked(images))
    }

    /// Primitive iff `M` is maximal in `G`.
    pub fn is_primitive(&self) -> bool {
        let reps: Vec<usize> = self.suborbits.iter().map(|o| o[0] as usize).collect();
        is_primitive_with_suborbits(self.degree, &self.generator_images, &reps)
    }
}

/// Right-coset canonicalization through `M`'s chain, built on `G`'s base.
struct Canonicalizer<'a> {
    chain: &'a StabChain,
    base: Vec<u32>,
}

impl Canonicalizer<'_> {
    /// Replaces `x` with the element of `Mx` whose base image tuple is
    /// lexicographically least, and returns that tuple.
    fn canonical(&self, mut x: Permutation) -> (Vec<u32>, Permutation) {
        for lvl in &self.chain.levels {
            let mut best = 0usize;
            let mut best_img = u32::MAX;
            for (i, &beta) in lvl.orbit.iter().enumerate() {
                let img = x.image(beta as usize) as u32;
                if img < best_img {
                    best_img = img;
                    best = i;
                }
            }
            if best != 0 {
                x = lvl.trans[best].mul(&x);
            }
        }
        let key = self.base.iter().map(|&b| x.image(b as usize) as u32).collect();
        (key, x)
    }
}

/// Action of `g` on the right cosets of `m`, with the suborbits of `m`.
pub fn coset_action(
    g: &PermGroup,
    m: &PermGroup,
    degree_cap: usize,
) -> Result<CosetActionData, GroupError> {
    coset_action_until(g, m, degree_cap, None)
}

/// As [`coset_action`], giving up with [`GroupError::TimedOut`] once
/// `deadline` has passed.
pub fn coset_action_until(
    g: &PermGroup,
    m: &PermGroup,
    degree_cap: usize,
    deadline: Option<Instant>,
) -> Result<CosetActionData, GroupError> {
    let index = g.subgroup_index(m)?;
    let degree = match index.to_usize() {
        Some(d) if d <= degree_cap => d,
        _ => {
            return Err(GroupError::ResourceLimit {
                index,
                cap: degree_cap,
            })
        }
    };
    let g_base = g.base();
    let m_chain = PermGroup::with_base_prefix(m.degree(), m.strong_generators(), &g_base)?;
    debug_assert_eq!(m_chain.chain.levels.len(), g_base.len().max(m_chain.chain.levels.len()));
    let canon = Canonicalizer {
        chain: &m_chain.chain,
        base: g_base.iter().map(|&b| b as u32).collect(),
    };

    let gens = g.generators();
    let mgens = m.generators();
    let mut labels: HashMap<Vec<u32>, u32> = HashMap::with_capacity(degree);
    let mut images: Vec<Vec<u32>> = vec![vec![0; degree]; gens.len()];
    let mut parent: Vec<(u32, u32)> = vec![(0, 0); degree];
    let mut pending_m: Vec<Vec<Vec<u32>>> = Vec::with_capacity(degree);
    let mut keys: Vec<Vec<u32>> = Vec::with_capacity(degree);

    let (key0, rep0) = canon.canonical(Permutation::identity(g.degree()));
    labels.insert(key0.clone(), 0);
    keys.push(key0);
    let mut queue: std::collections::VecDeque<(u32, Permutation)> = std::collections::VecDeque::new();
    queue.push_back((0, rep0));
    let mut next_label: u32 = 1;
    while let Some((label, rep)) = queue.pop_front() {
        if label % 1024 == 0 && deadline.is_some_and(|d| Instant::now() > d) {
            return Err(GroupError::TimedOut);
        }
        for (k, gen) in gens.iter().enumerate() {
            let (key, cy) = canon.canonical(rep.mul(gen));
            let target = match labels.get(&key) {
                Some(&t) => t,
                None => {
                    let t = next_label;
                    next_label += 1;
                    labels.insert(key.clone(), t);
                    keys.push(key);
                    parent[t as usize] = (label, k as u32);
                    queue.push_back((t, cy));
                    t
                }
            };
            images[k][label as usize] = target;
        }
        let mk: Vec<Vec<u32>> = mgens.iter().map(|h| canon.canonical(rep.mul(h)).0).collect();
        debug_assert_eq!(pending_m.len(), label as usize);
        pending_m.push(mk);
    }
    if next_label as usize != degree {
        return Err(GroupError::Malformed(format!(
            "coset enumeration found {} cosets, expected {}",
            next_label, degree
        )));
    }
    let generator_images: Vec<Permutation> =
        images.into_iter().map(Permutation::from_images_unchecked).collect();
    let inverse_images = generator_images.iter().map(Permutation::inverse).collect();

    let mut m_images: Vec<Vec<u32>> = vec![vec![0; degree]; mgens.len()];
    for (label, keys) in pending_m.into_iter().enumerate() {
        for (k, key) in keys.into_iter().enumerate() {
            m_images[k][label] = labels[&key];
        }
    }
    let stabilizer_images: Vec<Permutation> =
        m_images.into_iter().map(Permutation::from_images_unchecked).collect();

    let mut suborbit_of = vec![BASE; degree];
    let mut suborbits: Vec<Vec<u32>> = Vec::new();
    for start in 1..degree {
        if suborbit_of[start] != BASE {
            continue;
        }
        let id = suborbits.len() as u32;
        let mut orb = vec![start as u32];
        suborbit_of[start] = id;
        let mut head = 0;
        while head < orb.len() {
            let x = orb[head] as usize;
            for h in &stabilizer_images {
                let y = h.image(x);
                if suborbit_of[y] == BASE && y != 0 {
                    suborbit_of[y] = id;
                    orb.push(y as u32);
                }
            }
            head += 1;
        }
        orb.sort_unstable();
        suborbits.push(orb);
    }

    Ok(CosetActionData {
        degree,
        generator_images,
        inverse_images,
        stabilizer_images,
        parent,
        suborbits,
        suborbit_of,
        keys,
        labels,
        group: g.clone(),
        sub_chain: m_chain,
    })
}
