//! Randomised search for conjugacy classes of maximal subgroups.
//!
//! Candidates are generated by pairs of random elements whose orders (and
//! the orders of a few short words in them) divide the target order. A
//! candidate of the right order is accepted iff the coset action is
//! primitive, and two subgroups are conjugate iff one fixes a coset of the
//! other.

use gqprim::permgroup::{coset_action, CosetActionData, PermGroup, Permutation, ProductReplacement};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};

pub struct ClassSpec {
    pub name: String,
    pub order: u64,
    pub count: usize,
    /// Separates classes of equal order but different structure.
    pub accept: Option<Box<dyn Fn(&PermGroup) -> bool>>,
}

impl ClassSpec {
    pub fn new(name: &str, order: u64, count: usize) -> Self {
        ClassSpec {
            name: name.to_string(),
            order,
            count,
            accept: None,
        }
    }

    pub fn with(mut self, accept: impl Fn(&PermGroup) -> bool + 'static) -> Self {
        self.accept = Some(Box::new(accept));
        self
    }
}

pub struct Class {
    pub name: String,
    pub group: PermGroup,
    pub action: CosetActionData,
}

/// Whether `h` is contained in a conjugate of the subgroup whose coset
/// action is `act`.
pub fn fixes_a_coset(act: &CosetActionData, h: &PermGroup) -> bool {
    let imgs: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|x| act.act(x).expect("element of the group"))
        .collect();
    (0..act.degree()).any(|c| imgs.iter().all(|p| p.image(c) == c))
}

fn divides(n: u64, x: &Permutation) -> bool {
    let o = x.order_u64();
    o != u64::MAX && n % o == 0
}

/// Registers `h` as a new class if it is maximal, not conjugate to a known
/// class, and matches a spec that still has room. Returns true if added.
pub fn offer(g: &PermGroup, specs: &[ClassSpec], found: &mut Vec<Class>, h: PermGroup) -> bool {
    let Some(n) = h.order().to_u64() else { return false };
    if found
        .iter()
        .any(|c| c.group.order() == h.order() && fixes_a_coset(&c.action, &h))
    {
        if std::env::var_os("DATAGEN_DEBUG").is_some() {
            eprintln!("    conjugate to a known class (order {n})");
        }
        return false;
    }
    let slot = specs.iter().find(|s| {
        s.order == n
            && found.iter().filter(|c| c.name == s.name && c.group.order() == h.order()).count() < s.count
            && s.accept.as_ref().is_none_or(|f| f(&h))
    });
    let Some(spec) = slot else { return false };
    let act = coset_action(g, &h, 1 << 22).expect("subgroup of g");
    if !act.is_primitive() {
        if std::env::var_os("DATAGEN_DEBUG").is_some() {
            eprintln!("    not maximal (order {n}, index {})", act.degree());
        }
        return false;
    }
    eprintln!("  found {} (order {}, index {})", spec.name, n, act.degree());
    found.push(Class {
        name: spec.name.clone(),
        group: h,
        action: act,
    });
    true
}

/// Fills every spec by random search, giving up on an order after `budget`
/// fruitless trials. Callers check completeness with [`assert_complete`].
pub fn find_classes<R: Rng>(
    rng: &mut R,
    g: &PermGroup,
    specs: &[ClassSpec],
    mut found: Vec<Class>,
    budget: usize,
) -> Vec<Class> {
    let mut pr = ProductReplacement::new(rng, g.generators(), g.degree());
    let mut orders: Vec<u64> = specs.iter().map(|s| s.order).collect();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    orders.dedup();
    for n in orders {
        let want: usize = specs.iter().filter(|s| s.order == n).map(|s| s.count).sum();
        let have = |found: &Vec<Class>| {
            found
                .iter()
                .filter(|c| c.group.order().to_u64() == Some(n))
                .count()
        };
        let bound = BigUint::from(n);
        let mut trials = 0;
        while have(&found) < want {
            trials += 1;
            if trials > budget {
                eprintln!(
                    "  gave up on order {n}: found {} of {} classes",
                    have(&found),
                    want
                );
                break;
            }
            let x = pr.next(rng);
            if !divides(n, &x) || x.is_identity() {
                continue;
            }
            let y = pr.next(rng);
            if !divides(n, &y) {
                continue;
            }
            let words = [x.mul(&y), x.mul(&y.inverse()), x.mul(&y).mul(&y), x.mul(&x).mul(&y)];
            if !words.iter().all(|w| divides(n, w)) {
                continue;
            }
            let comm = x.inverse().mul(&y.inverse()).mul(&x).mul(&y);
            if !divides(n, &comm) {
                continue;
            }
            let Some(h) = PermGroup::with_order_bound(g.degree(), vec![x, y], &bound) else {
                continue;
            };
            if h.order().to_u64() == Some(n) {
                if offer(g, specs, &mut found, h) {
                    trials = 0;
                }
            } else if !h.order().is_zero() && n % h.order().to_u64().unwrap() == 0 {
                // extend by a further element of the right shape
                for _ in 0..3 {
                    let z = pr.next(rng);
                    if !divides(n, &z) {
                        continue;
                    }
                    let mut gens = h.generators().to_vec();
                    gens.push(z);
                    if let Some(h2) = PermGroup::with_order_bound(g.degree(), gens, &bound) {
                        if h2.order().to_u64() == Some(n) && offer(g, specs, &mut found, h2) {
                            trials = 0;
                        }
                        break;
                    }
                }
            }
        }
    }
    // report in spec order
    let mut ordered = Vec::new();
    for s in specs {
        let mut rest = Vec::new();
        for c in found {
            if c.name == s.name && c.group.order().to_u64() == Some(s.order) {
                ordered.push(c);
            } else {
                rest.push(c);
            }
        }
        found = rest;
    }
    ordered.extend(found);
    ordered
}

/// Builds a group and checks its order.
pub fn group(degree: usize, gens: Vec<Permutation>, order: &str) -> PermGroup {
    let g = PermGroup::new(degree, gens).expect("generators");
    assert_eq!(g.order().to_string(), order, "unexpected group order");
    g
}

/// Randomly chosen elements from `pool` until they generate a group of the
/// given order.
pub fn generate_from_pool<R: Rng>(
    rng: &mut R,
    degree: usize,
    pool: &[Permutation],
    order: &str,
) -> PermGroup {
    let target: BigUint = order.parse().unwrap();
    for _ in 0..200 {
        let mut gens: Vec<Permutation> = Vec::new();
        while gens.len() < 6 {
            gens.push(pool[rng.gen_range(0..pool.len())].clone());
            let g = PermGroup::with_order_bound(degree, gens.clone(), &target);
            match g {
                Some(g) if g.order() == &target => return reduce(g, &target),
                Some(_) => {}
                None => panic!("pool generates a group larger than {order}"),
            }
        }
    }
    panic!("could not generate a group of order {order}");
}

/// Replaces the generators by two random elements if those suffice.
fn reduce(g: PermGroup, target: &BigUint) -> PermGroup {
    let mut pr_rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut pr = ProductReplacement::new(&mut pr_rng, g.generators(), g.degree());
    for _ in 0..100 {
        let x = pr.next(&mut pr_rng);
        let y = pr.next(&mut pr_rng);
        let h = PermGroup::new(g.degree(), vec![x, y]).unwrap();
        if h.order() == target {
            return h;
        }
    }
    g
}

/// All elements of a small group, by closure under right multiplication.
pub fn elements(h: &PermGroup) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    let id = Permutation::identity(h.degree());
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in h.generators() {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    queue
}

pub fn assert_complete(classes: &[Class], specs: &[ClassSpec]) {
    let want: usize = specs.iter().map(|s| s.count).sum();
    assert_eq!(classes.len(), want, "maximal classes missing");
}
