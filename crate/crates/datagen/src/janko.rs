//! J2 and J2.2 as automorphisms of the Hall-Janko graph, and J1 by its
//! maximal indices.
//!
//! The graph is built on U3(3): a vertex `*`, the 36 conjugates of L2(7)
//! and the 63 involutions. `*` is joined to the subgroups, two subgroups
//! are joined when they share 9 involutions, a subgroup is joined to its
//! own involutions, and two involutions are joined when their product has
//! order 4. This gives srg(100,36,14,12), whose automorphism group J2.2 is
//! generated by U3(3) together with automorphisms moving `*`, found by
//! backtracking.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{ensure, Result};
use gqprim::graph::{check_parameters, CollinearityGraph, SrgParameters};
use gqprim::permgroup::{PermGroup, Permutation, ProductReplacement};
use num_bigint::BigUint;
use rand::Rng;

use crate::groups::{rng, unitary_group};
use crate::search::{assert_complete, elements, find_classes, generate_from_pool, offer, ClassSpec};
use crate::{bundle_json, write};

const VERTICES: usize = 100;

struct HallJanko {
    adj: Vec<Vec<bool>>,
    /// U3(3) acting on the vertices.
    stabilizer_gens: Vec<Permutation>,
}

fn conjugate(x: &Permutation, g: &Permutation) -> Permutation {
    g.inverse().mul(x).mul(g)
}

fn hall_janko() -> HallJanko {
    let (_, _, u) = unitary_group(3, 3, "6048", 33);
    let all = elements(&u);
    let involutions: Vec<Permutation> = all.iter().filter(|x| x.order_u64() == 2).cloned().collect();
    assert_eq!(involutions.len(), 63);
    let inv_index: HashMap<Permutation, usize> =
        involutions.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();

    // an L2(7), recorded by the set of its involutions
    let mut r = rng(34);
    let sevens: Vec<&Permutation> = all.iter().filter(|x| x.order_u64() == 7).collect();
    let bound = BigUint::from(168u32);
    let l27 = loop {
        let x = sevens[r.gen_range(0..sevens.len())].clone();
        let y = involutions[r.gen_range(0..involutions.len())].clone();
        if let Some(h) = PermGroup::with_order_bound(u.degree(), vec![x, y], &bound) {
            if h.order() == &bound {
                break h;
            }
        }
    };
    let mut base: Vec<usize> = elements(&l27)
        .iter()
        .filter(|x| x.order_u64() == 2)
        .map(|t| inv_index[t])
        .collect();
    base.sort_unstable();
    let inv_perm = |g: &Permutation| -> Vec<usize> {
        involutions.iter().map(|t| inv_index[&conjugate(t, g)]).collect()
    };
    let mut subs: Vec<Vec<usize>> = vec![base];
    let gen_inv: Vec<Vec<usize>> = u.generators().iter().map(inv_perm).collect();
    let mut head = 0;
    while head < subs.len() {
        for p in &gen_inv {
            let mut img: Vec<usize> = subs[head].iter().map(|&i| p[i]).collect();
            img.sort_unstable();
            if !subs.contains(&img) {
                subs.push(img);
            }
        }
        head += 1;
    }
    assert_eq!(subs.len(), 36);

    let sub_of = |i: usize| 1 + i;
    let inv_of = |i: usize| 37 + i;
    let mut adj = vec![vec![false; VERTICES]; VERTICES];
    let mut join = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    for (i, s) in subs.iter().enumerate() {
        join(0, sub_of(i));
        for &t in s {
            join(sub_of(i), inv_of(t));
        }
        for (j, s2) in subs.iter().enumerate().skip(i + 1) {
            if s.iter().filter(|t| s2.contains(t)).count() == 9 {
                join(sub_of(i), sub_of(j));
            }
        }
    }
    for i in 0..63 {
        for j in i + 1..63 {
            if involutions[i].mul(&involutions[j]).order_u64() == 4 {
                join(inv_of(i), inv_of(j));
            }
        }
    }

    let stabilizer_gens = gen_inv
        .iter()
        .map(|p| {
            let mut images = vec![0u32; VERTICES];
            for (i, s) in subs.iter().enumerate() {
                let mut img: Vec<usize> = s.iter().map(|&t| p[t]).collect();
                img.sort_unstable();
                let j = subs.iter().position(|x| *x == img).expect("conjugate");
                images[sub_of(i)] = sub_of(j) as u32;
            }
            for (i, &j) in p.iter().enumerate() {
                images[inv_of(i)] = inv_of(j) as u32;
            }
            Permutation::from_images(images).expect("bijection")
        })
        .collect();
    HallJanko { adj, stabilizer_gens }
}

/// Extends the partial map `fixed` to an automorphism by backtracking over
/// vertices ordered to maximise adjacency with earlier ones.
fn find_automorphism(adj: &[Vec<bool>], fixed: &[(usize, usize)]) -> Option<Permutation> {
    let n = adj.len();
    let mut order: Vec<usize> = fixed.iter().map(|&(v, _)| v).collect();
    let mut rest: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();
    while !rest.is_empty() {
        let (k, _) = rest
            .iter()
            .enumerate()
            .max_by_key(|&(_, &v)| (order.iter().filter(|&&u| adj[v][u]).count(), std::cmp::Reverse(v)))
            .unwrap();
        order.push(rest.remove(k));
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(v, w) in fixed {
        map[v] = w;
        used[w] = true;
    }
    fn extend(adj: &[Vec<bool>], order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        if map[v] != usize::MAX {
            return extend(adj, order, k + 1, map, used);
        }
        for w in 0..adj.len() {
            if used[w] {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| adj[v][u] == adj[w][map[u]]);
            if consistent {
                map[v] = w;
                used[w] = true;
                if extend(adj, order, k + 1, map, used) {
                    return true;
                }
                map[v] = usize::MAX;
                used[w] = false;
            }
        }
        false
    }
    let ok = fixed.iter().all(|&(v, w)| fixed.iter().all(|&(u, x)| adj[v][u] == adj[w][x]));
    if !ok || !extend(adj, &order, 0, &mut map, &mut used) {
        return None;
    }
    Permutation::from_images(map.iter().map(|&x| x as u32).collect()).ok()
}

fn j2_2() -> PermGroup {
    let hj = hall_janko();
    let edges: Vec<(usize, usize)> = (0..VERTICES)
        .flat_map(|a| (a + 1..VERTICES).map(move |b| (a, b)))
        .filter(|&(a, b)| hj.adj[a][b])
        .collect();
    let graph = CollinearityGraph::from_edges(VERTICES, &edges).expect("simple graph");
    let srg = SrgParameters {
        v: 100,
        k: 36,
        lambda: 14,
        mu: 12,
    };
    assert!(check_parameters(&graph, &srg).passed(), "not the Hall-Janko graph");
    let target = BigUint::from(1_209_600u32);
    let mut gens = hj.stabilizer_gens.clone();
    let mut r = rng(35);
    let neighbours: Vec<usize> = (0..VERTICES).filter(|&v| hj.adj[0][v]).collect();
    let mut g = PermGroup::new(VERTICES, gens.clone()).unwrap();
    while g.order() < &target {
        let w = neighbours[r.gen_range(0..neighbours.len())];
        let a = find_automorphism(&hj.adj, &[(0, w)]).expect("vertex-transitive graph");
        gens.push(a);
        g = PermGroup::new(VERTICES, gens.clone()).unwrap();
    }
    assert_eq!(g.order(), &target);
    g
}

/// Two random elements generating `g`, if found.
fn two_generators(g: &PermGroup, seed: u64) -> PermGroup {
    let mut r = rng(seed);
    let mut pr = ProductReplacement::new(&mut r, g.generators(), g.degree());
    for _ in 0..200 {
        let x = pr.next(&mut r);
        let y = pr.next(&mut r);
        let h = PermGroup::new(g.degree(), vec![x, y]).unwrap();
        if h.order() == g.order() {
            return h;
        }
    }
    g.clone()
}

const PROVENANCE: &str = "automorphisms of the Hall-Janko graph srg(100,36,14,12), built from U3(3) acting on its 36 subgroups L2(7) and 63 involutions; maximal classes by seeded random search, each certified by a primitive coset action";

pub fn j2(out: &Path) -> Result<()> {
    let full = j2_2();
    let full = two_generators(&full, 36);
    // the derived subgroup, from commutators
    let mut r = rng(37);
    let mut pr = ProductReplacement::new(&mut r, full.generators(), VERTICES);
    let pool: Vec<Permutation> = (0..40)
        .map(|_| {
            let x = pr.next(&mut r);
            let y = pr.next(&mut r);
            x.inverse().mul(&y.inverse()).mul(&x).mul(&y)
        })
        .collect();
    let simple = generate_from_pool(&mut r, VERTICES, &pool, "604800");
    ensure!(simple.order().to_string() == "604800");

    let specs = vec![
        ClassSpec::new("U3(3)", 6048, 1),
        ClassSpec::new("3.A6.2", 2160, 1),
        ClassSpec::new("2^(1+4):A5", 1920, 1),
        ClassSpec::new("2^(2+4):(3xS3)", 1152, 1),
        ClassSpec::new("A4xA5", 720, 1),
        ClassSpec::new("A5xD10", 600, 1),
        ClassSpec::new("L3(2):2", 336, 1),
        ClassSpec::new("5^2:D12", 300, 1),
        ClassSpec::new("A5", 60, 1),
    ];
    let mut found = Vec::new();
    offer(&simple, &specs, &mut found, simple.stabilizer(0));
    let classes = find_classes(&mut rng(38), &simple, &specs, found, 200000);
    assert_complete(&classes, &specs);
    write(out, "j2.json", &bundle_json("J2", PROVENANCE, &simple, &classes, &[]))?;

    let specs = vec![
        ClassSpec::new("J2", 604800, 1),
        ClassSpec::new("U3(3):2", 12096, 1),
        ClassSpec::new("3.A6.2^2", 4320, 1),
        ClassSpec::new("2^(1+4).S5", 3840, 1),
        ClassSpec::new("2^(2+4):(3xS3).2", 2304, 1),
        ClassSpec::new("(A4xA5):2", 1440, 1),
        ClassSpec::new("(A5xD10).2", 1200, 1),
        ClassSpec::new("L3(2):2x2", 672, 1),
        ClassSpec::new("5^2:(4xS3)", 600, 1),
        ClassSpec::new("S5", 120, 1),
    ];
    let mut found = Vec::new();
    offer(&full, &specs, &mut found, simple.clone());
    offer(&full, &specs, &mut found, full.stabilizer(0));
    let classes = find_classes(&mut rng(39), &full, &specs, found, 200000);
    assert_complete(&classes, &specs);
    write(out, "j2_2.json", &bundle_json("J2.2", PROVENANCE, &full, &classes, &[]))
}

/// J1 by its order and the indices of its seven maximal classes.
pub fn j1(out: &Path) -> Result<()> {
    let maximals = [
        ("L2(11)", "266"),
        ("2^3:7:3", "1045"),
        ("2xA5", "1463"),
        ("19:6", "1540"),
        ("11:10", "1596"),
        ("D6xD10", "2926"),
        ("7:6", "4180"),
    ];
    let bundle = serde_json::json!({
        "format": "gqprim/1",
        "name": "J1",
        "provenance": "index-only: group order and maximal subgroup indices as listed in the ATLAS of Finite Groups",
        "order": "175560",
        "maximals": maximals
            .iter()
            .map(|(name, index)| serde_json::json!({"name": name, "index": index}))
            .collect::<Vec<_>>(),
    });
    write(out, "j1.json", &bundle)
}
