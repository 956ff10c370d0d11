//! Quadrangle incidence files with groups acting on their points.
//!
//! W(3,2) is the duad/syntheme model on six letters. H(3,9) is extracted
//! from the orbital graph of PSU(4,3) on the cosets of 3^(1+4):(2.S4), and
//! PSL(3,4) is mapped into the same action.

use std::path::Path;

use anyhow::{anyhow, ensure, Result};
use gqprim::arith::OrderCandidate;
use gqprim::gq::{extract_gq, QuadrangleData};
use gqprim::graph::build_orbital_graph;
use gqprim::io::{gq_to_json, load_bundle};
use gqprim::permgroup::{coset_action, PermGroup, Permutation};
use serde_json::json;

use crate::groups::cycles;
use crate::{perm_json, write};

fn duads() -> Vec<(usize, usize)> {
    (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect()
}

fn on_duads(g: &Permutation) -> Permutation {
    let ds = duads();
    let images = ds
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (g.image(a), g.image(b));
            ds.iter().position(|&d| d == (x.min(y), x.max(y))).unwrap() as u32
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

fn w32() -> QuadrangleData {
    let ds = duads();
    let mut lines = Vec::new();
    for (i, a) in ds.iter().enumerate() {
        for (j, b) in ds.iter().enumerate().skip(i + 1) {
            for (k, c) in ds.iter().enumerate().skip(j + 1) {
                let mut letters = [a.0, a.1, b.0, b.1, c.0, c.1];
                letters.sort_unstable();
                if letters == [0, 1, 2, 3, 4, 5] {
                    lines.push(vec![i as u32, j as u32, k as u32]);
                }
            }
        }
    }
    QuadrangleData::new(15, 2, 2, lines).expect("synthemes form GQ(2,2)")
}

fn group_file(name: &str, provenance: &str, degree: usize, gens: &[Permutation], order: &str) -> Result<serde_json::Value> {
    let g = PermGroup::new(degree, gens.to_vec())?;
    ensure!(g.order().to_string() == order, "{name} has order {}", g.order());
    Ok(json!({
        "format": "gqprim/1",
        "name": name,
        "provenance": provenance,
        "degree": degree,
        "order": order,
        "generators": gens.iter().map(perm_json).collect::<Vec<_>>(),
        "maximals": [],
    }))
}

pub fn quadrangles(out: &Path) -> Result<()> {
    write(out, "w32.json", &serde_json::from_str(&gq_to_json("W(3,2)", &w32()))?)?;
    // PG(1,5) as letters 1..5 for 0..4 and 6 for infinity
    let pgl = [
        ("A5", "PSL(2,5) on the projective line", vec!["(1,2,3,4,5)", "(1,6)(2,5)"], "60"),
        ("S5", "PGL(2,5) on the projective line", vec!["(1,2,3,4,5)", "(1,6)(2,5)", "(2,3,5,4)"], "120"),
        ("A6", "natural", vec!["(1,2,3)", "(2,3,4,5,6)"], "360"),
        ("S6", "natural", vec!["(1,2)", "(1,2,3,4,5,6)"], "720"),
    ];
    for (name, how, gens, order) in pgl {
        let gens: Vec<Permutation> = gens.iter().map(|c| on_duads(&cycles(6, c))).collect();
        let prov = format!("{how} on six letters, acting on the 15 duads of W(3,2)");
        write(
            out,
            &format!("w32_{}.json", name.to_lowercase()),
            &group_file(name, &prov, 15, &gens, order)?,
        )?;
    }

    let psu = load_bundle(&out.join("psu43.json"))?;
    let g = psu.group.as_ref().ok_or_else(|| anyhow!("psu43 has no generators"))?;
    let find = |name: &str| {
        psu.maximals
            .iter()
            .find(|m| m.name == name)
            .and_then(|m| m.group.clone())
            .ok_or_else(|| anyhow!("psu43 lacks {name}"))
    };
    let stab = find("3^(1+4):(2.S4)")?;
    let action = coset_action(g, &stab, 1 << 20)?;
    let ids: Vec<_> = (0..action.suborbit_count())
        .map(gqprim::permgroup::SuborbitId)
        .filter(|&i| action.suborbit(i).len() == 36)
        .collect();
    ensure!(ids.len() == 1, "expected one suborbit of size 36");
    let graph = build_orbital_graph(&action, &ids)?;
    let gq = extract_gq(&graph, &OrderCandidate::from_u64(9, 3)).map_err(|e| anyhow!("{e}"))?;
    write(out, "h39.json", &serde_json::from_str(&gq_to_json("H(3,9)", &gq))?)?;
    let psl = find("PSL(3,4)")?;
    let gens: Vec<Permutation> = psl
        .generators()
        .iter()
        .map(|x| action.act(x).expect("element of PSU(4,3)"))
        .collect();
    write(
        out,
        "h39_psl34.json",
        &group_file(
            "PSL(3,4)",
            "a maximal PSL(3,4) of PSU(4,3) (from psu43.json) acting on the cosets of 3^(1+4):(2.S4), which are the points of H(3,9)",
            action.degree(),
            &gens,
            "20160",
        )?,
    )
}
