//! Generates the bundled data files under `data/`.
//!
//! Usage: `gqprim-datagen <outdir> [name...]`. Every group is built from
//! explicit generators, its order checked, and each maximal class found by
//! randomised search is certified maximal by primitivity of its coset
//! action. Runs are seeded, so output is reproducible.

mod field;
mod geometry;
mod giants;
mod groups;
mod janko;
mod quadrangles;
mod search;

use std::path::{Path, PathBuf};

use anyhow::Result;
use gqprim::permgroup::{PermGroup, Permutation};
use serde_json::{json, Value};

use search::Class;

pub fn perm_json(p: &Permutation) -> Value {
    json!(p.to_one_based())
}

pub struct IndexOnly {
    pub name: String,
    pub index: String,
}

pub fn bundle_json(
    name: &str,
    provenance: &str,
    g: &PermGroup,
    classes: &[Class],
    index_only: &[IndexOnly],
) -> Value {
    let mut maximals: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "order": c.group.order().to_string(),
                "index": (g.order() / c.group.order()).to_string(),
                "generators": c.group.generators().iter().map(perm_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    maximals.extend(index_only.iter().map(|e| {
        json!({
            "name": e.name,
            "index": e.index,
        })
    }));
    json!({
        "format": "gqprim/1",
        "name": name,
        "provenance": provenance,
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(perm_json).collect::<Vec<_>>(),
        "maximals": maximals,
    })
}

pub fn write(dir: &Path, file: &str, value: &Value) -> Result<()> {
    let path = dir.join(file);
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&out)?;
    let wanted: Vec<String> = args.collect();
    for (name, job) in groups::JOBS {
        if wanted.is_empty() || wanted.iter().any(|w| w == name) {
            eprintln!("== {name}");
            job(&out)?;
        }
    }
    Ok(())
}
