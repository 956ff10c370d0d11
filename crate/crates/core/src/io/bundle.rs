//! Group bundles: a group given by generators (or only by its order) with
//! its classes of maximal subgroups.

use std::path::Path;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{decimal, LoadError, FORMAT};
use crate::permgroup::{GroupError, PermGroup, Permutation};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub order: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    pub maximals: Vec<RawMaximal>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMaximal {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u64>>>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub order: Option<BigUint>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub index: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub novelty: Option<bool>,
}

/// A validated bundle. Orders and indices are recomputed wherever
/// generators allow it.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub provenance: Option<String>,
    /// `None` for an index-only bundle.
    pub group: Option<PermGroup>,
    pub order: BigUint,
    pub maximals: Vec<Maximal>,
}

#[derive(Clone, Debug)]
pub struct Maximal {
    pub name: String,
    /// 1-based position in the bundle.
    pub position: usize,
    pub index: BigUint,
    pub order: BigUint,
    pub group: Option<PermGroup>,
    pub novelty: Option<bool>,
    /// False when index and order are taken from the file unchecked.
    pub verified: bool,
}

impl Bundle {
    pub fn is_index_only(&self) -> bool {
        self.group.is_none()
    }

    /// The index of every maximal class, in bundle order.
    pub fn indices(&self) -> Vec<BigUint> {
        self.maximals.iter().map(|m| m.index.clone()).collect()
    }

    /// An index-only bundle from a group order and maximal indices.
    pub fn index_only(name: &str, order: BigUint, indices: &[BigUint]) -> Result<Bundle, LoadError> {
        let raw = RawBundle {
            format: Some(FORMAT.into()),
            name: name.into(),
            order: Some(order),
            maximals: indices
                .iter()
                .enumerate()
                .map(|(i, b)| RawMaximal {
                    name: format!("M{}", i + 1),
                    index: Some(b.clone()),
                    ..RawMaximal::default()
                })
                .collect(),
            ..RawBundle::default()
        };
        validate(raw)
    }
}

pub fn load_bundle(path: &Path) -> Result<Bundle, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_bundle(&text)
}

pub fn parse_bundle(text: &str) -> Result<Bundle, LoadError> {
    let raw: RawBundle = serde_json::from_str(text).map_err(LoadError::syntax)?;
    validate(raw)
}

fn semantic(path: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Semantic {
        path: path.into(),
        message: message.into(),
    }
}

fn permutations(path: &str, degree: usize, gens: &[Vec<u64>]) -> Result<Vec<Permutation>, LoadError> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let here = format!("{path}[{}]", i + 1);
            if g.len() != degree {
                return Err(semantic(here, format!("has length {}, expected degree {degree}", g.len())));
            }
            Permutation::from_one_based(g).map_err(|e| semantic(here, e.to_string()))
        })
        .collect()
}

fn check_declared(path: String, declared: &Option<BigUint>, actual: &BigUint) -> Result<(), LoadError> {
    match declared {
        Some(d) if d != actual => Err(semantic(path, format!("declared {d}, computed {actual}"))),
        _ => Ok(()),
    }
}

/// Checks every field of `raw` against what can be recomputed.
pub fn validate(raw: RawBundle) -> Result<Bundle, LoadError> {
    if let Some(f) = &raw.format {
        if f != FORMAT {
            return Err(semantic("format", format!("unsupported format {f:?}, expected {FORMAT:?}")));
        }
    }
    let group = match &raw.generators {
        Some(gens) => {
            let degree = raw
                .degree
                .ok_or_else(|| semantic("degree", "required when generators are given"))?;
            let perms = permutations("generators", degree, gens)?;
            let g = PermGroup::new(degree, perms).map_err(|e| semantic("generators", e.to_string()))?;
            check_declared("order".into(), &raw.order, g.order())?;
            Some(g)
        }
        None => None,
    };
    let order = match (&group, &raw.order) {
        (Some(g), _) => g.order().clone(),
        (None, Some(o)) if !o.is_zero() => o.clone(),
        _ => return Err(semantic("order", "required for an index-only bundle")),
    };
    let mut maximals = Vec::with_capacity(raw.maximals.len());
    for (i, m) in raw.maximals.iter().enumerate() {
        let here = format!("maximals[{}] ({})", i + 1, m.name);
        let sub = match (&group, &m.generators) {
            (Some(g), Some(gens)) => {
                let perms = permutations(&format!("{here}.generators"), g.degree(), gens)?;
                let h = PermGroup::new(g.degree(), perms)
                    .map_err(|e| semantic(format!("{here}.generators"), e.to_string()))?;
                Some(h)
            }
            (None, Some(_)) => {
                return Err(semantic(
                    format!("{here}.generators"),
                    "subgroup generators need group generators",
                ))
            }
            (_, None) => None,
        };
        let entry = match (&group, sub) {
            (Some(g), Some(h)) => {
                let index = g.subgroup_index(&h).map_err(|e| match e {
                    GroupError::NotASubgroup { generator } => semantic(
                        format!("{here}.generators[{generator}]"),
                        "is not an element of the group",
                    ),
                    e => semantic(&here, e.to_string()),
                })?;
                check_declared(format!("{here}.order"), &m.order, h.order())?;
                check_declared(format!("{here}.index"), &m.index, &index)?;
                Maximal {
                    name: m.name.clone(),
                    position: i + 1,
                    index,
                    order: h.order().clone(),
                    group: Some(h),
                    novelty: m.novelty,
                    verified: true,
                }
            }
            (_, _) => {
                let index = match (&m.index, &m.order) {
                    (Some(b), _) => b.clone(),
                    (None, Some(o)) if !o.is_zero() && order.is_multiple_of(o) => &order / o,
                    _ => return Err(semantic(&here, "needs generators, an index or a dividing order")),
                };
                if index.is_zero() || !order.is_multiple_of(&index) {
                    return Err(semantic(format!("{here}.index"), format!("{index} does not divide the group order")));
                }
                let sub_order = &order / &index;
                check_declared(format!("{here}.order"), &m.order, &sub_order)?;
                Maximal {
                    name: m.name.clone(),
                    position: i + 1,
                    index,
                    order: sub_order,
                    group: None,
                    novelty: m.novelty,
                    verified: false,
                }
            }
        };
        maximals.push(entry);
    }
    Ok(Bundle {
        name: raw.name,
        provenance: raw.provenance,
        group,
        order,
        maximals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A5: &str = r#"{
        "format": "gqprim/1",
        "name": "A5",
        "degree": 5,
        "order": "60",
        "generators": [[2,3,1,4,5],[1,2,4,5,3]],
        "maximals": [
            {"name": "A4", "generators": [[2,3,1,4,5],[2,1,4,3,5]], "index": "5"},
            {"name": "D10", "index": "6"}
        ]
    }"#;

    #[test]
    fn loads_and_recomputes() {
        let b = parse_bundle(A5).unwrap();
        assert_eq!(b.order, BigUint::from(60u32));
        assert_eq!(b.maximals[0].order, BigUint::from(12u32));
        assert!(b.maximals[0].verified);
        assert_eq!(b.maximals[1].order, BigUint::from(10u32));
        assert!(!b.maximals[1].verified);
    }

    #[test]
    fn wrong_declared_index_names_the_field() {
        let text = A5.replace(r#""index": "5""#, r#""index": "6""#);
        let err = parse_bundle(&text).unwrap_err().to_string();
        assert!(err.contains("maximals[1] (A4).index"), "{err}");
    }

    #[test]
    fn non_bijective_generator_is_named() {
        let text = A5.replace("[1,2,4,5,3]", "[1,2,4,4,3]");
        let err = parse_bundle(&text).unwrap_err().to_string();
        assert!(err.contains("generators[2]"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_bundle("{\n  \"name\": \"x\",\n  oops\n}") {
            Err(LoadError::Syntax { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn index_only_bundles() {
        let b = Bundle::index_only("G", BigUint::from(60u32), &[BigUint::from(5u32)]).unwrap();
        assert!(b.is_index_only());
        assert!(Bundle::index_only("G", BigUint::from(60u32), &[BigUint::from(7u32)]).is_err());
    }
}
