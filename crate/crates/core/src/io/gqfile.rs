//! Quadrangle files: a named list of lines on 1-based points.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LoadError, FORMAT};
use crate::gq::QuadrangleData;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GqFile {
    #[serde(default)]
    format: Option<String>,
    name: String,
    points: usize,
    s: u64,
    t: u64,
    lines: Vec<Vec<u64>>,
}

/// A quadrangle read from a file, re-verified against every axiom.
#[derive(Clone, Debug)]
pub struct NamedQuadrangle {
    pub name: String,
    pub gq: QuadrangleData,
}

pub fn load_gq(path: &Path) -> Result<NamedQuadrangle, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_gq(&text)
}

pub fn parse_gq(text: &str) -> Result<NamedQuadrangle, LoadError> {
    let raw: GqFile = serde_json::from_str(text).map_err(LoadError::syntax)?;
    if let Some(f) = raw.format.as_deref().filter(|&f| f != FORMAT) {
        return Err(LoadError::Semantic {
            path: "format".into(),
            message: format!("unsupported format {f:?}, expected {FORMAT:?}"),
        });
    }
    let mut lines = Vec::with_capacity(raw.lines.len());
    for (i, l) in raw.lines.iter().enumerate() {
        let pts: Option<Vec<u32>> = l
            .iter()
            .map(|&p| (p >= 1 && p <= raw.points as u64).then(|| (p - 1) as u32))
            .collect();
        lines.push(pts.ok_or_else(|| LoadError::Semantic {
            path: format!("lines[{}]", i + 1),
            message: format!("point outside 1..{}", raw.points),
        })?);
    }
    let gq = QuadrangleData::new(raw.points, raw.s, raw.t, lines).map_err(|v| LoadError::Semantic {
        path: "lines".into(),
        message: v.to_string(),
    })?;
    Ok(NamedQuadrangle { name: raw.name, gq })
}

/// The file text for `gq`, with 1-based points.
pub fn gq_to_json(name: &str, gq: &QuadrangleData) -> String {
    let file = GqFile {
        format: Some(FORMAT.into()),
        name: name.into(),
        points: gq.point_count,
        s: gq.s,
        t: gq.t,
        lines: gq
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| p as u64 + 1).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}
