//! Case reports as an aligned text table or as JSON.

use serde::{Deserialize, Serialize};

use super::{LoadError, FORMAT};
use crate::pipeline::{CaseRecord, INDEX_ONLY_NOTE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize, Deserialize)]
struct ReportFile {
    format: String,
    records: Vec<CaseRecord>,
}

/// Sorted subdegrees with repeats collapsed, e.g. `8,12,24^4,48`.
pub fn format_subdegrees(subdegrees: &[usize]) -> String {
    let mut sorted = subdegrees.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&d| d == sorted[i]).count();
        parts.push(if j == 1 {
            sorted[i].to_string()
        } else {
            format!("{}^{j}", sorted[i])
        });
        i += j;
    }
    parts.join(",")
}

fn join_or_dash(items: Vec<String>) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join(" ")
    }
}

fn row(r: &CaseRecord) -> [String; 7] {
    let all = r.candidates.iter().map(|c| c.order.label()).collect();
    let kept = r.survivors().map(|c| c.order.label()).collect();
    let subdegrees = r.subdegrees.as_deref().map_or("-".into(), format_subdegrees);
    let nc = r
        .survivors()
        .map(|c| c.combinations.map_or("?".into(), |n| n.to_string()))
        .collect();
    let mut gq: Vec<String> = r.quadrangles().map(|q| q.name.clone()).collect();
    if gq.is_empty() && r.resolution == crate::pipeline::Resolution::UnresolvedByMachine {
        gq.push("unresolved".into());
    }
    [
        r.group.clone(),
        r.maximal.clone(),
        join_or_dash(all),
        join_or_dash(kept),
        subdegrees,
        join_or_dash(nc),
        join_or_dash(gq),
    ]
}

fn text_table(records: &[CaseRecord]) -> String {
    let header = ["Group", "Maximal", "(s,t)", "(s,t)*", "Subdegrees", "NC", "GQ"].map(String::from);
    let rows: Vec<[String; 7]> = std::iter::once(header).chain(records.iter().map(row)).collect();
    let mut widths = [0usize; 7];
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("-+-"));
            out.push('\n');
        }
    }
    let mut index_only: Vec<(&str, usize)> = Vec::new();
    for r in records {
        for note in &r.notes {
            if note == INDEX_ONLY_NOTE {
                match index_only.iter_mut().find(|(g, _)| *g == r.group) {
                    Some((_, n)) => *n += 1,
                    None => index_only.push((&r.group, 1)),
                }
                continue;
            }
            out.push_str(&format!("note: {}/{}: {note}\n", r.group, r.maximal));
        }
    }
    for (group, n) in index_only {
        out.push_str(&format!("note: {group}: {n} maximal classes screened from indices only ({INDEX_ONLY_NOTE})\n"));
    }
    out
}

pub fn emit_report(records: &[CaseRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text_table(records),
        ReportFormat::Json => {
            let file = ReportFile {
                format: FORMAT.into(),
                records: records.to_vec(),
            };
            let mut s = serde_json::to_string_pretty(&file).expect("records serialise");
            s.push('\n');
            s
        }
    }
}

pub fn parse_report(text: &str) -> Result<Vec<CaseRecord>, LoadError> {
    let file: ReportFile = serde_json::from_str(text).map_err(LoadError::syntax)?;
    if file.format != FORMAT {
        return Err(LoadError::Semantic {
            path: "format".into(),
            message: format!("unsupported format {:?}", file.format),
        });
    }
    Ok(file.records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdegree_runs() {
        assert_eq!(format_subdegrees(&[24, 8, 48, 24, 12, 24, 24]), "8,12,24^4,48");
        assert_eq!(format_subdegrees(&[]), "");
    }

    #[test]
    fn empty_table_has_header() {
        let t = emit_report(&[], ReportFormat::Text);
        assert_eq!(t.lines().count(), 2);
        assert!(t.starts_with("Group"));
        assert!(parse_report(&emit_report(&[], ReportFormat::Json)).unwrap().is_empty());
    }
}
