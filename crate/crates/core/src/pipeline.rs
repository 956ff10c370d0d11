//! The elimination pipeline: for each class of maximal subgroups, list the
//! feasible quadrangle orders for the coset action, discard them with the
//! arithmetic tests, and build and check the candidate collinearity graphs
//! for whatever survives.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    enumerate_orders, knapsack, line_orbits_test, orders_of_elements_witness, KnapsackMode, LineTestMode,
    OrderCandidate, Verdict,
};
use crate::gq::{extract_gq, line_permutation, PseudoGeometric};
use crate::graph::{build_orbital_graph, check_srg, GraphError, GraphSource, SrgVerdict};
use crate::io::{decimal, gq_to_json, Bundle, Maximal};
use crate::permgroup::{
    coset_action_until, random_word, CosetActionData, GroupError, PermGroup, SuborbitId, DEFAULT_DEGREE_CAP,
};

/// Marks a record whose index and order were taken from the bundle
/// without recomputation.
pub const INDEX_ONLY_NOTE: &str = "unverifiable: index-only";

#[derive(Clone, Debug)]
pub struct Options {
    pub mode: LineTestMode,
    /// Drop the k-values 1 and t in the line-orbit test.
    pub refine_k: bool,
    pub degree_cap: usize,
    pub stage_timeout: Duration,
    /// Seed for the random words that re-check each stabilizer chain.
    pub seed: u64,
    pub emit_graphs: Option<PathBuf>,
    pub emit_gq: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            mode: LineTestMode::Strict,
            refine_k: false,
            degree_cap: DEFAULT_DEGREE_CAP,
            stage_timeout: Duration::from_secs(600),
            seed: 1,
            emit_graphs: None,
            emit_gq: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    Resolved,
    UnresolvedByMachine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateStatus {
    EliminatedByOrdersOfElements,
    EliminatedByLineOrbits,
    NoNeighbourhood,
    NoStronglyRegularGraph,
    PseudoGeometricOnly,
    Quadrangle,
    Unresolved,
}

impl CandidateStatus {
    pub fn survives_arithmetic(self) -> bool {
        !matches!(
            self,
            CandidateStatus::EliminatedByOrdersOfElements | CandidateStatus::EliminatedByLineOrbits
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdersTestRecord {
    pub verdict: Verdict,
    /// The least prime that eliminates the candidate.
    #[serde(with = "decimal::option")]
    pub witness: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTestRecord {
    #[serde(with = "decimal::vec")]
    pub k_values: Vec<BigUint>,
    pub refine_k: bool,
    pub strict: Verdict,
    pub sound: Verdict,
    /// The verdict of the configured mode, which decides the case.
    pub mode: LineTestMode,
    pub verdict: Verdict,
}

impl LineTestRecord {
    /// Strict mode eliminates a candidate that the sound relaxation keeps.
    pub fn diverges(&self) -> bool {
        self.strict == Verdict::Eliminate && self.sound == Verdict::Keep
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangleRecord {
    pub name: String,
    pub s: u64,
    pub t: u64,
    pub lines: usize,
    /// Every generator of the group maps lines to lines.
    pub group_preserves_lines: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    /// Suborbit ids (0-based, in the order of the coset action) forming the
    /// neighbourhood of the base point.
    pub suborbits: Vec<usize>,
    pub sizes: Vec<usize>,
    /// `None` when the union is not closed under pairing and no graph was built.
    pub srg: Option<SrgVerdict>,
    pub pseudo_geometric: Option<PseudoGeometric>,
    pub quadrangle: Option<QuadrangleRecord>,
    /// Edge list written for this graph, if requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gq_file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub order: OrderCandidate,
    pub orders_of_elements: OrdersTestRecord,
    pub line_orbits: Option<LineTestRecord>,
    /// Number of suborbit sets of total size `s(t+1)`.
    pub combinations: Option<usize>,
    pub graphs: Vec<GraphRecord>,
    pub status: CandidateStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub group: String,
    pub maximal: String,
    #[serde(with = "decimal")]
    pub num_points: BigUint,
    pub novelty: Option<bool>,
    pub candidates: Vec<CandidateRecord>,
    /// Sorted, without the trivial suborbit.
    pub subdegrees: Option<Vec<usize>>,
    pub resolution: Resolution,
    pub notes: Vec<String>,
}

impl CaseRecord {
    pub fn quadrangles(&self) -> impl Iterator<Item = &QuadrangleRecord> {
        self.candidates
            .iter()
            .flat_map(|c| c.graphs.iter().filter_map(|g| g.quadrangle.as_ref()))
    }

    pub fn survivors(&self) -> impl Iterator<Item = &CandidateRecord> {
        self.candidates.iter().filter(|c| c.status.survives_arithmetic())
    }
}

/// The arithmetic stage for one candidate.
fn arithmetic(
    cand: &OrderCandidate,
    group_order: &BigUint,
    maximal: &Maximal,
    indices: &[BigUint],
    options: &Options,
) -> CandidateRecord {
    let witness = orders_of_elements_witness(group_order, &maximal.order, cand);
    let orders_of_elements = OrdersTestRecord {
        verdict: if witness.is_some() {
            Verdict::Eliminate
        } else {
            Verdict::Keep
        },
        witness,
    };
    let mut record = CandidateRecord {
        order: cand.clone(),
        orders_of_elements,
        line_orbits: None,
        combinations: None,
        graphs: Vec::new(),
        status: CandidateStatus::EliminatedByOrdersOfElements,
    };
    if !record.orders_of_elements.verdict.keeps() {
        return record;
    }
    let strict = line_orbits_test(indices, cand, LineTestMode::Strict, options.refine_k);
    let sound = line_orbits_test(indices, cand, LineTestMode::Sound, options.refine_k);
    assert!(
        !(strict.verdict.keeps() && !sound.verdict.keeps()),
        "sound line-orbit test eliminated a candidate that strict mode keeps"
    );
    let verdict = match options.mode {
        LineTestMode::Strict => strict.verdict,
        LineTestMode::Sound => sound.verdict,
    };
    record.line_orbits = Some(LineTestRecord {
        k_values: strict.k_values,
        refine_k: options.refine_k,
        strict: strict.verdict,
        sound: sound.verdict,
        mode: options.mode,
        verdict,
    });
    record.status = if verdict.keeps() {
        CandidateStatus::Unresolved
    } else {
        CandidateStatus::EliminatedByLineOrbits
    };
    record
}

/// All sets of suborbits whose sizes sum to `s(t+1)`: the size-multiset
/// solutions of the knapsack, each expanded over the choice of suborbits
/// of equal size.
pub fn neighborhood_combinations(action: &CosetActionData, cand: &OrderCandidate) -> Vec<Vec<SuborbitId>> {
    let target = &cand.s * (&cand.t + 1u32);
    let Some(target) = target.to_u64() else {
        return Vec::new();
    };
    let sizes: Vec<u64> = action.subdegrees().iter().map(|&d| d as u64).collect();
    let mut out = Vec::new();
    for sol in knapsack(&sizes, target, KnapsackMode::Bounded) {
        // for each size, the subsets of that many suborbits of that size
        let mut partial: Vec<Vec<SuborbitId>> = vec![Vec::new()];
        for (&v, &m) in sol.values.iter().zip(&sol.multiplicities) {
            if m == 0 {
                continue;
            }
            let ids: Vec<SuborbitId> = (0..sizes.len())
                .filter(|&i| sizes[i] == v)
                .map(SuborbitId)
                .collect();
            let choices = subsets(&ids, m as usize);
            partial = partial
                .iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.extend_from_slice(c);
                        q
                    })
                })
                .collect();
        }
        for mut p in partial {
            p.sort();
            out.push(p);
        }
    }
    out
}

/// `k`-subsets of `items` in lexicographic order.
fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x.clone());
            out.push(rest);
        }
    }
    out
}

/// A file-name-safe stem naming one candidate graph of one class.
fn file_stem(group: &str, position: usize, maximal: &str, cand: &OrderCandidate, n: usize) -> String {
    format!("{group}_{position}_{maximal}_{}_{}_{n}", cand.s, cand.t)
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect()
}

/// Re-checks a stabilizer chain by sifting random words in the generators.
fn chain_is_consistent(g: &PermGroup, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.generators().iter().all(|x| g.contains(x))
        && (0..20).all(|_| g.contains(&random_word(&mut rng, g.generators(), g.degree(), 16)))
}

/// Runs the whole pipeline for one class of maximal subgroups.
pub fn run_case(bundle: &Bundle, maximal: &Maximal, options: &Options) -> CaseRecord {
    let indices = bundle.indices();
    let mut record = CaseRecord {
        group: bundle.name.clone(),
        maximal: maximal.name.clone(),
        num_points: maximal.index.clone(),
        novelty: maximal.novelty,
        candidates: Vec::new(),
        subdegrees: None,
        resolution: Resolution::Resolved,
        notes: Vec::new(),
    };
    if !maximal.verified {
        record.notes.push(INDEX_ONLY_NOTE.into());
    }
    record.candidates = enumerate_orders(&maximal.index)
        .iter()
        .map(|c| arithmetic(c, &bundle.order, maximal, &indices, options))
        .collect();
    for c in &record.candidates {
        if let Some(l) = c.line_orbits.as_ref().filter(|l| l.diverges()) {
            record.notes.push(format!(
                "strict/sound divergence at {}: strict mode eliminates, sound mode keeps (k-values {})",
                c.order.label(),
                l.k_values.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
    }
    if maximal.novelty == Some(true) {
        record.notes.push("novelty: any inheritance from the simple group is left to a manual argument".into());
    }
    if record.survivors().next().is_none() {
        return finish(record);
    }
    let (Some(g), Some(m)) = (&bundle.group, &maximal.group) else {
        record
            .notes
            .push("candidates survive the arithmetic tests but no generators are available".into());
        return finish(record);
    };
    if !chain_is_consistent(g, options.seed) || !chain_is_consistent(m, options.seed) {
        record.notes.push("stabilizer chain failed a random membership check".into());
        return finish(record);
    }
    let deadline = Instant::now() + options.stage_timeout;
    let action = match coset_action_until(g, m, options.degree_cap, Some(deadline)) {
        Ok(a) => a,
        Err(GroupError::ResourceLimit { index, cap }) => {
            record
                .notes
                .push(format!("coset action of degree {index} exceeds the cap of {cap}"));
            return finish(record);
        }
        Err(GroupError::TimedOut) => {
            record.notes.push("coset action exceeded the stage time budget".into());
            return finish(record);
        }
        Err(e) => {
            record.notes.push(format!("coset action failed: {e}"));
            return finish(record);
        }
    };
    record.subdegrees = Some(action.sorted_subdegrees());
    let deadline = Instant::now() + options.stage_timeout;
    for i in 0..record.candidates.len() {
        if !record.candidates[i].status.survives_arithmetic() {
            continue;
        }
        let cand = record.candidates[i].order.clone();
        let combos = neighborhood_combinations(&action, &cand);
        let mut graphs = Vec::new();
        let mut status = CandidateStatus::NoNeighbourhood;
        let mut timed_out = false;
        for (n, ids) in combos.iter().enumerate() {
            if Instant::now() > deadline {
                timed_out = true;
                break;
            }
            let stem = file_stem(&record.group, maximal.position, &record.maximal, &cand, n + 1);
            let case = format!("{}/{}", record.group, record.maximal);
            let (graph, found) = graph_stage(&case, &stem, &action, &cand, ids, options, &mut record.notes);
            graphs.push(graph);
            status = status.max_with(found);
        }
        if timed_out {
            record
                .notes
                .push(format!("graph stage for {} exceeded the stage time budget", cand.label()));
            status = CandidateStatus::Unresolved;
        }
        let c = &mut record.candidates[i];
        c.combinations = Some(combos.len());
        c.graphs = graphs;
        c.status = status;
    }
    finish(record)
}

impl CandidateStatus {
    /// The more informative of two outcomes for the same candidate.
    fn max_with(self, other: CandidateStatus) -> CandidateStatus {
        fn rank(s: CandidateStatus) -> u8 {
            match s {
                CandidateStatus::NoNeighbourhood => 0,
                CandidateStatus::NoStronglyRegularGraph => 1,
                CandidateStatus::PseudoGeometricOnly => 2,
                CandidateStatus::Quadrangle => 3,
                _ => 4,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// Writes `contents` to `dir/name`, noting any failure.
fn emit(dir: &Path, name: &str, contents: &str, notes: &mut Vec<String>) -> Option<PathBuf> {
    let path = dir.join(name);
    match std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, contents)) {
        Ok(()) => Some(path),
        Err(e) => {
            notes.push(format!("could not write {}: {e}", path.display()));
            None
        }
    }
}

fn graph_stage(
    case: &str,
    stem: &str,
    action: &CosetActionData,
    cand: &OrderCandidate,
    ids: &[SuborbitId],
    options: &Options,
    notes: &mut Vec<String>,
) -> (GraphRecord, CandidateStatus) {
    let mut out = GraphRecord {
        suborbits: ids.iter().map(|i| i.0).collect(),
        sizes: ids.iter().map(|&i| action.suborbit(i).len()).collect(),
        srg: None,
        pseudo_geometric: None,
        quadrangle: None,
        graph_file: None,
        gq_file: None,
    };
    let mut graph = match build_orbital_graph(action, ids) {
        Ok(graph) => graph,
        Err(GraphError::NotSelfPaired { .. }) => return (out, CandidateStatus::NoStronglyRegularGraph),
        Err(e) => unreachable!("orbital graph construction: {e}"),
    };
    graph.source = Some(GraphSource {
        case: case.to_string(),
        suborbits: out.suborbits.clone(),
    });
    if let Some(dir) = &options.emit_graphs {
        out.graph_file = emit(dir, &format!("{stem}.edges"), &graph.edge_list_text(), notes);
    }
    let srg = check_srg(&graph, cand);
    let passed = srg.passed();
    out.srg = Some(srg);
    if !passed {
        return (out, CandidateStatus::NoStronglyRegularGraph);
    }
    match extract_gq(&graph, cand) {
        Ok(gq) => {
            let preserves = action
                .generator_images()
                .iter()
                .all(|x| line_permutation(&gq, x).is_ok());
            let name = gq.classical_name();
            if let Some(dir) = &options.emit_gq {
                out.gq_file = emit(dir, &format!("{stem}.json"), &gq_to_json(&name, &gq), notes);
            }
            out.quadrangle = Some(QuadrangleRecord {
                name,
                s: gq.s,
                t: gq.t,
                lines: gq.line_count(),
                group_preserves_lines: preserves,
            });
            (out, CandidateStatus::Quadrangle)
        }
        Err(p) => {
            out.pseudo_geometric = Some(p);
            (out, CandidateStatus::PseudoGeometricOnly)
        }
    }
}

fn finish(mut record: CaseRecord) -> CaseRecord {
    let open = record
        .candidates
        .iter()
        .any(|c| c.status == CandidateStatus::Unresolved);
    record.resolution = if open {
        Resolution::UnresolvedByMachine
    } else {
        Resolution::Resolved
    };
    record
}

/// One record per class of maximal subgroups, in bundle order.
pub fn run_bundle(bundle: &Bundle, options: &Options) -> Vec<CaseRecord> {
    bundle
        .maximals
        .par_iter()
        .map(|m| run_case(bundle, m, options))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    /// Every case resolved without a quadrangle.
    NoQuadrangle,
    QuadranglesFound,
    Unresolved,
}

pub fn overall_verdict(records: &[CaseRecord]) -> OverallVerdict {
    if records.iter().any(|r| r.resolution == Resolution::UnresolvedByMachine) {
        OverallVerdict::Unresolved
    } else if records.iter().any(|r| r.quadrangles().next().is_some()) {
        OverallVerdict::QuadranglesFound
    } else {
        OverallVerdict::NoQuadrangle
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_order() {
        assert_eq!(subsets(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(&[1, 2], 0), vec![Vec::<i32>::new()]);
        assert!(subsets(&[1], 2).is_empty());
    }

    #[test]
    fn monster_style_index_only_case_resolves() {
        let order = BigUint::from(175_560u32);
        let indices: Vec<BigUint> = [266u32, 1045, 1463, 1540, 1596, 2926, 4180]
            .iter()
            .map(|&b| BigUint::from(b))
            .collect();
        let bundle = Bundle::index_only("J1", order, &indices).unwrap();
        let records = run_bundle(&bundle, &Options::default());
        assert_eq!(records.len(), 7);
        let last = &records[6];
        assert_eq!(last.candidates.len(), 1);
        assert_eq!(last.candidates[0].status, CandidateStatus::EliminatedByLineOrbits);
        assert_eq!(overall_verdict(&records), OverallVerdict::NoQuadrangle);
    }
}
