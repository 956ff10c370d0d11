//! Acceptance run over the bundled corpus: one PASS/FAIL line per
//! criterion. Exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use gqprim::arith::{knapsack, KnapsackMode, LineTestMode, Verdict};
use gqprim::gq::{line_orbits, LineOrbitClass};
use gqprim::graph::{check_parameters, CollinearityGraph, SrgParameters, SrgVerdict};
use gqprim::io::{load_bundle, load_gq, Bundle};
use gqprim::permgroup::{coset_action, PermGroup, Permutation};
use gqprim::pipeline::{run_bundle, CandidateStatus, CaseRecord, Options};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn bundle(name: &str) -> Bundle {
    load_bundle(&data(&format!("{name}.json"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn options(mode: LineTestMode) -> Options {
    Options {
        mode,
        ..Options::default()
    }
}

fn srg_passes(c: &gqprim::pipeline::CandidateRecord) -> bool {
    c.graphs.iter().any(|g| g.srg.as_ref().is_some_and(SrgVerdict::passed))
}

/// The rows of a report that have any order candidate, as
/// (maximal, (s,t), graph found, quadrangle names).
fn table_rows(records: &[CaseRecord]) -> Vec<(String, String, bool, Vec<String>)> {
    records
        .iter()
        .filter(|r| !r.candidates.is_empty())
        .map(|r| {
            let labels: Vec<String> = r.candidates.iter().map(|c| c.order.label()).collect();
            (
                r.maximal.clone(),
                labels.join(" "),
                r.candidates.iter().any(srg_passes),
                r.quadrangles().map(|q| q.name.clone()).collect(),
            )
        })
        .collect()
}

fn expect_rows(name: &str, records: &[CaseRecord], expected: &[(&str, &str, bool, Option<&str>)]) -> Result<(), String> {
    let got = table_rows(records);
    let want: Vec<(String, String, bool, Vec<String>)> = expected
        .iter()
        .map(|&(m, st, graph, gq)| (m.to_string(), st.to_string(), graph, gq.map(String::from).into_iter().collect()))
        .collect();
    if got == want {
        Ok(())
    } else {
        Err(format!("{name}: got {got:?}, expected {want:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let opts = options(LineTestMode::Strict);
    let w = "W(3,2) ≅ Q(4,2)";
    let table: &[(&str, &[(&str, &str, bool, Option<&str>)])] = &[
        ("a6", &[("S4", "(2,2)", true, Some(w)), ("S4", "(2,2)", true, Some(w))]),
        (
            "psp43",
            &[
                ("2^4:A5", "(2,4)", true, Some("Q−(5,2)")),
                ("3^(1+2).2A4", "(3,3)", true, Some("W(3,3)")),
                ("3^3.S4", "(3,3)", true, Some("Q(4,3)")),
                ("2.(A4xA4).2", "(4,2)", true, Some("H(3,4)")),
            ],
        ),
        (
            "psp44",
            &[
                ("2^6.(3xA5)", "(4,4)", true, Some("W(3,4) ≅ Q(4,4)")),
                ("2^6.(3xA5)", "(4,4)", true, Some("W(3,4) ≅ Q(4,4)")),
                ("S6", "(9,15)", false, None),
            ],
        ),
        (
            "psp45",
            &[
                ("5^(1+2):4A5", "(5,5)", true, Some("W(3,5)")),
                ("5^3:(2xA5).2", "(5,5)", true, Some("Q(4,5)")),
                ("2.(A5xA5).2", "(4,16)", false, None),
            ],
        ),
        (
            "psu43",
            &[
                ("3^4:A6", "(3,9)", true, Some("Q−(5,3)")),
                ("3^(1+4):(2.S4)", "(9,3)", true, Some("H(3,9)")),
                ("PSU(3,3)", "(11,4)", false, None),
            ],
        ),
        (
            "psu52",
            &[
                ("2^(1+6):(3^2:3:Q8)", "(4,8)", true, Some("H(4,4)")),
                ("2^(4+4):GL(2,4)", "(8,4)", true, Some("H(4,4)^D")),
                ("(3^2:3:Q8):3xS3", "(9,39)", false, None),
            ],
        ),
    ];
    let mut gqs = 0;
    for (name, rows) in table {
        let records = run_bundle(&bundle(name), &opts);
        expect_rows(name, &records, rows)?;
        gqs += records.iter().map(|r| r.quadrangles().count()).sum::<usize>();
        for r in &records {
            if r.quadrangles().any(|q| !q.group_preserves_lines) {
                return Err(format!("{name}/{}: group does not preserve the extracted lines", r.maximal));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 300.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("6 groups, {gqs} quadrangles, all rows exact, {secs:.1}s"))
}

fn single_candidate(records: &[CaseRecord]) -> Result<(&CaseRecord, &gqprim::pipeline::CandidateRecord), String> {
    let with: Vec<&CaseRecord> = records.iter().filter(|r| !r.candidates.is_empty()).collect();
    match with.as_slice() {
        [r] if r.candidates.len() == 1 => Ok((r, &r.candidates[0])),
        _ => Err(format!(
            "expected a single candidate, got {:?}",
            with.iter()
                .map(|r| (r.maximal.clone(), r.candidates.iter().map(|c| c.order.label()).collect::<Vec<_>>()))
                .collect::<Vec<_>>()
        )),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let m11 = run_bundle(&bundle("m11"), &options(LineTestMode::Strict));
    let (r, c) = single_candidate(&m11)?;
    let lt = c.line_orbits.as_ref().ok_or("M11: line test not run")?;
    if c.order.label() != "(4,8)" || lt.strict != Verdict::Keep || lt.sound != Verdict::Keep {
        return Err(format!("M11: {} strict {:?} sound {:?}", c.order.label(), lt.strict, lt.sound));
    }
    if r.subdegrees.as_deref() != Some(&[8, 12, 24, 24, 24, 24, 48][..]) {
        return Err(format!("M11 subdegrees {:?}", r.subdegrees));
    }
    if srg_passes(c) || r.quadrangles().count() > 0 || c.status != CandidateStatus::NoStronglyRegularGraph {
        return Err(format!("M11: status {:?}", c.status));
    }

    let j1 = run_bundle(&bundle("j1"), &options(LineTestMode::Strict));
    let (_, c) = single_candidate(&j1)?;
    if c.order.label() != "(21,9)" || c.status != CandidateStatus::EliminatedByLineOrbits {
        return Err(format!("J1: {} {:?}", c.order.label(), c.status));
    }

    // (9,3) survives only when k-values may repeat, so the kept row is the sound one
    let j22 = bundle("j2_2");
    let strict = run_bundle(&j22, &options(LineTestMode::Strict));
    let strict_status = strict
        .iter()
        .find(|r| r.maximal == "3.A6.2^2")
        .and_then(|r| r.candidates.first())
        .map(|c| c.status);
    let sound = run_bundle(&j22, &options(LineTestMode::Sound));
    let r = sound.iter().find(|r| r.maximal == "3.A6.2^2").ok_or("J2.2: no 3.A6.2^2 class")?;
    let c = match r.candidates.as_slice() {
        [c] if c.order.label() == "(9,3)" && c.status.survives_arithmetic() => c,
        other => return Err(format!("J2.2: candidates {other:?}")),
    };
    if r.subdegrees.as_deref() != Some(&[36, 108, 135][..]) {
        return Err(format!("J2.2 subdegrees {:?}", r.subdegrees));
    }
    if c.combinations != Some(1) || r.quadrangles().count() > 0 {
        return Err(format!("J2.2: {:?} combinations, status {:?}", c.combinations, c.status));
    }
    Ok(format!(
        "M11 (4,8) 8,12,24^4,48 no SRG; J1 (21,9) eliminated; J2.2 (9,3) 36,108,135 NC=1 no GQ (sound mode; strict gives {:?}); {:.1}s",
        strict_status.ok_or("J2.2 strict run lost the class")?,
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let opts = options(LineTestMode::Strict);
    for name in ["b", "m", "co1"] {
        let records = run_bundle(&bundle(name), &opts);
        let n: usize = records.iter().map(|r| r.candidates.len()).sum();
        if n != 0 {
            return Err(format!("{name}: {n} order candidates"));
        }
    }
    let fi23 = run_bundle(&bundle("fi23"), &opts);
    let (r, c) = single_candidate(&fi23)?;
    if c.order.label() != "(2991,689)" || c.status != CandidateStatus::EliminatedByLineOrbits {
        return Err(format!("Fi23: {} {:?}", c.order.label(), c.status));
    }
    Ok(format!(
        "B, M, Co1 no candidates; Fi23 (2991,689) at {} eliminated by the line-orbit test; {:.1}s",
        r.maximal,
        start.elapsed().as_secs_f64()
    ))
}

fn sorted_sizes(sizes: &[usize]) -> Vec<usize> {
    let mut v = sizes.to_vec();
    v.sort_unstable();
    v
}

fn criterion_4() -> Outcome {
    let w32 = load_gq(&data("w32.json")).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (g, want) in [("a5", vec![5, 10]), ("s5", vec![5, 10]), ("a6", vec![15]), ("s6", vec![15])] {
        let group = bundle(&format!("w32_{g}"));
        let report = line_orbits(&w32.gq, group.group.as_ref().unwrap().generators()).map_err(|e| e.to_string())?;
        if sorted_sizes(&report.orbit_sizes) != want {
            return Err(format!("W(3,2) with {}: {:?}", group.name, report.orbit_sizes));
        }
        parts.push(format!("{} {:?}", group.name, want));
    }
    let h39 = load_gq(&data("h39.json")).map_err(|e| e.to_string())?;
    let psl = bundle("h39_psl34");
    let report = line_orbits(&h39.gq, psl.group.as_ref().unwrap().generators()).map_err(|e| e.to_string())?;
    if sorted_sizes(&report.orbit_sizes) != [56, 56] || report.classification != LineOrbitClass::Hemisystem {
        return Err(format!("H(3,9): {:?} {}", report.orbit_sizes, report.classification));
    }
    Ok(format!("W(3,2): {}; H(3,9) with PSL(3,4): [56, 56] hemisystem", parts.join(", ")))
}

const CORPUS: &[&str] = &[
    "a6", "m11", "m12", "m22", "m23", "psp43", "psp44", "psp45", "psu43", "psu52", "j2", "j2_2",
];
const INDEX_ONLY: &[&str] = &["j1", "fi23", "co1", "b", "m"];

fn naive_order(g: &PermGroup) -> usize {
    let mut seen = HashSet::new();
    let id = Permutation::identity(g.degree());
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn criterion_5_i() -> Outcome {
    let mut checked = 0;
    for name in CORPUS {
        let b = bundle(name);
        let groups = b.group.iter().chain(b.maximals.iter().filter_map(|m| m.group.as_ref()));
        for g in groups {
            if g.order() > &10_000u32.into() {
                continue;
            }
            let n = naive_order(g);
            if g.order() != &n.into() {
                return Err(format!("{name}: chain order {} but {n} elements", g.order()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} groups of order at most 10^4"))
}

/// Every sub-multiset of `values` summing to `target`, as multiplicity
/// vectors over the sorted distinct values.
fn oracle(values: &[u64], target: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << values.len() {
        let mut mult = vec![0u64; distinct.len()];
        let mut sum = 0;
        for (i, &v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += v;
                mult[distinct.binary_search(&v).unwrap()] += 1;
            }
        }
        if sum == target {
            out.insert((distinct.clone(), mult));
        }
    }
    out
}

fn criterion_5_ii() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut solutions = 0;
    for i in 0..200 {
        let n = rng.gen_range(0..=15);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=12)).collect();
        let total: u64 = values.iter().sum();
        let target = rng.gen_range(0..=total.max(1));
        let want = oracle(&values, target);
        let got: Vec<(Vec<u64>, Vec<u64>)> = knapsack(&values, target, KnapsackMode::Bounded)
            .into_iter()
            .map(|s| (s.values, s.multiplicities))
            .collect();
        let got_set: BTreeSet<_> = got.iter().cloned().collect();
        if got_set.len() != got.len() || got_set != want {
            return Err(format!("instance {i}: {values:?} -> {target}: got {got:?}, oracle {want:?}"));
        }
        solutions += want.len();
    }
    Ok(format!("200 instances, {solutions} solutions"))
}

struct CorpusRun {
    records: Vec<(String, Vec<CaseRecord>)>,
}

fn corpus_run(dir: &Path) -> CorpusRun {
    let mut records = Vec::new();
    for mode in [LineTestMode::Strict, LineTestMode::Sound] {
        let opts = Options {
            mode,
            emit_graphs: Some(dir.join("graphs")),
            emit_gq: Some(dir.join("gq")),
            ..Options::default()
        };
        for name in CORPUS.iter().chain(INDEX_ONLY) {
            records.push((name.to_string(), run_bundle(&bundle(name), &opts)));
        }
    }
    CorpusRun { records }
}

fn read_graph(path: &Path, v: usize) -> Result<CollinearityGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let edges: Vec<(usize, usize)> = text
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<usize>().unwrap() - 1);
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    CollinearityGraph::from_edges(v, &edges).map_err(|e| e.to_string())
}

fn criterion_5_iii(run: &CorpusRun) -> Outcome {
    let mut n = 0;
    for (name, records) in &run.records {
        for r in records {
            for c in &r.candidates {
                let (s, t) = (c.order.s.to_string().parse::<u64>().unwrap(), c.order.t.to_string().parse::<u64>().unwrap());
                for g in c.graphs.iter().filter(|g| g.srg.as_ref().is_some_and(SrgVerdict::passed)) {
                    let p = SrgParameters::for_quadrangle(s, t);
                    let file = g.graph_file.as_ref().ok_or("graph not emitted")?;
                    let graph = read_graph(file, p.v as usize)?;
                    let lhs = p.k * (p.k - p.lambda - 1);
                    let rhs = (p.v - p.k - 1) * p.mu;
                    if lhs != rhs || !p.identity_holds() || !check_parameters(&graph, &p).passed() {
                        return Err(format!("{name}/{}: {p:?}", r.maximal));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} passing graphs re-checked"))
}

fn criterion_5_iv(run: &CorpusRun) -> Outcome {
    let mut n = 0;
    for (name, records) in &run.records {
        for r in records {
            for g in r.candidates.iter().flat_map(|c| &c.graphs).filter(|g| g.quadrangle.is_some()) {
                let gq = load_gq(g.gq_file.as_ref().ok_or("GQ not emitted")?).map_err(|e| e.to_string())?;
                gq.gq.verify().map_err(|e| format!("{name}/{}: {e}", r.maximal))?;
                let source = read_graph(g.graph_file.as_ref().ok_or("graph not emitted")?, gq.gq.point_count)?;
                if !gq.gq.collinearity_graph().same_edges(&source) {
                    return Err(format!("{name}/{}: rebuilt graph differs", r.maximal));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} quadrangles verified and rebuilt edge for edge"))
}

fn criterion_5_v(run: &CorpusRun) -> Outcome {
    let mut n = 0;
    let mut seen = HashSet::new();
    for (name, records) in &run.records {
        let b = bundle(name);
        for (r, m) in records.iter().zip(&b.maximals) {
            for g in r.candidates.iter().flat_map(|c| &c.graphs) {
                let Some(file) = g.gq_file.as_ref() else { continue };
                if !seen.insert(file.clone()) {
                    continue;
                }
                let gq = load_gq(file).map_err(|e| e.to_string())?.gq;
                let action = coset_action(b.group.as_ref().unwrap(), m.group.as_ref().unwrap(), 1 << 20)
                    .map_err(|e| e.to_string())?;
                let report = line_orbits(&gq, action.generator_images()).map_err(|e| format!("{name}/{}: {e}", r.maximal))?;
                let st1 = (gq.s * gq.t + 1) as usize;
                if report.orbit_sizes.iter().any(|z| z % st1 != 0) {
                    return Err(format!("{name}/{}: {:?}", r.maximal, report.orbit_sizes));
                }
                n += report.orbit_sizes.len();
            }
        }
    }
    Ok(format!("{n} line orbits of primitive groups on extracted quadrangles"))
}

fn criterion_5_vi(run: &CorpusRun) -> Outcome {
    let (mut n, mut diverging) = (0, 0);
    for (name, records) in &run.records {
        for r in records {
            for c in &r.candidates {
                let Some(l) = &c.line_orbits else { continue };
                if l.strict == Verdict::Keep && l.sound != Verdict::Keep {
                    return Err(format!("{name}/{} {}", r.maximal, c.order.label()));
                }
                if l.diverges() {
                    diverging += 1;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} line tests, {diverging} where only the sound test keeps"))
}

fn main() {
    let mut failed = 0;
    let mut report = |label: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS {label}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL {label}: {detail}");
        }
    };
    report("1 classical groups", criterion_1());
    report("2 desk-scale sporadic groups", criterion_2());
    report("3 screening of the largest sporadics", criterion_3());
    report("4 line orbits on W(3,2) and H(3,9)", criterion_4());
    report("5(i) stabilizer chain orders", criterion_5_i());
    report("5(ii) bounded knapsack against the subset oracle", criterion_5_ii());
    let dir = std::env::temp_dir().join(format!("gqprim-acceptance-{}", std::process::id()));
    let run = corpus_run(&dir);
    report("5(iii) SRG identity", criterion_5_iii(&run));
    report("5(iv) extracted quadrangles", criterion_5_iv(&run));
    report("5(v) line-orbit sizes divisible by st+1", criterion_5_v(&run));
    report("5(vi) strict keeps imply sound keeps", criterion_5_vi(&run));
    let _ = std::fs::remove_dir_all(&dir);
    if failed > 0 {
        std::process::exit(1);
    }
}
