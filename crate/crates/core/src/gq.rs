//! Generalised quadrangles as explicit point-line incidence structures:
//! extraction from a collinearity graph, axiom checks, duals, line-orbits
//! under a group, and k-covers.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::OrderCandidate;
use crate::graph::CollinearityGraph;
use crate::permgroup::{orbits_of, Permutation};

/// A point-line geometry of order `(s, t)` on points `0..point_count`.
/// Each line is a sorted list of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangleData {
    pub point_count: usize,
    pub s: u64,
    pub t: u64,
    pub lines: Vec<Vec<u32>>,
}

/// The first axiom an incidence structure violates.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomViolation {
    #[error("line {line} has {found} points, expected s+1 = {expected}")]
    LineSize { line: usize, expected: u64, found: u64 },
    #[error("line {line} mentions point {point}, outside 1..{points}")]
    PointOutOfRange { line: usize, point: u64, points: usize },
    #[error("line {line} repeats a point")]
    RepeatedPoint { line: usize },
    #[error("{found} lines, expected (t+1)(st+1) = {expected}")]
    LineCount { expected: u64, found: u64 },
    #[error("{found} points, expected (s+1)(st+1) = {expected}")]
    PointCount { expected: u64, found: u64 },
    #[error("point {point} lies on {found} lines, expected t+1 = {expected}")]
    PointDegree { point: usize, expected: u64, found: u64 },
    #[error("points {p} and {q} lie on two common lines (axiom i)")]
    TwoCommonLines { p: usize, q: usize },
    #[error("point {point} is collinear with {found} points of line {line}, expected 1 (axiom ii)")]
    Collinearity { point: usize, line: usize, found: u64 },
}

impl AxiomViolation {
    /// Shift the point and line numbers to the 1-based numbering of files.
    fn one_based(self) -> Self {
        use AxiomViolation::*;
        match self {
            LineSize { line, expected, found } => LineSize { line: line + 1, expected, found },
            PointOutOfRange { line, point, points } => PointOutOfRange { line: line + 1, point, points },
            RepeatedPoint { line } => RepeatedPoint { line: line + 1 },
            PointDegree { point, expected, found } => PointDegree { point: point + 1, expected, found },
            TwoCommonLines { p, q } => TwoCommonLines { p: p + 1, q: q + 1 },
            Collinearity { point, line, found } => Collinearity { point: point + 1, line: line + 1, found },
            other => other,
        }
    }
}

impl QuadrangleData {
    /// Checks every quadrangle axiom, sorting lines first. Violations are
    /// reported with 1-based point and line numbers.
    pub fn new(point_count: usize, s: u64, t: u64, mut lines: Vec<Vec<u32>>) -> Result<Self, AxiomViolation> {
        for l in lines.iter_mut() {
            l.sort_unstable();
        }
        let gq = QuadrangleData { point_count, s, t, lines };
        gq.verify().map_err(AxiomViolation::one_based)?;
        Ok(gq)
    }

    pub fn order(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Lines through each point, in increasing order.
    pub fn lines_on_points(&self) -> Vec<Vec<u32>> {
        let mut on = vec![Vec::new(); self.point_count];
        for (i, l) in self.lines.iter().enumerate() {
            for &p in l {
                on[p as usize].push(i as u32);
            }
        }
        on
    }

    /// Exhaustive check of the axioms, with 0-based numbers in the error.
    pub fn verify(&self) -> Result<(), AxiomViolation> {
        let (s, t) = (self.s, self.t);
        let n = self.point_count;
        let st1 = s * t + 1;
        if n as u64 != (s + 1) * st1 {
            return Err(AxiomViolation::PointCount {
                expected: (s + 1) * st1,
                found: n as u64,
            });
        }
        if self.lines.len() as u64 != (t + 1) * st1 {
            return Err(AxiomViolation::LineCount {
                expected: (t + 1) * st1,
                found: self.lines.len() as u64,
            });
        }
        for (i, l) in self.lines.iter().enumerate() {
            if l.len() as u64 != s + 1 {
                return Err(AxiomViolation::LineSize {
                    line: i,
                    expected: s + 1,
                    found: l.len() as u64,
                });
            }
            if let Some(&p) = l.iter().find(|&&p| p as usize >= n) {
                return Err(AxiomViolation::PointOutOfRange {
                    line: i,
                    point: p as u64 + 1,
                    points: n,
                });
            }
            if l.windows(2).any(|w| w[0] >= w[1]) {
                return Err(AxiomViolation::RepeatedPoint { line: i });
            }
        }
        let on = self.lines_on_points();
        if let Some(p) = (0..n).find(|&p| on[p].len() as u64 != t + 1) {
            return Err(AxiomViolation::PointDegree {
                point: p,
                expected: t + 1,
                found: on[p].len() as u64,
            });
        }
        // Axiom (i): the line through each collinear pair is unique.
        let mut line_of: HashMap<(u32, u32), u32> = HashMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for (a, &p) in l.iter().enumerate() {
                for &q in &l[a + 1..] {
                    if line_of.insert((p, q), i as u32).is_some() {
                        return Err(AxiomViolation::TwoCommonLines {
                            p: p as usize,
                            q: q as usize,
                        });
                    }
                }
            }
        }
        // Axiom (ii): count, for each point p, the points of every line
        // collinear with p, via the lines through p's neighbours.
        let failure = (0..n).into_par_iter().find_map_first(|p| {
            let mut count = vec![0u32; self.lines.len()];
            for &l in &on[p] {
                for &q in &self.lines[l as usize] {
                    if q as usize == p {
                        continue;
                    }
                    for &m in &on[q as usize] {
                        if m != l {
                            count[m as usize] += 1;
                        }
                    }
                }
            }
            let through_p = |m: usize| on[p].binary_search(&(m as u32)).is_ok();
            (0..self.lines.len())
                .find(|&m| !through_p(m) && count[m] != 1)
                .map(|m| AxiomViolation::Collinearity {
                    point: p,
                    line: m,
                    found: count[m] as u64,
                })
        });
        match failure {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    /// Points collinear when they share a line.
    pub fn collinearity_graph(&self) -> CollinearityGraph {
        let mut edges = Vec::new();
        for l in &self.lines {
            for (a, &p) in l.iter().enumerate() {
                for &q in &l[a + 1..] {
                    edges.push((p as usize, q as usize));
                }
            }
        }
        CollinearityGraph::from_edges(self.point_count, &edges).expect("lines hold valid points")
    }

    /// Points and lines swapped; a quadrangle of order `(t, s)`.
    pub fn dual(&self) -> QuadrangleData {
        QuadrangleData {
            point_count: self.lines.len(),
            s: self.t,
            t: self.s,
            lines: self.lines_on_points(),
        }
    }

    fn line_index(&self) -> HashMap<&[u32], usize> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_slice(), i))
            .collect()
    }

    /// Whether every point is regular: `|{p,q}^⊥⊥| = t+1` for all
    /// non-collinear `p`, `q`.
    pub fn all_points_regular(&self) -> bool {
        let g = self.collinearity_graph();
        let n = self.point_count;
        let t1 = self.t as usize + 1;
        (0..n).into_par_iter().all(|p| {
            (p + 1..n).filter(|&q| !g.is_adjacent(p, q)).all(|q| {
                let perp = g.common_neighbour_list(p, q);
                // points collinear with (or equal to) every point of perp
                let mut hits = vec![0u32; n];
                for &x in &perp {
                    for &y in g.neighbours(x as usize) {
                        hits[y as usize] += 1;
                    }
                }
                let span = hits.iter().filter(|&&h| h as usize == perp.len()).count();
                span == t1
            })
        })
    }

    /// Name of the classical quadrangle this one is identified with, using
    /// the order and the regularity of points and lines. Orders without a
    /// classical model give `GQ(s,t)`.
    pub fn classical_name(&self) -> String {
        let (s, t) = (self.s, self.t);
        if s == t {
            let points = self.all_points_regular();
            let lines = self.dual().all_points_regular();
            return match (points, lines) {
                (true, true) if s % 2 == 0 => format!("W(3,{s}) ≅ Q(4,{s})"),
                (true, _) => format!("W(3,{s})"),
                (false, true) => format!("Q(4,{s})"),
                _ => format!("GQ({s},{t})"),
            };
        }
        if t == s * s {
            return format!("Q−(5,{s})");
        }
        if s == t * t {
            return format!("H(3,{s})");
        }
        if let Some(q) = exact_root(s, 2).filter(|&q| t == q * q * q) {
            return format!("H(4,{})", q * q);
        }
        if let Some(q) = exact_root(t, 2).filter(|&q| s == q * q * q) {
            return format!("H(4,{})^D", q * q);
        }
        format!("GQ({s},{t})")
    }
}

fn exact_root(x: u64, k: u32) -> Option<u64> {
    let r = (x as f64).powf(1.0 / k as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_pow(k) == Some(x))
}

/// Why a graph is not the collinearity graph of a quadrangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PseudoGeometric {
    /// The common neighbourhood of an edge plus the edge is not a clique
    /// of size `s+1`.
    NotAClique { p: usize, q: usize },
    Axiom { violation: AxiomViolation },
    OrderTooLarge,
}

impl fmt::Display for PseudoGeometric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoGeometric::NotAClique { p, q } => write!(
                f,
                "edge {{{}, {}}} does not span a clique of size s+1",
                p + 1,
                q + 1
            ),
            PseudoGeometric::Axiom { violation } => write!(f, "{violation}"),
            PseudoGeometric::OrderTooLarge => write!(f, "order does not fit in 64 bits"),
        }
    }
}

/// Recovers the lines of a quadrangle from its collinearity graph: the
/// line through an edge `{p,q}` is `{p,q}` plus their common neighbours.
pub fn extract_gq(g: &CollinearityGraph, cand: &OrderCandidate) -> Result<QuadrangleData, PseudoGeometric> {
    use num_traits::ToPrimitive;
    let (Some(s), Some(t)) = (cand.s.to_u64(), cand.t.to_u64()) else {
        return Err(PseudoGeometric::OrderTooLarge);
    };
    let n = g.vertex_count();
    let mut lines: Vec<Vec<u32>> = Vec::new();
    let mut on: Vec<Vec<u32>> = vec![Vec::new(); n];
    for p in 0..n {
        for &q in g.neighbours(p) {
            let q = q as usize;
            if q < p || on[p].iter().any(|&l| lines[l as usize].binary_search(&(q as u32)).is_ok()) {
                continue;
            }
            let mut line = g.common_neighbour_list(p, q);
            line.push(p as u32);
            line.push(q as u32);
            line.sort_unstable();
            let clique = line.len() as u64 == s + 1
                && line.iter().enumerate().all(|(a, &x)| {
                    line[a + 1..].iter().all(|&y| g.is_adjacent(x as usize, y as usize))
                });
            if !clique {
                return Err(PseudoGeometric::NotAClique { p, q });
            }
            for &x in &line {
                on[x as usize].push(lines.len() as u32);
            }
            lines.push(line);
        }
    }
    lines.sort();
    let gq = QuadrangleData {
        point_count: n,
        s,
        t,
        lines,
    };
    gq.verify().map_err(|violation| PseudoGeometric::Axiom { violation })?;
    Ok(gq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineOrbitClass {
    LineTransitive,
    Hemisystem,
    Other,
}

impl fmt::Display for LineOrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineOrbitClass::LineTransitive => "line-transitive",
            LineOrbitClass::Hemisystem => "hemisystem",
            LineOrbitClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOrbitReport {
    /// Orbits listed by least line index.
    pub orbits: Vec<Vec<u32>>,
    pub orbit_sizes: Vec<usize>,
    /// Lines of each orbit through any one point, when the group is
    /// transitive on points; otherwise the per-orbit cover count if it is
    /// constant, and `None` if it is not.
    pub k_values: Vec<Option<u64>>,
    pub point_transitive: bool,
    pub classification: LineOrbitClass,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineOrbitError {
    #[error("generator {generator} has degree {found}, expected {expected}")]
    Degree { generator: usize, expected: usize, found: usize },
    #[error("generator {generator} maps line {line} to a set that is not a line")]
    NotAnAutomorphism { generator: usize, line: usize },
    #[error("line-orbit of size {size} is not a multiple of st+1 = {st1}")]
    OrbitSize { size: usize, st1: u64 },
}

/// The images of each line under a point permutation, or the first line
/// whose image is not a line.
pub fn line_permutation(gq: &QuadrangleData, g: &Permutation) -> Result<Permutation, usize> {
    let index = gq.line_index();
    line_permutation_with(gq, &index, g)
}

fn line_permutation_with(
    gq: &QuadrangleData,
    index: &HashMap<&[u32], usize>,
    g: &Permutation,
) -> Result<Permutation, usize> {
    let mut images = Vec::with_capacity(gq.lines.len());
    for (i, l) in gq.lines.iter().enumerate() {
        let mut img: Vec<u32> = l.iter().map(|&p| g.image(p as usize) as u32).collect();
        img.sort_unstable();
        match index.get(img.as_slice()) {
            Some(&j) => images.push(j as u32),
            None => return Err(i),
        }
    }
    Ok(Permutation::from_images(images).expect("distinct lines have distinct images"))
}

/// Orbits of the group generated by `gens` on the lines of `gq`.
pub fn line_orbits(gq: &QuadrangleData, gens: &[Permutation]) -> Result<LineOrbitReport, LineOrbitError> {
    let index = gq.line_index();
    let mut line_gens = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        if g.degree() != gq.point_count {
            return Err(LineOrbitError::Degree {
                generator: k + 1,
                expected: gq.point_count,
                found: g.degree(),
            });
        }
        let img = line_permutation_with(gq, &index, g).map_err(|line| LineOrbitError::NotAnAutomorphism {
            generator: k + 1,
            line: line + 1,
        })?;
        line_gens.push(img);
    }
    let orbits: Vec<Vec<u32>> = orbits_of(gq.lines.len(), &line_gens)
        .into_iter()
        .map(|o| o.into_iter().map(|x| x as u32).collect())
        .collect();
    let st1 = gq.s * gq.t + 1;
    let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    if let Some(&size) = orbit_sizes.iter().find(|&&z| z as u64 % st1 != 0) {
        return Err(LineOrbitError::OrbitSize { size, st1 });
    }
    let point_transitive = orbits_of(gq.point_count, gens).len() == 1;
    let k_values: Vec<Option<u64>> = orbits.iter().map(|o| cover_degree(gq, o)).collect();
    let half = gq.lines.len() / 2;
    let classification = if orbits.len() == 1 {
        LineOrbitClass::LineTransitive
    } else if orbits.len() == 2
        && orbit_sizes.iter().all(|&z| 2 * z == gq.lines.len() && z == half)
        && gq.t % 2 == 1
        && k_values.iter().all(|&k| k == Some(gq.t.div_ceil(2)))
    {
        LineOrbitClass::Hemisystem
    } else {
        LineOrbitClass::Other
    };
    Ok(LineOrbitReport {
        orbits,
        orbit_sizes,
        k_values,
        point_transitive,
        classification,
    })
}

fn cover_degree(gq: &QuadrangleData, subset: &[u32]) -> Option<u64> {
    let mut count = vec![0u64; gq.point_count];
    for &l in subset {
        for &p in &gq.lines[l as usize] {
            count[p as usize] += 1;
        }
    }
    let k = *count.first()?;
    count.iter().all(|&c| c == k).then_some(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "snake_case")]
pub enum CoverVerdict {
    Cover(u64),
    NotACover,
}

/// `k` if every point lies on exactly `k` lines of `subset` (indices into
/// `gq.lines`).
pub fn verify_cover(gq: &QuadrangleData, subset: &[u32]) -> CoverVerdict {
    match cover_degree(gq, subset) {
        Some(k) if k > 0 => CoverVerdict::Cover(k),
        _ => CoverVerdict::NotACover,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// W(3,2) on the 15 duads of {0..5}; lines are the synthemes.
    pub(crate) fn w32() -> QuadrangleData {
        let duads: Vec<(u32, u32)> = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
            .collect();
        let id = |a: u32, b: u32| duads.iter().position(|&d| d == (a.min(b), a.max(b))).unwrap() as u32;
        let mut lines = Vec::new();
        for (i, &(a, b)) in duads.iter().enumerate() {
            for (j, &(c, d)) in duads.iter().enumerate().skip(i + 1) {
                if [a, b].iter().any(|x| [c, d].contains(x)) {
                    continue;
                }
                let rest: Vec<u32> = (0..6).filter(|x| ![a, b, c, d].contains(x)).collect();
                let k = id(rest[0], rest[1]) as usize;
                if k > j {
                    lines.push(vec![i as u32, j as u32, k as u32]);
                }
            }
        }
        QuadrangleData::new(15, 2, 2, lines).unwrap()
    }

    fn duad_perm(images: [u32; 6]) -> Permutation {
        let duads: Vec<(u32, u32)> = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
            .collect();
        let img = duads
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (images[a as usize], images[b as usize]);
                duads.iter().position(|&d| d == (x.min(y), x.max(y))).unwrap() as u32
            })
            .collect();
        Permutation::from_images(img).unwrap()
    }

    #[test]
    fn synthemes_form_w32() {
        let gq = w32();
        assert_eq!(gq.line_count(), 15);
        assert_eq!(gq.classical_name(), "W(3,2) ≅ Q(4,2)");
        let dual = gq.dual();
        dual.verify().unwrap();
        assert_eq!(dual.order(), (2, 2));
    }

    #[test]
    fn extraction_rebuilds_graph() {
        let gq = w32();
        let g = gq.collinearity_graph();
        let back = extract_gq(&g, &OrderCandidate::from_u64(2, 2)).unwrap();
        assert_eq!(back, gq);
        assert!(back.collinearity_graph().same_edges(&g));
    }

    #[test]
    fn broken_structures_are_rejected() {
        let mut lines = w32().lines;
        lines.pop();
        assert!(matches!(
            QuadrangleData::new(15, 2, 2, lines.clone()),
            Err(AxiomViolation::LineCount { .. })
        ));
        lines.push(vec![0, 1, 2]);
        assert!(QuadrangleData::new(15, 2, 2, lines).is_err());
    }

    #[test]
    fn orbits_under_a5_and_a6() {
        let gq = w32();
        // PSL(2,5) on the projective line {0..4, 5 = ∞}, transitive on duads
        let a5 = [duad_perm([1, 2, 3, 4, 0, 5]), duad_perm([5, 4, 2, 3, 1, 0])];
        let r = line_orbits(&gq, &a5).unwrap();
        assert!(r.point_transitive);
        let mut sizes = r.orbit_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![5, 10]);
        assert_eq!(r.classification, LineOrbitClass::Other);
        let a6 = [duad_perm([1, 2, 3, 4, 0, 5]), duad_perm([0, 1, 2, 4, 5, 3])];
        let r = line_orbits(&gq, &a6).unwrap();
        assert_eq!(r.orbit_sizes, vec![15]);
        assert_eq!(r.classification, LineOrbitClass::LineTransitive);
        assert_eq!(r.k_values, vec![Some(3)]);
    }

    #[test]
    fn non_automorphism_is_reported() {
        let gq = w32();
        let bad = Permutation::from_cycles(15, &[&[0, 1]]).unwrap();
        assert!(matches!(
            line_orbits(&gq, &[bad]),
            Err(LineOrbitError::NotAnAutomorphism { .. })
        ));
    }

    #[test]
    fn covers() {
        let gq = w32();
        let all: Vec<u32> = (0..15).collect();
        assert_eq!(verify_cover(&gq, &all), CoverVerdict::Cover(3));
        assert_eq!(verify_cover(&gq, &[0]), CoverVerdict::NotACover);
    }
}
