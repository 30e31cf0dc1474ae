//! Exhaustive checks for small `n`.
//!
//! Everything here enumerates the whole middle levels graph or the whole set
//! of Dyck words, so costs grow exponentially; the caps in [`DeskScale`] keep
//! runs bounded. Results are collected into a [`Report`] whose lines read
//! `CHECK <name> n=<n> PASS|FAIL <detail>`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::bitwords::{dyck_words, BitWord, DyckWord};
use crate::error::{Error, Result};
use crate::flipseq::{apply_flips, sigma, tsigma_source, tsigma_target};
use crate::hamcycle::{ham_cycle, vertex_count, Flips, HamCycle};
use crate::trees::{
    canonical_root, is_flip_tree, rotate, tau, PlaneClassKey, RootedTree, Signature,
};

/// One outcome line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: &str, n: usize, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_owned(),
            n,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} n={} {}", self.name, self.n, verdict)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(line: CheckLine) -> Self {
        Self { lines: vec![line] }
    }

    pub fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Upper bounds on `n` for the exhaustive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeskScale {
    /// Checks that touch every vertex of the middle levels graph.
    pub full_graph: usize,
    /// Checks on the auxiliary graph of plane trees.
    pub aux_graph: usize,
    /// Checks that materialize every 6-cycle.
    pub c6: usize,
}

impl Default for DeskScale {
    fn default() -> Self {
        Self {
            full_graph: 9,
            aux_graph: 12,
            c6: 7,
        }
    }
}

fn cap(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n > limit {
        return Err(Error::DeskScale { n, cap: limit });
    }
    Ok(())
}

fn differs_in_one(a: &BitWord, b: &BitWord) -> bool {
    a.len() == b.len()
        && a.bits()
            .iter()
            .zip(b.bits())
            .filter(|(x, y)| x != y)
            .count()
            == 1
}

/// Distinct vertices, single-bit steps, alternating weights, and closure back
/// to the first vertex when the listing has exactly one vertex per graph vertex.
pub fn check_listing(n: usize, seq: &[BitWord]) -> Report {
    let total = vertex_count(n);
    let mut problems = Vec::new();

    for (i, v) in seq.iter().enumerate() {
        let w = v.weight();
        if v.len() != 2 * n + 1 || (w != n && w != n + 1) {
            problems.push(format!("invalid vertex {v} at {}", i + 1));
            break;
        }
    }
    let mut seen: HashMap<&BitWord, usize> = HashMap::with_capacity(seq.len());
    for (i, v) in seq.iter().enumerate() {
        if let Some(first) = seen.insert(v, i) {
            problems.push(format!("duplicate {v} at {} and {}", first + 1, i + 1));
            break;
        }
    }
    for (i, pair) in seq.windows(2).enumerate() {
        if !differs_in_one(&pair[0], &pair[1]) {
            problems.push(format!(
                "step {} {} -> {} is not a single flip",
                i + 1,
                pair[0],
                pair[1]
            ));
            break;
        }
        if pair[0].weight().abs_diff(pair[1].weight()) != 1 {
            problems.push(format!("weights do not alternate at step {}", i + 1));
            break;
        }
    }
    let closed = total == Some(seq.len() as u64);
    if closed {
        let (first, last) = (&seq[0], &seq[seq.len() - 1]);
        if seq.len() > 1 && !differs_in_one(last, first) {
            problems.push(format!("no closing edge {last} -> {first}"));
        }
    }

    let detail = if problems.is_empty() {
        let n_text = total.map_or_else(|| "overflow".to_owned(), |t| t.to_string());
        format!(
            "length={} N={}{}",
            seq.len(),
            n_text,
            if closed { " cyclic" } else { "" }
        )
    } else {
        problems.join("; ")
    };
    Report::single(CheckLine::new("listing", n, problems.is_empty(), detail))
}

/// Vertex-disjoint cycles covering the middle levels graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSet {
    pub n: usize,
    /// Each cycle starts at its least vertex; cycles are sorted by that vertex.
    pub cycles: Vec<Vec<BitWord>>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Disjointness, coverage and single-bit steps, closing edges included.
    pub fn is_two_factor(&self) -> bool {
        let Some(total) = vertex_count(self.n) else {
            return false;
        };
        let mut seen = HashSet::new();
        for cycle in &self.cycles {
            for v in cycle {
                if !seen.insert(v) {
                    return false;
                }
            }
            let steps = cycle.iter().zip(cycle.iter().cycle().skip(1));
            if cycle.len() < 2 || !steps.take(cycle.len()).all(|(a, b)| differs_in_one(a, b)) {
                return false;
            }
        }
        seen.len() as u64 == total
    }

    /// Dyck words `z` with `z0` on the given cycle.
    pub fn round_starts(&self, cycle: usize) -> Vec<DyckWord> {
        let n = self.n;
        self.cycles[cycle]
            .iter()
            .filter(|v| v.bits()[2 * n] == 0)
            .filter_map(|v| v.subword(1, 2 * n).try_into().ok())
            .collect()
    }
}

impl DeskScale {
    /// Splits the middle levels graph into the cycles the generator walks.
    pub fn two_factor(&self, n: usize, flips: Flips) -> Result<CycleSet> {
        cap(n, self.full_graph)?;
        let len = 2 * n + 1;
        let mut visited = vec![false; 1usize << len];
        let mut cycles = Vec::new();
        for code in 0..1u64 << len {
            let w = code.count_ones() as usize;
            if (w != n && w != n + 1) || visited[code as usize] {
                continue;
            }
            // codes ascend, so this is the least vertex on its cycle
            let start = BitWord::from_u64(code, len);
            let mut state = HamCycle::with_flips(n, &start, flips)?;
            let mut cycle = vec![start.clone()];
            visited[code as usize] = true;
            loop {
                let next = state.next_vertex();
                if *next == start {
                    break;
                }
                visited[next.to_u64() as usize] = true;
                cycle.push(next.clone());
            }
            cycles.push(cycle);
        }
        Ok(CycleSet { n, cycles })
    }

    pub fn aux_graph(&self, n: usize) -> Result<TnGraph> {
        cap(n, self.aux_graph)?;
        Ok(aux_graph(n))
    }
}

pub fn two_factor(n: usize, flips: Flips) -> Result<CycleSet> {
    DeskScale::default().two_factor(n, flips)
}

/// Plane trees with `n` edges, joined by one directed edge per flip tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnGraph {
    pub n: usize,
    pub nodes: Vec<PlaneClassKey>,
    /// `(source, target)` indices into `nodes`.
    pub edges: Vec<(usize, usize)>,
}

impl TnGraph {
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut out = vec![0; self.nodes.len()];
        for &(s, _) in &self.edges {
            out[s] += 1;
        }
        out
    }
}

pub fn aux_graph(n: usize) -> TnGraph {
    let words = dyck_words(n);
    let classes: BTreeSet<PlaneClassKey> = words.iter().map(PlaneClassKey::of).collect();
    let nodes: Vec<PlaneClassKey> = classes.into_iter().collect();
    let index: BTreeMap<&PlaneClassKey, usize> =
        nodes.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut edges = Vec::new();
    for x in &words {
        if !x.bits().starts_with(&[1, 1, 0]) || !is_flip_tree(x).expect("x is in the tau domain") {
            continue;
        }
        let y = tau(x).expect("x is in the tau domain");
        edges.push((index[&PlaneClassKey::of(x)], index[&PlaneClassKey::of(&y)]));
    }
    TnGraph { n, nodes, edges }
}

/// Connected and acyclic as an undirected graph.
pub fn is_spanning_tree(g: &TnGraph) -> bool {
    let count = g.nodes.len();
    if count == 0 || g.edges.len() != count - 1 {
        return false;
    }
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Leaves, leaves not adjacent to a skeleton leaf, and maximum degree.
///
/// The skeleton is the tree with all leaves removed. A skeleton consisting of a
/// single vertex counts that vertex as a skeleton leaf.
pub fn signature(key: &PlaneClassKey) -> Signature {
    let tree = RootedTree::from_dyck(key.canonical());
    let count = tree.vertex_count();
    let degree: Vec<usize> = (0..count).map(|v| tree.degree(v)).collect();
    let is_leaf = |v: usize| degree[v] == 1;
    let skeleton_degree = |v: usize| tree.neighbors(v).filter(|&u| !is_leaf(u)).count();
    let skeleton_leaf = |v: usize| !is_leaf(v) && skeleton_degree(v) <= 1;

    let leaves: Vec<usize> = (0..count).filter(|&v| is_leaf(v)).collect();
    let terminal = leaves
        .iter()
        .filter(|&&v| tree.neighbors(v).any(skeleton_leaf))
        .count();
    Signature {
        leaves: leaves.len(),
        nonterminal_leaves: leaves.len() - terminal,
        max_degree: degree.iter().copied().max().unwrap_or(0),
    }
}

/// Which coordinate of the signature goes up along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Increase {
    Leaves,
    NonterminalLeaves,
    MaxDegree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStep {
    pub source: usize,
    pub target: usize,
    pub from: Signature,
    pub to: Signature,
    /// `None` when the signature does not increase.
    pub increase: Option<Increase>,
}

pub fn edge_steps(g: &TnGraph) -> Vec<EdgeStep> {
    let signatures: Vec<Signature> = g.nodes.iter().map(signature).collect();
    g.edges
        .iter()
        .map(|&(source, target)| {
            let (from, to) = (signatures[source], signatures[target]);
            let increase = if from.leaves < to.leaves {
                Some(Increase::Leaves)
            } else if from.leaves == to.leaves && from.nonterminal_leaves < to.nonterminal_leaves {
                Some(Increase::NonterminalLeaves)
            } else if from.leaves == to.leaves
                && from.nonterminal_leaves == to.nonterminal_leaves
                && from.max_degree < to.max_degree
            {
                Some(Increase::MaxDegree)
            } else {
                None
            };
            EdgeStep {
                source,
                target,
                from,
                to,
                increase,
            }
        })
        .collect()
}

/// Every edge strictly increases the signature lexicographically.
pub fn check_edge_monotonicity(g: &TnGraph) -> Report {
    let steps = edge_steps(g);
    let count = |case| steps.iter().filter(|s| s.increase == Some(case)).count();
    let bad: Vec<String> = steps
        .iter()
        .filter(|s| s.increase.is_none())
        .map(|s| {
            format!(
                "{} -> {}",
                g.nodes[s.source].canonical(),
                g.nodes[s.target].canonical()
            )
        })
        .collect();
    let detail = if bad.is_empty() {
        format!(
            "edges={} leaves={} nonterminal={} degree={}",
            steps.len(),
            count(Increase::Leaves),
            count(Increase::NonterminalLeaves),
            count(Increase::MaxDegree)
        )
    } else {
        format!("not increasing: {}", bad.join(", "))
    };
    Report::single(CheckLine::new("monotonicity", g.n, bad.is_empty(), detail))
}

type Edge = (u64, u64);

fn edge(a: u64, b: u64) -> Edge {
    (a.min(b), a.max(b))
}

fn path_edges(vertices: &[BitWord]) -> Vec<Edge> {
    vertices
        .windows(2)
        .map(|p| edge(p[0].to_u64(), p[1].to_u64()))
        .collect()
}

/// The 6-cycle `1**w*v` of the flippable pair `x = 110w0v`, as vertices in
/// cyclic order.
pub fn six_cycle(x: &DyckWord) -> Result<[BitWord; 6]> {
    tau(x)?;
    let mut base = x.bits().to_vec();
    let star = [2, 3, third_star(x)];
    // the middle two levels of the 3-cube, in cycle order
    let fills: [[u8; 3]; 6] = [
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
        [0, 1, 1],
        [0, 0, 1],
        [1, 0, 1],
    ];
    let cycle = fills.map(|fill| {
        for (&p, &b) in star.iter().zip(&fill) {
            base[p - 1] = b;
        }
        BitWord::from_bits(base.clone()).expect("bits are 0 or 1")
    });
    Ok(cycle)
}

/// 1-based position of the third `*` in `1**w*v`, the 0 closing position 3 of `y`.
fn third_star(x: &DyckWord) -> usize {
    // x = 110w0v: w starts at position 4 and the 0 after it closes the root's first child
    let bits = x.bits();
    let mut depth = 0i64;
    for (i, &b) in bits.iter().enumerate().skip(3) {
        depth += if b == 1 { 1 } else { -1 };
        if depth < 0 {
            return i + 1;
        }
    }
    unreachable!("x = 110w0v has a 0 after w")
}

fn cycle_edges(c: &[BitWord; 6]) -> Vec<Edge> {
    (0..6)
        .map(|i| edge(c[i].to_u64(), c[(i + 1) % 6].to_u64()))
        .collect()
}

fn flippable(n: usize) -> Vec<DyckWord> {
    dyck_words(n)
        .into_iter()
        .filter(|x| x.bits().starts_with(&[1, 1, 0]))
        .collect()
}

/// Pairwise edge-disjointness of all 6-cycles, and for every sigma-path the
/// edges it shares with different 6-cycles occupy non-interleaved stretches.
pub fn check_c6_structure(n: usize) -> Result<Report> {
    cap(n, DeskScale::default().c6)?;
    let pairs = flippable(n);

    let mut owner: HashMap<Edge, usize> = HashMap::new();
    let mut overlaps = Vec::new();
    let mut cycles = Vec::with_capacity(pairs.len());
    for (i, x) in pairs.iter().enumerate() {
        let edges = cycle_edges(&six_cycle(x)?);
        for &e in &edges {
            if let Some(j) = owner.insert(e, i) {
                overlaps.push(format!("{} and {}", pairs[j], x));
            }
        }
        cycles.push(edges);
    }

    // position of every sigma-path edge along its path
    let mut on_path: HashMap<Edge, (usize, usize)> = HashMap::new();
    for (p, z) in dyck_words(n).iter().enumerate() {
        let path = apply_flips(z.word(), sigma(z)?.as_slice())?;
        for (k, e) in path_edges(path.vertices()).into_iter().enumerate() {
            on_path.insert(e, (p, k));
        }
    }
    // per path: the stretch of positions each 6-cycle occupies
    let mut stretches: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut untouched = 0;
    for edges in &cycles {
        let mut per_path: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for e in edges {
            if let Some(&(p, k)) = on_path.get(e) {
                let s = per_path.entry(p).or_insert((k, k));
                s.0 = s.0.min(k);
                s.1 = s.1.max(k);
            }
        }
        if per_path.is_empty() {
            untouched += 1;
        }
        for (p, s) in per_path {
            stretches.entry(p).or_default().push(s);
        }
    }
    let mut interleaved = 0;
    let mut shared_paths = 0;
    for list in stretches.values_mut() {
        if list.len() >= 2 {
            shared_paths += 1;
        }
        list.sort_unstable();
        interleaved += list.windows(2).filter(|w| w[1].0 <= w[0].1).count();
    }

    let mut report = Report::new();
    report.push(CheckLine::new(
        "c6-disjoint",
        n,
        overlaps.is_empty(),
        if overlaps.is_empty() {
            format!("cycles={}", pairs.len())
        } else {
            format!("shared edges: {}", overlaps.join(", "))
        },
    ));
    report.push(CheckLine::new(
        "c6-ordering",
        n,
        interleaved == 0 && untouched == 0,
        format!("paths-with-several={shared_paths} interleaved={interleaved} off-path={untouched}"),
    ));
    Ok(report)
}

/// The modified paths of every flippable pair equal the symmetric difference
/// of the two sigma-paths with the 6-cycle, and swap end vertices.
pub fn check_flipped_paths(n: usize) -> Result<Report> {
    cap(n, DeskScale::default().c6)?;
    let mut failures = Vec::new();
    let pairs = flippable(n);
    for x in &pairs {
        let y = tau(x)?;
        let px = apply_flips(x.word(), sigma(x)?.as_slice())?;
        let py = apply_flips(y.word(), sigma(&y)?.as_slice())?;
        let qx = apply_flips(x.word(), tsigma_source(x)?.as_slice())?;
        let qy = apply_flips(y.word(), tsigma_target(&y)?.as_slice())?;

        let mut expected: HashSet<Edge> = HashSet::new();
        for e in path_edges(px.vertices())
            .into_iter()
            .chain(path_edges(py.vertices()))
        {
            expected.insert(e);
        }
        for e in cycle_edges(&six_cycle(x)?) {
            if !expected.remove(&e) {
                expected.insert(e);
            }
        }
        let got_list: Vec<Edge> = path_edges(qx.vertices())
            .into_iter()
            .chain(path_edges(qy.vertices()))
            .collect();
        let got: HashSet<Edge> = got_list.iter().copied().collect();

        let vertices = |a: &[BitWord], b: &[BitWord]| {
            let mut all: Vec<BitWord> = a.iter().chain(b).cloned().collect();
            all.sort();
            all
        };
        let same_vertices =
            vertices(px.vertices(), py.vertices()) == vertices(qx.vertices(), qy.vertices());
        let swapped = qx.last() == py.last() && qy.last() == px.last();
        if got != expected || got.len() != got_list.len() || !same_vertices || !swapped {
            failures.push(x.to_string());
        }
    }
    let detail = if failures.is_empty() {
        format!("pairs={}", pairs.len())
    } else {
        format!("mismatch at {}", failures.join(", "))
    };
    Ok(Report::single(CheckLine::new(
        "flipped-paths",
        n,
        failures.is_empty(),
        detail,
    )))
}

/// Cycle count, cycle lengths and rotation closure of the 2-factor, and a
/// single cycle once flips are applied.
pub fn check_two_factor(scale: &DeskScale, n: usize, flips: Flips) -> Result<Report> {
    let plain = scale.two_factor(n, Flips::Off)?;
    let classes: BTreeSet<DyckWord> = dyck_words(n).iter().map(canonical_root).collect();
    let round = 4 * n + 2;
    let lengths_ok = plain.cycles.iter().all(|c| c.len() % round == 0);
    let closed = (0..plain.len()).all(|i| {
        let starts: BTreeSet<DyckWord> = plain.round_starts(i).into_iter().collect();
        let class: BTreeSet<DyckWord> = starts.iter().map(canonical_root).collect();
        class.len() == 1
            && starts
                .iter()
                .all(|z| starts.contains(&rotate(z).expect("nonempty")))
    });
    let mut report = Report::new();
    report.push(CheckLine::new(
        "two-factor",
        n,
        plain.is_two_factor() && plain.len() == classes.len() && lengths_ok && closed,
        format!(
            "cycles={} plane-trees={} lengths-divisible-by-{round}={lengths_ok} rotation-closed={closed}",
            plain.len(),
            classes.len()
        ),
    ));
    let joined = scale.two_factor(n, flips)?;
    report.push(CheckLine::new(
        "single-cycle",
        n,
        joined.is_two_factor() && joined.len() == 1,
        format!("cycles={}", joined.len()),
    ));
    Ok(report)
}

/// Spanning tree, out-degrees and signature monotonicity of the auxiliary graph.
pub fn check_aux_graph(scale: &DeskScale, n: usize) -> Result<Report> {
    let g = scale.aux_graph(n)?;
    let max_out = g.out_degrees().into_iter().max().unwrap_or(0);
    let mut report = Report::new();
    report.push(CheckLine::new(
        "spanning-tree",
        n,
        is_spanning_tree(&g) && max_out <= 1,
        format!(
            "nodes={} edges={} max-out-degree={max_out}",
            g.nodes.len(),
            g.edges.len()
        ),
    ));
    report.extend(check_edge_monotonicity(&g));
    Ok(report)
}

/// The canonical run of one full period passes [`check_listing`].
pub fn check_canonical_listing(scale: &DeskScale, n: usize, flips: Flips) -> Result<Report> {
    cap(n, scale.full_graph)?;
    let total = vertex_count(n).expect("capped n has a small vertex count");
    let mut seq = Vec::with_capacity(total as usize);
    let start = BitWord::ones_then_zeros(n, n + 1);
    crate::hamcycle::ham_cycle_with(n, &start, total, flips, |v: &BitWord| seq.push(v.clone()))?;
    Ok(check_listing(n, &seq))
}

/// Every check for `n = 1..=max_n`, each skipped above its cap.
pub fn run_suite(scale: &DeskScale, max_n: usize, flips: Flips) -> Result<Report> {
    let mut report = Report::new();
    for n in 1..=max_n {
        if n <= scale.full_graph {
            report.extend(check_canonical_listing(scale, n, flips)?);
            report.extend(check_two_factor(scale, n, flips)?);
        }
        if n <= scale.aux_graph {
            report.extend(check_aux_graph(scale, n)?);
        }
        if n <= scale.c6 {
            report.extend(check_c6_structure(n)?);
            report.extend(check_flipped_paths(n)?);
        }
    }
    Ok(report)
}

/// Convenience wrapper around [`ham_cycle`] collecting into a vector.
pub fn listing(n: usize, start: &BitWord, count: u64) -> Result<Vec<BitWord>> {
    let mut out = Vec::new();
    ham_cycle(n, start, count, |v: &BitWord| out.push(v.clone()))?;
    Ok(out)
}
