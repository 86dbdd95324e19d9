//! Graphs derived from `r`-bounded codes and complete bipartite subgraph
//! detection.
//!
//! For a 2-bounded code every codeword contributes the edge joining its two
//! 2-locations. For a 3-bounded code with 2-locations `i < j < k` it
//! contributes the edge `(i, {j, k})` between a coordinate and a coordinate
//! pair. Trifference forbids `K_{3,9}` in the first graph and `K_{5,2^21}` in
//! the second.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{self, words_for};
use crate::{Code, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Simple graph on the coordinates.
    Simple,
    /// Coordinates on the left, coordinate pairs on the right.
    Bipartite,
}

/// A right-hand vertex. Simple graphs only use `Coord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RightVertex {
    Coord(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub left: usize,
    pub right: RightVertex,
    /// Indices of the codewords that produced this edge.
    pub sources: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DerivedGraph {
    kind: GraphKind,
    n: usize,
    right: Vec<RightVertex>,
    edges: Vec<Edge>,
    // neighbor bitsets of the left vertices over right indices; for the
    // simple kind left and right indices coincide and the matrix is symmetric
    adjacency: Vec<Vec<u64>>,
}

/// A complete bipartite subgraph `K_{s,t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KstWitness {
    pub left: Vec<usize>,
    pub right: Vec<RightVertex>,
}

impl KstWitness {
    /// Re-checks every one of the `s·t` edges against the graph.
    pub fn validate(&self, graph: &DerivedGraph) -> bool {
        let distinct = match graph.kind {
            GraphKind::Simple => self.right.iter().all(|r| match r {
                RightVertex::Coord(j) => !self.left.contains(j),
                RightVertex::Pair(..) => false,
            }),
            GraphKind::Bipartite => true,
        };
        distinct && self.left.iter().all(|&i| self.right.iter().all(|&r| graph.has_edge(i, r)))
    }
}

impl DerivedGraph {
    /// A simple graph on `n` vertices with the given edges (no annotations).
    pub fn simple(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidParameter("edge endpoints must be distinct vertices"));
            }
            map.entry((a.min(b), RightVertex::Coord(a.max(b)))).or_insert_with(Vec::new);
        }
        Ok(Self::assemble(GraphKind::Simple, n, map))
    }

    /// A bipartite graph with left vertices `0..n` and pair vertices on the right.
    pub fn bipartite(n: usize, edges: &[(usize, (usize, usize))]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(i, (j, k)) in edges {
            if i >= n || j >= k || k >= n {
                return Err(Error::InvalidParameter("bipartite edges need i < n and j < k < n"));
            }
            map.entry((i, RightVertex::Pair(j, k))).or_insert_with(Vec::new);
        }
        Ok(Self::assemble(GraphKind::Bipartite, n, map))
    }

    fn assemble(kind: GraphKind, n: usize, map: BTreeMap<(usize, RightVertex), Vec<usize>>) -> Self {
        let right: Vec<RightVertex> = match kind {
            GraphKind::Simple => (0..n).map(RightVertex::Coord).collect(),
            GraphKind::Bipartite => {
                let mut r: Vec<RightVertex> = map.keys().map(|&(_, r)| r).collect();
                r.sort_unstable();
                r.dedup();
                r
            }
        };
        let w = words_for(right.len().max(1));
        let mut adjacency = vec![vec![0u64; w]; n];
        let edges: Vec<Edge> =
            map.into_iter().map(|((left, right), sources)| Edge { left, right, sources }).collect();
        for e in &edges {
            let ri = right.binary_search(&e.right).expect("right vertex registered");
            bits::set(&mut adjacency[e.left], ri);
            if kind == GraphKind::Simple {
                bits::set(&mut adjacency[ri], e.left);
            }
        }
        Self { kind, n, right, edges, adjacency }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Number of left vertices (the block length for derived graphs).
    pub fn left_count(&self) -> usize {
        self.n
    }

    /// Right vertices that are materialized; for the bipartite kind only the
    /// pairs that carry an edge.
    pub fn right_vertices(&self) -> &[RightVertex] {
        &self.right
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, left: usize, right: RightVertex) -> bool {
        if left >= self.n {
            return false;
        }
        match self.right.binary_search(&right) {
            Ok(ri) => bits::get(&self.adjacency[left], ri),
            Err(_) => false,
        }
    }

    /// `hist[m]` = number of edges produced by exactly `m` codewords.
    pub fn multiplicity_histogram(&self) -> Vec<usize> {
        let max = self.edges.iter().map(|e| e.sources.len()).max().unwrap_or(0);
        let mut hist = vec![0; max + 1];
        for e in &self.edges {
            hist[e.sources.len()] += 1;
        }
        hist
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edges.iter().map(|e| e.sources.len()).max().unwrap_or(0)
    }

    /// Finds `s` left vertices with at least `t` common neighbours.
    ///
    /// Enumerates `s`-subsets in lexicographic order while intersecting
    /// neighbour bitsets, abandoning a prefix once fewer than `t` common
    /// neighbours remain. The witness lists the first `t` common neighbours.
    /// In a simple graph a vertex is never its own neighbour, so the two
    /// sides of the witness are disjoint.
    ///
    /// Panics if `s` or `t` is zero.
    pub fn contains_kst(&self, s: usize, t: usize) -> Option<KstWitness> {
        assert!(s >= 1 && t >= 1, "K_{{s,t}} needs s, t >= 1");
        if s > self.n || t > self.right.len() {
            return None;
        }
        let w = words_for(self.right.len().max(1));
        let mut chosen = Vec::with_capacity(s);
        let full = vec![!0u64; w];
        let found = self.extend_subset(0, s, t, &full, &mut chosen)?;
        let right = bits::ones(&found).take(t).map(|ri| self.right[ri]).collect();
        Some(KstWitness { left: chosen, right })
    }

    fn extend_subset(
        &self,
        start: usize,
        s: usize,
        t: usize,
        common: &[u64],
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<u64>> {
        if chosen.len() == s {
            return Some(common.to_vec());
        }
        let need = s - chosen.len();
        for v in start..=self.n - need {
            let next: Vec<u64> = common.iter().zip(&self.adjacency[v]).map(|(a, b)| a & b).collect();
            if bits::count(&next) < t {
                continue;
            }
            chosen.push(v);
            if let Some(found) = self.extend_subset(v + 1, s, t, &next, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    fn crossing(&self, in_left: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|e| match e.right {
                RightVertex::Coord(j) => in_left[e.left] != in_left[j],
                RightVertex::Pair(..) => false,
            })
            .count()
    }
}

/// Builds the simple graph of a 2-bounded code.
pub fn build_graph_r2(code: &Code) -> Result<DerivedGraph> {
    if !code.is_r_bounded(2) {
        return Err(Error::WrongBound { expected: 2 });
    }
    let mut map: BTreeMap<(usize, RightVertex), Vec<usize>> = BTreeMap::new();
    for (idx, w) in code.iter().enumerate() {
        let p = w.two_positions();
        map.entry((p[0], RightVertex::Coord(p[1]))).or_default().push(idx);
    }
    Ok(DerivedGraph::assemble(GraphKind::Simple, code.block_length(), map))
}

/// Builds the coordinate-versus-pair graph of a 3-bounded code.
pub fn build_graph_r3(code: &Code) -> Result<DerivedGraph> {
    if !code.is_r_bounded(3) {
        return Err(Error::WrongBound { expected: 3 });
    }
    let mut map: BTreeMap<(usize, RightVertex), Vec<usize>> = BTreeMap::new();
    for (idx, w) in code.iter().enumerate() {
        let p = w.two_positions();
        map.entry((p[0], RightVertex::Pair(p[1], p[2]))).or_default().push(idx);
    }
    Ok(DerivedGraph::assemble(GraphKind::Bipartite, code.block_length(), map))
}

/// Fractions of edges crossing equi-bipartitions of a simple graph.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitionStats {
    pub bipartitions: u64,
    /// `None` when the graph has no edges.
    pub mean_fraction: Option<f64>,
    pub min_fraction: Option<f64>,
    pub max_fraction: Option<f64>,
    /// Largest number of crossing edges seen.
    pub best_crossing: usize,
    /// Probability that a fixed edge crosses a uniform equi-bipartition:
    /// `2·⌈n/2⌉·⌊n/2⌋ / (n(n−1))`.
    pub edge_crossing_probability: f64,
}

fn crossing_probability(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    2.0 * n.div_ceil(2) as f64 * (n / 2) as f64 / (n * (n - 1)) as f64
}

struct Tally {
    count: u64,
    sum: usize,
    min: usize,
    max: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { count: 0, sum: 0, min: usize::MAX, max: 0 }
    }

    fn add(&mut self, crossing: usize) {
        self.count += 1;
        self.sum += crossing;
        self.min = self.min.min(crossing);
        self.max = self.max.max(crossing);
    }

    fn finish(self, graph: &DerivedGraph) -> BipartitionStats {
        let m = graph.edge_count();
        let frac = |x: f64| (m > 0).then(|| x / m as f64);
        BipartitionStats {
            bipartitions: self.count,
            mean_fraction: frac(self.sum as f64 / self.count as f64),
            min_fraction: frac(self.min as f64),
            max_fraction: frac(self.max as f64),
            best_crossing: self.max,
            edge_crossing_probability: crossing_probability(graph.n),
        }
    }
}

fn require_simple(graph: &DerivedGraph) -> Result<()> {
    if graph.kind != GraphKind::Simple {
        return Err(Error::InvalidParameter("bipartition statistics need a simple graph"));
    }
    Ok(())
}

/// Samples `trials` uniform equi-bipartitions (first `⌊n/2⌋` vertices of a
/// seeded shuffle form one side).
pub fn random_bipartition_check(graph: &DerivedGraph, seed: u64, trials: u64) -> Result<BipartitionStats> {
    require_simple(graph)?;
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..graph.n).collect();
    let mut in_left = vec![false; graph.n];
    let mut tally = Tally::new();
    for _ in 0..trials {
        order.shuffle(&mut rng);
        in_left.fill(false);
        for &v in &order[..graph.n / 2] {
            in_left[v] = true;
        }
        tally.add(graph.crossing(&in_left));
    }
    Ok(tally.finish(graph))
}

/// Every equi-bipartition, as the `C(n, ⌊n/2⌋)` choices of one side. Refuses
/// `n > 24`.
pub fn exhaustive_bipartition_check(graph: &DerivedGraph) -> Result<BipartitionStats> {
    require_simple(graph)?;
    let n = graph.n;
    if n > 24 {
        return Err(Error::InvalidParameter("exhaustive bipartitions limited to n <= 24"));
    }
    let half = n / 2;
    let mut tally = Tally::new();
    let mut in_left = vec![false; n];
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != half {
            continue;
        }
        for (v, slot) in in_left.iter_mut().enumerate() {
            *slot = mask >> v & 1 == 1;
        }
        tally.add(graph.crossing(&in_left));
    }
    Ok(tally.finish(graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{one_bounded, triple_construction};
    use crate::transform::best_project;

    fn code(words: &[&str]) -> Code {
        Code::from_strs(words).unwrap()
    }

    #[test]
    fn r2_edges_from_two_locations() {
        let g = build_graph_r2(&code(&["22000", "20200"])).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.left, e.right)).collect();
        assert_eq!(pairs, [(0, RightVertex::Coord(1)), (0, RightVertex::Coord(2))]);
        assert_eq!(g.kind(), GraphKind::Simple);
    }

    #[test]
    fn r2_shared_support_gives_one_edge() {
        let g = build_graph_r2(&code(&["22000", "22110"])).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].sources, [0, 1]);
        assert_eq!(g.multiplicity_histogram(), [0, 0, 1]);
    }

    #[test]
    fn wrong_bound_is_rejected() {
        assert_eq!(build_graph_r2(&one_bounded(3).unwrap()).unwrap_err(), Error::WrongBound { expected: 2 });
        assert_eq!(build_graph_r3(&one_bounded(3).unwrap()).unwrap_err(), Error::WrongBound { expected: 3 });
    }

    #[test]
    fn r3_single_codeword() {
        let g = build_graph_r3(&code(&["22200"])).unwrap();
        assert_eq!(g.edges()[0].left, 0);
        assert_eq!(g.edges()[0].right, RightVertex::Pair(1, 2));
        assert_eq!(g.right_vertices(), [RightVertex::Pair(1, 2)]);
    }

    #[test]
    fn derived_graphs_of_constructions() {
        let c2 = triple_construction(2, &one_bounded(3).unwrap()).unwrap();
        let g2 = build_graph_r3(&c2).unwrap();
        assert!((6..=12).contains(&g2.edge_count()));
        assert!(g2.max_multiplicity() <= 2);
        for e in g2.edges() {
            let RightVertex::Pair(j, k) = e.right else { panic!("pair expected") };
            assert!(e.left < j && j < k);
        }

        let c3 = triple_construction(3, &one_bounded(6).unwrap()).unwrap();
        assert!(build_graph_r3(&c3).unwrap().edge_count() >= 18);

        let (_, projected) = best_project(&c2).unwrap();
        let g = build_graph_r2(&projected).unwrap();
        assert!(2 * g.edge_count() >= projected.len());
    }

    #[test]
    fn kst_basics() {
        let star = DerivedGraph::simple(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let w = star.contains_kst(1, 5).unwrap();
        assert_eq!(w.left, [0]);
        assert!(w.validate(&star));
        assert!(star.contains_kst(1, 6).is_none());

        let empty = DerivedGraph::simple(5, &[]).unwrap();
        assert!(empty.contains_kst(1, 1).is_none());
        assert!(DerivedGraph::bipartite(4, &[]).unwrap().contains_kst(2, 3).is_none());
    }

    #[test]
    fn complete_bipartite_is_its_own_witness() {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..12 {
                edges.push((i, j));
            }
        }
        let g = DerivedGraph::simple(12, &edges).unwrap();
        let w = g.contains_kst(3, 9).unwrap();
        assert!(w.validate(&g));
        assert_eq!(w.left, [0, 1, 2]);
        assert!(g.contains_kst(3, 10).is_none());
    }

    #[test]
    fn invalid_witness_is_rejected() {
        let g = DerivedGraph::simple(3, &[(0, 1)]).unwrap();
        let bogus = KstWitness { left: vec![0], right: vec![RightVertex::Coord(2)] };
        assert!(!bogus.validate(&g));
    }

    #[test]
    fn bipartition_examples() {
        let two = DerivedGraph::simple(2, &[(0, 1)]).unwrap();
        assert_eq!(exhaustive_bipartition_check(&two).unwrap().mean_fraction, Some(1.0));

        // the edge crosses 4 of the 6 ordered choices of a 2-set side
        let four = DerivedGraph::simple(4, &[(0, 1)]).unwrap();
        let stats = exhaustive_bipartition_check(&four).unwrap();
        assert_eq!(stats.bipartitions, 6);
        assert!((stats.mean_fraction.unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((stats.edge_crossing_probability - 2.0 / 3.0).abs() < 1e-15);

        let empty = DerivedGraph::simple(4, &[]).unwrap();
        assert_eq!(random_bipartition_check(&empty, 1, 10).unwrap().mean_fraction, None);
        assert_eq!(random_bipartition_check(&four, 1, 0), Err(Error::ZeroTrials));

        let sampled = random_bipartition_check(&four, 5, 30_000).unwrap();
        assert!((sampled.mean_fraction.unwrap() - 2.0 / 3.0).abs() < 0.02);
    }
}
