//! Source and target graph representations.
//!
//! Both graph types store adjacency as one `u64` bitset per vertex, so every
//! graph is limited to [`MAX_VERTICES`] vertices. Values are immutable once
//! built.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!(
            "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
        )));
    }
    Ok(())
}

/// A loop-free undirected graph. This is always the source side of a
/// homomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    rows: Vec<u64>,
}

/// An undirected graph that may carry loops. Used as the target side.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TargetGraph {
    n: usize,
    rows: Vec<u64>,
}

/// A vertex of `G ⊔ G` or `G × K₂`: copy `side` of base vertex `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubledVertex {
    pub base: usize,
    pub side: usize,
}

impl DoubledVertex {
    pub fn new(base: usize, side: usize) -> Self {
        debug_assert!(side < 2);
        DoubledVertex { base, side }
    }

    #[inline]
    pub fn index(self) -> usize {
        2 * self.base + self.side
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        DoubledVertex {
            base: index / 2,
            side: index % 2,
        }
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(SimpleGraph {
            n,
            rows: vec![0; n],
        })
    }

    /// Build from an edge list. Duplicate edges collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at {u} in a simple graph")));
            }
            g.rows[u] |= bit(v);
            g.rows[v] |= bit(u);
        }
        Ok(g)
    }

    /// Build from adjacency rows. Rows must be symmetric with empty diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::invalid(format!(
                    "row {u} references vertices beyond {n}"
                )));
            }
            if row & bit(u) != 0 {
                return Err(Error::invalid(format!("loop at {u} in a simple graph")));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::invalid(format!(
                        "adjacency not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        Ok(SimpleGraph { n, rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.rows[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The common degree if the graph is regular. The graph on zero vertices
    /// is not considered regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut edges = self.edges();
        edges.push((u, v));
        Self::from_edges(self.n, &edges)
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        // perm[new] = old
        let mut inverse = vec![0; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = perm
            .iter()
            .map(|&old| Bits(self.rows[old]).fold(0u64, |acc, w| acc | bit(inverse[w])))
            .collect();
        SimpleGraph { n: self.n, rows }
    }

    pub fn is_bipartite(&self) -> Bipartiteness {
        two_coloring(self.n, |v| Bits(self.rows[v]).collect())
    }

    /// Length of the shortest odd cycle, or `None` for bipartite graphs.
    ///
    /// The shortest odd closed walk through `v` is the distance from `(v,0)` to
    /// `(v,1)` in the bipartite double cover; its minimum over `v` is the odd
    /// girth.
    pub fn odd_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; 2 * self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            let mut queue = VecDeque::new();
            dist[2 * s] = 0;
            queue.push_back(2 * s);
            while let Some(x) = queue.pop_front() {
                let (v, side) = (x / 2, x % 2);
                if best.is_some_and(|b| dist[x] + 1 >= b) {
                    break;
                }
                for w in Bits(self.rows[v]) {
                    let y = 2 * w + (1 - side);
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            let d = dist[2 * s + 1];
            if d != usize::MAX {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// Subgraph induced on `keep`, relabelled in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(keep.len(), &edges)
    }

    /// Connected components, each sorted, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, &self.rows)
    }
}

impl TargetGraph {
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(TargetGraph {
            n,
            rows: vec![0; n],
        })
    }

    /// Build from an edge list; a pair `(v, v)` is a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            h.rows[u] |= bit(v);
            h.rows[v] |= bit(u);
        }
        Ok(h)
    }

    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::invalid(format!(
                    "row {u} references vertices beyond {n}"
                )));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::invalid(format!(
                        "adjacency not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        Ok(TargetGraph { n, rows })
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        TargetGraph {
            n: g.n,
            rows: g.rows.clone(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbourhood of `v`, containing `v` itself when `v` is looped.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Number of neighbours, a loop counting once.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    pub fn non_loop_edge_count(&self) -> usize {
        self.non_loop_edges().len()
    }

    pub fn non_loop_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in Bits(self.rows[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_loop(v)).collect()
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![0; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = perm
            .iter()
            .map(|&old| Bits(self.rows[old]).fold(0u64, |acc, w| acc | bit(inverse[w])))
            .collect();
        TargetGraph { n: self.n, rows }
    }

    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(keep.len(), &edges)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Debug for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TargetGraph(n={}, edges={:?}, loops={:?})",
            self.n,
            self.non_loop_edges(),
            self.loops()
        )
    }
}

fn components_of(n: usize, rows: &[u64]) -> Vec<Vec<usize>> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for s in 0..n {
        if seen & bit(s) != 0 {
            continue;
        }
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= rows[v];
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        out.push(Bits(comp).collect());
    }
    out
}

/// Outcome of a bipartiteness test, with evidence either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Proper 2-colouring, one entry (0 or 1) per vertex.
    Bipartite(Vec<u8>),
    /// Vertices of an odd cycle in traversal order; consecutive entries and
    /// the last/first pair are adjacent.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }
}

/// BFS 2-colouring of an arbitrary graph given by a neighbour function.
///
/// Each component is rooted at its minimum vertex, which receives colour 0.
/// A self-adjacent vertex yields a 1-cycle witness.
pub fn two_coloring<F>(n: usize, mut neighbors: F) -> Bipartiteness
where
    F: FnMut(usize) -> Vec<usize>,
{
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Bipartiteness::OddCycle(tree_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    Bipartiteness::Bipartite(color)
}

/// Cycle closed by the non-tree edge `uw` through the BFS tree.
fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    if u == w {
        return vec![u];
    }
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Loop-free complete graph `K_q` as a target.
pub fn complete_graph(q: usize) -> Result<TargetGraph> {
    if q == 0 {
        return Err(Error::invalid("complete graph needs q >= 1"));
    }
    complete_target(q)
}

/// `K_q` including `q = 0` (the graph with no vertices).
pub(crate) fn complete_target(q: usize) -> Result<TargetGraph> {
    check_order(q)?;
    let all = if q == 64 { u64::MAX } else { bit(q) - 1 };
    TargetGraph::from_rows((0..q).map(|v| all & !bit(v)).collect())
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<SimpleGraph> {
    if a == 0 || b == 0 {
        return Err(Error::invalid(
            "complete bipartite graph needs both parts nonempty",
        ));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    SimpleGraph::from_edges(a + b, &edges)
}

pub fn complete_simple(n: usize) -> Result<SimpleGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<SimpleGraph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    SimpleGraph::from_edges(n, &edges)
}

/// `G ⊔ G`: edges `u_i v_i`. Vertex `(v, i)` is index `2v + i`.
pub fn disjoint_double(g: &SimpleGraph) -> Result<SimpleGraph> {
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        for side in 0..2 {
            edges.push((
                DoubledVertex::new(u, side).index(),
                DoubledVertex::new(v, side).index(),
            ));
        }
    }
    SimpleGraph::from_edges(2 * g.n(), &edges)
}

/// `G × K₂`: edges `u_i v_{1-i}`. Vertex `(v, i)` is index `2v + i`.
pub fn bipartite_double(g: &SimpleGraph) -> Result<SimpleGraph> {
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        for side in 0..2 {
            edges.push((
                DoubledVertex::new(u, side).index(),
                DoubledVertex::new(v, 1 - side).index(),
            ));
        }
    }
    SimpleGraph::from_edges(2 * g.n(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_odd_cycle(g: &SimpleGraph, cycle: &[usize]) {
        assert!(cycle.len() % 2 == 1, "{cycle:?} has even length");
        for i in 0..cycle.len() {
            assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn complete_graph_examples() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.n(), k1.non_loop_edge_count()), (1, 0));
        let k3 = complete_graph(3).unwrap();
        assert_eq!((k3.non_loop_edge_count(), k3.loop_count()), (3, 0));
        assert_eq!(complete_graph(4).unwrap().non_loop_edge_count(), 6);
        assert!(matches!(complete_graph(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn complete_bipartite_examples() {
        assert_eq!(complete_bipartite(1, 1).unwrap().edges(), vec![(0, 1)]);
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!(k22.edge_count(), 4);
        assert_eq!(k22.regular_degree(), Some(2));
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!((k33.edge_count(), k33.regular_degree()), (9, Some(3)));
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn doubles_of_small_graphs() {
        let k2 = complete_simple(2).unwrap();
        assert_eq!(disjoint_double(&k2).unwrap().edges(), vec![(0, 2), (1, 3)]);
        assert_eq!(bipartite_double(&k2).unwrap().edges(), vec![(0, 3), (1, 2)]);

        let c5 = cycle(5).unwrap();
        let dd = disjoint_double(&c5).unwrap();
        assert_eq!((dd.n(), dd.edge_count()), (10, 10));
        assert_eq!(dd.components().len(), 2);

        let e3 = SimpleGraph::empty(3).unwrap();
        let d = disjoint_double(&e3).unwrap();
        assert_eq!((d.n(), d.edge_count()), (6, 0));
    }

    #[test]
    fn bipartite_double_of_odd_cycle_is_one_even_cycle() {
        for n in [3, 5, 7] {
            let b = bipartite_double(&cycle(n).unwrap()).unwrap();
            assert_eq!(b.regular_degree(), Some(2));
            assert_eq!(b.components().len(), 1);
            assert!(b.is_bipartite().is_bipartite());
        }
    }

    #[test]
    fn bipartiteness_examples() {
        assert!(cycle(4).unwrap().is_bipartite().is_bipartite());
        let c5 = cycle(5).unwrap();
        match c5.is_bipartite() {
            Bipartiteness::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                assert_odd_cycle(&c5, &c);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        assert!(SimpleGraph::empty(0).unwrap().is_bipartite().is_bipartite());
        assert!(SimpleGraph::empty(4).unwrap().is_bipartite().is_bipartite());
    }

    #[test]
    fn coloring_is_proper() {
        let g = complete_bipartite(2, 3).unwrap();
        let Bipartiteness::Bipartite(colors) = g.is_bipartite() else {
            panic!()
        };
        for (u, v) in g.edges() {
            assert_ne!(colors[u], colors[v]);
        }
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(cycle(5).unwrap().odd_girth(), Some(5));
        assert_eq!(complete_simple(4).unwrap().odd_girth(), Some(3));
        assert_eq!(complete_bipartite(3, 3).unwrap().odd_girth(), None);
        // pentagon with a pendant triangle far away
        let g = SimpleGraph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert_eq!(g.odd_girth(), Some(3));
    }

    #[test]
    fn regular_degree_detects_irregular() {
        assert_eq!(path(3).unwrap().regular_degree(), None);
        assert_eq!(SimpleGraph::empty(3).unwrap().regular_degree(), Some(0));
        assert_eq!(SimpleGraph::empty(0).unwrap().regular_degree(), None);
    }

    #[test]
    fn from_rows_rejects_asymmetry_and_loops() {
        assert!(SimpleGraph::from_rows(vec![0b10, 0]).is_err());
        assert!(SimpleGraph::from_rows(vec![0b1]).is_err());
        assert!(TargetGraph::from_rows(vec![0b1]).is_ok());
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = path(4).unwrap();
        let r = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(r, g);
        let r = g.relabel(&[1, 0, 2, 3]);
        assert_eq!(r.edges(), vec![(0, 1), (0, 2), (2, 3)]);
    }
}
