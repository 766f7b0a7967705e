//! Canonical forms and isomorphism-free enumeration of small graphs.
//!
//! The canonical code of a graph is the lexicographically least bitstring
//! obtained by reading the upper triangle of its adjacency matrix (diagonal
//! included, so loops count) column by column, over all vertex orders that
//! list vertices in ascending order of a cheap invariant. Absence sorts
//! before presence. The search is a branch and bound over partial orders,
//! pruned as soon as a column prefix exceeds the best prefix found so far.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, SimpleGraph, TargetGraph};

/// Largest vertex count accepted by the canonical-form search.
pub const CANON_MAX: usize = 10;

/// Default vertex cap for [`enumerate_regular`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
    /// `perm[new] = old`; relabelling by it yields the canonical representative.
    pub perm: Vec<usize>,
}

pub fn canonical_form_of_rows(rows: &[u64]) -> Result<CanonicalForm> {
    let n = rows.len();
    if n > CANON_MAX {
        return Err(Error::limit(format!(
            "canonical form limited to {CANON_MAX} vertices, got {n}"
        )));
    }
    let class = vertex_classes(rows);
    let mut slot_class = class.clone();
    slot_class.sort_unstable();
    let mut search = Search {
        rows,
        n,
        class,
        slot_class,
        total_bits: n * (n + 1) / 2,
        best: None,
        perm: Vec::with_capacity(n),
    };
    search.run(0, 0, 0, 0);
    let (code, perm) = search.best.expect("search visits at least one order");
    Ok(CanonicalForm { n, code, perm })
}

/// Rank vertices by (loop, degree, sorted neighbour degrees). Ranks are dense
/// and ordered by the invariant itself, so they are isomorphism-invariant.
fn vertex_classes(rows: &[u64]) -> Vec<usize> {
    let degree = |v: usize| rows[v].count_ones() as usize;
    let keys: Vec<(bool, usize, Vec<usize>)> = (0..rows.len())
        .map(|v| {
            let mut nd: Vec<usize> = Bits(rows[v]).map(degree).collect();
            nd.sort_unstable();
            (rows[v] & bit(v) != 0, degree(v), nd)
        })
        .collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    class: Vec<usize>,
    slot_class: Vec<usize>,
    total_bits: usize,
    best: Option<(u64, Vec<usize>)>,
    perm: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, used: u64, code: u64, bits: usize) {
        if k == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.perm.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if used & bit(v) != 0 || self.class[v] != self.slot_class[k] {
                continue;
            }
            let mut column = 0u64;
            for &u in &self.perm {
                column = (column << 1) | u64::from(self.rows[u] & bit(v) != 0);
            }
            column = (column << 1) | u64::from(self.rows[v] & bit(v) != 0);
            let next_code = (code << (k + 1)) | column;
            let next_bits = bits + k + 1;
            if let Some((best, _)) = &self.best {
                if next_code > best >> (self.total_bits - next_bits) {
                    continue;
                }
            }
            self.perm.push(v);
            self.run(k + 1, used | bit(v), next_code, next_bits);
            self.perm.pop();
        }
    }
}

impl SimpleGraph {
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canonical_form_of_rows(self.rows())
    }

    /// The canonical representative of this graph's isomorphism class.
    pub fn canonical(&self) -> Result<SimpleGraph> {
        Ok(self.relabel(&self.canonical_form()?.perm))
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> Result<bool> {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_form()?.code == other.canonical_form()?.code)
    }
}

impl TargetGraph {
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canonical_form_of_rows(self.rows())
    }

    pub fn canonical(&self) -> Result<TargetGraph> {
        Ok(self.relabel(&self.canonical_form()?.perm))
    }

    pub fn is_isomorphic(&self, other: &TargetGraph) -> Result<bool> {
        if self.n() != other.n() {
            return Ok(false);
        }
        Ok(self.canonical_form()?.code == other.canonical_form()?.code)
    }
}

/// One representative per isomorphism class of `d`-regular graphs on `n`
/// vertices, ordered by canonical code.
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<SimpleGraph>> {
    enumerate_regular_capped(n, d, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_regular_capped(n: usize, d: usize, cap: usize) -> Result<Vec<SimpleGraph>> {
    if n == 0 {
        return Err(Error::invalid("regular graph enumeration needs n >= 1"));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::NoSuchGraph(format!("{n} * {d} is odd")));
    }
    if d >= n {
        return Err(Error::NoSuchGraph(format!(
            "degree {d} needs more than {n} vertices"
        )));
    }
    if n > cap.min(CANON_MAX) {
        return Err(Error::limit(format!(
            "regular graph enumeration capped at {} vertices",
            cap.min(CANON_MAX)
        )));
    }
    let mut classes = BTreeMap::new();
    let mut rows = vec![0u64; n];
    let mut deg = vec![0usize; n];
    // Vertex 0 may always be relabelled so that its neighbours are 1..=d.
    for w in 1..=d {
        rows[0] |= bit(w);
        rows[w] |= bit(0);
        deg[w] = 1;
    }
    deg[0] = d;
    let mut failure = None;
    extend_regular(1, n, d, &mut rows, &mut deg, &mut |rows| {
        if failure.is_some() {
            return;
        }
        match canonical_form_of_rows(rows) {
            Ok(cf) => {
                classes.entry(cf.code).or_insert_with(|| {
                    SimpleGraph::from_rows(rows.to_vec())
                        .expect("generator keeps rows symmetric")
                        .relabel(&cf.perm)
                });
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(classes.into_values().collect())
}

fn extend_regular<F: FnMut(&[u64])>(
    v: usize,
    n: usize,
    d: usize,
    rows: &mut Vec<u64>,
    deg: &mut Vec<usize>,
    emit: &mut F,
) {
    if v == n {
        emit(rows);
        return;
    }
    let need = d - deg[v];
    let candidates: Vec<usize> = (v + 1..n).filter(|&w| deg[w] < d).collect();
    if candidates.len() < need {
        return;
    }
    choose_neighbors(v, n, d, need, &candidates, 0, rows, deg, emit);
}

#[allow(clippy::too_many_arguments)]
fn choose_neighbors<F: FnMut(&[u64])>(
    v: usize,
    n: usize,
    d: usize,
    need: usize,
    candidates: &[usize],
    start: usize,
    rows: &mut Vec<u64>,
    deg: &mut Vec<usize>,
    emit: &mut F,
) {
    if need == 0 {
        let saved = deg[v];
        deg[v] = d;
        extend_regular(v + 1, n, d, rows, deg, emit);
        deg[v] = saved;
        return;
    }
    for i in start..candidates.len() {
        if candidates.len() - i < need {
            break;
        }
        let w = candidates[i];
        rows[v] |= bit(w);
        rows[w] |= bit(v);
        deg[w] += 1;
        deg[v] += 1;
        choose_neighbors(v, n, d, need - 1, candidates, i + 1, rows, deg, emit);
        deg[v] -= 1;
        deg[w] -= 1;
        rows[v] &= !bit(w);
        rows[w] &= !bit(v);
    }
}

/// All isomorphism classes of simple graphs on `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > 7 {
        return Err(Error::limit(
            "exhaustive graph enumeration capped at 7 vertices",
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut classes = BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rows = vec![0u64; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & bit(i) != 0 {
                rows[u] |= bit(v);
                rows[v] |= bit(u);
            }
        }
        let cf = canonical_form_of_rows(&rows)?;
        if let Entry::Vacant(slot) = classes.entry(cf.code) {
            slot.insert(SimpleGraph::from_rows(rows)?.relabel(&cf.perm));
        }
    }
    Ok(classes.into_values().collect())
}

/// All isomorphism classes of graphs with loops allowed on `n` vertices.
pub fn enumerate_targets(n: usize) -> Result<Vec<TargetGraph>> {
    if n > 5 {
        return Err(Error::limit(
            "exhaustive target enumeration capped at 5 vertices",
        ));
    }
    let mut classes = BTreeMap::new();
    for rows in all_labelled_targets(n) {
        let cf = canonical_form_of_rows(&rows)?;
        if let Entry::Vacant(slot) = classes.entry(cf.code) {
            slot.insert(TargetGraph::from_rows(rows)?.relabel(&cf.perm));
        }
    }
    Ok(classes.into_values().collect())
}

/// Every labelled graph with loops allowed on `n` vertices, as adjacency rows.
pub fn all_labelled_targets(n: usize) -> impl Iterator<Item = Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    (0u64..(1u64 << pairs.len())).map(move |mask| {
        let mut rows = vec![0u64; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & bit(i) != 0 {
                rows[u] |= bit(v);
                rows[v] |= bit(u);
            }
        }
        rows
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_simple, cycle};

    /// Brute force over all labelled d-regular graphs, deduplicated by an
    /// isomorphism test that tries every permutation.
    fn brute_force_regular_count(n: usize, d: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut reps: Vec<Vec<u64>> = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            if mask.count_ones() as usize != n * d / 2 {
                continue;
            }
            let mut rows = vec![0u64; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask & bit(i) != 0 {
                    rows[u] |= bit(v);
                    rows[v] |= bit(u);
                }
            }
            if rows.iter().any(|r| r.count_ones() as usize != d) {
                continue;
            }
            if !reps.iter().any(|r| isomorphic_by_permutations(r, &rows)) {
                reps.push(rows);
            }
        }
        reps.len()
    }

    fn isomorphic_by_permutations(a: &[u64], b: &[u64]) -> bool {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|u| (0..n).all(|v| (a[u] >> v & 1) == (b[perm[u]] >> perm[v] & 1)));
            if ok {
                return true;
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                return false;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn regular_enumeration_examples() {
        let k4 = enumerate_regular(4, 3).unwrap();
        assert_eq!(k4.len(), 1);
        assert!(k4[0].is_isomorphic(&complete_simple(4).unwrap()).unwrap());

        let cubic6 = enumerate_regular(6, 3).unwrap();
        assert_eq!(cubic6.len(), 2);
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(cubic6.iter().any(|g| g.is_isomorphic(&k33).unwrap()));

        assert!(matches!(
            enumerate_regular(3, 1),
            Err(Error::NoSuchGraph(_))
        ));
        assert!(matches!(
            enumerate_regular_capped(12, 2, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn regular_counts_match_brute_force() {
        // small enough for the quadratic permutation-based oracle
        for (n, d) in [
            (4, 2),
            (5, 2),
            (6, 2),
            (6, 3),
            (5, 4),
            (7, 2),
            (7, 4),
            (6, 4),
        ] {
            assert_eq!(
                enumerate_regular(n, d).unwrap().len(),
                brute_force_regular_count(n, d),
                "n={n} d={d}"
            );
        }
    }

    #[test]
    fn known_regular_counts() {
        // cubic graphs on 8 vertices: 5 classes (connected and disconnected)
        assert_eq!(enumerate_regular(8, 3).unwrap().len(), 6);
        // 2-regular graphs on 8 vertices: C8, C5+C3, C4+C4
        assert_eq!(enumerate_regular(8, 2).unwrap().len(), 3);
    }

    #[test]
    fn regular_output_is_regular_and_pairwise_distinct() {
        for (n, d) in [(6, 2), (8, 3), (7, 4)] {
            let gs = enumerate_regular(n, d).unwrap();
            for g in &gs {
                assert_eq!(g.regular_degree(), Some(d));
            }
            for i in 0..gs.len() {
                for j in i + 1..gs.len() {
                    assert!(!gs[i].is_isomorphic(&gs[j]).unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_invariant_under_relabelling() {
        let g = cycle(5).unwrap().with_edge(0, 2).unwrap();
        let code = g.canonical_form().unwrap().code;
        for perm in [[4, 3, 2, 1, 0], [1, 3, 0, 4, 2], [2, 0, 1, 4, 3]] {
            assert_eq!(g.relabel(&perm).canonical_form().unwrap().code, code);
        }
    }

    #[test]
    fn loops_distinguish_targets() {
        let a = TargetGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let b = TargetGraph::from_edges(2, &[(1, 1), (0, 1)]).unwrap();
        let c = TargetGraph::from_edges(2, &[(0, 0), (1, 1)]).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!a.is_isomorphic(&c).unwrap());
    }

    #[test]
    fn graph_class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=5)
            .map(|n| enumerate_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
        // graphs with loops allowed, OEIS A000666
        let counts: Vec<usize> = (0..=4)
            .map(|n| enumerate_targets(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 6, 20, 90]);
    }
}
