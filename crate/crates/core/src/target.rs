//! Bipartite swapping targets and threshold graphs.
//!
//! `H` is a swapping target exactly when the derived graph `H^bst` on
//! `V(H) × V(H)` is bipartite. Threshold graphs (no alternating 4-circuit)
//! are always targets; they are recognised here through nested
//! neighbourhoods and given an explicit integer weight representation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, two_coloring, Bipartiteness, TargetGraph};
use crate::numeric::ser_rational_vec;

/// Largest `n` accepted by [`enumerate_threshold_classes`].
pub const THRESHOLD_ENUM_CAP: usize = 16;

/// The graph `H^bst`. Vertex `(u, v)` has index `u * |V(H)| + v`.
#[derive(Clone, Debug)]
pub struct BstGraph {
    base: usize,
    adj: Vec<Vec<usize>>,
}

impl BstGraph {
    pub fn base_order(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn index(&self, u: usize, v: usize) -> usize {
        u * self.base + v
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        (index / self.base, index % self.base)
    }

    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn has_edge(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.adj[self.index(a.0, a.1)].contains(&self.index(b.0, b.1))
    }

    /// Edges as pairs of pairs, each edge once, self-loops included.
    pub fn edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if j >= i {
                    out.push((self.pair(i), self.pair(j)));
                }
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> Bipartiteness {
        two_coloring(self.adj.len(), |i| self.adj[i].clone())
    }
}

/// `(u,v) ~ (u',v')` iff `uu'` and `vv'` are edges of `H` and at least one of
/// `uv'`, `u'v` is not.
pub fn build_bst_graph(h: &TargetGraph) -> BstGraph {
    let n = h.n();
    let mut adj = vec![Vec::new(); n * n];
    for u in 0..n {
        for v in 0..n {
            for u2 in 0..n {
                if !h.has_edge(u, u2) {
                    continue;
                }
                for v2 in 0..n {
                    if h.has_edge(v, v2) && (!h.has_edge(u, v2) || !h.has_edge(u2, v)) {
                        adj[u * n + v].push(u2 * n + v2);
                    }
                }
            }
        }
    }
    BstGraph { base: n, adj }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TargetVerdict {
    Target,
    NotTarget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetEvidence {
    /// Colour of each `H^bst` vertex, indexed `u * |V(H)| + v`.
    Coloring(Vec<u8>),
    /// Closed odd walk in `H^bst` as a list of pairs.
    OddCycle(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetCertificate {
    pub verdict: TargetVerdict,
    pub evidence: TargetEvidence,
}

impl TargetCertificate {
    /// Re-check the evidence against a freshly built `H^bst`.
    pub fn check(&self, h: &TargetGraph) -> bool {
        let bst = build_bst_graph(h);
        match (&self.verdict, &self.evidence) {
            (TargetVerdict::Target, TargetEvidence::Coloring(c)) => {
                c.len() == bst.vertex_count()
                    && c.iter().all(|&x| x < 2)
                    && (0..bst.vertex_count())
                        .all(|i| bst.neighbors(i).iter().all(|&j| c[i] != c[j]))
            }
            (TargetVerdict::NotTarget, TargetEvidence::OddCycle(cycle)) => {
                cycle.len() % 2 == 1
                    && cycle.iter().all(|&(u, v)| u < h.n() && v < h.n())
                    && (0..cycle.len())
                        .all(|i| bst.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
            }
            _ => false,
        }
    }
}

pub fn certify_target(h: &TargetGraph) -> TargetCertificate {
    let bst = build_bst_graph(h);
    match bst.is_bipartite() {
        Bipartiteness::Bipartite(colors) => TargetCertificate {
            verdict: TargetVerdict::Target,
            evidence: TargetEvidence::Coloring(colors),
        },
        Bipartiteness::OddCycle(cycle) => TargetCertificate {
            verdict: TargetVerdict::NotTarget,
            evidence: TargetEvidence::OddCycle(cycle.into_iter().map(|i| bst.pair(i)).collect()),
        },
    }
}

/// First `(a, b, c, d)` in lexicographic order with `ab, cd ∈ E(H)` and
/// `bc, da ∉ E(H)`. Vertices need not be distinct.
pub fn find_alternating_four_circuit(h: &TargetGraph) -> Option<[usize; 4]> {
    let n = h.n();
    for a in 0..n {
        for b in 0..n {
            if !h.has_edge(a, b) {
                continue;
            }
            for c in 0..n {
                if h.has_edge(b, c) {
                    continue;
                }
                for d in 0..n {
                    if h.has_edge(c, d) && !h.has_edge(d, a) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_alternating_four_circuit(h: &TargetGraph, q: [usize; 4]) -> bool {
    let [a, b, c, d] = q;
    q.iter().all(|&x| x < h.n())
        && h.has_edge(a, b)
        && h.has_edge(c, d)
        && !h.has_edge(b, c)
        && !h.has_edge(d, a)
}

/// `H_{A,t}`: vertex `i` carries `a[i]`; `x ~ y` iff `a[x] + a[y] ≤ t`,
/// loops included.
pub fn threshold_graph(a: &[BigRational], t: &BigRational) -> Result<TargetGraph> {
    if a.is_empty() {
        return Err(Error::invalid("threshold graph needs a nonempty multiset"));
    }
    let n = a.len();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x..n {
            if &(&a[x] + &a[y]) <= t {
                edges.push((x, y));
            }
        }
    }
    TargetGraph::from_edges(n, &edges)
}

/// `H_n = H_{{0..n}, n}`.
pub fn threshold_hn(n: usize) -> Result<TargetGraph> {
    let a: Vec<BigRational> = (0..=n)
        .map(|i| BigRational::from_integer(i.into()))
        .collect();
    threshold_graph(&a, &BigRational::from_integer(n.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdRepresentation {
    /// Weight of each vertex of `H`, by original index.
    #[serde(serialize_with = "ser_rational_vec")]
    pub weights: Vec<BigRational>,
    #[serde(serialize_with = "crate::numeric::ser_rational")]
    pub threshold: BigRational,
    /// Vertices by decreasing degree; neighbourhoods are nested along it.
    pub order: Vec<usize>,
}

impl ThresholdRepresentation {
    pub fn holds_for(&self, h: &TargetGraph) -> bool {
        self.weights.len() == h.n()
            && (0..h.n()).all(|x| {
                (0..h.n()).all(|y| {
                    h.has_edge(x, y) == (&self.weights[x] + &self.weights[y] <= self.threshold)
                })
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdRecognition {
    Threshold(ThresholdRepresentation),
    NotThreshold { circuit: [usize; 4] },
}

/// Sort by decreasing degree (ties by index), then either confirm the nested
/// neighbourhood chain and read weights off the row sums of the reordered
/// adjacency matrix (`a_i = i - r_i`, `t = 0`, 1-based `i`), or return the
/// alternating 4-circuit exhibited by the first break in the chain.
pub fn recognize_threshold(h: &TargetGraph) -> Result<ThresholdRecognition> {
    let n = h.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    for w in order.windows(2) {
        let (vi, vj) = (w[0], w[1]);
        let (ni, nj) = (h.neighbors(vi), h.neighbors(vj));
        if nj & !ni != 0 {
            let y = (nj & !ni).trailing_zeros() as usize;
            let x = (ni & !nj).trailing_zeros() as usize;
            debug_assert!(ni & !nj != 0, "degree order forces a witness on both sides");
            let circuit = [vi, x, vj, y];
            if !is_alternating_four_circuit(h, circuit) {
                return Err(Error::Internal(format!(
                    "bad 4-circuit witness {circuit:?}"
                )));
            }
            return Ok(ThresholdRecognition::NotThreshold { circuit });
        }
    }
    let mut weights = vec![BigRational::zero(); n];
    for (pos, &v) in order.iter().enumerate() {
        let row_sum = order.iter().filter(|&&u| h.has_edge(v, u)).count();
        weights[v] = BigRational::from_integer(BigInt::from(pos as i64 + 1 - row_sum as i64));
    }
    let rep = ThresholdRepresentation {
        weights,
        threshold: BigRational::zero(),
        order,
    };
    if !rep.holds_for(h) {
        return Err(Error::Internal(
            "nested chain did not yield a threshold representation".into(),
        ));
    }
    Ok(ThresholdRecognition::Threshold(rep))
}

/// One graph per arrangement of looped / unlooped vertices in a row, each
/// looped vertex joined to everything on its right. Bit `p` of the index
/// marks position `p` as looped. Exactly `2^n` pairwise non-isomorphic
/// threshold graphs.
pub fn enumerate_threshold_classes(n: usize) -> Result<Vec<TargetGraph>> {
    if n > THRESHOLD_ENUM_CAP {
        return Err(Error::limit(format!(
            "threshold class enumeration capped at {THRESHOLD_ENUM_CAP} vertices"
        )));
    }
    (0u64..(1u64 << n))
        .map(|mask| {
            let mut rows = vec![0u64; n];
            for p in 0..n {
                if mask & bit(p) != 0 {
                    for q in p..n {
                        rows[p] |= bit(q);
                        rows[q] |= bit(p);
                    }
                }
            }
            TargetGraph::from_rows(rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    /// a–b–c path with a loop at a.
    fn looped_path3() -> TargetGraph {
        TargetGraph::from_edges(3, &[(0, 0), (0, 1), (1, 2)]).unwrap()
    }

    fn c5() -> TargetGraph {
        TargetGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
    }

    #[test]
    fn bst_graph_of_looped_path() {
        let bst = build_bst_graph(&looped_path3());
        let (a, b, c) = (0, 1, 2);
        let mut got: Vec<_> = bst
            .edges()
            .into_iter()
            .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
            .collect();
        got.sort();
        let mut expected = vec![
            ((a, c), (a, b)),
            ((a, b), (b, a)),
            ((b, a), (c, b)),
            ((c, b), (b, c)),
            ((b, c), (a, b)),
            ((b, a), (c, a)),
        ]
        .into_iter()
        .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
        .collect::<Vec<_>>();
        expected.sort();
        assert_eq!(got, expected);
        assert!(bst.is_bipartite().is_bipartite());
    }

    #[test]
    fn bst_graph_degenerate_cases() {
        let empty = TargetGraph::empty(3).unwrap();
        assert!(build_bst_graph(&empty).edges().is_empty());
        let single = TargetGraph::from_edges(1, &[(0, 0)]).unwrap();
        let bst = build_bst_graph(&single);
        assert_eq!(bst.vertex_count(), 1);
        assert!(bst.edges().is_empty());
    }

    #[test]
    fn certify_examples() {
        let h1 = TargetGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let cert = certify_target(&h1);
        assert_eq!(cert.verdict, TargetVerdict::Target);
        assert!(cert.check(&h1));

        let cert = certify_target(&c5());
        assert_eq!(cert.verdict, TargetVerdict::NotTarget);
        assert!(cert.check(&c5()));

        // 5-vertex path 0-1-2-3-4 with a loop at the middle vertex
        let h = TargetGraph::from_edges(5, &[(0, 1), (1, 2), (2, 2), (2, 3), (3, 4)]).unwrap();
        let cert = certify_target(&h);
        assert_eq!(cert.verdict, TargetVerdict::NotTarget);
        assert!(cert.check(&h));
        let highlighted = [(0, 2), (1, 2), (2, 3), (2, 4), (1, 3)];
        let bst = build_bst_graph(&h);
        for i in 0..5 {
            assert!(bst.has_edge(highlighted[i], highlighted[(i + 1) % 5]));
        }
    }

    #[test]
    fn forged_certificates_fail_the_check() {
        let h1 = TargetGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let mut cert = certify_target(&h1);
        cert.verdict = TargetVerdict::NotTarget;
        assert!(!cert.check(&h1));
        let forged = TargetCertificate {
            verdict: TargetVerdict::Target,
            evidence: TargetEvidence::Coloring(vec![0; 25]),
        };
        assert!(!forged.check(&c5()));
    }

    #[test]
    fn four_circuit_examples() {
        let h = looped_path3();
        let q = find_alternating_four_circuit(&h).unwrap();
        assert!(is_alternating_four_circuit(&h, q));
        assert!(is_alternating_four_circuit(&h, [1, 2, 2, 1]));

        let loops = TargetGraph::from_edges(2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(find_alternating_four_circuit(&loops), Some([0, 0, 1, 1]));

        for (a, t) in [
            (ints(&[0, 1, 2, 3]), int(3)),
            (ints(&[-2, 5, 1, 1]), int(2)),
        ] {
            let h = threshold_graph(&a, &t).unwrap();
            assert_eq!(find_alternating_four_circuit(&h), None);
        }
    }

    #[test]
    fn threshold_graph_examples() {
        let h1 = threshold_graph(&ints(&[0, 1]), &int(1)).unwrap();
        assert_eq!(h1, TargetGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap());
        let h2 = threshold_graph(&ints(&[0, 1, 2]), &int(2)).unwrap();
        assert_eq!(
            h2,
            TargetGraph::from_edges(3, &[(0, 0), (0, 1), (0, 2), (1, 1)]).unwrap()
        );
        assert_eq!(threshold_hn(2).unwrap(), h2);
        let single = threshold_graph(&ints(&[1]), &int(0)).unwrap();
        assert_eq!((single.n(), single.loop_count()), (1, 0));
        assert!(threshold_graph(&[], &int(0)).is_err());
    }

    #[test]
    fn recognize_young_matrix_example() {
        let rows_sums = [5usize, 3, 2, 1, 1, 0];
        let mut edges = Vec::new();
        for (i, &r) in rows_sums.iter().enumerate() {
            for j in i..r {
                edges.push((i, j));
            }
        }
        let h = TargetGraph::from_edges(6, &edges).unwrap();
        for (i, &r) in rows_sums.iter().enumerate() {
            assert_eq!(h.degree(i), r);
        }
        let ThresholdRecognition::Threshold(rep) = recognize_threshold(&h).unwrap() else {
            panic!("matrix is a Young diagram");
        };
        assert_eq!(rep.weights, ints(&[-4, -1, 1, 3, 4, 6]));
        assert_eq!(rep.threshold, int(0));
        // all 36 predicates
        assert!(rep.holds_for(&h));
    }

    #[test]
    fn recognize_other_examples() {
        match recognize_threshold(&c5()).unwrap() {
            ThresholdRecognition::NotThreshold { circuit } => {
                assert!(is_alternating_four_circuit(&c5(), circuit))
            }
            other => panic!("C5 is not threshold, got {other:?}"),
        }
        let single = TargetGraph::from_edges(1, &[(0, 0)]).unwrap();
        let ThresholdRecognition::Threshold(rep) = recognize_threshold(&single).unwrap() else {
            panic!()
        };
        assert_eq!((rep.weights, rep.threshold), (ints(&[0]), int(0)));
        assert!(matches!(
            recognize_threshold(&complete_graph(3).unwrap()).unwrap(),
            ThresholdRecognition::NotThreshold { .. }
        ));
    }

    #[test]
    fn threshold_class_enumeration() {
        let one = enumerate_threshold_classes(1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].loop_count(), 0);
        assert_eq!(one[1].loop_count(), 1);

        let three = enumerate_threshold_classes(3).unwrap();
        assert_eq!(three.len(), 8);
        let mut by_loops = [0; 4];
        for h in &three {
            by_loops[h.loop_count()] += 1;
        }
        assert_eq!(by_loops, [1, 3, 3, 1]);

        // adjacency matrices of the 3-vertex figure, in canonical Young form
        let figure: Vec<[[u8; 3]; 3]> = vec![
            [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
            [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
            [[1, 1, 0], [1, 0, 0], [0, 0, 0]],
            [[1, 1, 1], [1, 0, 0], [1, 0, 0]],
            [[1, 1, 0], [1, 1, 0], [0, 0, 0]],
            [[1, 1, 1], [1, 1, 0], [1, 0, 0]],
            [[1, 1, 1], [1, 1, 1], [1, 1, 0]],
            [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
        ];
        let figure_graphs: Vec<TargetGraph> = figure
            .iter()
            .map(|m| {
                let mut e = Vec::new();
                for i in 0..3 {
                    for j in i..3 {
                        if m[i][j] == 1 {
                            e.push((i, j));
                        }
                    }
                }
                TargetGraph::from_edges(3, &e).unwrap()
            })
            .collect();
        for h in &three {
            let matches = figure_graphs
                .iter()
                .filter(|f| f.is_isomorphic(h).unwrap())
                .count();
            assert_eq!(matches, 1, "{h:?}");
        }
        assert!(matches!(
            enumerate_threshold_classes(THRESHOLD_ENUM_CAP + 1),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn all_256_threshold_graphs_on_8_vertices_are_recognised() {
        for h in enumerate_threshold_classes(8).unwrap() {
            match recognize_threshold(&h).unwrap() {
                ThresholdRecognition::Threshold(rep) => assert!(rep.holds_for(&h)),
                other => panic!("{h:?} not recognised: {other:?}"),
            }
        }
    }
}
