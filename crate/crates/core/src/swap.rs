//! Pair-labelings and the swap that carries `Hom(G ⊔ G, H)` to
//! `Hom(G × K₂, H)` on labelings with the bipartite swapping property.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    bipartite_double, bit, disjoint_double, two_coloring, Bipartiteness, SimpleGraph, TargetGraph,
};
use crate::hom::for_each_hom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LabelingMode {
    /// `p_i(u) p_i(v) ∈ E(H)` for every edge: an element of `Hom(G ⊔ G, H)`.
    Disjoint,
    /// `p_i(u) p_{1-i}(v) ∈ E(H)` for every edge: an element of `Hom(G × K₂, H)`.
    Crossed,
    Raw,
}

impl LabelingMode {
    pub fn flipped(self) -> Self {
        match self {
            LabelingMode::Disjoint => LabelingMode::Crossed,
            LabelingMode::Crossed => LabelingMode::Disjoint,
            LabelingMode::Raw => LabelingMode::Raw,
        }
    }
}

/// An assignment `V(G) -> V(H) × V(H)` tagged with the constraint system it
/// is known to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairLabeling<'a> {
    g: &'a SimpleGraph,
    h: &'a TargetGraph,
    labels: Vec<(usize, usize)>,
    mode: LabelingMode,
}

impl<'a> PairLabeling<'a> {
    pub fn new(
        g: &'a SimpleGraph,
        h: &'a TargetGraph,
        labels: Vec<(usize, usize)>,
        mode: LabelingMode,
    ) -> Result<Self> {
        if labels.len() != g.n() {
            return Err(Error::invalid(format!(
                "{} labels for a graph on {} vertices",
                labels.len(),
                g.n()
            )));
        }
        if let Some(v) = labels.iter().position(|&(a, b)| a >= h.n() || b >= h.n()) {
            return Err(Error::invalid(format!(
                "label of vertex {v} is not a vertex pair of H"
            )));
        }
        let p = PairLabeling { g, h, labels, mode };
        if let Some((u, v)) = p.first_mode_violation(mode) {
            return Err(Error::invalid(format!(
                "edge {u} {v} breaks the {mode:?} constraint"
            )));
        }
        Ok(p)
    }

    /// Read a homomorphism of the doubled graph, indexed `2v + i`.
    pub fn from_doubled_image(
        g: &'a SimpleGraph,
        h: &'a TargetGraph,
        image: &[usize],
        mode: LabelingMode,
    ) -> Result<Self> {
        if image.len() != 2 * g.n() {
            return Err(Error::invalid("doubled image has the wrong length"));
        }
        let labels = (0..g.n())
            .map(|v| (image[2 * v], image[2 * v + 1]))
            .collect();
        Self::new(g, h, labels, mode)
    }

    pub fn to_doubled_image(&self) -> Vec<usize> {
        self.labels.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    pub fn graph(&self) -> &'a SimpleGraph {
        self.g
    }

    pub fn target(&self) -> &'a TargetGraph {
        self.h
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn mode(&self) -> LabelingMode {
        self.mode
    }

    pub fn satisfies(&self, mode: LabelingMode) -> bool {
        self.first_mode_violation(mode).is_none()
    }

    fn first_mode_violation(&self, mode: LabelingMode) -> Option<(usize, usize)> {
        let h = self.h;
        self.g.edges().into_iter().find(|&(u, v)| {
            let (a0, a1) = self.labels[u];
            let (b0, b1) = self.labels[v];
            match mode {
                LabelingMode::Disjoint => !(h.has_edge(a0, b0) && h.has_edge(a1, b1)),
                LabelingMode::Crossed => !(h.has_edge(a0, b1) && h.has_edge(a1, b0)),
                LabelingMode::Raw => false,
            }
        })
    }
}

/// Edges of `G` on which some cross pair of labels is non-adjacent in `H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ViolationSet {
    pub edges: Vec<(usize, usize)>,
}

impl ViolationSet {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn rows(&self, n: usize) -> Vec<u64> {
        let mut rows = vec![0u64; n];
        for &(u, v) in &self.edges {
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        }
        rows
    }

    fn coloring(&self, n: usize) -> Bipartiteness {
        let rows = self.rows(n);
        two_coloring(n, |u| crate::graph::Bits(rows[u]).collect())
    }
}

pub fn violated_edges(p: &PairLabeling<'_>) -> ViolationSet {
    let h = p.h;
    let edges = p
        .g
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            let (a0, a1) = p.labels[u];
            let (b0, b1) = p.labels[v];
            !(h.has_edge(a0, b0) && h.has_edge(a0, b1) && h.has_edge(a1, b0) && h.has_edge(a1, b1))
        })
        .collect();
    ViolationSet { edges }
}

pub fn has_bsp(p: &PairLabeling<'_>) -> bool {
    violated_edges(p).coloring(p.g.n()).is_bipartite()
}

/// The lexicographically least `W` meeting every edge of `F` exactly once
/// and avoiding `F`-isolated vertices: in each component of `(V, F)` with an
/// edge, the colour class away from the component's minimum vertex.
pub fn canonical_crossing_set(g: &SimpleGraph, f: &ViolationSet) -> Result<Vec<usize>> {
    if let Some(&(u, v)) = f.edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::invalid(format!("{u} {v} is not an edge of G")));
    }
    let rows = f.rows(g.n());
    match f.coloring(g.n()) {
        Bipartiteness::OddCycle(cycle) => Err(Error::NotBipartite { cycle }),
        Bipartiteness::Bipartite(colors) => Ok((0..g.n())
            .filter(|&v| rows[v] != 0 && colors[v] == 1)
            .collect()),
    }
}

/// Exchange the two coordinates at every vertex of `w`. The result is `Raw`.
pub fn swap<'a>(p: &PairLabeling<'a>, w: &[usize]) -> PairLabeling<'a> {
    let mut labels = p.labels.clone();
    for &v in w {
        let (a, b) = labels[v];
        labels[v] = (b, a);
    }
    PairLabeling {
        g: p.g,
        h: p.h,
        labels,
        mode: LabelingMode::Raw,
    }
}

/// Swap on the canonical crossing set of the violated edges and flip the mode.
pub fn transport<'a>(p: &PairLabeling<'a>) -> Result<PairLabeling<'a>> {
    if p.mode == LabelingMode::Raw {
        return Err(Error::invalid(
            "transport needs a DISJOINT or CROSSED labeling",
        ));
    }
    let w = canonical_crossing_set(p.g, &violated_edges(p))?;
    let mut out = swap(p, &w);
    let target = p.mode.flipped();
    if let Some((u, v)) = out.first_mode_violation(target) {
        return Err(Error::Internal(format!(
            "swapped labeling breaks the {target:?} constraint on {u} {v}"
        )));
    }
    out.mode = target;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapBijectionReport {
    pub hom_disjoint: u64,
    pub hom_crossed: u64,
    pub bsp_disjoint: u64,
    pub bsp_crossed: u64,
    pub image_ok: bool,
    pub injective_ok: bool,
    pub roundtrip_ok: bool,
}

impl SwapBijectionReport {
    pub fn passed(&self) -> bool {
        self.bsp_disjoint == self.bsp_crossed
            && self.image_ok
            && self.injective_ok
            && self.roundtrip_ok
    }
}

fn bsp_labelings(
    g: &SimpleGraph,
    h: &TargetGraph,
    mode: LabelingMode,
    budget: Option<u64>,
) -> Result<(u64, Vec<Vec<(usize, usize)>>)> {
    let doubled = match mode {
        LabelingMode::Disjoint => disjoint_double(g)?,
        _ => bipartite_double(g)?,
    };
    let mut total = 0u64;
    let mut out = Vec::new();
    let mut failure = None;
    for_each_hom(&doubled, h, budget, |image| {
        total += 1;
        match PairLabeling::from_doubled_image(g, h, image, mode) {
            Ok(p) => {
                if has_bsp(&p) {
                    out.push(p.labels);
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(Error::Internal(format!(
            "doubled homomorphism rejected: {e}"
        ))),
        None => Ok((total, out)),
    }
}

/// Enumerate both bsp sets, push every element through [`transport`], and
/// check that the images land in the other set, are distinct, and return
/// home under a second transport.
pub fn verify_swap_bijection(
    g: &SimpleGraph,
    h: &TargetGraph,
    budget: Option<u64>,
) -> Result<SwapBijectionReport> {
    let (hom_disjoint, disjoint) = bsp_labelings(g, h, LabelingMode::Disjoint, budget)?;
    let (hom_crossed, crossed) = bsp_labelings(g, h, LabelingMode::Crossed, budget)?;
    let mut image_ok = true;
    let mut injective_ok = true;
    let mut roundtrip_ok = true;
    for (from, to, mode) in [
        (&disjoint, &crossed, LabelingMode::Disjoint),
        (&crossed, &disjoint, LabelingMode::Crossed),
    ] {
        let targets: HashSet<&Vec<(usize, usize)>> = to.iter().collect();
        let mut images = HashSet::with_capacity(from.len());
        for labels in from {
            let p = PairLabeling::new(g, h, labels.clone(), mode)?;
            let q = match transport(&p) {
                Ok(q) => q,
                Err(_) => {
                    image_ok = false;
                    continue;
                }
            };
            image_ok &= has_bsp(&q) && targets.contains(&q.labels);
            roundtrip_ok &= transport(&q).map(|r| r.labels == p.labels).unwrap_or(false);
            injective_ok &= images.insert(q.labels);
        }
    }
    Ok(SwapBijectionReport {
        hom_disjoint,
        hom_crossed,
        bsp_disjoint: disjoint.len() as u64,
        bsp_crossed: crossed.len() as u64,
        image_ok,
        injective_ok,
        roundtrip_ok,
    })
}

/// Search `Hom(G ⊔ G, H)` for a labeling without the bipartite swapping
/// property. Homomorphisms of `G ⊔ G` are pairs of homomorphisms of `G`, so
/// `Hom(G, H)` is listed once and all ordered pairs are tried.
pub fn find_bsp_failure(
    g: &SimpleGraph,
    h: &TargetGraph,
    budget: Option<u64>,
) -> Result<Option<Vec<(usize, usize)>>> {
    let edges = g.edges();
    if edges.len() > 64 {
        return Err(Error::limit("bsp search supports at most 64 source edges"));
    }
    let mut homs = Vec::new();
    for_each_hom(g, h, budget, |f| {
        homs.push(f.to_vec());
        ControlFlow::Continue(())
    })?;
    let mut bipartite: HashMap<u64, bool> = HashMap::new();
    for f0 in &homs {
        for f1 in &homs {
            let mut mask = 0u64;
            for (k, &(u, v)) in edges.iter().enumerate() {
                if !(h.has_edge(f0[u], f1[v]) && h.has_edge(f1[u], f0[v])) {
                    mask |= bit(k);
                }
            }
            if mask == 0 {
                continue;
            }
            let ok = *bipartite.entry(mask).or_insert_with(|| {
                let f = ViolationSet {
                    edges: crate::graph::Bits(mask).map(|k| edges[k]).collect(),
                };
                f.coloring(g.n()).is_bipartite()
            });
            if !ok {
                return Ok(Some(f0.iter().zip(f1).map(|(&a, &b)| (a, b)).collect()));
            }
        }
    }
    Ok(None)
}
