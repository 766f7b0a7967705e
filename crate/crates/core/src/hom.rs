//! Exact homomorphism counting.
//!
//! Two independent engines live here:
//!
//! * a backtracking search over a greedy "most placed neighbours first"
//!   vertex order, with candidate images filtered by intersecting bitset
//!   neighbourhoods of `H`. It enumerates homomorphisms one by one and is
//!   the source of every `Hom(·,·)` set used elsewhere in the crate;
//! * a sum-product variable-elimination counter over the same constraint
//!   network. Its cost depends on the elimination width rather than on the
//!   number of homomorphisms, so it handles instances such as `hom(C₁₄, K₁₄)`
//!   where enumeration is hopeless.
//!
//! Counts are arbitrary-precision integers; weighted counts are exact
//! rationals.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{bit, complete_target, Bits, SimpleGraph, TargetGraph};
use crate::numeric::binomial;
use crate::target::threshold_graph;

/// Largest factor table the elimination counter will allocate.
pub const DEFAULT_TABLE_BUDGET: usize = 1 << 24;

/// Nonnegative vertex activities on a target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<BigRational>);

impl WeightVector {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::invalid(format!("negative weight {w} at vertex {i}")));
        }
        Ok(WeightVector(weights))
    }

    pub fn unit(n: usize) -> Self {
        WeightVector(vec![BigRational::one(); n])
    }

    pub fn from_integers(ws: &[i64]) -> Result<Self> {
        Self::new(
            ws.iter()
                .map(|&w| BigRational::from_integer(w.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|w| w.is_one())
    }

    fn check_len(&self, h: &TargetGraph) -> Result<()> {
        if self.0.len() != h.n() {
            return Err(Error::invalid(format!(
                "{} weights for a target with {} vertices",
                self.0.len(),
                h.n()
            )));
        }
        Ok(())
    }
}

/// Finite state system: each state has an attribute, an activity, and
/// adjacent vertices must carry states whose attributes sum to at most the
/// threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSystem {
    pub attribute: Vec<BigRational>,
    pub activity: WeightVector,
    pub threshold: BigRational,
}

impl StateSystem {
    pub fn new(
        attribute: Vec<BigRational>,
        activity: WeightVector,
        threshold: BigRational,
    ) -> Result<Self> {
        if attribute.is_empty() {
            return Err(Error::invalid("a state system needs at least one state"));
        }
        if attribute.len() != activity.len() {
            return Err(Error::invalid("attribute and activity lengths differ"));
        }
        Ok(StateSystem {
            attribute,
            activity,
            threshold,
        })
    }
}

// ---------------------------------------------------------------------------
// Backtracking enumeration
// ---------------------------------------------------------------------------

/// Greedy vertex order: repeatedly take the vertex with the most already
/// placed neighbours, breaking ties by larger degree and then smaller index.
pub fn search_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    (g.neighbors(v) & placed).count_ones(),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex remains");
        placed |= bit(v);
        order.push(v);
    }
    order
}

struct Backtrack<'a, F> {
    h: &'a TargetGraph,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    image: Vec<usize>,
    all: u64,
    nodes: u64,
    budget: Option<u64>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Backtrack<'_, F> {
    fn run(&mut self, k: usize) -> Result<ControlFlow<()>> {
        if k == self.order.len() {
            return Ok((self.visit)(&self.image));
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(Error::limit(format!(
                "homomorphism search exceeded {} nodes",
                self.budget.unwrap_or_default()
            )));
        }
        let v = self.order[k];
        let mut domain = self.all;
        for &u in &self.earlier[k] {
            domain &= self.h.neighbors(self.image[u]);
        }
        for x in Bits(domain) {
            self.image[v] = x;
            if self.run(k + 1)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visit every homomorphism `G -> H` as an image vector indexed by `V(G)`.
/// The callback may stop the search early by returning `Break`.
pub fn for_each_hom<F>(
    g: &SimpleGraph,
    h: &TargetGraph,
    budget: Option<u64>,
    visit: F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let order = search_order(g);
    let mut position = vec![0; g.n()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let earlier = order
        .iter()
        .enumerate()
        .map(|(k, &v)| Bits(g.neighbors(v)).filter(|&u| position[u] < k).collect())
        .collect();
    let all = if h.n() == 64 {
        u64::MAX
    } else {
        bit(h.n()) - 1
    };
    let mut search = Backtrack {
        h,
        order,
        earlier,
        image: vec![0; g.n()],
        all,
        nodes: 0,
        budget,
        visit,
    };
    search.run(0).map(|_| ())
}

pub fn enumerate_homs(
    g: &SimpleGraph,
    h: &TargetGraph,
    budget: Option<u64>,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_hom(g, h, budget, |f| {
        out.push(f.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Count by backtracking, summing candidate-set sizes at the last level
/// instead of visiting leaves.
pub fn count_hom_backtracking(
    g: &SimpleGraph,
    h: &TargetGraph,
    budget: Option<u64>,
) -> Result<BigUint> {
    if g.n() == 0 {
        return Ok(BigUint::one());
    }
    let order = search_order(g);
    let last = *order.last().expect("nonempty");
    let head: Vec<usize> = order[..order.len() - 1].to_vec();
    let sub_rows: Vec<u64> = head
        .iter()
        .map(|&v| {
            head.iter()
                .enumerate()
                .filter(|(_, &u)| g.has_edge(u, v))
                .fold(0u64, |acc, (i, _)| acc | bit(i))
        })
        .collect();
    let sub = SimpleGraph::from_rows(sub_rows)?;
    let last_nbrs: Vec<usize> = head
        .iter()
        .enumerate()
        .filter(|(_, &u)| g.has_edge(u, last))
        .map(|(i, _)| i)
        .collect();
    let all = if h.n() == 64 {
        u64::MAX
    } else {
        bit(h.n()) - 1
    };
    let mut total: u128 = 0;
    let mut overflow = false;
    for_each_hom(&sub, h, budget, |f| {
        let mut domain = all;
        for &i in &last_nbrs {
            domain &= h.neighbors(f[i]);
        }
        match total.checked_add(u128::from(domain.count_ones())) {
            Some(t) => total = t,
            None => {
                overflow = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::limit("backtracking count overflowed 128 bits"));
    }
    Ok(BigUint::from(total))
}

// ---------------------------------------------------------------------------
// Variable elimination
// ---------------------------------------------------------------------------

/// Values the elimination counter can accumulate.
pub trait Semiring: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}
impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> Semiring for T {}

struct Factor<T> {
    scope: Vec<usize>,
    table: Vec<T>,
}

/// Min-degree elimination order on the interaction graph of `g`.
fn elimination_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<u64> = g.rows().to_vec();
    let mut alive = if n == 64 { u64::MAX } else { bit(n) - 1 };
    let mut order = Vec::with_capacity(n);
    while alive != 0 {
        let v = Bits(alive)
            .min_by_key(|&v| ((adj[v] & alive).count_ones(), v))
            .expect("alive vertex");
        let nbrs = adj[v] & alive & !bit(v);
        for u in Bits(nbrs) {
            adj[u] |= nbrs & !bit(u);
        }
        alive &= !bit(v);
        order.push(v);
    }
    order
}

/// `Σ_{f ∈ Hom(G,H)} Π_v weight[f(v)]` by variable elimination.
pub fn sum_product<T: Semiring>(
    g: &SimpleGraph,
    h: &TargetGraph,
    weight: &[T],
    table_budget: usize,
) -> Result<T> {
    debug_assert_eq!(weight.len(), h.n());
    let k = h.n();
    if g.n() == 0 {
        return Ok(T::one());
    }
    if k == 0 {
        return Ok(T::zero());
    }
    let mut factors: Vec<Factor<T>> = Vec::new();
    for v in 0..g.n() {
        factors.push(Factor {
            scope: vec![v],
            table: weight.to_vec(),
        });
    }
    let edge_table: Vec<T> = (0..k * k)
        .map(|i| {
            if h.has_edge(i / k, i % k) {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    for (u, v) in g.edges() {
        factors.push(Factor {
            scope: vec![u, v],
            table: edge_table.clone(),
        });
    }

    let mut scalar = T::one();
    for v in elimination_order(g) {
        let (touching, rest): (Vec<_>, Vec<_>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        let mut union: Vec<usize> = touching
            .iter()
            .flat_map(|f| f.scope.iter().copied())
            .collect();
        union.sort_unstable();
        union.dedup();
        let size = k
            .checked_pow(union.len() as u32)
            .filter(|&s| s <= table_budget)
            .ok_or_else(|| {
                Error::limit(format!(
                    "elimination needs a table over {} variables with {k} values each",
                    union.len()
                ))
            })?;
        let out_scope: Vec<usize> = union.iter().copied().filter(|&u| u != v).collect();
        let mut out = vec![T::zero(); size / k];

        // For each factor, the positions of its scope inside `union`.
        let slots: Vec<Vec<usize>> = touching
            .iter()
            .map(|f| {
                f.scope
                    .iter()
                    .map(|x| union.binary_search(x).expect("in union"))
                    .collect()
            })
            .collect();
        let v_slot = union.binary_search(&v).expect("v in union");
        let mut assign = vec![0usize; union.len()];
        for _ in 0..size {
            let mut prod = T::one();
            for (f, s) in touching.iter().zip(&slots) {
                let idx = s.iter().fold(0, |acc, &p| acc * k + assign[p]);
                let val = &f.table[idx];
                if val.is_zero() {
                    prod = T::zero();
                    break;
                }
                prod = prod * val.clone();
            }
            if !prod.is_zero() {
                let out_idx = assign
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != v_slot)
                    .fold(0, |acc, (_, &x)| acc * k + x);
                out[out_idx] = std::mem::replace(&mut out[out_idx], T::zero()) + prod;
            }
            // odometer, last slot fastest
            for p in (0..assign.len()).rev() {
                assign[p] += 1;
                if assign[p] < k {
                    break;
                }
                assign[p] = 0;
            }
        }
        if out_scope.is_empty() {
            scalar = scalar * out.pop().expect("scalar table");
            if scalar.is_zero() {
                return Ok(T::zero());
            }
        } else {
            factors.push(Factor {
                scope: out_scope,
                table: out,
            });
        }
    }
    debug_assert!(factors.is_empty());
    Ok(scalar)
}

/// `hom(G, H)`, exactly.
pub fn count_hom(g: &SimpleGraph, h: &TargetGraph) -> Result<BigUint> {
    sum_product(g, h, &vec![BigUint::one(); h.n()], DEFAULT_TABLE_BUDGET)
}

/// `hom^Λ(G, H) = Σ_f Π_v λ_{f(v)}`.
pub fn count_hom_weighted(
    g: &SimpleGraph,
    h: &TargetGraph,
    lam: &WeightVector,
) -> Result<BigRational> {
    lam.check_len(h)?;
    sum_product(g, h, lam.as_slice(), DEFAULT_TABLE_BUDGET)
}

/// `hom^Λ(K_{a,b}, H)` as a sum over images of the `a`-side: each choice
/// contributes its weight times the `b`-th power of the weighted common
/// neighbourhood. Choices are aggregated by common neighbourhood.
pub fn count_hom_complete_bipartite(
    a: usize,
    b: usize,
    h: &TargetGraph,
    lam: &WeightVector,
) -> Result<BigRational> {
    if a == 0 || b == 0 {
        return Err(Error::invalid(
            "complete bipartite graph needs both parts nonempty",
        ));
    }
    lam.check_len(h)?;
    let all = if h.n() == 64 {
        u64::MAX
    } else {
        bit(h.n()) - 1
    };
    let mut layer: BTreeMap<u64, BigRational> = BTreeMap::from([(all, BigRational::one())]);
    for _ in 0..a {
        let mut next: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (common, w) in &layer {
            for x in 0..h.n() {
                let lx = &lam.as_slice()[x];
                if lx.is_zero() {
                    continue;
                }
                *next
                    .entry(common & h.neighbors(x))
                    .or_insert_with(BigRational::zero) += w * lx;
            }
        }
        layer = next;
    }
    let mut total = BigRational::zero();
    for (common, w) in layer {
        let size: BigRational = Bits(common).map(|y| lam.as_slice()[y].clone()).sum();
        total += w * num_traits::pow(size, b);
    }
    Ok(total)
}

/// Proper colourings of `G` using all of `i` colours, by inclusion–exclusion
/// over `hom(G, K_j)`.
pub fn count_hom_surjective(g: &SimpleGraph, i: usize) -> Result<BigUint> {
    let mut acc = BigInt::zero();
    for j in 0..=i {
        let term = BigInt::from(binomial(i as u64, j as u64) * count_hom(g, &complete_target(j)?)?);
        if (i - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint()
        .ok_or_else(|| Error::Internal("negative surjective count".into()))
}

/// `σ_S(G)`: weighted count of state assignments respecting the threshold on
/// every edge. Delegates to the threshold graph on the attribute values.
pub fn count_states(g: &SimpleGraph, sys: &StateSystem) -> Result<BigRational> {
    let h = threshold_graph(&sys.attribute, &sys.threshold)?;
    count_hom_weighted(g, &h, &sys.activity)
}
