//! Chromatic polynomials in the binomial basis and the comparison of
//! `P(G ⊔ G, q)` with `P(G × K₂, q)`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bipartite_double, bit, complete_target, disjoint_double, Bits, SimpleGraph};
use crate::hom::{count_hom, for_each_hom};
use crate::numeric::{binomial, binomial_signed, ser_int_vec, ser_uint_vec};

/// `value(q) = Σ c_i · binom(q, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialBasisPolynomial {
    #[serde(serialize_with = "ser_int_vec")]
    pub coefficients: Vec<BigInt>,
}

impl BinomialBasisPolynomial {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        BinomialBasisPolynomial { coefficients }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn evaluate(&self, q: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * binomial_signed(q, i as u64))
            .sum()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        let get = |p: &Self, i: usize| p.coefficients.get(i).cloned().unwrap_or_default();
        BinomialBasisPolynomial::new((0..len).map(|i| get(self, i) - get(other, i)).collect())
    }
}

/// `hom^surj(G, K_i)` for `i = 0..=max_i`, sharing the `hom(G, K_j)` values.
pub fn surjective_counts(g: &SimpleGraph, max_i: usize) -> Result<Vec<BigUint>> {
    let homs: Vec<BigInt> = (0..=max_i)
        .map(|j| Ok(BigInt::from(count_hom(g, &complete_target(j)?)?)))
        .collect::<Result<_>>()?;
    (0..=max_i)
        .map(|i| {
            let mut acc = BigInt::zero();
            for (j, hom) in homs.iter().enumerate().take(i + 1) {
                let term = BigInt::from(binomial(i as u64, j as u64)) * hom;
                if (i - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc.to_biguint()
                .ok_or_else(|| Error::Internal(format!("negative surjective count at i = {i}")))
        })
        .collect()
}

/// `P(G, q)` with coefficients `hom^surj(G, K_i)`, `i = 0..=N`.
pub fn chromatic_binomial(g: &SimpleGraph) -> Result<BinomialBasisPolynomial> {
    Ok(BinomialBasisPolynomial::new(
        surjective_counts(g, g.n())?
            .into_iter()
            .map(BigInt::from)
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectiveProfilePair {
    /// `hom^surj(G ⊔ G, K_i)`, `i = 0..=2N`.
    #[serde(serialize_with = "ser_uint_vec")]
    pub disjoint: Vec<BigUint>,
    /// `hom^surj(G × K₂, K_i)`, `i = 0..=2N`.
    #[serde(serialize_with = "ser_uint_vec")]
    pub crossed: Vec<BigUint>,
}

pub fn surjective_profile_pair(g: &SimpleGraph) -> Result<SurjectiveProfilePair> {
    let top = 2 * g.n();
    Ok(SurjectiveProfilePair {
        disjoint: surjective_counts(&disjoint_double(g)?, top)?,
        crossed: surjective_counts(&bipartite_double(g)?, top)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCompareReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub odd_girth: usize,
    /// `2N - t + 1`
    pub strict_at: usize,
    pub profiles: SurjectiveProfilePair,
    pub equal_above: bool,
    pub strict_below: bool,
}

impl CoefficientCompareReport {
    pub fn passed(&self) -> bool {
        self.equal_above && self.strict_below
    }
}

/// Equality for `i ≥ 2N - t + 2` and `disjoint < crossed` at `i = 2N - t + 1`,
/// with `t` the odd girth.
pub fn verify_coefficient_compare(g: &SimpleGraph) -> Result<CoefficientCompareReport> {
    let t = g
        .odd_girth()
        .ok_or_else(|| Error::invalid("coefficient comparison needs a non-bipartite graph"))?;
    let profiles = surjective_profile_pair(g)?;
    Ok(compare_profiles(g.n(), t, profiles))
}

pub fn compare_profiles(
    n: usize,
    t: usize,
    profiles: SurjectiveProfilePair,
) -> CoefficientCompareReport {
    let strict_at = 2 * n + 1 - t;
    let equal_above = (strict_at + 1..=2 * n).all(|i| profiles.disjoint[i] == profiles.crossed[i]);
    let strict_below = profiles.disjoint[strict_at] < profiles.crossed[strict_at];
    CoefficientCompareReport {
        n,
        odd_girth: t,
        strict_at,
        profiles,
        equal_above,
        strict_below,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn of(x: &BigInt) -> Self {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "crate::numeric::ser_int")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::numeric::ser_int")]
    pub difference: BigInt,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceCertificate {
    /// `P(G × K₂, ·) - P(G ⊔ G, ·)` in the binomial basis.
    pub difference: BinomialBasisPolynomial,
    pub top_index: Option<usize>,
    pub top_sign: Sign,
    /// `(2N)^{2N+2}`
    #[serde(serialize_with = "crate::numeric::ser_uint")]
    pub stated_bound: BigUint,
    /// `(2N-t+1)^2 (2N-t)^{2N} + 2N - t`; absent for bipartite `G`.
    #[serde(serialize_with = "ser_opt_uint")]
    pub proof_bound: Option<BigUint>,
    pub evaluations: Vec<Evaluation>,
}

fn ser_opt_uint<S: serde::Serializer>(
    x: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

pub fn dominance_certificate(g: &SimpleGraph, eval_at: &[BigInt]) -> Result<DominanceCertificate> {
    let profiles = surjective_profile_pair(g)?;
    let to_poly =
        |v: &[BigUint]| BinomialBasisPolynomial::new(v.iter().cloned().map(BigInt::from).collect());
    let difference = to_poly(&profiles.crossed).sub(&to_poly(&profiles.disjoint));
    let top_index = difference.degree();
    let top_sign = top_index.map_or(Sign::Zero, |i| Sign::of(&difference.coefficients[i]));
    let two_n = 2 * g.n() as u64;
    let stated_bound = num_traits::pow(BigUint::from(two_n), 2 * g.n() + 2);
    let proof_bound = g.odd_girth().map(|t| {
        let m = two_n - t as u64;
        num_traits::pow(BigUint::from(m + 1), 2) * num_traits::pow(BigUint::from(m), 2 * g.n()) + m
    });
    let evaluations = eval_at
        .iter()
        .map(|q| {
            let difference = difference.evaluate(q);
            Evaluation {
                q: q.clone(),
                sign: Sign::of(&difference),
                difference,
            }
        })
        .collect();
    Ok(DominanceCertificate {
        difference,
        top_index,
        top_sign,
        stated_bound,
        proof_bound,
        evaluations,
    })
}

/// Indices `i` with `hom^surj(G ⊔ G, K_i) > hom^surj(G × K₂, K_i)`.
pub fn term_dominance_violations(g: &SimpleGraph) -> Result<Vec<usize>> {
    let p = surjective_profile_pair(g)?;
    Ok((0..p.disjoint.len())
        .filter(|&i| p.disjoint[i] > p.crossed[i])
        .collect())
}

/// Longest cycle and longest odd cycle (0 when absent) in the graph given by
/// edge list over `n` vertices.
pub fn longest_cycles(n: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let mut rows = vec![0u64; n];
    for &(u, v) in edges {
        rows[u] |= bit(v);
        rows[v] |= bit(u);
    }
    fn extend(
        rows: &[u64],
        start: usize,
        at: usize,
        visited: u64,
        len: usize,
        best: &mut (usize, usize),
    ) {
        for w in Bits(rows[at]) {
            if w == start && len >= 3 {
                best.0 = best.0.max(len);
                if len % 2 == 1 {
                    best.1 = best.1.max(len);
                }
            } else if w > start && visited & bit(w) == 0 {
                extend(rows, start, w, visited | bit(w), len + 1, best);
            }
        }
    }
    let mut best = (0, 0);
    for s in 0..n {
        extend(&rows, s, s, bit(s), 1, &mut best);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleBoundSide {
    pub checked: u64,
    pub with_violated_cycle: u64,
    pub failures: u64,
    /// Colourings meeting their bound with equality.
    pub tight: u64,
    /// Colourings whose violated edges contain an odd cycle.
    pub with_odd_cycle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleBoundReport {
    pub colors: usize,
    pub exhaustive: bool,
    pub disjoint: CycleBoundSide,
    pub crossed: CycleBoundSide,
}

impl CycleBoundReport {
    pub fn passed(&self) -> bool {
        self.disjoint.failures == 0 && self.crossed.failures == 0
    }
}

/// Surjective `i`-colourings of a doubled graph: every one when
/// `samples == 0`, otherwise `samples` colourings found by randomised search.
fn surjective_colorings<F>(
    doubled: &SimpleGraph,
    i: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[usize]),
{
    let k = complete_target(i)?;
    if samples == 0 {
        return for_each_hom(doubled, &k, None, |f| {
            let used = f.iter().fold(0u64, |acc, &c| acc | bit(c));
            if used.count_ones() as usize == i {
                visit(f);
            }
            ControlFlow::Continue(())
        });
    }
    let n = doubled.n();
    if i > n || (i == 0 && n > 0) {
        return Ok(());
    }
    let mut found = 0;
    let mut attempts = 0usize;
    while found < samples && attempts < samples * 1000 {
        attempts += 1;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut colors = vec![usize::MAX; n];
        let mut ok = true;
        for &v in &order {
            let free: Vec<usize> = (0..i)
                .filter(|&c| Bits(doubled.neighbors(v)).all(|u| colors[u] != c))
                .collect();
            if free.is_empty() {
                ok = false;
                break;
            }
            colors[v] = free[rng.random_range(0..free.len())];
        }
        if ok
            && colors
                .iter()
                .fold(0u64, |acc, &c| acc | bit(c))
                .count_ones() as usize
                == i
        {
            visit(&colors);
            found += 1;
        }
    }
    Ok(())
}

/// For colourings `f` in `Hom^surj` of each doubled graph with `i` colours,
/// find the longest cycle of length `ℓ` among the edges of `G` violated by
/// `pair(f)` and check `i ≤ 2N - ℓ + 1`, and `i ≤ 2N - ℓ` for odd `ℓ` on
/// the `G ⊔ G` side.
pub fn verify_cycle_violation_bounds(
    g: &SimpleGraph,
    i: usize,
    samples: usize,
    seed: u64,
) -> Result<CycleBoundReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = g.edges();
    let two_n = 2 * g.n();
    let mut cache: HashMap<u64, (usize, usize)> = HashMap::new();
    let mut sides = Vec::new();
    for disjoint in [true, false] {
        let doubled = if disjoint {
            disjoint_double(g)?
        } else {
            bipartite_double(g)?
        };
        let mut side = CycleBoundSide {
            checked: 0,
            with_violated_cycle: 0,
            failures: 0,
            tight: 0,
            with_odd_cycle: 0,
        };
        surjective_colorings(&doubled, i, samples, &mut rng, |f| {
            side.checked += 1;
            let mut mask = 0u64;
            for (k, &(u, v)) in edges.iter().enumerate() {
                let (a0, a1) = (f[2 * u], f[2 * u + 1]);
                let (b0, b1) = (f[2 * v], f[2 * v + 1]);
                if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
                    mask |= bit(k);
                }
            }
            let (longest, longest_odd) = *cache.entry(mask).or_insert_with(|| {
                let violated: Vec<(usize, usize)> = Bits(mask).map(|k| edges[k]).collect();
                longest_cycles(g.n(), &violated)
            });
            if longest == 0 {
                return;
            }
            side.with_violated_cycle += 1;
            let mut bound = two_n + 1 - longest;
            if longest_odd > 0 {
                side.with_odd_cycle += 1;
                if disjoint {
                    bound = bound.min(two_n - longest_odd);
                }
            }
            if i > bound {
                side.failures += 1;
            } else if i == bound {
                side.tight += 1;
            }
        })?;
        sides.push(side);
    }
    let crossed = sides.pop().expect("two sides");
    let disjoint = sides.pop().expect("two sides");
    Ok(CycleBoundReport {
        colors: i,
        exhaustive: samples == 0,
        disjoint,
        crossed,
    })
}

/// `P(G, q)` at a nonnegative integer, as a plain count.
pub fn chromatic_value(g: &SimpleGraph, q: usize) -> Result<BigUint> {
    count_hom(g, &complete_target(q)?)
}
