//! Lattice points of dilated stable-set polytopes and their volumes.
//!
//! `i(G, n)` counts vectors in `{0..n}^V` with `x_u + x_v ≤ n` on edges, which
//! is `hom(G, H_n)`. The edge polytope is half-integral, so the count is a
//! quasi-polynomial of period at most 2; each parity is interpolated
//! separately and the shared leading coefficient is `vol(ESTAB(G))`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::gt::{graph_id, GtReport};
use crate::hom::{count_hom, count_hom_complete_bipartite, count_hom_weighted, WeightVector};
use crate::numeric::{
    factorial, rational_from_uint, rational_pow, ser_rational, ser_rational_vec, ser_uint_vec,
    Quantity,
};
use crate::target::threshold_hn;

/// Held-out samples per parity beyond the `N + 1` used for interpolation.
pub const HELD_OUT_PER_PARITY: usize = 2;

/// `i(G, n)`.
pub fn lattice_count(g: &SimpleGraph, n: usize) -> Result<BigUint> {
    count_hom(g, &threshold_hn(n)?)
}

/// Ascending coefficients of the unique polynomial of degree `< points.len()`
/// through the given points (Newton form, expanded).
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<Vec<BigRational>> {
    let m = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for k in (level..m).rev() {
            let dx = &points[k].0 - &points[k - level].0;
            if dx.is_zero() {
                return Err(Error::invalid("interpolation nodes must be distinct"));
            }
            dd[k] = (&dd[k] - &dd[k - 1]) / dx;
        }
    }
    // Horner on the Newton basis, from the highest divided difference down.
    let mut coeffs = vec![BigRational::zero(); m];
    for k in (0..m).rev() {
        let mut next = vec![BigRational::zero(); m];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[j] -= c * &points[k].0;
            if j + 1 < m {
                next[j + 1] += c;
            }
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    Ok(coeffs)
}

fn evaluate_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartQuasiPolynomial {
    /// Ascending coefficients used at even `n`.
    #[serde(serialize_with = "ser_rational_vec")]
    pub even_part: Vec<BigRational>,
    /// Ascending coefficients used at odd `n`.
    #[serde(serialize_with = "ser_rational_vec")]
    pub odd_part: Vec<BigRational>,
    /// `i(G, n)` for `n = 0, 1, ...`, all reproduced exactly.
    #[serde(serialize_with = "ser_uint_vec")]
    pub samples: Vec<BigUint>,
}

impl EhrhartQuasiPolynomial {
    pub fn evaluate(&self, n: usize) -> BigRational {
        let part = if n.is_multiple_of(2) {
            &self.even_part
        } else {
            &self.odd_part
        };
        evaluate_poly(part, &BigRational::from_integer(n.into()))
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.even_part
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.even_part == self.odd_part
    }
}

pub fn ehrhart_interpolate(g: &SimpleGraph) -> Result<EhrhartQuasiPolynomial> {
    let per_parity = g.n() + 1 + HELD_OUT_PER_PARITY;
    let samples: Vec<BigUint> = (0..2 * per_parity)
        .map(|n| lattice_count(g, n))
        .collect::<Result<_>>()?;
    let parts: Vec<Vec<BigRational>> = (0..2)
        .map(|parity| {
            let points: Vec<(BigRational, BigRational)> = (0..per_parity)
                .map(|k| {
                    let n = 2 * k + parity;
                    (
                        BigRational::from_integer(n.into()),
                        rational_from_uint(&samples[n]),
                    )
                })
                .collect();
            let coeffs = interpolate(&points[..g.n() + 1])?;
            for (x, y) in &points[g.n() + 1..] {
                if &evaluate_poly(&coeffs, x) != y {
                    return Err(Error::Internal(format!(
                        "lattice count at n = {x} is off the interpolated polynomial"
                    )));
                }
            }
            Ok(coeffs)
        })
        .collect::<Result<_>>()?;
    let [even_part, odd_part]: [Vec<BigRational>; 2] = parts.try_into().expect("two parities");
    if even_part.last() != odd_part.last() {
        return Err(Error::Internal(
            "even and odd parts disagree on the leading coefficient".into(),
        ));
    }
    Ok(EhrhartQuasiPolynomial {
        even_part,
        odd_part,
        samples,
    })
}

/// `vol(ESTAB(G))`.
pub fn estab_volume(g: &SimpleGraph) -> Result<BigRational> {
    Ok(ehrhart_interpolate(g)?.leading_coefficient())
}

/// `vol(STAB(K_{a,b})) = a! b! / (a+b)!`.
pub fn stab_volume_complete_bipartite(a: usize, b: usize) -> Result<BigRational> {
    if a == 0 || b == 0 {
        return Err(Error::invalid(
            "complete bipartite graph needs both parts nonempty",
        ));
    }
    Ok(BigRational::new(
        BigInt::from(factorial(a as u64) * factorial(b as u64)),
        BigInt::from(factorial((a + b) as u64)),
    ))
}

fn regular_degree(g: &SimpleGraph) -> Result<usize> {
    match g.regular_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::invalid("G must be d-regular with d ≥ 1")),
    }
}

/// `vol(ESTAB(G))^{2d} ≤ vol(ESTAB(K_{d,d}))^N`, with the right side from the
/// closed form.
pub fn check_volume_gt(g: &SimpleGraph) -> Result<GtReport> {
    let d = regular_degree(g)?;
    let lhs = estab_volume(g)?;
    let rhs = stab_volume_complete_bipartite(d, d)?;
    Ok(GtReport::new(
        g,
        graph_id(g),
        d,
        Quantity::Ratio(lhs),
        Quantity::Ratio(rhs),
    ))
}

/// `i(G, n)^{2d} ≤ i(K_{d,d}, n)^N`.
pub fn check_lattice_gt(g: &SimpleGraph, n: usize) -> Result<GtReport> {
    let d = regular_degree(g)?;
    let hn = threshold_hn(n)?;
    let lhs = count_hom(g, &hn)?;
    let rhs = count_hom_complete_bipartite(d, d, &hn, &WeightVector::unit(n + 1))?;
    let rhs = rhs
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Internal("negative count".into()))?;
    Ok(GtReport::new(
        g,
        graph_id(g),
        d,
        Quantity::Count(lhs),
        Quantity::Count(rhs),
    ))
}

/// Values `τ(i/n)` for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledWeightFunction {
    values: Vec<BigRational>,
}

impl SampledWeightFunction {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid(
                "a grid needs resolution n ≥ 1 (n + 1 values)",
            ));
        }
        if values.iter().any(|v| v < &BigRational::zero()) {
            return Err(Error::invalid("weight function values must be nonnegative"));
        }
        Ok(SampledWeightFunction { values })
    }

    pub fn constant(n: usize, value: BigRational) -> Result<Self> {
        Self::new(vec![value; n + 1])
    }

    pub fn resolution(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiemannReport {
    pub resolution: usize,
    /// `n^{-N} hom^{Λ_n}(G, H_n)`
    #[serde(serialize_with = "ser_rational")]
    pub riemann_sum: BigRational,
    /// `n^{-2d} hom^{Λ_n}(K_{d,d}, H_n)`
    #[serde(serialize_with = "ser_rational")]
    pub riemann_sum_kdd: BigRational,
    pub gt: GtReport,
}

/// The finite-resolution weighted inequality
/// `n^{-N} hom^{Λ_n}(G, H_n) ≤ (n^{-2d} hom^{Λ_n}(K_{d,d}, H_n))^{N/2d}`
/// with `λ_i = τ(i/n)`.
pub fn weighted_riemann_check(
    g: &SimpleGraph,
    tau: &SampledWeightFunction,
) -> Result<RiemannReport> {
    let d = regular_degree(g)?;
    let n = tau.resolution();
    let hn = threshold_hn(n)?;
    let lam = WeightVector::new(tau.values.clone())?;
    let scale = BigRational::new(BigInt::one(), BigInt::from(n));
    let riemann_sum = count_hom_weighted(g, &hn, &lam)? * rational_pow(&scale, g.n());
    let riemann_sum_kdd =
        count_hom_complete_bipartite(d, d, &hn, &lam)? * rational_pow(&scale, 2 * d);
    let gt = GtReport::new(
        g,
        graph_id(g),
        d,
        Quantity::Ratio(riemann_sum.clone()),
        Quantity::Ratio(riemann_sum_kdd.clone()),
    );
    Ok(RiemannReport {
        resolution: n,
        riemann_sum,
        riemann_sum_kdd,
        gt,
    })
}
