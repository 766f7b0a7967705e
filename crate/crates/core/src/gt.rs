//! Exact checks of `hom(G,H) ≤ hom(K_{d,d},H)^{N/2d}` and its relatives.
//!
//! Fractional exponents are cleared by cross-powering: the report compares
//! `lhs^{2d}` with `rhs^N`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::enumerate_regular;
use crate::error::{Error, Result};
use crate::format::simple_graph_to_text;
use crate::graph::{
    bipartite_double, complete_bipartite, disjoint_double, SimpleGraph, TargetGraph,
};
use crate::hom::{count_hom, count_hom_complete_bipartite, count_hom_weighted, WeightVector};
use crate::numeric::Quantity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GtReport {
    pub graph_id: String,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub lhs: Quantity,
    pub rhs_base: Quantity,
    pub cross_power_lhs: Quantity,
    pub cross_power_rhs: Quantity,
    pub verdict: Verdict,
    /// The source graph in file format, present when the verdict is FAILS.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl GtReport {
    pub(crate) fn new(
        g: &SimpleGraph,
        graph_id: String,
        d: usize,
        lhs: Quantity,
        rhs_base: Quantity,
    ) -> Self {
        let n = g.n();
        let cross_power_lhs = lhs.pow(2 * d);
        let cross_power_rhs = rhs_base.pow(n);
        let verdict = Verdict::from_bool(cross_power_lhs <= cross_power_rhs);
        GtReport {
            graph_id,
            d,
            n,
            lhs,
            rhs_base,
            cross_power_lhs,
            cross_power_rhs,
            verdict,
            witness: (verdict == Verdict::Fails).then(|| simple_graph_to_text(g)),
        }
    }
}

/// Canonical identifier `N-d-code` for graphs small enough to canonicalise.
pub fn graph_id(g: &SimpleGraph) -> String {
    let d = g
        .regular_degree()
        .map_or("x".to_string(), |d| d.to_string());
    match g.canonical_form() {
        Ok(c) => format!("n{}-d{}-{:x}", g.n(), d, c.code),
        Err(_) => format!("n{}-d{}-e{}", g.n(), d, g.edge_count()),
    }
}

fn positive_degree(g: &SimpleGraph) -> Result<usize> {
    match g.regular_degree() {
        Some(d) if d >= 1 => Ok(d),
        Some(_) => Err(Error::invalid("the inequality needs degree d ≥ 1")),
        None => Err(Error::invalid("G is not regular")),
    }
}

pub fn check_gt(g: &SimpleGraph, h: &TargetGraph) -> Result<GtReport> {
    let d = positive_degree(g)?;
    let lhs = count_hom(g, h)?;
    let rhs = count_hom(&complete_bipartite(d, d)?, h)?;
    Ok(GtReport::new(
        g,
        graph_id(g),
        d,
        Quantity::Count(lhs),
        Quantity::Count(rhs),
    ))
}

/// Weighted form, `hom^Λ(G,H) ≤ hom^Λ(K_{d,d},H)^{N/2d}`.
pub fn check_wgt(g: &SimpleGraph, h: &TargetGraph, lam: &WeightVector) -> Result<GtReport> {
    let d = positive_degree(g)?;
    let lhs = count_hom_weighted(g, h, lam)?;
    let rhs = count_hom_complete_bipartite(d, d, h, lam)?;
    Ok(GtReport::new(
        g,
        graph_id(g),
        d,
        Quantity::Ratio(lhs),
        Quantity::Ratio(rhs),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StronglyGtReport {
    pub graph_id: String,
    #[serde(serialize_with = "crate::numeric::ser_uint")]
    pub hom_disjoint: BigUint,
    #[serde(serialize_with = "crate::numeric::ser_uint")]
    pub hom_crossed: BigUint,
    pub verdict: Verdict,
}

/// `hom(G ⊔ G, H) ≤ hom(G × K₂, H)`, for any `G`.
pub fn check_strongly_gt(g: &SimpleGraph, h: &TargetGraph) -> Result<StronglyGtReport> {
    let hom_disjoint = count_hom(&disjoint_double(g)?, h)?;
    let hom_crossed = count_hom(&bipartite_double(g)?, h)?;
    Ok(StronglyGtReport {
        graph_id: graph_id(g),
        verdict: Verdict::from_bool(hom_disjoint <= hom_crossed),
        hom_disjoint,
        hom_crossed,
    })
}

/// Every isomorphism class of `d`-regular graph with `N ≤ n_max`,
/// `1 ≤ d ≤ d_max`, ordered by `(N, d)` then enumeration order.
pub fn regular_corpus(n_max: usize, d_max: usize) -> Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for d in 1..=d_max.min(n - 1) {
            if n * d % 2 == 0 {
                out.extend(enumerate_regular(n, d)?);
            }
        }
    }
    Ok(out)
}

/// One report per corpus graph, in corpus order. With weights the weighted
/// inequality is checked instead.
pub fn scan_corpus(
    h: &TargetGraph,
    n_max: usize,
    d_max: usize,
    lam: Option<&WeightVector>,
) -> Result<Vec<GtReport>> {
    let corpus = regular_corpus(n_max, d_max)?;
    corpus
        .par_iter()
        .map(|g| match lam {
            Some(lam) => check_wgt(g, h, lam),
            None => check_gt(g, h),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, complete_simple, cycle};
    use crate::target::enumerate_threshold_classes;

    fn h1() -> TargetGraph {
        TargetGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap()
    }

    fn two_loops() -> TargetGraph {
        TargetGraph::from_edges(2, &[(0, 0), (1, 1)]).unwrap()
    }

    fn prism() -> SimpleGraph {
        SimpleGraph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    fn count(x: u64) -> Quantity {
        Quantity::Count(BigUint::from(x))
    }

    #[test]
    fn two_loops_counterexample() {
        let r = check_gt(&complete_simple(3).unwrap(), &two_loops()).unwrap();
        assert_eq!((r.d, r.n), (2, 3));
        assert_eq!(r.cross_power_lhs, count(16));
        assert_eq!(r.cross_power_rhs, count(8));
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witness.as_deref(), Some("3 3 0\n0 1\n0 2\n1 2\n"));
    }

    #[test]
    fn prism_into_h1() {
        let r = check_gt(&prism(), &h1()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs_base.clone()), (count(13), count(15)));
        assert_eq!(r.cross_power_lhs, count(13u64.pow(6)));
        assert!(r.verdict.holds());
        assert!(r.witness.is_none());
    }

    #[test]
    fn complete_bipartite_is_tight() {
        for d in 1..=3 {
            let g = complete_bipartite(d, d).unwrap();
            for h in [h1(), two_loops(), complete_graph(3).unwrap()] {
                let r = check_gt(&g, &h).unwrap();
                assert_eq!(r.cross_power_lhs, r.cross_power_rhs);
            }
        }
    }

    #[test]
    fn zero_right_side() {
        // nothing maps into an edgeless target
        let h = TargetGraph::empty(2).unwrap();
        let r = check_gt(&cycle(5).unwrap(), &h).unwrap();
        assert!(r.rhs_base.is_zero() && r.lhs.is_zero());
        assert!(r.verdict.holds());
    }

    #[test]
    fn non_regular_is_rejected() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            check_gt(&g, &h1()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(check_gt(&SimpleGraph::empty(3).unwrap(), &h1()).is_err());
    }

    #[test]
    fn weighted_examples() {
        let lam = WeightVector::from_integers(&[1, 2]).unwrap();
        let r = check_wgt(&complete_simple(3).unwrap(), &h1(), &lam).unwrap();
        assert_eq!(r.lhs.to_string(), "7/1");
        assert_eq!(r.rhs_base.to_string(), "17/1");
        assert_eq!(r.cross_power_lhs.to_string(), "2401/1");
        assert_eq!(r.cross_power_rhs.to_string(), "4913/1");
        assert!(r.verdict.holds());

        let zero = WeightVector::from_integers(&[0, 0]).unwrap();
        assert!(check_wgt(&prism(), &h1(), &zero).unwrap().verdict.holds());

        let unit = WeightVector::unit(2);
        for g in regular_corpus(6, 3).unwrap() {
            for h in [h1(), two_loops()] {
                assert_eq!(
                    check_wgt(&g, &h, &unit).unwrap().verdict,
                    check_gt(&g, &h).unwrap().verdict
                );
            }
        }
    }

    #[test]
    fn strongly_gt_examples() {
        let k3 = complete_simple(3).unwrap();
        let r = check_strongly_gt(&k3, &h1()).unwrap();
        assert_eq!(
            (r.hom_disjoint.clone(), r.hom_crossed.clone()),
            (16u32.into(), 18u32.into())
        );
        assert!(r.verdict.holds());
        let r = check_strongly_gt(&k3, &two_loops()).unwrap();
        assert_eq!(
            (r.hom_disjoint.clone(), r.hom_crossed.clone()),
            (4u32.into(), 2u32.into())
        );
        assert_eq!(r.verdict, Verdict::Fails);
        let c4 = cycle(4).unwrap();
        let r = check_strongly_gt(&c4, &two_loops()).unwrap();
        assert_eq!(r.hom_disjoint, r.hom_crossed);
    }

    #[test]
    fn cross_power_scaling_is_harmless() {
        for g in regular_corpus(6, 3).unwrap() {
            let r = check_gt(&g, &two_loops()).unwrap();
            let scaled = r.cross_power_lhs.pow(3) <= r.cross_power_rhs.pow(3);
            assert_eq!(scaled, r.verdict.holds());
        }
    }

    #[test]
    fn scans() {
        let fails: Vec<_> = scan_corpus(&two_loops(), 4, 2, None)
            .unwrap()
            .into_iter()
            .filter(|r| !r.verdict.holds())
            .collect();
        assert!(fails.iter().any(|r| r.n == 3 && r.d == 2));

        for h in enumerate_threshold_classes(3).unwrap() {
            assert!(scan_corpus(&h, 8, 3, None)
                .unwrap()
                .iter()
                .all(|r| r.verdict.holds()));
        }
        let k3 = complete_graph(3).unwrap();
        assert!(scan_corpus(&k3, 6, 5, None)
            .unwrap()
            .iter()
            .all(|r| r.verdict.holds()));
    }

    #[test]
    fn report_serialises_numbers_as_strings() {
        let r = check_gt(&complete_simple(3).unwrap(), &two_loops()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["cross_power_lhs"], "16");
        assert_eq!(v["verdict"], "FAILS");
        assert_eq!(v["N"], 3);
    }
}
