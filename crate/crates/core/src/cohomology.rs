//! Borel–Weil–Bott: cohomology of `E_λ` and its twists `E_λ(-t)`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::parabolic::ParabolicContext;
use crate::rational::Rational;
use crate::rootspace::{RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BwbOutcome {
    /// `ν + ρ` is orthogonal to a positive root: all cohomology vanishes.
    Singular,
    /// Cohomology is concentrated in degree `index` and is the irreducible
    /// `G`-module with highest weight `dominant_rep = w(ν+ρ) - ρ`.
    Regular { index: usize, dominant_rep: Weight },
}

impl BwbOutcome {
    pub fn is_singular(&self) -> bool {
        matches!(self, BwbOutcome::Singular)
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            BwbOutcome::Singular => None,
            BwbOutcome::Regular { index, .. } => Some(*index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub twist: i64,
    pub outcome: BwbOutcome,
    /// The only degree with nonzero cohomology, if any.
    pub nonzero_degree: Option<usize>,
}

/// Which node to reflect at when several simple pairings are negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionOrder {
    SmallestFirst,
    LargestFirst,
}

/// `(ν + ρ, α)` for every positive root, in root order.
pub fn shifted_pairings(rs: &RootSystem, nu: &Weight) -> Vec<Rational> {
    let shifted = nu.add(rs.rho());
    (0..rs.num_positive_roots())
        .map(|r| rs.weight_pairing(&shifted, r))
        .collect()
}

/// Simple reflection `s_label` in fundamental-weight coordinates:
/// `s_i(μ) = μ - <μ, α_i^∨> α_i`, with `α_i = Σ_j <α_i, α_j^∨> ϖ_j`.
pub fn simple_reflection(rs: &RootSystem, mu: &Weight, label: usize) -> Weight {
    let c = mu.get(label);
    let row = &rs.cartan_matrix()[label - 1];
    Weight::new(
        mu.coords()
            .iter()
            .zip(row)
            .map(|(&m, &a)| m - c * a)
            .collect(),
    )
}

/// Moves a regular weight `μ` into the dominant chamber by simple reflections.
/// Returns the strongly dominant representative and the number of reflections.
///
/// Returns `None` if `μ` is singular (some coordinate hits zero).
pub fn to_dominant_chamber(
    rs: &RootSystem,
    mu: &Weight,
    order: ReflectionOrder,
) -> Option<(Weight, usize)> {
    let mut cur = mu.clone();
    let mut steps = 0;
    loop {
        if cur.coords().contains(&0) {
            return None;
        }
        let negative = cur.coords().iter().enumerate().filter(|(_, &c)| c < 0);
        let pick = match order {
            ReflectionOrder::SmallestFirst => negative.map(|(i, _)| i).next(),
            ReflectionOrder::LargestFirst => negative.map(|(i, _)| i).last(),
        };
        match pick {
            None => return Some((cur, steps)),
            Some(i) => {
                cur = simple_reflection(rs, &cur, i + 1);
                steps += 1;
                // each reflection flips exactly one negative root to positive
                assert!(steps <= rs.num_positive_roots(), "reflection loop diverged");
            }
        }
    }
}

/// Borel–Weil–Bott for an integral weight `ν`; the `ρ`-shift is applied here.
pub fn bwb(rs: &RootSystem, nu: &Weight) -> BwbOutcome {
    bwb_with_order(rs, nu, ReflectionOrder::SmallestFirst)
}

pub fn bwb_with_order(rs: &RootSystem, nu: &Weight, order: ReflectionOrder) -> BwbOutcome {
    let pairings = shifted_pairings(rs, nu);
    if pairings.iter().any(Zero::is_zero) {
        return BwbOutcome::Singular;
    }
    let index = pairings.iter().filter(|p| p.is_negative()).count();
    let mu = nu.add(rs.rho());
    let (dom, _) = to_dominant_chamber(rs, &mu, order).expect("regular weight");
    BwbOutcome::Regular {
        index,
        dominant_rep: dom.sub(rs.rho()),
    }
}

/// `a_i ≥ 0` for every `i ∉ J`.
pub fn check_parabolic_dominant(ctx: &ParabolicContext, lambda: &Weight) -> Result<()> {
    ctx.check_weight(lambda)?;
    let j = ctx.nodes();
    for label in 1..=ctx.rank() {
        let a = lambda.get(label);
        if !j.contains(label) && a < 0 {
            return Err(Error::NotParabolicDominant { label, value: a });
        }
    }
    Ok(())
}

/// Cohomology of `E_λ(-t)`, whose highest weight is `λ - t·Σ b_j ϖ_j`.
pub fn cohomology_of_twist(
    ctx: &ParabolicContext,
    lambda: &Weight,
    t: i64,
) -> Result<CohomologyReport> {
    check_parabolic_dominant(ctx, lambda)?;
    let twisted = lambda.sub(&ctx.pol_weight().scale(t));
    let outcome = bwb(ctx.root_system(), &twisted);
    Ok(CohomologyReport {
        twist: t,
        nonzero_degree: outcome.index(),
        outcome,
    })
}

/// `H^0(E) ≠ 0` and `H^0(E(-1)) = 0`.
pub fn is_initialized(ctx: &ParabolicContext, lambda: &Weight) -> Result<bool> {
    let h0 = cohomology_of_twist(ctx, lambda, 0)?;
    let h1 = cohomology_of_twist(ctx, lambda, 1)?;
    Ok(h0.nonzero_degree == Some(0) && h1.nonzero_degree.map_or(true, |d| d >= 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::NodeSet;
    use crate::rootspace::LieType;
    use alloc::sync::Arc;
    use alloc::vec;

    fn rs(t: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(t.parse::<LieType>().unwrap()))
    }

    #[test]
    fn trivial_weight_is_regular_index_zero() {
        let e6 = rs("E6");
        assert_eq!(
            bwb(&e6, &Weight::zero(6)),
            BwbOutcome::Regular { index: 0, dominant_rep: Weight::zero(6) }
        );
    }

    #[test]
    fn minus_rho_shift_at_a_simple_node_is_singular() {
        let f4 = rs("F4");
        let nu = Weight::new(vec![-1, 0, 2, 0]);
        assert_eq!(bwb(&f4, &nu), BwbOutcome::Singular);
    }

    #[test]
    fn e6_minus_three_omega1_index_by_enumeration() {
        let e6 = rs("E6");
        let nu = Weight::new(vec![-3, 0, 0, 0, 0, 0]);
        let expected = shifted_pairings(&e6, &nu)
            .iter()
            .filter(|p| p.is_negative())
            .count();
        match bwb(&e6, &nu) {
            BwbOutcome::Singular => {
                assert!(shifted_pairings(&e6, &nu).iter().any(Zero::is_zero))
            }
            BwbOutcome::Regular { index, .. } => assert_eq!(index, expected),
        }
    }

    #[test]
    fn canonical_bundle_of_p1_is_regular_index_one() {
        // O(-2) on P^1: H^1 = C
        let c = ParabolicContext::minimal(rs("A1"), NodeSet::from_labels(&[1])).unwrap();
        let rep = cohomology_of_twist(&c, &Weight::zero(1), 2).unwrap();
        assert_eq!(
            rep.outcome,
            BwbOutcome::Regular { index: 1, dominant_rep: Weight::zero(1) }
        );
        assert_eq!(rep.nonzero_degree, Some(1));
    }

    #[test]
    fn acyclic_twists() {
        let g2 = ParabolicContext::minimal(rs("G2"), NodeSet::from_labels(&[1, 2])).unwrap();
        assert!(cohomology_of_twist(&g2, &Weight::zero(2), 1).unwrap().outcome.is_singular());
        let p1 = ParabolicContext::minimal(rs("A1"), NodeSet::from_labels(&[1])).unwrap();
        let r = cohomology_of_twist(&p1, &Weight::zero(1), 1).unwrap();
        assert!(r.outcome.is_singular());
        assert_eq!(r.nonzero_degree, None);
    }

    #[test]
    fn initialized_examples() {
        let c = ParabolicContext::minimal(rs("E6"), NodeSet::from_labels(&[1, 2])).unwrap();
        assert!(is_initialized(&c, &Weight::zero(6)).unwrap());
        assert!(!is_initialized(&c, c.pol_weight()).unwrap());
    }

    #[test]
    fn twist_rejects_non_parabolic_dominant() {
        let c = ParabolicContext::minimal(rs("F4"), NodeSet::from_labels(&[1, 4])).unwrap();
        let bad = Weight::new(vec![-2, -1, 0, 0]);
        assert_eq!(
            cohomology_of_twist(&c, &bad, 0).unwrap_err(),
            Error::NotParabolicDominant { label: 2, value: -1 }
        );
        // negative coefficients on J are allowed
        assert!(cohomology_of_twist(&c, &Weight::new(vec![-2, 0, 0, 0]), 0).is_ok());
    }
}
