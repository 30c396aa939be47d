//! Bad pairs: two roots `α, β ∈ Φ_J^+` whose `φ`-values differ by a
//! non-integer for every weight that agrees with `μ` on a node set `S`.
//!
//! Writing `λ = λ_S + Σ_{i∉S} a_i ϖ_i`, the value `φ_λ(γ)` splits as
//! `φ_{λ_S}(γ) + Σ_{i∉S} a_i·slope_i(γ)` with `slope_i(γ) = (ϖ_i, γ)/(pol, γ)`.
//! If `α` and `β` have equal slopes at every `i ∉ S`, the difference
//! `φ_λ(α) - φ_λ(β)` does not depend on those `a_i`; when it is not an
//! integer, no weight in the family can be Ulrich.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::parabolic::{restrict_weight, NodeSet, ParabolicContext};
use crate::rational::{self, Rational};
use crate::rootspace::Weight;
use crate::ulrich;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeCheck {
    pub node: usize,
    pub at_alpha: Rational,
    pub at_beta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPairCertificate {
    pub alpha: usize,
    pub beta: usize,
    pub s: NodeSet,
    pub mu: Weight,
    /// One entry per node outside `S`, in increasing order.
    pub slope_checks: Vec<SlopeCheck>,
    /// `φ_μ(α) - φ_μ(β)`.
    pub gap: Rational,
}

/// `(ϖ_label, α)/(pol, α)`, the coefficient of `a_label` in `φ_λ(α)`.
pub fn slope(ctx: &ParabolicContext, label: usize, root: usize) -> Result<Rational> {
    if label == 0 || label > ctx.rank() {
        return Err(Error::NodeOutOfRange { label, rank: ctx.rank() });
    }
    let den = ctx.pol_pairing(root)?;
    Ok(ctx.root_system().fundamental_pairing(label, root) / den)
}

fn check_structure(
    ctx: &ParabolicContext,
    alpha: usize,
    beta: usize,
    s: NodeSet,
    mu: &Weight,
) -> Result<()> {
    for r in [alpha, beta] {
        ctx.check_root(r)?;
        if !ctx.contains_root(r) {
            return Err(Error::RootNotInPhiJ { root: r });
        }
    }
    if alpha == beta {
        return Err(Error::IdenticalRoots { root: alpha });
    }
    s.validate(ctx.rank())?;
    ctx.check_weight(mu)?;
    for (i, &a) in mu.coords().iter().enumerate() {
        let label = i + 1;
        if a != 0 && !s.contains(label) {
            return Err(Error::WeightOutsideSupport { label });
        }
        if a < 0 {
            return Err(Error::NegativeCoefficient { label, value: a });
        }
    }
    Ok(())
}

/// Fills in the slope values and the gap for `(α, β, S, μ)` without judging them.
pub fn make_certificate(
    ctx: &ParabolicContext,
    alpha: usize,
    beta: usize,
    s: NodeSet,
    mu: &Weight,
) -> Result<BadPairCertificate> {
    check_structure(ctx, alpha, beta, s, mu)?;
    let slope_checks = s
        .complement(ctx.rank())
        .iter()
        .map(|node| {
            Ok(SlopeCheck {
                node,
                at_alpha: slope(ctx, node, alpha)?,
                at_beta: slope(ctx, node, beta)?,
            })
        })
        .collect::<Result<_>>()?;
    let gap = ulrich::phi(ctx, mu, alpha)? - ulrich::phi(ctx, mu, beta)?;
    Ok(BadPairCertificate {
        alpha,
        beta,
        s,
        mu: mu.clone(),
        slope_checks,
        gap,
    })
}

/// Recomputes everything from `(α, β, S, μ)`. The certificate holds when the
/// slopes agree off `S`, the gap is not an integer, and the recorded values
/// match the recomputed ones.
pub fn verify_bad_pair(ctx: &ParabolicContext, cert: &BadPairCertificate) -> Result<bool> {
    let fresh = make_certificate(ctx, cert.alpha, cert.beta, cert.s, &cert.mu)?;
    let slopes_equal = fresh.slope_checks.iter().all(|c| c.at_alpha == c.at_beta);
    let non_integral = !rational::is_integer(&fresh.gap);
    Ok(slopes_equal && non_integral && fresh == *cert)
}

/// Precomputed slopes and `φ`-values for pair scans over `Φ_J^+`.
struct PairScan<'a> {
    ctx: &'a ParabolicContext,
    /// `slopes[k][i]` for the `k`-th root of `Φ_J^+` and node `i+1`.
    slopes: Vec<Vec<Rational>>,
}

impl<'a> PairScan<'a> {
    fn new(ctx: &'a ParabolicContext) -> Self {
        let slopes = ctx
            .phi_j_plus()
            .iter()
            .map(|&r| {
                (1..=ctx.rank())
                    .map(|i| slope(ctx, i, r).expect("root in Φ_J^+"))
                    .collect()
            })
            .collect();
        PairScan { ctx, slopes }
    }

    /// First pair `(k, l)`, `k < l` positions in `Φ_J^+`, that is bad for `(S, μ)`.
    fn pairs(&self, s: NodeSet, mu: &Weight) -> Result<impl Iterator<Item = (usize, usize)> + '_> {
        let values: Vec<Rational> = self
            .ctx
            .phi_j_plus()
            .iter()
            .map(|&r| ulrich::phi(self.ctx, mu, r))
            .collect::<Result<_>>()?;
        let off: Vec<usize> = s.complement(self.ctx.rank()).iter().collect();
        let n = values.len();
        Ok((0..n)
            .flat_map(move |k| (k + 1..n).map(move |l| (k, l)))
            .filter(move |&(k, l)| {
                off.iter()
                    .all(|&i| self.slopes[k][i - 1] == self.slopes[l][i - 1])
                    && !rational::is_integer(&(&values[k] - &values[l]))
            }))
    }
}

/// Every bad pair for a fixed `(S, μ)`, as root indices in scan order.
pub fn bad_pairs_for(
    ctx: &ParabolicContext,
    s: NodeSet,
    mu: &Weight,
) -> Result<Vec<(usize, usize)>> {
    s.validate(ctx.rank())?;
    ctx.check_weight(mu)?;
    if let Some(label) = (1..=ctx.rank()).find(|&l| mu.get(l) != 0 && !s.contains(l)) {
        return Err(Error::WeightOutsideSupport { label });
    }
    let scan = PairScan::new(ctx);
    let j = ctx.phi_j_plus();
    let pairs = scan.pairs(s, mu)?.map(|(k, l)| (j[k], j[l])).collect();
    Ok(pairs)
}

/// Looks for a bad pair with respect to `(S, λ_S)` for some `S`. Subsets are
/// tried by decreasing size, pairs in root order; the first hit is returned.
pub fn rules_out(ctx: &ParabolicContext, lambda: &Weight) -> Result<Option<BadPairCertificate>> {
    rules_out_family(ctx, lambda, NodeSet::empty())
}

/// As [`rules_out`], but only with subsets `S` disjoint from `free`, so the
/// certificate holds for every choice of the coefficients at `free`.
pub fn rules_out_family(
    ctx: &ParabolicContext,
    lambda: &Weight,
    free: NodeSet,
) -> Result<Option<BadPairCertificate>> {
    ulrich::check_eligible(ctx, lambda)?;
    let scan = PairScan::new(ctx);
    for s in NodeSet::all_subsets_by_decreasing_size(ctx.rank()) {
        if s.bits() & free.bits() != 0 {
            continue;
        }
        let mu = restrict_weight(lambda, s);
        let first = scan.pairs(s, &mu)?.next();
        if let Some((k, l)) = first {
            let j = ctx.phi_j_plus();
            return make_certificate(ctx, j[k], j[l], s, &mu).map(Some);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::rootspace::{AmbientVector, LieType, RootSystem};
    use alloc::sync::Arc;
    use alloc::vec;

    fn f4_14() -> ParabolicContext {
        let rs = Arc::new(RootSystem::build("F4".parse::<LieType>().unwrap()));
        ParabolicContext::minimal(rs, NodeSet::from_labels(&[1, 4])).unwrap()
    }

    fn f4_roots(c: &ParabolicContext) -> (usize, usize) {
        let rs = c.root_system();
        let e2 = rs.root_index_ambient(&AmbientVector::unit(4, 2)).unwrap();
        let e1m4 = rs
            .root_index_ambient(&AmbientVector::from_ints(&[1, 0, 0, -1]))
            .unwrap();
        (e2, e1m4)
    }

    #[test]
    fn slopes_of_the_f4_example() {
        let c = f4_14();
        let (e2, e1m4) = f4_roots(&c);
        assert_eq!(slope(&c, 2, e2).unwrap(), int(1));
        assert_eq!(slope(&c, 2, e1m4).unwrap(), int(1));
        assert_eq!(slope(&c, 3, e2).unwrap(), frac(1, 2));
        assert_eq!(slope(&c, 3, e1m4).unwrap(), frac(1, 2));
        for j in [1, 4] {
            let a = c.root_system().simple_root_index(j);
            assert_eq!(slope(&c, j, a).unwrap(), int(1));
        }
    }

    #[test]
    fn f4_example_certificate() {
        let c = f4_14();
        let (e2, e1m4) = f4_roots(&c);
        let cert = make_certificate(&c, e2, e1m4, NodeSet::from_labels(&[1, 4]), &Weight::fundamental(4, 4))
            .unwrap();
        assert_eq!(cert.gap, frac(-1, 2));
        assert!(verify_bad_pair(&c, &cert).unwrap());
        let swapped = make_certificate(&c, e1m4, e2, cert.s, &cert.mu).unwrap();
        assert_eq!(swapped.gap, frac(1, 2));
        assert!(verify_bad_pair(&c, &swapped).unwrap());
    }

    #[test]
    fn tampered_certificate_fails() {
        let c = f4_14();
        let (e2, e1m4) = f4_roots(&c);
        let mut cert =
            make_certificate(&c, e2, e1m4, NodeSet::from_labels(&[1, 4]), &Weight::fundamental(4, 4))
                .unwrap();
        cert.gap = frac(-3, 2);
        assert!(!verify_bad_pair(&c, &cert).unwrap());
    }

    #[test]
    fn structural_errors() {
        let c = f4_14();
        let (e2, _) = f4_roots(&c);
        let s = NodeSet::from_labels(&[1, 4]);
        assert_eq!(
            make_certificate(&c, e2, e2, s, &Weight::zero(4)).unwrap_err(),
            Error::IdenticalRoots { root: e2 }
        );
        let a2 = c.root_system().simple_root_index(2);
        assert_eq!(
            make_certificate(&c, e2, a2, s, &Weight::zero(4)).unwrap_err(),
            Error::RootNotInPhiJ { root: a2 }
        );
        let a1 = c.root_system().simple_root_index(1);
        assert_eq!(
            make_certificate(&c, e2, a1, s, &Weight::fundamental(4, 2)).unwrap_err(),
            Error::WeightOutsideSupport { label: 2 }
        );
    }

    #[test]
    fn finds_the_f4_pair_for_the_family() {
        let c = f4_14();
        let (e2, e1m4) = f4_roots(&c);
        let pairs = bad_pairs_for(&c, NodeSet::from_labels(&[1, 4]), &Weight::fundamental(4, 4)).unwrap();
        assert!(pairs.contains(&(e2, e1m4)) || pairs.contains(&(e1m4, e2)));
        for (a2, a3) in [(0, 0), (3, 1), (7, 4)] {
            let l = Weight::new(vec![0, a2, a3, 1]);
            let cert = rules_out_family(&c, &l, NodeSet::from_labels(&[2, 3]))
                .unwrap()
                .expect("family is ruled out");
            assert!(verify_bad_pair(&c, &cert).unwrap());
            assert!(!ulrich::is_ulrich_criterion(&c, &l).unwrap().is_ulrich);
        }
    }

    #[test]
    fn nothing_rules_out_an_ulrich_bundle() {
        let rs = Arc::new(RootSystem::build("A4".parse::<LieType>().unwrap()));
        let c = ParabolicContext::minimal(rs, NodeSet::from_labels(&[1])).unwrap();
        assert_eq!(rules_out(&c, &Weight::zero(4)).unwrap(), None);
    }
}
