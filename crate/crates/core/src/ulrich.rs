//! The map `φ_λ^J(α) = (λ+ρ, α) / (Σ b_j ϖ_j, α)` on `Φ_J^+` and two
//! independent ways of deciding whether `E_λ` is Ulrich:
//!
//! * [`is_ulrich_criterion`]: `φ_λ^J` is a bijection onto `{1, …, dim G/P_J}`;
//! * [`is_ulrich_bwb`]: every twist `E_λ(-t)`, `1 ≤ t ≤ dim`, is acyclic.
//!
//! The criterion path only touches `rootspace` and `parabolic`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cohomology;
use crate::error::{Error, Result};
use crate::parabolic::ParabolicContext;
use crate::rational::{self, int, Rational};
use crate::rootspace::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Criterion,
    Bwb,
}

/// `φ_λ^J` on every root of `Φ_J^+`, in the root system's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTable {
    pub entries: Vec<(usize, Rational)>,
}

impl PhiTable {
    pub fn value(&self, root: usize) -> Option<&Rational> {
        self.entries.iter().find(|(r, _)| *r == root).map(|(_, v)| v)
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().map(|(_, v)| v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    NonInteger { root: usize, value: Rational },
    OutOfRange { root: usize, value: Rational },
    Collision { first: usize, second: usize, value: Rational },
    /// `E_λ(-twist)` has nonzero cohomology.
    MissingValue { twist: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichVerdict {
    pub is_ulrich: bool,
    pub method: Method,
    pub table: PhiTable,
    pub witness: Option<Witness>,
}

/// Both decision procedures assume an initialized bundle, hence `a_i ≥ 0`.
pub fn check_eligible(ctx: &ParabolicContext, lambda: &Weight) -> Result<()> {
    ctx.check_weight(lambda)?;
    for (i, &a) in lambda.coords().iter().enumerate() {
        if a < 0 {
            return Err(Error::NegativeCoefficient { label: i + 1, value: a });
        }
    }
    Ok(())
}

/// `φ_λ^J(α)`; errors when `α ∉ Φ_J^+`.
pub fn phi(ctx: &ParabolicContext, lambda: &Weight, root: usize) -> Result<Rational> {
    ctx.check_weight(lambda)?;
    let den = ctx.pol_pairing(root)?;
    let rs = ctx.root_system();
    let num = rs.weight_pairing(&lambda.add(rs.rho()), root);
    Ok(num / den)
}

pub fn phi_table(ctx: &ParabolicContext, lambda: &Weight) -> Result<PhiTable> {
    ctx.check_weight(lambda)?;
    let rs = ctx.root_system();
    let shifted = lambda.add(rs.rho());
    let entries = ctx
        .phi_j_plus()
        .iter()
        .enumerate()
        .map(|(k, &r)| (r, ctx.phi_at_slot(&shifted, k)))
        .collect();
    Ok(PhiTable { entries })
}

/// The first obstruction to `table` being a bijection onto `{1, …, dim}`.
/// Non-integral values are reported before out-of-range ones, and those
/// before collisions; within each kind the first root in root order wins.
pub fn first_failure(table: &PhiTable, dim: usize) -> Option<Witness> {
    let dim = int(dim as i64);
    let one = int(1);
    if let Some((root, value)) = table.entries.iter().find(|(_, v)| !rational::is_integer(v)) {
        return Some(Witness::NonInteger { root: *root, value: value.clone() });
    }
    if let Some((root, value)) = table.entries.iter().find(|(_, v)| *v < one || *v > dim) {
        return Some(Witness::OutOfRange { root: *root, value: value.clone() });
    }
    let mut seen: BTreeMap<&Rational, usize> = BTreeMap::new();
    for (root, value) in &table.entries {
        if let Some(&first) = seen.get(value) {
            return Some(Witness::Collision {
                first,
                second: *root,
                value: value.clone(),
            });
        }
        seen.insert(value, *root);
    }
    None
}

pub fn is_ulrich_criterion(ctx: &ParabolicContext, lambda: &Weight) -> Result<UlrichVerdict> {
    check_eligible(ctx, lambda)?;
    let table = phi_table(ctx, lambda)?;
    let witness = first_failure(&table, ctx.dim());
    Ok(UlrichVerdict {
        is_ulrich: witness.is_none(),
        method: Method::Criterion,
        table,
        witness,
    })
}

/// Ulrich by definition: `H^*(E_λ(-t)) = 0` for `1 ≤ t ≤ dim`.
pub fn is_ulrich_bwb(ctx: &ParabolicContext, lambda: &Weight) -> Result<UlrichVerdict> {
    check_eligible(ctx, lambda)?;
    let mut witness = None;
    for t in 1..=ctx.dim() as i64 {
        let report = cohomology::cohomology_of_twist(ctx, lambda, t)?;
        if !report.outcome.is_singular() {
            witness = Some(Witness::MissingValue { twist: t });
            break;
        }
    }
    Ok(UlrichVerdict {
        is_ulrich: witness.is_none(),
        method: Method::Bwb,
        table: phi_table(ctx, lambda)?,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::NodeSet;
    use crate::rational::frac;
    use crate::rootspace::{LieType, RootSystem};
    use alloc::sync::Arc;
    use alloc::vec;

    fn ctx(t: &str, nodes: &[usize]) -> ParabolicContext {
        let rs = Arc::new(RootSystem::build(t.parse::<LieType>().unwrap()));
        ParabolicContext::minimal(rs, NodeSet::from_labels(nodes)).unwrap()
    }

    #[test]
    fn phi_at_simple_root_in_j() {
        let c = ctx("E6", &[1, 2]);
        for a1 in 0..5 {
            let l = Weight::new(vec![a1, 3, 1, 0, 2, 0]);
            assert_eq!(phi(&c, &l, 0).unwrap(), int(a1 + 1));
        }
    }

    #[test]
    fn phi_rejects_roots_outside_phi_j() {
        let c = ctx("E6", &[1, 2]);
        let a3 = c.root_system().simple_root_index(3);
        assert_eq!(
            phi(&c, &Weight::zero(6), a3).unwrap_err(),
            Error::RootNotInPhiJ { root: a3 }
        );
    }

    #[test]
    fn g2_trivial_bundle_collides() {
        let c = ctx("G2", &[1, 2]);
        let v = is_ulrich_criterion(&c, &Weight::zero(2)).unwrap();
        assert!(!v.is_ulrich);
        assert_eq!(
            v.witness,
            Some(Witness::Collision { first: 0, second: 1, value: int(1) })
        );
        assert!(v.table.entries.iter().all(|(_, x)| *x == int(1)));
    }

    #[test]
    fn projective_space_structure_sheaf() {
        for n in 1..=6 {
            let c = ctx(&alloc::format!("A{n}"), &[1]);
            let v = is_ulrich_criterion(&c, &Weight::zero(n)).unwrap();
            assert!(v.is_ulrich, "A{n}");
            let mut vals: Vec<_> = v.table.entries.iter().map(|(_, x)| x.clone()).collect();
            vals.sort();
            assert_eq!(vals, (1..=n as i64).map(int).collect::<Vec<_>>());
            assert!(is_ulrich_bwb(&c, &Weight::zero(n)).unwrap().is_ulrich);
        }
    }

    #[test]
    fn f4_half_integral_value() {
        let c = ctx("F4", &[1, 4]);
        let l = Weight::fundamental(4, 4);
        let v = is_ulrich_criterion(&c, &l).unwrap();
        let eps2 = c
            .root_system()
            .root_index_ambient(&crate::AmbientVector::unit(4, 2))
            .unwrap();
        assert_eq!(v.table.value(eps2), Some(&frac(5, 2)));
        assert_eq!(v.witness, Some(Witness::NonInteger { root: eps2, value: frac(5, 2) }));
        let b = is_ulrich_bwb(&c, &l).unwrap();
        assert!(!b.is_ulrich);
        assert!(matches!(b.witness, Some(Witness::MissingValue { .. })));
    }

    #[test]
    fn negative_coefficients_rejected() {
        let c = ctx("G2", &[1, 2]);
        assert_eq!(
            is_ulrich_criterion(&c, &Weight::new(vec![0, -1])).unwrap_err(),
            Error::NegativeCoefficient { label: 2, value: -1 }
        );
        assert!(is_ulrich_bwb(&c, &Weight::new(vec![-1, 0])).is_err());
    }
}
