//! Parabolic subgroups `P_J` together with an ample class `O(1) = ⊗ L_j^{b_j}`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootspace::{RootSystem, Weight};

/// A set of Dynkin node labels (1-based), stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const fn empty() -> Self {
        NodeSet(0)
    }

    /// `{1, …, rank}`.
    pub fn full(rank: usize) -> Self {
        NodeSet(((1u64 << rank) - 1) as u32)
    }

    /// Labels outside `1..=31` are ignored; use [`NodeSet::validate`] to
    /// check against a rank.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut s = NodeSet::empty();
        for &l in labels {
            s.insert(l);
        }
        s
    }

    pub fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn insert(&mut self, label: usize) {
        if (1..32).contains(&label) {
            self.0 |= 1 << (label - 1);
        }
    }

    pub fn contains(&self, label: usize) -> bool {
        (1..32).contains(&label) && self.0 >> (label - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(&self, rank: usize) -> NodeSet {
        NodeSet(!self.0 & NodeSet::full(rank).0)
    }

    /// Labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (1..32).filter(move |l| bits >> (l - 1) & 1 == 1)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        match self.iter().find(|&l| l > rank) {
            Some(label) => Err(Error::NodeOutOfRange { label, rank }),
            None => Ok(()),
        }
    }

    /// Every subset of `{1..rank}`, ordered by decreasing size and then by
    /// the lexicographic order of the sorted label lists.
    pub fn all_subsets_by_decreasing_size(rank: usize) -> Vec<NodeSet> {
        let mut all: Vec<NodeSet> = (0..1u32 << rank).map(NodeSet).collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.labels().cmp(&b.labels())));
        all
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// The data `(G, J, b)`: a flag variety `G/P_J` with polarization
/// `Σ_{j∈J} b_j ϖ_j`, plus the cached set `Φ_J^+`.
#[derive(Clone, Debug)]
pub struct ParabolicContext {
    rs: Arc<RootSystem>,
    nodes: NodeSet,
    polarization: Vec<i64>,
    pol_weight: Weight,
    /// Indices into `rs.positive_roots()`, in the root system's order.
    phi_j_plus: Vec<usize>,
    /// `(pol_weight, α)` for each entry of `phi_j_plus`.
    pol_pairings: Vec<Rational>,
    /// Position of each positive root inside `phi_j_plus`.
    slot: Vec<Option<usize>>,
    /// `φ_λ(α) = Σ_i nums[i]·(λ+ρ)_i / den` for each entry of `phi_j_plus`.
    phi_coeffs: Vec<(Vec<BigInt>, BigInt)>,
}

impl ParabolicContext {
    /// `b` lists the coefficients `b_j` for the labels of `nodes` in
    /// increasing order.
    pub fn new(rs: Arc<RootSystem>, nodes: NodeSet, b: &[i64]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        nodes.validate(rs.rank())?;
        if b.len() != nodes.len() {
            return Err(Error::PolarizationLength {
                expected: nodes.len(),
                found: b.len(),
            });
        }
        let mut pol_weight = Weight::zero(rs.rank());
        for (label, &bj) in nodes.iter().zip(b) {
            if bj < 1 {
                return Err(Error::NonPositivePolarization { label, value: bj });
            }
            pol_weight.set(label, bj);
        }
        // α ∈ Φ_J^+ iff its expansion uses some α_j with j ∈ J, which is the
        // same as (ϖ_j, α) ≠ 0 for some j ∈ J.
        let phi_j_plus: Vec<usize> = rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| nodes.iter().any(|j| r.coeff(j) > 0))
            .map(|(i, _)| i)
            .collect();
        let pol_pairings = phi_j_plus
            .iter()
            .map(|&r| rs.weight_pairing(&pol_weight, r))
            .collect();
        let phi_coeffs = phi_j_plus
            .iter()
            .zip(&pol_pairings)
            .map(|(&r, p): (&usize, &Rational)| {
                let row: Vec<Rational> = (1..=rs.rank())
                    .map(|i| rs.fundamental_pairing(i, r) / p)
                    .collect();
                let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                let nums = row.iter().map(|q| q.numer() * (&den / q.denom())).collect();
                (nums, den)
            })
            .collect();
        let mut slot = alloc::vec![None; rs.num_positive_roots()];
        for (k, &r) in phi_j_plus.iter().enumerate() {
            slot[r] = Some(k);
        }
        Ok(ParabolicContext {
            rs,
            nodes,
            polarization: b.to_vec(),
            pol_weight,
            phi_j_plus,
            pol_pairings,
            slot,
            phi_coeffs,
        })
    }

    /// The minimal ample class: every `b_j = 1`.
    pub fn minimal(rs: Arc<RootSystem>, nodes: NodeSet) -> Result<Self> {
        let b = alloc::vec![1; nodes.len()];
        Self::new(rs, nodes, &b)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }

    pub fn polarization(&self) -> &[i64] {
        &self.polarization
    }

    pub fn is_minimal_ample(&self) -> bool {
        self.polarization.iter().all(|&b| b == 1)
    }

    /// `Σ_{j∈J} b_j ϖ_j`.
    pub fn pol_weight(&self) -> &Weight {
        &self.pol_weight
    }

    /// Indices of the roots of `Φ_J^+` in the root system's order.
    pub fn phi_j_plus(&self) -> &[usize] {
        &self.phi_j_plus
    }

    /// `dim G/P_J = |Φ_J^+|`.
    pub fn dim(&self) -> usize {
        self.phi_j_plus.len()
    }

    pub fn contains_root(&self, root: usize) -> bool {
        self.slot.get(root).copied().flatten().is_some()
    }

    /// `(Σ b_j ϖ_j, α)`, or an error when `α ∉ Φ_J^+`.
    pub fn pol_pairing(&self, root: usize) -> Result<&Rational> {
        self.check_root(root)?;
        match self.slot[root] {
            Some(k) => Ok(&self.pol_pairings[k]),
            None => Err(Error::RootNotInPhiJ { root }),
        }
    }

    /// `(λ+ρ, α)/(pol, α)` for the `k`-th root of `Φ_J^+`.
    pub(crate) fn phi_at_slot(&self, shifted: &Weight, k: usize) -> Rational {
        let (nums, den) = &self.phi_coeffs[k];
        let num: BigInt = nums
            .iter()
            .zip(shifted.coords())
            .filter(|(_, &a)| a != 0)
            .map(|(c, &a)| c * a)
            .sum();
        Rational::new(num, den.clone())
    }

    pub(crate) fn check_root(&self, root: usize) -> Result<()> {
        if root >= self.rs.num_positive_roots() {
            Err(Error::RootIndexOutOfRange {
                root,
                count: self.rs.num_positive_roots(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            })
        } else {
            Ok(())
        }
    }
}

/// `λ_S = Σ_{i∈S} a_i ϖ_i`.
pub fn restrict_weight(lambda: &Weight, s: NodeSet) -> Weight {
    let mut out = Weight::zero(lambda.rank());
    for label in s.iter().filter(|&l| l <= lambda.rank()) {
        out.set(label, lambda.get(label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rootspace::LieType;
    use num_traits::Signed;

    fn ctx(t: &str, nodes: &[usize]) -> ParabolicContext {
        let rs = Arc::new(RootSystem::build(t.parse::<LieType>().unwrap()));
        ParabolicContext::minimal(rs, NodeSet::from_labels(nodes)).unwrap()
    }

    #[test]
    fn dimensions_of_flag_varieties() {
        assert_eq!(ctx("E6", &[1, 2]).dim(), 26);
        assert_eq!(ctx("F4", &[1, 2]).dim(), 21);
        assert_eq!(ctx("G2", &[1, 2]).dim(), 6);
        assert_eq!(ctx("E6", &[1, 2, 3, 4, 5, 6]).dim(), 36);
        // P^n and the Grassmannian Gr(2, 5)
        assert_eq!(ctx("A4", &[1]).dim(), 4);
        assert_eq!(ctx("A4", &[2]).dim(), 6);
    }

    #[test]
    fn rejects_bad_contexts() {
        let rs = Arc::new(RootSystem::build("G2".parse().unwrap()));
        assert_eq!(
            ParabolicContext::minimal(rs.clone(), NodeSet::empty()).unwrap_err(),
            Error::EmptyNodeSet
        );
        assert_eq!(
            ParabolicContext::new(rs.clone(), NodeSet::from_labels(&[1, 2]), &[1, 0]).unwrap_err(),
            Error::NonPositivePolarization { label: 2, value: 0 }
        );
        assert_eq!(
            ParabolicContext::new(rs.clone(), NodeSet::from_labels(&[1]), &[1, 1]).unwrap_err(),
            Error::PolarizationLength { expected: 1, found: 2 }
        );
        assert_eq!(
            ParabolicContext::minimal(rs, NodeSet::from_labels(&[3])).unwrap_err(),
            Error::NodeOutOfRange { label: 3, rank: 2 }
        );
    }

    #[test]
    fn polarization_positive_exactly_on_phi_j() {
        let c = ParabolicContext::new(
            Arc::new(RootSystem::build("F4".parse().unwrap())),
            NodeSet::from_labels(&[2, 4]),
            &[2, 1],
        )
        .unwrap();
        let rs = c.root_system();
        for r in 0..rs.num_positive_roots() {
            let p = rs.weight_pairing(c.pol_weight(), r);
            if c.contains_root(r) {
                assert!(p.is_positive());
            } else {
                assert_eq!(p, int(0));
            }
        }
        assert!(!c.is_minimal_ample());
    }

    #[test]
    fn restriction() {
        let l = Weight::new(alloc::vec![0, 1, 1, 4, 0, 7]);
        assert_eq!(
            restrict_weight(&l, NodeSet::from_labels(&[1, 2, 3, 5])).coords(),
            &[0, 1, 1, 0, 0, 0]
        );
        assert_eq!(restrict_weight(&l, NodeSet::full(6)), l);
        assert_eq!(restrict_weight(&l, NodeSet::empty()), Weight::zero(6));
    }

    #[test]
    fn subset_order() {
        let s = NodeSet::all_subsets_by_decreasing_size(3);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], NodeSet::full(3));
        assert_eq!(s[1].labels(), alloc::vec![1, 2]);
        assert_eq!(s[7], NodeSet::empty());
    }
}
