//! Root systems realized by explicit rational vectors in Euclidean space.
//!
//! The exceptional types use the classical lattice constructions: `E8` is the
//! set of norm-2 vectors of the even half-integer lattice, `E6` and `E7` are
//! its intersections with the span of the first six (seven) simple roots,
//! `F4` lives in `I'_4` and `G2` in the sum-zero plane of `Z^3`. Node labels
//! follow the Bourbaki numbering for every type. The invariant form is the
//! ambient dot product, optionally multiplied by a positive constant.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidLieType { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLieType(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

/// A vector of exact rational coordinates in the ambient space of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientVector(Vec<Rational>);

impl AmbientVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        AmbientVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        AmbientVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        AmbientVector(coords.iter().map(|&c| int(c)).collect())
    }

    /// `coords / den`.
    pub fn from_fracs(coords: &[i64], den: i64) -> Self {
        AmbientVector(coords.iter().map(|&c| frac(c, den)).collect())
    }

    /// The unit vector `ε_k` (1-based, as in the usual notation).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k - 1] = int(1);
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Plain Euclidean dot product.
    pub fn dot(&self, other: &Self) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn add(&self, other: &Self) -> Self {
        AmbientVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        AmbientVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AmbientVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        AmbientVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A root with its simple-root expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub ambient: AmbientVector,
    pub simple_coords: Vec<i64>,
    pub height: i64,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple_coords.iter().all(|&c| c >= 0) && self.height > 0
    }

    /// Nodes (1-based) where the simple-root expansion is nonzero.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.simple_coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
    }

    pub fn coeff(&self, label: usize) -> i64 {
        self.simple_coords[label - 1]
    }
}

/// A weight `Σ a_i ϖ_i`, stored by its coefficients `a_1..a_n`.
///
/// Every weight the library manipulates (highest weights, `ρ`, twists by the
/// polarization, `ϖ_i - ρ`) is integral, so coefficients are integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `ρ = Σ ϖ_i`.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    /// The fundamental weight `ϖ_label`.
    pub fn fundamental(rank: usize, label: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[label - 1] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Coefficient `a_label`.
    pub fn get(&self, label: usize) -> i64 {
        self.0[label - 1]
    }

    pub fn set(&mut self, label: usize, value: i64) {
        self.0[label - 1] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_strongly_dominant(&self) -> bool {
        self.0.iter().all(|&a| a > 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    ambient_dim: usize,
    form_scale: Rational,
    simple_roots: Vec<Root>,
    /// Sorted by height, then by simple coordinates in decreasing
    /// lexicographic order (so `α_1, α_2, …` come first, in label order).
    positive_roots: Vec<Root>,
    fundamental_weights: Vec<AmbientVector>,
    /// `cartan[i][j] = <α_i, α_j^∨> = 2(α_i, α_j)/(α_j, α_j)`.
    cartan: Vec<Vec<i64>>,
    /// `fw_pairing[r][i] = (ϖ_{i+1}, α_r)` for the positive root `r`.
    fw_pairing: Vec<Vec<Rational>>,
    /// The same pairings over one denominator per root: `(numerators, denominator)`.
    fw_pairing_scaled: Vec<(Vec<BigInt>, BigInt)>,
    rho: Weight,
}

impl RootSystem {
    pub fn build(lie_type: LieType) -> RootSystem {
        let (dim, simple, all) = realization(lie_type);
        Self::from_realization(lie_type, dim, simple, &all)
    }

    fn from_realization(
        lie_type: LieType,
        ambient_dim: usize,
        simple: Vec<AmbientVector>,
        all: &[AmbientVector],
    ) -> RootSystem {
        let n = simple.len();
        debug_assert_eq!(n, lie_type.rank());
        let dot = |a: &AmbientVector, b: &AmbientVector| a.dot(b).expect("same ambient space");

        let gram: Matrix = simple
            .iter()
            .map(|a| simple.iter().map(|b| dot(a, b)).collect())
            .collect();
        let gram_inv = linalg::invert(&gram).expect("simple roots are linearly independent");

        // Expand every ambient root in the simple basis; roots outside the
        // span (E6, E7 inside E8) are discarded.
        let mut positive_roots = Vec::new();
        for v in all {
            let rhs: Vec<Rational> = simple.iter().map(|a| dot(a, v)).collect();
            let coeffs = linalg::mat_vec(&gram_inv, &rhs);
            let rebuilt = simple
                .iter()
                .zip(&coeffs)
                .fold(AmbientVector::zero(ambient_dim), |acc, (a, c)| acc.add(&a.scale(c)));
            if &rebuilt != v {
                continue;
            }
            let ints: Vec<i64> = coeffs
                .iter()
                .map(|c| rational::to_i64(c).expect("roots have integral simple coordinates"))
                .collect();
            let nonneg = ints.iter().all(|&c| c >= 0);
            let nonpos = ints.iter().all(|&c| c <= 0);
            assert!(nonneg || nonpos, "root {v} is neither positive nor negative");
            if nonneg {
                positive_roots.push(Root {
                    ambient: v.clone(),
                    height: ints.iter().sum(),
                    simple_coords: ints,
                });
            }
        }
        positive_roots.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then_with(|| b.simple_coords.cmp(&a.simple_coords))
        });

        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = int(2) * &gram[i][j] / &gram[j][j];
                        rational::to_i64(&c).expect("Cartan integers")
                    })
                    .collect()
            })
            .collect();
        let cartan_q: Matrix = cartan
            .iter()
            .map(|row| row.iter().map(|&c| int(c)).collect())
            .collect();
        let cartan_inv = linalg::invert(&cartan_q).expect("Cartan matrix is invertible");
        let fundamental_weights: Vec<AmbientVector> = cartan_inv
            .iter()
            .map(|row| {
                simple
                    .iter()
                    .zip(row)
                    .fold(AmbientVector::zero(ambient_dim), |acc, (a, c)| acc.add(&a.scale(c)))
            })
            .collect();

        let simple_roots: Vec<Root> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                Root {
                    ambient: simple[i].clone(),
                    simple_coords: c,
                    height: 1,
                }
            })
            .collect();

        let mut rs = RootSystem {
            lie_type,
            ambient_dim,
            form_scale: int(1),
            simple_roots,
            positive_roots,
            fundamental_weights,
            cartan,
            fw_pairing: Vec::new(),
            fw_pairing_scaled: Vec::new(),
            rho: Weight::rho(n),
        };
        rs.refresh_pairings();
        rs
    }

    fn refresh_pairings(&mut self) {
        self.fw_pairing = self
            .positive_roots
            .iter()
            .map(|r| {
                self.fundamental_weights
                    .iter()
                    .map(|w| self.form(w, &r.ambient))
                    .collect()
            })
            .collect();
        self.fw_pairing_scaled = self
            .fw_pairing
            .iter()
            .map(|row| {
                let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                let nums = row.iter().map(|q| q.numer() * (&den / q.denom())).collect();
                (nums, den)
            })
            .collect();
    }

    fn form(&self, v: &AmbientVector, w: &AmbientVector) -> Rational {
        v.dot(w).expect("same ambient space") * &self.form_scale
    }

    /// The same root system with the invariant form multiplied by `c > 0`.
    pub fn with_form_scale(&self, c: Rational) -> Result<RootSystem> {
        if !c.is_positive() {
            return Err(Error::NonPositiveFormScale);
        }
        let mut rs = self.clone();
        rs.form_scale = c;
        rs.refresh_pairings();
        Ok(rs)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn form_scale(&self) -> &Rational {
        &self.form_scale
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// `α_label`.
    pub fn simple_root(&self, label: usize) -> &Root {
        &self.simple_roots[label - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive_roots[index]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn fundamental_weights(&self) -> &[AmbientVector] {
        &self.fundamental_weights
    }

    /// Ambient vector of `ϖ_label`.
    pub fn fundamental_weight(&self, label: usize) -> &AmbientVector {
        &self.fundamental_weights[label - 1]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Index of the positive root with the given simple coordinates.
    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.positive_roots
            .iter()
            .position(|r| r.simple_coords == simple_coords)
    }

    /// Index of the positive root with the given ambient coordinates.
    pub fn root_index_ambient(&self, v: &AmbientVector) -> Option<usize> {
        self.positive_roots.iter().position(|r| &r.ambient == v)
    }

    /// Index of `α_label` among the positive roots.
    pub fn simple_root_index(&self, label: usize) -> usize {
        self.root_index(&self.simple_roots[label - 1].simple_coords)
            .expect("simple roots are positive")
    }

    pub fn highest_root_index(&self) -> usize {
        self.positive_roots.len() - 1
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root_index()]
    }

    /// The invariant form on ambient vectors.
    pub fn pairing(&self, v: &AmbientVector, w: &AmbientVector) -> Result<Rational> {
        for x in [v, w] {
            if x.dim() != self.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim,
                    found: x.dim(),
                });
            }
        }
        Ok(self.form(v, w))
    }

    /// `(ϖ_label, α_root)`.
    pub fn fundamental_pairing(&self, label: usize, root: usize) -> &Rational {
        &self.fw_pairing[root][label - 1]
    }

    /// `(w, α_root)` for a weight given in the fundamental-weight basis.
    pub fn weight_pairing(&self, w: &Weight, root: usize) -> Rational {
        let (nums, den) = &self.fw_pairing_scaled[root];
        let num: BigInt = nums
            .iter()
            .zip(w.coords())
            .filter(|(_, &a)| a != 0)
            .map(|(p, &a)| p * a)
            .sum();
        Rational::new(num, den.clone())
    }

    pub fn to_ambient(&self, w: &Weight) -> Result<AmbientVector> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(self
            .fundamental_weights
            .iter()
            .zip(w.coords())
            .fold(AmbientVector::zero(self.ambient_dim), |acc, (f, &a)| {
                acc.add(&f.scale(&int(a)))
            }))
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.is_dominant()
    }

    pub fn is_strongly_dominant(&self, w: &Weight) -> bool {
        w.is_strongly_dominant()
    }

    /// Human-readable label for a positive root: `α_i` for simple roots,
    /// otherwise its simple coordinates.
    pub fn root_label(&self, index: usize) -> alloc::string::String {
        let r = &self.positive_roots[index];
        if r.height == 1 {
            let i = r.simple_coords.iter().position(|&c| c == 1).unwrap_or(0);
            format!("α_{}", i + 1)
        } else {
            let parts: Vec<alloc::string::String> =
                r.simple_coords.iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

/// `(ambient dimension, simple roots, every root)` of the standard realization.
fn realization(lt: LieType) -> (usize, Vec<AmbientVector>, Vec<AmbientVector>) {
    let n = lt.rank();
    let e = AmbientVector::unit;
    match lt.family() {
        Family::A => {
            let d = n + 1;
            let simple = (1..=n).map(|i| e(d, i).sub(&e(d, i + 1))).collect();
            (d, simple, pm_eps_pairs(d, false))
        }
        Family::B => {
            let mut simple: Vec<_> = (1..n).map(|i| e(n, i).sub(&e(n, i + 1))).collect();
            simple.push(e(n, n));
            let mut all = pm_eps_pairs(n, true);
            all.extend(pm_units(n, 1));
            (n, simple, all)
        }
        Family::C => {
            let mut simple: Vec<_> = (1..n).map(|i| e(n, i).sub(&e(n, i + 1))).collect();
            simple.push(e(n, n).scale(&int(2)));
            let mut all = pm_eps_pairs(n, true);
            all.extend(pm_units(n, 2));
            (n, simple, all)
        }
        Family::D => {
            let mut simple: Vec<_> = (1..n).map(|i| e(n, i).sub(&e(n, i + 1))).collect();
            simple.push(e(n, n - 1).add(&e(n, n)));
            (n, simple, pm_eps_pairs(n, true))
        }
        Family::E => {
            let simple8 = e8_simple_roots();
            (8, simple8[..n].to_vec(), e8_roots())
        }
        Family::F => {
            let simple = vec![
                e(4, 2).sub(&e(4, 3)),
                e(4, 3).sub(&e(4, 4)),
                e(4, 4),
                AmbientVector::from_fracs(&[1, -1, -1, -1], 2),
            ];
            let mut all = pm_eps_pairs(4, true);
            all.extend(pm_units(4, 1));
            for mask in 0u32..16 {
                let c: Vec<i64> = (0..4).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
                all.push(AmbientVector::from_fracs(&c, 2));
            }
            (4, simple, all)
        }
        Family::G => {
            let simple = vec![
                AmbientVector::from_ints(&[0, 1, -1]),
                AmbientVector::from_ints(&[1, -2, 1]),
            ];
            let mut all = pm_eps_pairs(3, false);
            for i in 1..=3 {
                // ±(2ε_i - ε_j - ε_k)
                let mut c = [-1i64; 3];
                c[i - 1] = 2;
                let v = AmbientVector::from_ints(&c);
                all.push(v.neg());
                all.push(v);
            }
            (3, simple, all)
        }
    }
}

/// All `±ε_i ± ε_j` (`with_sums`) or only `ε_i - ε_j` for `i ≠ j`.
fn pm_eps_pairs(d: usize, with_sums: bool) -> Vec<AmbientVector> {
    let e = AmbientVector::unit;
    let mut out = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            if i == j {
                continue;
            }
            out.push(e(d, i).sub(&e(d, j)));
            if with_sums && i < j {
                let s = e(d, i).add(&e(d, j));
                out.push(s.neg());
                out.push(s);
            }
        }
    }
    out
}

fn pm_units(d: usize, len: i64) -> Vec<AmbientVector> {
    (1..=d)
        .flat_map(|i| {
            let v = AmbientVector::unit(d, i).scale(&int(len));
            [v.neg(), v]
        })
        .collect()
}

/// `α_1 = ½(ε_1 - ε_2 - … - ε_7 + ε_8)`, `α_2 = ε_1 + ε_2`,
/// `α_i = ε_{i-1} - ε_{i-2}` for `3 ≤ i ≤ 8`.
fn e8_simple_roots() -> Vec<AmbientVector> {
    let e = |k| AmbientVector::unit(8, k);
    let mut simple = vec![
        AmbientVector::from_fracs(&[1, -1, -1, -1, -1, -1, -1, 1], 2),
        e(1).add(&e(2)),
    ];
    for i in 3..=8 {
        simple.push(e(i - 1).sub(&e(i - 2)));
    }
    simple
}

/// The 240 vectors of squared length 2 in the `E8` lattice.
fn e8_roots() -> Vec<AmbientVector> {
    let mut all = pm_eps_pairs(8, true);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let c: Vec<i64> = (0..8).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
            all.push(AmbientVector::from_fracs(&c, 2));
        }
    }
    all
}
