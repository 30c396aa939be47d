use alloc::string::String;
use core::fmt;

use crate::rootspace::Family;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidLieType { family: Family, rank: usize },
    UnknownLieType(String),
    DimensionMismatch { expected: usize, found: usize },
    EmptyNodeSet,
    NodeOutOfRange { label: usize, rank: usize },
    PolarizationLength { expected: usize, found: usize },
    NonPositivePolarization { label: usize, value: i64 },
    NonPositiveFormScale,
    /// `a_i < 0` for a node outside `J`: not the highest weight of a `P_J`-module.
    NotParabolicDominant { label: usize, value: i64 },
    /// `a_i < 0` where the Ulrich criteria require every coefficient nonnegative.
    NegativeCoefficient { label: usize, value: i64 },
    RootNotInPhiJ { root: usize },
    RootIndexOutOfRange { root: usize, count: usize },
    IdenticalRoots { root: usize },
    WeightOutsideSupport { label: usize },
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLieType { family, rank } => {
                write!(f, "{family:?}{rank} is not a simple Lie type")
            }
            Error::UnknownLieType(s) => write!(f, "cannot parse Lie type {s:?}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyNodeSet => f.write_str("node set J must be nonempty"),
            Error::NodeOutOfRange { label, rank } => {
                write!(f, "node {label} is outside 1..={rank}")
            }
            Error::PolarizationLength { expected, found } => write!(
                f,
                "polarization has {found} coefficients but J has {expected} nodes"
            ),
            Error::NonPositivePolarization { label, value } => {
                write!(f, "polarization coefficient b_{label} = {value} must be positive")
            }
            Error::NonPositiveFormScale => f.write_str("form scale must be positive"),
            Error::NotParabolicDominant { label, value } => write!(
                f,
                "a_{label} = {value} < 0 at a node outside J; weight is not P_J-dominant"
            ),
            Error::NegativeCoefficient { label, value } => {
                write!(f, "a_{label} = {value} < 0; initialized bundles need a_i >= 0")
            }
            Error::RootNotInPhiJ { root } => {
                write!(f, "positive root #{root} is not in Phi_J^+")
            }
            Error::RootIndexOutOfRange { root, count } => {
                write!(f, "root index {root} out of range (0..{count})")
            }
            Error::IdenticalRoots { root } => {
                write!(f, "a bad pair needs two distinct roots (got #{root} twice)")
            }
            Error::WeightOutsideSupport { label } => {
                write!(f, "mu has a nonzero coefficient at node {label} outside S")
            }
            Error::Overflow => f.write_str("integer overflow while lowering exact data"),
        }
    }
}

impl core::error::Error for Error {}
