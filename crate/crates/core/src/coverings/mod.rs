//! Kummer coverings `[x:y:z] -> [x^k:y^k:z^k]` of weighted configurations.
//!
//! The covering group is `G = (Z/k)^2` with meridian images
//! `g_X = (1,0)`, `g_Y = (0,1)`, `g_Z = (-1,-1)`. A point `p` of a
//! non-branch component `C` lying on branch lines with contacts `m_L`
//! contributes the loop class `h = sum_L m_L g_L`; these classes span the
//! monodromy subgroup `H_C`, and the preimage of `C` has one component per
//! coset of `H_C`.
//!
//! The splitting rule is not stated in closed form by the geometric sources;
//! it is validated here through degree conservation, Bezout checks on the
//! lifted configurations and exact multiplicativity of the Chern numbers.

mod group;
mod lift;
mod theorem;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::configuration::ConfigError;
use crate::invariants::{ChernPair, InvariantError};
use crate::configuration::OrbifoldConfig;

pub use group::{Elem, KummerGroup, Subgroup};
pub use lift::{incidence_profiles, lift_config, lift_raw, monodromy_subgroup, split_component, RawLift};
pub use theorem::{
    select_triple, theorem1_iterate, theorem1_start, theorem2_bookkeeping, theorem2_orbifold, Theorem1Step, Theorem2Record,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("unsupported local type at {point}: {reason}")]
    UnsupportedLocalType { point: String, reason: String },
    #[error("profile inconsistency: {0}")]
    ProfileInconsistent(String),
    #[error("non-integral split of {component}: {reason}")]
    NonIntegralSplit { component: String, reason: String },
    #[error("even m = {0}")]
    EvenM(u32),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Exponent `k` and an ordered branch triple `(X, Y, Z)` of lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KummerCover {
    pub k: u32,
    pub branch: [String; 3],
}

impl KummerCover {
    pub fn new(k: u32, branch: [&str; 3]) -> Self {
        KummerCover { k, branch: branch.map(|s| s.to_string()) }
    }

    pub fn degree(&self) -> u64 {
        self.k as u64 * self.k as u64
    }
}

/// How one component meets the branch triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceProfile {
    pub component: String,
    pub points: Vec<ProfilePoint>,
}

/// A point of the component on the branch triangle.
///
/// `mult[i][j]` is the intersection multiplicity of the component's `i`-th
/// branch at the point with `lines[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfilePoint {
    pub point: String,
    pub lines: Vec<String>,
    pub mult: Vec<Vec<u32>>,
}

impl IncidenceProfile {
    /// Total multiplicity on a branch line; Bezout demands the component's degree.
    pub fn total_on(&self, line: &str) -> u32 {
        self.points
            .iter()
            .map(|p| match p.lines.iter().position(|l| l == line) {
                Some(j) => p.mult.iter().map(|row| row[j]).sum(),
                None => 0,
            })
            .sum()
    }
}

/// Result of lifting a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    /// The normalized lifted configuration.
    pub lifted: OrbifoldConfig,
    pub degree: u64,
    /// Base component id to the ids of its lifted components.
    pub component_map: BTreeMap<String, Vec<String>>,
    pub base: ChernPair,
    pub lift: ChernPair,
    pub euler_ok: bool,
    pub c1sq_ok: bool,
}

impl LiftReport {
    pub fn multiplicative(&self) -> bool {
        self.euler_ok && self.c1sq_ok
    }
}
