//! Weighted curve configurations on the projective plane.
//!
//! Geometry is purely combinatorial. A configuration lists its components with
//! degree, point-set Euler characteristic and weight, plus an inventory of the
//! singular points of the underlying curve together with their local types.

mod builders;
mod germ;
mod iso;
mod text;
mod validate;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::numerics::Weight;

pub use builders::{
    build_apollonius, build_cuspidal, build_preset, ceva, complete_quadrilateral, general_lines,
    PresetParams,
};
pub use germ::{classify_germ, normalize, Germ};
pub(crate) use germ::normalize_germs;
pub use iso::{canonical_form, iso_check};
pub use text::{parse_config, render_config};
pub use validate::{validate, ValidationReport, Violation};

/// Errors raised while building, parsing or transforming configurations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("negative genus {0}")]
    NegativeGenus(i64),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{name}` expects {expected} parameters, got {got}")]
    WrongParamCount { name: String, expected: String, got: usize },
    #[error("unsupported local type: {0}")]
    UnsupportedLocalType(String),
}

/// Shape tag for a component, used by the covering code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Line,
    Quadric,
    General,
}

impl Kind {
    /// Tag implied by a degree.
    pub fn from_degree(d: u32) -> Kind {
        match d {
            1 => Kind::Line,
            2 => Kind::Quadric,
            _ => Kind::General,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Line => "line",
            Kind::Quadric => "quadric",
            Kind::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveComponent {
    pub id: String,
    pub degree: u32,
    /// Euler characteristic of the component as a point set.
    pub euler_set: i64,
    pub weight: Weight,
    pub kind: Kind,
}

impl CurveComponent {
    pub fn line(id: &str, weight: Weight) -> Self {
        CurveComponent { id: id.to_string(), degree: 1, euler_set: 2, weight, kind: Kind::Line }
    }

    pub fn quadric(id: &str, weight: Weight) -> Self {
        CurveComponent { id: id.to_string(), degree: 2, euler_set: 2, weight, kind: Kind::Quadric }
    }
}

/// Local model of a singular point of the divisor.
///
/// Nodes and transversal triples are `Ordinary(2)` and `Ordinary(3)`; the
/// simple cusp is `Unibranch(3)`; a tacnode is a two-branch cluster with
/// contact 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalType {
    /// `r` smooth pairwise transversal branches.
    Ordinary(u32),
    /// `branches` smooth branches with common pairwise contact `contact >= 2`,
    /// optionally crossed by one further smooth branch transversal to all of
    /// them (listed last).
    Cluster { contact: u32, branches: u32, line: bool },
    /// The unibranch germ `x^2 = y^m`, `m` odd.
    Unibranch(u32),
}

impl LocalType {
    pub const NODE: LocalType = LocalType::Ordinary(2);
    pub const TRIPLE: LocalType = LocalType::Ordinary(3);
    pub const TACNODE: LocalType = LocalType::Cluster { contact: 2, branches: 2, line: false };
    pub const CUSP: LocalType = LocalType::Unibranch(3);

    /// Two smooth branches with contact `c`; `c = 3` is the `x^6 = y^2` point.
    pub fn higher_tacnode(c: u32) -> LocalType {
        LocalType::Cluster { contact: c, branches: 2, line: false }
    }

    pub fn branch_count(self) -> usize {
        match self {
            LocalType::Ordinary(r) => r as usize,
            LocalType::Cluster { branches, line, .. } => branches as usize + line as usize,
            LocalType::Unibranch(_) => 1,
        }
    }

    /// Pairwise intersection multiplicities of the branches, in branch order.
    pub fn contact_matrix(self) -> Vec<Vec<u32>> {
        let n = self.branch_count();
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    c[i][j] = match self {
                        LocalType::Cluster { contact, branches, .. }
                            if i < branches as usize && j < branches as usize =>
                        {
                            contact
                        }
                        _ => 1,
                    };
                }
            }
        }
        c
    }

    /// Structural sanity of the parameters.
    pub fn is_well_formed(self) -> bool {
        match self {
            LocalType::Ordinary(r) => r >= 2,
            LocalType::Cluster { contact, branches, .. } => contact >= 2 && branches >= 2,
            LocalType::Unibranch(m) => m >= 3 && m % 2 == 1,
        }
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LocalType::Ordinary(2) => f.write_str("node"),
            LocalType::Ordinary(3) => f.write_str("triple"),
            LocalType::Ordinary(r) => write!(f, "ordinary:{r}"),
            LocalType::Cluster { contact: 2, branches: 2, line: false } => f.write_str("tacnode"),
            LocalType::Cluster { contact, branches: 2, line: false } => write!(f, "tacnode:{contact}"),
            LocalType::Cluster { contact, branches, line } => {
                write!(f, "cluster:{contact}:{branches}")?;
                if line {
                    f.write_str(":line")?;
                }
                Ok(())
            }
            LocalType::Unibranch(3) => f.write_str("cusp"),
            LocalType::Unibranch(m) => write!(f, "power:{m}"),
        }
    }
}

/// A singular point: its local type and the components through it.
///
/// Incidences are `(component id, branch count)`. Expanding them in order
/// gives the branch list matched against [`LocalType::contact_matrix`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularPointRec {
    pub id: String,
    pub local_type: LocalType,
    pub incidences: Vec<(String, u32)>,
}

impl SingularPointRec {
    pub fn new(id: &str, local_type: LocalType, on: &[&str]) -> Self {
        let branches: Vec<String> = on.iter().map(|s| s.to_string()).collect();
        SingularPointRec { id: id.to_string(), local_type, incidences: group_branches(&branches) }
    }

    /// Component id of every branch, in branch order.
    pub fn branches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (c, n) in &self.incidences {
            for _ in 0..*n {
                out.push(c.clone());
            }
        }
        out
    }

    pub fn branch_total(&self) -> usize {
        self.incidences.iter().map(|(_, n)| *n as usize).sum()
    }

    pub fn touches(&self, comp: &str) -> bool {
        self.incidences.iter().any(|(c, _)| c == comp)
    }
}

/// Merges consecutive equal ids into `(id, count)` pairs.
pub(crate) fn group_branches(branches: &[String]) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = Vec::new();
    for b in branches {
        match out.last_mut() {
            Some((c, n)) if c == b => *n += 1,
            _ => out.push((b.clone(), 1)),
        }
    }
    out
}

/// A divisor `b_1 B_1 + ... + b_n B_n` on the plane with its singular points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbifoldConfig {
    pub components: Vec<CurveComponent>,
    pub points: Vec<SingularPointRec>,
    pub label: String,
}

impl OrbifoldConfig {
    pub fn component(&self, id: &str) -> Option<&CurveComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn component_mut(&mut self, id: &str) -> Option<&mut CurveComponent> {
        self.components.iter_mut().find(|c| c.id == id)
    }

    pub fn point(&self, id: &str) -> Option<&SingularPointRec> {
        self.points.iter().find(|p| p.id == id)
    }

    /// Number of singular points lying on a component, self-singular points once.
    pub fn points_on(&self, comp: &str) -> usize {
        self.points.iter().filter(|p| p.touches(comp)).count()
    }

    /// Sum of component degrees.
    pub fn locus_degree(&self) -> u64 {
        self.components.iter().map(|c| c.degree as u64).sum()
    }

    /// Weights of the branches through a point, in branch order.
    pub fn branch_weights(&self, p: &SingularPointRec) -> Result<Vec<Weight>, ConfigError> {
        p.branches()
            .iter()
            .map(|b| {
                self.component(b)
                    .map(|c| c.weight)
                    .ok_or_else(|| ConfigError::UnknownComponent(b.clone()))
            })
            .collect()
    }

    /// Id uniqueness and resolution of every incidence.
    pub fn check_structure(&self) -> Result<(), ConfigError> {
        let mut seen = HashSet::new();
        for c in &self.components {
            if !seen.insert(c.id.as_str()) {
                return Err(ConfigError::DuplicateId(c.id.clone()));
            }
        }
        let mut pts = HashSet::new();
        for p in &self.points {
            if !pts.insert(p.id.as_str()) {
                return Err(ConfigError::DuplicateId(p.id.clone()));
            }
            for (c, _) in &p.incidences {
                if !seen.contains(c.as_str()) {
                    return Err(ConfigError::UnknownComponent(c.clone()));
                }
            }
        }
        Ok(())
    }

    /// Bezout defects: pairs of distinct components whose recorded local
    /// intersections do not add up to the product of their degrees.
    pub fn bezout_defects(&self) -> Vec<(String, String, u64, u64)> {
        let mut out = Vec::new();
        let germs: Vec<Germ> = self.points.iter().map(Germ::from_rec).collect();
        for (i, a) in self.components.iter().enumerate() {
            for b in &self.components[i + 1..] {
                let mut seen = 0u64;
                for g in &germs {
                    for (x, bx) in g.branches.iter().enumerate() {
                        for (y, by) in g.branches.iter().enumerate() {
                            if *bx == a.id && *by == b.id && x != y {
                                seen += g.contact[x][y] as u64;
                            }
                        }
                    }
                }
                let want = a.degree as u64 * b.degree as u64;
                if seen != want {
                    out.push((a.id.clone(), b.id.clone(), seen, want));
                }
            }
        }
        out
    }
}
