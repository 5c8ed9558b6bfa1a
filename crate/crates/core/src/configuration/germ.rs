//! Branch-level description of singular points and normalization.

use super::{group_branches, ConfigError, LocalType, OrbifoldConfig, SingularPointRec};
use crate::numerics::Weight;

/// A point seen as a list of branches with pairwise contact orders.
///
/// `unibranch = Some(m)` marks branch 0 as an `x^2 = y^m` germ; any further
/// branches are transient and must disappear under normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub id: String,
    pub branches: Vec<String>,
    pub contact: Vec<Vec<u32>>,
    pub unibranch: Option<u32>,
}

impl Germ {
    pub fn from_rec(p: &SingularPointRec) -> Germ {
        let unibranch = match p.local_type {
            LocalType::Unibranch(m) => Some(m),
            _ => None,
        };
        Germ {
            id: p.id.clone(),
            branches: p.branches(),
            contact: p.local_type.contact_matrix(),
            unibranch,
        }
    }

    /// Keeps the branches selected by `keep`, in order.
    fn restrict(&self, keep: &[usize]) -> Germ {
        Germ {
            id: self.id.clone(),
            branches: keep.iter().map(|&i| self.branches[i].clone()).collect(),
            contact: keep.iter().map(|&i| keep.iter().map(|&j| self.contact[i][j]).collect()).collect(),
            unibranch: self.unibranch,
        }
    }
}

/// Recognizes the local type of a germ and returns its branches reordered to
/// match the type's contact matrix.
pub fn classify_germ(g: &Germ) -> Result<SingularPointRec, ConfigError> {
    let n = g.branches.len();
    let rec = |t: LocalType, order: Vec<usize>| SingularPointRec {
        id: g.id.clone(),
        local_type: t,
        incidences: group_branches(&order.iter().map(|&i| g.branches[i].clone()).collect::<Vec<_>>()),
    };
    if let Some(m) = g.unibranch {
        if n != 1 {
            return Err(ConfigError::UnsupportedLocalType(format!(
                "{}: unibranch germ x^2=y^{m} met by {} further branches",
                g.id,
                n - 1
            )));
        }
        return Ok(rec(LocalType::Unibranch(m), vec![0]));
    }
    if n < 2 {
        return Err(ConfigError::UnsupportedLocalType(format!("{}: fewer than two branches", g.id)));
    }
    let all_transversal = (0..n).all(|i| (0..n).all(|j| i == j || g.contact[i][j] == 1));
    if all_transversal {
        return Ok(rec(LocalType::Ordinary(n as u32), (0..n).collect()));
    }
    let candidates = std::iter::once(None).chain((0..n).map(Some));
    for line in candidates {
        let tight: Vec<usize> = (0..n).filter(|&i| Some(i) != line).collect();
        if tight.len() < 2 {
            continue;
        }
        let c = g.contact[tight[0]][tight[1]];
        if c < 2 {
            continue;
        }
        let uniform = tight.iter().all(|&i| tight.iter().all(|&j| i == j || g.contact[i][j] == c));
        let crossed = line.is_none_or(|l| tight.iter().all(|&i| g.contact[l][i] == 1));
        if uniform && crossed {
            let mut order = tight.clone();
            order.extend(line);
            let t = LocalType::Cluster { contact: c, branches: tight.len() as u32, line: line.is_some() };
            return Ok(rec(t, order));
        }
    }
    Err(ConfigError::UnsupportedLocalType(format!("{}: contact pattern {:?}", g.id, g.contact)))
}

/// Normalizes raw germs against a component list: branches on weight-1
/// components vanish, points left with at most one branch are dropped unless
/// they carry a unibranch singularity, and the rest are re-typed.
pub(crate) fn normalize_germs(config: &OrbifoldConfig, germs: &[Germ]) -> Result<Vec<SingularPointRec>, ConfigError> {
    let live = |id: &str| config.component(id).is_some_and(|c| c.weight != Weight::Fin(1));
    let mut out = Vec::new();
    for g in germs {
        let keep: Vec<usize> = (0..g.branches.len()).filter(|&i| live(&g.branches[i])).collect();
        if g.unibranch.is_some() {
            if !keep.contains(&0) {
                continue;
            }
        } else if keep.len() <= 1 {
            continue;
        }
        out.push(classify_germ(&g.restrict(&keep))?);
    }
    Ok(out)
}

/// Strips weight-1 components and re-types the surviving points.
pub fn normalize(config: &OrbifoldConfig) -> OrbifoldConfig {
    let germs: Vec<Germ> = config.points.iter().map(Germ::from_rec).collect();
    // Subsets of supported local types are supported, so re-typing cannot fail.
    let points = normalize_germs(config, &germs).expect("sub-germ of a supported type");
    OrbifoldConfig {
        components: config.components.iter().filter(|c| c.weight != Weight::Fin(1)).cloned().collect(),
        points,
        label: config.label.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{build_apollonius, CurveComponent};
    use crate::numerics::Weight::Fin;

    #[test]
    fn strips_tangent_line() {
        let base = build_apollonius(Fin(2), &[Fin(1), Fin(3)]);
        let n = normalize(&base);
        assert_eq!(n.components.len(), 2);
        assert_eq!(n.points.len(), 1);
        assert_eq!(n.points[0].local_type, LocalType::TACNODE);
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn triple_point_loses_a_line() {
        let mut c = OrbifoldConfig::default();
        for (id, w) in [("A", 2), ("B", 3), ("C", 1)] {
            c.components.push(CurveComponent::line(id, Fin(w)));
        }
        c.points.push(SingularPointRec::new("p", LocalType::TRIPLE, &["A", "B", "C"]));
        let n = normalize(&c);
        assert_eq!(n.points[0].local_type, LocalType::NODE);
        assert_eq!(n.points[0].branches(), vec!["A", "B"]);
    }

    #[test]
    fn cluster_recognition() {
        let g = Germ {
            id: "p".into(),
            branches: vec!["L".into(), "A".into(), "B".into()],
            contact: vec![vec![0, 1, 1], vec![1, 0, 3], vec![1, 3, 0]],
            unibranch: None,
        };
        let r = classify_germ(&g).unwrap();
        assert_eq!(r.local_type, LocalType::Cluster { contact: 3, branches: 2, line: true });
        assert_eq!(r.branches(), vec!["A", "B", "L"]);
        let bad = Germ { contact: vec![vec![0, 2, 1], vec![2, 0, 3], vec![1, 3, 0]], ..g };
        assert!(classify_germ(&bad).is_err());
    }
}
