//! The two covering constructions of the plane: the recursive tower of
//! double Kummer covers, and the degree bookkeeping for `Q_m x Q_m`.

use super::{lift_config, CoverError, KummerCover, LiftReport};
use crate::configuration::{build_apollonius, CurveComponent, LocalType, OrbifoldConfig, SingularPointRec};
use crate::numerics::Weight;

/// Picks the branch triple for the next double cover.
///
/// Candidates are triples of even-weight lines, in lexicographic order of
/// ids, meeting pairwise in three distinct recorded points with no point on
/// all three; the opposite vertices must carry three further lines that are
/// themselves concurrent. Returns the triple and those marked lines.
pub fn select_triple(config: &OrbifoldConfig) -> Vec<([String; 3], [String; 3])> {
    let is_line = |c: &&CurveComponent| c.degree == 1;
    let mut even: Vec<&str> = config
        .components
        .iter()
        .filter(is_line)
        .filter(|c| matches!(c.weight, Weight::Fin(w) if w % 2 == 0))
        .map(|c| c.id.as_str())
        .collect();
    even.sort();
    let lines: Vec<&str> = config.components.iter().filter(is_line).map(|c| c.id.as_str()).collect();
    let meet = |a: &str, b: &str| -> Vec<usize> {
        (0..config.points.len()).filter(|&i| config.points[i].touches(a) && config.points[i].touches(b)).collect()
    };
    let mut out = Vec::new();
    for i in 0..even.len() {
        for j in i + 1..even.len() {
            for l in j + 1..even.len() {
                let tri = [even[i], even[j], even[l]];
                let mut vs = Vec::new();
                for (a, b) in [(tri[1], tri[2]), (tri[0], tri[2]), (tri[0], tri[1])] {
                    match meet(a, b)[..] {
                        [v] => vs.push(v),
                        _ => break,
                    }
                }
                if vs.len() < 3 || vs[0] == vs[1] || vs[0] == vs[2] || vs[1] == vs[2] {
                    continue;
                }
                if vs.iter().any(|&v| tri.iter().all(|t| config.points[v].touches(t))) {
                    continue;
                }
                let opts: Vec<Vec<&str>> = vs
                    .iter()
                    .map(|&v| lines.iter().copied().filter(|x| !tri.contains(x) && config.points[v].touches(x)).collect())
                    .collect();
                let found = opts[0].iter().find_map(|&m1| {
                    opts[1].iter().find_map(|&m2| {
                        opts[2].iter().find_map(|&m3| {
                            let distinct = m1 != m2 && m1 != m3 && m2 != m3;
                            let concurrent = config.points.iter().any(|p| [m1, m2, m3].iter().all(|x| p.touches(x)));
                            (distinct && concurrent).then_some([m1, m2, m3])
                        })
                    })
                });
                if let Some(m) = found {
                    out.push((tri.map(String::from), m.map(String::from)));
                }
            }
        }
    }
    out
}

/// One step of the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Step {
    pub triple: [String; 3],
    pub markers: [String; 3],
    pub report: LiftReport,
    /// Total degree of the locus of the lifted orbifold.
    pub locus_degree: u64,
}

/// The first orbifold of the tower: the double cover of `A(4;4,4,4)`.
pub fn theorem1_start() -> Result<OrbifoldConfig, CoverError> {
    let base = build_apollonius(Weight::Fin(4), &[Weight::Fin(4); 3]);
    Ok(lift_config(&base, &KummerCover::new(2, ["T1", "T2", "T3"]))?.lifted)
}

/// Applies `steps` double covers, each along the first candidate triple
/// whose lift is supported.
pub fn theorem1_iterate(steps: usize) -> Result<Vec<Theorem1Step>, CoverError> {
    let mut current = theorem1_start()?;
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        let mut last = None;
        let mut next = None;
        for (triple, markers) in select_triple(&current) {
            let cover = KummerCover { k: 2, branch: triple.clone() };
            match lift_config(&current, &cover) {
                Ok(report) => {
                    next = Some((triple, markers, report));
                    break;
                }
                Err(e) => last = Some(e),
            }
        }
        let Some((triple, markers, report)) = next else {
            return Err(last.unwrap_or_else(|| CoverError::InvalidCover(format!("no branch triple at step {}", step + 1))));
        };
        current = report.lifted.clone();
        out.push(Theorem1Step { triple, markers, locus_degree: current.locus_degree(), report });
    }
    Ok(out)
}

/// Degrees in the factorization of the uniformization `Q_m x Q_m -> (P^2, beta_m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem2Record {
    pub m: u32,
    /// `Q_m -> S(m,m,m)`, abelian of degree `m^2`.
    pub deg_f: u64,
    pub deg_zeta: u64,
    pub deg_psi_zeta: u64,
    /// Kummer cover `phi_m`.
    pub deg_phi: u64,
    pub final_degree: u64,
    pub genus: u64,
}

impl Theorem2Record {
    pub fn consistent(&self) -> bool {
        self.deg_psi_zeta == self.deg_phi * self.final_degree
    }
}

pub fn theorem2_bookkeeping(m: u32) -> Result<Theorem2Record, CoverError> {
    if m.is_multiple_of(2) {
        return Err(CoverError::EvenM(m));
    }
    let m64 = m as u64;
    let sq = m64 * m64;
    Ok(Theorem2Record {
        m,
        deg_f: sq,
        deg_zeta: sq * sq,
        deg_psi_zeta: 2 * sq * sq,
        deg_phi: sq,
        final_degree: 2 * sq,
        genus: ((m as i64 - 1) * (m as i64 - 2) / 2) as u64,
    })
}

/// The weight-2 orbifold `(P^2, beta_m)` supported on the curve `Q_m` of
/// degree `2m` with `3m` singular points of type `x^2 = y^m`.
pub fn theorem2_orbifold(m: u32) -> Result<OrbifoldConfig, CoverError> {
    if m.is_multiple_of(2) {
        return Err(CoverError::EvenM(m));
    }
    let mi = m as i64;
    let mut comp = CurveComponent {
        id: "Q".into(),
        degree: 2 * m,
        euler_set: 3 * mi - mi * mi,
        weight: Weight::Fin(2),
        kind: crate::configuration::Kind::from_degree(2 * m),
    };
    let mut points = Vec::new();
    if m == 1 {
        comp.euler_set = 2;
    } else {
        for i in 0..3 * m {
            points.push(SingularPointRec::new(&format!("u{}", i + 1), LocalType::Unibranch(m), &["Q"]));
        }
    }
    Ok(OrbifoldConfig { components: vec![comp], points, label: format!("Q_{m}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bookkeeping() {
        let r = theorem2_bookkeeping(3).unwrap();
        assert_eq!((r.final_degree, r.genus), (18, 1));
        assert!(r.consistent());
        assert_eq!(theorem2_bookkeeping(1).unwrap().final_degree, 2);
        assert_eq!(theorem2_bookkeeping(4), Err(CoverError::EvenM(4)));
    }

    #[test]
    fn sextic_shape() {
        let q = theorem2_orbifold(3).unwrap();
        assert_eq!((q.components[0].degree, q.components[0].euler_set, q.points.len()), (6, 0, 9));
    }
}
