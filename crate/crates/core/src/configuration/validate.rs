//! Admissibility checks.

use std::fmt;

use super::{Kind, OrbifoldConfig};
use crate::invariants::{local_order, OrderError};
use crate::numerics::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Ids, incidences or component shape are inconsistent.
    Structure(String),
    /// A component still has weight 1; normalize first.
    Unnormalized(String),
    /// The local inequality fails at a point.
    Inadmissible { point: String, reason: String },
    /// The local order is finite but not an integer.
    NonIntegral { point: String, order: String },
    /// No order formula is known for this local type and weights.
    Unsupported { point: String, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Structure(s) => write!(f, "structure: {s}"),
            Violation::Unnormalized(c) => write!(f, "component {c} has weight 1"),
            Violation::Inadmissible { point, reason } => write!(f, "point {point}: inadmissible ({reason})"),
            Violation::NonIntegral { point, order } => write!(f, "point {point}: non-integral order {order}"),
            Violation::Unsupported { point, reason } => write!(f, "point {point}: unsupported for invariants ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Points whose local order is infinite (log-canonical boundary).
    pub boundary: Vec<String>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(c: &OrbifoldConfig) -> ValidationReport {
    let mut r = ValidationReport::default();
    if let Err(e) = c.check_structure() {
        r.violations.push(Violation::Structure(e.to_string()));
        return r;
    }
    for x in &c.components {
        let shape_ok = match x.kind {
            Kind::Line => x.degree == 1 && x.euler_set == 2,
            Kind::Quadric => x.degree == 2 && x.euler_set == 2,
            Kind::General => x.degree >= 1,
        };
        if !shape_ok {
            r.violations.push(Violation::Structure(format!("component {} does not match kind {}", x.id, x.kind.name())));
        }
        if x.weight == Weight::Fin(1) {
            r.violations.push(Violation::Unnormalized(x.id.clone()));
        }
    }
    for p in &c.points {
        if p.branch_total() != p.local_type.branch_count() || !p.local_type.is_well_formed() {
            r.violations.push(Violation::Structure(format!("point {} has the wrong branch count for {}", p.id, p.local_type)));
            continue;
        }
        let ws = c.branch_weights(p).expect("structure checked");
        match local_order(p.local_type, &ws) {
            Ok(o) if o.is_inf() => r.boundary.push(p.id.clone()),
            Ok(_) => {}
            Err(OrderError::Inadmissible(reason)) => {
                r.violations.push(Violation::Inadmissible { point: p.id.clone(), reason })
            }
            Err(OrderError::NonIntegral(order)) => {
                r.violations.push(Violation::NonIntegral { point: p.id.clone(), order: order.to_string() })
            }
            Err(OrderError::Unsupported(reason)) => {
                r.violations.push(Violation::Unsupported { point: p.id.clone(), reason })
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{build_apollonius, build_cuspidal, general_lines, CurveComponent, LocalType, SingularPointRec};
    use crate::numerics::Weight::Fin;

    #[test]
    fn triple_334_is_inadmissible() {
        let mut c = general_lines(&[]);
        for (id, w) in [("A", 3), ("B", 3), ("C", 4)] {
            c.components.push(CurveComponent::line(id, Fin(w)));
        }
        c.points.push(SingularPointRec::new("p", LocalType::TRIPLE, &["A", "B", "C"]));
        let r = validate(&c);
        assert!(matches!(&r.violations[..], [Violation::Inadmissible { .. }]), "{r:?}");
    }

    #[test]
    fn boundary_tacnode_and_cusp() {
        let r = validate(&build_apollonius(Fin(4), &[Fin(4)]));
        assert!(r.is_admissible());
        assert_eq!(r.boundary, vec!["q1".to_string()]);
        let r = validate(&build_cuspidal(6, 9, 0, Fin(2)).unwrap());
        assert!(r.is_admissible() && r.boundary.is_empty());
    }

    #[test]
    fn higher_power_needs_weight_two() {
        let mut c = build_cuspidal(10, 0, 0, Fin(3)).unwrap();
        c.points.push(SingularPointRec::new("u", LocalType::Unibranch(5), &["C"]));
        assert!(matches!(&validate(&c).violations[..], [Violation::Unsupported { .. }]));
    }
}
