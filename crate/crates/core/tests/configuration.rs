use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use orbicover::configuration::{
    build_apollonius, build_preset, canonical_form, ceva, complete_quadrilateral, general_lines, iso_check, normalize,
    parse_config, render_config, LocalType, OrbifoldConfig,
};
use orbicover::invariants::chern_pair;
use orbicover::numerics::Weight::{self, Fin, Inf};

/// Points of `P^2(F_p)` in normalized coordinates.
fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..p).map(|y| [0, 1, y]));
    pts.extend((0..p).flat_map(|y| (0..p).map(move |z| [1, y, z])));
    pts
}

/// Brute-force incidences of the Ceva lines `x = w^a y`, `y = w^b z`,
/// `z = w^c x` over `F_p`, with `w` of order `n`.
fn ceva_over(p: u64, n: u64) -> BTreeSet<BTreeSet<String>> {
    let w = (2..p).find(|&g| (1..=n).find(|&e| (0..e).fold(1, |acc, _| acc * g % p) == 1) == Some(n)).unwrap();
    let pow = |e: u64| (0..e).fold(1u64, |acc, _| acc * w % p);
    let mut lines: Vec<(String, [u64; 3])> = Vec::new();
    for a in 0..n {
        // x - w^a y = 0, etc.
        lines.push((format!("A{a}"), [1, (p - pow(a)) % p, 0]));
        lines.push((format!("B{a}"), [0, 1, (p - pow(a)) % p]));
        lines.push((format!("C{a}"), [(p - pow(a)) % p, 0, 1]));
    }
    projective_points(p)
        .iter()
        .map(|pt| {
            lines
                .iter()
                .filter(|(_, l)| (l[0] * pt[0] + l[1] * pt[1] + l[2] * pt[2]) % p == 0)
                .map(|(id, _)| id.clone())
                .collect::<BTreeSet<String>>()
        })
        .filter(|s| s.len() >= 2)
        .collect()
}

fn point_sets(c: &OrbifoldConfig) -> BTreeSet<BTreeSet<String>> {
    c.points.iter().map(|p| p.branches().into_iter().collect()).collect()
}

#[test]
fn ceva_matches_finite_field_incidences() {
    for (p, n) in [(7, 3), (13, 2), (13, 3), (13, 4)] {
        let c = ceva(n as u32, &[Fin(2)]);
        assert_eq!(point_sets(&c), ceva_over(p, n), "ceva({n}) over F_{p}");
        assert!(c.bezout_defects().is_empty());
    }
    let c3 = ceva(3, &[Fin(2)]);
    assert_eq!(c3.points.iter().filter(|p| p.branch_total() == 3).count(), 12);
}

#[test]
fn complete_quadrilateral_shape() {
    let c = complete_quadrilateral(&[Fin(2); 6]);
    let mut by_type: BTreeMap<LocalType, usize> = BTreeMap::new();
    for p in &c.points {
        *by_type.entry(p.local_type).or_default() += 1;
    }
    assert_eq!(by_type, BTreeMap::from([(LocalType::NODE, 3), (LocalType::TRIPLE, 4)]));
    assert!(c.bezout_defects().is_empty());
}

#[test]
fn general_lines_meet_in_nodes() {
    let c = general_lines(&[Fin(3); 5]);
    assert_eq!(c.points.len(), 10);
    assert!(c.points.iter().all(|p| p.local_type == LocalType::NODE));
    assert!(c.bezout_defects().is_empty());
}

#[test]
fn presets_are_bezout_consistent() {
    for (name, params) in [
        ("six_general_lines", vec![Fin(6), Fin(6), Fin(6), Fin(2), Fin(1), Fin(1)]),
        ("complete_quadrilateral", vec![Fin(2)]),
        ("ceva(3)", vec![Fin(3)]),
        ("C2_family", vec![Fin(4), Fin(4), Fin(4), Fin(4), Fin(2), Fin(2), Fin(2)]),
    ] {
        let c = build_preset(name, &params).unwrap();
        assert!(c.bezout_defects().is_empty(), "{name}: {:?}", c.bezout_defects());
    }
}

#[test]
fn weight_one_components_are_invisible() {
    let with = build_preset("six_general_lines", &[Fin(6), Fin(6), Fin(6), Fin(2), Fin(1), Fin(1)]).unwrap();
    let without = general_lines(&[Fin(6), Fin(6), Fin(6), Fin(2)]);
    assert!(iso_check(&normalize(&with), &without));
    assert_eq!(chern_pair(&with).unwrap(), chern_pair(&without).unwrap());
}

#[test]
fn text_round_trip() {
    for c in [
        build_apollonius(Fin(4), &[Fin(4); 3]),
        build_apollonius(Inf, &[Fin(2), Inf]),
        ceva(3, &[Fin(3)]),
        build_preset("C2_family", &[Fin(3), Fin(3), Fin(3), Fin(3), Fin(1), Fin(1), Fin(1), Fin(2)]).unwrap(),
    ] {
        let text = render_config(&c);
        let back = parse_config(&text).unwrap();
        assert_eq!(back, c, "{text}");
    }
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![4 => (1u64..=8).prop_map(Fin), 1 => Just(Inf)]
}

/// Reverses component order and renames every component and point.
fn relabel(c: &OrbifoldConfig) -> OrbifoldConfig {
    let rename = |id: &str| format!("r_{id}");
    let mut out = c.clone();
    out.components.reverse();
    for comp in &mut out.components {
        comp.id = rename(&comp.id);
    }
    out.points.reverse();
    for p in &mut out.points {
        p.id = rename(&p.id);
        for (id, _) in &mut p.incidences {
            *id = rename(id);
        }
    }
    out
}

proptest! {
    #[test]
    fn normalize_is_idempotent(a in weight(), bs in prop::collection::vec(weight(), 0..5)) {
        let once = normalize(&build_apollonius(a, &bs));
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn iso_check_ignores_labels(ws in prop::collection::vec(weight(), 6)) {
        let c = complete_quadrilateral(&[ws[0], ws[1], ws[2], ws[3], ws[4], ws[5]]);
        let r = relabel(&c);
        prop_assert!(iso_check(&c, &r));
        prop_assert_eq!(canonical_form(&c), canonical_form(&r));
    }

    #[test]
    fn iso_check_sees_weights(a in 2u64..8, b in 2u64..8) {
        let x = build_apollonius(Fin(a), &[Fin(b), Fin(b + 1)]);
        let y = build_apollonius(Fin(a), &[Fin(b + 1), Fin(b)]);
        let z = build_apollonius(Fin(a + 1), &[Fin(b), Fin(b + 1)]);
        prop_assert!(iso_check(&x, &y));
        prop_assert!(!iso_check(&x, &z));
    }
}
