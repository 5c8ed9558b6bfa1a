mod support;

use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use orbicover::configuration::{general_lines, normalize};
use orbicover::groups::{
    abelianize, build_a2, build_apollonius_pi1, build_modular, coordinate_triangle, line_arrangement_group,
    parse_presentation, smith_diagonal, todd_coxeter, verify_orders, Presentation, Word, DEFAULT_MAX_COSETS,
};
use orbicover::invariants::chern_pair;
use orbicover::numerics::Weight::{self, Fin};

/// `<a, b | a^p, b^q, (ab)^r>`
fn von_dyck(p: i64, q: i64, r: i64) -> Presentation {
    let mut g = Presentation::new(&["a", "b"]);
    let (a, b) = (Word::gen(0), Word::gen(1));
    g.relate(a.pow(p));
    g.relate(b.pow(q));
    g.relate(a.mul(&b).pow(r));
    g
}

#[test]
fn classical_orders() {
    for n in 2..=9 {
        assert_eq!(todd_coxeter(&von_dyck(2, 2, n), 10_000).unwrap().order(), 2 * n as usize);
    }
    assert_eq!(todd_coxeter(&von_dyck(2, 3, 3), 10_000).unwrap().order(), 12);
    assert_eq!(todd_coxeter(&von_dyck(2, 3, 4), 10_000).unwrap().order(), 24);
    assert_eq!(todd_coxeter(&von_dyck(2, 3, 5), 10_000).unwrap().order(), 60);
    // Quaternion group.
    let q8 = parse_presentation("gens: i j\nrel: i^4\nrel: i^2 = j^2\nrel: j' i j = i'").unwrap();
    assert_eq!(todd_coxeter(&q8, 1000).unwrap().order(), 8);
}

#[test]
fn coset_tables_are_permutation_actions() {
    for p in [build_a2(Fin(2), Fin(3)), build_modular(Fin(3), Fin(2), Fin(2), Fin(2)), von_dyck(2, 3, 5)] {
        assert!(todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap().is_permutation_action());
    }
}

#[test]
fn free_group_overflows() {
    let free = Presentation::new(&["a", "b"]);
    assert!(todd_coxeter(&free, 500).is_err());
}

#[test]
fn closed_form_orders() {
    assert!(verify_orders(5, DEFAULT_MAX_COSETS).all_pass());
}

#[test]
fn smith_examples() {
    assert_eq!(smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    assert_eq!(smith_diagonal(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
}

/// `(Z/w_1 + ... + Z/w_n) / <(1, ..., 1)>`, whose order is `prod w / lcm w`.
fn arrangement_order(ws: &[u64]) -> u128 {
    let lcm = ws.iter().fold(1u64, |l, &w| l.lcm(&w));
    ws.iter().map(|&w| w as u128).product::<u128>() / lcm as u128
}

#[test]
fn coordinate_triangle_is_two_cyclic_factors() {
    for m in 2..=12 {
        let ab = abelianize(&coordinate_triangle(m));
        assert_eq!((ab.rank, ab.torsion.clone()), (0, vec![m, m]));
        assert_eq!(ab.order(), Some(arrangement_order(&[m, m, m])));
    }
}

#[test]
fn apollonius_abelianization_is_free() {
    for n in 1..=8 {
        let ab = abelianize(&build_apollonius_pi1(n));
        assert_eq!((ab.rank, ab.torsion.len()), (n, 0), "n = {n}");
    }
}

/// The universal abelian cover of six weighted general lines is a K3
/// orbifold, so degree times orbifold Euler number is 24.
#[test]
fn six_line_k3_covers() {
    for row in support::k3_rows() {
        let ws: Vec<u64> = row.weights.iter().map(|w| w.finite().unwrap()).collect();
        let mut six = row.weights.clone();
        six.resize(6, Fin(1));
        let ab = abelianize(&line_arrangement_group(&row.weights));
        assert_eq!(ab.order(), Some(row.degree as u128), "{}", row.name);
        assert_eq!(arrangement_order(&ws), row.degree as u128, "{}", row.name);
        let pair = chern_pair(&normalize(&general_lines(&six))).unwrap();
        assert_eq!(pair.euler(), &row.euler, "{}", row.name);
        assert_eq!(pair.c1sq(), &row.c1sq, "{}", row.name);
        assert_eq!(pair.euler() * BigRational::from_integer((row.degree as i64).into()), BigRational::from_integer(24.into()));
    }
}

#[test]
fn display_round_trip() {
    for p in [build_apollonius_pi1(3), build_a2(Fin(4), Fin(3)), build_modular(Fin(3), Fin(2), Fin(3), Fin(4))] {
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn parse_errors_name_the_line() {
    let err = parse_presentation("gens: a b\nrel: a^2\nrel: a^").unwrap_err();
    assert!(err.to_string().starts_with("line 3"), "{err}");
    let err = parse_presentation("gens: a b\nrel: c").unwrap_err();
    assert!(err.to_string().contains("`c`"), "{err}");
}

/// Renames generators by a permutation and rotates every relator.
fn scramble(p: &Presentation, perm: &[usize], shift: usize) -> Presentation {
    let mut names = vec![String::new(); perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        names[j] = p.generators[i].clone();
    }
    let relators = p
        .relators
        .iter()
        .map(|w| Word::from_syllables(w.syllables().iter().map(|&(g, e)| (perm[g], e))).rotate(shift))
        .collect();
    Presentation { generators: names, relators }
}

fn small() -> impl Strategy<Value = Presentation> {
    let w = |lo: u64, hi: u64| (lo..=hi).prop_map(Fin);
    prop_oneof![
        w(2, 6).prop_map(|b| build_a2(Fin(2), b)),
        w(2, 4).prop_map(|a| build_modular(a, Fin(2), Fin(2), Fin(2))),
        (2i64..=3, 3i64..=5).prop_map(|(q, r)| von_dyck(2, q, r)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn order_ignores_generator_names_and_rotation(p in small(), seed in any::<u64>(), shift in 0usize..4) {
        let n = p.generators.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed as usize % n);
        let q = scramble(&p, &perm, shift);
        let a = todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap().order();
        let b = todd_coxeter(&q, DEFAULT_MAX_COSETS).unwrap().order();
        prop_assert_eq!(a, b);
        prop_assert_eq!(abelianize(&p), abelianize(&q));
    }

    #[test]
    fn abelian_arrangement_orders(ws in prop::collection::vec(2u64..=6, 3..=5)) {
        let weights: Vec<Weight> = ws.iter().map(|&w| Fin(w)).collect();
        let p = line_arrangement_group(&weights);
        let want = arrangement_order(&ws);
        prop_assert_eq!(abelianize(&p).order(), Some(want));
        if want <= 2000 {
            prop_assert_eq!(todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap().order() as u128, want);
        }
    }
}
