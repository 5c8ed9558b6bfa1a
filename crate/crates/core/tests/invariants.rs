use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use orbicover::configuration::{build_apollonius, LocalType, OrbifoldConfig};
use orbicover::invariants::{
    apollonius_cherns, chern_pair, classify, enumerate_cuspidal, local_order, splitting_identities, triangle_class,
    ClassTag, CuspidalRow,
};
use orbicover::numerics::Weight::{self, Fin, Inf};
use orbicover::numerics::XRat;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Orders of the finite rotation triangle groups `(p, q, r)`.
fn triangle_group_order(p: u64, q: u64, r: u64) -> Option<u64> {
    let mut t = [p, q, r];
    t.sort();
    match t {
        [2, 2, n] => Some(2 * n),
        [2, 3, 3] => Some(12),
        [2, 3, 4] => Some(24),
        [2, 3, 5] => Some(60),
        _ => None,
    }
}

#[test]
fn triple_point_order_is_square_of_triangle_group() {
    for p in 2..=7 {
        for q in p..=7 {
            for r in q..=7 {
                let got = local_order(LocalType::TRIPLE, &[Fin(p), Fin(q), Fin(r)]);
                match triangle_group_order(p, q, r) {
                    Some(t) => assert_eq!(got.unwrap(), XRat::int((t * t) as i64), "({p},{q},{r})"),
                    None => assert!(got.map_or(true, |o| o.is_inf()), "({p},{q},{r})"),
                }
            }
        }
    }
}

#[test]
fn node_order_is_product() {
    for a in 1..=9 {
        for b in 1..=9 {
            assert_eq!(local_order(LocalType::NODE, &[Fin(a), Fin(b)]).unwrap(), XRat::int((a * b) as i64));
        }
    }
    assert!(local_order(LocalType::NODE, &[Fin(2), Inf]).unwrap().is_inf());
}

#[test]
fn local_order_rejects_wrong_arity() {
    assert!(local_order(LocalType::TRIPLE, &[Fin(2), Fin(2)]).is_err());
}

#[test]
fn plane_without_locus() {
    let empty = OrbifoldConfig { components: vec![], points: vec![], label: "P2".into() };
    let pair = chern_pair(&empty).unwrap();
    assert_eq!((pair.c1sq().clone(), pair.euler().clone()), (int(9), int(3)));
    assert_eq!(classify(&empty).unwrap().tag, ClassTag::BallCandidate);
}

#[test]
fn cuspidal_small_degrees() {
    let low = enumerate_cuspidal(5, &[2]);
    assert!(low.iter().all(|r| r.kappa == 0), "{low:?}");
    let six = enumerate_cuspidal(6, &[2, 3, 4, 5, 6]);
    assert!(six.contains(&CuspidalRow { d: 6, kappa: 9, nu: 0, b: 2, g: 1 }), "{six:?}");
    for r in &six {
        let top = (r.d - 1) * (r.d - 2) / 2;
        assert_eq!(r.g + r.kappa + r.nu, top);
    }
}

#[test]
fn triangle_shapes() {
    assert_eq!(triangle_class(&[Fin(2), Fin(3), Fin(5)]).unwrap().name(), "Spherical");
    assert_eq!(triangle_class(&[Fin(2), Fin(3), Fin(6)]).unwrap().name(), "Euclidean");
    assert_eq!(triangle_class(&[Fin(2), Fin(3), Fin(7)]).unwrap().name(), "Hyperbolic");
    assert_eq!(triangle_class(&[Inf, Inf]).unwrap().name(), "Euclidean");
    assert!(triangle_class(&[Fin(2), Fin(3)]).is_err());
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![5 => (2u64..=12).prop_map(Fin), 1 => Just(Inf)]
}

/// `(a; b_1..b_n)` with every tacnode admissible.
fn admissible() -> impl Strategy<Value = (Weight, Vec<Weight>)> {
    (weight(), prop::collection::vec(weight(), 0..=6)).prop_filter("tacnode", |(a, bs)| {
        let half = BigRational::new(1.into(), 2.into());
        bs.iter().all(|b| a.reciprocal() + b.reciprocal() >= half)
    })
}

proptest! {
    #[test]
    fn apollonius_invariant_under_permutation((a, bs) in admissible(), seed in any::<u64>()) {
        let mut shuffled = bs.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, (seed as usize / 7) % n);
        }
        prop_assert_eq!(apollonius_cherns(a, &bs).unwrap(), apollonius_cherns(a, &shuffled).unwrap());
    }

    #[test]
    fn closed_form_agrees_with_configuration((a, bs) in admissible()) {
        prop_assert_eq!(apollonius_cherns(a, &bs).unwrap(), chern_pair(&build_apollonius(a, &bs)).unwrap());
    }

    #[test]
    fn splitting_formulas_hold((a, bs) in admissible()) {
        let p = apollonius_cherns(a, &bs).unwrap();
        let (first, second) = splitting_identities(a, &bs);
        prop_assert_eq!(int(2) * (int(2) * p.euler() - p.c1sq()), first);
        prop_assert_eq!(int(8) * (int(3) * p.euler() - p.c1sq()), second);
    }
}
