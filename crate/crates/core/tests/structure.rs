//! Disring instances and the disgroup/module structure on tuples.

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use urysohn::algebra::{
    check_module_laws_seeded, dis_points, scalar_dis_distributes, scalar_mul_point, swap_automorphism,
};
use urysohn::disring::{
    arrow, check_axioms, inf2, inf2_halved, leq, sup2, sup2_halved, BooleanLattice, BrokenDyadic, DisringError,
    DyadicInstance, OrderTwoGroup, RationalInstance,
};
use urysohn::space::sample::TupleSampler;
use urysohn::{Dyadic, NodeId, Store};

#[test]
fn claimed_axioms_hold() {
    let d = check_axioms(&DyadicInstance, 300);
    assert!(d.all_passed(), "{d}");
    let r = check_axioms(&RationalInstance, 300);
    assert!(r.all_passed(), "{r}");
    let b = check_axioms(&BooleanLattice, 0);
    assert!(b.exhaustive && b.all_passed(), "{b}");
    let z = check_axioms(&OrderTwoGroup, 0);
    assert!(z.exhaustive && z.all_passed(), "{z}");
}

#[test]
fn broken_instance_has_a_witness() {
    let report = check_axioms(&BrokenDyadic, 100);
    let failure = report.failures().next().expect("broken instance fails");
    let w = failure.witness.as_ref().unwrap();
    assert!(!failure.axiom.holds(&BrokenDyadic, w));
}

#[test]
fn boolean_order_and_missing_halving() {
    let b = BooleanLattice;
    for x in [true, false] {
        for y in [true, false] {
            assert!(leq(&b, &x, &y));
        }
    }
    assert_eq!(sup2(&b, &true, &false), Err(DisringError::MissingHalving("boolean")));
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #[test]
    fn lattice_shortcuts_match_halved_formulas(a in 0u64..200, b in 0u64..200, k in 0u32..4) {
        let x = Dyadic::new(a, k);
        let y = Dyadic::new(b, 2);
        let inst = DyadicInstance;
        prop_assert_eq!(sup2(&inst, &x, &y).unwrap(), sup2_halved(&inst, &x, &y).unwrap());
        prop_assert_eq!(inf2(&inst, &x, &y).unwrap(), inf2_halved(&inst, &x, &y).unwrap());
        prop_assert_eq!(sup2(&inst, &x, &y).unwrap(), x.clone().max(y.clone()));
        prop_assert_eq!(leq(&inst, &x, &y), x <= y);
        let expected = y.saturating_sub(&x);
        prop_assert_eq!(arrow(&inst, &x, &y).unwrap(), expected);
    }

    #[test]
    fn rational_lattice_matches_ordering(a in 0i64..100, b in 1i64..9, c in 0i64..100, d in 1i64..9) {
        let inst = RationalInstance;
        let (x, y) = (q(a, b), q(c, d));
        prop_assert_eq!(sup2_halved(&inst, &x, &y).unwrap(), x.clone().max(y.clone()));
        prop_assert_eq!(inf2_halved(&inst, &x, &y).unwrap(), x.clone().min(y.clone()));
    }
}

#[test]
fn module_laws_on_sampled_tuples() {
    let mut store = Store::new();
    let report = check_module_laws_seeded(&mut store, 200, 7);
    assert!(report.all_passed(), "{report}");
}

#[test]
fn refuted_distributivity_needs_positive_norm() {
    let mut store = Store::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sampler = TupleSampler::new(3, 2);
    let (two, one) = (Dyadic::from(2u32), Dyadic::one());
    for _ in 0..40 {
        let x = sampler.permissible(&mut store, &mut rng);
        let holds = scalar_dis_distributes(&mut store, &two, &one, &one, x);
        assert_eq!(holds, store.norm(x).is_zero());
    }
}

#[test]
fn swap_is_an_isometric_involution() {
    let mut store = Store::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sampler = TupleSampler::new(2, 2);
    let pts: Vec<_> = (0..8)
        .map(|_| {
            let id = sampler.permissible(&mut store, &mut rng);
            store.quot(id).unwrap()
        })
        .collect();
    let (a, b) = (pts[1], pts[2]);
    let sa = swap_automorphism(&mut store, a, b, a);
    assert!(store.quot_eq(sa, b));
    for &x in &pts {
        let sx = swap_automorphism(&mut store, a, b, x);
        let back = swap_automorphism(&mut store, a, b, sx);
        assert!(store.quot_eq(back, x));
        for &y in &pts {
            let sy = swap_automorphism(&mut store, a, b, y);
            assert_eq!(store.dist(sx, sy), store.dist(x, y));
        }
    }
    let e = store.empty_point();
    let d = dis_points(&mut store, a, e);
    assert!(store.quot_eq(d, a));
    let half = scalar_mul_point(&mut store, &Dyadic::new(1u32, 1), a);
    assert_eq!(store.norm(half.node()), store.norm(a.node()).halve());
    assert_eq!(store.age(NodeId::EMPTY), 0);
}
