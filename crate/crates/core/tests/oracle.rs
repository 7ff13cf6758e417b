//! The tuple store against a memo-free reference built on `Ratio<i64>`
//! trees, plus exhaustive checks over every small tuple.

use std::rc::Rc;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use urysohn::space::sample::TupleSampler;
use urysohn::space::{parse_encoding, EncTerm};
use urysohn::{Dyadic, NodeId, Store};

type Q = Ratio<i64>;

#[derive(Debug)]
struct Tree {
    entries: Vec<(Rc<Tree>, Q)>,
}

fn to_q(d: &Dyadic) -> Q {
    let m = d.mantissa().to_i64().expect("small mantissa");
    Q::new(m, 1i64 << d.exponent())
}

fn to_tree(store: &Store, id: NodeId) -> Rc<Tree> {
    let node = store.node(id);
    let entries = node.entries.iter().map(|(p, a)| (to_tree(store, *p), to_q(a))).collect();
    Rc::new(Tree { entries })
}

fn absdiff(a: Q, b: Q) -> Q {
    if a > b {
        a - b
    } else {
        b - a
    }
}

fn dist(a: &Tree, b: &Tree) -> Q {
    let mut best = Q::zero();
    for (ai, alpha) in &a.entries {
        best = best.max(absdiff(dist(ai, b), *alpha));
    }
    for (bj, beta) in &b.entries {
        best = best.max(absdiff(dist(a, bj), *beta));
    }
    best
}

fn permissible(a: &Tree) -> bool {
    a.entries.iter().all(|(p, _)| permissible(p))
        && a.entries.iter().all(|(ai, alpha)| {
            a.entries.iter().all(|(aj, beta)| absdiff(dist(ai, aj), *alpha) <= *beta)
        })
}

fn sample(n: usize, max_age: u32, max_len: usize, seed: u64) -> (Store, Vec<NodeId>) {
    let mut store = Store::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = TupleSampler::new(max_age, max_len);
    let ids = (0..n).map(|_| sampler.permissible(&mut store, &mut rng)).collect();
    (store, ids)
}

#[test]
fn memoized_distance_matches_reference() {
    let (mut store, ids) = sample(40, 4, 2, 11);
    let trees: Vec<_> = ids.iter().map(|&i| to_tree(&store, i)).collect();
    for (i, &a) in ids.iter().enumerate() {
        for (j, &b) in ids.iter().enumerate() {
            assert_eq!(to_q(&store.distance(a, b)), dist(&trees[i], &trees[j]), "pair {i}, {j}");
        }
    }
}

#[test]
fn norm_of_divergent_term_three() {
    let mut store = Store::new();
    let s3 = urysohn::completion::divergent_sequence(&mut store, 3);
    let tree = to_tree(&store, s3);
    let empty = Tree { entries: vec![] };
    assert_eq!(dist(&tree, &empty), Q::from_integer(1));
    assert_eq!(store.norm(s3), Dyadic::one());
}

/// Every tuple of age at most 2 with up to two entries drawn from
/// `{0, 1/2, 1}`.
fn all_small(store: &mut Store) -> Vec<NodeId> {
    let values = [Dyadic::zero(), Dyadic::new(1u32, 1), Dyadic::one()];
    let mut by_age: Vec<Vec<NodeId>> = vec![vec![store.empty()]];
    for age in 1..=2u32 {
        let preds: Vec<NodeId> = by_age.iter().flatten().copied().collect();
        let singles: Vec<(NodeId, Dyadic)> =
            preds.iter().flat_map(|&p| values.iter().map(move |v| (p, v.clone()))).collect();
        let mut layer = vec![store.intern(age, vec![]).unwrap()];
        for e in &singles {
            layer.push(store.intern(age, vec![e.clone()]).unwrap());
            for f in &singles {
                layer.push(store.intern(age, vec![e.clone(), f.clone()]).unwrap());
            }
        }
        by_age.push(layer);
    }
    by_age.into_iter().flatten().collect()
}

#[test]
fn exhaustive_small_ages() {
    let mut store = Store::new();
    let all = all_small(&mut store);
    assert!(all.len() > 1500);
    let mut permissible_count = 0;
    for &a in &all {
        let tree = to_tree(&store, a);
        let p = store.is_permissible(a);
        assert_eq!(p, permissible(&tree), "permissibility of {}", store.encode_string(a));
        assert_eq!(p, store.distance(a, a).is_zero() && hereditarily_self_zero(&mut store, a));
        let r = store.retract(a);
        assert!(store.is_permissible(r));
        assert_eq!(store.retract(r), r);
        assert_eq!(store.age(r), store.age(a));
        assert_eq!(store.node(r).len(), store.node(a).len());
        if p {
            permissible_count += 1;
            assert_eq!(r, a);
            for (ai, alpha) in store.node(a).entries.clone() {
                assert_eq!(store.distance(a, ai), alpha);
            }
        }
        assert_eq!(store.decode(&store.encode(a)).unwrap(), a);
    }
    assert!(permissible_count > 100 && permissible_count < all.len());
}

fn hereditarily_self_zero(store: &mut Store, a: NodeId) -> bool {
    let preds: Vec<NodeId> = store.node(a).entries.iter().map(|(p, _)| *p).collect();
    store.distance(a, a).is_zero() && preds.into_iter().all(|p| hereditarily_self_zero(store, p))
}

#[test]
fn encoding_examples() {
    let mut store = Store::new();
    assert_eq!(store.encode_string(store.empty()), "(0)");
    let a = store.intern(1, vec![(store.empty(), Dyadic::new(3u32, 1))]).unwrap();
    assert_eq!(store.encode_string(a), "(1, 3/2^1, 0, 1)");
    assert_eq!(
        parse_encoding("(1, 3/2^1, 0, 1)").unwrap(),
        vec![EncTerm::Age(1), EncTerm::Value(Dyadic::new(3u32, 1)), EncTerm::Age(0), EncTerm::Age(1)]
    );
    for bad in ["(1, 3/2^1, 0)", "(1, 3/2^1, 1, 1)", "(2, 1/2^0, 0, 1)", "(0, 1)", "1, 0"] {
        assert!(store.decode_str(bad).is_err(), "{bad}");
    }
}

#[test]
fn retract_example() {
    let mut store = Store::new();
    let e = store.empty();
    let a = store.intern(1, vec![(e, Dyadic::one()), (e, Dyadic::from(3u32))]).unwrap();
    assert!(!store.is_permissible(a));
    assert_eq!(store.distance(a, a), Dyadic::from(2u32));
    let r = store.retract(a);
    let expected = store.intern(1, vec![(e, Dyadic::from(3u32)), (e, Dyadic::from(3u32))]).unwrap();
    assert_eq!(r, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entries_are_at_their_distances(seed in any::<u64>()) {
        let (mut store, ids) = sample(30, 4, 3, seed);
        for a in ids {
            for (ai, alpha) in store.node(a).entries.clone() {
                prop_assert_eq!(store.distance(a, ai), alpha);
            }
        }
    }

    #[test]
    fn triangle_and_symmetry(seed in any::<u64>()) {
        let (mut store, ids) = sample(12, 3, 2, seed);
        for &a in &ids {
            for &b in &ids {
                let ab = store.distance(a, b);
                prop_assert_eq!(&ab, &store.distance(b, a));
                for &c in &ids {
                    prop_assert!(store.distance(a, c) <= &ab + &store.distance(b, c));
                }
            }
        }
    }

    #[test]
    fn retract_is_idempotent_on_arbitrary_tuples(seed in any::<u64>()) {
        let mut store = Store::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sampler = TupleSampler::new(3, 3);
        for _ in 0..10 {
            sampler.permissible(&mut store, &mut rng);
        }
        for _ in 0..10 {
            let a = sampler.arbitrary(&mut store, &mut rng);
            let r = store.retract(a);
            prop_assert!(store.is_permissible(r));
            prop_assert_eq!(store.retract(r), r);
        }
    }

    #[test]
    fn dyadic_text_roundtrip(m in 0u64..1_000_000, k in 0u32..40) {
        let d = Dyadic::new(m, k);
        prop_assert_eq!(d.to_string().parse::<Dyadic>().unwrap(), d.clone());
        let back = Q::new(i64::try_from(m).unwrap(), 1i64 << k);
        prop_assert_eq!(to_q(&d), back);
        prop_assert!(d.exponent() == 0 || d.mantissa().bit(0));
    }
}
