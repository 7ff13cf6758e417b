//! Random tuple generation for property checks.

use rand::{Rng, RngCore};

use super::{NodeId, Store};
use crate::dyadic::{dy, Dyadic};

/// Grows a pool of tuples, each new tuple drawing its predecessors from the
/// pool. Permissible tuples are built by choosing every distance inside the
/// interval left open by the earlier entries.
#[derive(Debug, Clone)]
pub struct TupleSampler {
    pool: Vec<NodeId>,
    max_age: u32,
    max_len: usize,
}

impl TupleSampler {
    pub fn new(max_age: u32, max_len: usize) -> Self {
        assert!(max_age >= 1, "tuples with entries need age at least 1");
        TupleSampler { pool: vec![NodeId::EMPTY], max_age, max_len }
    }

    /// Permissible tuples generated so far, including the empty tuple.
    pub fn pool(&self) -> &[NodeId] {
        &self.pool
    }

    fn pick_shape(&self, store: &Store, rng: &mut dyn RngCore) -> (u32, Vec<NodeId>) {
        let age = rng.gen_range(1..=self.max_age);
        let candidates: Vec<NodeId> = self.pool.iter().copied().filter(|&p| store.age(p) < age).collect();
        let len = rng.gen_range(0..=self.max_len);
        let preds = (0..len).map(|_| candidates[rng.gen_range(0..candidates.len())]).collect();
        (age, preds)
    }

    pub fn permissible(&mut self, store: &mut Store, rng: &mut dyn RngCore) -> NodeId {
        let (age, preds) = self.pick_shape(store, rng);
        let mut alphas: Vec<Dyadic> = Vec::with_capacity(preds.len());
        for j in 0..preds.len() {
            let alpha = if j == 0 {
                random_distance(rng)
            } else {
                let mut lo = Dyadic::zero();
                let mut hi: Option<Dyadic> = None;
                for i in 0..j {
                    let d = store.distance(preds[i], preds[j]);
                    lo = lo.max(d.abs_diff(&alphas[i]));
                    let up = &d + &alphas[i];
                    hi = Some(match hi {
                        Some(h) => h.min(up),
                        None => up,
                    });
                }
                let hi = hi.expect("j > 0");
                let span = hi.checked_sub(&lo).expect("admissible interval is nonempty");
                let quarter: u64 = rng.gen_range(0..=4);
                &lo + &(&span * &dy(quarter, 2))
            };
            alphas.push(alpha);
        }
        let entries = preds.into_iter().zip(alphas).collect();
        let id = store.intern(age, entries).expect("predecessor ages are below the chosen age");
        debug_assert!(store.is_permissible(id));
        self.pool.push(id);
        id
    }

    /// A tuple over the pool with unconstrained distances; usually not
    /// permissible. It is not added to the pool.
    pub fn arbitrary(&mut self, store: &mut Store, rng: &mut dyn RngCore) -> NodeId {
        let (age, preds) = self.pick_shape(store, rng);
        let entries = preds.into_iter().map(|p| (p, random_distance(rng))).collect();
        store.intern(age, entries).expect("predecessor ages are below the chosen age")
    }
}

/// A small dyadic `m/2^k` with `m ≤ 8`, `k ≤ 2`.
pub fn random_distance(rng: &mut dyn RngCore) -> Dyadic {
    dy(rng.gen_range(0..=8), rng.gen_range(0..=2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_tuples_are_permissible() {
        let mut store = Store::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut sampler = TupleSampler::new(4, 3);
        for _ in 0..200 {
            let id = sampler.permissible(&mut store, &mut rng);
            assert!(store.is_permissible(id));
            assert!(store.age(id) <= 4);
        }
        let impermissible = (0..200).filter(|_| {
            let id = sampler.arbitrary(&mut store, &mut rng);
            !store.is_permissible(id)
        });
        assert!(impermissible.count() > 0);
    }
}
