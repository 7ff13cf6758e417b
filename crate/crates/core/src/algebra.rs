//! The disgroup and module structure on tuples: `a ↔ b`, scalar
//! multiplication, the swap automorphisms and a law checker.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{dy, Dyadic};
use crate::space::sample::TupleSampler;
use crate::space::{NodeId, QuotPoint, Store};

/// `a ↔ b = ₍age a + age b₎((a_i ↔ b, α_i) :: (a ↔ b_j, β_j))`, with the
/// age-0 empty tuple as a two-sided identity.
pub fn dis_tuples(store: &mut Store, a: NodeId, b: NodeId) -> NodeId {
    dis_memo(store, a, b, &mut HashMap::new())
}

fn dis_memo(store: &mut Store, a: NodeId, b: NodeId, memo: &mut HashMap<(NodeId, NodeId), NodeId>) -> NodeId {
    if a == NodeId::EMPTY {
        return b;
    }
    if b == NodeId::EMPTY {
        return a;
    }
    if let Some(&r) = memo.get(&(a, b)) {
        return r;
    }
    let na = store.node(a).clone();
    let nb = store.node(b).clone();
    let mut entries = Vec::with_capacity(na.len() + nb.len());
    for (ai, alpha) in na.entries {
        entries.push((dis_memo(store, ai, b, memo), alpha));
    }
    for (bj, beta) in nb.entries {
        entries.push((dis_memo(store, a, bj, memo), beta));
    }
    let r = store
        .intern(na.age + nb.age, entries)
        .expect("predecessor ages sum to less than the total");
    memo.insert((a, b), r);
    r
}

/// `λ · a = ₍age a₎((λ · a_i, λ α_i))`.
pub fn scalar_mul(store: &mut Store, lambda: &Dyadic, a: NodeId) -> NodeId {
    scalar_memo(store, lambda, a, &mut HashMap::new())
}

fn scalar_memo(store: &mut Store, lambda: &Dyadic, a: NodeId, memo: &mut HashMap<NodeId, NodeId>) -> NodeId {
    if let Some(&r) = memo.get(&a) {
        return r;
    }
    let na = store.node(a).clone();
    let mut entries = Vec::with_capacity(na.len());
    for (ai, alpha) in na.entries {
        entries.push((scalar_memo(store, lambda, ai, memo), lambda * &alpha));
    }
    let r = store.intern(na.age, entries).expect("ages are preserved");
    memo.insert(a, r);
    r
}

pub fn dis_points(store: &mut Store, a: QuotPoint, b: QuotPoint) -> QuotPoint {
    QuotPoint::assume(dis_tuples(store, a.node(), b.node()))
}

pub fn scalar_mul_point(store: &mut Store, lambda: &Dyadic, a: QuotPoint) -> QuotPoint {
    QuotPoint::assume(scalar_mul(store, lambda, a.node()))
}

/// `x ↦ x ↔ a ↔ b`, an isometry of the space exchanging `a` and `b`.
pub fn swap_automorphism(store: &mut Store, a: QuotPoint, b: QuotPoint, x: QuotPoint) -> QuotPoint {
    let xa = dis_tuples(store, x.node(), a.node());
    QuotPoint::assume(dis_tuples(store, xa, b.node()))
}

/// Whether `(λ ↔ μ ↔ ν) · x` and `(λ·x) ↔ (μ·x) ↔ (ν·x)` are equivalent.
/// This law does not hold in general; `(2, 1, 1)` with any `x` of positive
/// norm is a counterexample.
pub fn scalar_dis_distributes(store: &mut Store, lambda: &Dyadic, mu: &Dyadic, nu: &Dyadic, x: NodeId) -> bool {
    let s = lambda.abs_diff(mu).abs_diff(nu);
    let lhs = scalar_mul(store, &s, x);
    let lx = scalar_mul(store, lambda, x);
    let mx = scalar_mul(store, mu, x);
    let nx = scalar_mul(store, nu, x);
    let lm = dis_tuples(store, lx, mx);
    let rhs = dis_tuples(store, lm, nx);
    store.distance(lhs, rhs).is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleLaw {
    DisCommutative,
    DisAssociative,
    DisIdentity,
    DisSelfZero,
    DisPermissible,
    NormIsDistance,
    TranslationInvariant,
    Scramble,
    NonExpansive,
    ScalarOne,
    ScalarZero,
    ScalarAssociative,
    ScalarDistributes,
    ScalarNorm,
    ScalarPermissible,
}

impl ModuleLaw {
    pub const ALL: [ModuleLaw; 15] = [
        ModuleLaw::DisCommutative,
        ModuleLaw::DisAssociative,
        ModuleLaw::DisIdentity,
        ModuleLaw::DisSelfZero,
        ModuleLaw::DisPermissible,
        ModuleLaw::NormIsDistance,
        ModuleLaw::TranslationInvariant,
        ModuleLaw::Scramble,
        ModuleLaw::NonExpansive,
        ModuleLaw::ScalarOne,
        ModuleLaw::ScalarZero,
        ModuleLaw::ScalarAssociative,
        ModuleLaw::ScalarDistributes,
        ModuleLaw::ScalarNorm,
        ModuleLaw::ScalarPermissible,
    ];

    /// Number of points and scalars the law quantifies over.
    pub fn arity(self) -> (usize, usize) {
        use ModuleLaw::*;
        match self {
            DisIdentity | DisSelfZero | ScalarOne | ScalarZero => (1, 0),
            DisCommutative | DisPermissible | NormIsDistance => (2, 0),
            DisAssociative | TranslationInvariant => (3, 0),
            Scramble | NonExpansive => (4, 0),
            ScalarAssociative => (1, 2),
            ScalarDistributes => (2, 1),
            ScalarNorm | ScalarPermissible => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        use ModuleLaw::*;
        match self {
            DisCommutative => "a <-> b ~ b <-> a",
            DisAssociative => "(a <-> b) <-> c ~ a <-> (b <-> c)",
            DisIdentity => "a <-> () = () <-> a = a",
            DisSelfZero => "|a <-> a| = 0",
            DisPermissible => "a <-> b is permissible",
            NormIsDistance => "|a <-> b| = d(a, b)",
            TranslationInvariant => "d(a <-> x, b <-> x) = d(a, b)",
            Scramble => "d(a <-> b, c <-> d) = d(a <-> c, b <-> d)",
            NonExpansive => "d(a <-> b, c <-> d) <= d(a, c) + d(b, d)",
            ScalarOne => "1 x ~ x",
            ScalarZero => "0 x ~ ()",
            ScalarAssociative => "m (l x) ~ (l m) x",
            ScalarDistributes => "l (x <-> y) ~ l x <-> l y",
            ScalarNorm => "|l x| = l |x|",
            ScalarPermissible => "l x is permissible",
        }
    }

    pub fn holds(self, store: &mut Store, w: &LawWitness) -> bool {
        let (np, ns) = self.arity();
        assert!(w.points.len() == np && w.scalars.len() == ns, "wrong witness shape for {self:?}");
        let p = &w.points;
        let s = &w.scalars;
        let e = NodeId::EMPTY;
        use ModuleLaw::*;
        match self {
            DisCommutative => {
                let ab = dis_tuples(store, p[0], p[1]);
                let ba = dis_tuples(store, p[1], p[0]);
                store.distance(ab, ba).is_zero()
            }
            DisAssociative => {
                let ab = dis_tuples(store, p[0], p[1]);
                let l = dis_tuples(store, ab, p[2]);
                let bc = dis_tuples(store, p[1], p[2]);
                let r = dis_tuples(store, p[0], bc);
                store.distance(l, r).is_zero()
            }
            DisIdentity => dis_tuples(store, p[0], e) == p[0] && dis_tuples(store, e, p[0]) == p[0],
            DisSelfZero => {
                let aa = dis_tuples(store, p[0], p[0]);
                store.norm(aa).is_zero()
            }
            DisPermissible => {
                let ab = dis_tuples(store, p[0], p[1]);
                store.is_permissible(ab)
            }
            NormIsDistance => {
                let ab = dis_tuples(store, p[0], p[1]);
                store.norm(ab) == store.distance(p[0], p[1])
            }
            TranslationInvariant => {
                let ax = dis_tuples(store, p[0], p[2]);
                let bx = dis_tuples(store, p[1], p[2]);
                store.distance(ax, bx) == store.distance(p[0], p[1])
            }
            Scramble => {
                let ab = dis_tuples(store, p[0], p[1]);
                let cd = dis_tuples(store, p[2], p[3]);
                let ac = dis_tuples(store, p[0], p[2]);
                let bd = dis_tuples(store, p[1], p[3]);
                store.distance(ab, cd) == store.distance(ac, bd)
            }
            NonExpansive => {
                let ab = dis_tuples(store, p[0], p[1]);
                let cd = dis_tuples(store, p[2], p[3]);
                let bound = &store.distance(p[0], p[2]) + &store.distance(p[1], p[3]);
                store.distance(ab, cd) <= bound
            }
            ScalarOne => {
                let x = scalar_mul(store, &Dyadic::one(), p[0]);
                store.distance(x, p[0]).is_zero()
            }
            ScalarZero => {
                let x = scalar_mul(store, &Dyadic::zero(), p[0]);
                store.norm(x).is_zero()
            }
            ScalarAssociative => {
                let lx = scalar_mul(store, &s[0], p[0]);
                let mlx = scalar_mul(store, &s[1], lx);
                let lm = &s[0] * &s[1];
                let lmx = scalar_mul(store, &lm, p[0]);
                store.distance(mlx, lmx).is_zero()
            }
            ScalarDistributes => {
                let xy = dis_tuples(store, p[0], p[1]);
                let l = scalar_mul(store, &s[0], xy);
                let lx = scalar_mul(store, &s[0], p[0]);
                let ly = scalar_mul(store, &s[0], p[1]);
                let r = dis_tuples(store, lx, ly);
                store.distance(l, r).is_zero()
            }
            ScalarNorm => {
                let lx = scalar_mul(store, &s[0], p[0]);
                store.norm(lx) == &s[0] * &store.norm(p[0])
            }
            ScalarPermissible => {
                let lx = scalar_mul(store, &s[0], p[0]);
                store.is_permissible(lx)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawWitness {
    pub points: Vec<NodeId>,
    pub scalars: Vec<Dyadic>,
}

#[derive(Debug, Clone)]
pub struct LawOutcome {
    pub law: ModuleLaw,
    pub checked: usize,
    pub witness: Option<LawWitness>,
}

#[derive(Debug, Clone)]
pub struct ModuleLawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl ModuleLawReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.witness.is_none())
    }
}

impl fmt::Display for ModuleLawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.witness {
                None => writeln!(f, "  pass  {:<45} ({} cases)", o.law.name(), o.checked)?,
                Some(w) => writeln!(f, "  FAIL  {:<45} witness {:?} {:?}", o.law.name(), w.points, w.scalars)?,
            }
        }
        Ok(())
    }
}

/// Scalars drawn by the law checker.
pub fn sample_scalars() -> Vec<Dyadic> {
    vec![Dyadic::zero(), dy(1, 2), dy(1, 1), Dyadic::one(), dy(3, 1), dy(2, 0), dy(3, 0)]
}

/// Checks every law on `sample_budget` random witnesses drawn from permissible
/// tuples of age at most 3 and at most 2 entries.
pub fn check_module_laws(store: &mut Store, sample_budget: usize) -> ModuleLawReport {
    check_module_laws_seeded(store, sample_budget, 0x1a_35)
}

pub fn check_module_laws_seeded(store: &mut Store, sample_budget: usize, seed: u64) -> ModuleLawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = TupleSampler::new(3, 2);
    let points: Vec<NodeId> = (0..sample_budget.clamp(8, 64)).map(|_| sampler.permissible(store, &mut rng)).collect();
    let scalars = sample_scalars();
    let mut outcomes = Vec::new();
    for law in ModuleLaw::ALL {
        let (np, ns) = law.arity();
        let mut checked = 0;
        let mut witness = None;
        for _ in 0..sample_budget {
            let w = LawWitness {
                points: (0..np).map(|_| points[rng.gen_range(0..points.len())]).collect(),
                scalars: (0..ns).map(|_| scalars[rng.gen_range(0..scalars.len())].clone()).collect(),
            };
            checked += 1;
            if !law.holds(store, &w) {
                witness = Some(w);
                break;
            }
        }
        outcomes.push(LawOutcome { law, checked, witness });
    }
    ModuleLawReport { outcomes }
}
