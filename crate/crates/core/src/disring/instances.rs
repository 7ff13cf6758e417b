use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{Claims, Instance};
use crate::dyadic::{dy, Dyadic};

/// Nonnegative dyadic rationals with `↔ = |x − y|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicInstance;

/// Nonnegative rationals with `↔ = |x − y|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalInstance;

/// The two-element Boolean lattice: `+` and `↔` are both `⇔`, zero is `⊤`,
/// multiplication is `∨` and the unit is `⊥`. `true` stands for `⊤`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BooleanLattice;

/// The group of order two, where `↔` coincides with `+`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrderTwoGroup;

/// Dyadics with `↔` replaced by `+`. Fails the axioms on purpose.
#[derive(Debug, Clone, Copy, Default)]
pub struct BrokenDyadic;

fn sample_dyadic(rng: &mut dyn RngCore) -> Dyadic {
    let m: u64 = if rng.gen_bool(0.8) { rng.gen_range(0..16) } else { rng.gen_range(0..1 << 16) };
    let k: u32 = rng.gen_range(0..5);
    dy(m, k)
}

fn dyadic_seeds() -> Vec<Dyadic> {
    vec![Dyadic::zero(), dy(1, 1), Dyadic::one(), dy(3, 1), dy(2, 0)]
}

impl Instance for DyadicInstance {
    type Elem = Dyadic;

    fn name(&self) -> &'static str {
        "dyadic"
    }

    fn claims(&self) -> Claims {
        Claims { halved: true, unital: true, associative_dis: false }
    }

    fn zero(&self) -> Dyadic {
        Dyadic::zero()
    }

    fn add(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a + b
    }

    fn dis(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.abs_diff(b)
    }

    fn one(&self) -> Option<Dyadic> {
        Some(Dyadic::one())
    }

    fn mul(&self, a: &Dyadic, b: &Dyadic) -> Option<Dyadic> {
        Some(a * b)
    }

    fn halve(&self, a: &Dyadic) -> Option<Dyadic> {
        Some(a.halve())
    }

    fn total_cmp(&self, a: &Dyadic, b: &Dyadic) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn seeds(&self) -> Vec<Dyadic> {
        dyadic_seeds()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Dyadic {
        sample_dyadic(rng)
    }
}

impl Instance for RationalInstance {
    type Elem = BigRational;

    fn name(&self) -> &'static str {
        "rational"
    }

    fn claims(&self) -> Claims {
        Claims { halved: true, unital: true, associative_dis: false }
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn dis(&self, a: &BigRational, b: &BigRational) -> BigRational {
        (a - b).abs()
    }

    fn one(&self) -> Option<BigRational> {
        Some(BigRational::one())
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        Some(a * b)
    }

    fn halve(&self, a: &BigRational) -> Option<BigRational> {
        Some(a / BigRational::from_integer(BigInt::from(2)))
    }

    fn total_cmp(&self, a: &BigRational, b: &BigRational) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn seeds(&self) -> Vec<BigRational> {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        vec![r(0, 1), r(1, 3), r(1, 2), r(1, 1), r(5, 3)]
    }

    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        let n: i64 = rng.gen_range(0..40);
        let d: i64 = rng.gen_range(1..13);
        BigRational::new(n.into(), d.into())
    }
}

impl Instance for BooleanLattice {
    type Elem = bool;

    fn name(&self) -> &'static str {
        "boolean"
    }

    fn claims(&self) -> Claims {
        Claims { halved: false, unital: true, associative_dis: true }
    }

    fn zero(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        a == b
    }

    fn dis(&self, a: &bool, b: &bool) -> bool {
        a == b
    }

    fn one(&self) -> Option<bool> {
        Some(false)
    }

    fn mul(&self, a: &bool, b: &bool) -> Option<bool> {
        Some(*a || *b)
    }

    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![true, false])
    }

    fn seeds(&self) -> Vec<bool> {
        vec![true, false]
    }

    fn sample(&self, rng: &mut dyn RngCore) -> bool {
        rng.gen()
    }
}

impl Instance for OrderTwoGroup {
    type Elem = u8;

    fn name(&self) -> &'static str {
        "z2"
    }

    fn claims(&self) -> Claims {
        Claims { halved: false, unital: false, associative_dis: true }
    }

    fn zero(&self) -> u8 {
        0
    }

    fn add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn dis(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn elements(&self) -> Option<Vec<u8>> {
        Some(vec![0, 1])
    }

    fn seeds(&self) -> Vec<u8> {
        vec![0, 1]
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u8 {
        rng.gen_range(0..2)
    }
}

impl Instance for BrokenDyadic {
    type Elem = Dyadic;

    fn name(&self) -> &'static str {
        "broken"
    }

    fn claims(&self) -> Claims {
        Claims { halved: true, unital: true, associative_dis: false }
    }

    fn zero(&self) -> Dyadic {
        Dyadic::zero()
    }

    fn add(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a + b
    }

    fn dis(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a + b
    }

    fn one(&self) -> Option<Dyadic> {
        Some(Dyadic::one())
    }

    fn mul(&self, a: &Dyadic, b: &Dyadic) -> Option<Dyadic> {
        Some(a * b)
    }

    fn halve(&self, a: &Dyadic) -> Option<Dyadic> {
        Some(a.halve())
    }

    fn total_cmp(&self, a: &Dyadic, b: &Dyadic) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn seeds(&self) -> Vec<Dyadic> {
        dyadic_seeds()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Dyadic {
        sample_dyadic(rng)
    }
}
