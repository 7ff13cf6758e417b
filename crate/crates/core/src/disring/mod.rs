//! Disgroups, halved disgroups and disrings.
//!
//! An instance is a carrier with `+`, `0` and the internal distance `↔`,
//! optionally a multiplication with unit and a halving map. The derived
//! order, the lattice operations and the arrow are generic over instances.

mod axioms;
mod instances;

pub use axioms::{check_axioms, check_axioms_seeded, Axiom, AxiomGroup, AxiomOutcome, AxiomReport};
pub use instances::{BooleanLattice, BrokenDyadic, DyadicInstance, OrderTwoGroup, RationalInstance};

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DisringError {
    #[error("instance `{0}` has no halving map and no total order")]
    MissingHalving(&'static str),
}

/// Which optional axiom groups an instance claims to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Claims {
    pub halved: bool,
    pub unital: bool,
    pub associative_dis: bool,
}

pub trait Instance {
    type Elem: Clone + Debug + Display + PartialEq;

    fn name(&self) -> &'static str;
    fn claims(&self) -> Claims;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn dis(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Option<Self::Elem> {
        None
    }

    fn mul(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn halve(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Instance equality. Defaults to structural equality.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    /// A total order agreeing with the derived order, when the carrier has one.
    fn total_cmp(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Ordering> {
        None
    }

    /// The whole carrier, for finite instances.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Small elements that every sampled check starts with.
    fn seeds(&self) -> Vec<Self::Elem>;

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
}

pub fn dis<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> I::Elem {
    inst.dis(a, b)
}

/// The derived order: `a ≤ b` iff `a + (a ↔ b) = b`.
pub fn leq<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> bool {
    inst.eq(&inst.add(a, &inst.dis(a, b)), b)
}

pub fn halve<I: Instance>(inst: &I, a: &I::Elem) -> Result<I::Elem, DisringError> {
    inst.halve(a).ok_or(DisringError::MissingHalving(inst.name()))
}

/// `(a + b + a ↔ b) / 2`.
pub fn sup2_halved<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Result<I::Elem, DisringError> {
    let s = inst.add(&inst.add(a, b), &inst.dis(a, b));
    halve(inst, &s)
}

/// `((a + b) ↔ (a ↔ b)) / 2`.
pub fn inf2_halved<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Result<I::Elem, DisringError> {
    let s = inst.dis(&inst.add(a, b), &inst.dis(a, b));
    halve(inst, &s)
}

/// Least upper bound; `max` when the instance is totally ordered.
pub fn sup2<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Result<I::Elem, DisringError> {
    match inst.total_cmp(a, b) {
        Some(Ordering::Less) => Ok(b.clone()),
        Some(_) => Ok(a.clone()),
        None => sup2_halved(inst, a, b),
    }
}

/// Greatest lower bound; `min` when the instance is totally ordered.
pub fn inf2<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Result<I::Elem, DisringError> {
    match inst.total_cmp(a, b) {
        Some(Ordering::Less) => Ok(a.clone()),
        Some(_) => Ok(b.clone()),
        None => inf2_halved(inst, a, b),
    }
}

/// `a → b := sup{a, b} ↔ a`.
pub fn arrow<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Result<I::Elem, DisringError> {
    Ok(inst.dis(&sup2(inst, a, b)?, a))
}
