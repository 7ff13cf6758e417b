//! The complete Urysohn space: points as rapid-Cauchy streams over the
//! countable space, distances as interval refinements, one-point extension
//! with real-valued constraints, the contraction homotopy and extension of
//! isometries from totally bounded subsets.

mod real;
mod totally_bounded;
mod upoint;

use std::collections::HashMap;

pub use real::ApproxReal;
pub use totally_bounded::{extend_totally_bounded, TotallyBoundedExtension};
pub use upoint::UPoint;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::extend::{ext_d, ExtendError};
use crate::interval::Interval;
use crate::space::{NodeId, QuotPoint, SpaceError, Store};

/// Anchor points of the completion with real prescribed distances.
pub type RealConstraintList = [(UPoint, ApproxReal)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("constraints are not admissible (refuted at precision {precision})")]
    AdmissibilityRefuted { precision: u32 },
    #[error("modulus violation: {0}")]
    ModulusViolation(String),
    #[error("no image given for enumerated point {label}")]
    MissingImage { label: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("approximation contract violated: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Enclosure of `d(x, y)` of width at most `2^-n`, from the approximants at
/// precision `n + 2`.
pub fn dist_upoint(store: &mut Store, x: &UPoint, y: &UPoint, n: u32) -> Result<Interval, CompletionError> {
    if let (Some(p), Some(q)) = (x.as_constant(), y.as_constant()) {
        return Ok(Interval::point(store.dist(p, q)));
    }
    let k = n + 2;
    let p = x.query(store, k)?;
    let q = y.query(store, k)?;
    Ok(Interval::around(&store.dist(p, q), &Dyadic::pow2_neg(n + 1)))
}

/// `s_n = ₙ((s_k, 2^-k))_{k<n}`, a rapid-Cauchy sequence with no limit in
/// the countable space.
pub fn divergent_sequence(store: &mut Store, n: u32) -> NodeId {
    let mut s = vec![store.empty()];
    for m in 1..=n {
        let entries = (0..m).map(|k| (s[k as usize], Dyadic::pow2_neg(k))).collect();
        s.push(store.intern(m, entries).expect("earlier terms are younger"));
    }
    s[n as usize]
}

/// The stream `n ↦ [s_n]`.
pub fn divergent_point() -> UPoint {
    UPoint::from_fn(|store, n| {
        let s = divergent_sequence(store, n);
        Ok(store.quot(s)?)
    })
}

fn refute_at(store: &mut Store, c: &RealConstraintList, p: u32) -> Result<(), CompletionError> {
    let omegas = c.iter().map(|(_, w)| w.query(store, p)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let d = dist_upoint(store, &c[i].0, &c[j].0, p)?;
            if d.dis(&omegas[i]).lo > omegas[j].hi || d.dis(&omegas[j]).lo > omegas[i].hi {
                return Err(CompletionError::AdmissibilityRefuted { precision: p });
            }
        }
    }
    Ok(())
}

fn precision_for(unit: &Dyadic) -> u32 {
    unit.floor_precision().expect("positive").max(0) as u32
}

/// A permissible tuple `((a_i, α_i))` with `d(x_i, [a_i]) ≤ ε` and
/// `|ω_i − α_i| ≤ ε`.
///
/// With `λ` the largest power-of-two fraction of `ε` below `ε / 4l`, each
/// `α_i` is an upper enclosure bound of `ω_i` plus `7λ/2`, and the `a_i`
/// are built one at a time around approximants `a'_i` of the `x_i` so that
/// `d(a_i, a_j) = d(a'_i, a'_j) + 3λ`.
pub fn approximate_constraints(
    store: &mut Store,
    c: &RealConstraintList,
    epsilon: &Dyadic,
) -> Result<NodeId, CompletionError> {
    if epsilon.is_zero() {
        return Err(CompletionError::InvalidParameter("epsilon must be positive".into()));
    }
    let l = c.len();
    if l == 0 {
        return Ok(store.empty());
    }
    let shift = Dyadic::from(4 * l as u64).ceil_log2().expect("positive");
    let lambda = epsilon.mul_pow2(-shift);
    let p = precision_for(&lambda.mul_pow2(-2));
    refute_at(store, c, p)?;
    let q = precision_for(&lambda);
    let gap = &lambda.mul_pow2(-1) * &Dyadic::from(7u32);
    let mut alphas = Vec::with_capacity(l);
    let mut approx = Vec::with_capacity(l);
    for (x, omega) in c {
        alphas.push(&omega.query(store, p)?.hi + &gap);
        approx.push(x.query(store, q)?.node());
    }
    let three = &lambda * &Dyadic::from(3u32);
    let mut a: Vec<NodeId> = Vec::with_capacity(l);
    for k in 0..l {
        let d_k: Vec<Dyadic> = (0..k).map(|i| &store.distance(approx[k], approx[i]) + &three).collect();
        let mut entries: Vec<(NodeId, Dyadic)> = (0..k).map(|i| (a[i], d_k[i].clone())).collect();
        let mut last = Dyadic::zero();
        for j in 0..k {
            last = last.max(store.distance(a[j], approx[k]).abs_diff(&d_k[j]));
        }
        entries.push((approx[k], last));
        let ak = store.intern_next(entries)?;
        debug_assert!(store.is_permissible(ak));
        a.push(ak);
    }
    let result = store.intern_next(a.into_iter().zip(alphas).collect())?;
    if !store.is_permissible(result) {
        return Err(CompletionError::AdmissibilityRefuted { precision: p });
    }
    Ok(result)
}

fn exact_constraints(c: &RealConstraintList) -> Option<Vec<(QuotPoint, Dyadic)>> {
    c.iter().map(|(x, w)| Some((x.as_constant()?, w.as_exact()?.clone()))).collect()
}

/// The point at distance `ω_k` from every `x_k`. On exact input this is the
/// constant stream at [`ext_d`]; otherwise see
/// [`ext_complete_approximating`].
pub fn ext_complete(store: &mut Store, c: &RealConstraintList) -> Result<UPoint, CompletionError> {
    match exact_constraints(c) {
        Some(exact) => Ok(UPoint::constant(ext_d(store, &exact)?)),
        None => ext_complete_approximating(store, c),
    }
}

/// The stream whose `n`th approximant is
/// `approximate_constraints(c, 2^-(n+2))`, used even when the input is
/// exact.
pub fn ext_complete_approximating(store: &mut Store, c: &RealConstraintList) -> Result<UPoint, CompletionError> {
    let c = c.to_vec();
    let u = UPoint::from_fn(move |store, n| {
        let a = approximate_constraints(store, &c, &Dyadic::pow2_neg(n + 2))?;
        Ok(store.quot(a)?)
    });
    u.query(store, 0)?;
    Ok(u)
}

/// Enclosure of width at most `2^-n` of
/// `f(a) = sup({d(x_h, [a]) ↔ χ_h} ∪ {f(a_i) ↔ α_i})`, the location that
/// the extension point induces on the countable space.
pub fn fx_eval(store: &mut Store, c: &RealConstraintList, a: NodeId, n: u32) -> Result<Interval, CompletionError> {
    let mut memo = HashMap::new();
    fx_rec(store, c, a, n, &mut memo)
}

fn fx_rec(
    store: &mut Store,
    c: &RealConstraintList,
    a: NodeId,
    n: u32,
    memo: &mut HashMap<(NodeId, u32), Interval>,
) -> Result<Interval, CompletionError> {
    if let Some(i) = memo.get(&(a, n)) {
        return Ok(i.clone());
    }
    let pa = UPoint::constant(store.quot(a)?);
    let mut acc = Interval::point(Dyadic::zero());
    for (x, chi) in c {
        let d = dist_upoint(store, x, &pa, n + 1)?;
        acc = acc.max(&d.dis(&chi.query(store, n + 1)?));
    }
    let entries = store.node(a).entries.clone();
    for (ai, alpha) in entries {
        let fi = fx_rec(store, c, ai, n + 1, memo)?;
        acc = acc.max(&fi.dis(&Interval::point(alpha)));
    }
    memo.insert((a, n), acc.clone());
    Ok(acc)
}

/// `H(t, x) = ext((x, t·d(x, z)), (z, (1 − t)·d(x, z)))`, contracting the
/// space onto `z` as `t` goes from 0 to 1.
pub fn homotopy(store: &mut Store, t: &Dyadic, x: &UPoint, z: &UPoint) -> Result<UPoint, CompletionError> {
    let Some(rest) = Dyadic::one().checked_sub(t) else {
        return Err(CompletionError::InvalidParameter(format!("t = {t} is not in [0, 1]")));
    };
    let d = ApproxReal::distance(store, x, z);
    ext_complete(store, &[(x.clone(), d.scale(t)), (z.clone(), d.scale(&rest))])
}

/// The approximant of `H(t, x)` at precision `n`.
pub fn homotopy_sample(
    store: &mut Store,
    t: &Dyadic,
    x: &UPoint,
    z: &UPoint,
    n: u32,
) -> Result<QuotPoint, CompletionError> {
    homotopy(store, t, x, z)?.query(store, n)
}
