//! Nonnegative reals given by nested dyadic enclosures.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use super::{dist_upoint, CompletionError, UPoint};
use crate::dyadic::Dyadic;
use crate::interval::Interval;
use crate::space::Store;

type RealFn = dyn Fn(&mut Store, u32) -> Result<Interval, CompletionError>;

enum Source {
    Exact(Dyadic),
    Refine(Box<RealFn>),
}

struct Inner {
    source: Source,
    cache: RefCell<BTreeMap<u32, Interval>>,
}

/// A real `x ≥ 0` presented by `n ↦ [lo, hi] ∋ x` with `hi − lo ≤ 2^-n` and
/// each enclosure contained in the previous one.
#[derive(Clone)]
pub struct ApproxReal {
    inner: Rc<Inner>,
}

impl ApproxReal {
    fn wrap(source: Source) -> Self {
        ApproxReal { inner: Rc::new(Inner { source, cache: RefCell::new(BTreeMap::new()) }) }
    }

    pub fn exact(d: Dyadic) -> Self {
        ApproxReal::wrap(Source::Exact(d))
    }

    /// A real from an enclosure function. The function must meet the width
    /// bound; nesting is enforced by intersecting with coarser answers.
    pub fn from_fn(f: impl Fn(&mut Store, u32) -> Result<Interval, CompletionError> + 'static) -> Self {
        ApproxReal::wrap(Source::Refine(Box::new(f)))
    }

    /// `d(x, y)` for two points of the completion.
    pub fn distance(store: &mut Store, x: &UPoint, y: &UPoint) -> Self {
        if let (Some(p), Some(q)) = (x.as_constant(), y.as_constant()) {
            return ApproxReal::exact(store.dist(p, q));
        }
        let (x, y) = (x.clone(), y.clone());
        ApproxReal::from_fn(move |store, n| {
            let mut acc = dist_upoint(store, &x, &y, 0)?;
            for j in 1..=n {
                acc = acc.intersect(&dist_upoint(store, &x, &y, j)?).ok_or_else(|| {
                    CompletionError::ContractViolation(format!("distance enclosures at precisions {j} and below are disjoint"))
                })?;
            }
            Ok(acc)
        })
    }

    pub fn as_exact(&self) -> Option<&Dyadic> {
        match &self.inner.source {
            Source::Exact(d) => Some(d),
            Source::Refine(_) => None,
        }
    }

    pub fn query(&self, store: &mut Store, n: u32) -> Result<Interval, CompletionError> {
        let f = match &self.inner.source {
            Source::Exact(d) => return Ok(Interval::point(d.clone())),
            Source::Refine(f) => f,
        };
        if let Some(i) = self.inner.cache.borrow().get(&n) {
            return Ok(i.clone());
        }
        let mut i = f(store, n)?;
        let coarser = self.inner.cache.borrow().range(..n).next_back().map(|(_, c)| c.clone());
        if let Some(c) = coarser {
            i = i.intersect(&c).ok_or_else(|| {
                CompletionError::ContractViolation(format!("enclosure at precision {n} misses the one at a lower precision"))
            })?;
        }
        let finer = self.inner.cache.borrow().range(n + 1..).next().map(|(_, c)| c.clone());
        if let Some(c) = finer {
            if !i.contains_interval(&c) {
                return Err(CompletionError::ContractViolation(format!(
                    "enclosure at precision {n} does not contain a finer one"
                )));
            }
        }
        self.inner.cache.borrow_mut().entry(n).or_insert_with(|| i.clone());
        Ok(i)
    }

    pub fn add(&self, other: &ApproxReal) -> ApproxReal {
        if let (Some(a), Some(b)) = (self.as_exact(), other.as_exact()) {
            return ApproxReal::exact(a + b);
        }
        let (a, b) = (self.clone(), other.clone());
        ApproxReal::from_fn(move |store, n| Ok(a.query(store, n + 1)?.add(&b.query(store, n + 1)?)))
    }

    /// `|self − other|`.
    pub fn dis(&self, other: &ApproxReal) -> ApproxReal {
        if let (Some(a), Some(b)) = (self.as_exact(), other.as_exact()) {
            return ApproxReal::exact(a.abs_diff(b));
        }
        let (a, b) = (self.clone(), other.clone());
        ApproxReal::from_fn(move |store, n| Ok(a.query(store, n + 1)?.dis(&b.query(store, n + 1)?)))
    }

    pub fn sup(&self, other: &ApproxReal) -> ApproxReal {
        if let (Some(a), Some(b)) = (self.as_exact(), other.as_exact()) {
            return ApproxReal::exact(a.clone().max(b.clone()));
        }
        let (a, b) = (self.clone(), other.clone());
        ApproxReal::from_fn(move |store, n| Ok(a.query(store, n)?.max(&b.query(store, n)?)))
    }

    /// `λ · self` for a dyadic `λ`.
    pub fn scale(&self, lambda: &Dyadic) -> ApproxReal {
        if let Some(a) = self.as_exact() {
            return ApproxReal::exact(a * lambda);
        }
        let shift = lambda.ceil_log2().unwrap_or(0).max(0) as u32;
        let (a, lambda) = (self.clone(), lambda.clone());
        ApproxReal::from_fn(move |store, n| Ok(a.query(store, n + shift)?.scale(&lambda)))
    }
}

impl From<Dyadic> for ApproxReal {
    fn from(d: Dyadic) -> Self {
        ApproxReal::exact(d)
    }
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.source {
            Source::Exact(d) => write!(f, "ApproxReal({d})"),
            Source::Refine(_) => f.write_str("ApproxReal(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::dy;

    /// `1/3` by binary expansion, deliberately inexact.
    fn third() -> ApproxReal {
        ApproxReal::from_fn(|_, n| {
            let k = n + 2;
            let lo = Dyadic::new((1u64 << k) / 3, k);
            Ok(Interval::new(lo.clone(), &lo + &Dyadic::pow2_neg(k)))
        })
    }

    fn check(store: &mut Store, x: &ApproxReal, truth: f64) {
        let mut prev: Option<Interval> = None;
        for n in 0..12 {
            let i = x.query(store, n).unwrap();
            assert!(i.width() <= Dyadic::pow2_neg(n), "width at {n}: {i}");
            assert!(i.lo.to_f64() <= truth + 1e-12 && truth - 1e-12 <= i.hi.to_f64(), "{i} misses {truth}");
            if let Some(p) = &prev {
                assert!(p.contains_interval(&i));
            }
            prev = Some(i);
        }
    }

    #[test]
    fn combinators_nest_and_enclose() {
        let mut s = Store::new();
        let t = third();
        check(&mut s, &t, 1.0 / 3.0);
        check(&mut s, &t.add(&ApproxReal::exact(dy(1, 0))), 4.0 / 3.0);
        check(&mut s, &t.add(&t), 2.0 / 3.0);
        check(&mut s, &t.dis(&ApproxReal::exact(dy(1, 1))), 1.0 / 6.0);
        check(&mut s, &t.dis(&t), 0.0);
        check(&mut s, &t.sup(&ApproxReal::exact(dy(1, 2))), 1.0 / 3.0);
        check(&mut s, &t.scale(&dy(3, 0)), 1.0);
        check(&mut s, &t.scale(&dy(5, 1)).dis(&t), 0.5);
    }

    #[test]
    fn exact_stays_exact() {
        let a = ApproxReal::exact(dy(3, 1)).add(&ApproxReal::exact(dy(1, 1))).scale(&dy(1, 2));
        assert_eq!(a.as_exact(), Some(&dy(1, 1)));
    }
}
