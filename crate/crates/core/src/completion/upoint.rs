//! Points of the completion as rapid-Cauchy streams of tuple points.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use super::CompletionError;
use crate::space::{QuotPoint, Store};

type PointFn = dyn Fn(&mut Store, u32) -> Result<QuotPoint, CompletionError>;

struct Inner {
    constant: Option<QuotPoint>,
    source: Option<Box<PointFn>>,
    cache: RefCell<BTreeMap<u32, QuotPoint>>,
}

/// A point `x` of the completion presented by approximants `p_n` with
/// `d(p_m, p_n) ≤ 2^-m` for `m ≤ n`, so that `d(p_n, x) ≤ 2^-n`.
#[derive(Clone)]
pub struct UPoint {
    inner: Rc<Inner>,
}

impl UPoint {
    pub fn constant(p: QuotPoint) -> Self {
        UPoint { inner: Rc::new(Inner { constant: Some(p), source: None, cache: RefCell::new(BTreeMap::new()) }) }
    }

    /// A stream from an approximant function, which must satisfy the
    /// rapid-Cauchy contract and be deterministic.
    pub fn from_fn(f: impl Fn(&mut Store, u32) -> Result<QuotPoint, CompletionError> + 'static) -> Self {
        UPoint {
            inner: Rc::new(Inner { constant: None, source: Some(Box::new(f)), cache: RefCell::new(BTreeMap::new()) }),
        }
    }

    pub fn as_constant(&self) -> Option<QuotPoint> {
        self.inner.constant
    }

    /// The approximant `p_n`.
    pub fn query(&self, store: &mut Store, n: u32) -> Result<QuotPoint, CompletionError> {
        if let Some(p) = self.inner.constant {
            return Ok(p);
        }
        if let Some(p) = self.inner.cache.borrow().get(&n) {
            return Ok(*p);
        }
        let f = self.inner.source.as_ref().expect("non-constant points have a source");
        let p = f(store, n)?;
        Ok(*self.inner.cache.borrow_mut().entry(n).or_insert(p))
    }
}

impl From<QuotPoint> for UPoint {
    fn from(p: QuotPoint) -> Self {
        UPoint::constant(p)
    }
}

impl fmt::Debug for UPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.constant {
            Some(p) => write!(f, "UPoint({p:?})"),
            None => f.write_str("UPoint(..)"),
        }
    }
}
