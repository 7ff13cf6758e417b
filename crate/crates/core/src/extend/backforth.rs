//! Back-and-forth construction of mutually inverse isometries between two
//! enumerated presentations of the countable Urysohn space.

use thiserror::Error;

use super::{ext_d, ExtendError};
use crate::dyadic::Dyadic;
use crate::space::{QuotPoint, Store};

/// An enumerated metric space with a one-point extension operator.
pub trait Presentation {
    /// The point enumerated at `n`.
    fn point(&mut self, store: &mut Store, n: usize) -> QuotPoint;

    fn distance(&self, store: &mut Store, a: QuotPoint, b: QuotPoint) -> Dyadic {
        store.dist(a, b)
    }

    fn ext(&self, store: &mut Store, c: &[(QuotPoint, Dyadic)]) -> Result<QuotPoint, ExtendError> {
        ext_d(store, c)
    }
}

/// The countable Urysohn space over dyadics with a fixed enumeration.
///
/// Point 0 is the empty tuple. For `n ≥ 1`, write `n = 2^x (2r + 1)` and
/// unfold `r` the same way to get a finite list of naturals; each element
/// `e` contributes the entry `(s(e mod n), (p + 1) / 2^k)` where `(p, k)` is
/// the Cantor unpairing of `e div n`. The resulting tuple is retracted to a
/// permissible one.
#[derive(Debug, Clone, Default)]
pub struct UDyadic {
    cache: Vec<QuotPoint>,
}

impl UDyadic {
    pub fn new() -> Self {
        UDyadic::default()
    }
}

fn decode_list(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        let x = n.trailing_zeros();
        out.push(u64::from(x));
        n = (n >> x) >> 1;
    }
    out
}

fn cantor_unpair(z: u64) -> (u64, u64) {
    let mut w = (((8 * z + 1) as f64).sqrt() as u64 - 1) / 2;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let y = z - w * (w + 1) / 2;
    (w - y, y)
}

impl Presentation for UDyadic {
    fn point(&mut self, store: &mut Store, n: usize) -> QuotPoint {
        while self.cache.len() <= n {
            let m = self.cache.len();
            let p = if m == 0 {
                store.empty_point()
            } else {
                let entries = decode_list(m as u64)
                    .into_iter()
                    .map(|e| {
                        let pred = self.cache[(e % m as u64) as usize].node();
                        let (p, k) = cantor_unpair(e / m as u64);
                        (pred, Dyadic::new(p + 1, k as u32))
                    })
                    .collect();
                let w = store.intern_next(entries).expect("predecessors come from the store");
                let r = store.retract(w);
                store.quot(r).expect("retractions are permissible")
            };
            self.cache.push(p);
        }
        self.cache[n]
    }
}

/// Another presentation enumerated through a bijection of the indices:
/// within each block of `block` consecutive indices the order is reversed.
#[derive(Debug, Clone)]
pub struct Reenumerated<P> {
    inner: P,
    block: usize,
}

impl<P> Reenumerated<P> {
    pub fn reversed_blocks(inner: P, block: usize) -> Self {
        assert!(block >= 1);
        Reenumerated { inner, block }
    }

    pub fn index(&self, n: usize) -> usize {
        let start = n - n % self.block;
        start + (self.block - 1 - n % self.block)
    }
}

impl<P: Presentation> Presentation for Reenumerated<P> {
    fn point(&mut self, store: &mut Store, n: usize) -> QuotPoint {
        let m = self.index(n);
        self.inner.point(store, m)
    }

    fn distance(&self, store: &mut Store, a: QuotPoint, b: QuotPoint) -> Dyadic {
        self.inner.distance(store, a, b)
    }

    fn ext(&self, store: &mut Store, c: &[(QuotPoint, Dyadic)]) -> Result<QuotPoint, ExtendError> {
        self.inner.ext(store, c)
    }
}

/// Placed points after some rounds: `f` maps `left[i]` to `right[i]` and
/// `g` maps back.
#[derive(Debug, Clone, Default)]
pub struct BackForthState {
    pub round: usize,
    pub left: Vec<QuotPoint>,
    pub right: Vec<QuotPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackForthViolation {
    #[error("pairs {i} and {j} are not isometric")]
    NotIsometric { i: usize, j: usize },
    #[error("g(f(x)) is not x for left point {0}")]
    LeftNotInverse(usize),
    #[error("f(g(y)) is not y for right point {0}")]
    RightNotInverse(usize),
    #[error("enumerated point {side}({n}) is not in the domain")]
    MissingPoint { side: &'static str, n: usize },
}

impl BackForthState {
    pub fn new() -> Self {
        BackForthState::default()
    }

    /// `f(x)`: the partner of the first placed left point equivalent to `x`.
    pub fn f(&self, store: &mut Store, x: QuotPoint) -> Option<QuotPoint> {
        let i = self.left.iter().position(|&t| store.quot_eq(t, x))?;
        Some(self.right[i])
    }

    /// `g(y)`: the partner of the first placed right point equivalent to `y`.
    pub fn g(&self, store: &mut Store, y: QuotPoint) -> Option<QuotPoint> {
        let i = self.right.iter().position(|&t| store.quot_eq(t, y))?;
        Some(self.left[i])
    }

    /// Checks exact isometry, mutual inverseness, and that the first `round`
    /// enumerated points of both sides are placed.
    pub fn verify<P: Presentation, Q: Presentation>(
        &self,
        store: &mut Store,
        p: &mut P,
        q: &mut Q,
    ) -> Result<(), BackForthViolation> {
        let k = self.left.len();
        for i in 0..k {
            for j in i + 1..k {
                let dl = p.distance(store, self.left[i], self.left[j]);
                let dr = q.distance(store, self.right[i], self.right[j]);
                if dl != dr {
                    return Err(BackForthViolation::NotIsometric { i, j });
                }
            }
        }
        for i in 0..k {
            let back = self.f(store, self.left[i]).and_then(|y| self.g(store, y));
            if !back.is_some_and(|x| store.quot_eq(x, self.left[i])) {
                return Err(BackForthViolation::LeftNotInverse(i));
            }
            let forth = self.g(store, self.right[i]).and_then(|x| self.f(store, x));
            if !forth.is_some_and(|y| store.quot_eq(y, self.right[i])) {
                return Err(BackForthViolation::RightNotInverse(i));
            }
        }
        for n in 0..self.round {
            let x = p.point(store, n);
            if self.f(store, x).is_none() {
                return Err(BackForthViolation::MissingPoint { side: "left", n });
            }
            let y = q.point(store, n);
            if self.g(store, y).is_none() {
                return Err(BackForthViolation::MissingPoint { side: "right", n });
            }
        }
        Ok(())
    }

    /// Whether every placed left point is equivalent to its image.
    pub fn is_identity(&self, store: &mut Store) -> bool {
        self.left.iter().zip(&self.right).all(|(&x, &y)| store.quot_eq(x, y))
    }
}

/// One round: first place the next left point `s'(n)` by extending in the
/// right space, then place the next right point `s''(n)` by extending in
/// the left space.
pub fn back_and_forth_step<P: Presentation, Q: Presentation>(
    store: &mut Store,
    p: &mut P,
    q: &mut Q,
    state: &mut BackForthState,
) -> Result<(), ExtendError> {
    let n = state.round;
    let s1 = p.point(store, n);
    let s2 = q.point(store, n);
    let mut ca = Vec::with_capacity(state.left.len());
    for (&tl, &tr) in state.left.iter().zip(&state.right) {
        ca.push((tr, p.distance(store, s1, tl)));
    }
    let a = q.ext(store, &ca)?;
    let mut cb = Vec::with_capacity(state.left.len() + 1);
    for (&tl, &tr) in state.left.iter().zip(&state.right) {
        cb.push((tl, q.distance(store, s2, tr)));
    }
    cb.push((s1, q.distance(store, s2, a)));
    let b = p.ext(store, &cb)?;
    state.left.extend([s1, b]);
    state.right.extend([a, s2]);
    state.round += 1;
    Ok(())
}

pub fn back_and_forth<P: Presentation, Q: Presentation>(
    store: &mut Store,
    p: &mut P,
    q: &mut Q,
    rounds: usize,
) -> Result<BackForthState, ExtendError> {
    let mut state = BackForthState::new();
    for _ in 0..rounds {
        back_and_forth_step(store, p, q, &mut state)?;
    }
    Ok(state)
}
