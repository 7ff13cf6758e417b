//! One-point extensions, canonical extension of finite partial isometries,
//! the back-and-forth isomorphism and sup-distance estimates between
//! extended isometries.

mod backforth;
mod metric;

pub use backforth::{
    back_and_forth, back_and_forth_step, BackForthState, BackForthViolation, Presentation, Reenumerated,
    UDyadic,
};
pub use metric::{CountableMetricSpace, MetricViolation};

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::interval::Interval;
use crate::space::{QuotPoint, SpaceError, Store};

/// Anchor points with prescribed distances.
pub type ConstraintList = [(QuotPoint, Dyadic)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("constraints {i} and {j} are incompatible: |d(x_{i}, x_{j}) - chi_{i}| > chi_{j}")]
    PrmsViolation { i: usize, j: usize },
    #[error("pairs {i} and {j} are not isometric")]
    NotIsometry { i: usize, j: usize },
    #[error("partial isometry refers to point {0}, which is not in the space")]
    UnknownPoint(usize),
    #[error("no enumerated point within epsilon of anchor {anchor} in the prefix")]
    InsufficientPrefix { anchor: usize },
    #[error("lists have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Metric(#[from] MetricViolation),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// `|d(x_i, x_j) − χ_i| ≤ χ_j` for all `i, j`.
pub fn check_prms(store: &mut Store, c: &ConstraintList) -> bool {
    first_prms_violation(store, c).is_none()
}

fn first_prms_violation(store: &mut Store, c: &ConstraintList) -> Option<(usize, usize)> {
    for (i, (xi, chi)) in c.iter().enumerate() {
        for (j, (xj, chj)) in c.iter().enumerate() {
            if &store.dist(*xi, *xj).abs_diff(chi) > chj {
                return Some((i, j));
            }
        }
    }
    None
}

/// The point at distance `χ_k` from every `x_k`: the tuple of the
/// constraint list itself, aged one past its oldest anchor.
pub fn ext_d(store: &mut Store, c: &ConstraintList) -> Result<QuotPoint, ExtendError> {
    if let Some((i, j)) = first_prms_violation(store, c) {
        return Err(ExtendError::PrmsViolation { i, j });
    }
    let entries = c.iter().map(|(x, chi)| (x.node(), chi.clone())).collect();
    let id = store.intern_next(entries)?;
    Ok(store.quot(id)?)
}

/// `sup_i d(x_i, y_i) + sup_i |χ_i − υ_i|`.
pub fn d_p(store: &mut Store, c1: &ConstraintList, c2: &ConstraintList) -> Result<Dyadic, ExtendError> {
    if c1.len() != c2.len() {
        return Err(ExtendError::LengthMismatch(c1.len(), c2.len()));
    }
    let mut points = Dyadic::zero();
    let mut dists = Dyadic::zero();
    for ((x, chi), (y, ups)) in c1.iter().zip(c2) {
        points = points.max(store.dist(*x, *y));
        dists = dists.max(chi.abs_diff(ups));
    }
    Ok(points + dists)
}

/// Whether `d(ext_d(c1), ext_d(c2)) ≤ d_P(c1, c2)`.
pub fn dp_nonexpansive_check(store: &mut Store, c1: &ConstraintList, c2: &ConstraintList) -> Result<bool, ExtendError> {
    let bound = d_p(store, c1, c2)?;
    let p = ext_d(store, c1)?;
    let q = ext_d(store, c2)?;
    Ok(store.dist(p, q) <= bound)
}

/// Pairs `(point of the metric space, image)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialIsometry {
    pub pairs: Vec<(usize, QuotPoint)>,
}

impl PartialIsometry {
    pub fn new(pairs: Vec<(usize, QuotPoint)>) -> Self {
        PartialIsometry { pairs }
    }

    pub fn empty() -> Self {
        PartialIsometry::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The first image recorded for `label`.
    pub fn image(&self, label: usize) -> Option<QuotPoint> {
        self.pairs.iter().find(|(l, _)| *l == label).map(|(_, p)| *p)
    }

    pub fn validate(&self, store: &mut Store, space: &CountableMetricSpace) -> Result<(), ExtendError> {
        for (l, _) in &self.pairs {
            if *l >= space.len() {
                return Err(ExtendError::UnknownPoint(*l));
            }
        }
        for (i, (li, ui)) in self.pairs.iter().enumerate() {
            for (j, (lj, uj)) in self.pairs.iter().enumerate().skip(i + 1) {
                if space.d(*li, *lj) != &store.dist(*ui, *uj) {
                    return Err(ExtendError::NotIsometry { i, j });
                }
            }
        }
        Ok(())
    }
}

/// Images of the first `upto` enumerated points under the canonical
/// extension of `f`: the point enumerated at `n` goes to
/// `ext((f(y_i), d(s_n, y_i)) :: (image of s_j, d(s_n, s_j)) for earlier j)`.
pub fn extend_images(
    store: &mut Store,
    space: &CountableMetricSpace,
    f: &PartialIsometry,
    upto: usize,
) -> Result<Vec<Option<QuotPoint>>, ExtendError> {
    f.validate(store, space)?;
    let mut images: Vec<Option<QuotPoint>> = Vec::with_capacity(upto);
    for n in 0..upto {
        let Some(s) = space.enumerated(n) else {
            images.push(None);
            continue;
        };
        let mut c: Vec<(QuotPoint, Dyadic)> = f.pairs.iter().map(|(y, u)| (*u, space.d(s, *y).clone())).collect();
        for (j, img) in images.iter().enumerate() {
            if let Some(img) = img {
                let sj = space.enumerated(j).expect("present image has a point");
                c.push((*img, space.d(s, sj).clone()));
            }
        }
        images.push(Some(ext_d(store, &c)?));
    }
    Ok(images)
}

/// `f` followed by the images of the first `upto` enumerated points.
pub fn extend_isometry(
    store: &mut Store,
    space: &CountableMetricSpace,
    f: &PartialIsometry,
    upto: usize,
) -> Result<PartialIsometry, ExtendError> {
    let images = extend_images(store, space, f, upto)?;
    let mut pairs = f.pairs.clone();
    for (n, img) in images.into_iter().enumerate() {
        if let Some(img) = img {
            pairs.push((space.enumerated(n).expect("present image has a point"), img));
        }
    }
    Ok(PartialIsometry { pairs })
}

/// Enclosure `[B, B + 2ε]` of the sup-distance between the canonical
/// extensions of `data1` and `data2`, where `B` is the largest distance
/// between the two extensions over enumeration indices `0..=prefix`.
/// Every anchor of both lists must lie within `ε` of a point enumerated in
/// that prefix.
pub fn sup_distance_between_extensions(
    store: &mut Store,
    space: &CountableMetricSpace,
    data1: &PartialIsometry,
    data2: &PartialIsometry,
    epsilon: &Dyadic,
    prefix: usize,
) -> Result<Interval, ExtendError> {
    if data1.len() != data2.len() {
        return Err(ExtendError::LengthMismatch(data1.len(), data2.len()));
    }
    for data in [data1, data2] {
        data.validate(store, space)?;
        for (anchor, (x, _)) in data.pairs.iter().enumerate() {
            let covered = (0..=prefix).filter_map(|k| space.enumerated(k)).any(|s| space.d(*x, s) <= epsilon);
            if !covered {
                return Err(ExtendError::InsufficientPrefix { anchor });
            }
        }
    }
    let w = extend_images(store, space, data1, prefix + 1)?;
    let z = extend_images(store, space, data2, prefix + 1)?;
    let mut b = Dyadic::zero();
    for (wk, zk) in w.iter().zip(&z) {
        if let (Some(wk), Some(zk)) = (wk, zk) {
            b = b.max(store.dist(*wk, *zk));
        }
    }
    let hi = &b + &epsilon.mul_pow2(1);
    Ok(Interval::new(b, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::dy;
    use crate::space::NodeId;

    fn int(n: u64) -> Dyadic {
        Dyadic::from(n)
    }

    #[test]
    fn prms_examples() {
        let mut s = Store::new();
        assert!(check_prms(&mut s, &[]));
        let e = s.empty_point();
        assert!(check_prms(&mut s, &[(e, int(2))]));
        let a = s.intern(1, vec![(NodeId::EMPTY, int(1))]).unwrap();
        let a = s.quot(a).unwrap();
        assert!(!check_prms(&mut s, &[(e, dy(1, 2)), (a, dy(1, 2))]));
        assert_eq!(
            ext_d(&mut s, &[(e, dy(1, 2)), (a, dy(1, 2))]),
            Err(ExtendError::PrmsViolation { i: 0, j: 1 })
        );
    }

    #[test]
    fn ext_examples() {
        let mut s = Store::new();
        let e = s.empty_point();
        let p = ext_d(&mut s, &[]).unwrap();
        assert!(s.quot_eq(p, e));
        let p = ext_d(&mut s, &[(e, int(2))]).unwrap();
        assert_eq!(s.dist(p, e), int(2));
        let a = s.intern(1, vec![(NodeId::EMPTY, int(1))]).unwrap();
        let a = s.quot(a).unwrap();
        let p = ext_d(&mut s, &[(e, dy(1, 1)), (a, dy(1, 1))]).unwrap();
        assert_eq!(s.dist(p, e), dy(1, 1));
        assert_eq!(s.dist(p, a), dy(1, 1));
    }

    #[test]
    fn dp_examples() {
        let mut s = Store::new();
        let e = s.empty_point();
        let a = s.intern(1, vec![(NodeId::EMPTY, int(1))]).unwrap();
        let a = s.quot(a).unwrap();
        let c1 = [(e, int(1)), (a, int(1))];
        assert!(dp_nonexpansive_check(&mut s, &c1, &c1).unwrap());
        assert_eq!(d_p(&mut s, &c1, &c1).unwrap(), Dyadic::zero());
        let c2 = [(e, dy(5, 2)), (a, dy(5, 2))];
        assert_eq!(d_p(&mut s, &c1, &c2).unwrap(), dy(1, 2));
        assert!(dp_nonexpansive_check(&mut s, &c1, &c2).unwrap());
        assert!(dp_nonexpansive_check(&mut s, &c1, &c2[..1]).is_err());
    }

    fn two_points() -> CountableMetricSpace {
        CountableMetricSpace::from_fn(2, |i, j| if i == j { Dyadic::zero() } else { int(2) }).unwrap()
    }

    #[test]
    fn extension_of_empty_isometry() {
        let mut s = Store::new();
        let x = two_points();
        let f = extend_isometry(&mut s, &x, &PartialIsometry::empty(), 2).unwrap();
        assert_eq!(f.len(), 2);
        let (p0, p1) = (f.pairs[0].1, f.pairs[1].1);
        assert_eq!(s.dist(p0, p1), int(2));
    }

    #[test]
    fn extension_keeps_total_input() {
        let mut s = Store::new();
        let x = two_points();
        let e = s.empty_point();
        let q = s.intern(1, vec![(NodeId::EMPTY, int(2))]).unwrap();
        let q = s.quot(q).unwrap();
        let f = PartialIsometry::new(vec![(0, e), (1, q)]);
        let g = extend_isometry(&mut s, &x, &f, 2).unwrap();
        assert!(s.quot_eq(g.pairs[2].1, e));
        assert!(s.quot_eq(g.pairs[3].1, q));
        let bad = PartialIsometry::new(vec![(0, e), (1, e)]);
        assert_eq!(extend_isometry(&mut s, &x, &bad, 2), Err(ExtendError::NotIsometry { i: 0, j: 1 }));
    }

    #[test]
    fn repeated_enumeration_gives_equal_images() {
        let mut s = Store::new();
        let x = two_points().with_enumeration(vec![Some(0), Some(1), Some(0), None]).unwrap();
        let imgs = extend_images(&mut s, &x, &PartialIsometry::empty(), 4).unwrap();
        assert!(imgs[3].is_none());
        let (a, b) = (imgs[0].unwrap(), imgs[2].unwrap());
        assert!(s.quot_eq(a, b));
    }

    #[test]
    fn sup_distance_of_identical_data() {
        let mut s = Store::new();
        let x = two_points();
        let e = s.empty_point();
        let f = PartialIsometry::new(vec![(0, e)]);
        let iv = sup_distance_between_extensions(&mut s, &x, &f, &f, &dy(1, 3), 1).unwrap();
        assert_eq!(iv, Interval::new(Dyadic::zero(), dy(1, 2)));
        let far = x.with_enumeration(vec![Some(1)]).unwrap();
        assert_eq!(
            sup_distance_between_extensions(&mut s, &far, &f, &f, &dy(1, 3), 0),
            Err(ExtendError::InsufficientPrefix { anchor: 0 })
        );
    }
}
