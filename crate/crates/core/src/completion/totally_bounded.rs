//! Extension of an isometry from a totally bounded subset `A` of a metric
//! space `X` into the completion.
//!
//! `A` comes with an enumeration `s_A` and a modulus `a` such that the
//! points `s_A(i)`, `i < a(n)`, form a `2^-n`-net of `A`. For a query point
//! `x` of `X` the approximants are
//! `b_n = ext((s_A(i), f(s_A(i)))_{i<a(n)})(x)`, which satisfy
//! `d(b_n, b_{n+1}) ≤ 2^-n+1`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use super::{CompletionError, UPoint};
use crate::dyadic::Dyadic;
use crate::extend::{extend_images, CountableMetricSpace, PartialIsometry};
use crate::space::{QuotPoint, Store};

/// The extension of `f: A → U` evaluated at finitely many query points of
/// the ambient space.
pub struct TotallyBoundedExtension {
    subset: CountableMetricSpace,
    modulus: Vec<usize>,
    f: PartialIsometry,
    /// `A`'s points followed by the queries, enumerating the queries.
    combined: CountableMetricSpace,
    cache: RefCell<BTreeMap<usize, Rc<Vec<QuotPoint>>>>,
}

impl TotallyBoundedExtension {
    /// `to_subset[j][i]` is the distance from query `j` to point `i` of `A`
    /// and `between[j][k]` the distance between queries `j` and `k`. Queries
    /// may coincide with points of `A`.
    ///
    /// The modulus is given for `n < modulus.len()` and must be
    /// nondecreasing with `a(n) ≥ n`.
    pub fn new(
        store: &mut Store,
        subset: &CountableMetricSpace,
        modulus: Vec<usize>,
        f: PartialIsometry,
        to_subset: &[Vec<Dyadic>],
        between: &[Vec<Dyadic>],
    ) -> Result<Rc<Self>, CompletionError> {
        f.validate(store, subset)?;
        check_modulus(subset, &modulus)?;
        let top = modulus.last().copied().unwrap_or(0);
        for i in 0..top {
            if let Some(label) = subset.enumerated(i) {
                if f.image(label).is_none() {
                    return Err(CompletionError::MissingImage { label });
                }
            }
        }
        let na = subset.len();
        let nq = to_subset.len();
        if between.len() != nq || to_subset.iter().any(|r| r.len() != na) || between.iter().any(|r| r.len() != nq) {
            return Err(CompletionError::InvalidParameter("query distance tables have the wrong shape".into()));
        }
        let mut labels = subset.labels().to_vec();
        labels.extend((0..nq).map(|j| format!("query{j}")));
        let dist = (0..na + nq)
            .map(|r| {
                (0..na + nq)
                    .map(|c| match (r < na, c < na) {
                        (true, true) => subset.d(r, c).clone(),
                        (true, false) => to_subset[c - na][r].clone(),
                        (false, true) => to_subset[r - na][c].clone(),
                        (false, false) => between[r - na][c - na].clone(),
                    })
                    .collect()
            })
            .collect();
        let enumeration = (na..na + nq).map(Some).collect();
        let combined = CountableMetricSpace::new_pseudometric(labels, dist, Some(enumeration))
            .map_err(crate::extend::ExtendError::from)?;
        Ok(Rc::new(TotallyBoundedExtension {
            subset: subset.clone(),
            modulus,
            f,
            combined,
            cache: RefCell::new(BTreeMap::new()),
        }))
    }

    pub fn queries(&self) -> usize {
        self.combined.len() - self.subset.len()
    }

    /// The largest `n` for which `b_n` is defined.
    pub fn max_index(&self) -> Option<usize> {
        self.modulus.len().checked_sub(1)
    }

    /// `b_n` for every query point.
    pub fn approximants(&self, store: &mut Store, n: usize) -> Result<Rc<Vec<QuotPoint>>, CompletionError> {
        if let Some(b) = self.cache.borrow().get(&n) {
            return Ok(b.clone());
        }
        let Some(&prefix) = self.modulus.get(n) else {
            return Err(CompletionError::ModulusViolation(format!(
                "modulus is only given below {}, index {n} requested",
                self.modulus.len()
            )));
        };
        let anchors = (0..prefix)
            .filter_map(|i| self.subset.enumerated(i))
            .map(|label| (label, self.f.image(label).expect("images checked on construction")))
            .collect();
        let images = extend_images(store, &self.combined, &PartialIsometry::new(anchors), self.queries())?;
        let b = Rc::new(images.into_iter().map(|p| p.expect("queries are all enumerated")).collect());
        Ok(self.cache.borrow_mut().entry(n).or_insert(b).clone())
    }

    /// `b_{n+1}` at query `j`, within `2^-n+1` of every later approximant.
    pub fn query(&self, store: &mut Store, j: usize, n: usize) -> Result<QuotPoint, CompletionError> {
        Ok(self.approximants(store, n + 1)?[j])
    }

    /// The image of query `j` as a point of the completion, `p_m = b_{m+2}`.
    /// Queries beyond the modulus fail.
    pub fn point(self: &Rc<Self>, j: usize) -> UPoint {
        let this = Rc::clone(self);
        UPoint::from_fn(move |store, m| Ok(this.approximants(store, m as usize + 2)?[j]))
    }
}

fn check_modulus(subset: &CountableMetricSpace, modulus: &[usize]) -> Result<(), CompletionError> {
    for (n, w) in modulus.windows(2).enumerate() {
        if w[1] < w[0] {
            return Err(CompletionError::ModulusViolation(format!("a({}) < a({n})", n + 1)));
        }
    }
    for (n, &a) in modulus.iter().enumerate() {
        if a < n {
            return Err(CompletionError::ModulusViolation(format!("a({n}) = {a} is below {n}")));
        }
        let radius = Dyadic::pow2_neg(n as u32);
        let net: Vec<usize> = (0..a).filter_map(|i| subset.enumerated(i)).collect();
        for x in 0..subset.len() {
            if !net.iter().any(|&s| subset.d(x, s) <= &radius) {
                return Err(CompletionError::ModulusViolation(format!(
                    "point {} is farther than 2^-{n} from the first {a} enumerated points",
                    subset.label(x)
                )));
            }
        }
    }
    Ok(())
}

/// `b_{n+1}` for a single query point given by its distances to the points
/// of `A`.
pub fn extend_totally_bounded(
    store: &mut Store,
    subset: &CountableMetricSpace,
    modulus: &[usize],
    f: &PartialIsometry,
    x: &[Dyadic],
    n: usize,
) -> Result<QuotPoint, CompletionError> {
    let ext = TotallyBoundedExtension::new(store, subset, modulus.to_vec(), f.clone(), &[x.to_vec()], &[vec![
        Dyadic::zero(),
    ]])?;
    ext.query(store, 0, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::dy;
    use crate::extend::extend_isometry;

    /// Points `0, 1/2, 1/4, …, 2^-4` on a line.
    fn shrinking() -> CountableMetricSpace {
        let pos: Vec<Dyadic> = std::iter::once(Dyadic::zero()).chain((1..=4).map(Dyadic::pow2_neg)).collect();
        CountableMetricSpace::from_fn(pos.len(), |i, j| pos[i].abs_diff(&pos[j])).unwrap()
    }

    fn embedding(store: &mut Store, a: &CountableMetricSpace) -> PartialIsometry {
        extend_isometry(store, a, &PartialIsometry::empty(), a.len()).unwrap()
    }

    #[test]
    fn modulus_is_checked() {
        let mut s = Store::new();
        let a = shrinking();
        let f = embedding(&mut s, &a);
        let x = vec![dy(1, 0), dy(3, 1), dy(5, 2), dy(9, 3), dy(17, 4)];
        assert!(extend_totally_bounded(&mut s, &a, &[1, 2, 3, 4, 5], &f, &x, 2).is_ok());
        let err = extend_totally_bounded(&mut s, &a, &[0, 2, 3, 4, 5], &f, &x, 2).unwrap_err();
        assert!(matches!(err, CompletionError::ModulusViolation(_)));
        let err = extend_totally_bounded(&mut s, &a, &[1, 2, 3], &f, &x, 2).unwrap_err();
        assert!(matches!(err, CompletionError::ModulusViolation(_)));
    }

    #[test]
    fn consecutive_approximants_converge() {
        let mut s = Store::new();
        let a = shrinking();
        let f = embedding(&mut s, &a);
        let to_a = vec![vec![dy(1, 0), dy(3, 1), dy(5, 2), dy(9, 3), dy(17, 4)], vec![
            dy(1, 4),
            dy(7, 4),
            dy(3, 4),
            dy(1, 4),
            dy(0, 0),
        ]];
        let between = vec![vec![dy(0, 0), dy(17, 4)], vec![dy(17, 4), dy(0, 0)]];
        let ext = TotallyBoundedExtension::new(&mut s, &a, vec![1, 2, 3, 4, 5], f.clone(), &to_a, &between).unwrap();
        for n in 0..4 {
            let b0 = ext.approximants(&mut s, n).unwrap();
            let b1 = ext.approximants(&mut s, n + 1).unwrap();
            for j in 0..2 {
                assert!(s.dist(b0[j], b1[j]) <= Dyadic::pow2_neg(n as u32).mul_pow2(1));
            }
        }
        let last = ext.approximants(&mut s, 4).unwrap();
        assert_eq!(s.dist(last[0], last[1]), dy(17, 4));
        assert!(s.quot_eq(last[1], f.image(4).unwrap()));
    }
}
