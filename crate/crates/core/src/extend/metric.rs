//! Finite metric spaces with an enumeration `ℕ → X + 1`.

use std::fmt;

use thiserror::Error;

use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricViolation {
    #[error("distance matrix row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },
    #[error("d({i}, {j}) differs from d({j}, {i})")]
    Asymmetric { i: usize, j: usize },
    #[error("d({i}, {i}) is not zero")]
    NonzeroDiagonal { i: usize },
    #[error("d({i}, {j}) is zero for distinct points")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality fails: d({i}, {j}) > d({i}, {k}) + d({k}, {j})")]
    Triangle { i: usize, j: usize, k: usize },
    #[error("enumeration entry {index} refers to point {label}, which does not exist")]
    BadEnumeration { index: usize, label: usize },
}

impl MetricViolation {
    /// The message with point indices replaced by labels.
    pub fn describe(&self, labels: &[String]) -> String {
        let l = |i: &usize| labels.get(*i).cloned().unwrap_or_else(|| i.to_string());
        match self {
            MetricViolation::Asymmetric { i, j } => format!("d({}, {}) differs from d({}, {})", l(i), l(j), l(j), l(i)),
            MetricViolation::NonzeroDiagonal { i } => format!("d({}, {}) is not zero", l(i), l(i)),
            MetricViolation::ZeroOffDiagonal { i, j } => {
                format!("d({}, {}) is zero for distinct points", l(i), l(j))
            }
            MetricViolation::Triangle { i, j, k } => format!(
                "triangle inequality fails: d({}, {}) > d({}, {}) + d({}, {})",
                l(i),
                l(j),
                l(i),
                l(k),
                l(k),
                l(j)
            ),
            other => other.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MetricViolation::NotSquare { .. } => "not-square",
            MetricViolation::Asymmetric { .. } => "asymmetric",
            MetricViolation::NonzeroDiagonal { .. } => "nonzero-diagonal",
            MetricViolation::ZeroOffDiagonal { .. } => "zero-off-diagonal",
            MetricViolation::Triangle { .. } => "triangle",
            MetricViolation::BadEnumeration { .. } => "bad-enumeration",
        }
    }
}

/// A finite metric space with exact distances and an enumeration in which
/// points may repeat and gaps (`None`) may appear. Indices past the end of
/// the enumeration are gaps.
#[derive(Clone, PartialEq, Eq)]
pub struct CountableMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Dyadic>>,
    enumeration: Vec<Option<usize>>,
}

impl CountableMetricSpace {
    /// Validates the matrix as a metric. Without an explicit enumeration the
    /// points are enumerated in order.
    pub fn new(
        labels: Vec<String>,
        dist: Vec<Vec<Dyadic>>,
        enumeration: Option<Vec<Option<usize>>>,
    ) -> Result<Self, MetricViolation> {
        Self::validated(labels, dist, enumeration, false)
    }

    /// Like [`CountableMetricSpace::new`] but distinct points may be at
    /// distance zero.
    pub fn new_pseudometric(
        labels: Vec<String>,
        dist: Vec<Vec<Dyadic>>,
        enumeration: Option<Vec<Option<usize>>>,
    ) -> Result<Self, MetricViolation> {
        Self::validated(labels, dist, enumeration, true)
    }

    #[allow(clippy::needless_range_loop)]
    fn validated(
        labels: Vec<String>,
        dist: Vec<Vec<Dyadic>>,
        enumeration: Option<Vec<Option<usize>>>,
        pseudo: bool,
    ) -> Result<Self, MetricViolation> {
        let n = labels.len();
        if dist.len() != n {
            return Err(MetricViolation::NotSquare { row: dist.len().min(n), found: dist.len(), expected: n });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(MetricViolation::NotSquare { row, found: r.len(), expected: n });
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(MetricViolation::NonzeroDiagonal { i });
            }
            for j in i + 1..n {
                if dist[i][j] != dist[j][i] {
                    return Err(MetricViolation::Asymmetric { i, j });
                }
                if !pseudo && dist[i][j].is_zero() {
                    return Err(MetricViolation::ZeroOffDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][j] > &dist[i][k] + &dist[k][j] {
                        return Err(MetricViolation::Triangle { i, j, k });
                    }
                }
            }
        }
        let enumeration = enumeration.unwrap_or_else(|| (0..n).map(Some).collect());
        for (index, e) in enumeration.iter().enumerate() {
            if let Some(label) = *e {
                if label >= n {
                    return Err(MetricViolation::BadEnumeration { index, label });
                }
            }
        }
        Ok(CountableMetricSpace { labels, dist, enumeration })
    }

    /// Builds a space from a symmetric distance function on `n` unnamed points.
    pub fn from_fn(n: usize, d: impl Fn(usize, usize) -> Dyadic) -> Result<Self, MetricViolation> {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let dist = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        CountableMetricSpace::new(labels, dist, None)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn d(&self, i: usize, j: usize) -> &Dyadic {
        &self.dist[i][j]
    }

    pub fn enumeration(&self) -> &[Option<usize>] {
        &self.enumeration
    }

    /// The point enumerated at `n`, if any.
    pub fn enumerated(&self, n: usize) -> Option<usize> {
        self.enumeration.get(n).copied().flatten()
    }

    pub fn with_enumeration(&self, enumeration: Vec<Option<usize>>) -> Result<Self, MetricViolation> {
        for (index, e) in enumeration.iter().enumerate() {
            if let Some(label) = *e {
                if label >= self.len() {
                    return Err(MetricViolation::BadEnumeration { index, label });
                }
            }
        }
        Ok(CountableMetricSpace { labels: self.labels.clone(), dist: self.dist.clone(), enumeration })
    }
}

impl fmt::Debug for CountableMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountableMetricSpace")
            .field("labels", &self.labels)
            .field("enumeration", &self.enumeration)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::dy;

    fn space(rows: &[&[u64]]) -> Result<CountableMetricSpace, MetricViolation> {
        let n = rows.len();
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let dist = rows.iter().map(|r| r.iter().map(|&v| dy(v, 0)).collect()).collect();
        CountableMetricSpace::new(labels, dist, None)
    }

    #[test]
    fn validation() {
        assert!(space(&[&[0, 2], &[2, 0]]).is_ok());
        assert_eq!(space(&[&[0, 2], &[1, 0]]), Err(MetricViolation::Asymmetric { i: 0, j: 1 }));
        assert_eq!(space(&[&[1, 2], &[2, 0]]), Err(MetricViolation::NonzeroDiagonal { i: 0 }));
        assert_eq!(space(&[&[0, 0], &[0, 0]]), Err(MetricViolation::ZeroOffDiagonal { i: 0, j: 1 }));
        let tri = space(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]]).unwrap_err();
        assert_eq!(tri, MetricViolation::Triangle { i: 0, j: 2, k: 1 });
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(tri.describe(&labels), "triangle inequality fails: d(a, c) > d(a, b) + d(b, c)");
    }

    #[test]
    fn enumeration_gaps() {
        let s = space(&[&[0, 2], &[2, 0]]).unwrap();
        let s = s.with_enumeration(vec![Some(1), None, Some(0), Some(1)]).unwrap();
        assert_eq!(s.enumerated(0), Some(1));
        assert_eq!(s.enumerated(1), None);
        assert_eq!(s.enumerated(9), None);
        assert!(s.with_enumeration(vec![Some(2)]).is_err());
    }
}
