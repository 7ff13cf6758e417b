//! Closed intervals of nonnegative dyadics with outward-rounded arithmetic.

use std::fmt;

use crate::dyadic::Dyadic;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    /// `[center − radius, center + radius]`, clamped at zero.
    pub fn around(center: &Dyadic, radius: &Dyadic) -> Self {
        Interval { lo: center.saturating_sub(radius), hi: center + radius }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.abs_diff(&self.lo)
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Enclosure of `{|x − y| : x ∈ self, y ∈ other}`.
    pub fn dis(&self, other: &Interval) -> Interval {
        let lo = self.lo.saturating_sub(&other.hi).max(other.lo.saturating_sub(&self.hi));
        let hi = self.hi.saturating_sub(&other.lo).max(other.hi.saturating_sub(&self.lo));
        Interval { lo, hi }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.clone().max(other.lo.clone()), hi: self.hi.clone().max(other.hi.clone()) }
    }

    pub fn scale(&self, lambda: &Dyadic) -> Interval {
        Interval { lo: &self.lo * lambda, hi: &self.hi * lambda }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
