//! Finite unions of intervals on the real line, used for consistent-parameter
//! regions and version spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Endpoints closer than this are treated as touching.
pub const TOUCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi, lo_closed, hi_closed })
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        (x > self.lo || (self.lo_closed && x == self.lo)) && (x < self.hi || (self.hi_closed && x == self.hi))
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.total_cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.total_cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi, self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi, other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        (lo < hi).then_some(Interval { lo, hi, lo_closed, hi_closed })
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Sorted, disjoint intervals; touching neighbours are merged.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn from_interval(iv: Interval) -> Self {
        IntervalSet { intervals: vec![iv] }
    }

    pub fn from_intervals(mut v: Vec<Interval>) -> Self {
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi + TOUCH_TOL => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    } else if iv.hi == last.hi {
                        last.hi_closed |= iv.hi_closed;
                    }
                    if iv.lo == last.lo {
                        last.lo_closed |= iv.lo_closed;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// The longest member; the leftmost one on ties.
    pub fn widest(&self) -> Option<&Interval> {
        self.intervals
            .iter()
            .reduce(|best, iv| if iv.len() > best.len() { iv } else { best })
    }

    /// `(min lo, max hi)` over all members.
    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.lo, self.intervals.last()?.hi))
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// Set inclusion up to [`TOUCH_TOL`] at endpoints.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intervals.iter().all(|iv| {
            other
                .intervals
                .iter()
                .any(|o| o.lo <= iv.lo + TOUCH_TOL && iv.hi <= o.hi + TOUCH_TOL)
        })
    }
}

impl std::fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64, lc: bool, hc: bool) -> Interval {
        Interval::new(lo, hi, lc, hc).unwrap()
    }

    #[test]
    fn rejects_degenerate() {
        assert!(Interval::open(0.5, 0.5).is_err());
        assert!(Interval::open(0.6, 0.5).is_err());
    }

    #[test]
    fn merges_touching_and_overlapping() {
        let s = IntervalSet::from_intervals(vec![
            iv(0.5, 0.7, false, true),
            iv(0.1, 0.2, true, false),
            iv(0.7, 0.9, false, false),
            iv(0.15, 0.3, false, false),
        ]);
        assert_eq!(s.intervals(), &[iv(0.1, 0.3, true, false), iv(0.5, 0.9, false, false)]);
        assert!((s.total_length() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn intersection_keeps_closedness() {
        let a = IntervalSet::from_interval(iv(0.25, 1.0, true, false));
        let b = IntervalSet::from_interval(iv(0.0, 0.75, false, false));
        let c = a.intersect(&b);
        assert_eq!(c.intervals(), &[iv(0.25, 0.75, true, false)]);
        assert!(c.contains(0.25) && !c.contains(0.75));
        assert!(c.is_subset_of(&a) && c.is_subset_of(&b));
        assert!(!a.is_subset_of(&c));
    }

    #[test]
    fn disjoint_intersection_is_empty() {
        let a = IntervalSet::from_interval(iv(0.0, 0.25, false, false));
        let b = IntervalSet::from_interval(iv(0.75, 1.0, true, false));
        assert!(a.intersect(&b).is_empty());
    }

    #[test]
    fn widest_prefers_leftmost_on_ties() {
        let s = IntervalSet::from_intervals(vec![iv(0.0, 0.1, false, false), iv(0.5, 0.6, false, false)]);
        assert_eq!(s.widest().unwrap().lo, 0.0);
        assert_eq!(s.hull(), Some((0.0, 0.6)));
    }
}
