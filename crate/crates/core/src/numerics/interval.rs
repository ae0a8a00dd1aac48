use std::cmp::Ordering;
use std::fmt;

use super::{ExactScalar, NumericsError};

/// An interval of the real line with exact endpoints.
///
/// A degenerate `[x, x]` is a single point; any other `lo == hi` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(
        lo: ExactScalar,
        hi: ExactScalar,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Result<Self, NumericsError> {
        if lo.try_cmp(&hi)? == Ordering::Greater {
            return Err(NumericsError::InvertedInterval);
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// `[lo, hi)`
    pub fn half_open(lo: ExactScalar, hi: ExactScalar) -> Result<Self, NumericsError> {
        Self::new(lo, hi, true, false)
    }

    pub fn point(x: ExactScalar) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.lo_closed && self.hi_closed)
    }

    pub fn length(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        let lo_ok = match self.lo.partial_cmp(x) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.lo_closed,
            _ => false,
        };
        let hi_ok = match x.partial_cmp(&self.hi) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.hi_closed,
            _ => false,
        };
        lo_ok && hi_ok
    }

    /// Membership of `x + eps` for every small enough positive `eps`.
    pub fn contains_right_of(&self, x: &ExactScalar) -> bool {
        self.lo <= *x && *x < self.hi
    }

    /// Membership of `x - eps` for every small enough positive `eps`.
    pub fn contains_left_of(&self, x: &ExactScalar) -> bool {
        self.lo < *x && *x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo)? {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi)? {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        if lo > hi {
            return None;
        }
        let out = Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        (!out.is_empty()).then_some(out)
    }

    /// Image under `x -> x + shift`.
    pub fn translate(&self, shift: &ExactScalar) -> Interval {
        Interval {
            lo: &self.lo + shift,
            hi: &self.hi + shift,
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    /// Image under `x -> center_sum - x`.
    pub fn reflect(&self, center_sum: &ExactScalar) -> Interval {
        Interval {
            lo: center_sum - &self.hi,
            hi: center_sum - &self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    pub fn midpoint(&self) -> ExactScalar {
        (&self.lo + &self.hi) * ExactScalar::ratio(1, 2).expect("nonzero")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of pairwise disjoint intervals, kept sorted and merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(i: Interval) -> Self {
        Self::from_parts(vec![i])
    }

    /// Normalises an arbitrary list: drops empties, sorts, merges overlaps
    /// and touching pieces whose union is an interval.
    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.retain(|p| !p.is_empty());
        parts.sort_by(|a, b| {
            a.lo.partial_cmp(&b.lo)
                .unwrap_or(Ordering::Equal)
                .then_with(|| b.lo_closed.cmp(&a.lo_closed))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = merged.last_mut() {
                let touches = match last.hi.partial_cmp(&p.lo) {
                    Some(Ordering::Greater) => true,
                    Some(Ordering::Equal) => last.hi_closed || p.lo_closed,
                    _ => false,
                };
                if touches {
                    match p.hi.partial_cmp(&last.hi) {
                        Some(Ordering::Greater) => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Some(Ordering::Equal) => last.hi_closed |= p.hi_closed,
                        _ => {}
                    }
                    continue;
                }
            }
            merged.push(p);
        }
        IntervalSet { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn measure(&self) -> ExactScalar {
        self.parts
            .iter()
            .fold(ExactScalar::zero(), |acc, p| acc + p.length())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        IntervalSet::from_parts(out)
    }

    pub fn intersect_interval(&self, other: &Interval) -> IntervalSet {
        IntervalSet::from_parts(
            self.parts
                .iter()
                .filter_map(|a| a.intersect(other))
                .collect(),
        )
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        IntervalSet::from_parts(all)
    }

    /// Interior boundary points (endpoints of the pieces).
    pub fn endpoints(&self) -> impl Iterator<Item = &ExactScalar> {
        self.parts.iter().flat_map(|p| [&p.lo, &p.hi])
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(p, d).unwrap()
    }

    #[test]
    fn emptiness_and_points() {
        let e = Interval::half_open(q(1, 2), q(1, 2)).unwrap();
        assert!(e.is_empty());
        assert!(!Interval::point(q(1, 2)).is_empty());
        assert!(Interval::half_open(q(1, 2), q(1, 3)).is_err());
    }

    #[test]
    fn half_open_membership() {
        let i = Interval::half_open(q(0, 1), q(1, 2)).unwrap();
        assert!(i.contains(&q(0, 1)));
        assert!(!i.contains(&q(1, 2)));
        assert!(i.contains_left_of(&q(1, 2)));
        assert!(!i.contains_right_of(&q(1, 2)));
    }

    #[test]
    fn touching_pieces_merge() {
        let a = Interval::half_open(q(0, 1), q(1, 3)).unwrap();
        let b = Interval::half_open(q(1, 3), q(1, 2)).unwrap();
        let set = IntervalSet::from_parts(vec![b, a]);
        assert_eq!(set.parts().len(), 1);
        assert_eq!(set.measure(), q(1, 2));
        // (0,1/3) and (1/3,1/2) leave the point 1/3 out
        let c = Interval::new(q(0, 1), q(1, 3), false, false).unwrap();
        let d = Interval::new(q(1, 3), q(1, 2), false, false).unwrap();
        assert_eq!(IntervalSet::from_parts(vec![c, d]).parts().len(), 2);
    }

    #[test]
    fn reflection_swaps_closedness() {
        let i = Interval::half_open(q(0, 1), q(1, 4)).unwrap();
        let r = i.reflect(&q(1, 1));
        assert_eq!(r.lo, q(3, 4));
        assert_eq!(r.hi, q(1, 1));
        assert!(!r.lo_closed && r.hi_closed);
    }
}
