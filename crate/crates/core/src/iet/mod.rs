//! Interval exchange transformations on `[0, 1)` with exact endpoints.
//!
//! Intervals are half-open `X_i = [a_i, a_{i+1})` and are numbered from 0
//! internally; the permutation is given 1-based, as `(sigma(1), ..., sigma(k))`
//! listing which interval lands in each image slot from left to right.
//!
//! A flipped interval is reflected: `T(x) = y_lo + a_{i+1} - x` on the open
//! interval `(a_i, a_{i+1})`, and the left endpoint `a_i` itself is sent to
//! `y_lo`. This keeps `T` a bijection of `[0, 1)` whose images are again
//! half-open.

mod coding;
mod config;
pub(crate) mod cylinder;
mod regularity;

pub use coding::{
    coding_with_sets, essential_codings, mechanical_word, natural_coding_word, CodingConfig,
};
pub use config::{parse_config, render_config, IetConfig};
pub use cylinder::{cylinder, cylinders};
pub use regularity::{
    check_idoc, check_regular, RegularityReport, RegularityVerdict, RegularityWitness,
};

use std::cmp::Ordering;

use thiserror::Error;

use crate::numerics::{ExactScalar, Interval, NumericsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IetError {
    #[error("an interval exchange needs at least one interval")]
    Empty,
    #[error("lengths, permutation and flips disagree on k ({0}, {1}, {2})")]
    ArityMismatch(usize, usize, usize),
    #[error("length of interval {0} is not positive")]
    NonPositiveLength(usize),
    #[error("lengths sum to {0}, not 1")]
    NonUnitTotal(String),
    #[error("permutation is not a bijection of 1..={0}")]
    InvalidPermutation(usize),
    #[error("interval index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("interval {0} is flipped; displacement is only defined on preserved intervals")]
    FlippedInterval(usize),
    #[error("point {0} is outside [0, 1)")]
    OutsideDomain(String),
    #[error("orbit point {point} at step {step} lies on a characteristic set boundary; use essential codings")]
    BoundaryHit { step: usize, point: String },
    #[error("characteristic sets must be disjoint and cover [0, 1): {0}")]
    BadPartition(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("invalid mechanical word parameters: {0}")]
    MechanicalDomain(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// An interval exchange transformation with its derived endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IetSpec {
    lengths: Vec<ExactScalar>,
    /// `perm[j]`: domain interval occupying image slot `j`.
    perm: Vec<usize>,
    /// `slot[i]`: image slot of domain interval `i`.
    slot: Vec<usize>,
    flips: Vec<bool>,
    radicand: u64,
    /// `a_1 .. a_{k+1}`
    left: Vec<ExactScalar>,
    /// left ends of image slots, plus 1 at the end
    image_left: Vec<ExactScalar>,
    displacement: Vec<ExactScalar>,
}

impl IetSpec {
    /// Builds an IET from lengths, a 1-based permutation and flip flags.
    pub fn new(
        lengths: Vec<ExactScalar>,
        permutation: &[usize],
        flips: Vec<bool>,
    ) -> Result<Self, IetError> {
        let k = lengths.len();
        if k == 0 {
            return Err(IetError::Empty);
        }
        if permutation.len() != k || flips.len() != k {
            return Err(IetError::ArityMismatch(k, permutation.len(), flips.len()));
        }
        let mut radicand = 0;
        for (i, l) in lengths.iter().enumerate() {
            radicand = match (radicand, l.radicand()) {
                (0, d) | (d, 0) => d,
                (a, b) if a == b => a,
                (a, b) => return Err(NumericsError::MixedRadicals(a, b).into()),
            };
            if l.signum() != Ordering::Greater {
                return Err(IetError::NonPositiveLength(i + 1));
            }
        }
        let total = lengths.iter().fold(ExactScalar::zero(), |acc, l| acc + l);
        if total != ExactScalar::one() {
            return Err(IetError::NonUnitTotal(total.to_literal()));
        }
        let mut slot = vec![usize::MAX; k];
        let mut perm = Vec::with_capacity(k);
        for (j, &p) in permutation.iter().enumerate() {
            if p == 0 || p > k || slot[p - 1] != usize::MAX {
                return Err(IetError::InvalidPermutation(k));
            }
            slot[p - 1] = j;
            perm.push(p - 1);
        }

        let mut left = Vec::with_capacity(k + 1);
        let mut acc = ExactScalar::zero();
        left.push(acc.clone());
        for l in &lengths {
            acc = acc + l;
            left.push(acc.clone());
        }
        let mut image_left = Vec::with_capacity(k + 1);
        let mut acc = ExactScalar::zero();
        image_left.push(acc.clone());
        for &i in &perm {
            acc = acc + &lengths[i];
            image_left.push(acc.clone());
        }
        let displacement = (0..k).map(|i| &image_left[slot[i]] - &left[i]).collect();

        Ok(IetSpec {
            lengths,
            perm,
            slot,
            flips,
            radicand,
            left,
            image_left,
            displacement,
        })
    }

    pub fn k(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[ExactScalar] {
        &self.lengths
    }

    /// 1-based permutation as given to [`IetSpec::new`].
    pub fn permutation(&self) -> Vec<usize> {
        self.perm.iter().map(|&i| i + 1).collect()
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn is_oriented(&self) -> bool {
        self.flips.iter().all(|f| !f)
    }

    /// Square-free radicand shared by every length (`0` when all rational).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Left endpoints `a_1 = 0 < ... < a_{k+1} = 1`.
    pub fn endpoints(&self) -> &[ExactScalar] {
        &self.left
    }

    /// Domain interval `X_i` (0-based).
    pub fn interval(&self, i: usize) -> Interval {
        Interval::half_open(self.left[i].clone(), self.left[i + 1].clone()).expect("ordered")
    }

    /// Image `T(X_i)` (0-based), always half-open.
    pub fn image_interval(&self, i: usize) -> Interval {
        let j = self.slot[i];
        Interval::half_open(self.image_left[j].clone(), self.image_left[j + 1].clone())
            .expect("ordered")
    }

    /// Image slot of interval `i` (0-based).
    pub fn image_slot(&self, i: usize) -> usize {
        self.slot[i]
    }

    /// Translation amount on `X_i` (1-based `i`), for preserved intervals.
    pub fn displacement(&self, i: usize) -> Result<ExactScalar, IetError> {
        if i == 0 || i > self.k() {
            return Err(IetError::IndexOutOfRange(i));
        }
        if self.flips[i - 1] {
            return Err(IetError::FlippedInterval(i));
        }
        Ok(self.displacement[i - 1].clone())
    }

    pub(crate) fn check_domain(&self, x: &ExactScalar) -> Result<(), IetError> {
        let zero = ExactScalar::zero();
        if x.try_cmp(&zero)? == Ordering::Less || x.try_cmp(&ExactScalar::one())? != Ordering::Less
        {
            return Err(IetError::OutsideDomain(x.to_literal()));
        }
        self.compatible(x)
    }

    pub(crate) fn compatible(&self, x: &ExactScalar) -> Result<(), IetError> {
        if self.radicand != 0 && x.radicand() != 0 && x.radicand() != self.radicand {
            return Err(NumericsError::MixedRadicals(self.radicand, x.radicand()).into());
        }
        Ok(())
    }

    /// Index of the interval containing `x`, assuming `0 <= x < 1`.
    pub(crate) fn locate(&self, x: &ExactScalar) -> usize {
        // number of interior endpoints a_2..a_k that are <= x
        self.left[1..self.k()].partition_point(|a| a <= x)
    }

    /// Index of the interval containing `x - eps`, assuming `0 < x <= 1`.
    pub(crate) fn locate_left_of(&self, x: &ExactScalar) -> usize {
        self.left[1..self.k()].partition_point(|a| a < x)
    }

    /// Image slot containing `y`, assuming `0 <= y < 1`.
    fn locate_image(&self, y: &ExactScalar) -> usize {
        self.image_left[1..self.k()].partition_point(|a| a <= y)
    }

    /// The branch of `T` on interval `i`, evaluated at `x` (no endpoint rule).
    pub(crate) fn branch(&self, i: usize, x: &ExactScalar) -> ExactScalar {
        if self.flips[i] {
            &(&self.image_left[self.slot[i]] + &self.left[i + 1]) - x
        } else {
            x + &self.displacement[i]
        }
    }

    /// `y_lo(i) + a_{i+1}`: the reflection constant of a flipped interval.
    pub(crate) fn reflection_sum(&self, i: usize) -> ExactScalar {
        &self.image_left[self.slot[i]] + &self.left[i + 1]
    }

    pub(crate) fn apply_unchecked(&self, x: &ExactScalar) -> ExactScalar {
        let i = self.locate(x);
        if self.flips[i] && *x == self.left[i] {
            self.image_left[self.slot[i]].clone()
        } else {
            self.branch(i, x)
        }
    }

    pub(crate) fn apply_inverse_unchecked(&self, y: &ExactScalar) -> ExactScalar {
        let j = self.locate_image(y);
        let i = self.perm[j];
        if self.flips[i] {
            if *y == self.image_left[j] {
                self.left[i].clone()
            } else {
                &self.reflection_sum(i) - y
            }
        } else {
            y - &self.displacement[i]
        }
    }

    /// `T(x)`.
    pub fn apply(&self, x: &ExactScalar) -> Result<ExactScalar, IetError> {
        self.check_domain(x)?;
        Ok(self.apply_unchecked(x))
    }

    /// The unique `x` with `T(x) = y`.
    pub fn apply_inverse(&self, y: &ExactScalar) -> Result<ExactScalar, IetError> {
        self.check_domain(y)?;
        Ok(self.apply_inverse_unchecked(y))
    }

    /// `[x0, T(x0), ..., T^{n-1}(x0)]`.
    pub fn orbit(&self, x0: &ExactScalar, n: usize) -> Result<Vec<ExactScalar>, IetError> {
        self.check_domain(x0)?;
        let mut out = Vec::with_capacity(n);
        let mut x = x0.clone();
        for _ in 0..n {
            let next = self.apply_unchecked(&x);
            out.push(std::mem::replace(&mut x, next));
        }
        Ok(out)
    }

    /// Interval indices (0-based) visited by the orbit of `x0`.
    pub fn natural_coding(&self, x0: &ExactScalar, n: usize) -> Result<Vec<usize>, IetError> {
        self.check_domain(x0)?;
        let mut out = Vec::with_capacity(n);
        let mut x = x0.clone();
        for step in 0..n {
            let i = self.locate(&x);
            out.push(i);
            if step + 1 < n {
                x = if self.flips[i] && x == self.left[i] {
                    self.image_left[self.slot[i]].clone()
                } else {
                    self.branch(i, &x)
                };
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper for [`IetSpec::new`].
pub fn build_iet(
    lengths: Vec<ExactScalar>,
    permutation: &[usize],
    flips: Vec<bool>,
) -> Result<IetSpec, IetError> {
    IetSpec::new(lengths, permutation, flips)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn golden() -> ExactScalar {
        ExactScalar::make_quadratic(-1, 2, 1, 2, 5).unwrap()
    }

    pub(crate) fn golden_iet() -> IetSpec {
        let a = golden();
        IetSpec::new(
            vec![ExactScalar::one() - &a, a],
            &[2, 1],
            vec![false, false],
        )
        .unwrap()
    }

    fn q(p: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(p, d).unwrap()
    }

    #[test]
    fn golden_two_iet_is_rotation() {
        let t = golden_iet();
        assert_eq!(t.displacement(1).unwrap(), golden());
        assert_eq!(t.displacement(2).unwrap(), -(ExactScalar::one() - golden()));
        assert_eq!(t.apply(&ExactScalar::zero()).unwrap(), golden());
        assert_eq!(t.apply_inverse(&golden()).unwrap(), ExactScalar::zero());
    }

    #[test]
    fn identity_one_iet() {
        let t = IetSpec::new(vec![ExactScalar::one()], &[1], vec![false]).unwrap();
        assert_eq!(t.displacement(1).unwrap(), ExactScalar::zero());
        assert_eq!(t.apply(&q(1, 3)).unwrap(), q(1, 3));
        assert_eq!(t.apply_inverse(&q(2, 7)).unwrap(), q(2, 7));
        assert_eq!(t.orbit(&q(1, 5), 3).unwrap(), vec![q(1, 5); 3]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            IetSpec::new(vec![q(1, 2), q(1, 3)], &[2, 1], vec![false; 2]),
            Err(IetError::NonUnitTotal(_))
        ));
        assert_eq!(
            IetSpec::new(vec![q(3, 2), q(-1, 2)], &[2, 1], vec![false; 2]),
            Err(IetError::NonPositiveLength(2))
        );
        assert_eq!(
            IetSpec::new(vec![q(1, 2), q(1, 2)], &[1, 1], vec![false; 2]),
            Err(IetError::InvalidPermutation(2))
        );
        assert_eq!(
            IetSpec::new(vec![q(1, 2), q(1, 2)], &[1, 2], vec![false]),
            Err(IetError::ArityMismatch(2, 2, 1))
        );
        let mixed = IetSpec::new(
            vec![
                ExactScalar::make_quadratic(0, 1, 1, 4, 2).unwrap(),
                ExactScalar::make_quadratic(0, 1, 1, 4, 3).unwrap(),
                ExactScalar::make_quadratic(1, 1, -1, 4, 2).unwrap(),
            ],
            &[1, 2, 3],
            vec![false; 3],
        );
        assert!(matches!(
            mixed,
            Err(IetError::Numerics(NumericsError::MixedRadicals(2, 3)))
        ));
    }

    #[test]
    fn displacement_errors() {
        let t = golden_iet();
        assert_eq!(t.displacement(3), Err(IetError::IndexOutOfRange(3)));
        let f = IetSpec::new(vec![ExactScalar::one()], &[1], vec![true]).unwrap();
        assert_eq!(f.displacement(1), Err(IetError::FlippedInterval(1)));
    }

    #[test]
    fn flipped_single_interval_reflects() {
        let t = IetSpec::new(vec![ExactScalar::one()], &[1], vec![true]).unwrap();
        assert_eq!(t.apply(&q(1, 4)).unwrap(), q(3, 4));
        assert_eq!(t.apply(&ExactScalar::zero()).unwrap(), ExactScalar::zero());
        assert_eq!(t.apply_inverse(&q(3, 4)).unwrap(), q(1, 4));
    }

    #[test]
    fn golden_orbit() {
        let t = golden_iet();
        let a = golden();
        assert_eq!(
            t.orbit(&ExactScalar::zero(), 3).unwrap(),
            vec![
                ExactScalar::zero(),
                a.clone(),
                &(&a + &a) - &ExactScalar::one()
            ]
        );
        assert!(t.orbit(&ExactScalar::zero(), 0).unwrap().is_empty());
        assert!(t.apply(&ExactScalar::one()).is_err());
        assert!(t.apply(&q(-1, 9)).is_err());
    }
}
