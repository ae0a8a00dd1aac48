use std::collections::HashMap;
use std::fmt;

use super::{IetError, IetSpec};
use crate::numerics::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityVerdict {
    /// No exact coincidence up to the reported depth.
    NoCollisionUpToDepth,
    Collision,
}

/// Exact coincidence found by a regularity check. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityWitness {
    /// `T^n(a_i) = a_j`.
    Forward { i: usize, n: usize, j: usize },
    /// `T^{-m}(a_i) = T^{-n}(a_j)` with `(m, i) != (n, j)`.
    Backward {
        i: usize,
        m: usize,
        j: usize,
        n: usize,
    },
}

impl fmt::Display for RegularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularityWitness::Forward { i, n, j } => write!(f, "T^{n}(a_{i}) = a_{j}"),
            RegularityWitness::Backward { i, m, j, n } => {
                write!(f, "T^-{m}(a_{i}) = T^-{n}(a_{j})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub depth: usize,
    pub verdict: RegularityVerdict,
    pub witness: Option<RegularityWitness>,
}

impl RegularityReport {
    pub fn is_clean(&self) -> bool {
        self.verdict == RegularityVerdict::NoCollisionUpToDepth
    }

    fn clean(depth: usize) -> Self {
        RegularityReport {
            depth,
            verdict: RegularityVerdict::NoCollisionUpToDepth,
            witness: None,
        }
    }

    fn hit(depth: usize, witness: RegularityWitness) -> Self {
        RegularityReport {
            depth,
            verdict: RegularityVerdict::Collision,
            witness: Some(witness),
        }
    }
}

/// First `T^n(a_i) = a_j` with `1 <= n <= depth`, ordered by `n`, then `i`.
/// Sources are all left endpoints `a_1..a_k`; targets are the interior
/// endpoints `a_2..a_k` (every IET has some `T(x) = 0`).
pub fn check_regular(t: &IetSpec, depth: usize) -> Result<RegularityReport, IetError> {
    if depth == 0 {
        return Err(IetError::ZeroDepth);
    }
    let k = t.k();
    let ends = t.endpoints();
    let targets: HashMap<&ExactScalar, usize> = (1..k).map(|j| (&ends[j], j)).collect();
    let mut points: Vec<ExactScalar> = ends[..k].to_vec();
    for n in 1..=depth {
        for p in points.iter_mut() {
            *p = t.apply_unchecked(p);
        }
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = targets.get(p) {
                return Ok(RegularityReport::hit(
                    depth,
                    RegularityWitness::Forward {
                        i: i + 1,
                        n,
                        j: j + 1,
                    },
                ));
            }
        }
    }
    Ok(RegularityReport::clean(depth))
}

/// Looks for any coincidence among the backward orbits
/// `T^{-m}(a_i)`, `0 <= m <= depth`, of the interior discontinuities.
pub fn check_idoc(t: &IetSpec, depth: usize) -> Result<RegularityReport, IetError> {
    if depth == 0 {
        return Err(IetError::ZeroDepth);
    }
    let k = t.k();
    let mut seen: HashMap<ExactScalar, (usize, usize)> = HashMap::new();
    let mut points: Vec<ExactScalar> = t.endpoints()[1..k].to_vec();
    for m in 0..=depth {
        for (idx, p) in points.iter_mut().enumerate() {
            if m > 0 {
                *p = t.apply_inverse_unchecked(p);
            }
            let i = idx + 2;
            if let Some(&(j, n)) = seen.get(p) {
                return Ok(RegularityReport::hit(
                    depth,
                    RegularityWitness::Backward { i, m, j, n },
                ));
            }
            seen.insert(p.clone(), (i, m));
        }
    }
    Ok(RegularityReport::clean(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::tests::golden_iet;

    fn rotation(p: i64, q: i64) -> IetSpec {
        let a = ExactScalar::ratio(p, q).unwrap();
        IetSpec::new(
            vec![a.clone(), ExactScalar::one() - a],
            &[2, 1],
            vec![false, false],
        )
        .unwrap()
    }

    #[test]
    fn rational_rotation_collides() {
        let r = check_regular(&rotation(1, 2), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Collision);
        assert_eq!(
            r.witness,
            Some(RegularityWitness::Forward { i: 1, n: 1, j: 2 })
        );
    }

    #[test]
    fn golden_rotation_is_regular() {
        assert!(check_regular(&golden_iet(), 1000).unwrap().is_clean());
        assert!(check_idoc(&golden_iet(), 500).unwrap().is_clean());
    }

    #[test]
    fn zero_depth_rejected() {
        assert_eq!(check_regular(&golden_iet(), 0), Err(IetError::ZeroDepth));
        assert_eq!(check_idoc(&golden_iet(), 0), Err(IetError::ZeroDepth));
    }

    #[test]
    fn period_three_discontinuity() {
        let r = check_idoc(&rotation(1, 3), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Collision);
        match r.witness.unwrap() {
            RegularityWitness::Backward { i, m, j, n } => {
                assert_eq!((i, j, n), (2, 2, 0));
                assert!(m <= 3);
            }
            w => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn identity_has_no_discontinuities() {
        let id = IetSpec::new(vec![ExactScalar::one()], &[1], vec![false]).unwrap();
        assert!(check_idoc(&id, 5).unwrap().is_clean());
    }
}
