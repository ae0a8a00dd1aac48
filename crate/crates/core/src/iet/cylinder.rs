use super::{CodingConfig, IetError, IetSpec};
use crate::numerics::{Interval, IntervalSet};

/// `T^{-1}(set)`, built branch by branch.
pub(crate) fn preimage(t: &IetSpec, set: &IntervalSet) -> IntervalSet {
    let mut parts = Vec::new();
    for i in 0..t.k() {
        let image = t.image_interval(i);
        if t.flips()[i] {
            // open part reflects; the image's left end pulls back to a_i
            let open = Interval {
                lo_closed: false,
                ..image.clone()
            };
            let sum = t.reflection_sum(i);
            for piece in set.intersect_interval(&open).parts() {
                parts.push(piece.reflect(&sum));
            }
            if set.contains(&image.lo) {
                parts.push(Interval::point(t.endpoints()[i].clone()));
            }
        } else {
            let back = -t.displacement[i].clone();
            for piece in set.intersect_interval(&image).parts() {
                parts.push(piece.translate(&back));
            }
        }
    }
    IntervalSet::from_parts(parts)
}

/// `T(set)`, the forward counterpart of [`preimage`].
pub(crate) fn image(t: &IetSpec, set: &IntervalSet) -> IntervalSet {
    let mut parts = Vec::new();
    for i in 0..t.k() {
        let domain = t.interval(i);
        if t.flips()[i] {
            let open = Interval {
                lo_closed: false,
                ..domain.clone()
            };
            let sum = t.reflection_sum(i);
            for piece in set.intersect_interval(&open).parts() {
                parts.push(piece.reflect(&sum));
            }
            if set.contains(&domain.lo) {
                parts.push(Interval::point(t.image_interval(i).lo));
            }
        } else {
            for piece in set.intersect_interval(&domain).parts() {
                parts.push(piece.translate(&t.displacement[i]));
            }
        }
    }
    IntervalSet::from_parts(parts)
}

/// Points whose coding by `config` starts with `w`:
/// `U_{w_0} ∩ T^{-1}(U_{w_1}) ∩ ... ∩ T^{-(n-1)}(U_{w_{n-1}})`.
pub fn cylinder(t: &IetSpec, config: &CodingConfig, w: &str) -> Result<IntervalSet, IetError> {
    let letters: Vec<char> = w.chars().collect();
    let Some((&last, rest)) = letters.split_last() else {
        return Err(IetError::BadPartition("empty cylinder word".into()));
    };
    let set_of = |c: char| config.set_of(c).ok_or(IetError::UnknownLetter(c));
    let mut acc = set_of(last)?.clone();
    for &c in rest.iter().rev() {
        if acc.is_empty() {
            break;
        }
        acc = set_of(c)?.intersect(&preimage(t, &acc));
    }
    Ok(acc)
}

/// All nonempty cylinders of length `n >= 1`, in lexicographic word order.
pub fn cylinders(
    t: &IetSpec,
    config: &CodingConfig,
    n: usize,
) -> Result<Vec<(String, IntervalSet)>, IetError> {
    if n == 0 {
        return Err(IetError::ZeroDepth);
    }
    let mut level: Vec<(String, IntervalSet)> = config
        .letters()
        .iter()
        .zip(config.sets())
        .filter(|(_, s)| !s.is_empty())
        .map(|(&c, s)| (c.to_string(), s.clone()))
        .collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for (w, set) in &level {
            let back = preimage(t, set);
            for (&c, u) in config.letters().iter().zip(config.sets()) {
                let cyl = u.intersect(&back);
                if !cyl.is_empty() {
                    next.push((format!("{c}{w}"), cyl));
                }
            }
        }
        level = next;
    }
    level.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::natural_coding_word;
    use crate::iet::tests::golden_iet;
    use crate::numerics::ExactScalar;

    #[test]
    fn single_letter_is_its_set() {
        let t = golden_iet();
        let cfg = CodingConfig::natural(&t, &['1', '2']).unwrap();
        assert_eq!(cylinder(&t, &cfg, "2").unwrap(), cfg.sets()[1]);
    }

    #[test]
    fn forbidden_double_visit() {
        let t = golden_iet();
        let cfg = CodingConfig::natural(&t, &['1', '2']).unwrap();
        // X_1 is the short interval: two visits in a row are impossible
        assert!(cylinder(&t, &cfg, "11").unwrap().is_empty());
        assert!(!cylinder(&t, &cfg, "22").unwrap().is_empty());
        assert!(matches!(
            cylinder(&t, &cfg, "13"),
            Err(IetError::UnknownLetter('3'))
        ));
    }

    #[test]
    fn cylinders_partition_and_match_codings() {
        let t = golden_iet();
        let cfg = CodingConfig::natural(&t, &['1', '2']).unwrap();
        for n in 1..=8 {
            let cyls = cylinders(&t, &cfg, n).unwrap();
            assert_eq!(cyls.len(), n + 1);
            let total = cyls
                .iter()
                .fold(ExactScalar::zero(), |acc, (_, s)| acc + s.measure());
            assert_eq!(total, ExactScalar::one());
            for (w, set) in &cyls {
                assert_eq!(&cylinder(&t, &cfg, w).unwrap(), set);
                for piece in set.parts() {
                    let x = piece.midpoint();
                    assert_eq!(
                        &natural_coding_word(&t, &['1', '2'], &x, n)
                            .unwrap()
                            .to_string(),
                        w
                    );
                    let lo = &piece.lo;
                    if piece.lo_closed {
                        assert_eq!(
                            &natural_coding_word(&t, &['1', '2'], lo, n)
                                .unwrap()
                                .to_string(),
                            w
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn flipped_cylinders_cover() {
        let half = ExactScalar::ratio(1, 2).unwrap();
        let t = IetSpec::new(
            vec![
                ExactScalar::ratio(1, 3).unwrap(),
                ExactScalar::ratio(1, 6).unwrap(),
                half,
            ],
            &[3, 1, 2],
            vec![false, true, true],
        )
        .unwrap();
        let cfg = CodingConfig::natural(&t, &['a', 'b', 'c']).unwrap();
        let cyls = cylinders(&t, &cfg, 5).unwrap();
        let total = cyls
            .iter()
            .fold(ExactScalar::zero(), |acc, (_, s)| acc + s.measure());
        assert_eq!(total, ExactScalar::one());
        for (w, set) in &cyls {
            for piece in set.parts() {
                let x = if piece.lo == piece.hi {
                    piece.lo.clone()
                } else {
                    piece.midpoint()
                };
                assert_eq!(
                    &natural_coding_word(&t, &['a', 'b', 'c'], &x, 5)
                        .unwrap()
                        .to_string(),
                    w
                );
            }
        }
    }

    #[test]
    fn image_inverts_preimage_on_flipped_sets() {
        let t = IetSpec::new(
            vec![
                ExactScalar::ratio(1, 3).unwrap(),
                ExactScalar::ratio(1, 6).unwrap(),
                ExactScalar::ratio(1, 2).unwrap(),
            ],
            &[3, 1, 2],
            vec![false, true, true],
        )
        .unwrap();
        let cfg = CodingConfig::natural(&t, &['a', 'b', 'c']).unwrap();
        for (_, set) in cylinders(&t, &cfg, 4).unwrap() {
            assert_eq!(preimage(&t, &image(&t, &set)), set);
            assert_eq!(image(&t, &preimage(&t, &set)), set);
            // pointwise oracle on every piece end
            let img = image(&t, &set);
            for piece in set.parts() {
                if piece.lo_closed {
                    assert!(img.contains(&t.apply(&piece.lo).unwrap()));
                }
                assert!(img.contains(&t.apply(&piece.midpoint()).unwrap()));
            }
        }
    }
}
