use std::cmp::Ordering;

use super::{IetError, IetSpec};
use crate::numerics::{ExactScalar, Interval, IntervalSet};
use crate::words::{Alphabet, Word};

/// Characteristic sets `U_1..U_m`, each tagged with a letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingConfig {
    letters: Vec<char>,
    sets: Vec<IntervalSet>,
}

impl CodingConfig {
    /// Checks that the sets are pairwise disjoint and cover `[0, 1)`.
    pub fn new(sets: Vec<(char, IntervalSet)>) -> Result<Self, IetError> {
        if sets.is_empty() {
            return Err(IetError::BadPartition("no sets".into()));
        }
        let (letters, sets): (Vec<char>, Vec<IntervalSet>) = sets.into_iter().unzip();
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return Err(IetError::BadPartition(format!("letter {a:?} repeated")));
            }
        }
        for i in 0..sets.len() {
            for j in 0..i {
                if !sets[i].intersect(&sets[j]).is_empty() {
                    return Err(IetError::BadPartition(format!(
                        "sets {:?} and {:?} overlap",
                        letters[j], letters[i]
                    )));
                }
            }
        }
        let union = sets
            .iter()
            .fold(IntervalSet::empty(), |acc, s| acc.union(s));
        let unit = IntervalSet::from_interval(
            Interval::half_open(ExactScalar::zero(), ExactScalar::one()).expect("ordered"),
        );
        if union != unit {
            return Err(IetError::BadPartition(format!(
                "union is {union}, not [0,1)"
            )));
        }
        Ok(CodingConfig { letters, sets })
    }

    /// `U_i = X_i`, tagged with `letters[i]`.
    pub fn natural(t: &IetSpec, letters: &[char]) -> Result<Self, IetError> {
        if letters.len() != t.k() {
            return Err(IetError::BadPartition(format!(
                "{} letters for {} intervals",
                letters.len(),
                t.k()
            )));
        }
        Self::new(
            letters
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, IntervalSet::from_interval(t.interval(i))))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    pub fn set_of(&self, letter: char) -> Option<&IntervalSet> {
        self.letters
            .iter()
            .position(|&c| c == letter)
            .map(|i| &self.sets[i])
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.letters.iter().copied()).expect("nonempty and distinct")
    }

    fn letter_at(&self, x: &ExactScalar) -> char {
        let i = self
            .sets
            .iter()
            .position(|s| s.contains(x))
            .expect("sets cover [0,1)");
        self.letters[i]
    }

    fn letter_beside(&self, x: &ExactScalar, side: Side) -> char {
        let i = self
            .sets
            .iter()
            .position(|s| {
                s.parts().iter().any(|p| match side {
                    Side::Right => p.contains_right_of(x),
                    Side::Left => p.contains_left_of(x),
                })
            })
            .expect("sets cover [0,1)");
        self.letters[i]
    }

    /// True when `x` is an endpoint of some set other than `0` or `1`.
    fn on_boundary(&self, x: &ExactScalar) -> bool {
        x.signum() == Ordering::Greater
            && *x != ExactScalar::one()
            && self.sets.iter().any(|s| s.endpoints().any(|e| e == x))
    }
}

/// Natural coding rendered with `letters[i]` for `X_i`.
pub fn natural_coding_word(
    t: &IetSpec,
    letters: &[char],
    x0: &ExactScalar,
    n: usize,
) -> Result<Word, IetError> {
    if letters.len() != t.k() {
        return Err(IetError::BadPartition(format!(
            "{} letters for {} intervals",
            letters.len(),
            t.k()
        )));
    }
    let text: String = t
        .natural_coding(x0, n)?
        .into_iter()
        .map(|i| letters[i])
        .collect();
    let alphabet = Alphabet::new(letters.iter().copied())
        .map_err(|e| IetError::BadPartition(e.to_string()))?;
    Ok(Word::with_alphabet(&text, alphabet).expect("letters come from the alphabet"))
}

/// Coding of the orbit of `x0` by the characteristic sets. Fails if an orbit
/// point lands on an interior set boundary.
pub fn coding_with_sets(
    t: &IetSpec,
    config: &CodingConfig,
    x0: &ExactScalar,
    n: usize,
) -> Result<Word, IetError> {
    let mut text = String::with_capacity(n);
    for (step, x) in t.orbit(x0, n)?.iter().enumerate() {
        if config.on_boundary(x) {
            return Err(IetError::BoundaryHit {
                step,
                point: x.to_literal(),
            });
        }
        text.push(config.letter_at(x));
    }
    Ok(Word::with_alphabet(&text, config.alphabet()).expect("letters come from the alphabet"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Coding of `x0 + eps` (or `x0 - eps`), tracked symbolically. `x` stays in
/// `[0, 1]`: a left limit may sit at 1.
fn one_sided(t: &IetSpec, config: &CodingConfig, x0: &ExactScalar, side: Side, n: usize) -> String {
    let mut out = String::with_capacity(n);
    let mut x = x0.clone();
    let mut side = side;
    for step in 0..n {
        out.push(config.letter_beside(&x, side));
        if step + 1 == n {
            break;
        }
        let i = match side {
            Side::Right => t.locate(&x),
            Side::Left => t.locate_left_of(&x),
        };
        x = t.branch(i, &x);
        if t.flips()[i] {
            side = match side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
        }
    }
    out
}

/// The one or two words coding every small one-sided neighbourhood of `x0`,
/// sorted.
pub fn essential_codings(
    t: &IetSpec,
    config: &CodingConfig,
    x0: &ExactScalar,
    n: usize,
) -> Result<Vec<String>, IetError> {
    t.check_domain(x0)?;
    let mut out = vec![one_sided(t, config, x0, Side::Right, n)];
    if x0.signum() == Ordering::Greater {
        out.push(one_sided(t, config, x0, Side::Left, n));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `w_m = a` iff `x0 + m * alpha mod 1` lies in `[0, u_len)`, computed on the
/// rotation 2-IET.
pub fn mechanical_word(
    alpha: &ExactScalar,
    x0: &ExactScalar,
    u_len: &ExactScalar,
    n: usize,
) -> Result<Word, IetError> {
    let zero = ExactScalar::zero();
    let one = ExactScalar::one();
    if alpha.try_cmp(&zero)? != Ordering::Greater || alpha.try_cmp(&one)? != Ordering::Less {
        return Err(IetError::MechanicalDomain(format!(
            "alpha = {alpha} not in (0,1)"
        )));
    }
    if u_len.try_cmp(&zero)? != Ordering::Greater || u_len.try_cmp(&one)? == Ordering::Greater {
        return Err(IetError::MechanicalDomain(format!(
            "|U| = {u_len} not in (0,1]"
        )));
    }
    let t = IetSpec::new(
        vec![&one - alpha, alpha.clone()],
        &[2, 1],
        vec![false, false],
    )?;
    t.compatible(u_len)?;
    let text: String = t
        .orbit(x0, n)?
        .iter()
        .map(|x| if x < u_len { 'a' } else { 'b' })
        .collect();
    let alphabet = Alphabet::new("ab".chars()).expect("two letters");
    Ok(Word::with_alphabet(&text, alphabet).expect("letters come from the alphabet"))
}
