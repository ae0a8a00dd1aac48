//! Inverse problem: a rational-length IET candidate for a finite word, and
//! a roundtrip check that regenerates the word from it.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::iet::cylinder::{image, preimage};
use crate::iet::{cylinders, natural_coding_word, CodingConfig, IetConfig, IetError, IetSpec};
use crate::numerics::{ExactScalar, IntervalSet};
use crate::rauzy::EvolutionReport;
use crate::words::{FactorSet, Symbol, Word, WordError};

/// Minimum prefix length per unit of depth for frequency estimates.
pub const SAMPLES_PER_DEPTH: usize = 100;

/// Largest alphabet whose order pairs are enumerated.
pub const MAX_ALPHABET: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("prefix of length {len} is too short for depth {depth} (needs {})", SAMPLES_PER_DEPTH * depth)]
    PrefixTooShort { len: usize, depth: usize },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("the evolution report is not an acceptance")]
    NotAccepted,
    #[error("alphabet of {0} letters is too large")]
    AlphabetTooLarge(usize),
    #[error("no letter order is consistent with the extension sets: {}", .0.join("; "))]
    NoConsistentOrder(Vec<String>),
    #[error("the candidate admits no cylinder for the first letter {0:?}")]
    EmptyCylinder(char),
    #[error("roundtrip length {n} is not in 1..={len}")]
    BadLength { n: usize, len: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Iet(#[from] IetError),
}

/// Sliding-window factor frequencies up to a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalMeasure {
    pub depth: usize,
    /// Occurrences over window count; each length sums to 1.
    pub weights: BTreeMap<String, BigRational>,
}

impl EmpiricalMeasure {
    pub fn weight(&self, w: &str) -> BigRational {
        self.weights
            .get(w)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Factors of length `n` with their weights, in lexicographic order.
    pub fn level(&self, n: usize) -> impl Iterator<Item = (&String, &BigRational)> {
        self.weights
            .iter()
            .filter(move |(w, _)| w.chars().count() == n)
    }
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn cylinder_measures(word: &Word, depth: usize) -> Result<EmpiricalMeasure, ReconstructError> {
    if depth == 0 {
        return Err(ReconstructError::ZeroDepth);
    }
    if word.len() < SAMPLES_PER_DEPTH * depth {
        return Err(ReconstructError::PrefixTooShort {
            len: word.len(),
            depth,
        });
    }
    let fs = FactorSet::new(word, depth)?;
    let mut weights = BTreeMap::new();
    for n in 1..=depth {
        let windows = word.len() - n + 1;
        for (w, count) in fs.level(n)? {
            weights.insert(w, ratio(count, windows));
        }
    }
    Ok(EmpiricalMeasure { depth, weights })
}

/// A reconstructed IET: interval `i` carries `letters[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub spec: IetSpec,
    pub letters: Vec<char>,
    /// Total variation between the candidate's cylinder measures and the
    /// empirical ones at the reconstruction depth.
    pub residual: BigRational,
}

impl Candidate {
    /// Config in the iet text format, starting the orbit at `x0`.
    pub fn config(&self, x0: ExactScalar) -> IetConfig {
        IetConfig {
            spec: self.spec.clone(),
            letters: self.letters.clone(),
            x0,
            sets: None,
        }
    }
}

/// `1/2 * sum |mu(w) - nu(w)|` over the length-`depth` cylinders.
fn total_variation(
    spec: &IetSpec,
    letters: &[char],
    measure: &EmpiricalMeasure,
) -> Result<BigRational, IetError> {
    let cfg = CodingConfig::natural(spec, letters)?;
    let mut model: BTreeMap<String, BigRational> = BTreeMap::new();
    for (w, set) in cylinders(spec, &cfg, measure.depth)? {
        // candidate lengths are rational
        model.insert(w, set.measure().rational_part().clone());
    }
    let keys: BTreeSet<&String> = model
        .keys()
        .chain(measure.level(measure.depth).map(|(w, _)| w))
        .collect();
    let sum = keys.into_iter().fold(BigRational::zero(), |acc, w| {
        let m = model.get(w).cloned().unwrap_or_else(BigRational::zero);
        acc + (m - measure.weight(w)).abs()
    });
    Ok(sum / BigInt::from(2))
}

/// Orders of the alphabet under which every listed set is contiguous.
fn interval_orders(letters: &[char], sets: &BTreeSet<Vec<Symbol>>) -> Vec<Vec<usize>> {
    (0..letters.len())
        .permutations(letters.len())
        .filter(|order| {
            let mut rank = vec![0; order.len()];
            for (r, &s) in order.iter().enumerate() {
                rank[s] = r;
            }
            sets.iter().all(|set| {
                let (lo, hi) = set
                    .iter()
                    .map(|&s| rank[usize::from(s)])
                    .minmax()
                    .into_option()
                    .expect("nonempty");
                hi - lo + 1 == set.len()
            })
        })
        .collect()
}

fn describe(fs: &FactorSet, side: &str, sets: &BTreeSet<Vec<Symbol>>) -> Vec<String> {
    sets.iter()
        .map(|s| {
            format!(
                "{side}={{{}}}",
                s.iter().map(|&x| fs.alphabet().letter(x)).join(",")
            )
        })
        .collect()
}

/// Candidate with its tie-break keys: length sequence, then the orders.
type Ranked = (Candidate, Vec<BigRational>, (Vec<usize>, Vec<usize>));

/// Candidate IET for `word`, which `report` must accept.
///
/// Lengths are the letter frequencies. Interval orders (`pi0`) keep every
/// right-extension set `D(w)`, `|w| <= depth`, contiguous; image orders
/// (`pi1`) do the same for left-extension sets `A(w)`. Flips are the first
/// letters of marked vertices in the accepted labeling. Among all order
/// pairs the smallest residual wins; exact ties go to the lexicographically
/// smallest length sequence, then the smallest orders.
pub fn reconstruct_iet(
    word: &Word,
    report: &EvolutionReport,
    depth: usize,
) -> Result<Candidate, ReconstructError> {
    if !report.is_accepted() {
        return Err(ReconstructError::NotAccepted);
    }
    let measure = cylinder_measures(word, depth)?;
    let letters = word.alphabet().letters().to_vec();
    if letters.len() > MAX_ALPHABET {
        return Err(ReconstructError::AlphabetTooLarge(letters.len()));
    }
    let fs = FactorSet::new(word, depth + 1)?;
    let mut right = BTreeSet::new();
    let mut left = BTreeSet::new();
    for n in 0..=depth {
        for id in 0..fs.complexity(n)? as u32 {
            for (set, into) in [
                (fs.right_extensions(n, id), &mut right),
                (fs.left_extensions(n, id), &mut left),
            ] {
                if set.len() > 1 {
                    into.insert(set);
                }
            }
        }
    }
    let pi0s = interval_orders(&letters, &right);
    let pi1s = interval_orders(&letters, &left);
    if pi0s.is_empty() || pi1s.is_empty() {
        let mut conflict = Vec::new();
        if pi0s.is_empty() {
            conflict.extend(describe(&fs, "D", &right));
        }
        if pi1s.is_empty() {
            conflict.extend(describe(&fs, "A", &left));
        }
        return Err(ReconstructError::NoConsistentOrder(conflict));
    }

    let freq: Vec<BigRational> = letters
        .iter()
        .map(|c| measure.weight(&c.to_string()))
        .collect();
    let marked: BTreeSet<char> = report
        .labeling
        .iter()
        .flat_map(|l| l.marks.iter().filter_map(|v| v.chars().next()))
        .collect();

    let mut best: Option<Ranked> = None;
    for pi0 in &pi0s {
        let lengths: Vec<BigRational> = pi0.iter().map(|&s| freq[s].clone()).collect();
        let order_letters: Vec<char> = pi0.iter().map(|&s| letters[s]).collect();
        let flips: Vec<bool> = order_letters.iter().map(|c| marked.contains(c)).collect();
        for pi1 in &pi1s {
            let perm: Vec<usize> = pi1
                .iter()
                .map(|s| pi0.iter().position(|t| t == s).expect("same letters") + 1)
                .collect();
            let spec = IetSpec::new(
                lengths
                    .iter()
                    .cloned()
                    .map(ExactScalar::from_rational)
                    .collect(),
                &perm,
                flips.clone(),
            )?;
            let residual = total_variation(&spec, &order_letters, &measure)?;
            let key = (pi0.clone(), pi1.clone());
            let better = match &best {
                None => true,
                Some((b, bl, bk)) => (&residual, &lengths, &key) < (&b.residual, bl, bk),
            };
            if better {
                let candidate = Candidate {
                    spec,
                    letters: order_letters.clone(),
                    residual,
                };
                best = Some((candidate, lengths.clone(), key));
            }
        }
    }
    Ok(best.expect("at least one order pair").0)
}

/// Outcome of regenerating a word from a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roundtrip {
    pub match_length: usize,
    pub total: usize,
    /// Length of the longest prefix of the word whose cylinder has positive
    /// measure under the candidate.
    pub admissible: usize,
    pub x0: ExactScalar,
}

/// Codes `n` letters from the midpoint of the longest piece of the cylinder
/// of the longest admissible prefix, and compares with `word`.
///
/// The cylinder is tracked forward as `T^m(C_m)` so each letter costs one
/// image, then pulled back once at the end.
pub fn verify_roundtrip(
    word: &Word,
    spec: &IetSpec,
    letters: &[char],
    n: usize,
) -> Result<Roundtrip, ReconstructError> {
    if n == 0 || n > word.len() {
        return Err(ReconstructError::BadLength { n, len: word.len() });
    }
    let cfg = CodingConfig::natural(spec, letters)?;
    let text: Vec<char> = word.to_string().chars().take(n).collect();
    let mut front = IntervalSet::from_interval(
        crate::numerics::Interval::half_open(ExactScalar::zero(), ExactScalar::one())
            .expect("unit interval"),
    );
    let mut admissible = 0;
    for &c in &text {
        let Some(u) = cfg.set_of(c) else { break };
        let part = front.intersect(u);
        if part.measure().is_zero() {
            break;
        }
        front = image(spec, &part);
        admissible += 1;
    }
    if admissible == 0 {
        return Err(ReconstructError::EmptyCylinder(text[0]));
    }
    let mut cyl = front;
    for _ in 0..admissible {
        cyl = preimage(spec, &cyl);
    }
    let piece = cyl
        .parts()
        .iter()
        .rev()
        .max_by(|a, b| a.length().try_cmp(&b.length()).expect("one field"))
        .expect("positive measure");
    let x0 = piece.midpoint();
    let regenerated = natural_coding_word(spec, letters, &x0, n)?.to_string();
    let match_length = regenerated
        .chars()
        .zip(&text)
        .take_while(|(a, b)| a == *b)
        .count();
    Ok(Roundtrip {
        match_length,
        total: n,
        admissible,
        x0,
    })
}
