use std::collections::HashMap;

use super::{FactorId, FactorSet, Symbol, Word, WordError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A special factor with its extension letters on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFactor {
    pub factor: String,
    pub extensions: Vec<char>,
    pub valence: usize,
}

/// Special factors of length `n` on `side`, in lexicographic order.
pub fn special_factors(
    fs: &FactorSet,
    n: usize,
    side: Side,
) -> Result<Vec<SpecialFactor>, WordError> {
    if n + 1 > fs.max_len() {
        return Err(WordError::LengthOutOfRange {
            n: n + 1,
            max_len: fs.max_len(),
        });
    }
    let alphabet = fs.alphabet();
    let mut out = Vec::new();
    for id in 0..fs.level_size(n) as FactorId {
        let ext = match side {
            Side::Left => fs.left_extensions(n, id),
            Side::Right => fs.right_extensions(n, id),
        };
        if ext.len() >= 2 {
            out.push(SpecialFactor {
                factor: fs.render(n, id),
                valence: ext.len(),
                extensions: ext.iter().map(|&s| alphabet.letter(s)).collect(),
            });
        }
    }
    Ok(out)
}

/// Factors of length `n` that are both left and right special.
pub fn bispecial_factors(fs: &FactorSet, n: usize) -> Result<Vec<String>, WordError> {
    let left = special_factors(fs, n, Side::Left)?;
    let right = special_factors(fs, n, Side::Right)?;
    Ok(left
        .into_iter()
        .map(|s| s.factor)
        .filter(|f| right.iter().any(|r| &r.factor == f))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// Every pair of equal-length factors up to the horizon differs by at
    /// most one occurrence of the letter.
    BalancedUpTo(usize),
    /// `u` and `v` have length `n` and letter counts differing by two or more.
    Unbalanced { n: usize, u: String, v: String },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::BalancedUpTo(_))
    }
}

/// Balance with respect to `letter` for all factor lengths up to `up_to`.
pub fn is_balanced(fs: &FactorSet, up_to: usize, letter: char) -> Result<Balance, WordError> {
    fs.check_len(up_to)?;
    let target = fs
        .alphabet()
        .symbol(letter)
        .ok_or(WordError::LetterNotInAlphabet(letter))?;
    let mut prefix_counts = Vec::with_capacity(fs.source_len() + 1);
    prefix_counts.push(0u32);
    for &s in fs.word().symbols() {
        let last = *prefix_counts.last().expect("seeded");
        prefix_counts.push(last + u32::from(s == target));
    }
    for n in 1..=up_to {
        let mut lo: Option<(u32, FactorId)> = None;
        let mut hi: Option<(u32, FactorId)> = None;
        for id in 0..fs.level_size(n) as FactorId {
            let start = fs.first_occurrence(n, id);
            let c = prefix_counts[start + n] - prefix_counts[start];
            if lo.is_none_or(|(m, _)| c < m) {
                lo = Some((c, id));
            }
            if hi.is_none_or(|(m, _)| c > m) {
                hi = Some((c, id));
            }
        }
        if let (Some((a, u)), Some((b, v))) = (hi, lo) {
            if a - b > 1 {
                return Ok(Balance::Unbalanced {
                    n,
                    u: fs.render(n, u),
                    v: fs.render(n, v),
                });
            }
        }
    }
    Ok(Balance::BalancedUpTo(up_to))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SturmianVerdict {
    /// `T(n) = n + 1` for every `1 <= n <= up_to` on the observed prefix.
    ConsistentUpTo(usize),
    ViolatedAt {
        n: usize,
        complexity: usize,
    },
}

pub fn sturmian_check(fs: &FactorSet, up_to: usize) -> Result<SturmianVerdict, WordError> {
    fs.check_len(up_to)?;
    for n in 1..=up_to {
        let c = fs.level_size(n);
        if c != n + 1 {
            return Ok(SturmianVerdict::ViolatedAt { n, complexity: c });
        }
    }
    Ok(SturmianVerdict::ConsistentUpTo(up_to))
}

/// Smallest `N` such that every window of length `N` contains every length-`k`
/// factor of the prefix. `None` when no such `N <= |word| / 2` exists or `k`
/// exceeds the observability bound `|word| / 4`.
pub fn recurrence_window(word: &Word, k: usize) -> Option<usize> {
    let len = word.len();
    if k == 0 || k > len / 4 {
        return None;
    }
    struct Track {
        first: usize,
        last: usize,
        need: usize,
    }
    let w = word.symbols();
    let mut seen: HashMap<&[Symbol], Track> = HashMap::new();
    for i in 0..=len - k {
        let f = &w[i..i + k];
        match seen.get_mut(f) {
            Some(t) => {
                // a window starting right after the previous occurrence must
                // still reach this one
                t.need = t.need.max(i - t.last - 1 + k);
                t.last = i;
            }
            None => {
                seen.insert(
                    f,
                    Track {
                        first: i,
                        last: i,
                        need: 0,
                    },
                );
            }
        }
    }
    let n = seen
        .values()
        .map(|t| t.need.max(t.first + k).max(len - t.last))
        .max()?;
    (n <= len / 2).then_some(n)
}
