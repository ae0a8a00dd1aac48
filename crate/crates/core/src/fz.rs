//! Combinatorial check of the Ferenczi–Zamboni conditions on the extension
//! sets of a finite prefix.
//!
//! A pass means "consistent with the characterization up to `max_len`": the
//! dynamical hypothesis (i.d.o.c.) is not decidable from a prefix.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::words::{FactorId, FactorSet, Symbol};

/// Largest alphabet `search_orders` will enumerate (`(k!)^2` pairs).
pub const MAX_SEARCH_ALPHABET: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FzError {
    #[error("{0:?} is not a factor of the prefix")]
    NotAFactor(String),
    #[error("the check up to length {max_len} needs factors of length {} but only {indexed} are indexed", max_len + 2)]
    WindowTooSmall { max_len: usize, indexed: usize },
    #[error("alphabet of {0} letters is too large for an exhaustive order search")]
    AlphabetTooLarge(usize),
    #[error("invalid order pair: {0}")]
    BadOrder(String),
}

/// Two total orders on the same letters, listed from smallest to largest:
/// `pi0` orders right extensions (interval order), `pi1` left extensions
/// (image order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderPair {
    pi0: Vec<char>,
    pi1: Vec<char>,
}

impl OrderPair {
    pub fn new(pi0: Vec<char>, pi1: Vec<char>) -> Result<Self, FzError> {
        if pi0.is_empty() {
            return Err(FzError::BadOrder("empty order".into()));
        }
        if !pi0.iter().all_unique() || !pi1.iter().all_unique() {
            return Err(FzError::BadOrder("repeated letter".into()));
        }
        if pi0.iter().sorted().ne(pi1.iter().sorted()) {
            return Err(FzError::BadOrder("orders are on different letters".into()));
        }
        Ok(OrderPair { pi0, pi1 })
    }

    /// Parses two strings such as `"ab"` and `"ba"`.
    pub fn parse(pi0: &str, pi1: &str) -> Result<Self, FzError> {
        OrderPair::new(pi0.chars().collect(), pi1.chars().collect())
    }

    pub fn pi0(&self) -> &[char] {
        &self.pi0
    }

    pub fn pi1(&self) -> &[char] {
        &self.pi1
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p0: String = self.pi0.iter().collect();
        let p1: String = self.pi1.iter().collect();
        write!(f, "({p0},{p1})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// The letters occurring in the word are exactly the ordered letters.
    Letters,
    /// No proper initial segment of `pi0` equals one of `pi1`.
    Separation,
    /// `A(w)` is a `pi1`-interval and `D(w)` a `pi0`-interval.
    Interval,
    /// `x <1 y` in `A(w)` forces `D(xw)` to lie weakly below `D(yw)` in `pi0`.
    Monotone,
    /// `D(xw) & D(yw)` is a single letter for `pi1`-consecutive `x, y`.
    Singleton,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Letters,
        Condition::Separation,
        Condition::Interval,
        Condition::Monotone,
        Condition::Singleton,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Letters => "letters",
            Condition::Separation => "separation",
            Condition::Interval => "interval",
            Condition::Monotone => "monotone",
            Condition::Singleton => "singleton",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    /// First violation found; `None` means the condition holds.
    pub witness: Option<String>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FzReport {
    pub orders: OrderPair,
    pub max_len: usize,
    /// One entry per condition, in [`Condition::ALL`] order.
    pub results: Vec<ConditionResult>,
}

impl FzReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(ConditionResult::passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.results.iter().find(|r| !r.passed())
    }

    pub fn result(&self, c: Condition) -> &ConditionResult {
        self.results
            .iter()
            .find(|r| r.condition == c)
            .expect("all conditions reported")
    }

    /// `condition,status,witness` lines with a header.
    pub fn table(&self) -> String {
        let mut out = String::from("condition,status,witness\n");
        for r in &self.results {
            let status = if r.passed() { "pass" } else { "fail" };
            out.push_str(&format!(
                "{},{},{}\n",
                r.condition,
                status,
                r.witness.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

/// Letter sets `A(w)` (left extensions) and `D(w)` (right extensions),
/// sorted by code point.
pub fn extension_sets(fs: &FactorSet, w: &str) -> Result<(Vec<char>, Vec<char>), FzError> {
    let n = w.chars().count();
    if n + 1 > fs.max_len() {
        return Err(FzError::WindowTooSmall {
            max_len: n.saturating_sub(1),
            indexed: fs.max_len(),
        });
    }
    let id = fs
        .id_of_str(w)
        .ok_or_else(|| FzError::NotAFactor(w.to_string()))?;
    let letters = |s: Vec<Symbol>| s.into_iter().map(|x| fs.alphabet().letter(x)).collect();
    Ok((
        letters(fs.left_extensions(n, id)),
        letters(fs.right_extensions(n, id)),
    ))
}

/// Rank of each alphabet symbol in an order.
fn ranks(fs: &FactorSet, order: &[char]) -> Result<Vec<usize>, FzError> {
    fs.alphabet()
        .letters()
        .iter()
        .map(|c| {
            order
                .iter()
                .position(|o| o == c)
                .ok_or_else(|| FzError::BadOrder(format!("letter {c:?} occurs but is not ordered")))
        })
        .collect()
}

fn is_interval(set: &[Symbol], rank: &[usize]) -> bool {
    match set
        .iter()
        .map(|&s| rank[usize::from(s)])
        .minmax()
        .into_option()
    {
        None => true,
        Some((lo, hi)) => hi - lo + 1 == set.len(),
    }
}

fn render_set(fs: &FactorSet, set: &[Symbol]) -> String {
    format!(
        "{{{}}}",
        set.iter().map(|&s| fs.alphabet().letter(s)).join(",")
    )
}

fn check_window(fs: &FactorSet, max_len: usize) -> Result<(), FzError> {
    if max_len + 2 > fs.max_len() {
        Err(FzError::WindowTooSmall {
            max_len,
            indexed: fs.max_len(),
        })
    } else {
        Ok(())
    }
}

/// All factors of length `0..=max_len` as `(length, id)`.
fn all_factors(fs: &FactorSet, max_len: usize) -> impl Iterator<Item = (usize, FactorId)> + '_ {
    (0..=max_len).flat_map(move |n| {
        (0..fs.complexity(n).expect("checked") as FactorId).map(move |id| (n, id))
    })
}

/// Checks every condition for every factor of length at most `max_len`,
/// keeping the first witness of each failure (shortest, then lexicographic).
pub fn fz_check(fs: &FactorSet, orders: &OrderPair, max_len: usize) -> Result<FzReport, FzError> {
    check_window(fs, max_len)?;
    let r0 = ranks(fs, &orders.pi0)?;
    let r1 = ranks(fs, &orders.pi1)?;
    let alphabet = fs.alphabet();

    // Word alphabets hold only occurring letters unless declared wider.
    let absent: Vec<char> = orders
        .pi0
        .iter()
        .copied()
        .filter(|&c| alphabet.symbol(c).is_none_or(|s| fs.id_of(&[s]).is_none()))
        .collect();
    let letters = (!absent.is_empty()).then(|| {
        format!(
            "ordered letters {{{}}} do not occur",
            absent.iter().join(",")
        )
    });

    let k = orders.pi0.len();
    let separation = (1..k).find_map(|j| {
        let a: Vec<&char> = orders.pi0[..j].iter().sorted().collect();
        let b: Vec<&char> = orders.pi1[..j].iter().sorted().collect();
        (a == b).then(|| format!("j={j}: {{{}}}", a.iter().join(",")))
    });

    let mut interval = None;
    let mut monotone = None;
    let mut singleton = None;
    for (n, id) in all_factors(fs, max_len) {
        if interval.is_some() && monotone.is_some() && singleton.is_some() {
            break;
        }
        let w = fs.render(n, id);
        if interval.is_none() {
            let a = fs.left_extensions(n, id);
            let d = fs.right_extensions(n, id);
            if !is_interval(&a, &r1) {
                interval = Some(format!(
                    "w={w:?}: A(w)={} is not a pi1-interval",
                    render_set(fs, &a)
                ));
            } else if !is_interval(&d, &r0) {
                interval = Some(format!(
                    "w={w:?}: D(w)={} is not a pi0-interval",
                    render_set(fs, &d)
                ));
            }
        }
        if monotone.is_some() && singleton.is_some() {
            continue;
        }
        // (x, D(xw)) in pi1 order
        let mut ext: Vec<(Symbol, Vec<Symbol>)> = fs
            .left_children(n, id)
            .iter()
            .map(|&xw| (fs.symbols(n + 1, xw)[0], fs.right_extensions(n + 1, xw)))
            .collect();
        ext.sort_by_key(|(x, _)| r1[usize::from(*x)]);
        let letter = |s: Symbol| alphabet.letter(s);
        if monotone.is_none() {
            'pairs: for (i, (x, dx)) in ext.iter().enumerate() {
                for (y, dy) in &ext[i + 1..] {
                    for &z in dx {
                        for &t in dy {
                            if r0[usize::from(z)] > r0[usize::from(t)] {
                                monotone = Some(format!(
                                    "w={w:?}, x={}, y={}: z={} is above t={} in pi0",
                                    letter(*x),
                                    letter(*y),
                                    letter(z),
                                    letter(t)
                                ));
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        if singleton.is_none() {
            for pair in ext.windows(2) {
                let ((x, dx), (y, dy)) = (&pair[0], &pair[1]);
                let common: Vec<Symbol> = dx.iter().copied().filter(|z| dy.contains(z)).collect();
                if common.len() != 1 {
                    singleton = Some(format!(
                        "w={w:?}, x={}, y={}: D(xw) & D(yw) = {}",
                        letter(*x),
                        letter(*y),
                        render_set(fs, &common)
                    ));
                    break;
                }
            }
        }
    }

    let witnesses = [letters, separation, interval, monotone, singleton];
    Ok(FzReport {
        orders: orders.clone(),
        max_len,
        results: Condition::ALL
            .iter()
            .zip(witnesses)
            .map(|(&condition, witness)| ConditionResult { condition, witness })
            .collect(),
    })
}

/// `(pi0, pi1)` as symbol sequences.
type OrderSymbols = (Vec<Symbol>, Vec<Symbol>);

/// Every order pair on the word's alphabet passing [`fz_check`], sorted.
///
/// Orders are pre-filtered by the interval condition (`pi0` against every
/// `D(w)`, `pi1` against every `A(w)`) before pairs are checked.
pub fn search_orders(fs: &FactorSet, max_len: usize) -> Result<Vec<OrderPair>, FzError> {
    check_window(fs, max_len)?;
    let letters = fs.alphabet().letters().to_vec();
    if letters.len() > MAX_SEARCH_ALPHABET {
        return Err(FzError::AlphabetTooLarge(letters.len()));
    }
    let sets: Vec<(Vec<Symbol>, Vec<Symbol>)> = all_factors(fs, max_len)
        .map(|(n, id)| (fs.left_extensions(n, id), fs.right_extensions(n, id)))
        .collect();
    let orders: Vec<Vec<char>> = letters
        .iter()
        .copied()
        .permutations(letters.len())
        .collect();
    let keep = |pick: fn(&OrderSymbols) -> &Vec<Symbol>| -> Result<Vec<Vec<char>>, FzError> {
        let mut out = Vec::new();
        for o in &orders {
            let r = ranks(fs, o)?;
            if sets.iter().all(|s| is_interval(pick(s), &r)) {
                out.push(o.clone());
            }
        }
        Ok(out)
    };
    let pi0s = keep(|s| &s.1)?;
    let pi1s = keep(|s| &s.0)?;
    let mut found = Vec::new();
    for p0 in &pi0s {
        for p1 in &pi1s {
            let pair = OrderPair::new(p0.clone(), p1.clone())?;
            if fz_check(fs, &pair, max_len)?.passed() {
                found.push(pair);
            }
        }
    }
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::generators::{fibonacci, thue_morse};
    use crate::words::Word;

    fn fib() -> FactorSet {
        FactorSet::new(&fibonacci(5000), 24).unwrap()
    }

    #[test]
    fn extension_sets_of_fibonacci() {
        let fs = fib();
        assert_eq!(
            extension_sets(&fs, "a").unwrap(),
            (vec!['a', 'b'], vec!['a', 'b'])
        );
        assert_eq!(extension_sets(&fs, "b").unwrap(), (vec!['a'], vec!['a']));
        assert_eq!(
            extension_sets(&fs, "bb"),
            Err(FzError::NotAFactor("bb".into()))
        );
    }

    /// Conditions restated directly on strings: extension sets by scanning
    /// the word itself, orders as letter positions.
    fn naive_passes(word: &str, p0: &str, p1: &str, max_len: usize) -> bool {
        let occurs = |f: &str| word.contains(f);
        let letters: Vec<char> = p0.chars().collect();
        let rank = |o: &str, c: char| o.find(c).unwrap();
        let ext_right = |w: &str| -> Vec<char> {
            letters
                .iter()
                .copied()
                .filter(|&c| occurs(&format!("{w}{c}")))
                .collect()
        };
        let ext_left = |w: &str| -> Vec<char> {
            letters
                .iter()
                .copied()
                .filter(|&c| occurs(&format!("{c}{w}")))
                .collect()
        };
        let interval = |set: &[char], o: &str| {
            let r: Vec<usize> = set.iter().map(|&c| rank(o, c)).collect();
            r.is_empty() || r.iter().max().unwrap() - r.iter().min().unwrap() + 1 == r.len()
        };
        for j in 1..letters.len() {
            let mut a: Vec<char> = p0[..j].chars().collect();
            let mut b: Vec<char> = p1[..j].chars().collect();
            a.sort();
            b.sort();
            if a == b {
                return false;
            }
        }
        let mut level = vec![String::new()];
        for _ in 0..=max_len {
            for w in &level {
                let a = ext_left(w);
                if !interval(&a, p1) || !interval(&ext_right(w), p0) {
                    return false;
                }
                let mut a = a;
                a.sort_by_key(|&c| rank(p1, c));
                for (i, &x) in a.iter().enumerate() {
                    let dx = ext_right(&format!("{x}{w}"));
                    for &y in &a[i + 1..] {
                        let dy = ext_right(&format!("{y}{w}"));
                        if dx
                            .iter()
                            .any(|&z| dy.iter().any(|&t| rank(p0, z) > rank(p0, t)))
                        {
                            return false;
                        }
                    }
                    if let Some(&y) = a.get(i + 1) {
                        let dy = ext_right(&format!("{y}{w}"));
                        if dx.iter().filter(|z| dy.contains(z)).count() != 1 {
                            return false;
                        }
                    }
                }
            }
            level = level
                .iter()
                .flat_map(|w| letters.iter().map(move |c| format!("{w}{c}")))
                .filter(|w| occurs(w))
                .collect();
        }
        true
    }

    #[test]
    fn naive_oracle_agrees_on_all_binary_pairs() {
        for (name, word) in [("fib", fibonacci(3000)), ("tm", thue_morse(4096))] {
            let text = word.to_string();
            let fs = FactorSet::new(&word, 14).unwrap();
            for (p0, p1) in [("ab", "ab"), ("ab", "ba"), ("ba", "ab"), ("ba", "ba")] {
                let fast = fz_check(&fs, &OrderPair::parse(p0, p1).unwrap(), 12)
                    .unwrap()
                    .passed();
                assert_eq!(fast, naive_passes(&text, p0, p1, 12), "{name} {p0} {p1}");
            }
        }
    }

    #[test]
    fn fibonacci_passes_with_the_swap() {
        let r = fz_check(&fib(), &OrderPair::parse("ab", "ba").unwrap(), 20).unwrap();
        assert!(r.passed(), "{}", r.table());
    }

    #[test]
    fn identity_pair_fails_separation() {
        let r = fz_check(&fib(), &OrderPair::parse("ab", "ab").unwrap(), 20).unwrap();
        let f = r.first_failure().unwrap();
        assert_eq!(f.condition, Condition::Separation);
        assert_eq!(f.witness.as_deref(), Some("j=1: {a}"));
    }

    #[test]
    fn thue_morse_has_a_doubleton_intersection() {
        let fs = FactorSet::new(&thue_morse(1 << 14), 24).unwrap();
        for (p0, p1) in [("ab", "ba"), ("ba", "ab")] {
            let r = fz_check(&fs, &OrderPair::parse(p0, p1).unwrap(), 20).unwrap();
            let s = r.result(Condition::Singleton);
            assert!(!s.passed());
            // the witness names a bispecial w with two shared right extensions
            let w = s.witness.as_deref().unwrap();
            assert!(w.ends_with("= {a,b}"), "{w}");
        }
        assert!(search_orders(&fs, 20).unwrap().is_empty());
    }

    #[test]
    fn search_finds_both_mirror_pairs_for_fibonacci() {
        let found = search_orders(&fib(), 20).unwrap();
        assert_eq!(
            found,
            vec![
                OrderPair::parse("ab", "ba").unwrap(),
                OrderPair::parse("ba", "ab").unwrap()
            ]
        );
    }

    #[test]
    fn constant_word_passes_vacuously() {
        let fs = FactorSet::new(&Word::parse(&"a".repeat(50)).unwrap(), 10).unwrap();
        assert_eq!(
            search_orders(&fs, 8).unwrap(),
            vec![OrderPair::parse("a", "a").unwrap()]
        );
    }

    #[test]
    fn window_and_order_errors() {
        let fs = fib();
        assert!(matches!(
            fz_check(&fs, &OrderPair::parse("ab", "ba").unwrap(), 23),
            Err(FzError::WindowTooSmall { .. })
        ));
        assert!(OrderPair::parse("ab", "bc").is_err());
        assert!(OrderPair::parse("aa", "aa").is_err());
        let extra = fz_check(&fs, &OrderPair::parse("abc", "cba").unwrap(), 4).unwrap();
        assert_eq!(extra.first_failure().unwrap().condition, Condition::Letters);
    }
}
