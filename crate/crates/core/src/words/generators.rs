//! Prefixes of fixed points of substitutions.

use super::{Alphabet, Symbol, Word};

/// Prefix of length `len` of the fixed point of `rules` starting from symbol 0.
/// `rules[s]` is the image of symbol `s`; the image of symbol 0 must start
/// with 0 and have length at least two.
pub fn substitution_prefix(alphabet: Alphabet, rules: &[&[Symbol]], len: usize) -> Word {
    assert_eq!(rules.len(), alphabet.len());
    assert!(
        rules[0].len() >= 2 && rules[0][0] == 0,
        "not a prolongable substitution"
    );
    let mut w: Vec<Symbol> = vec![0];
    while w.len() < len {
        let next: Vec<Symbol> = w
            .iter()
            .flat_map(|&s| rules[usize::from(s)].iter().copied())
            .take(len)
            .collect();
        w = next;
    }
    w.truncate(len);
    Word::from_symbols(alphabet, w)
}

fn letters(s: &str) -> Alphabet {
    Alphabet::new(s.chars()).expect("nonempty")
}

/// Fibonacci word: `a -> ab, b -> a`.
pub fn fibonacci(len: usize) -> Word {
    substitution_prefix(letters("ab"), &[&[0, 1], &[0]], len)
}

/// Tribonacci word: `a -> ab, b -> ac, c -> a`.
pub fn tribonacci(len: usize) -> Word {
    substitution_prefix(letters("abc"), &[&[0, 1], &[0, 2], &[0]], len)
}

/// Thue–Morse word: `a -> ab, b -> ba`.
pub fn thue_morse(len: usize) -> Word {
    substitution_prefix(letters("ab"), &[&[0, 1], &[1, 0]], len)
}
