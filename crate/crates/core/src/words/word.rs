use std::fmt;

use super::WordError;

/// Dense letter index into an [`Alphabet`].
pub type Symbol = u8;

/// A finite, ordered alphabet. Letters are kept sorted by code point so that
/// symbol order, lexicographic factor order and output order all agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let mut letters: Vec<char> = letters.into_iter().collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if letters.len() > usize::from(Symbol::MAX) {
            return Err(WordError::AlphabetTooLarge(letters.len()));
        }
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, s: Symbol) -> char {
        self.letters[usize::from(s)]
    }

    pub fn symbol(&self, c: char) -> Option<Symbol> {
        self.letters.binary_search(&c).ok().map(|i| i as Symbol)
    }

    pub fn render(&self, symbols: &[Symbol]) -> String {
        symbols.iter().map(|&s| self.letter(s)).collect()
    }
}

/// A finite word (typically a prefix of an infinite one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Word {
    /// Parses `text`, taking the alphabet to be the letters that occur.
    /// Surrounding whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        let alphabet = Alphabet::new(text.chars())?;
        Self::with_alphabet(text, alphabet)
    }

    /// Parses `text` over a declared alphabet.
    pub fn with_alphabet(text: &str, alphabet: Alphabet) -> Result<Self, WordError> {
        let symbols = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| {
                alphabet.symbol(c).ok_or(WordError::UnknownLetter {
                    letter: c,
                    position: i,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { alphabet, symbols })
    }

    pub fn from_symbols(alphabet: Alphabet, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|&s| usize::from(s) < alphabet.len()));
        Word { alphabet, symbols }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The first `n` letters (or the whole word if shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[..n.min(self.symbols.len())].to_vec(),
        }
    }

    /// Number of occurrences of each symbol.
    pub fn letter_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet.len()];
        for &s in &self.symbols {
            counts[usize::from(s)] += 1;
        }
        counts
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.symbols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_sorted() {
        let w = Word::parse("cabbac\n").unwrap();
        assert_eq!(w.alphabet().letters(), &['a', 'b', 'c']);
        assert_eq!(w.symbols(), &[2, 0, 1, 1, 0, 2]);
        assert_eq!(w.to_string(), "cabbac");
    }

    #[test]
    fn declared_alphabet_rejects_strangers() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        assert_eq!(
            Word::with_alphabet("abx", ab),
            Err(WordError::UnknownLetter {
                letter: 'x',
                position: 2
            })
        );
    }
}
