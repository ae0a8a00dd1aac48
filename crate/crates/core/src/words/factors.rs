use super::{Symbol, Word, WordError};

/// Identifier of a factor within one length level. Ids are lexicographic
/// ranks, so iterating `0..complexity(n)` walks the level in sorted order.
pub type FactorId = u32;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    /// Start of the first occurrence of each factor.
    rep: Vec<u32>,
    count: Vec<u32>,
    /// Id (one level down) of the factor without its last letter.
    prefix: Vec<FactorId>,
    /// Id (one level down) of the factor without its first letter.
    suffix: Vec<FactorId>,
    /// `(prefix id, last symbol) -> id`, dense over the previous level.
    index: Vec<FactorId>,
}

/// Complete factor index of a finite word up to a length bound.
///
/// Built level by level: the id of the window starting at `i` of length `n`
/// is looked up from the id of its length-`n-1` prefix and its last letter,
/// so construction is `O(|word| * max_len)` with no hashing.
#[derive(Clone, Debug)]
pub struct FactorSet {
    word: Word,
    max_len: usize,
    levels: Vec<Level>,
    /// Left-extension adjacency per level, in CSR form: for level `n` the
    /// ids at level `n + 1` whose suffix is a given factor.
    left_offsets: Vec<Vec<u32>>,
    left_targets: Vec<Vec<FactorId>>,
}

impl FactorSet {
    pub fn new(word: &Word, max_len: usize) -> Result<Self, WordError> {
        let len = word.len();
        if max_len == 0 || max_len > len {
            return Err(WordError::MaxLenOutOfRange { max_len, len });
        }
        let k = word.alphabet().len();
        let w = word.symbols();

        let mut levels = Vec::with_capacity(max_len + 1);
        levels.push(Level {
            rep: vec![0],
            count: vec![(len + 1) as u32],
            prefix: Vec::new(),
            suffix: Vec::new(),
            index: Vec::new(),
        });
        // ids of all windows of the current length, indexed by start
        let mut cur = vec![0u32; len + 1];

        for n in 1..=max_len {
            let prev_count = levels[n - 1].rep.len();
            let mut index = vec![NONE; prev_count * k];
            let mut rep = Vec::new();
            let mut count: Vec<u32> = Vec::new();
            let mut prefix = Vec::new();
            let mut suffix = Vec::new();
            let windows = len + 1 - n;
            let mut next = vec![0u32; windows];
            for i in 0..windows {
                let slot = cur[i] as usize * k + usize::from(w[i + n - 1]);
                let mut id = index[slot];
                if id == NONE {
                    id = rep.len() as u32;
                    index[slot] = id;
                    rep.push(i as u32);
                    count.push(0);
                    prefix.push(cur[i]);
                    suffix.push(cur[i + 1]);
                }
                count[id as usize] += 1;
                next[i] = id;
            }

            // Relabel by lexicographic rank: (prefix rank, last letter).
            let mut order: Vec<u32> = (0..rep.len() as u32).collect();
            order.sort_unstable_by_key(|&id| {
                (prefix[id as usize], w[rep[id as usize] as usize + n - 1])
            });
            let mut rank = vec![0u32; order.len()];
            for (r, &id) in order.iter().enumerate() {
                rank[id as usize] = r as u32;
            }
            let permute = |v: &[u32]| order.iter().map(|&id| v[id as usize]).collect::<Vec<_>>();
            let level = Level {
                rep: permute(&rep),
                count: permute(&count),
                prefix: permute(&prefix),
                suffix: permute(&suffix),
                index: index
                    .iter()
                    .map(|&id| if id == NONE { NONE } else { rank[id as usize] })
                    .collect(),
            };
            for id in next.iter_mut() {
                *id = rank[*id as usize];
            }
            levels.push(level);
            cur = next;
        }

        let mut left_offsets = Vec::with_capacity(max_len);
        let mut left_targets = Vec::with_capacity(max_len);
        for n in 0..max_len {
            let here = levels[n].rep.len();
            let above = &levels[n + 1];
            let mut offsets = vec![0u32; here + 1];
            for &s in &above.suffix {
                offsets[s as usize + 1] += 1;
            }
            for i in 0..here {
                offsets[i + 1] += offsets[i];
            }
            let mut fill = offsets.clone();
            let mut targets = vec![0; above.suffix.len()];
            for (id, &s) in above.suffix.iter().enumerate() {
                targets[fill[s as usize] as usize] = id as FactorId;
                fill[s as usize] += 1;
            }
            left_offsets.push(offsets);
            left_targets.push(targets);
        }

        Ok(FactorSet {
            word: word.clone(),
            max_len,
            levels,
            left_offsets,
            left_targets,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn alphabet(&self) -> &super::Alphabet {
        self.word.alphabet()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn source_len(&self) -> usize {
        self.word.len()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<(), WordError> {
        if n > self.max_len {
            Err(WordError::LengthOutOfRange {
                n,
                max_len: self.max_len,
            })
        } else {
            Ok(())
        }
    }

    /// Number of distinct factors of length `n`.
    pub fn complexity(&self, n: usize) -> Result<usize, WordError> {
        self.check_len(n)?;
        Ok(self.levels[n].rep.len())
    }

    pub(crate) fn level_size(&self, n: usize) -> usize {
        self.levels[n].rep.len()
    }

    pub fn symbols(&self, n: usize, id: FactorId) -> &[Symbol] {
        let start = self.levels[n].rep[id as usize] as usize;
        &self.word.symbols()[start..start + n]
    }

    pub fn render(&self, n: usize, id: FactorId) -> String {
        self.alphabet().render(self.symbols(n, id))
    }

    pub fn count(&self, n: usize, id: FactorId) -> usize {
        self.levels[n].count[id as usize] as usize
    }

    pub fn first_occurrence(&self, n: usize, id: FactorId) -> usize {
        self.levels[n].rep[id as usize] as usize
    }

    /// Id of the factor with its last letter removed (level `n - 1`).
    pub fn prefix_id(&self, n: usize, id: FactorId) -> FactorId {
        self.levels[n].prefix[id as usize]
    }

    /// Id of the factor with its first letter removed (level `n - 1`).
    pub fn suffix_id(&self, n: usize, id: FactorId) -> FactorId {
        self.levels[n].suffix[id as usize]
    }

    /// Looks up a factor by its symbols.
    pub fn id_of(&self, factor: &[Symbol]) -> Option<FactorId> {
        if factor.len() > self.max_len {
            return None;
        }
        let k = self.alphabet().len();
        let mut id = 0u32;
        for (j, &s) in factor.iter().enumerate() {
            if usize::from(s) >= k {
                return None;
            }
            id = self.levels[j + 1].index[id as usize * k + usize::from(s)];
            if id == NONE {
                return None;
            }
        }
        Some(id)
    }

    pub fn id_of_str(&self, factor: &str) -> Option<FactorId> {
        let symbols = factor
            .chars()
            .map(|c| self.alphabet().symbol(c))
            .collect::<Option<Vec<_>>>()?;
        self.id_of(&symbols)
    }

    pub fn contains(&self, factor: &[Symbol]) -> bool {
        self.id_of(factor).is_some()
    }

    /// Level-`n+1` ids `f x` for the factor `f` at level `n`, in letter order.
    pub fn right_children(&self, n: usize, id: FactorId) -> impl Iterator<Item = FactorId> + '_ {
        let k = self.alphabet().len();
        let base = id as usize * k;
        self.levels[n + 1].index[base..base + k]
            .iter()
            .copied()
            .filter(|&c| c != NONE)
    }

    /// Level-`n+1` ids `x f` for the factor `f` at level `n`.
    pub fn left_children(&self, n: usize, id: FactorId) -> &[FactorId] {
        let offsets = &self.left_offsets[n];
        let lo = offsets[id as usize] as usize;
        let hi = offsets[id as usize + 1] as usize;
        &self.left_targets[n][lo..hi]
    }

    /// Right extension letters of a level-`n` factor (`n < max_len`).
    pub fn right_extensions(&self, n: usize, id: FactorId) -> Vec<Symbol> {
        self.right_children(n, id)
            .map(|c| *self.symbols(n + 1, c).last().expect("nonempty"))
            .collect()
    }

    /// Left extension letters of a level-`n` factor (`n < max_len`), sorted.
    pub fn left_extensions(&self, n: usize, id: FactorId) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .left_children(n, id)
            .iter()
            .map(|&c| self.symbols(n + 1, c)[0])
            .collect();
        out.sort_unstable();
        out
    }

    /// All factors of length `n` with their counts, in lexicographic order.
    pub fn level(&self, n: usize) -> Result<Vec<(String, usize)>, WordError> {
        self.check_len(n)?;
        Ok((0..self.level_size(n) as FactorId)
            .map(|id| (self.render(n, id), self.count(n, id)))
            .collect())
    }
}
