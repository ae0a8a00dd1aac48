//! Decides whether some crotch labeling and marking makes the Rauzy graphs of
//! a word evolve correctly on a window of orders.
//!
//! Every label in the window is an affine GF(2) function of a few base
//! choices at the starting order `K`:
//!
//! * `P_u` for each in-crotch `u` of `G_K`: `in(x v) = P_{v[..K]} + [x is the
//!   larger letter]` (in-labels copy to right successors);
//! * `Q_s` for each out-crotch `s` of `G_K`: `out(v c) = Q_{v[k-K..]} + [c is
//!   the larger letter] + sum_{1 <= j <= k-K} M_{v[j..j+K]}` (out-labels copy
//!   to left successors, reversed by the mark of the vertex they leave);
//! * `M_w` for each vertex `w` of `G_K` (fixed to 0 in oriented mode), with
//!   `mark(v) = M_{v[..K]}`.
//!
//! A follower arc `x v c` missing from `G_{k+1}` at a bispecial `v` requires
//! `in(x v) + out(v c) = 1 + mark(v)`: the pair is `lr`/`rl` at unmarked
//! vertices and `ll`/`rr` at marked ones. Existence of a labeling is thus a
//! linear system, solved exactly by elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::gf2::Gf2System;
use super::graph::{build_k_graph, level_strongly_connected};
use super::labeled::{Label, LabeledRauzyGraph};
use super::RauzyError;
use crate::words::{FactorId, FactorSet, Side, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All checks pass on the whole window.
    Accepted,
    /// All checks pass on `[K, k_max]` for the reported `K > k_min`.
    AcceptedFromK,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "accepted",
            Verdict::AcceptedFromK => "accepted-from-K",
            Verdict::Rejected => "rejected",
        })
    }
}

/// A follower arc `word = x v c` of `G_k` absent from `G_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionConstraint {
    pub k: usize,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A vertex of `G_k` with more than two arcs on one side.
    Valence {
        k: usize,
        factor: String,
        side: Side,
        valence: usize,
    },
    /// A bispecial vertex all four of whose follower arcs survive.
    StrongBispecial {
        k: usize,
        factor: String,
    },
    /// A follower arc through a non-bispecial vertex is missing.
    NonBispecialDeletion {
        k: usize,
        factor: String,
        word: String,
    },
    LostStrongConnectivity {
        k: usize,
    },
    /// Deletion constraints whose sum reads `0 = 1` for base order `base`.
    LabelContradiction {
        base: usize,
        oriented: bool,
        constraints: Vec<DeletionConstraint>,
    },
}

impl Witness {
    /// Re-checks the witness against the factor index, independently of the
    /// search that produced it.
    pub fn verify(&self, fs: &FactorSet) -> bool {
        match self {
            Witness::Valence {
                k,
                factor,
                side,
                valence,
            } => {
                let Some(id) = lookup(fs, factor, *k) else {
                    return false;
                };
                *k < fs.max_len()
                    && *valence > 2
                    && match side {
                        Side::Left => fs.left_children(*k, id).len(),
                        Side::Right => fs.right_children(*k, id).count(),
                    } == *valence
            }
            Witness::StrongBispecial { k, factor } => {
                let Some(id) = lookup(fs, factor, *k) else {
                    return false;
                };
                *k + 2 <= fs.max_len() && {
                    let left = fs.left_extensions(*k, id);
                    let right = fs.right_extensions(*k, id);
                    left.len() == 2
                        && right.len() == 2
                        && survivors(fs, fs.symbols(*k, id), &left, &right) == 4
                }
            }
            Witness::NonBispecialDeletion { k, factor, word } => {
                let Some(id) = lookup(fs, factor, *k) else {
                    return false;
                };
                let Some(sym) = to_symbols(fs, word) else {
                    return false;
                };
                let left = fs.left_extensions(*k, id);
                let right = fs.right_extensions(*k, id);
                sym.len() == k + 2
                    && &sym[1..=*k] == fs.symbols(*k, id)
                    && !(left.len() >= 2 && right.len() >= 2)
                    && fs.contains(&sym[..=*k])
                    && fs.contains(&sym[1..])
                    && !fs.contains(&sym)
            }
            Witness::LostStrongConnectivity { k } => {
                *k < fs.max_len() && !level_strongly_connected(fs, *k)
            }
            Witness::LabelContradiction {
                base,
                oriented,
                constraints,
            } => {
                let mut sum: BTreeMap<(char, Vec<Symbol>), bool> = BTreeMap::new();
                let mut rhs = false;
                for c in constraints {
                    let Some(sym) = to_symbols(fs, &c.word) else {
                        return false;
                    };
                    if sym.len() != c.k + 2 || c.k < *base || c.k + 2 > fs.max_len() {
                        return false;
                    }
                    let v = &sym[1..=c.k];
                    let Some(vid) = fs.id_of(v) else {
                        return false;
                    };
                    let left = fs.left_extensions(c.k, vid);
                    let right = fs.right_extensions(c.k, vid);
                    if left.len() != 2 || right.len() != 2 || fs.contains(&sym) {
                        return false;
                    }
                    if !left.contains(&sym[0]) || !right.contains(&sym[c.k + 1]) {
                        return false;
                    }
                    let (terms, r) = constraint_terms(&sym, *base, *oriented, &left, &right);
                    rhs ^= r;
                    for t in terms {
                        *sum.entry(t).or_default() ^= true;
                    }
                }
                rhs && sum.values().all(|&b| !b)
            }
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Witness::Valence { k, .. }
            | Witness::StrongBispecial { k, .. }
            | Witness::NonBispecialDeletion { k, .. }
            | Witness::LostStrongConnectivity { k } => *k,
            Witness::LabelContradiction { constraints, .. } => {
                constraints.iter().map(|c| c.k).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Valence {
                k,
                factor,
                side,
                valence,
            } => {
                let side = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                write!(
                    f,
                    "valence(k={k},side={side},factor={factor},valence={valence})"
                )
            }
            Witness::StrongBispecial { k, factor } => {
                write!(f, "strong-bispecial(k={k},factor={factor})")
            }
            Witness::NonBispecialDeletion { k, factor, word } => {
                write!(
                    f,
                    "non-bispecial-deletion(k={k},factor={factor},word={word})"
                )
            }
            Witness::LostStrongConnectivity { k } => write!(f, "lost-strong-connectivity(k={k})"),
            Witness::LabelContradiction {
                base, constraints, ..
            } => {
                let list: Vec<String> = constraints
                    .iter()
                    .map(|c| format!("{}:{}", c.k, c.word))
                    .collect();
                write!(
                    f,
                    "label-contradiction(K={base},constraints={})",
                    list.join("|")
                )
            }
        }
    }
}

/// Base choices of a consistent labeling at order `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub base: usize,
    /// In-crotch `u` of `G_base` -> label of its arc from the smaller letter.
    pub in_crotches: BTreeMap<String, Label>,
    /// Out-crotch `s` of `G_base` -> label of its arc to the smaller letter.
    pub out_crotches: BTreeMap<String, Label>,
    pub marks: BTreeSet<String>,
}

impl Labeling {
    /// The labeled graph `G_k` for `base <= k < max_len`.
    pub fn at_level(&self, fs: &FactorSet, k: usize) -> Result<LabeledRauzyGraph, RauzyError> {
        if k < self.base {
            return Err(RauzyError::KOutOfRange {
                k,
                max_len: fs.max_len(),
            });
        }
        let g = build_k_graph(fs, k)?;
        let base = self.base;
        let mark = |w: &str| self.marks.contains(w);
        let prefix = |s: &str, from: usize| -> String { s.chars().skip(from).take(base).collect() };
        let missing = |what: &str, w: &str| {
            RauzyError::InvalidLabeling(format!("{what} {w} is not a base crotch"))
        };
        let mut in_labels = vec![None; g.arcs().len()];
        let mut out_labels = vec![None; g.arcs().len()];
        for v in 0..g.vertices().len() {
            let name = &g.vertices()[v];
            if let [a, b] = g.in_arcs(v) {
                let u = prefix(name, 0);
                let p = *self.in_crotches.get(&u).ok_or_else(|| missing("in", &u))?;
                // arcs are sorted, so `a` starts with the smaller letter
                in_labels[*a] = Some(p);
                in_labels[*b] = Some(p.flip_if(true));
            }
            if let [a, b] = g.out_arcs(v) {
                let s = prefix(name, k - base);
                let q = *self
                    .out_crotches
                    .get(&s)
                    .ok_or_else(|| missing("out", &s))?;
                let flip = (1..=k - base).fold(false, |acc, j| acc ^ mark(&prefix(name, j)));
                out_labels[*a] = Some(q.flip_if(flip));
                out_labels[*b] = Some(q.flip_if(!flip));
            }
        }
        let marks = g.vertices().iter().map(|v| mark(&prefix(v, 0))).collect();
        LabeledRauzyGraph::from_parts(g, in_labels, out_labels, marks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionReport {
    pub window: (usize, usize),
    pub verdict: Verdict,
    /// Start of the accepted range.
    pub k_start: Option<usize>,
    pub oriented: bool,
    pub witness: Option<Witness>,
    pub labeling: Option<Labeling>,
}

impl EvolutionReport {
    pub fn is_accepted(&self) -> bool {
        self.verdict != Verdict::Rejected
    }

    /// `verdict=...;K=...;witness=...`
    pub fn machine_line(&self) -> String {
        let k = self.k_start.map_or("none".to_string(), |k| k.to_string());
        let w = self
            .witness
            .as_ref()
            .map_or("none".to_string(), |w| w.to_string());
        format!("verdict={};K={k};witness={w}", self.verdict)
    }
}

fn lookup(fs: &FactorSet, factor: &str, k: usize) -> Option<FactorId> {
    if factor.chars().count() != k || k > fs.max_len() {
        return None;
    }
    fs.id_of_str(factor)
}

fn to_symbols(fs: &FactorSet, word: &str) -> Option<Vec<Symbol>> {
    word.chars().map(|c| fs.alphabet().symbol(c)).collect()
}

/// Number of words `x v c` present, over the given extensions.
fn survivors(fs: &FactorSet, v: &[Symbol], left: &[Symbol], right: &[Symbol]) -> usize {
    let mut buf = Vec::with_capacity(v.len() + 2);
    let mut n = 0;
    for &x in left {
        for &c in right {
            buf.clear();
            buf.push(x);
            buf.extend_from_slice(v);
            buf.push(c);
            n += usize::from(fs.contains(&buf));
        }
    }
    n
}

/// Variables (by kind and base word) and right-hand side of the constraint
/// for the deleted word `x v c`.
fn constraint_terms(
    sym: &[Symbol],
    base: usize,
    oriented: bool,
    left: &[Symbol],
    right: &[Symbol],
) -> (Vec<(char, Vec<Symbol>)>, bool) {
    let k = sym.len() - 2;
    let v = &sym[1..=k];
    let x_hi = sym[0] == *left.iter().max().expect("two letters");
    let c_hi = sym[k + 1] == *right.iter().max().expect("two letters");
    let mut terms = vec![('P', v[..base].to_vec()), ('Q', v[k - base..].to_vec())];
    if !oriented {
        for j in 0..=k - base {
            terms.push(('M', v[j..j + base].to_vec()));
        }
    }
    (terms, true ^ x_hi ^ c_hi)
}

fn structural(fs: &FactorSet, k: usize, with_transition: bool) -> Option<Witness> {
    let n = fs.complexity(k).expect("in range") as FactorId;
    for v in 0..n {
        let inn = fs.left_children(k, v).len();
        let out = fs.right_children(k, v).count();
        for (deg, side) in [(inn, Side::Left), (out, Side::Right)] {
            if deg > 2 {
                return Some(Witness::Valence {
                    k,
                    factor: fs.render(k, v),
                    side,
                    valence: deg,
                });
            }
        }
    }
    if with_transition {
        let mut buf = Vec::with_capacity(k + 2);
        for v in 0..n {
            let left = fs.left_extensions(k, v);
            let right = fs.right_extensions(k, v);
            let sym = fs.symbols(k, v);
            if left.len() == 2 && right.len() == 2 {
                if survivors(fs, sym, &left, &right) == 4 {
                    return Some(Witness::StrongBispecial {
                        k,
                        factor: fs.render(k, v),
                    });
                }
                continue;
            }
            for &x in &left {
                for &c in &right {
                    buf.clear();
                    buf.push(x);
                    buf.extend_from_slice(sym);
                    buf.push(c);
                    if !fs.contains(&buf) {
                        return Some(Witness::NonBispecialDeletion {
                            k,
                            factor: fs.render(k, v),
                            word: fs.alphabet().render(&buf),
                        });
                    }
                }
            }
        }
    }
    if !level_strongly_connected(fs, k) {
        return Some(Witness::LostStrongConnectivity { k });
    }
    None
}

/// Solves the labeling system for base order `base` on `[base, last]`
/// (`last` is the highest order with an observable transition). On failure
/// returns the order whose constraints closed the contradiction.
fn solve(
    fs: &FactorSet,
    base: usize,
    last: usize,
    oriented: bool,
) -> Result<Labeling, (usize, Witness)> {
    let n = fs.complexity(base).expect("in range");
    let mut p_var = vec![None; n];
    let mut q_var = vec![None; n];
    let mut vars = 0;
    for v in 0..n as FactorId {
        if fs.left_children(base, v).len() == 2 {
            p_var[v as usize] = Some(vars);
            vars += 1;
        }
        if fs.right_children(base, v).count() == 2 {
            q_var[v as usize] = Some(vars);
            vars += 1;
        }
    }
    let m_base = vars;
    if !oriented {
        vars += n;
    }
    let mut system = Gf2System::new(vars);
    let mut constraints: Vec<DeletionConstraint> = Vec::new();
    let mut buf = Vec::new();
    for k in base..=last {
        for v in 0..fs.complexity(k).expect("in range") as FactorId {
            let left = fs.left_extensions(k, v);
            let right = fs.right_extensions(k, v);
            if left.len() != 2 || right.len() != 2 {
                continue;
            }
            for &x in &left {
                for &c in &right {
                    buf.clear();
                    buf.push(x);
                    buf.extend_from_slice(fs.symbols(k, v));
                    buf.push(c);
                    if fs.contains(&buf) {
                        continue;
                    }
                    let (terms, rhs) = constraint_terms(&buf, base, oriented, &left, &right);
                    let cols: Vec<usize> = terms
                        .iter()
                        .map(|(kind, w)| {
                            let id = fs.id_of(w).expect("subfactor") as usize;
                            match kind {
                                'P' => p_var[id].expect("prefix of an in-crotch is an in-crotch"),
                                'Q' => q_var[id].expect("suffix of an out-crotch is an out-crotch"),
                                _ => m_base + id,
                            }
                        })
                        .collect();
                    constraints.push(DeletionConstraint {
                        k,
                        word: fs.alphabet().render(&buf),
                    });
                    if let Err(rows) = system.add(&cols, rhs) {
                        return Err((
                            k,
                            Witness::LabelContradiction {
                                base,
                                oriented,
                                constraints: rows
                                    .into_iter()
                                    .map(|i| constraints[i].clone())
                                    .collect(),
                            },
                        ));
                    }
                }
            }
        }
    }
    let x = system.solve();
    let mut labeling = Labeling {
        base,
        in_crotches: BTreeMap::new(),
        out_crotches: BTreeMap::new(),
        marks: BTreeSet::new(),
    };
    for v in 0..n {
        let name = fs.render(base, v as FactorId);
        if let Some(i) = p_var[v] {
            labeling
                .in_crotches
                .insert(name.clone(), Label::from_bit(x[i]));
        }
        if let Some(i) = q_var[v] {
            labeling
                .out_crotches
                .insert(name.clone(), Label::from_bit(x[i]));
        }
        if !oriented && x[m_base + v] {
            labeling.marks.insert(name);
        }
    }
    Ok(labeling)
}

/// Searches for a start order `K` in `[k_min, max(k_min, k_max / 2)]` from
/// which every check passes up to `k_max`.
pub fn validate_evolution(
    fs: &FactorSet,
    k_min: usize,
    k_max: usize,
    oriented: bool,
) -> Result<EvolutionReport, RauzyError> {
    if k_min == 0 || k_min > k_max || k_max + 1 > fs.max_len() {
        return Err(RauzyError::WindowOutOfRange {
            k_min,
            k_max,
            max_len: fs.max_len(),
        });
    }
    let cap = k_min.max(k_max / 2);
    // transitions G_k -> G_{k+1} need factors of length k + 2
    let last = k_max.min(fs.max_len() - 2);
    let mut start = k_min;
    let mut witness = None;
    for k in k_min..=k_max {
        if let Some(w) = structural(fs, k, k <= last) {
            start = k + 1;
            witness = Some(w);
        }
    }
    let report = |verdict, k_start, witness, labeling| EvolutionReport {
        window: (k_min, k_max),
        verdict,
        k_start,
        oriented,
        witness,
        labeling,
    };
    while start <= cap {
        match solve(fs, start, last, oriented) {
            Ok(labeling) => {
                let verdict = if start == k_min {
                    Verdict::Accepted
                } else {
                    Verdict::AcceptedFromK
                };
                return Ok(report(verdict, Some(start), None, Some(labeling)));
            }
            Err((k, w)) => {
                start = k + 1;
                witness = Some(w);
            }
        }
    }
    Ok(report(Verdict::Rejected, None, witness, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rauzy::label_follower;
    use crate::words::{generators, Word};

    #[test]
    fn fibonacci_accepted_from_one() {
        let fs = FactorSet::new(&generators::fibonacci(10_000), 32).unwrap();
        let r = validate_evolution(&fs, 1, 30, true).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert_eq!(r.k_start, Some(1));
        assert_eq!(r.machine_line(), "verdict=accepted;K=1;witness=none");
    }

    #[test]
    fn tribonacci_has_valence_three() {
        let fs = FactorSet::new(&generators::tribonacci(10_000), 22).unwrap();
        for oriented in [true, false] {
            let r = validate_evolution(&fs, 1, 20, oriented).unwrap();
            assert_eq!(r.verdict, Verdict::Rejected);
            let w = r.witness.unwrap();
            assert!(
                matches!(
                    w,
                    Witness::Valence {
                        side: Side::Left,
                        valence: 3,
                        ..
                    }
                ),
                "{w}"
            );
            assert!(w.verify(&fs));
        }
    }

    #[test]
    fn thue_morse_has_strong_bispecial() {
        let fs = FactorSet::new(&generators::thue_morse(1 << 14), 22).unwrap();
        let r = validate_evolution(&fs, 1, 20, true).unwrap();
        assert_eq!(r.verdict, Verdict::Rejected);
        let w = r.witness.unwrap();
        assert!(
            matches!(w, Witness::StrongBispecial { k, .. } if (10..=20).contains(&k)),
            "{w}"
        );
        assert!(w.verify(&fs));
    }

    #[test]
    fn window_errors() {
        let fs = FactorSet::new(&generators::fibonacci(100), 10).unwrap();
        assert!(validate_evolution(&fs, 0, 5, true).is_err());
        assert!(validate_evolution(&fs, 6, 5, true).is_err());
        assert!(validate_evolution(&fs, 1, 10, true).is_err());
        assert!(validate_evolution(&fs, 1, 9, true).is_ok());
    }

    #[test]
    fn periodic_word_is_accepted() {
        let fs = FactorSet::new(&Word::parse(&"aab".repeat(100)).unwrap(), 12).unwrap();
        let r = validate_evolution(&fs, 1, 10, true).unwrap();
        assert!(r.is_accepted());
    }

    #[test]
    fn labeling_matches_propagation() {
        let fs = FactorSet::new(&generators::fibonacci(10_000), 14).unwrap();
        let r = validate_evolution(&fs, 1, 12, true).unwrap();
        let lab = r.labeling.unwrap();
        for k in 1..12 {
            let here = lab.at_level(&fs, k).unwrap();
            let next = lab.at_level(&fs, k + 1).unwrap();
            let pushed = label_follower(&here)
                .unwrap()
                .restrict(next.base())
                .unwrap();
            assert_eq!(pushed, next, "k = {k}");
        }
    }

    #[test]
    fn forged_witnesses_fail_verification() {
        let fs = FactorSet::new(&generators::fibonacci(2000), 12).unwrap();
        assert!(!Witness::StrongBispecial {
            k: 1,
            factor: "a".into()
        }
        .verify(&fs));
        assert!(!Witness::LostStrongConnectivity { k: 3 }.verify(&fs));
        assert!(!Witness::Valence {
            k: 1,
            factor: "a".into(),
            side: Side::Left,
            valence: 3
        }
        .verify(&fs));
        let one = Witness::LabelContradiction {
            base: 1,
            oriented: true,
            constraints: vec![DeletionConstraint {
                k: 1,
                word: "aaa".into(),
            }],
        };
        assert!(!one.verify(&fs));
    }
}
