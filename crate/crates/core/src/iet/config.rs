//! Line-oriented IET config files.
//!
//! ```text
//! # golden rotation
//! k 2
//! d 5
//! lengths (3-1*sqrt(5))/2 (-1+1*sqrt(5))/2
//! perm 2 1
//! flips 0 0
//! letters a b
//! x0 0
//! sets a=[0,1/2);[1/2,1)
//! ```
//!
//! `k`, `lengths` and `perm` are required. `flips` defaults to all zero,
//! `letters` to `a b c ...`, `x0` to 0. Without `sets` the natural partition
//! is used.

use std::fmt::Write as _;

use super::{CodingConfig, IetError, IetSpec};
use crate::numerics::{parse_scalar, ExactScalar, Interval, IntervalSet, NumericsError};
use crate::ConfigError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IetConfig {
    pub spec: IetSpec,
    pub letters: Vec<char>,
    pub x0: ExactScalar,
    /// Explicit characteristic sets; `None` means the natural partition.
    pub sets: Option<CodingConfig>,
}

impl IetConfig {
    /// Natural letters `a, b, c, ...` and `x0 = 0`.
    pub fn natural(spec: IetSpec) -> Self {
        let letters = default_letters(spec.k());
        IetConfig {
            spec,
            letters,
            x0: ExactScalar::zero(),
            sets: None,
        }
    }

    pub fn coding(&self) -> Result<CodingConfig, IetError> {
        match &self.sets {
            Some(c) => Ok(c.clone()),
            None => CodingConfig::natural(&self.spec, &self.letters),
        }
    }
}

pub(crate) fn default_letters(k: usize) -> Vec<char> {
    (0..k)
        .map(|i| char::from_u32('a' as u32 + i as u32).unwrap_or('?'))
        .collect()
}

/// Whitespace-separated tokens, keeping parenthesised groups together.
/// Columns are 1-based.
fn tokens(text: &str, base: usize) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
            continue;
        }
        if cur.is_empty() {
            start = base + i;
        }
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

fn scalar_at(line: usize, col: usize, text: &str) -> Result<ExactScalar, ConfigError> {
    parse_scalar(text).map_err(|e| match e {
        NumericsError::Parse { column, message } => {
            ConfigError::new(line, col + column - 1, message)
        }
        other => ConfigError::new(line, col, other.to_string()),
    })
}

fn int_at(line: usize, col: usize, text: &str) -> Result<usize, ConfigError> {
    text.parse().map_err(|_| {
        ConfigError::new(
            line,
            col,
            format!("expected a non-negative integer, found `{text}`"),
        )
    })
}

/// Splits `s` at commas or semicolons outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn interval_at(line: usize, col: usize, text: &str) -> Result<Interval, ConfigError> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    let col = col + lead;
    let err = |c: usize, m: &str| ConfigError::new(line, c, m.to_string());
    let (Some(open), Some(close)) = (t.chars().next(), t.chars().last()) else {
        return Err(err(col, "empty interval"));
    };
    let lo_closed = match open {
        '[' => true,
        '(' => false,
        _ => return Err(err(col, "interval must start with `[` or `(`")),
    };
    let hi_closed = match close {
        ']' => true,
        ')' => false,
        _ => return Err(err(col + t.len() - 1, "interval must end with `]` or `)`")),
    };
    if t.len() < 2 {
        return Err(err(col, "empty interval"));
    }
    let inner = &t[1..t.len() - 1];
    // interior parentheses belong to scalars; the bracket pair is already gone
    let mut depth = 0i32;
    let mut comma = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                comma = Some(i);
                break;
            }
            _ => {}
        }
    }
    let comma = comma.ok_or_else(|| err(col + 1, "expected `lo,hi`"))?;
    let lo = scalar_at(line, col + 1, &inner[..comma])?;
    let hi = scalar_at(line, col + 2 + comma, &inner[comma + 1..])?;
    Interval::new(lo, hi, lo_closed, hi_closed)
        .map_err(|e| ConfigError::new(line, col, e.to_string()))
}

/// Parses a config file.
pub fn parse_config(text: &str) -> Result<IetConfig, ConfigError> {
    let mut k: Option<(usize, usize)> = None;
    let mut d: Option<(usize, u64)> = None;
    let mut lengths: Option<(usize, Vec<ExactScalar>)> = None;
    let mut perm: Option<(usize, Vec<usize>)> = None;
    let mut flips: Option<(usize, Vec<bool>)> = None;
    let mut letters: Option<(usize, Vec<char>)> = None;
    let mut x0: Option<(usize, ExactScalar)> = None;
    let mut sets: Vec<(usize, char, IntervalSet)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let trimmed = body.trim_start();
        let key_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let key = &trimmed[..key_len];
        let rest = &trimmed[key_len..];
        let rest_col = lead + key_len + 1;
        let toks = tokens(rest, rest_col);
        let dup = |seen: bool| {
            if seen {
                Err(ConfigError::new(
                    line,
                    lead + 1,
                    format!("duplicate `{key}` line"),
                ))
            } else {
                Ok(())
            }
        };
        let single = |toks: &[(usize, String)]| -> Result<(usize, String), ConfigError> {
            match toks {
                [one] => Ok(one.clone()),
                _ => Err(ConfigError::new(
                    line,
                    rest_col,
                    format!("`{key}` takes one value"),
                )),
            }
        };
        match key {
            "k" => {
                dup(k.is_some())?;
                let (c, t) = single(&toks)?;
                k = Some((line, int_at(line, c, &t)?));
            }
            "d" => {
                dup(d.is_some())?;
                let (c, t) = single(&toks)?;
                d = Some((line, int_at(line, c, &t)? as u64));
            }
            "lengths" => {
                dup(lengths.is_some())?;
                let v = toks
                    .iter()
                    .map(|(c, t)| scalar_at(line, *c, t))
                    .collect::<Result<Vec<_>, _>>()?;
                lengths = Some((line, v));
            }
            "perm" => {
                dup(perm.is_some())?;
                let v = toks
                    .iter()
                    .map(|(c, t)| int_at(line, *c, t))
                    .collect::<Result<Vec<_>, _>>()?;
                perm = Some((line, v));
            }
            "flips" => {
                dup(flips.is_some())?;
                let v = toks
                    .iter()
                    .map(|(c, t)| match t.as_str() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        _ => Err(ConfigError::new(
                            line,
                            *c,
                            format!("flip must be 0 or 1, found `{t}`"),
                        )),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                flips = Some((line, v));
            }
            "letters" => {
                dup(letters.is_some())?;
                let v: Vec<char> = toks.iter().flat_map(|(_, t)| t.chars()).collect();
                letters = Some((line, v));
            }
            "x0" => {
                dup(x0.is_some())?;
                let (c, t) = single(&toks)?;
                x0 = Some((line, scalar_at(line, c, &t)?));
            }
            "sets" => {
                let spec = rest.trim_start();
                let spec_col = rest_col + (rest.len() - spec.len());
                let mut chars = spec.chars();
                let letter = chars.next().ok_or_else(|| {
                    ConfigError::new(line, spec_col, "expected `<letter>=<intervals>`")
                })?;
                let after = chars.as_str().trim_start();
                let Some(list) = after.strip_prefix('=') else {
                    return Err(ConfigError::new(
                        line,
                        spec_col + 1,
                        "expected `=` after the letter",
                    ));
                };
                let list_col = spec_col + (spec.len() - list.len());
                let mut parts = Vec::new();
                for (off, piece) in split_top(list, ';') {
                    parts.push(interval_at(line, list_col + off, piece)?);
                }
                if sets.iter().any(|(_, c, _)| *c == letter) {
                    return Err(ConfigError::new(
                        line,
                        spec_col,
                        format!("duplicate set for {letter:?}"),
                    ));
                }
                sets.push((line, letter, IntervalSet::from_parts(parts)));
            }
            other => {
                return Err(ConfigError::new(
                    line,
                    lead + 1,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }

    let (k_line, k) = k.ok_or_else(|| ConfigError::new(0, 0, "missing `k` line"))?;
    let (len_line, lengths) =
        lengths.ok_or_else(|| ConfigError::new(0, 0, "missing `lengths` line"))?;
    let (perm_line, perm) = perm.ok_or_else(|| ConfigError::new(0, 0, "missing `perm` line"))?;
    let count_check = |line: usize, got: usize, what: &str| {
        if got == k {
            Ok(())
        } else {
            Err(ConfigError::new(
                line,
                1,
                format!("{what} has {got} entries, k = {k}"),
            ))
        }
    };
    if k == 0 {
        return Err(ConfigError::new(k_line, 1, "k must be at least 1"));
    }
    count_check(len_line, lengths.len(), "lengths")?;
    count_check(perm_line, perm.len(), "perm")?;
    let flips = match flips {
        Some((line, f)) => {
            count_check(line, f.len(), "flips")?;
            f
        }
        None => vec![false; k],
    };
    let letters = match letters {
        Some((line, l)) => {
            count_check(line, l.len(), "letters")?;
            l
        }
        None => default_letters(k),
    };
    let spec = IetSpec::new(lengths, &perm, flips)
        .map_err(|e| ConfigError::new(len_line, 1, e.to_string()))?;
    if let Some((line, d)) = d {
        if spec.radicand() != 0 && spec.radicand() != d {
            return Err(ConfigError::new(
                line,
                1,
                format!(
                    "d = {d} but the lengths live in Q(sqrt({}))",
                    spec.radicand()
                ),
            ));
        }
    }
    let x0 = match x0 {
        Some((line, x)) => {
            spec.check_domain(&x)
                .map_err(|e| ConfigError::new(line, 1, e.to_string()))?;
            x
        }
        None => ExactScalar::zero(),
    };
    let sets = if sets.is_empty() {
        None
    } else {
        let first = sets[0].0;
        let cfg = CodingConfig::new(sets.into_iter().map(|(_, c, s)| (c, s)).collect())
            .map_err(|e| ConfigError::new(first, 1, e.to_string()))?;
        Some(cfg)
    };
    Ok(IetConfig {
        spec,
        letters,
        x0,
        sets,
    })
}

/// Renders a config that [`parse_config`] reads back to an equal value.
pub fn render_config(cfg: &IetConfig) -> String {
    let t = &cfg.spec;
    let mut out = String::new();
    let join = |v: Vec<String>| v.join(" ");
    let _ = writeln!(out, "k {}", t.k());
    if t.radicand() != 0 {
        let _ = writeln!(out, "d {}", t.radicand());
    }
    let _ = writeln!(
        out,
        "lengths {}",
        join(t.lengths().iter().map(|l| l.to_literal()).collect())
    );
    let _ = writeln!(
        out,
        "perm {}",
        join(t.permutation().iter().map(|p| p.to_string()).collect())
    );
    let _ = writeln!(
        out,
        "flips {}",
        join(
            t.flips()
                .iter()
                .map(|&f| if f { "1" } else { "0" }.to_string())
                .collect()
        )
    );
    let _ = writeln!(
        out,
        "letters {}",
        join(cfg.letters.iter().map(|c| c.to_string()).collect())
    );
    let _ = writeln!(out, "x0 {}", cfg.x0.to_literal());
    if let Some(sets) = &cfg.sets {
        for (c, s) in sets.letters().iter().zip(sets.sets()) {
            let _ = writeln!(out, "sets {c}={s}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::tests::golden_iet;

    const GOLDEN: &str = "\
# golden rotation
k 2
d 5
lengths (3-1*sqrt(5))/2 (-1 + 1*sqrt(5))/2
perm 2 1
flips 0 0
";

    #[test]
    fn parses_golden() {
        let cfg = parse_config(GOLDEN).unwrap();
        assert_eq!(cfg.spec, golden_iet());
        assert_eq!(cfg.letters, vec!['a', 'b']);
        assert_eq!(cfg.x0, ExactScalar::zero());
        assert!(cfg.sets.is_none());
    }

    #[test]
    fn round_trip_with_sets() {
        let text =
            format!("{GOLDEN}letters x y\nx0 1/3\nsets x=[0,1/2);[3/4,1)\nsets y=[1/2,3/4)\n");
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.sets.as_ref().unwrap().letters(), &['x', 'y']);
        let again = parse_config(&render_config(&cfg)).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_config("k 2\nlengths 1/2 1/0\nperm 2 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 15));
        let err = parse_config("k 2\nlengths 1/2 1/2\nperm 2 1\nflips 0 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 9));
        let err = parse_config("k 2\nlengths 1/2 1/2\nperm 2 1\nbogus 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 1));
        let err = parse_config("k 2\nlengths 1/2 1/3\nperm 2 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("sum"));
        let err = parse_config("k 3\nlengths 1/2 1/2\nperm 2 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_config(&format!("{GOLDEN}sets a=[0,1/2)\nsets b=[1/3,1)\n")).unwrap_err();
        assert_eq!(err.line, 7);
    }

    #[test]
    fn radicand_mismatch() {
        let text = GOLDEN.replace("d 5", "d 2");
        assert_eq!(parse_config(&text).unwrap_err().line, 3);
    }
}
