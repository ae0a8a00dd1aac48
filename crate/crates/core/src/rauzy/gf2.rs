//! Incremental Gaussian elimination over GF(2) with provenance tracking.

#[derive(Clone, Debug)]
struct Row {
    bits: Vec<u64>,
    rhs: bool,
    /// Indices of the input equations summed into this row.
    prov: Vec<u64>,
}

fn xor_into(dst: &mut Vec<u64>, src: &[u64]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), 0);
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn ones(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

/// Rows are reduced to have distinct lowest set bits (the pivot). Low
/// columns are therefore eliminated first; free variables solve to zero.
#[derive(Clone, Debug)]
pub(crate) struct Gf2System {
    words: usize,
    pivots: Vec<Option<Row>>,
    equations: usize,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Gf2System {
            words: vars.div_ceil(64).max(1),
            pivots: vec![None; vars],
            equations: 0,
        }
    }

    /// Adds `sum of vars = rhs` (repeated variables cancel). On
    /// inconsistency returns the indices of the equations whose sum reads
    /// `0 = 1`; the system is left unchanged.
    pub fn add(&mut self, vars: &[usize], rhs: bool) -> Result<(), Vec<usize>> {
        let id = self.equations;
        self.equations += 1;
        let mut bits = vec![0u64; self.words];
        for &v in vars {
            bits[v / 64] ^= 1 << (v % 64);
        }
        let mut prov = vec![0u64; id / 64 + 1];
        prov[id / 64] |= 1 << (id % 64);
        let mut row = Row { bits, rhs, prov };
        while let Some(col) = lowest_bit(&row.bits) {
            match &self.pivots[col] {
                Some(p) => {
                    xor_into(&mut row.bits, &p.bits);
                    row.rhs ^= p.rhs;
                    xor_into(&mut row.prov, &p.prov);
                }
                None => {
                    self.pivots[col] = Some(row);
                    return Ok(());
                }
            }
        }
        if row.rhs {
            Err(ones(&row.prov))
        } else {
            Ok(())
        }
    }

    pub fn solve(&self) -> Vec<bool> {
        let mut x = vec![false; self.pivots.len()];
        for col in (0..self.pivots.len()).rev() {
            if let Some(p) = &self.pivots[col] {
                let mut v = p.rhs;
                for j in ones(&p.bits) {
                    if j != col {
                        v ^= x[j];
                    }
                }
                x[col] = v;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_prefers_zero_high_columns() {
        let mut s = Gf2System::new(3);
        s.add(&[0, 2], true).unwrap();
        s.add(&[1], false).unwrap();
        assert_eq!(s.solve(), vec![true, false, false]);
    }

    #[test]
    fn contradiction_names_its_sources() {
        let mut s = Gf2System::new(130);
        s.add(&[0, 129], true).unwrap();
        s.add(&[5], false).unwrap();
        s.add(&[129, 64], false).unwrap();
        assert_eq!(s.add(&[0, 64], false), Err(vec![0, 2, 3]));
        // the failed row is not kept
        s.add(&[0, 64], true).unwrap();
    }

    #[test]
    fn repeated_variables_cancel() {
        let mut s = Gf2System::new(2);
        assert_eq!(s.add(&[1, 1], true), Err(vec![0]));
        s.add(&[1, 1], false).unwrap();
    }
}
