//! Prefix and suffix chains.

use super::{QueryPlan, RangeError, RangeQuery, RangeStrategy, SchemeKind};
use crate::circuit::{Circuit, CircuitBuilder, Ref};

/// Chain state for one variable list: `prefixes[i]` computes variables
/// `0..=i`, `suffixes[j]` computes `j..=n-1`. Built with `2(n-1)` gates.
pub(crate) struct PsChains {
    pub prefixes: Vec<Ref>,
    pub suffixes: Vec<Ref>,
}

pub(crate) fn build_chains(b: &mut CircuitBuilder, vars: &[Ref]) -> PsChains {
    let n = vars.len();
    let mut prefixes = Vec::with_capacity(n);
    prefixes.push(vars[0]);
    for &v in &vars[1..] {
        let prev = *prefixes.last().unwrap();
        prefixes.push(b.raw_gate(vec![prev, v]));
    }
    let mut suffixes = vec![vars[n - 1]];
    for &v in vars[..n - 1].iter().rev() {
        let prev = *suffixes.last().unwrap();
        suffixes.push(b.raw_gate(vec![v, prev]));
    }
    suffixes.reverse();
    PsChains { prefixes, suffixes }
}

/// All prefixes and all suffixes of `n` variables.
pub struct PrefixSuffixScheme {
    circuit: Circuit,
    chains: PsChains,
}

pub fn build_prefix_suffix(n: usize) -> Result<PrefixSuffixScheme, RangeError> {
    if n == 0 {
        return Err(RangeError::EmptyScheme);
    }
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = (0..n).map(|j| b.input(j)).collect();
    let chains = build_chains(&mut b, &vars);
    Ok(PrefixSuffixScheme {
        circuit: b.finish(),
        chains,
    })
}

impl PrefixSuffixScheme {
    pub fn prefix(&self, i: usize) -> Ref {
        self.chains.prefixes[i]
    }

    pub fn suffix(&self, j: usize) -> Ref {
        self.chains.suffixes[j]
    }
}

impl RangeStrategy for PrefixSuffixScheme {
    fn kind(&self) -> SchemeKind {
        SchemeKind::PrefixSuffix
    }

    fn base_len(&self) -> usize {
        self.circuit.n_inputs()
    }

    fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    fn extra_budget(&self) -> usize {
        0
    }

    fn indexed_ranges(&self) -> Vec<((usize, usize), Ref)> {
        let n = self.base_len();
        let mut out = Vec::with_capacity(2 * n);
        for (i, &r) in self.chains.prefixes.iter().enumerate() {
            out.push(((0, i), r));
        }
        for (j, &r) in self.chains.suffixes.iter().enumerate() {
            out.push(((j, n - 1), r));
        }
        out
    }

    fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError> {
        let n = self.base_len();
        q.check(n)?;
        if q.l == 0 {
            Ok(QueryPlan::single((q.l, q.r), self.chains.prefixes[q.r]))
        } else if q.r == n - 1 {
            Ok(QueryPlan::single((q.l, q.r), self.chains.suffixes[q.l]))
        } else {
            Err(RangeError::Unsupported {
                l: q.l,
                r: q.r,
                scheme: "prefix-suffix",
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{Value, Word, WORD};

    #[test]
    fn gate_count_is_2n_minus_2() {
        for n in 1..=64 {
            let s = build_prefix_suffix(n).unwrap();
            let expected = if n == 1 { 0 } else { 2 * (n - 1) };
            assert_eq!(s.circuit().gate_count(), expected, "n={n}");
        }
    }

    #[test]
    fn degenerate_single_variable() {
        let s = build_prefix_suffix(1).unwrap();
        assert_eq!(s.circuit().gate_count(), 0);
        assert_eq!(s.prefix(0), Ref::Input(0));
        assert_eq!(s.suffix(0), Ref::Input(0));
    }

    // Words computed by every chain gate are increasing; spot the exact
    // word of prefix p_2 over five variables.
    #[test]
    fn chains_are_increasing_words() {
        let s = build_prefix_suffix(5).unwrap();
        let xs: Vec<Value> = (0..5).map(|j| Value::Word(Word::letter(j))).collect();
        let words = s.circuit().gate_values(&WORD, &xs).unwrap();
        for w in &words {
            if let Value::Word(w) = w {
                assert!(w.is_strictly_increasing());
            }
        }
        let g = match s.prefix(2) {
            Ref::Gate(k) => k,
            Ref::Input(_) => unreachable!(),
        };
        assert_eq!(
            words[g as usize],
            Value::Word(Word::from_letters(vec![0, 1, 2]).unwrap())
        );
    }
}
