//! The free commutative semigroup on the input variables.

use super::{Semigroup, SemigroupError, Value};
use std::fmt;

/// A nonempty multiset of variable indices with positive multiplicities,
/// stored as a sorted `(variable, multiplicity)` list. The semigroup
/// operation is pointwise multiplicity addition.
///
/// Evaluating a circuit over this instance with unit generators records, per
/// output, exactly the set of inputs reaching it and the number of
/// input-to-output paths for each (multiplicities saturate at `u64::MAX`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    entries: Vec<(u32, u64)>,
}

impl Multiset {
    /// The generator `x_var` with multiplicity one.
    pub fn unit(var: u32) -> Self {
        Multiset {
            entries: vec![(var, 1)],
        }
    }

    pub fn from_entries(mut entries: Vec<(u32, u64)>) -> Result<Self, SemigroupError> {
        entries.sort_unstable_by_key(|&(v, _)| v);
        let ok = !entries.is_empty()
            && entries.iter().all(|&(_, m)| m > 0)
            && entries.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(SemigroupError::BadValue {
                kind: "multiset",
                text: format!("{entries:?}"),
            });
        }
        Ok(Multiset { entries })
    }

    /// The set `{l..=r}`, each element once.
    pub fn contiguous(l: u32, r: u32) -> Self {
        Multiset {
            entries: (l..=r).map(|v| (v, 1)).collect(),
        }
    }

    /// Each listed variable once. `vars` must be sorted, distinct, nonempty.
    pub fn from_support(vars: &[u32]) -> Self {
        debug_assert!(!vars.is_empty() && vars.windows(2).all(|w| w[0] < w[1]));
        Multiset {
            entries: vars.iter().map(|&v| (v, 1)).collect(),
        }
    }

    pub fn merge(&self, other: &Multiset) -> Multiset {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (va, ma) = self.entries[i];
            let (vb, mb) = other.entries[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ma));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, mb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ma.saturating_add(mb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        out.extend_from_slice(&other.entries[j..]);
        Multiset { entries: out }
    }

    pub fn entries(&self) -> &[(u32, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, var: u32) -> u64 {
        match self.entries.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    /// True iff this is exactly `vars`, each with multiplicity one.
    /// `vars` must be sorted and distinct.
    pub fn is_unit_support(&self, vars: &[u32]) -> bool {
        self.entries.len() == vars.len()
            && self
                .entries
                .iter()
                .zip(vars)
                .all(|(&(v, m), &w)| v == w && m == 1)
    }

    /// Extend the generator map `var -> values[var]` to a homomorphism into
    /// `target` and apply it: fold each variable `mult` times.
    ///
    /// This is the freeness property in executable form: for a commutative
    /// `target`, substituting into a multiset result equals evaluating
    /// directly over `target`. Powers are taken by repeated squaring, so
    /// even saturated multiplicities stay cheap.
    pub fn substitute(
        &self,
        values: &[Value],
        target: &dyn Semigroup,
    ) -> Result<Value, SemigroupError> {
        let mut acc: Option<Value> = None;
        for &(var, mult) in &self.entries {
            let v = values.get(var as usize).ok_or(SemigroupError::BadValue {
                kind: "multiset",
                text: format!("variable x{var} out of range"),
            })?;
            let powered = power(target, v, mult)?;
            acc = Some(match acc {
                None => powered,
                Some(a) => target.combine(&a, &powered)?,
            });
        }
        acc.ok_or(SemigroupError::EmptyProduct)
    }
}

/// `x` combined with itself `m` times (`m >= 1`), by repeated squaring.
fn power(s: &dyn Semigroup, x: &Value, m: u64) -> Result<Value, SemigroupError> {
    debug_assert!(m >= 1);
    let mut result: Option<Value> = None;
    let mut base = x.clone();
    let mut m = m;
    loop {
        if m & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => s.combine(&r, &base)?,
            });
        }
        m >>= 1;
        if m == 0 {
            break;
        }
        base = s.combine(&base, &base)?;
    }
    result.ok_or(SemigroupError::EmptyProduct)
}

impl fmt::Display for Multiset {
    /// `x0:1 x3:2` style, sorted by variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{v}:{m}")?;
        }
        Ok(())
    }
}

pub(super) fn parse_multiset(text: &str) -> Result<Multiset, SemigroupError> {
    let bad = || SemigroupError::BadValue {
        kind: "multiset",
        text: text.to_string(),
    };
    let mut entries = Vec::new();
    for token in text.split_whitespace() {
        let body = token.strip_prefix('x').ok_or_else(bad)?;
        let (var, mult) = match body.split_once(':') {
            Some((v, m)) => (
                v.parse::<u32>().map_err(|_| bad())?,
                m.parse::<u64>().map_err(|_| bad())?,
            ),
            None => (body.parse::<u32>().map_err(|_| bad())?, 1),
        };
        entries.push((var, mult));
    }
    Multiset::from_entries(entries).map_err(|_| bad())
}
