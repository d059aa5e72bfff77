//! Full range precomputation inside a column window.
//!
//! Every contiguous range of a `w`-variable window becomes a stored gate via
//! `range(a, b) = range(a, b-1) . x_b`, costing `w(w-1)/2` gates. Queries
//! inside the window are free; anything else is out of scope for this
//! scheme.

use super::{QueryPlan, RangeError, RangeQuery, RangeStrategy, SchemeKind};
use crate::circuit::{Circuit, CircuitBuilder, Ref};

pub(crate) struct WindowIndex {
    /// First variable covered by the window.
    pub offset: usize,
    pub w: usize,
    /// Row-major `[la][lb]` over window-local coordinates, `la <= lb`.
    table: Vec<Ref>,
}

/// Precompute all ranges of `vars[offset..offset + w]`. `vars` may be
/// longer; only the window slice is touched.
pub(crate) fn build_window_pool(
    b: &mut CircuitBuilder,
    vars: &[Ref],
    offset: usize,
    w: usize,
) -> WindowIndex {
    debug_assert!(w >= 1 && offset + w <= vars.len());
    let slice = &vars[offset..offset + w];
    let mut table = vec![slice[0]; w * w];
    for la in 0..w {
        table[la * w + la] = slice[la];
        for lb in la + 1..w {
            let prev = table[la * w + lb - 1];
            table[la * w + lb] = b.raw_gate(vec![prev, slice[lb]]);
        }
    }
    WindowIndex { offset, w, table }
}

impl WindowIndex {
    /// The stored gate for `(l, r)`, if the range lies inside the window.
    pub fn get(&self, l: usize, r: usize) -> Option<Ref> {
        if l < self.offset || r >= self.offset + self.w || l > r {
            return None;
        }
        let (la, lb) = (l - self.offset, r - self.offset);
        Some(self.table[la * self.w + lb])
    }

    pub fn contains(&self, l: usize, r: usize) -> bool {
        l >= self.offset && r < self.offset + self.w
    }
}

/// Every range of the window `offset..offset + w` as a stored gate.
pub struct WindowScheme {
    circuit: Circuit,
    index: WindowIndex,
}

pub fn build_window_all_ranges(offset: usize, w: usize) -> Result<WindowScheme, RangeError> {
    if w == 0 {
        return Err(RangeError::EmptyScheme);
    }
    let n = offset + w;
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = (0..n).map(|j| b.input(j)).collect();
    let index = build_window_pool(&mut b, &vars, offset, w);
    Ok(WindowScheme {
        circuit: b.finish(),
        index,
    })
}

impl WindowScheme {
    pub fn offset(&self) -> usize {
        self.index.offset
    }

    pub fn window_len(&self) -> usize {
        self.index.w
    }
}

impl RangeStrategy for WindowScheme {
    fn kind(&self) -> SchemeKind {
        SchemeKind::Window
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
        let mut out = Vec::with_capacity(self.index.w * (self.index.w + 1) / 2);
        for l in self.index.offset..self.index.offset + self.index.w {
            for r in l..self.index.offset + self.index.w {
                out.push(((l, r), self.index.get(l, r).unwrap()));
            }
        }
        out
    }

    fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError> {
        q.check(self.base_len())?;
        match self.index.get(q.l, q.r) {
            Some(gate) => Ok(QueryPlan::single((q.l, q.r), gate)),
            None => Err(RangeError::Unsupported {
                l: q.l,
                r: q.r,
                scheme: "window",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Multiset;

    #[test]
    fn gate_count_is_w_choose_2() {
        for w in 1..=64 {
            let s = build_window_all_ranges(0, w).unwrap();
            assert_eq!(s.circuit().gate_count(), w * (w - 1) / 2, "w={w}");
        }
        assert_eq!(
            build_window_all_ranges(0, 4)
                .unwrap()
                .circuit()
                .gate_count(),
            6
        );
        assert_eq!(
            build_window_all_ranges(0, 1)
                .unwrap()
                .circuit()
                .gate_count(),
            0
        );
    }

    #[test]
    fn every_range_of_a_ten_window_is_exact() {
        let s = build_window_all_ranges(3, 10).unwrap();
        let values = s.circuit().gate_multisets();
        let ranges = s.indexed_ranges();
        assert_eq!(ranges.len(), 55);
        for ((l, r), gate) in ranges {
            let ms = match gate {
                Ref::Input(j) => Multiset::unit(j),
                Ref::Gate(k) => values[k as usize].clone(),
            };
            assert_eq!(ms, Multiset::contiguous(l as u32, r as u32));
        }
    }

    #[test]
    fn ranges_outside_the_window_are_unsupported() {
        let s = build_window_all_ranges(3, 4).unwrap();
        assert!(s.plan(RangeQuery::new(0, 5)).is_err());
        assert!(s.plan(RangeQuery::new(2, 3)).is_err());
        assert!(s.plan(RangeQuery::new(3, 6)).is_ok());
    }
}
