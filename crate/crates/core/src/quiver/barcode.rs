//! Interval indecomposables (bar codes) with integer endpoints.
//!
//! Endpoints index critical positions. For line representations they are
//! plain integers; for circle representations the canonical form keeps
//! `1 ≤ left ≤ m` and stores the absolute right end `j + m·k` (k = wrap
//! count), so `(i,j];k` is the code with `left = i`, `right = j + m·k`.
//!
//! The "fine" coordinate doubles indices: even vertex l sits at `2l`, the odd
//! vertex between l−1 and l sits at `2l−1`. A code occupies the fine interval
//! `[support_min, support_max]`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BarCode {
    pub left: i64,
    pub right: i64,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl BarCode {
    pub fn new(left: i64, right: i64, left_closed: bool, right_closed: bool) -> BarCode {
        let c = BarCode { left, right, left_closed, right_closed };
        assert!(c.is_valid(), "invalid bar code {c}");
        c
    }

    pub fn closed(left: i64, right: i64) -> BarCode {
        BarCode::new(left, right, true, true)
    }

    pub fn open(left: i64, right: i64) -> BarCode {
        BarCode::new(left, right, false, false)
    }

    pub fn is_valid(&self) -> bool {
        if self.left_closed && self.right_closed {
            self.left <= self.right
        } else {
            self.left < self.right
        }
    }

    pub fn is_closed(&self) -> bool {
        self.left_closed && self.right_closed
    }

    pub fn is_open(&self) -> bool {
        !self.left_closed && !self.right_closed
    }

    pub fn is_mixed(&self) -> bool {
        self.left_closed != self.right_closed
    }

    /// First fine vertex in the support.
    pub fn support_min(&self) -> i64 {
        if self.left_closed {
            2 * self.left
        } else {
            2 * self.left + 1
        }
    }

    /// Last fine vertex in the support.
    pub fn support_max(&self) -> i64 {
        if self.right_closed {
            2 * self.right
        } else {
            2 * self.right - 1
        }
    }

    /// Reconstruct a code from its fine support interval.
    pub fn from_support(smin: i64, smax: i64) -> BarCode {
        assert!(smin <= smax);
        let (left, left_closed) = if smin % 2 == 0 {
            (smin / 2, true)
        } else {
            ((smin - 1) / 2, false)
        };
        let (right, right_closed) = if smax % 2 == 0 {
            (smax / 2, true)
        } else {
            ((smax + 1) / 2, false)
        };
        BarCode::new(left, right, left_closed, right_closed)
    }

    pub fn translate(&self, shift: i64) -> BarCode {
        BarCode {
            left: self.left + shift,
            right: self.right + shift,
            ..*self
        }
    }

    /// Canonical circle form: shift by multiples of m until `1 ≤ left ≤ m`.
    pub fn normalized(&self, m: usize) -> BarCode {
        let m = m as i64;
        let shift = (self.left - 1).rem_euclid(m) + 1 - self.left;
        self.translate(shift)
    }

    /// Wrap count of a normalized circle code: right = j + m·k with 1 ≤ j ≤ m.
    pub fn wrap_count(&self, m: usize) -> i64 {
        let m = m as i64;
        (self.right - 1).div_euclid(m)
    }

    /// Restrict to the window of critical indices [lo, hi]; `None` when the
    /// supports do not meet. A clipped end is closed at the window edge.
    pub fn clip(&self, lo: i64, hi: i64) -> Option<BarCode> {
        assert!(lo <= hi);
        if self.support_min() > 2 * hi || self.support_max() < 2 * lo {
            return None;
        }
        let (left, left_closed) = if self.left >= lo {
            (self.left, self.left_closed)
        } else {
            (lo, true)
        };
        let (right, right_closed) = if self.right <= hi {
            (self.right, self.right_closed)
        } else {
            (hi, true)
        };
        Some(BarCode::new(left, right, left_closed, right_closed))
    }

    /// Number of lifts `self + m·t` whose support covers the fine vertex `v`.
    pub fn coverage_mod(&self, v: i64, m: usize) -> usize {
        let period = 2 * m as i64;
        let smin = self.support_min();
        let smax = self.support_max();
        // count t with smin ≤ v + period·t ≤ smax
        let lo = num::Integer::div_ceil(&(smin - v), &period);
        let hi = (smax - v).div_euclid(period);
        (hi - lo + 1).max(0) as usize
    }
}

impl fmt::Display for BarCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.left_closed { '[' } else { '(' },
            self.left,
            self.right,
            if self.right_closed { ']' } else { ')' },
        )
    }
}

/// Multiset of bar codes with deterministic ordering.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CodeMultiset {
    counts: BTreeMap<BarCode, usize>,
}

impl CodeMultiset {
    pub fn new() -> CodeMultiset {
        CodeMultiset::default()
    }

    pub fn from_codes<I: IntoIterator<Item = BarCode>>(codes: I) -> CodeMultiset {
        let mut s = CodeMultiset::new();
        for c in codes {
            s.add(c, 1);
        }
        s
    }

    pub fn add(&mut self, code: BarCode, count: usize) {
        if count > 0 {
            *self.counts.entry(code).or_insert(0) += count;
        }
    }

    /// Remove `count` copies; panics if not present (internal invariant).
    pub fn remove(&mut self, code: &BarCode, count: usize) {
        if count == 0 {
            return;
        }
        let c = self
            .counts
            .get_mut(code)
            .unwrap_or_else(|| panic!("multiset does not contain {code}"));
        assert!(*c >= count, "multiset holds {c} copies of {code}, removing {count}");
        *c -= count;
        if *c == 0 {
            self.counts.remove(code);
        }
    }

    pub fn count(&self, code: &BarCode) -> usize {
        self.counts.get(code).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BarCode, usize)> {
        self.counts.iter().map(|(c, &n)| (c, n))
    }

    /// Sorted expansion with multiplicity.
    pub fn to_vec(&self) -> Vec<BarCode> {
        let mut out = Vec::with_capacity(self.total());
        for (c, n) in self.iter() {
            out.extend(std::iter::repeat(*c).take(n));
        }
        out
    }
}
