//! Finite subsets of `[n] = {1, …, n}` for `n ≤ 64`, stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_ELEMENT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("element {0} outside 1..={MAX_ELEMENT}")]
    OutOfRange(usize),
    #[error("cannot parse subset from {0:?}")]
    Parse(String),
}

/// A subset of `[64]`. Ordering compares the increasing element sequences
/// lexicographically, so `{1,2} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn new(elems: impl IntoIterator<Item = usize>) -> Result<Self, SubsetError> {
        let mut bits = 0u64;
        for e in elems {
            if e == 0 || e > MAX_ELEMENT {
                return Err(SubsetError::OutOfRange(e));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    /// Panics on elements outside `1..=64`; for literals in code and tests.
    pub fn of(elems: &[usize]) -> Self {
        Self::new(elems.iter().copied()).expect("element out of range")
    }

    /// Each decimal digit is one element: `"135"` is `{1,3,5}`.
    pub fn digits(s: &str) -> Self {
        Self::of(&s.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect::<Vec<_>>())
    }

    /// `[lo..hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Subset::EMPTY;
        }
        Self::of(&(lo..=hi).collect::<Vec<_>>())
    }

    /// `[n]`.
    pub fn full(n: usize) -> Self {
        Self::interval(1, n)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENT).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!((1..=MAX_ELEMENT).contains(&e), "element out of range");
        self.0 |= 1 << (e - 1);
    }

    pub fn remove(&mut self, e: usize) {
        if (1..=MAX_ELEMENT).contains(&e) {
            self.0 &= !(1 << (e - 1));
        }
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// `[n] ∖ self`.
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Sum of the elements.
    pub fn sum(self) -> usize {
        self.iter().sum()
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(e)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `k`-th smallest element, 1-based.
    pub fn nth(self, k: usize) -> Option<usize> {
        self.iter().nth(k.checked_sub(1)?)
    }

    /// Rank of `e` within the set (1-based), if present.
    pub fn rank(self, e: usize) -> Option<usize> {
        self.contains(e).then(|| self.intersection(Subset::interval(1, e)).len())
    }

    /// Whether the set is `[q..r]` for some `q ≤ r`.
    pub fn is_interval(self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo + 1 == self.len(),
            _ => false,
        }
    }

    /// Image under `i ↦ map[i-1]`.
    pub fn map_through(self, map: &[usize]) -> Subset {
        Subset::of(&self.iter().map(|i| map[i - 1]).collect::<Vec<_>>())
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }

    /// All `k`-subsets of `[n]`, in lexicographic order.
    pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Subset::of(&idx));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < n - (k - 1 - i) {
                    idx[i] += 1;
                    for t in i + 1..k {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Compact rendering used in reports: `135` when every element is a
    /// single digit, otherwise `{1,3,15}`.
    pub fn compact(self) -> String {
        if self.iter().all(|e| e < 10) && !self.is_empty() {
            self.iter().map(|e| e.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Subset::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// Accepts `{1,3}`, `1 3`, `1,3` or `{}`.
impl FromStr for Subset {
    type Err = SubsetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut elems = Vec::new();
        for tok in inner.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            elems.push(tok.parse::<usize>().map_err(|_| SubsetError::Parse(s.into()))?);
        }
        Subset::new(elems)
    }
}
