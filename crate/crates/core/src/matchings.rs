//! Feasible nested matchings, configurations, exchange and balancedness.
//!
//! For a `p`-subset `A ⊆ [p+q]` (white elements; `Ā` black), a feasible
//! matching is a set `M` of `q` arcs `(i, j)`, `i < j`, such that
//!
//! 1. the arcs are disjoint and each joins a white and a black element,
//! 2. any two arc intervals are disjoint or nested,
//! 3. no element outside the arcs (a *free* element) lies under an arc.
//!
//! Two multicollections are *balanced* when every matching occurs equally
//! often among their members' feasible matchings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("arc ({0},{1}) must have i < j")]
    BadArc(usize, usize),
    #[error("{set} is not a {p}-subset of [{n}]")]
    BadMember { set: Subset, p: usize, n: usize },
    #[error("p = {p} must be at least q = {q} and q at least 1")]
    BadParameters { p: usize, q: usize },
    #[error("collections have parameters ({0},{1}) and ({2},{3})")]
    ParameterMismatch(usize, usize, usize, usize),
    #[error("arc {0} is not in the matching")]
    NotInMatching(Arc),
    #[error("cannot parse: {0}")]
    Parse(String),
}

/// An arc `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub i: usize,
    pub j: usize,
}

impl Arc {
    pub fn new(i: usize, j: usize) -> Result<Self, MatchingError> {
        if i < j && i >= 1 {
            Ok(Arc { i, j })
        } else {
            Err(MatchingError::BadArc(i, j))
        }
    }

    /// `[i..j]`.
    pub fn interval(self) -> Subset {
        Subset::interval(self.i, self.j)
    }

    pub fn ends(self) -> Subset {
        Subset::of(&[self.i, self.j])
    }

    pub fn covers(self, k: usize) -> bool {
        self.i <= k && k <= self.j
    }

    /// `(j − i + 1) / 2`: the number of arcs in a complete block under it.
    pub fn half_width(self) -> usize {
        (self.j - self.i).div_ceil(2)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A set of disjoint arcs, kept sorted. Nestedness is not enforced by the
/// type; [`NestedMatching::is_nested`] and [`is_feasible`] check it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedMatching {
    arcs: Vec<Arc>,
}

impl NestedMatching {
    pub fn new(mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        arcs.dedup();
        NestedMatching { arcs }
    }

    /// Panics on malformed pairs; for literals.
    pub fn of(pairs: &[(usize, usize)]) -> Self {
        Self::new(pairs.iter().map(|&(i, j)| Arc::new(i, j).expect("valid arc")).collect())
    }

    pub fn empty() -> Self {
        NestedMatching { arcs: Vec::new() }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    /// All arc endpoints.
    pub fn support(&self) -> Subset {
        self.arcs.iter().fold(Subset::EMPTY, |s, a| s.union(a.ends()))
    }

    pub fn is_disjoint(&self) -> bool {
        let mut seen = Subset::EMPTY;
        for a in &self.arcs {
            if !seen.is_disjoint(a.ends()) {
                return false;
            }
            seen = seen.union(a.ends());
        }
        true
    }

    /// No two arcs cross (`i < i′ < j < j′`).
    pub fn is_nested(&self) -> bool {
        self.arcs.iter().all(|a| {
            self.arcs
                .iter()
                .all(|b| !(a.i < b.i && b.i < a.j && a.j < b.j))
        })
    }

    /// Elements of `[n]` not used by any arc.
    pub fn free_elements(&self, n: usize) -> Subset {
        Subset::full(n).difference(self.support())
    }

    /// Arcs not covered by another arc.
    pub fn maximal_arcs(&self) -> Vec<Arc> {
        self.arcs
            .iter()
            .copied()
            .filter(|a| !self.arcs.iter().any(|b| b != a && b.i < a.i && a.j < b.j))
            .collect()
    }

    /// The arcs immediately inside `outer`, left to right.
    pub fn children(&self, outer: Arc) -> Vec<Arc> {
        let inside: Vec<Arc> = self
            .arcs
            .iter()
            .copied()
            .filter(|a| outer.i < a.i && a.j < outer.j)
            .collect();
        inside
            .iter()
            .copied()
            .filter(|a| !inside.iter().any(|b| b != a && b.i < a.i && a.j < b.j))
            .collect()
    }

    pub fn union(&self, other: &NestedMatching) -> NestedMatching {
        NestedMatching::new(self.arcs.iter().chain(&other.arcs).copied().collect())
    }

    /// Arcs as `(i1,j1) (i2,j2) …`.
    pub fn arcs_text(&self) -> String {
        self.arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for NestedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Accepts `(1,2) (3,4)`, `{(1,2),(3,4)}` or `{}`.
impl FromStr for NestedMatching {
    type Err = MatchingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut arcs = Vec::new();
        for chunk in body.split(')') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| MatchingError::Parse(s.into()))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| MatchingError::Parse(s.into()))?;
            let i = a.trim().parse().map_err(|_| MatchingError::Parse(s.into()))?;
            let j = b.trim().parse().map_err(|_| MatchingError::Parse(s.into()))?;
            arcs.push(Arc::new(i, j)?);
        }
        Ok(NestedMatching::new(arcs))
    }
}

/// Conditions 1–3 for `A ⊆ [p+q]`, `|A| = p`, `|M| = q`.
pub fn is_feasible(m: &NestedMatching, a: Subset, p: usize, q: usize) -> bool {
    let n = p + q;
    if a.len() != p || a.max().is_some_and(|x| x > n) || m.len() != q {
        return false;
    }
    if m.arcs.iter().any(|arc| arc.j > n || (a.contains(arc.i) == a.contains(arc.j))) {
        return false;
    }
    if !m.is_disjoint() || !m.is_nested() {
        return false;
    }
    let free = m.free_elements(n);
    !free.iter().any(|k| m.arcs.iter().any(|arc| arc.covers(k)))
}

/// `𝓜(A)`, sorted by arc list.
pub fn enumerate_feasible_matchings(a: Subset, p: usize, q: usize) -> Vec<NestedMatching> {
    let n = p + q;
    if a.len() != p || a.max().is_some_and(|x| x > n) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    scan(1, n, q, &|k| Some(a.contains(k)), &mut stack, &mut arcs, &mut out);
    out.sort();
    out
}

/// All matchings with `q` arcs on `[n]` that are disjoint, nested and leave
/// no free element under an arc, regardless of colouring.
pub fn enumerate_nested_matchings(n: usize, q: usize) -> Vec<NestedMatching> {
    if 2 * q > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    scan(1, n, q, &|_| None, &mut stack, &mut arcs, &mut out);
    out.sort();
    out
}

// Left-to-right scan. Open arcs sit on a stack, so arcs close in nested order;
// a free element may only appear when no arc is open. `color` returns the
// side of an element (or `None` to skip the bicolour test).
fn scan(
    k: usize,
    n: usize,
    q: usize,
    color: &dyn Fn(usize) -> Option<bool>,
    stack: &mut Vec<usize>,
    arcs: &mut Vec<Arc>,
    out: &mut Vec<NestedMatching>,
) {
    let remaining = n + 1 - k;
    let closed = arcs.len();
    let open = stack.len();
    // every open arc needs a closing element, every unopened arc two elements
    if closed + open > q || open + 2 * (q - closed - open) > remaining {
        return;
    }
    if k > n {
        if open == 0 && closed == q {
            out.push(NestedMatching::new(arcs.clone()));
        }
        return;
    }
    if let Some(&top) = stack.last() {
        let ok = match (color(top), color(k)) {
            (Some(x), Some(y)) => x != y,
            _ => true,
        };
        if ok {
            stack.pop();
            arcs.push(Arc { i: top, j: k });
            scan(k + 1, n, q, color, stack, arcs, out);
            arcs.pop();
            stack.push(top);
        }
    }
    stack.push(k);
    scan(k + 1, n, q, color, stack, arcs, out);
    stack.pop();
    if stack.is_empty() {
        scan(k + 1, n, q, color, stack, arcs, out);
    }
}

/// `A △ (∪Π)`. Errors when `Π ⊄ M`.
pub fn exchange(a: Subset, m: &NestedMatching, pi: &[Arc]) -> Result<Subset, MatchingError> {
    let mut out = a;
    for &arc in pi {
        if !m.contains(arc) {
            return Err(MatchingError::NotInMatching(arc));
        }
        out = out.symmetric_difference(arc.ends());
    }
    Ok(out)
}

/// A pair `(A, M)` with `M ∈ 𝓜(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub a: Subset,
    pub m: NestedMatching,
}

/// All configurations `(A, M)` with `A` in the collection (with multiplicity).
pub fn configurations(c: &Collection) -> Vec<Configuration> {
    let mut out = Vec::new();
    for (a, mult) in c.iter() {
        for m in enumerate_feasible_matchings(a, c.p, c.q) {
            for _ in 0..mult {
                out.push(Configuration { a, m: m.clone() });
            }
        }
    }
    out
}

/// A multicollection of `p`-subsets of `[p+q]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Collection {
    pub p: usize,
    pub q: usize,
    members: BTreeMap<Subset, usize>,
}

impl Collection {
    pub fn new(p: usize, q: usize) -> Self {
        Collection {
            p,
            q,
            members: BTreeMap::new(),
        }
    }

    pub fn from_members(p: usize, q: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self, MatchingError> {
        let mut c = Collection::new(p, q);
        for a in members {
            c.add(a, 1)?;
        }
        Ok(c)
    }

    /// From digit strings: `Collection::digits(2, 1, &["12", "23"])`.
    pub fn digits(p: usize, q: usize, members: &[&str]) -> Result<Self, MatchingError> {
        Self::from_members(p, q, members.iter().map(|s| Subset::digits(s)))
    }

    pub fn add(&mut self, a: Subset, mult: usize) -> Result<(), MatchingError> {
        let n = self.p + self.q;
        if a.len() != self.p || a.max().is_some_and(|x| x > n) {
            return Err(MatchingError::BadMember { set: a, p: self.p, n });
        }
        if mult > 0 {
            *self.members.entry(a).or_default() += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, a: Subset) -> usize {
        self.members.get(&a).copied().unwrap_or(0)
    }

    /// Distinct members with multiplicities, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        self.members.iter().map(|(&a, &m)| (a, m))
    }

    /// Members repeated by multiplicity.
    pub fn members(&self) -> Vec<Subset> {
        self.iter().flat_map(|(a, m)| std::iter::repeat_n(a, m)).collect()
    }

    /// Total size counting multiplicity.
    pub fn len(&self) -> usize {
        self.members.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self.members().iter().map(|a| a.compact()).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// `𝓜(𝒜)`: each matching with the number of members admitting it.
pub fn matching_multiset(c: &Collection) -> BTreeMap<NestedMatching, usize> {
    let mut out = BTreeMap::new();
    for (a, mult) in c.iter() {
        for m in enumerate_feasible_matchings(a, c.p, c.q) {
            *out.entry(m).or_default() += mult;
        }
    }
    out
}

/// A matching whose multiplicities differ between two collections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub matching: NestedMatching,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Balance {
    pub balanced: bool,
    /// The first differing matching in canonical order, when unbalanced.
    pub witness: Option<Witness>,
}

pub fn is_balanced(c1: &Collection, c2: &Collection) -> Result<Balance, MatchingError> {
    if (c1.p, c1.q) != (c2.p, c2.q) {
        return Err(MatchingError::ParameterMismatch(c1.p, c1.q, c2.p, c2.q));
    }
    let (m1, m2) = (matching_multiset(c1), matching_multiset(c2));
    let mut keys: Vec<&NestedMatching> = m1.keys().chain(m2.keys()).collect();
    keys.sort();
    keys.dedup();
    for m in keys {
        let (l, r) = (m1.get(m).copied().unwrap_or(0), m2.get(m).copied().unwrap_or(0));
        if l != r {
            return Ok(Balance {
                balanced: false,
                witness: Some(Witness {
                    matching: m.clone(),
                    left: l,
                    right: r,
                }),
            });
        }
    }
    Ok(Balance {
        balanced: true,
        witness: None,
    })
}

/// Parses the pair format: a first line `p q`, then one subset per line
/// (space-separated elements), with a line `--` between the two collections.
/// Blank lines and `#` comments are ignored.
pub fn parse_collection_pair(text: &str) -> Result<(Collection, Collection), MatchingError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| MatchingError::Parse("missing `p q` line".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| MatchingError::Parse(format!("bad header {header:?}"))))
        .collect::<Result<_, _>>()?;
    let [p, q] = nums[..] else {
        return Err(MatchingError::Parse(format!("bad header {header:?}")));
    };
    let mut left = Collection::new(p, q);
    let mut right = Collection::new(p, q);
    let mut seen_sep = false;
    for line in lines {
        if line == "--" {
            if seen_sep {
                return Err(MatchingError::Parse("more than one `--` separator".into()));
            }
            seen_sep = true;
            continue;
        }
        let a: Subset = line
            .parse()
            .map_err(|_| MatchingError::Parse(format!("bad subset {line:?}")))?;
        if seen_sep { &mut right } else { &mut left }.add(a, 1)?;
    }
    if !seen_sep {
        return Err(MatchingError::Parse("missing `--` separator".into()));
    }
    Ok((left, right))
}

/// Inverse of [`parse_collection_pair`].
pub fn write_collection_pair(c1: &Collection, c2: &Collection) -> String {
    let mut s = format!("{} {}\n", c1.p, c1.q);
    let line = |a: Subset| a.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    for a in c1.members() {
        s.push_str(&line(a));
        s.push('\n');
    }
    s.push_str("--\n");
    for a in c2.members() {
        s.push_str(&line(a));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> NestedMatching {
        NestedMatching::of(pairs)
    }

    #[test]
    fn feasibility_examples() {
        let a13 = Subset::digits("13");
        assert!(is_feasible(&m(&[(1, 2)]), a13, 2, 1));
        assert!(is_feasible(&m(&[(2, 3)]), a13, 2, 1));
        assert!(!is_feasible(&m(&[(1, 2)]), Subset::digits("12"), 2, 1));
        assert!(is_feasible(&m(&[(1, 2), (4, 5)]), Subset::digits("135"), 3, 2));
        // free element 2 under (1,3)
        assert!(!is_feasible(&m(&[(1, 3)]), Subset::digits("12"), 2, 1));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_feasible_matchings(Subset::digits("13"), 2, 1),
            vec![m(&[(1, 2)]), m(&[(2, 3)])]
        );
        assert_eq!(
            enumerate_feasible_matchings(Subset::digits("14"), 2, 2),
            vec![m(&[(1, 2), (3, 4)])]
        );
        let five = enumerate_feasible_matchings(Subset::digits("135"), 3, 2);
        let mut expected = vec![
            m(&[(1, 2), (4, 5)]),
            m(&[(1, 4), (2, 3)]),
            m(&[(2, 3), (4, 5)]),
            m(&[(1, 2), (3, 4)]),
            m(&[(2, 5), (3, 4)]),
        ];
        expected.sort();
        assert_eq!(five, expected);
    }

    #[test]
    fn exchange_examples() {
        let a = Subset::digits("13");
        let mm = m(&[(1, 2)]);
        assert_eq!(exchange(a, &mm, mm.arcs()).unwrap(), Subset::digits("23"));
        assert_eq!(exchange(a, &mm, &[]).unwrap(), a);
        let back = exchange(Subset::digits("23"), &mm, mm.arcs()).unwrap();
        assert_eq!(back, a);
        assert!(exchange(a, &mm, &[Arc::new(2, 3).unwrap()]).is_err());
    }

    #[test]
    fn multiset_and_balance() {
        let c = Collection::digits(2, 1, &["12", "23"]).unwrap();
        let ms = matching_multiset(&c);
        assert_eq!(ms.len(), 2);
        assert!(ms.values().all(|&v| v == 1));
        let b = is_balanced(&Collection::digits(2, 1, &["13"]).unwrap(), &c).unwrap();
        assert!(b.balanced);
        let b = is_balanced(
            &Collection::digits(2, 1, &["12"]).unwrap(),
            &Collection::digits(2, 1, &["13"]).unwrap(),
        )
        .unwrap();
        let w = b.witness.unwrap();
        assert_eq!(w.matching, m(&[(1, 2)]));
        assert_eq!((w.left, w.right), (0, 1));
        assert!(is_balanced(&Collection::new(2, 1), &Collection::new(2, 2)).is_err());
    }

    #[test]
    fn matching_text() {
        let mm: NestedMatching = "(1,4) (2,3)".parse().unwrap();
        assert_eq!(mm, m(&[(1, 4), (2, 3)]));
        assert_eq!(mm.to_string(), "{(1,4),(2,3)}");
        assert_eq!(mm.to_string().parse::<NestedMatching>().unwrap(), mm);
        assert_eq!("{}".parse::<NestedMatching>().unwrap(), NestedMatching::empty());
        assert!("(2,1)".parse::<NestedMatching>().is_err());
    }

    #[test]
    fn structure_helpers() {
        let mm = m(&[(1, 6), (2, 3), (4, 5), (7, 10), (8, 9)]);
        assert_eq!(mm.maximal_arcs(), vec![Arc { i: 1, j: 6 }, Arc { i: 7, j: 10 }]);
        assert_eq!(
            mm.children(Arc { i: 1, j: 6 }),
            vec![Arc { i: 2, j: 3 }, Arc { i: 4, j: 5 }]
        );
        assert_eq!(Arc { i: 1, j: 6 }.half_width(), 3);
    }

    #[test]
    fn pair_file_round_trip() {
        let text = "2 1\n1 3\n--\n1 2\n2 3\n";
        let (a, b) = parse_collection_pair(text).unwrap();
        assert_eq!(a, Collection::digits(2, 1, &["13"]).unwrap());
        assert_eq!(write_collection_pair(&a, &b), text);
        assert!(parse_collection_pair("2 1\n1 3\n").is_err());
        assert!(parse_collection_pair("2 1\n1 2 3\n--\n").is_err());
    }
}
