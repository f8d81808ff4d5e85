//! The interval basis on the half-grid over semirings with division.
//!
//! Every nonempty interval `[q..r]` of `[n]` has exactly one flag flow in
//! `Γ_n`, which covers the rectangle `j ≤ i ≤ r, j ≤ r−q+1`. So the interval
//! values determine the vertex weights and, through them, every `f(A)`: each
//! value is a sum of Laurent monomials in the interval values.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::flows::{enumerate_flag_flows, Flow, FlowError, Weighting};
use crate::network::{build_half_grid, grid_vertex, NetworkError, PlanarNetwork};
use crate::semiring::{DivisionSemiring, Semiring, SemiringError};
use crate::subset::Subset;

/// Largest `n` accepted by [`laurent_expand`]; flow counts grow quickly.
pub const MAX_EXPANSION_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaurentError {
    #[error("{0} is not a nonempty interval")]
    NotInterval(Subset),
    #[error("{set} is not a nonempty subset of [{n}]")]
    OutOfRange { set: Subset, n: usize },
    #[error("expansion is limited to n ≤ {MAX_EXPANSION_N}, got {0}")]
    TooLarge(usize),
    #[error("no interval value for [{0}..{1}]")]
    MissingInterval(usize, usize),
    #[error("interval {interval} has {count} flag flows, expected one")]
    NotUnique { interval: Subset, count: usize },
    #[error("{j} is not a valid pivot for {set}")]
    BadPivot { set: Subset, j: usize },
    #[error("weighting has {got} values, Γ_{n} has {expected} vertices")]
    WeightingSize { got: usize, n: usize, expected: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

fn interval_bounds(set: Subset) -> Option<(usize, usize)> {
    if set.is_empty() || !set.is_interval() {
        return None;
    }
    Some((set.min()?, set.max()?))
}

fn rectangle(q: usize, r: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=r - q + 1).flat_map(move |j| (j..=r).map(move |i| (i, j)))
}

/// The flag flow of the interval `[q..r]` in `Γ_n`. It is found by
/// enumeration; uniqueness is checked, not assumed.
pub fn interval_flow(grid: &PlanarNetwork, interval: Subset) -> Result<Flow, LaurentError> {
    let (_, r) = interval_bounds(interval).ok_or(LaurentError::NotInterval(interval))?;
    let n = grid.sources().len();
    if r > n {
        return Err(LaurentError::OutOfRange { set: interval, n });
    }
    let mut flows = enumerate_flag_flows(grid, interval)?;
    if flows.len() != 1 {
        return Err(LaurentError::NotUnique {
            interval,
            count: flows.len(),
        });
    }
    Ok(flows.pop().expect("one flow"))
}

/// `f` on the nonempty intervals of `[n]`, keyed by `(q, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalValues<S> {
    pub n: usize,
    values: BTreeMap<(usize, usize), S>,
}

impl<S: Semiring> IntervalValues<S> {
    pub fn new(n: usize) -> Self {
        IntervalValues {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, q: usize, r: usize, value: S) {
        self.values.insert((q, r), value);
    }

    pub fn get(&self, q: usize, r: usize) -> Result<&S, LaurentError> {
        self.values.get(&(q, r)).ok_or(LaurentError::MissingInterval(q, r))
    }

    /// `f(I_{i,j})` with `I_{i,j} = [i−j+1..i]` and `f(I_{i,0}) = 1̲`.
    fn corner(&self, i: usize, j: usize) -> Result<S, LaurentError> {
        if j == 0 {
            return Ok(S::one());
        }
        self.get(i - j + 1, i).cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.values.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == self.n * (self.n + 1) / 2
    }
}

fn check_grid_weighting<S>(n: usize, w: &Weighting<S>) -> Result<(), LaurentError> {
    let expected = n * (n + 1) / 2;
    if w.values.len() != expected {
        return Err(LaurentError::WeightingSize {
            got: w.values.len(),
            n,
            expected,
        });
    }
    Ok(())
}

/// `f[q..r] = ⊙` of the weights in the rectangle of `[q..r]`.
pub fn intervals_of<S: Semiring>(n: usize, w: &Weighting<S>) -> Result<IntervalValues<S>, LaurentError> {
    check_grid_weighting(n, w)?;
    let mut out = IntervalValues::new(n);
    for q in 1..=n {
        for r in q..=n {
            let value = rectangle(q, r).fold(S::one(), |acc, (i, j)| acc.mul(&w.values[grid_vertex(i, j)]));
            out.set(q, r, value);
        }
    }
    Ok(out)
}

/// Recovers the vertex weights of `Γ_n` from the interval values.
pub fn weights_from_intervals<S: DivisionSemiring>(vals: &IntervalValues<S>) -> Result<Weighting<S>, LaurentError> {
    let n = vals.n;
    let mut values = vec![S::one(); n * (n + 1) / 2];
    for i in 1..=n {
        for j in 1..=i {
            let w = if i > j {
                vals.corner(i, j)?
                    .mul(&vals.corner(i - 1, j - 1)?)
                    .div(&vals.corner(i - 1, j)?.mul(&vals.corner(i, j - 1)?))
            } else {
                vals.corner(i, j)?.div(&vals.corner(i, j - 1)?)
            };
            values[grid_vertex(i, j)] = w;
        }
    }
    Ok(Weighting { values })
}

/// A product of interval values with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentMonomial {
    degrees: BTreeMap<(usize, usize), i64>,
}

impl LaurentMonomial {
    pub fn degree(&self, q: usize, r: usize) -> i64 {
        self.degrees.get(&(q, r)).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.degrees.iter().map(|(&k, &d)| (k, d))
    }

    fn add_degree(&mut self, key: (usize, usize), d: i64) {
        let e = self.degrees.entry(key).or_insert(0);
        *e += d;
        if *e == 0 {
            self.degrees.remove(&key);
        }
    }

    fn times(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut out = self.clone();
        for (&k, &d) in &other.degrees {
            out.add_degree(k, d);
        }
        out
    }

    pub fn evaluate<S: DivisionSemiring>(&self, vals: &IntervalValues<S>) -> Result<S, LaurentError> {
        let mut acc = S::one();
        for (&(q, r), &d) in &self.degrees {
            acc = acc.mul(&vals.get(q, r)?.pow_i(d));
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return f.write_str("1");
        }
        let positive = self.degrees.iter().filter(|(_, &d)| d > 0);
        let negative = self.degrees.iter().filter(|(_, &d)| d < 0);
        let parts: Vec<String> = positive
            .chain(negative)
            .map(|(&(q, r), d)| format!("f[{q}..{r}]^{d}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `⊕` of monomials with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentExpression {
    terms: BTreeMap<LaurentMonomial, u64>,
}

impl LaurentExpression {
    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate<S: DivisionSemiring>(&self, vals: &IntervalValues<S>) -> Result<Option<S>, LaurentError> {
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            parts.push(m.evaluate(vals)?.nat_scale(c)?);
        }
        Ok(S::sum(&parts))
    }
}

impl fmt::Display for LaurentExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("∗");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| if c == 1 { m.to_string() } else { format!("{c}·{m}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The vertex weight `w(i, j)` as a monomial in interval values.
fn weight_monomial(i: usize, j: usize) -> LaurentMonomial {
    let mut m = LaurentMonomial::default();
    let mut put = |i: usize, j: usize, d: i64| {
        if j > 0 {
            m.add_degree((i - j + 1, i), d);
        }
    };
    if i > j {
        put(i, j, 1);
        put(i - 1, j - 1, 1);
        put(i - 1, j, -1);
        put(i, j - 1, -1);
    } else {
        put(i, j, 1);
        put(i, j - 1, -1);
    }
    m
}

/// `f(A)` on `Γ_n` as a Laurent polynomial in the interval values.
pub fn laurent_expand(n: usize, a: Subset) -> Result<LaurentExpression, LaurentError> {
    if n > MAX_EXPANSION_N {
        return Err(LaurentError::TooLarge(n));
    }
    if a.is_empty() || a.max().is_some_and(|x| x > n) {
        return Err(LaurentError::OutOfRange { set: a, n });
    }
    let grid = build_half_grid(n)?;
    let vertex_monomials: Vec<LaurentMonomial> = (1..=n)
        .flat_map(|i| (1..=i).map(move |j| (i, j)))
        .map(|(i, j)| weight_monomial(i, j))
        .collect();
    let mut out = LaurentExpression::default();
    for flow in enumerate_flag_flows(&grid, a)? {
        let m = flow
            .slots()
            .iter()
            .fold(LaurentMonomial::default(), |acc, &v| acc.times(&vertex_monomials[v]));
        *out.terms.entry(m).or_insert(0) += 1;
    }
    Ok(out)
}

/// Rebuilds `f(A)` from interval values by repeated three-term exchanges:
/// with `i = min A`, `k = max A`, `X = A ∖ {i, k}` and a pivot `j ∈ [i..k] ∖ A`,
/// `f(A) = (f(Xij) ⊙ f(Xk) ⊕ f(Xjk) ⊙ f(Xi)) ⊘ f(Xj)`.
///
/// `pivot` fixes `j` at the top level; otherwise (and in recursive calls) the
/// smallest valid `j` is used.
pub fn reconstruct_from_intervals<S: DivisionSemiring>(
    vals: &IntervalValues<S>,
    a: Subset,
    pivot: Option<usize>,
) -> Result<S, LaurentError> {
    if a.is_empty() || a.max().is_some_and(|x| x > vals.n) {
        return Err(LaurentError::OutOfRange { set: a, n: vals.n });
    }
    let mut memo = HashMap::new();
    reconstruct(vals, a, pivot, &mut memo)
}

fn reconstruct<S: DivisionSemiring>(
    vals: &IntervalValues<S>,
    a: Subset,
    pivot: Option<usize>,
    memo: &mut HashMap<Subset, S>,
) -> Result<S, LaurentError> {
    if let Some((q, r)) = interval_bounds(a) {
        return vals.get(q, r).cloned();
    }
    if pivot.is_none() {
        if let Some(v) = memo.get(&a) {
            return Ok(v.clone());
        }
    }
    let (i, k) = (a.min().expect("nonempty"), a.max().expect("nonempty"));
    let gaps = Subset::interval(i, k).difference(a);
    let j = match pivot {
        Some(j) if gaps.contains(j) => j,
        Some(j) => return Err(LaurentError::BadPivot { set: a, j }),
        None => gaps.min().expect("a non-interval has a gap"),
    };
    let x = a.without(i).without(k);
    let mut f = |s: Subset| reconstruct(vals, s, None, memo);
    let value = f(x.with(i).with(j))?
        .mul(&f(x.with(k))?)
        .add(&f(x.with(j).with(k))?.mul(&f(x.with(i))?))
        .div(&f(x.with(j))?);
    if pivot.is_none() {
        memo.insert(a, value.clone());
    }
    Ok(value)
}
