//! Generators for balanced pairs: the small named relations and the
//! interval-exchange, tail-fixed and Gröbner-type classes.

use std::fmt;
use std::str::FromStr;

use super::{QuadraticRelation, RelationError, Summand, Summands};
use crate::matchings::{Arc, Collection, NestedMatching};
use crate::subset::{Subset, MAX_ELEMENT};

fn fixed(p: usize, q: usize, lhs: &[&str], rhs: &[&str]) -> QuadraticRelation {
    QuadraticRelation::digits(p, q, lhs, rhs).expect("fixed family is well formed")
}

/// `f(13)f(2) = f(12)f(3) ⊕ f(23)f(1)` with `p = 2, q = 1`.
pub fn triple() -> QuadraticRelation {
    fixed(2, 1, &["13"], &["12", "23"])
}

/// `f(13)f(24) = f(12)f(34) ⊕ f(14)f(23)` with `p = q = 2`.
pub fn quadruple() -> QuadraticRelation {
    fixed(2, 2, &["13"], &["12", "14"])
}

/// `{135}` against `{234, 125, 145}` with `p = 3, q = 2`.
pub fn quintuple() -> QuadraticRelation {
    fixed(3, 2, &["135"], &["234", "125", "145"])
}

fn check_pq(p: usize, q: usize) -> Result<(), RelationError> {
    if q == 0 || p < q || p + q > MAX_ELEMENT {
        return Err(RelationError::BadParameters { p, q });
    }
    Ok(())
}

/// `M₀ = {π_i = (p−i+1, p+i) : i ∈ [q]}`, the only feasible matching of `[p]`.
pub fn m0(p: usize, q: usize) -> NestedMatching {
    NestedMatching::new(
        (1..=q)
            .map(|i| Arc::new(p - i + 1, p + i).expect("p ≥ q"))
            .collect(),
    )
}

fn split_by_parity(p: usize, q: usize, pool: &[Subset], base: usize) -> (Collection, Collection) {
    let (mut odd, mut even) = (Collection::new(p, q), Collection::new(p, q));
    for &a in pool {
        let target = if (a.sum() + base) % 2 == 1 { &mut odd } else { &mut even };
        target.add(a, 1).expect("pool members are p-subsets");
    }
    (odd, even)
}

fn with_tail(p: usize, q: usize, tail_range: Subset, tail: Subset) -> Vec<Subset> {
    Subset::k_subsets(p + q, p)
        .into_iter()
        .filter(|a| a.intersection(tail_range) == tail)
        .collect()
}

/// The interval-exchange class. `pi0` lists the indices `i` of the arcs
/// `π_i ∈ M₀` being exchanged. `𝒜` holds `[p]` and the members of `𝓑` whose
/// sum differs in parity from `Σ(B₁)`; `𝒜′` holds the rest of `𝓑`.
pub fn interval_exchange(p: usize, q: usize, pi0: Subset) -> Result<QuadraticRelation, RelationError> {
    check_pq(p, q)?;
    if pi0.is_empty() {
        return Err(RelationError::EmptyExchange);
    }
    if pi0.max().is_some_and(|i| i > q) {
        return Err(RelationError::BadFamily(format!("exchanged arc indices {pi0} exceed q = {q}")));
    }
    let (b0, b1, r) = exchange_sets(p, q, pi0);
    let tail_range = Subset::interval(p + 1, p + q);
    let pool = with_tail(p, q, tail_range, r);
    let (mut lhs, rhs) = split_by_parity(p, q, &pool, b1.sum());
    lhs.add(b0, 1)?;
    QuadraticRelation::new(lhs, rhs)
}

/// `(B₀, B₁, R)` for the exchange of `{π_i : i ∈ pi0}` in `B₀ = [p]`.
pub fn exchange_sets(p: usize, q: usize, pi0: Subset) -> (Subset, Subset, Subset) {
    let b0 = Subset::interval(1, p);
    let mut l = Subset::interval(1, p - q);
    let mut r = Subset::EMPTY;
    for i in 1..=q {
        if pi0.contains(i) {
            r.insert(p + i);
        } else {
            l.insert(p - i + 1);
        }
    }
    (b0, l.union(r), r)
}

/// The tail-fixed class: members of `[p+q]` choose `p` whose trace on
/// `[p+2..p+q]` is `Q`, split by the parity of their sum (odd on the left).
pub fn tail_fixed(p: usize, q: usize, tail: Subset) -> Result<QuadraticRelation, RelationError> {
    check_pq(p, q)?;
    let range = if q >= 2 { Subset::interval(p + 2, p + q) } else { Subset::EMPTY };
    if !tail.is_subset(range) {
        return Err(RelationError::BadFamily(format!(
            "fixed tail {tail} is not inside [{}..{}]",
            p + 2,
            p + q
        )));
    }
    let pool = with_tail(p, q, range, tail);
    let (lhs, rhs) = split_by_parity(p, q, &pool, 0);
    QuadraticRelation::new(lhs, rhs)
}

/// `A ≺ B`: `|A| ≥ |B|` and `a_i ≤ b_i` for `i ≤ |B|`.
pub fn precedes(a: Subset, b: Subset) -> bool {
    a.len() >= b.len() && a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Smallest `d` with `b_d > b̄_d`.
pub fn first_split(b: Subset, q: usize) -> Option<usize> {
    let bbar = b.complement(b.len() + q);
    b.iter().zip(bbar.iter()).position(|(x, y)| x > y).map(|k| k + 1)
}

/// The Gröbner-type class built from a `p`-subset `B` incomparable with its
/// complement, split at `d` (the smallest valid position when `None`).
pub fn groebner(p: usize, q: usize, b: Subset, d: Option<usize>) -> Result<QuadraticRelation, RelationError> {
    check_pq(p, q)?;
    if b.len() != p || b.max().is_some_and(|x| x > p + q) {
        return Err(RelationError::BadFamily(format!("{b} is not a {p}-subset of [{}]", p + q)));
    }
    let bbar = b.complement(p + q);
    if precedes(b, bbar) || precedes(bbar, b) {
        return Err(RelationError::Comparable(b));
    }
    let d = match d {
        Some(d) => d,
        None => first_split(b, q).expect("incomparable sets split somewhere"),
    };
    if d == 0 || d > q || b.nth(d) <= bbar.nth(d) {
        return Err(RelationError::BadSplit { b, d });
    }
    let bv = b.to_vec();
    let bbv = bbar.to_vec();
    let b_left = Subset::of(&bv[..d - 1]);
    let b_right = Subset::of(&bv[d - 1..]);
    let bbar_left = Subset::of(&bbv[..d]);
    let c = bbar_left.union(b_right);
    let pool: Vec<Subset> = c
        .subsets()
        .filter(|z| z.len() == p - d + 1)
        .map(|z| b_left.union(z))
        .collect();
    let (lhs, rhs) = split_by_parity(p, q, &pool, 0);
    QuadraticRelation::new(lhs, rhs)
}

/// The concrete identity for index sets `I = {i_1 < … < i_p}` and
/// `J = {j_1 < … < j_q}` with `max I < min J`, a fixed part `X` and a chosen
/// `R ⊆ J`. The left side is `f(X∪I)f(X∪J)` plus the terms for `Ĩ ⊆ I`,
/// `|Ĩ| = |R|`, where `Σ(k : j_k ∈ R)` and `Σ(p+1−k : i_k ∈ Ĩ)` differ in
/// parity; the right side has the terms where they agree.
pub fn gr_pluck_instantiate(
    p: usize,
    q: usize,
    n: usize,
    x: Subset,
    i: Subset,
    j: Subset,
    r: Subset,
) -> Result<Summands, RelationError> {
    check_pq(p, q)?;
    let bad = |why: String| Err(RelationError::BadInstantiation(why));
    if i.len() != p || j.len() != q {
        return bad(format!("|I| = {}, |J| = {}, expected {p} and {q}", i.len(), j.len()));
    }
    if i.max() >= j.min() {
        return bad(format!("I = {i} must lie below J = {j}"));
    }
    if !x.is_disjoint(i.union(j)) {
        return bad(format!("X = {x} meets I ∪ J"));
    }
    if x.union(i).union(j).max().is_some_and(|m| m > n) {
        return bad(format!("index sets exceed [{n}]"));
    }
    if !r.is_subset(j) {
        return bad(format!("R = {r} is not inside J = {j}"));
    }
    let r_weight: usize = r.iter().map(|e| j.rank(e).expect("R ⊆ J")).sum();
    let mut out = Summands::default();
    out.lhs.push(Summand {
        i: x.union(i),
        j: x.union(j),
        mult: 1,
    });
    for it in Subset::k_subsets(p, r.len()) {
        let tilde = it.map_through(&i.to_vec());
        let weight: usize = it.iter().map(|k| p + 1 - k).sum();
        let term = Summand {
            i: x.union(i.difference(tilde)).union(r),
            j: x.union(tilde).union(j.difference(r)),
            mult: 1,
        };
        if (weight + r_weight) % 2 == 1 {
            out.lhs.push(term);
        } else {
            out.rhs.push(term);
        }
    }
    out.lhs.sort();
    out.rhs.sort();
    Ok(out)
}

/// A named family member, parseable from the command line.
///
/// Text forms: `triple`, `quadruple`, `quintuple`,
/// `interval-exchange:P:Q:I1,I2,…`, `tail-fixed:P:Q:E1,E2,…` (the fixed tail,
/// possibly empty) and `groebner:P:Q:B1,B2,…[:D]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Triple,
    Quadruple,
    Quintuple,
    IntervalExchange { p: usize, q: usize, pi0: Subset },
    TailFixed { p: usize, q: usize, tail: Subset },
    Groebner { p: usize, q: usize, b: Subset, d: Option<usize> },
}

impl FamilySpec {
    pub fn build(&self) -> Result<QuadraticRelation, RelationError> {
        match *self {
            FamilySpec::Triple => Ok(triple()),
            FamilySpec::Quadruple => Ok(quadruple()),
            FamilySpec::Quintuple => Ok(quintuple()),
            FamilySpec::IntervalExchange { p, q, pi0 } => interval_exchange(p, q, pi0),
            FamilySpec::TailFixed { p, q, tail } => tail_fixed(p, q, tail),
            FamilySpec::Groebner { p, q, b, d } => groebner(p, q, b, d),
        }
    }

    /// Every parameter choice of the three infinite classes with
    /// `2 ≤ p + q ≤ max_total`. Gröbner members use every valid `d`.
    pub fn all_parametrized(max_total: usize) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for total in 2..=max_total {
            for q in 1..=total / 2 {
                let p = total - q;
                for pi0 in Subset::full(q).subsets().filter(|s| !s.is_empty()) {
                    out.push(FamilySpec::IntervalExchange { p, q, pi0 });
                }
                let range = if q >= 2 { Subset::interval(p + 2, p + q) } else { Subset::EMPTY };
                for tail in range.subsets() {
                    out.push(FamilySpec::TailFixed { p, q, tail });
                }
                for b in Subset::k_subsets(total, p) {
                    let bbar = b.complement(total);
                    if precedes(b, bbar) || precedes(bbar, b) {
                        continue;
                    }
                    for d in 1..=q {
                        if b.nth(d) > bbar.nth(d) {
                            out.push(FamilySpec::Groebner { p, q, b, d: Some(d) });
                        }
                    }
                }
            }
        }
        out
    }
}

fn list(s: Subset) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Triple => f.write_str("triple"),
            FamilySpec::Quadruple => f.write_str("quadruple"),
            FamilySpec::Quintuple => f.write_str("quintuple"),
            FamilySpec::IntervalExchange { p, q, pi0 } => write!(f, "interval-exchange:{p}:{q}:{}", list(pi0)),
            FamilySpec::TailFixed { p, q, tail } => write!(f, "tail-fixed:{p}:{q}:{}", list(tail)),
            FamilySpec::Groebner { p, q, b, d } => {
                write!(f, "groebner:{p}:{q}:{}", list(b))?;
                if let Some(d) = d {
                    write!(f, ":{d}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RelationError::BadFamily(format!("cannot parse family {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let set = |t: &str| -> Result<Subset, RelationError> {
            let elems = t
                .split(',')
                .filter(|e| !e.trim().is_empty())
                .map(num)
                .collect::<Result<Vec<_>, _>>()?;
            Subset::new(elems).map_err(|_| bad())
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["triple"] => Ok(FamilySpec::Triple),
            ["quadruple"] => Ok(FamilySpec::Quadruple),
            ["quintuple"] => Ok(FamilySpec::Quintuple),
            ["interval-exchange", p, q, pi0] => Ok(FamilySpec::IntervalExchange {
                p: num(p)?,
                q: num(q)?,
                pi0: set(pi0)?,
            }),
            ["tail-fixed", p, q, tail] => Ok(FamilySpec::TailFixed {
                p: num(p)?,
                q: num(q)?,
                tail: set(tail)?,
            }),
            ["groebner", p, q, b] => Ok(FamilySpec::Groebner {
                p: num(p)?,
                q: num(q)?,
                b: set(b)?,
                d: None,
            }),
            ["groebner", p, q, b, d] => Ok(FamilySpec::Groebner {
                p: num(p)?,
                q: num(q)?,
                b: set(b)?,
                d: Some(num(d)?),
            }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{instantiate, verify_stable, Instantiation};

    fn c(p: usize, q: usize, m: &[&str]) -> Collection {
        Collection::digits(p, q, m).unwrap()
    }

    #[test]
    fn interval_exchange_small_cases() {
        let rel = interval_exchange(2, 1, Subset::of(&[1])).unwrap();
        assert_eq!(rel.lhs, c(2, 1, &["12", "23"]));
        assert_eq!(rel.rhs, c(2, 1, &["13"]));

        let rel = interval_exchange(2, 2, Subset::of(&[1])).unwrap();
        assert_eq!(rel.lhs, c(2, 2, &["12", "23"]));
        assert_eq!(rel.rhs, c(2, 2, &["13"]));
    }

    #[test]
    fn interval_exchange_figure_case() {
        // p = 5, q = 4 with the arcs (4,7) and (2,9) exchanged: B₁ = {1,3,5,7,9}.
        let (b0, b1, r) = exchange_sets(5, 4, Subset::of(&[2, 4]));
        assert_eq!(b0, Subset::digits("12345"));
        assert_eq!(b1, Subset::digits("13579"));
        assert_eq!(r, Subset::digits("79"));
        let rel = interval_exchange(5, 4, Subset::of(&[2, 4])).unwrap();
        assert!(rel.rhs.multiplicity(b1) == 1);
        assert!(verify_stable(&rel));
    }

    #[test]
    fn interval_exchange_errors() {
        assert_eq!(interval_exchange(2, 1, Subset::EMPTY), Err(RelationError::EmptyExchange));
        assert!(interval_exchange(2, 1, Subset::of(&[2])).is_err());
        assert!(interval_exchange(1, 2, Subset::of(&[1])).is_err());
    }

    #[test]
    fn tail_fixed_parity_split() {
        let rel = tail_fixed(2, 1, Subset::EMPTY).unwrap();
        assert_eq!(rel.lhs, c(2, 1, &["12", "23"]));
        assert_eq!(rel.rhs, c(2, 1, &["13"]));
        assert!(tail_fixed(2, 1, Subset::of(&[3])).is_err());
        assert!(tail_fixed(3, 2, Subset::of(&[5])).is_ok());
        assert!(tail_fixed(3, 2, Subset::of(&[4])).is_err());
    }

    #[test]
    fn groebner_examples() {
        // {1,3} precedes its complement {2}.
        assert_eq!(groebner(2, 1, Subset::digits("13"), None), Err(RelationError::Comparable(Subset::digits("13"))));
        let rel = groebner(2, 1, Subset::digits("23"), None).unwrap();
        assert_eq!(rel.lhs, c(2, 1, &["12", "23"]));
        assert_eq!(rel.rhs, c(2, 1, &["13"]));
        assert!(verify_stable(&rel));
        assert!(matches!(
            groebner(2, 1, Subset::digits("23"), Some(2)),
            Err(RelationError::BadSplit { .. })
        ));
        // p = q: B̄ ≺ B is also excluded.
        assert!(groebner(2, 2, Subset::digits("24"), None).is_err());
    }

    #[test]
    fn dominance_order() {
        assert!(precedes(Subset::digits("13"), Subset::digits("2")));
        assert!(!precedes(Subset::digits("23"), Subset::digits("1")));
        assert!(precedes(Subset::digits("12"), Subset::digits("34")));
        assert_eq!(first_split(Subset::digits("23"), 1), Some(1));
        assert_eq!(first_split(Subset::digits("13"), 1), None);
    }

    #[test]
    fn all_small_families_are_balanced() {
        for spec in FamilySpec::all_parametrized(6) {
            let rel = spec.build().unwrap();
            assert!(verify_stable(&rel), "{spec}: {rel}");
        }
    }

    #[test]
    fn gr_pluck_matches_interval_exchange() {
        for (p, q) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
            let n = p + q + 2;
            let i = Subset::of(&(2..p + 2).collect::<Vec<_>>());
            let j = Subset::of(&(p + 2..p + q + 2).collect::<Vec<_>>());
            let x = Subset::of(&[1]);
            let y = i.union(j);
            let inst = Instantiation::new(n, p, q, x, y).unwrap();
            for pi0 in Subset::full(q).subsets().filter(|s| !s.is_empty()) {
                let r = pi0.map_through(&j.to_vec());
                let direct = gr_pluck_instantiate(p, q, n, x, i, j, r).unwrap();
                let via = instantiate(&interval_exchange(p, q, pi0).unwrap(), &inst).unwrap();
                assert_eq!(direct, via, "p={p} q={q} Π₀={pi0}");
            }
        }
    }

    #[test]
    fn gr_pluck_degenerate_and_errors() {
        let (i, j) = (Subset::digits("12"), Subset::digits("3"));
        let sm = gr_pluck_instantiate(2, 1, 3, Subset::EMPTY, i, j, Subset::EMPTY).unwrap();
        assert_eq!(sm.lhs, sm.rhs);
        assert_eq!(sm.lhs.len(), 1);
        assert!(gr_pluck_instantiate(2, 1, 3, Subset::EMPTY, Subset::digits("13"), Subset::digits("2"), Subset::EMPTY).is_err());
        assert!(gr_pluck_instantiate(2, 1, 3, Subset::EMPTY, i, j, Subset::digits("2")).is_err());
    }

    #[test]
    fn gr_pluck_reproduces_triple() {
        let sm = gr_pluck_instantiate(2, 1, 3, Subset::EMPTY, Subset::digits("12"), Subset::digits("3"), Subset::digits("3")).unwrap();
        let tri = instantiate(&triple(), &Instantiation::standard(2, 1)).unwrap();
        // The triple is written with {13} on the left; here it is on the right.
        assert_eq!(sm.lhs, tri.rhs);
        assert_eq!(sm.rhs, tri.lhs);
    }

    #[test]
    fn spec_text_round_trip() {
        for text in [
            "triple",
            "quadruple",
            "quintuple",
            "interval-exchange:5:4:2,4",
            "tail-fixed:3:2:",
            "tail-fixed:4:3:6,7",
            "groebner:2:1:2,3",
            "groebner:3:2:2,4,5:1",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("quartic".parse::<FamilySpec>().is_err());
        assert!("tail-fixed:3".parse::<FamilySpec>().is_err());
    }
}
