//! Quadratic relations between flow-generated functions.
//!
//! A pair of multicollections `𝒜, 𝒜′` of `p`-subsets of `[p+q]` determines,
//! for every placement `(X, Y)` of `[p+q]` inside `[n]`, the identity
//!
//! ```text
//! ⊕_{A ∈ 𝒜} f(X ∪ γ(A)) ⊙ f(X ∪ γ(Ā))  =  ⊕_{A ∈ 𝒜′} f(X ∪ γ(A)) ⊙ f(X ∪ γ(Ā))
//! ```
//!
//! The identity is *stable* when it holds for every semiring, network,
//! weighting and placement, which happens exactly when the pair is balanced
//! ([`verify_stable`]).

pub mod families;
mod instantiation;

pub use instantiation::Instantiation;

use std::fmt;

use thiserror::Error;

use crate::flows::{FlowCatalog, FlowError, FlowFunction, Weighting};
use crate::matchings::{is_balanced, Balance, Collection, MatchingError};
use crate::semiring::{PolyNat, Semiring, SemiringError, Starred};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("invalid instantiation: {0}")]
    BadInstantiation(String),
    #[error("need p ≥ q ≥ 1, got p = {p}, q = {q}")]
    BadParameters { p: usize, q: usize },
    #[error("sides have parameters ({0},{1}) and ({2},{3})")]
    ParameterMismatch(usize, usize, usize, usize),
    #[error("the exchanged arc set must be a nonempty subset of M₀")]
    EmptyExchange,
    #[error("{0}")]
    BadFamily(String),
    #[error("{0} is comparable with its complement")]
    Comparable(Subset),
    #[error("d = {d} is not a valid split position for {b}")]
    BadSplit { b: Subset, d: usize },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

/// The pair `(𝒜, 𝒜′)` read as the identity "lhs = rhs".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub p: usize,
    pub q: usize,
    pub lhs: Collection,
    pub rhs: Collection,
}

impl QuadraticRelation {
    pub fn new(lhs: Collection, rhs: Collection) -> Result<Self, RelationError> {
        if (lhs.p, lhs.q) != (rhs.p, rhs.q) {
            return Err(RelationError::ParameterMismatch(lhs.p, lhs.q, rhs.p, rhs.q));
        }
        let (p, q) = (lhs.p, lhs.q);
        if q == 0 || p < q {
            return Err(RelationError::BadParameters { p, q });
        }
        Ok(QuadraticRelation { p, q, lhs, rhs })
    }

    /// Shorthand for digit-string members, e.g. `(2, 1, &["13"], &["12", "23"])`.
    pub fn digits(p: usize, q: usize, lhs: &[&str], rhs: &[&str]) -> Result<Self, RelationError> {
        Self::new(Collection::digits(p, q, lhs)?, Collection::digits(p, q, rhs)?)
    }
}

impl fmt::Display for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs.render(), self.rhs.render())
    }
}

/// One term `f(I) ⊙ f(J)`, repeated `mult` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub i: Subset,
    pub j: Subset,
    pub mult: usize,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult > 1 {
            write!(f, "{}·", self.mult)?;
        }
        write!(f, "f({})f({})", self.i.compact(), self.j.compact())
    }
}

/// Both sides of a relation as concrete index-set pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Summands {
    pub lhs: Vec<Summand>,
    pub rhs: Vec<Summand>,
}

impl Summands {
    fn side_text(side: &[Summand]) -> String {
        if side.is_empty() {
            return "∅".into();
        }
        side.iter().map(Summand::to_string).collect::<Vec<_>>().join(" ⊕ ")
    }
}

impl fmt::Display for Summands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", Self::side_text(&self.lhs), Self::side_text(&self.rhs))
    }
}

fn instantiate_side(c: &Collection, inst: &Instantiation) -> Vec<Summand> {
    let mut out: Vec<Summand> = c
        .iter()
        .map(|(a, mult)| Summand {
            i: inst.i_of(a),
            j: inst.j_of(a),
            mult,
        })
        .collect();
    out.sort();
    out
}

/// The index-set pairs `(I(A), J(A))` of both sides, sorted.
pub fn instantiate(rel: &QuadraticRelation, inst: &Instantiation) -> Result<Summands, RelationError> {
    if (inst.p, inst.q) != (rel.p, rel.q) {
        return Err(RelationError::BadInstantiation(format!(
            "instantiation is for ({},{}), relation for ({},{})",
            inst.p, inst.q, rel.p, rel.q
        )));
    }
    Ok(Summands {
        lhs: instantiate_side(&rel.lhs, inst),
        rhs: instantiate_side(&rel.rhs, inst),
    })
}

/// How a summand with an undefined factor (empty `Φ_I`) is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// The summand is dropped; a side with nothing left is `∗`.
    Vanish,
    /// Undefined values are `∗`, computed in [`Starred`] arithmetic.
    Star,
}

/// `⊕` over one side.
pub fn evaluate_side<S: Semiring>(
    f: &FlowFunction<'_, S>,
    side: &[Summand],
    convention: Convention,
) -> Result<Starred<S>, RelationError> {
    match convention {
        Convention::Vanish => {
            let mut terms = Vec::new();
            for s in side {
                if let (Some(a), Some(b)) = (f.eval(s.i)?, f.eval(s.j)?) {
                    terms.push(a.mul(&b).nat_scale(s.mult as u64)?);
                }
            }
            Ok(Starred(S::sum(&terms)))
        }
        Convention::Star => {
            let mut acc = Starred::star();
            for s in side {
                let term = f.eval_starred(s.i)?.mul(&f.eval_starred(s.j)?);
                acc = acc.add(&term.nat_scale(s.mult as u64)?);
            }
            Ok(acc)
        }
    }
}

pub fn evaluate_summands<S: Semiring>(
    f: &FlowFunction<'_, S>,
    summands: &Summands,
    convention: Convention,
) -> Result<(Starred<S>, Starred<S>), RelationError> {
    Ok((
        evaluate_side(f, &summands.lhs, convention)?,
        evaluate_side(f, &summands.rhs, convention)?,
    ))
}

/// Both sides of the relation placed by `inst`, evaluated with `f`.
pub fn evaluate_sides<S: Semiring>(
    f: &FlowFunction<'_, S>,
    rel: &QuadraticRelation,
    inst: &Instantiation,
    convention: Convention,
) -> Result<(Starred<S>, Starred<S>), RelationError> {
    evaluate_summands(f, &instantiate(rel, inst)?, convention)
}

/// The balancedness criterion: the relation is stable iff `𝒜, 𝒜′` are
/// balanced.
pub fn verify_stable(rel: &QuadraticRelation) -> bool {
    balance(rel).balanced
}

/// [`verify_stable`] with the witness matching when it fails.
pub fn balance(rel: &QuadraticRelation) -> Balance {
    is_balanced(&rel.lhs, &rel.rhs).expect("sides share (p, q) by construction")
}

/// Compares both sides as polynomials in one variable per weight slot of
/// the network. Equality means the identity holds for every weighting over
/// every commutative semiring on this network.
pub fn symbolic_check_summands(catalog: &FlowCatalog, summands: &Summands) -> Result<bool, RelationError> {
    let f = FlowFunction::new(catalog, Weighting::<PolyNat>::symbolic(catalog.network()))?;
    let (l, r) = evaluate_summands(&f, summands, Convention::Star)?;
    Ok(l == r)
}

pub fn symbolic_check(catalog: &FlowCatalog, rel: &QuadraticRelation, inst: &Instantiation) -> Result<bool, RelationError> {
    symbolic_check_summands(catalog, &instantiate(rel, inst)?)
}

/// [`symbolic_check`] over every placement of `[p+q]` into the sources of
/// the network. Returns the first failing placement.
pub fn symbolic_check_all(catalog: &FlowCatalog, rel: &QuadraticRelation) -> Result<Option<Instantiation>, RelationError> {
    let n = catalog.network().sources().len();
    let f = FlowFunction::new(catalog, Weighting::<PolyNat>::symbolic(catalog.network()))?;
    for inst in Instantiation::all(n, rel.p, rel.q) {
        let (l, r) = evaluate_sides(&f, rel, &inst, Convention::Star)?;
        if l != r {
            return Ok(Some(inst));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;

    use super::*;
    use crate::network::build_half_grid;
    use crate::semiring::TropicalInt;

    fn s(d: &str) -> Subset {
        Subset::digits(d)
    }

    fn pairs(side: &[Summand]) -> Vec<(String, String)> {
        side.iter().map(|x| (x.i.compact(), x.j.compact())).collect()
    }

    fn p(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn instantiate_triple() {
        let rel = families::triple();
        let sm = instantiate(&rel, &Instantiation::standard(2, 1)).unwrap();
        assert_eq!(pairs(&sm.lhs), vec![p("13", "2")]);
        assert_eq!(pairs(&sm.rhs), vec![p("12", "3"), p("23", "1")]);

        let inst = Instantiation::new(4, 2, 1, s("4"), s("123")).unwrap();
        let sm = instantiate(&rel, &inst).unwrap();
        assert_eq!(pairs(&sm.lhs), vec![p("134", "24")]);
        assert_eq!(pairs(&sm.rhs), vec![p("124", "34"), p("234", "14")]);
    }

    #[test]
    fn instantiate_quadruple_through_gamma() {
        let inst = Instantiation::new(7, 2, 2, Subset::EMPTY, s("2357")).unwrap();
        let sm = instantiate(&families::quadruple(), &inst).unwrap();
        assert_eq!(pairs(&sm.lhs), vec![p("25", "37")]);
    }

    #[test]
    fn instantiation_errors() {
        assert!(Instantiation::new(4, 2, 1, Subset::EMPTY, s("12")).is_err());
        assert!(Instantiation::new(4, 2, 1, s("1"), s("123")).is_err());
        assert!(Instantiation::new(3, 2, 1, s("4"), s("123")).is_err());
        let rel = families::triple();
        assert!(instantiate(&rel, &Instantiation::standard(2, 2)).is_err());
    }

    #[test]
    fn rejects_p_below_q() {
        let l = Collection::digits(1, 2, &["1"]).unwrap();
        let r = Collection::digits(1, 2, &["2"]).unwrap();
        assert!(matches!(
            QuadraticRelation::new(l, r),
            Err(RelationError::BadParameters { p: 1, q: 2 })
        ));
    }

    #[test]
    fn stable_examples() {
        assert!(verify_stable(&families::triple()));
        assert!(verify_stable(&families::quadruple()));
        assert!(verify_stable(&families::quintuple()));
        let bad = QuadraticRelation::digits(2, 1, &["12"], &["13"]).unwrap();
        assert!(!verify_stable(&bad));
    }

    #[test]
    fn triple_on_gamma3_symbolic() {
        let net = Arc::new(build_half_grid(3).unwrap()).vertex_split().unwrap();
        let cat = FlowCatalog::new(Arc::new(net));
        let rel = families::triple();
        assert!(symbolic_check(&cat, &rel, &Instantiation::standard(2, 1)).unwrap());
        let bad = QuadraticRelation::digits(2, 1, &["12"], &["13"]).unwrap();
        assert!(!symbolic_check(&cat, &bad, &Instantiation::standard(2, 1)).unwrap());
    }

    #[test]
    fn triple_sides_match_hand_expansion() {
        // Γ_3 with weights a..f on (1,1),(2,1),(2,2),(3,1),(3,2),(3,3).
        let net = build_half_grid(3).unwrap();
        let names = ["a", "b", "d", "c", "e", "g"];
        let w = Weighting::from_fn(&net, |k| PolyNat::var(names[k]));
        let cat = FlowCatalog::new(Arc::new(net));
        let f = FlowFunction::new(&cat, w).unwrap();
        let rel = families::triple();
        let (l, r) = evaluate_sides(&f, &rel, &Instantiation::standard(2, 1), Convention::Vanish).unwrap();
        assert_eq!(l, r);
        let expected: PolyNat = "a^2·b·c·d·e + a^2·b^2·c·d".parse().unwrap();
        assert_eq!(l, Starred::value(expected));
    }

    #[test]
    fn tropical_quadruple_on_gamma4() {
        let net = build_half_grid(4).unwrap();
        let w = Weighting::from_fn(&net, |k| TropicalInt::from((k as i64 * 7919) % 13 - 6));
        let cat = FlowCatalog::new(Arc::new(net));
        let f = FlowFunction::new(&cat, w).unwrap();
        let (l, r) = evaluate_sides(&f, &families::quadruple(), &Instantiation::standard(2, 2), Convention::Star).unwrap();
        assert!(!l.is_star());
        assert_eq!(l, r);
    }

    #[test]
    fn conventions_agree_with_missing_flows() {
        // Two disconnected source-sink pairs: f(12) is defined, f(13) is not.
        let net = crate::network::PlanarNetwork::from_text(
            "vertex a\nvertex b\nvertex c\nvertex t1\nvertex t2\n\
             edge a t1\nedge b t2\nedge c t2\nsources a b c\nsinks t1 t2 c\n",
        )
        .unwrap();
        let cat = FlowCatalog::new(Arc::new(net.clone()));
        let f = FlowFunction::new(&cat, Weighting::constant(&net, BigInt::from(1))).unwrap();
        let rel = families::triple();
        let inst = Instantiation::standard(2, 1);
        let vanish = evaluate_sides(&f, &rel, &inst, Convention::Vanish).unwrap();
        let star = evaluate_sides(&f, &rel, &inst, Convention::Star).unwrap();
        assert_eq!(vanish, star);
    }

    #[test]
    fn multiplicities_scale() {
        let net = build_half_grid(3).unwrap();
        let cat = FlowCatalog::new(Arc::new(net.clone()));
        let f = FlowFunction::new(&cat, Weighting::constant(&net, BigInt::from(2))).unwrap();
        let mut twice = Collection::new(2, 1);
        twice.add(s("13"), 2).unwrap();
        let rel = QuadraticRelation::new(twice, Collection::digits(2, 1, &["13"]).unwrap()).unwrap();
        let (l, r) = evaluate_sides(&f, &rel, &Instantiation::standard(2, 1), Convention::Vanish).unwrap();
        assert_eq!(l.0.unwrap(), r.0.unwrap() * 2);
    }

    #[test]
    fn empty_sides_are_star() {
        let net = build_half_grid(3).unwrap();
        let cat = FlowCatalog::new(Arc::new(net.clone()));
        let rel = QuadraticRelation::new(Collection::new(2, 1), Collection::new(2, 1)).unwrap();
        assert!(symbolic_check(&cat, &rel, &Instantiation::standard(2, 1)).unwrap());
    }
}
