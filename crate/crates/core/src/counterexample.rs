//! Networks that separate the two sides of an unbalanced pair.
//!
//! For a nested matching `M̂` with no free elements on `[2p]`, the gadget
//! network has, for every `A` with `M̂` feasible, exactly one `A`-flow and one
//! `Â`-flow, and for every other `A` at least one of them is missing. With
//! unit weights the two sides of a relation then count the members admitting
//! the witness matching, which differ for an unbalanced pair.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc as Shared;

use num_bigint::BigInt;
use thiserror::Error;

use crate::flows::{enumerate_flag_flows, FlowCatalog, FlowError, FlowFunction, Weighting};
use crate::matchings::{
    enumerate_nested_matchings, is_balanced, is_feasible, Arc, Collection, MatchingError, NestedMatching, Witness,
};
use crate::network::{EdgeKind, NetworkDescription, NetworkError, PlanarNetwork, Planarity, VertexId};
use crate::relations::{evaluate_side, Convention, RelationError, Summand, Summands};
use crate::semiring::{PolyNat, Semiring, Starred};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CounterexampleError {
    #[error("need p ≥ q ≥ 1, got p = {p}, q = {q}")]
    BadParameters { p: usize, q: usize },
    #[error("{0} is not a nested matching of size q on [p+q] with uncovered free elements")]
    InfeasibleMatching(NestedMatching),
    #[error("matching {0} leaves free elements")]
    FreeElements(NestedMatching),
    #[error("the pair is balanced; no separating network exists")]
    Balanced,
    #[error("gadget for {0} does not separate the sides")]
    NoViolation(NestedMatching),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// `M` completed to a matching without free elements on `[2p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedMatching {
    pub original: NestedMatching,
    pub p: usize,
    pub q: usize,
    /// `π_ℓ = (i_ℓ, 2p−ℓ+1)` for the free elements `i_1 < … < i_{p−q}`.
    pub added: Vec<Arc>,
    pub augmented: NestedMatching,
}

impl AugmentedMatching {
    /// `Â = Ā ∪ {p+q+1, …, 2p}`.
    pub fn hat(&self, a: Subset) -> Subset {
        let n = self.p + self.q;
        a.complement(n).union(Subset::interval(n + 1, 2 * self.p))
    }
}

pub fn augment_matching(m: &NestedMatching, p: usize, q: usize) -> Result<AugmentedMatching, CounterexampleError> {
    if q == 0 || p < q || 2 * p > crate::subset::MAX_ELEMENT {
        return Err(CounterexampleError::BadParameters { p, q });
    }
    let n = p + q;
    let free = m.free_elements(n);
    let valid = m.len() == q
        && m.arcs().iter().all(|a| a.j <= n)
        && m.is_disjoint()
        && m.is_nested()
        && !free.iter().any(|k| m.arcs().iter().any(|a| a.covers(k)));
    if !valid {
        return Err(CounterexampleError::InfeasibleMatching(m.clone()));
    }
    let added: Vec<Arc> = free
        .iter()
        .enumerate()
        .map(|(l, i)| Arc::new(i, 2 * p - l).expect("free elements lie below p+q+1"))
        .collect();
    let augmented = NestedMatching::new(m.arcs().iter().chain(&added).copied().collect());
    Ok(AugmentedMatching {
        original: m.clone(),
        p,
        q,
        added,
        augmented,
    })
}

/// The subgraph `C_π` of one arc: `v[0] = s_i, u[0], v[1], …, u[Δ−1], v[Δ] = s_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub arc: Arc,
    pub u: Vec<VertexId>,
    pub v: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct GadgetNetwork {
    pub network: Shared<PlanarNetwork>,
    pub matching: NestedMatching,
    pub gadgets: Vec<Gadget>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GadgetOptions {
    /// Adds `z_i → s_i` and `z_i → s_{i+1}` so the network is connected.
    pub connect: bool,
}

fn u_name(a: Arc, l: usize) -> String {
    format!("pi({},{}):u{l}", a.i, a.j)
}

fn v_name(a: Arc, l: usize) -> String {
    if l == 0 {
        format!("s{}", a.i)
    } else if 2 * l == a.j - a.i + 1 {
        format!("s{}", a.j)
    } else {
        format!("pi({},{}):v{l}", a.i, a.j)
    }
}

pub fn build_gadget_network(m_hat: &NestedMatching, options: GadgetOptions) -> Result<GadgetNetwork, CounterexampleError> {
    let n = m_hat.support().max().unwrap_or(0);
    if m_hat.is_empty() || !m_hat.free_elements(n).is_empty() || !m_hat.is_nested() || !m_hat.is_disjoint() {
        return Err(CounterexampleError::FreeElements(m_hat.clone()));
    }
    if m_hat.arcs().iter().any(|a| (a.j - a.i) % 2 == 0) {
        return Err(CounterexampleError::FreeElements(m_hat.clone()));
    }
    let mut desc = NetworkDescription::default();
    for k in 1..=n {
        desc.vertices.push((format!("s{k}"), Some((k as f64, 0.0))));
        desc.sources.push(format!("s{k}"));
    }
    for &a in m_hat.arcs() {
        let delta = a.half_width();
        let (c, r) = ((a.i + a.j) as f64 / 2.0, (a.j - a.i) as f64 / 2.0);
        let at = |k: usize| {
            let theta = PI * (1.0 - k as f64 / (2 * delta) as f64);
            Some((c + r * theta.cos(), r * theta.sin()))
        };
        for l in 1..=delta {
            desc.vertices.push((u_name(a, l), at(2 * l - 1)));
            if l < delta {
                desc.vertices.push((v_name(a, l), at(2 * l)));
            }
        }
        for l in 1..=delta {
            desc.edges.push((v_name(a, l - 1), u_name(a, l), EdgeKind::Ordinary));
            desc.edges.push((v_name(a, l), u_name(a, l), EdgeKind::Ordinary));
        }
        for child in m_hat.children(a) {
            for l in 1..=child.half_width() {
                let target = (child.i - a.i - 1) / 2 + l;
                desc.edges.push((u_name(child, l), v_name(a, target), EdgeKind::Ordinary));
            }
        }
    }
    for a in m_hat.maximal_arcs() {
        for l in 1..=a.half_width() {
            desc.sinks.push(u_name(a, l));
        }
    }
    if options.connect {
        for k in 1..n {
            let z = format!("z{k}");
            desc.vertices.push((z.clone(), Some((k as f64 + 0.5, -0.5))));
            desc.edges.push((z.clone(), format!("s{k}"), EdgeKind::Ordinary));
            desc.edges.push((z, format!("s{}", k + 1), EdgeKind::Ordinary));
        }
    }
    let network = PlanarNetwork::from_description(&desc, Planarity::ByConstruction)?;
    let id = |name: String| network.vertex_id(&name).expect("declared above");
    let gadgets = m_hat
        .arcs()
        .iter()
        .map(|&a| Gadget {
            arc: a,
            u: (1..=a.half_width()).map(|l| id(u_name(a, l))).collect(),
            v: (0..=a.half_width()).map(|l| id(v_name(a, l))).collect(),
        })
        .collect();
    Ok(GadgetNetwork {
        network: Shared::new(network),
        matching: m_hat.clone(),
        gadgets,
    })
}

/// Gadget for a matching of size `q` on `[p+q]`, through its augmentation.
pub fn gadget_for(m: &NestedMatching, p: usize, q: usize, options: GadgetOptions) -> Result<(AugmentedMatching, GadgetNetwork), CounterexampleError> {
    let aug = augment_matching(m, p, q)?;
    let g = build_gadget_network(&aug.augmented, options)?;
    Ok((aug, g))
}

/// Checks both separating properties for every `p`-subset `A` of `[p+q]` by
/// enumerating flows: one `A`-flow and one `Â`-flow when `M` is feasible for
/// `A`, otherwise at least one of them missing.
pub fn verify_p1_p2(net: &PlanarNetwork, m: &NestedMatching, p: usize, q: usize) -> bool {
    let n = p + q;
    if net.sources().len() < 2 * p {
        return false;
    }
    let hat = |a: Subset| a.complement(n).union(Subset::interval(n + 1, 2 * p));
    Subset::k_subsets(n, p).into_iter().all(|a| {
        let count = |s: Subset| enumerate_flag_flows(net, s).map(|f| f.len());
        match (count(a), count(hat(a))) {
            (Ok(x), Ok(y)) if is_feasible(m, a, p, q) => x == 1 && y == 1,
            (Ok(x), Ok(y)) => x == 0 || y == 0,
            _ => false,
        }
    })
}

/// Both sides as `f(A) ⊙ f(Â)` summands.
pub fn gadget_summands(c1: &Collection, c2: &Collection, aug: &AugmentedMatching) -> Summands {
    let side = |c: &Collection| {
        c.iter()
            .map(|(a, mult)| Summand {
                i: a,
                j: aug.hat(a),
                mult,
            })
            .collect()
    };
    Summands {
        lhs: side(c1),
        rhs: side(c2),
    }
}

/// The outcome of [`evaluate_inequality`].
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub witness: Witness,
    pub augmented: AugmentedMatching,
    pub gadget: GadgetNetwork,
    pub p1_p2: bool,
    pub left: BigInt,
    pub right: BigInt,
}

/// Builds the gadget of the first witness matching and evaluates both sides
/// over `ℤ` with unit weights (empty sides count as `0`).
pub fn evaluate_inequality(c1: &Collection, c2: &Collection) -> Result<InequalityReport, CounterexampleError> {
    let balance = is_balanced(c1, c2)?;
    let witness = balance.witness.ok_or(CounterexampleError::Balanced)?;
    let (aug, gadget) = gadget_for(&witness.matching, c1.p, c1.q, GadgetOptions::default())?;
    let p1_p2 = verify_p1_p2(&gadget.network, &witness.matching, c1.p, c1.q);
    let catalog = FlowCatalog::new(gadget.network.clone());
    let f = FlowFunction::new(&catalog, Weighting::constant(&gadget.network, BigInt::from(1)))?;
    let summands = gadget_summands(c1, c2, &aug);
    let value = |side: &[Summand]| -> Result<BigInt, CounterexampleError> {
        Ok(evaluate_side(&f, side, Convention::Vanish)?.0.unwrap_or_else(|| BigInt::from(0)))
    };
    let (left, right) = (value(&summands.lhs)?, value(&summands.rhs)?);
    if left == right {
        return Err(CounterexampleError::NoViolation(witness.matching));
    }
    Ok(InequalityReport {
        witness,
        augmented: aug,
        gadget,
        p1_p2,
        left,
        right,
    })
}

/// Symbolic products `f(A) ⊙ f(Â)` on the gadgets of every admissible matching
/// of size `q` on `[p+q]`, precomputed so many pairs can be compared.
pub struct GadgetOracle {
    pub p: usize,
    pub q: usize,
    entries: Vec<(NestedMatching, HashMap<Subset, Starred<PolyNat>>)>,
}

impl GadgetOracle {
    pub fn new(p: usize, q: usize) -> Result<Self, CounterexampleError> {
        let mut entries = Vec::new();
        for m in enumerate_nested_matchings(p + q, q) {
            let (aug, g) = gadget_for(&m, p, q, GadgetOptions::default())?;
            let catalog = FlowCatalog::new(g.network.clone());
            let f = FlowFunction::new(&catalog, Weighting::<PolyNat>::symbolic(&g.network))?;
            let mut products = HashMap::new();
            for a in Subset::k_subsets(p + q, p) {
                let prod = f.eval_starred(a)?.mul(&f.eval_starred(aug.hat(a))?);
                products.insert(a, prod);
            }
            entries.push((m, products));
        }
        Ok(GadgetOracle { p, q, entries })
    }

    pub fn matchings(&self) -> impl Iterator<Item = &NestedMatching> {
        self.entries.iter().map(|(m, _)| m)
    }

    /// The first matching whose gadget gives different symbolic sides.
    pub fn separating_matching(&self, c1: &Collection, c2: &Collection) -> Result<Option<NestedMatching>, CounterexampleError> {
        for (m, products) in &self.entries {
            let side = |c: &Collection| -> Result<Starred<PolyNat>, CounterexampleError> {
                let mut acc = Starred::star();
                for (a, mult) in c.iter() {
                    let term = products[&a].nat_scale(mult as u64).map_err(RelationError::from)?;
                    acc = acc.add(&term);
                }
                Ok(acc)
            };
            if side(c1)? != side(c2)? {
                return Ok(Some(m.clone()));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(arcs: &[(usize, usize)]) -> NestedMatching {
        NestedMatching::of(arcs)
    }

    #[test]
    fn augmentation_examples() {
        let m = nm(&[(1, 2), (3, 4)]);
        assert_eq!(augment_matching(&m, 2, 2).unwrap().augmented, m);
        let a = augment_matching(&nm(&[(1, 2)]), 2, 1).unwrap();
        assert_eq!(a.augmented, nm(&[(1, 2), (3, 4)]));
        let a = augment_matching(&nm(&[(1, 2), (4, 5)]), 3, 2).unwrap();
        assert_eq!(a.augmented, nm(&[(1, 2), (4, 5), (3, 6)]));
        assert_eq!(a.hat(Subset::digits("135")), Subset::digits("246"));
        // free element 2 under the arc (1,3)
        assert!(augment_matching(&nm(&[(1, 3)]), 2, 1).is_err());
        assert!(augment_matching(&nm(&[(1, 3), (2, 4)]), 2, 2).is_err());
    }

    #[test]
    fn single_arc_gadget() {
        let g = build_gadget_network(&nm(&[(1, 2)]), GadgetOptions::default()).unwrap();
        let net = &g.network;
        assert_eq!(net.num_vertices(), 3);
        assert_eq!(net.num_edges(), 2);
        assert_eq!(net.name(net.sink(1)), "pi(1,2):u1");
    }

    #[test]
    fn nested_pair_gadget() {
        let g = build_gadget_network(&nm(&[(1, 4), (2, 3)]), GadgetOptions::default()).unwrap();
        let net = &g.network;
        // s1..s4, u1 u2 v1 of (1,4), u1 of (2,3)
        assert_eq!(net.num_vertices(), 8);
        assert_eq!(net.num_edges(), 4 + 2 + 1);
        let u = net.vertex_id("pi(2,3):u1").unwrap();
        let v = net.vertex_id("pi(1,4):v1").unwrap();
        assert!(net.find_edge(u, v).is_some());
        assert!(verify_p1_p2(net, &nm(&[(1, 4), (2, 3)]), 2, 2));
    }

    #[test]
    fn figure_gadget() {
        let m = nm(&[(1, 6), (2, 3), (4, 5), (7, 10), (8, 9)]);
        let g = build_gadget_network(&m, GadgetOptions::default()).unwrap();
        let net = &g.network;
        let sinks: Vec<&str> = net.sinks().iter().map(|&t| net.name(t)).collect();
        assert_eq!(
            sinks,
            ["pi(1,6):u1", "pi(1,6):u2", "pi(1,6):u3", "pi(7,10):u1", "pi(7,10):u2"]
        );
        let edge = |a: &str, b: &str| net.find_edge(net.vertex_id(a).unwrap(), net.vertex_id(b).unwrap()).is_some();
        assert!(edge("pi(2,3):u1", "pi(1,6):v1"));
        assert!(edge("pi(4,5):u1", "pi(1,6):v2"));
        assert!(edge("pi(8,9):u1", "pi(7,10):v1"));
        assert!(verify_p1_p2(net, &m, 5, 5));
    }

    #[test]
    fn p1_p2_small_cases() {
        let (_, g) = gadget_for(&nm(&[(1, 2)]), 2, 1, GadgetOptions::default()).unwrap();
        assert!(verify_p1_p2(&g.network, &nm(&[(1, 2)]), 2, 1));
        let (_, g) = gadget_for(&nm(&[(1, 2), (3, 4)]), 2, 2, GadgetOptions::default()).unwrap();
        assert!(verify_p1_p2(&g.network, &nm(&[(1, 2), (3, 4)]), 2, 2));
    }

    #[test]
    fn corrupted_gadget_fails() {
        let m = nm(&[(1, 4), (2, 3)]);
        let g = build_gadget_network(&m, GadgetOptions::default()).unwrap();
        let mut desc = g.network.to_description();
        desc.edges.retain(|(t, h, _)| !(t == "pi(2,3):u1" && h == "pi(1,4):v1"));
        let broken = PlanarNetwork::from_description(&desc, Planarity::Declared).unwrap();
        assert!(!verify_p1_p2(&broken, &m, 2, 2));
    }

    #[test]
    fn connecting_vertices_do_not_change_flows() {
        let m = nm(&[(1, 2), (3, 6), (4, 5)]);
        let g = build_gadget_network(&m, GadgetOptions { connect: true }).unwrap();
        assert_eq!(g.network.num_vertices(), 6 + 1 + 3 + 1 + 5);
        assert!(verify_p1_p2(&g.network, &m, 3, 3));
    }

    #[test]
    fn inequality_examples() {
        let c = |m: &[&str]| Collection::digits(2, 1, m).unwrap();
        let r = evaluate_inequality(&c(&["12"]), &c(&["13"])).unwrap();
        assert_eq!((r.left.clone(), r.right.clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(r.witness.matching, nm(&[(1, 2)]));
        assert!(r.p1_p2);

        let mut twice = Collection::new(2, 1);
        twice.add(Subset::digits("13"), 2).unwrap();
        let r = evaluate_inequality(&c(&["12", "23"]), &twice).unwrap();
        assert_ne!(r.left, r.right);

        assert_eq!(
            evaluate_inequality(&c(&["13"]), &c(&["12", "23"])).unwrap_err(),
            CounterexampleError::Balanced
        );
    }

    #[test]
    fn all_small_gadgets_separate() {
        for total in 2..=6 {
            for q in 1..=total / 2 {
                let p = total - q;
                for m in enumerate_nested_matchings(total, q) {
                    let (_, g) = gadget_for(&m, p, q, GadgetOptions::default()).unwrap();
                    assert!(verify_p1_p2(&g.network, &m, p, q), "{m} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_balance() {
        let oracle = GadgetOracle::new(2, 1).unwrap();
        let c = |m: &[&str]| Collection::digits(2, 1, m).unwrap();
        assert_eq!(oracle.separating_matching(&c(&["13"]), &c(&["12", "23"])).unwrap(), None);
        assert_eq!(
            oracle.separating_matching(&c(&["12"]), &c(&["13"])).unwrap(),
            Some(nm(&[(1, 2)]))
        );
    }
}
