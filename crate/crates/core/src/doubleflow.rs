//! Double flows: superpositions `ξ = χ^{E_φ} + χ^{E_φ′}` of an `I(A)`-flow and
//! a `J(A)`-flow in a split network, their decomposition into alternating
//! circuits and paths, and the exchange along essential paths.
//!
//! Everything here requires a split network (see
//! [`PlanarNetwork::vertex_split`]): the alternation argument depends on every
//! inner vertex meeting exactly one split-edge.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::flows::{Flow, FlowCatalog, FlowError};
use crate::matchings::{Arc, NestedMatching};
use crate::network::{EdgeId, PlanarNetwork, VertexId};
use crate::relations::Instantiation;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleFlowError {
    #[error("double flows live in split networks")]
    NotSplit,
    #[error("flow has sources {got}, expected {expected}")]
    WrongSources { got: Subset, expected: Subset },
    #[error("flow does not end at the first {0} sinks")]
    WrongSinks(usize),
    #[error("flow uses edges outside the network")]
    ForeignFlow,
    #[error("{0} is not a {1}-subset of [{2}]")]
    BadSet(Subset, usize, usize),
    #[error("vertex {0} meets {1} edges of multiplicity one")]
    Degree(String, usize),
    #[error("alternation fails at vertex {0}")]
    Alternation(String),
    #[error("path component has a bad end at {0}")]
    BadEnd(String),
    #[error("expected {expected} essential paths, found {found}")]
    EssentialCount { expected: usize, found: usize },
    #[error("arc {0} is not in M(ξ)")]
    NotInMatching(Arc),
    #[error("exchange did not produce flows")]
    ExchangeFailed,
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// `ξ` together with the context it was built in and one decomposing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleFlow {
    pub xi: Vec<u8>,
    pub inst: Instantiation,
    pub a: Subset,
    pub phi: Flow,
    pub phi_prime: Flow,
}

fn check_flow(net: &PlanarNetwork, f: &Flow, sources: Subset) -> Result<(), DoubleFlowError> {
    if f.sources != sources {
        return Err(DoubleFlowError::WrongSources {
            got: f.sources,
            expected: sources,
        });
    }
    if f.sinks != Subset::full(sources.len()) {
        return Err(DoubleFlowError::WrongSinks(sources.len()));
    }
    if f.paths.iter().flat_map(|p| &p.edges).any(|&e| e >= net.num_edges()) {
        return Err(DoubleFlowError::ForeignFlow);
    }
    Ok(())
}

/// `χ^{E_φ} + χ^{E_φ′}` for an `I(A)`-flow `φ` and a `J(A)`-flow `φ′`.
pub fn superpose(
    net: &PlanarNetwork,
    inst: Instantiation,
    a: Subset,
    phi: &Flow,
    phi_prime: &Flow,
) -> Result<DoubleFlow, DoubleFlowError> {
    if !net.is_split() {
        return Err(DoubleFlowError::NotSplit);
    }
    if a.len() != inst.p || a.max().is_some_and(|m| m > inst.p + inst.q) {
        return Err(DoubleFlowError::BadSet(a, inst.p, inst.p + inst.q));
    }
    check_flow(net, phi, inst.i_of(a))?;
    check_flow(net, phi_prime, inst.j_of(a))?;
    let mut xi = vec![0u8; net.num_edges()];
    for f in [phi, phi_prime] {
        for p in &f.paths {
            for &e in &p.edges {
                xi[e] += 1;
            }
        }
    }
    Ok(DoubleFlow {
        xi,
        inst,
        a,
        phi: phi.clone(),
        phi_prime: phi_prime.clone(),
    })
}

/// A weakly connected component of the `ξ = 1` subgraph, listed in walk
/// order. For a path, `vertices` runs from one end to the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Component {
    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub circuits: Vec<Component>,
    pub paths: Vec<Component>,
    /// Indices into `paths` of the paths joining `Ŝ_{γ(A)}` to `Ŝ_{γ(Ā)}`.
    pub essential: Vec<usize>,
    /// `π(P)` for each essential path, in the same order as `essential`.
    pub arcs: Vec<Arc>,
    /// `M(ξ)`.
    pub matching: NestedMatching,
}

impl Decomposition {
    /// `d(ξ)`.
    pub fn d(&self) -> usize {
        self.circuits.len()
    }

    fn essential_for(&self, arc: Arc) -> Option<&Component> {
        self.arcs
            .iter()
            .position(|&x| x == arc)
            .map(|k| &self.paths[self.essential[k]])
    }
}

impl DoubleFlow {
    /// Edges with `ξ(e) = i`.
    pub fn level(&self, i: u8) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.xi.len());
        for (e, &v) in self.xi.iter().enumerate() {
            if v == i {
                set.insert(e);
            }
        }
        set
    }

    /// Splits `ξ^{(1)}` into circuits and paths, audits the alternation of
    /// `φ`- and `φ′`-edges, and classifies path ends.
    pub fn decompose(&self, net: &PlanarNetwork) -> Result<Decomposition, DoubleFlowError> {
        if !net.is_split() {
            return Err(DoubleFlowError::NotSplit);
        }
        let ones = self.level(1);
        let in_phi = self.phi.edge_set(net.num_edges());
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); net.num_vertices()];
        for e in ones.ones() {
            let edge = net.edge(e);
            incident[edge.tail].push(e);
            incident[edge.head].push(e);
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() > 2 {
                return Err(DoubleFlowError::Degree(net.name(v).into(), inc.len()));
            }
        }
        let other_end = |e: EdgeId, v: VertexId| {
            let edge = net.edge(e);
            if edge.tail == v {
                edge.head
            } else {
                edge.tail
            }
        };
        let mut visited = FixedBitSet::with_capacity(net.num_edges());
        let walk = |start: VertexId, first: EdgeId, visited: &mut FixedBitSet| {
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            let (mut v, mut e) = (start, first);
            loop {
                visited.insert(e);
                edges.push(e);
                v = other_end(e, v);
                vertices.push(v);
                match incident[v].iter().copied().find(|&x| !visited.contains(x)) {
                    Some(next) => e = next,
                    None => break,
                }
            }
            Component { vertices, edges }
        };
        let mut paths = Vec::new();
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() == 1 && !visited.contains(inc[0]) {
                paths.push(walk(v, inc[0], &mut visited));
            }
        }
        let mut circuits = Vec::new();
        for e in ones.ones() {
            if !visited.contains(e) {
                let start = net.edge(e).tail;
                let mut c = walk(start, e, &mut visited);
                c.vertices.pop(); // closing vertex repeats the start
                circuits.push(c);
            }
        }
        // alternation: along a component, consecutive edges from the same flow
        // keep direction; edges from different flows meet head-to-head or
        // tail-to-tail
        for comp in paths.iter().chain(&circuits) {
            let k = comp.edges.len();
            let closed = comp.vertices.len() == comp.edges.len();
            let pairs = if closed { k } else { k.saturating_sub(1) };
            for t in 0..pairs {
                let (e1, e2) = (comp.edges[t], comp.edges[(t + 1) % k]);
                let v = comp.vertices[(t + 1) % comp.vertices.len()];
                let enters = |e: EdgeId| net.edge(e).head == v;
                let same_flow = in_phi.contains(e1) == in_phi.contains(e2);
                let same_side = enters(e1) == enters(e2);
                if same_flow == same_side {
                    return Err(DoubleFlowError::Alternation(net.name(v).into()));
                }
            }
        }
        // end classification
        let inst = &self.inst;
        let source_index: HashMap<VertexId, usize> =
            net.sources().iter().enumerate().map(|(k, &s)| (s, k + 1)).collect();
        let sink_index: HashMap<VertexId, usize> =
            net.sinks().iter().enumerate().map(|(k, &t)| (t, k + 1)).collect();
        let white = inst.gamma(self.a);
        let black = inst.gamma(inst.complement(self.a));
        let xs = inst.x.len();
        let t_tilde = Subset::interval(xs + inst.q + 1, xs + inst.p);
        #[derive(PartialEq)]
        enum End {
            White(usize),
            Black(usize),
            Sink,
        }
        let classify = |v: VertexId| -> Result<End, DoubleFlowError> {
            if let Some(&i) = source_index.get(&v) {
                if white.contains(i) {
                    return Ok(End::White(i));
                }
                if black.contains(i) {
                    return Ok(End::Black(i));
                }
            }
            if let Some(&j) = sink_index.get(&v) {
                if t_tilde.contains(j) {
                    return Ok(End::Sink);
                }
            }
            Err(DoubleFlowError::BadEnd(net.name(v).into()))
        };
        let mut essential = Vec::new();
        let mut arcs = Vec::new();
        for (k, comp) in paths.iter().enumerate() {
            let (u, w) = comp.ends();
            let (cu, cw) = (classify(u)?, classify(w)?);
            let (i, j) = match (cu, cw) {
                (End::White(i), End::Black(j)) | (End::Black(j), End::White(i)) => (i, j),
                (End::White(_), End::Sink) | (End::Sink, End::White(_)) => continue,
                _ => {
                    return Err(DoubleFlowError::BadEnd(net.name(u).into()));
                }
            };
            let (gi, gj) = (inst.gamma_inv(i).unwrap(), inst.gamma_inv(j).unwrap());
            essential.push(k);
            arcs.push(Arc {
                i: gi.min(gj),
                j: gi.max(gj),
            });
        }
        if essential.len() != inst.q {
            return Err(DoubleFlowError::EssentialCount {
                expected: inst.q,
                found: essential.len(),
            });
        }
        let matching = NestedMatching::new(arcs.clone());
        Ok(Decomposition {
            circuits,
            paths,
            essential,
            arcs,
            matching,
        })
    }

    /// Exchanges `φ` and `φ′` along the essential paths of the arcs in `Π`
    /// and along the circuits with indices in `circuits`. The result is an
    /// `I(A′)`-flow and a `J(A′)`-flow with `A′ = A △ (∪Π)` and the same `ξ`.
    pub fn exchange(
        &self,
        net: &PlanarNetwork,
        dec: &Decomposition,
        pi: &[Arc],
        circuits: &[usize],
    ) -> Result<DoubleFlow, DoubleFlowError> {
        let mut swap = FixedBitSet::with_capacity(net.num_edges());
        let mut a = self.a;
        for &arc in pi {
            let path = dec.essential_for(arc).ok_or(DoubleFlowError::NotInMatching(arc))?;
            for &e in &path.edges {
                swap.insert(e);
            }
            a = a.symmetric_difference(arc.ends());
        }
        for &c in circuits {
            for &e in &dec.circuits[c].edges {
                swap.insert(e);
            }
        }
        let mut e1 = self.phi.edge_set(net.num_edges());
        let mut e2 = self.phi_prime.edge_set(net.num_edges());
        e1.symmetric_difference_with(&swap);
        e2.symmetric_difference_with(&swap);
        let f1 = Flow::from_edge_set(net, &e1).ok_or(DoubleFlowError::ExchangeFailed)?;
        let f2 = Flow::from_edge_set(net, &e2).ok_or(DoubleFlowError::ExchangeFailed)?;
        superpose(net, self.inst, a, &f1, &f2)
    }
}

/// `N_{I(A),J(A)}(ξ)` by brute force: pairs in `Φ_{I(A)} × Φ_{J(A)}` whose
/// superposition is `ξ`.
pub fn count_decompositions(
    catalog: &FlowCatalog,
    xi: &[u8],
    inst: &Instantiation,
    a: Subset,
) -> Result<usize, DoubleFlowError> {
    let net = catalog.network();
    let support: Vec<EdgeId> = (0..xi.len()).filter(|&e| xi[e] > 0).collect();
    let fits = |f: &Flow| {
        let set = f.edge_set(net.num_edges());
        set.ones().all(|e| xi[e] > 0) && support.iter().all(|&e| xi[e] < 2 || set.contains(e))
    };
    let left: Vec<FixedBitSet> = catalog
        .flag_flows(inst.i_of(a))?
        .iter()
        .filter(|f| fits(f))
        .map(|f| f.edge_set(net.num_edges()))
        .collect();
    let right: Vec<FixedBitSet> = catalog
        .flag_flows(inst.j_of(a))?
        .iter()
        .filter(|f| fits(f))
        .map(|f| f.edge_set(net.num_edges()))
        .collect();
    let mut count = 0;
    for l in &left {
        for r in &right {
            if support
                .iter()
                .all(|&e| xi[e] == l.contains(e) as u8 + r.contains(e) as u8)
            {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Every distinct double flow for `(I(A), J(A))`, each with the number of
/// flow pairs producing it.
pub fn double_flows(
    catalog: &FlowCatalog,
    inst: Instantiation,
    a: Subset,
) -> Result<Vec<(DoubleFlow, usize)>, DoubleFlowError> {
    let net = catalog.network();
    let left = catalog.flag_flows(inst.i_of(a))?;
    let right = catalog.flag_flows(inst.j_of(a))?;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut out: Vec<(DoubleFlow, usize)> = Vec::new();
    for phi in left.iter() {
        for psi in right.iter() {
            let df = superpose(net, inst, a, phi, psi)?;
            match index.get(&df.xi) {
                Some(&k) => out[k].1 += 1,
                None => {
                    index.insert(df.xi.clone(), out.len());
                    out.push((df, 1));
                }
            }
        }
    }
    Ok(out)
}

/// What [`audit`] found for one double flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiAudit {
    pub d: usize,
    /// `N_{I(A),J(A)}(ξ)`, counted by enumeration.
    pub count: usize,
    pub matching: NestedMatching,
    /// For every `Π ⊆ M(ξ)`: the exchange keeps `ξ`, moves `A` to
    /// `A △ (∪Π)`, and the count for the new pair equals `count`.
    pub exchange_ok: bool,
}

impl XiAudit {
    pub fn ok(&self) -> bool {
        self.count == 1 << self.d && self.exchange_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub inst: Instantiation,
    pub a: Subset,
    pub entries: Vec<XiAudit>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(XiAudit::ok)
    }
}

/// Checks `N(ξ) = 2^{d(ξ)}` and the exchange invariance for every double flow
/// of `(I(A), J(A))`.
pub fn audit(catalog: &FlowCatalog, inst: Instantiation, a: Subset) -> Result<AuditReport, DoubleFlowError> {
    let net = catalog.network();
    let mut entries = Vec::new();
    for (df, count) in double_flows(catalog, inst, a)? {
        let dec = df.decompose(net)?;
        let arcs = dec.matching.arcs();
        let mut exchange_ok = true;
        for mask in 0u32..1 << arcs.len() {
            let pi: Vec<Arc> = (0..arcs.len()).filter(|k| mask >> k & 1 == 1).map(|k| arcs[k]).collect();
            let moved = df.exchange(net, &dec, &pi, &[])?;
            let expected_a = pi.iter().fold(a, |acc, arc| acc.symmetric_difference(arc.ends()));
            exchange_ok &= moved.xi == df.xi
                && moved.a == expected_a
                && count_decompositions(catalog, &df.xi, &inst, expected_a)? == count;
        }
        entries.push(XiAudit {
            d: dec.d(),
            count,
            matching: dec.matching,
            exchange_ok,
        });
    }
    Ok(AuditReport { inst, a, entries })
}
