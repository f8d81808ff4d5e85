//! Acyclic networks with ordered sources and sinks, the half-grid builder and
//! the vertex-split transformation.
//!
//! A [`PlanarNetwork`] is immutable once built. Weights are attached to
//! *weight slots*: the vertices of an unsplit network, or the split-edges of a
//! split one. Slot `k` of a split network is the split-edge of vertex `k` of
//! the network it was built from, so one weighting serves both.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::Rng;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Ordinary,
    Split,
    Extra,
}

impl EdgeKind {
    fn token(self) -> &'static str {
        match self {
            EdgeKind::Ordinary => "ordinary",
            EdgeKind::Split => "split",
            EdgeKind::Extra => "extra",
        }
    }
}

/// Library builders embed their output in the plane; user-supplied graphs only
/// declare it (no embedding check is performed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Planarity {
    ByConstruction,
    Declared,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub coords: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub kind: EdgeKind,
}

/// Problems found by [`NetworkDescription::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Cycle(Vec<String>),
    DuplicateVertex(String),
    DuplicateSource(String),
    DuplicateSink(String),
    DanglingEdge { tail: String, head: String },
    UnknownTerminal(String),
    SelfLoop(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle(w) => write!(f, "cycle: {}", w.join(",")),
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Violation::DuplicateSource(v) => write!(f, "duplicate source {v}"),
            Violation::DuplicateSink(v) => write!(f, "duplicate sink {v}"),
            Violation::DanglingEdge { tail, head } => write!(f, "dangling edge {tail} -> {head}"),
            Violation::UnknownTerminal(v) => write!(f, "unknown terminal {v}"),
            Violation::SelfLoop(v) => write!(f, "self-loop at {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("invalid network: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("network is already split")]
    AlreadySplit,
    #[error("network is not split")]
    NotSplit,
    #[error("half-grid size must be at least 1")]
    EmptyGrid,
}

/// The raw, unchecked form of a network, as read from text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NetworkDescription {
    pub vertices: Vec<(String, Option<(f64, f64)>)>,
    pub edges: Vec<(String, String, EdgeKind)>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
}

impl NetworkDescription {
    /// Reports cycles (with a witness), duplicate terminals and edges or
    /// terminals that mention undeclared vertices. Planarity is not checked.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut index = HashMap::new();
        for (k, (name, _)) in self.vertices.iter().enumerate() {
            if index.insert(name.as_str(), k).is_some() {
                out.push(Violation::DuplicateVertex(name.clone()));
            }
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (t, h, _) in &self.edges {
            match (index.get(t.as_str()), index.get(h.as_str())) {
                (Some(&a), Some(&b)) => {
                    if a == b {
                        out.push(Violation::SelfLoop(t.clone()));
                    } else {
                        adj[a].push(b);
                    }
                }
                _ => out.push(Violation::DanglingEdge {
                    tail: t.clone(),
                    head: h.clone(),
                }),
            }
        }
        for (list, dup) in [(&self.sources, true), (&self.sinks, false)] {
            let mut seen = HashSet::new();
            for v in list {
                if !index.contains_key(v.as_str()) {
                    out.push(Violation::UnknownTerminal(v.clone()));
                }
                if !seen.insert(v) {
                    out.push(if dup {
                        Violation::DuplicateSource(v.clone())
                    } else {
                        Violation::DuplicateSink(v.clone())
                    });
                }
            }
        }
        if let Some(cycle) = find_cycle(&adj) {
            out.push(Violation::Cycle(
                cycle.into_iter().map(|v| self.vertices[v].0.clone()).collect(),
            ));
        }
        out
    }

    /// Parses the line format `vertex <id> [<x> <y>]`, `edge <tail> <head>
    /// [ordinary|split|extra]`, `sources <id>…`, `sinks <id>…`; `#` starts a
    /// comment. Directives may come in any order.
    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        let mut desc = NetworkDescription::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| NetworkError::Parse {
                line: k + 1,
                reason: reason.into(),
            };
            let mut toks = line.split_whitespace();
            let directive = toks.next().unwrap();
            let rest: Vec<&str> = toks.collect();
            match directive {
                "vertex" => match rest.as_slice() {
                    [id] => desc.vertices.push((id.to_string(), None)),
                    [id, x, y] => {
                        let x: f64 = x.parse().map_err(|_| err("bad x coordinate"))?;
                        let y: f64 = y.parse().map_err(|_| err("bad y coordinate"))?;
                        desc.vertices.push((id.to_string(), Some((x, y))));
                    }
                    _ => return Err(err("expected `vertex <id> [<x> <y>]`")),
                },
                "edge" => {
                    let kind = match rest.get(2).copied() {
                        None | Some("ordinary") => EdgeKind::Ordinary,
                        Some("split") => EdgeKind::Split,
                        Some("extra") => EdgeKind::Extra,
                        Some(_) => return Err(err("unknown edge kind")),
                    };
                    if rest.len() < 2 || rest.len() > 3 {
                        return Err(err("expected `edge <tail> <head> [kind]`"));
                    }
                    desc.edges.push((rest[0].into(), rest[1].into(), kind));
                }
                "sources" => desc.sources.extend(rest.iter().map(|s| s.to_string())),
                "sinks" => desc.sinks.extend(rest.iter().map(|s| s.to_string())),
                other => return Err(err(&format!("unknown directive `{other}`"))),
            }
        }
        Ok(desc)
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    // iterative three-color DFS; on a back edge, walk the parent chain
    let n = adj.len();
    let mut color = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let u = adj[v][*next];
                *next += 1;
                match color[u] {
                    0 => {
                        color[u] = 1;
                        parent[u] = v;
                        stack.push((u, 0));
                    }
                    1 => {
                        let mut cycle = vec![v];
                        let mut x = v;
                        while x != u {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Bookkeeping that ties a split network to the network it came from.
#[derive(Debug, Clone)]
pub struct SplitInfo {
    /// For each edge: the original vertex if it is a split-edge.
    pub origin: Vec<Option<VertexId>>,
    /// For each original vertex: its split-edge.
    pub split_edge: Vec<EdgeId>,
    pub original: Arc<PlanarNetwork>,
}

/// An acyclic digraph with ordered source and sink lists.
#[derive(Debug, Clone)]
pub struct PlanarNetwork {
    vertices: Vec<Vertex>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    sources: Vec<VertexId>,
    sinks: Vec<VertexId>,
    topo: Vec<VertexId>,
    planarity: Planarity,
    split: Option<SplitInfo>,
}

impl PlanarNetwork {
    pub fn from_description(desc: &NetworkDescription, planarity: Planarity) -> Result<Self, NetworkError> {
        let violations = desc.validate();
        if !violations.is_empty() {
            return Err(NetworkError::Invalid(violations));
        }
        let vertices: Vec<Vertex> = desc
            .vertices
            .iter()
            .map(|(name, coords)| Vertex {
                name: name.clone(),
                coords: *coords,
            })
            .collect();
        let index: HashMap<String, VertexId> =
            vertices.iter().enumerate().map(|(k, v)| (v.name.clone(), k)).collect();
        let edges = desc
            .edges
            .iter()
            .map(|(t, h, kind)| Edge {
                tail: index[t],
                head: index[h],
                kind: *kind,
            })
            .collect();
        let sources = desc.sources.iter().map(|s| index[s]).collect();
        let sinks = desc.sinks.iter().map(|s| index[s]).collect();
        Ok(Self::assemble(vertices, edges, sources, sinks, planarity, None))
    }

    /// Reads the text format; the result carries [`Planarity::Declared`].
    pub fn from_text(text: &str) -> Result<Self, NetworkError> {
        Self::from_description(&NetworkDescription::parse(text)?, Planarity::Declared)
    }

    fn assemble(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        sources: Vec<VertexId>,
        sinks: Vec<VertexId>,
        planarity: Planarity,
        split: Option<SplitInfo>,
    ) -> Self {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.tail].push(k);
            in_edges[e.head].push(k);
        }
        // Kahn's algorithm; callers guarantee acyclicity
        let mut indeg: Vec<usize> = in_edges.iter().map(Vec::len).collect();
        let mut queue: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &e in &out_edges[v] {
                let h = edges[e].head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push(h);
                }
            }
        }
        assert_eq!(topo.len(), n, "network must be acyclic");
        let index = vertices.iter().enumerate().map(|(k, v)| (v.name.clone(), k)).collect();
        PlanarNetwork {
            vertices,
            index,
            edges,
            out_edges,
            in_edges,
            sources,
            sinks,
            topo,
            planarity,
            split,
        }
    }

    pub fn to_description(&self) -> NetworkDescription {
        NetworkDescription {
            vertices: self.vertices.iter().map(|v| (v.name.clone(), v.coords)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (self.name(e.tail).into(), self.name(e.head).into(), e.kind))
                .collect(),
            sources: self.sources.iter().map(|&v| self.name(v).into()).collect(),
            sinks: self.sinks.iter().map(|&v| self.name(v).into()).collect(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.to_description().validate()
    }

    /// Writes `vertex` lines, then `edge` lines, then `sources` and `sinks`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            match v.coords {
                Some((x, y)) => s.push_str(&format!("vertex {} {x} {y}\n", v.name)),
                None => s.push_str(&format!("vertex {}\n", v.name)),
            }
        }
        for e in &self.edges {
            s.push_str(&format!("edge {} {}", self.name(e.tail), self.name(e.head)));
            if e.kind != EdgeKind::Ordinary {
                s.push(' ');
                s.push_str(e.kind.token());
            }
            s.push('\n');
        }
        let names = |list: &[VertexId]| list.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(" ");
        s.push_str(&format!("sources {}\n", names(&self.sources)));
        s.push_str(&format!("sinks {}\n", names(&self.sinks)));
        s
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.out_edges[tail].iter().copied().find(|&e| self.edges[e].head == head)
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    /// `s_1, …, s_n`.
    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    /// `t_1, …, t_m`.
    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    /// `s_i`, 1-based.
    pub fn source(&self, i: usize) -> VertexId {
        self.sources[i - 1]
    }

    /// `t_j`, 1-based.
    pub fn sink(&self, j: usize) -> VertexId {
        self.sinks[j - 1]
    }

    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    pub fn planarity(&self) -> Planarity {
        self.planarity
    }

    pub fn is_split(&self) -> bool {
        self.split.is_some()
    }

    pub fn split_info(&self) -> Option<&SplitInfo> {
        self.split.as_ref()
    }

    /// Number of weight slots: vertices, or split-edges after splitting.
    pub fn num_weight_slots(&self) -> usize {
        match &self.split {
            Some(info) => info.split_edge.len(),
            None => self.vertices.len(),
        }
    }

    /// The weight slot of a split-edge, `None` for other edges or unsplit networks.
    pub fn slot_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.split.as_ref().and_then(|info| info.origin[e])
    }

    /// Human-readable slot name (the original vertex name).
    pub fn slot_name(&self, slot: usize) -> &str {
        match &self.split {
            Some(info) => info.original.name(slot),
            None => self.name(slot),
        }
    }

    /// `reach[v]` holds every vertex reachable from `v` (including `v`).
    pub fn reachability(&self) -> Vec<FixedBitSet> {
        let n = self.vertices.len();
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        for &v in self.topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &e in &self.out_edges[v] {
                set.union_with(&reach[self.edges[e].head]);
            }
            reach[v] = set;
        }
        reach
    }

    /// The modified network: each vertex `v` becomes `v′ → v″`, each edge
    /// `(u, v)` becomes `(u″, v′)`, and new terminals `ŝ_i → s_i′`,
    /// `t_j″ → t̂_j` are attached. Rejects networks that are already split.
    pub fn vertex_split(self: &Arc<Self>) -> Result<PlanarNetwork, NetworkError> {
        if self.is_split() || self.edges.iter().any(|e| e.kind != EdgeKind::Ordinary) {
            return Err(NetworkError::AlreadySplit);
        }
        let n = self.vertices.len();
        let mut vertices = Vec::with_capacity(2 * n + self.sources.len() + self.sinks.len());
        for v in &self.vertices {
            let (c1, c2) = match v.coords {
                Some((x, y)) => (Some((x, y - 0.2)), Some((x - 0.2, y + 0.2))),
                None => (None, None),
            };
            vertices.push(Vertex {
                name: format!("{}'", v.name),
                coords: c1,
            });
            vertices.push(Vertex {
                name: format!("{}''", v.name),
                coords: c2,
            });
        }
        let prime = |v: VertexId| 2 * v;
        let dprime = |v: VertexId| 2 * v + 1;
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        let mut split_edge = Vec::with_capacity(n);
        for v in 0..n {
            split_edge.push(edges.len());
            edges.push(Edge {
                tail: prime(v),
                head: dprime(v),
                kind: EdgeKind::Split,
            });
            origin.push(Some(v));
        }
        for e in &self.edges {
            edges.push(Edge {
                tail: dprime(e.tail),
                head: prime(e.head),
                kind: EdgeKind::Ordinary,
            });
            origin.push(None);
        }
        let mut sources = Vec::new();
        for (i, &s) in self.sources.iter().enumerate() {
            let id = vertices.len();
            vertices.push(Vertex {
                name: format!("^s{}", i + 1),
                coords: self.vertices[s].coords.map(|(x, y)| (x, y - 1.0)),
            });
            edges.push(Edge {
                tail: id,
                head: prime(s),
                kind: EdgeKind::Extra,
            });
            origin.push(None);
            sources.push(id);
        }
        let mut sinks = Vec::new();
        for (j, &t) in self.sinks.iter().enumerate() {
            let id = vertices.len();
            vertices.push(Vertex {
                name: format!("^t{}", j + 1),
                coords: self.vertices[t].coords.map(|(x, y)| (x - 1.0, y)),
            });
            edges.push(Edge {
                tail: dprime(t),
                head: id,
                kind: EdgeKind::Extra,
            });
            origin.push(None);
            sinks.push(id);
        }
        let info = SplitInfo {
            origin,
            split_edge,
            original: Arc::clone(self),
        };
        Ok(Self::assemble(vertices, edges, sources, sinks, self.planarity, Some(info)))
    }

    /// Checks the local structure guaranteed by splitting: every non-terminal
    /// vertex meets exactly one split-edge, which forces in-degree (or
    /// out-degree) one on its side, and every terminal has exactly one edge.
    pub fn split_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let terminals: HashSet<VertexId> = self.sources.iter().chain(&self.sinks).copied().collect();
        for v in 0..self.vertices.len() {
            let (ins, outs) = (&self.in_edges[v], &self.out_edges[v]);
            if terminals.contains(&v) {
                if ins.len() + outs.len() != 1 {
                    out.push(format!("terminal {} has {} edges", self.name(v), ins.len() + outs.len()));
                }
                continue;
            }
            let split_in: Vec<_> = ins.iter().filter(|&&e| self.edges[e].kind == EdgeKind::Split).collect();
            let split_out: Vec<_> = outs.iter().filter(|&&e| self.edges[e].kind == EdgeKind::Split).collect();
            match (split_in.len(), split_out.len()) {
                (1, 0) if ins.len() != 1 => out.push(format!("{} has in-degree {}", self.name(v), ins.len())),
                (0, 1) if outs.len() != 1 => out.push(format!("{} has out-degree {}", self.name(v), outs.len())),
                (1, 0) | (0, 1) => {}
                (a, b) => out.push(format!("{} meets {} split-edges", self.name(v), a + b)),
            }
        }
        out
    }

    pub(crate) fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        sources: Vec<VertexId>,
        sinks: Vec<VertexId>,
    ) -> Self {
        Self::assemble(vertices, edges, sources, sinks, Planarity::ByConstruction, None)
    }
}

/// Name of the half-grid vertex `(i, j)`.
pub fn grid_name(i: usize, j: usize) -> String {
    format!("{i},{j}")
}

/// `Γ_n`: vertices `(i, j)` with `1 ≤ j ≤ i ≤ n`, edges `(i,j) → (i−1,j)` and
/// `(i,j) → (i,j+1)`, sources `s_i = (i,1)` and sinks `t_i = (i,i)`.
///
/// Vertex `(i, j)` gets id `i(i−1)/2 + j − 1`, which [`grid_vertex`] computes.
pub fn build_half_grid(n: usize) -> Result<PlanarNetwork, NetworkError> {
    if n == 0 {
        return Err(NetworkError::EmptyGrid);
    }
    let mut vertices = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            vertices.push(Vertex {
                name: grid_name(i, j),
                coords: Some((i as f64, j as f64)),
            });
        }
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            if j < i {
                edges.push(Edge {
                    tail: grid_vertex(i, j),
                    head: grid_vertex(i - 1, j),
                    kind: EdgeKind::Ordinary,
                });
            }
            if j < i {
                edges.push(Edge {
                    tail: grid_vertex(i, j),
                    head: grid_vertex(i, j + 1),
                    kind: EdgeKind::Ordinary,
                });
            }
        }
    }
    let sources = (1..=n).map(|i| grid_vertex(i, 1)).collect();
    let sinks = (1..=n).map(|i| grid_vertex(i, i)).collect();
    Ok(PlanarNetwork::from_parts(vertices, edges, sources, sinks))
}

/// Id of `(i, j)` in [`build_half_grid`]'s output.
pub fn grid_vertex(i: usize, j: usize) -> VertexId {
    i * (i - 1) / 2 + j - 1
}

/// A random planar acyclic network with `n` sources and `n` sinks, obtained
/// from `Γ_n` by deleting edges, adding up-left diagonals inside square faces
/// and subdividing edges. The embedding of `Γ_n` keeps it planar, with the
/// terminals on the outer face in the same order.
pub fn random_planar_network<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PlanarNetwork {
    assert!(n >= 1, "need at least one source");
    let grid = build_half_grid(n).expect("n >= 1");
    let mut vertices = grid.vertices.clone();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for e in &grid.edges {
        if rng.gen_bool(0.85) {
            pairs.push((e.tail, e.head));
        }
    }
    for i in 3..=n {
        for j in 1..i - 1 {
            if rng.gen_bool(0.3) {
                pairs.push((grid_vertex(i, j), grid_vertex(i - 1, j + 1)));
            }
        }
    }
    let mut edges = Vec::new();
    for (t, h) in pairs {
        if rng.gen_bool(0.2) {
            let mid = vertices.len();
            let coords = match (vertices[t].coords, vertices[h].coords) {
                (Some((x1, y1)), Some((x2, y2))) => Some(((x1 + x2) / 2.0, (y1 + y2) / 2.0)),
                _ => None,
            };
            vertices.push(Vertex {
                name: format!("x{mid}"),
                coords,
            });
            edges.push(Edge {
                tail: t,
                head: mid,
                kind: EdgeKind::Ordinary,
            });
            edges.push(Edge {
                tail: mid,
                head: h,
                kind: EdgeKind::Ordinary,
            });
        } else {
            edges.push(Edge {
                tail: t,
                head: h,
                kind: EdgeKind::Ordinary,
            });
        }
    }
    PlanarNetwork::from_parts(vertices, edges, grid.sources.clone(), grid.sinks.clone())
}
