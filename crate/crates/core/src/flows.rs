//! Vertex-disjoint path systems (flows), flow-generated functions and the
//! Lindström path matrix.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;
use rand::Rng;
use thiserror::Error;

use crate::network::{EdgeId, EdgeKind, PlanarNetwork, VertexId};
use crate::semiring::{PolyNat, Ring, Sample, Semiring, Starred};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("source set {sources} and sink set {sinks} differ in size")]
    SizeMismatch { sources: Subset, sinks: Subset },
    #[error("index {index} exceeds the {count} {side}")]
    IndexOutOfRange {
        index: usize,
        count: usize,
        side: &'static str,
    },
    #[error("weighting has {got} values, network has {expected} weight slots")]
    WeightingSize { got: usize, expected: usize },
}

/// A directed path from source `s_source` to sink `t_sink`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub sink: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// A set of pairwise vertex-disjoint paths from `{s_i : i ∈ sources}` onto
/// `{t_j : j ∈ sinks}`, listed by increasing source index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flow {
    pub paths: Vec<Path>,
    pub sources: Subset,
    pub sinks: Subset,
    slots: Vec<usize>,
}

impl Flow {
    fn new(net: &PlanarNetwork, mut paths: Vec<Path>) -> Self {
        paths.sort_by_key(|p| p.source);
        let sources = paths.iter().map(|p| p.source).collect();
        let sinks = paths.iter().map(|p| p.sink).collect();
        let mut slots: Vec<usize> = if net.is_split() {
            paths
                .iter()
                .flat_map(|p| p.edges.iter().filter_map(|&e| net.slot_of_edge(e)))
                .collect()
        } else {
            paths.iter().flat_map(|p| p.vertices.iter().copied()).collect()
        };
        slots.sort_unstable();
        Flow {
            paths,
            sources,
            sinks,
            slots,
        }
    }

    /// Rebuilds a flow from its edge set by walking forward from every source
    /// that has an outgoing edge in the set. `None` if the set is not a union
    /// of vertex-disjoint source-to-sink paths.
    pub fn from_edge_set(net: &PlanarNetwork, edges: &FixedBitSet) -> Option<Flow> {
        let sink_index: HashMap<VertexId, usize> =
            net.sinks().iter().enumerate().map(|(k, &t)| (t, k + 1)).collect();
        let mut used_edges = 0;
        let mut seen = FixedBitSet::with_capacity(net.num_vertices());
        let mut paths = Vec::new();
        for (k, &s) in net.sources().iter().enumerate() {
            let start: Vec<EdgeId> = net.out_edges(s).iter().copied().filter(|&e| edges.contains(e)).collect();
            if start.is_empty() {
                continue;
            }
            let mut vertices = vec![s];
            let mut path_edges = Vec::new();
            let mut v = s;
            loop {
                if seen.contains(v) {
                    return None;
                }
                seen.insert(v);
                let outs: Vec<EdgeId> = net.out_edges(v).iter().copied().filter(|&e| edges.contains(e)).collect();
                match outs.as_slice() {
                    [] => break,
                    [e] => {
                        path_edges.push(*e);
                        v = net.edge(*e).head;
                        vertices.push(v);
                    }
                    _ => return None,
                }
            }
            let sink = *sink_index.get(&v)?;
            used_edges += path_edges.len();
            paths.push(Path {
                source: k + 1,
                sink,
                vertices,
                edges: path_edges,
            });
        }
        if used_edges != edges.count_ones(..) {
            return None;
        }
        Some(Flow::new(net, paths))
    }

    /// The weight slots covered: vertices, or split-edges in a split network.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn edge_set(&self, num_edges: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(num_edges);
        for p in &self.paths {
            for &e in &p.edges {
                set.insert(e);
            }
        }
        set
    }

    pub fn vertex_set(&self, num_vertices: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(num_vertices);
        for p in &self.paths {
            for &v in &p.vertices {
                set.insert(v);
            }
        }
        set
    }

    /// Whether the `k`-th smallest source is joined to the `k`-th smallest sink.
    pub fn is_order_preserving(&self) -> bool {
        self.paths.iter().zip(self.sinks.iter()).all(|(p, t)| p.sink == t)
    }

    /// Sign of the source-to-sink permutation.
    pub fn sign(&self) -> i8 {
        let perm: Vec<usize> = self
            .paths
            .iter()
            .map(|p| self.sinks.rank(p.sink).expect("sink in set") - 1)
            .collect();
        permutation_sign(&perm)
    }

    /// `⊙` of the weights on the covered slots.
    pub fn weight<S: Semiring>(&self, w: &Weighting<S>) -> S {
        S::product(self.slots.iter().map(|&s| &w.values[s]))
    }

    /// Paths as vertex-name sequences joined by `->`, paths separated by `; `.
    pub fn render(&self, net: &PlanarNetwork) -> String {
        self.paths
            .iter()
            .map(|p| p.vertices.iter().map(|&v| net.name(v)).collect::<Vec<_>>().join("->"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

struct Search<'a> {
    net: &'a PlanarNetwork,
    reach: &'a [FixedBitSet],
    sources: Vec<(usize, VertexId)>,
    targets: Vec<(usize, VertexId)>,
    reserved: FixedBitSet,
    used: FixedBitSet,
    target_taken: Vec<bool>,
    current: Vec<Path>,
    out: Vec<Flow>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if k == self.sources.len() {
            self.out.push(Flow::new(self.net, self.current.clone()));
            return;
        }
        if !self.remaining_reachable(k) {
            return;
        }
        let (si, s) = self.sources[k];
        for t_idx in 0..self.targets.len() {
            if self.target_taken[t_idx] {
                continue;
            }
            let (tj, t) = self.targets[t_idx];
            if !self.reach[s].contains(t) {
                continue;
            }
            // a source that is also a requested sink can only carry the trivial path
            if s != t && self.targets.iter().any(|&(_, x)| x == s) {
                continue;
            }
            self.target_taken[t_idx] = true;
            let mut verts = vec![s];
            let mut edges = Vec::new();
            self.used.insert(s);
            self.extend(k, si, tj, t, &mut verts, &mut edges);
            self.used.set(s, false);
            self.target_taken[t_idx] = false;
        }
    }

    fn remaining_reachable(&self, k: usize) -> bool {
        self.sources[k..].iter().all(|&(_, s)| {
            !self.used.contains(s)
                && self
                    .targets
                    .iter()
                    .zip(&self.target_taken)
                    .any(|(&(_, t), &taken)| !taken && !self.used.contains(t) && self.reach[s].contains(t))
        })
    }

    fn extend(
        &mut self,
        k: usize,
        si: usize,
        tj: usize,
        t: VertexId,
        verts: &mut Vec<VertexId>,
        edges: &mut Vec<EdgeId>,
    ) {
        let v = *verts.last().unwrap();
        if v == t {
            self.current.push(Path {
                source: si,
                sink: tj,
                vertices: verts.clone(),
                edges: edges.clone(),
            });
            self.run(k + 1);
            self.current.pop();
            return;
        }
        for &e in self.net.out_edges(v) {
            let h = self.net.edge(e).head;
            if self.used.contains(h) || !self.reach[h].contains(t) {
                continue;
            }
            if h != t && self.reserved.contains(h) {
                continue;
            }
            self.used.insert(h);
            verts.push(h);
            edges.push(e);
            self.extend(k, si, tj, t, verts, edges);
            edges.pop();
            verts.pop();
            self.used.set(h, false);
        }
    }
}

fn check_indices(net: &PlanarNetwork, sources: Subset, sinks: Subset) -> Result<(), FlowError> {
    if let Some(m) = sources.max().filter(|&m| m > net.sources().len()) {
        return Err(FlowError::IndexOutOfRange {
            index: m,
            count: net.sources().len(),
            side: "sources",
        });
    }
    if let Some(m) = sinks.max().filter(|&m| m > net.sinks().len()) {
        return Err(FlowError::IndexOutOfRange {
            index: m,
            count: net.sinks().len(),
            side: "sinks",
        });
    }
    Ok(())
}

/// All `(I, J)`-flows: vertex-disjoint paths joining `S_I` onto `T_J` under
/// any bijection. Sorted by their per-path edge sequences.
pub fn enumerate_flows(net: &PlanarNetwork, sources: Subset, sinks: Subset) -> Result<Vec<Flow>, FlowError> {
    enumerate_with_reach(net, &net.reachability(), sources, sinks)
}

pub(crate) fn enumerate_with_reach(
    net: &PlanarNetwork,
    reach: &[FixedBitSet],
    sources: Subset,
    sinks: Subset,
) -> Result<Vec<Flow>, FlowError> {
    if sources.len() != sinks.len() {
        return Err(FlowError::SizeMismatch { sources, sinks });
    }
    check_indices(net, sources, sinks)?;
    let n = net.num_vertices();
    let src: Vec<_> = sources.iter().map(|i| (i, net.source(i))).collect();
    let tgt: Vec<_> = sinks.iter().map(|j| (j, net.sink(j))).collect();
    let mut reserved = FixedBitSet::with_capacity(n);
    for &(_, v) in src.iter().chain(&tgt) {
        reserved.insert(v);
    }
    let mut search = Search {
        net,
        reach,
        target_taken: vec![false; tgt.len()],
        sources: src,
        targets: tgt,
        reserved,
        used: FixedBitSet::with_capacity(n),
        current: Vec::new(),
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    out.sort_by(|a, b| {
        let ka = a.paths.iter().map(|p| &p.edges);
        let kb = b.paths.iter().map(|p| &p.edges);
        ka.cmp(kb)
    });
    Ok(out)
}

/// `Φ_I`: flows from `S_I` onto the first `|I|` sinks. Empty when there are
/// fewer than `|I|` sinks.
pub fn enumerate_flag_flows(net: &PlanarNetwork, sources: Subset) -> Result<Vec<Flow>, FlowError> {
    if sources.len() > net.sinks().len() {
        check_indices(net, sources, Subset::EMPTY)?;
        return Ok(Vec::new());
    }
    enumerate_flows(net, sources, Subset::full(sources.len()))
}

/// Values on the weight slots of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct Weighting<S> {
    pub values: Vec<S>,
}

impl<S: Clone> Weighting<S> {
    pub fn new(net: &PlanarNetwork, values: Vec<S>) -> Result<Self, FlowError> {
        if values.len() != net.num_weight_slots() {
            return Err(FlowError::WeightingSize {
                got: values.len(),
                expected: net.num_weight_slots(),
            });
        }
        Ok(Weighting { values })
    }

    pub fn constant(net: &PlanarNetwork, value: S) -> Self {
        Weighting {
            values: vec![value; net.num_weight_slots()],
        }
    }

    pub fn from_fn(net: &PlanarNetwork, f: impl FnMut(usize) -> S) -> Self {
        Weighting {
            values: (0..net.num_weight_slots()).map(f).collect(),
        }
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Weighting<T> {
        Weighting {
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<S: Sample> Weighting<S> {
    pub fn random<R: Rng + ?Sized>(net: &PlanarNetwork, rng: &mut R) -> Self {
        Self::from_fn(net, |_| S::sample(rng))
    }
}

impl Weighting<PolyNat> {
    /// One variable `w[<slot name>]` per weight slot.
    pub fn symbolic(net: &PlanarNetwork) -> Self {
        Self::from_fn(net, |s| PolyNat::var(&format!("w[{}]", net.slot_name(s))))
    }
}

/// Thread-safe cache of flag flows per source set.
#[derive(Debug)]
pub struct FlowCatalog {
    net: Arc<PlanarNetwork>,
    reach: Vec<FixedBitSet>,
    cache: Mutex<HashMap<Subset, Arc<Vec<Flow>>>>,
}

impl FlowCatalog {
    pub fn new(net: Arc<PlanarNetwork>) -> Self {
        let reach = net.reachability();
        FlowCatalog {
            net,
            reach,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn network(&self) -> &Arc<PlanarNetwork> {
        &self.net
    }

    pub fn flag_flows(&self, sources: Subset) -> Result<Arc<Vec<Flow>>, FlowError> {
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&sources) {
            return Ok(Arc::clone(hit));
        }
        let flows = if sources.len() > self.net.sinks().len() {
            check_indices(&self.net, sources, Subset::EMPTY)?;
            Vec::new()
        } else {
            enumerate_with_reach(&self.net, &self.reach, sources, Subset::full(sources.len()))?
        };
        let flows = Arc::new(flows);
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(sources, Arc::clone(&flows));
        Ok(flows)
    }
}

/// `f(I) = ⊕_{φ ∈ Φ_I} w(φ)` for a fixed weighting, memoized per `I`.
///
/// `f(I)` is `None` when `Φ_I` is empty; `f(∅)` is `1̲` (the empty flow).
pub struct FlowFunction<'a, S> {
    catalog: &'a FlowCatalog,
    weighting: Weighting<S>,
    memo: Mutex<HashMap<Subset, Option<S>>>,
}

impl<'a, S: Semiring> FlowFunction<'a, S> {
    pub fn new(catalog: &'a FlowCatalog, weighting: Weighting<S>) -> Result<Self, FlowError> {
        let expected = catalog.network().num_weight_slots();
        if weighting.values.len() != expected {
            return Err(FlowError::WeightingSize {
                got: weighting.values.len(),
                expected,
            });
        }
        Ok(FlowFunction {
            catalog,
            weighting,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn weighting(&self) -> &Weighting<S> {
        &self.weighting
    }

    pub fn network(&self) -> &PlanarNetwork {
        self.catalog.network()
    }

    pub fn eval(&self, sources: Subset) -> Result<Option<S>, FlowError> {
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&sources) {
            return Ok(hit.clone());
        }
        let flows = self.catalog.flag_flows(sources)?;
        let weights: Vec<S> = flows.iter().map(|f| f.weight(&self.weighting)).collect();
        let value = S::sum(&weights);
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(sources, value.clone());
        Ok(value)
    }

    /// `f(I)` with `∗` for an empty `Φ_I`.
    pub fn eval_starred(&self, sources: Subset) -> Result<Starred<S>, FlowError> {
        Ok(Starred(self.eval(sources)?))
    }
}

/// One-shot evaluation of `f(I)` without a catalog.
pub fn evaluate_fgf<S: Semiring>(net: &PlanarNetwork, w: &Weighting<S>, sources: Subset) -> Result<Option<S>, FlowError> {
    let flows = enumerate_flag_flows(net, sources)?;
    let weights: Vec<S> = flows.iter().map(|f| f.weight(w)).collect();
    Ok(S::sum(&weights))
}

/// `⊕` of flow weights over all `(I, J)`-flows, each multiplied by the sign
/// of its permutation (ring carriers only).
pub fn signed_flow_sum<R: Ring>(net: &PlanarNetwork, w: &Weighting<R>, sources: Subset, sinks: Subset) -> Result<R, FlowError> {
    let mut acc = R::zero_elem();
    for f in enumerate_flows(net, sources, sinks)? {
        let x = f.weight(w);
        acc = if f.sign() < 0 { acc.sub(&x) } else { acc.add(&x) };
    }
    Ok(acc)
}

/// A dense matrix, rows then columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    pub rows: Vec<Vec<R>>,
}

impl<R: Clone> Matrix<R> {
    pub fn get(&self, row: usize, col: usize) -> &R {
        &self.rows[row][col]
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// The path matrix: row `j`, column `i` holds the weighted number of paths
/// from `s_i` to `t_j` (0-based storage, so entry `m_{ji}` is `rows[j-1][i-1]`).
pub fn lindstrom_matrix<R: Ring>(net: &PlanarNetwork, w: &Weighting<R>) -> Result<Matrix<R>, FlowError> {
    if w.values.len() != net.num_weight_slots() {
        return Err(FlowError::WeightingSize {
            got: w.values.len(),
            expected: net.num_weight_slots(),
        });
    }
    let split = net.is_split();
    let vw = |v: VertexId| if split { R::one() } else { w.values[v].clone() };
    let ew = |e: EdgeId| match net.edge(e).kind {
        EdgeKind::Split => net.slot_of_edge(e).map_or_else(R::one, |s| w.values[s].clone()),
        _ => R::one(),
    };
    let mut rows = vec![vec![R::zero_elem(); net.sources().len()]; net.sinks().len()];
    for (i, &s) in net.sources().iter().enumerate() {
        let mut val = vec![R::zero_elem(); net.num_vertices()];
        for &v in net.topological_order() {
            let mut acc = if v == s { R::one() } else { R::zero_elem() };
            for &e in net.in_edges(v) {
                acc = acc.add(&ew(e).mul(&val[net.edge(e).tail]));
            }
            val[v] = vw(v).mul(&acc);
        }
        for (j, &t) in net.sinks().iter().enumerate() {
            rows[j][i] = val[t].clone();
        }
    }
    Ok(Matrix { rows })
}

/// Determinant of the submatrix with column set `I` and row set `J`, by the
/// signed Leibniz expansion. The empty minor is `1`.
pub fn minor<R: Ring>(m: &Matrix<R>, cols: Subset, rows: Subset) -> Result<R, FlowError> {
    if cols.len() != rows.len() {
        return Err(FlowError::SizeMismatch {
            sources: cols,
            sinks: rows,
        });
    }
    for (set, count, side) in [(cols, m.num_cols(), "columns"), (rows, m.num_rows(), "rows")] {
        if let Some(x) = set.max().filter(|&x| x > count) {
            return Err(FlowError::IndexOutOfRange { index: x, count, side });
        }
    }
    let r: Vec<usize> = rows.iter().map(|j| j - 1).collect();
    let c: Vec<usize> = cols.iter().map(|i| i - 1).collect();
    let k = r.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut acc = R::zero_elem();
    // Heap's algorithm; each step is a transposition, flipping the sign
    let mut sign = 1i8;
    let mut counters = vec![0usize; k];
    let term = |perm: &[usize]| R::product(perm.iter().enumerate().map(|(a, &b)| m.get(r[a], c[b])));
    acc = acc.add(&term(&perm));
    let mut idx = 1;
    while idx < k {
        if counters[idx] < idx {
            if idx % 2 == 0 {
                perm.swap(0, idx);
            } else {
                perm.swap(counters[idx], idx);
            }
            sign = -sign;
            let t = term(&perm);
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            counters[idx] += 1;
            idx = 1;
        } else {
            counters[idx] = 0;
            idx += 1;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_half_grid, grid_vertex};
    use crate::semiring::{CountingNat, ExactInt};

    fn names(net: &PlanarNetwork, f: &Flow) -> String {
        f.render(net)
    }

    #[test]
    fn gamma3_flag_flows() {
        let g = build_half_grid(3).unwrap();
        let f1 = enumerate_flag_flows(&g, Subset::of(&[1])).unwrap();
        assert_eq!(f1.len(), 1);
        assert_eq!(names(&g, &f1[0]), "1,1");
        let f23 = enumerate_flag_flows(&g, Subset::of(&[2, 3])).unwrap();
        assert_eq!(f23.len(), 1);
        assert_eq!(names(&g, &f23[0]), "2,1->1,1; 3,1->3,2->2,2");
        let f13 = enumerate_flag_flows(&g, Subset::of(&[1, 3])).unwrap();
        assert_eq!(f13.len(), 2);
        let rendered: Vec<_> = f13.iter().map(|f| names(&g, f)).collect();
        assert!(rendered.contains(&"1,1; 3,1->3,2->2,2".to_string()));
        assert!(rendered.contains(&"1,1; 3,1->2,1->2,2".to_string()));
    }

    #[test]
    fn general_flows() {
        let g = build_half_grid(3).unwrap();
        let f = enumerate_flows(&g, Subset::of(&[3]), Subset::of(&[1])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(names(&g, &f[0]), "3,1->2,1->1,1");
        assert!(enumerate_flows(&g, Subset::of(&[1]), Subset::of(&[2])).unwrap().is_empty());
        let empty = enumerate_flows(&g, Subset::EMPTY, Subset::EMPTY).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].paths.is_empty());
        assert!(matches!(
            enumerate_flows(&g, Subset::of(&[1, 2]), Subset::of(&[1])),
            Err(FlowError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn counting_and_symbolic_values() {
        let g = build_half_grid(3).unwrap();
        let ones = Weighting::constant(&g, CountingNat::from(1u32));
        assert_eq!(
            evaluate_fgf(&g, &ones, Subset::of(&[1, 3])).unwrap(),
            Some(CountingNat::from(2u32))
        );
        let mut values = vec![PolyNat::zero_poly(); 6];
        let wanted = [(1, 1, "a"), (2, 1, "b"), (3, 1, "c"), (2, 2, "d"), (3, 2, "e"), (3, 3, "g")];
        for (i, j, name) in wanted {
            values[grid_vertex(i, j)] = PolyNat::var(name);
        }
        let w = Weighting::new(&g, values).unwrap();
        let v = evaluate_fgf(&g, &w, Subset::of(&[1, 2])).unwrap().unwrap();
        assert_eq!(v, "a·b·d".parse().unwrap());
    }

    #[test]
    fn empty_flag_flow_set_gives_star() {
        let text = "vertex a\nvertex b\nvertex c\nedge a c\nsources a b\nsinks c b\n";
        let g = Arc::new(PlanarNetwork::from_text(text).unwrap());
        let cat = FlowCatalog::new(g.clone());
        let f = FlowFunction::new(&cat, Weighting::constant(&g, CountingNat::from(1u32))).unwrap();
        assert!(f.eval_starred(Subset::of(&[2])).unwrap().is_star());
        assert_eq!(f.eval(Subset::EMPTY).unwrap(), Some(CountingNat::from(1u32)));
    }

    #[test]
    fn gamma2_lindstrom() {
        let g = build_half_grid(2).unwrap();
        let (a, b, d) = (ExactInt::from(2), ExactInt::from(3), ExactInt::from(5));
        let mut values = vec![ExactInt::from(0); 3];
        values[grid_vertex(1, 1)] = a.clone();
        values[grid_vertex(2, 1)] = b.clone();
        values[grid_vertex(2, 2)] = d.clone();
        let w = Weighting::new(&g, values).unwrap();
        let m = lindstrom_matrix(&g, &w).unwrap();
        assert_eq!(m.get(0, 0), &a);
        assert_eq!(m.get(0, 1), &(&a * &b));
        assert_eq!(m.get(1, 0), &ExactInt::from(0));
        assert_eq!(m.get(1, 1), &(&b * &d));
        let full = Subset::of(&[1, 2]);
        assert_eq!(minor(&m, full, full).unwrap(), &a * &b * &d);
        assert_eq!(minor(&m, Subset::EMPTY, Subset::EMPTY).unwrap(), ExactInt::from(1));
    }

    #[test]
    fn identity_minor() {
        let m = Matrix {
            rows: (0..4)
                .map(|r| (0..4).map(|c| ExactInt::from((r == c) as i32)).collect())
                .collect(),
        };
        for s in Subset::full(4).subsets() {
            assert_eq!(minor(&m, s, s).unwrap(), ExactInt::from(1));
        }
        let m3 = Matrix {
            rows: vec![
                vec![ExactInt::from(2), ExactInt::from(0), ExactInt::from(1)],
                vec![ExactInt::from(1), ExactInt::from(3), ExactInt::from(2)],
                vec![ExactInt::from(1), ExactInt::from(1), ExactInt::from(2)],
            ],
        };
        let full = Subset::full(3);
        assert_eq!(minor(&m3, full, full).unwrap(), ExactInt::from(6));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
