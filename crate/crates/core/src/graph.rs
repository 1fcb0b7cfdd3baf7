//! Graphs, degree demands, vertex partitions and factor subgraphs.
//!
//! Everything here is immutable after construction except [`FactorSubgraph`],
//! which is a single-owner edge set over a borrowed host graph. Vertex ids are
//! dense `0..n` and edge ids are dense `0..m`, ordered lexicographically by
//! their `(u, v)` endpoints with `u < v`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("demand vector has {got} entries, graph has {n} vertices")]
    DemandLength { got: usize, n: usize },
    #[error("demand {demand} at vertex {vertex} exceeds n-1 = {max}")]
    DemandTooLarge {
        vertex: VertexId,
        demand: usize,
        max: usize,
    },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("edge {0} does not exist in the host graph")]
    UnknownEdge(EdgeId),
    #[error("({0}, {1}) is not an edge of the host graph")]
    NotAnEdge(VertexId, VertexId),
}

/// Undirected simple graph with a canonical edge order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Endpoints are normalized
    /// to `u < v` and edges are renumbered in lexicographic order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            incidence[u].push((v, id));
            incidence[v].push((u, id));
        }
        Ok(Graph {
            n,
            edges: list,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Incident `(neighbor, edge id)` pairs of `v`, in edge-id order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// The demanded degree `f(v)` of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpec {
    demand: Vec<usize>,
    total: usize,
}

impl DegreeSpec {
    pub fn new(n: usize, demand: Vec<usize>) -> Result<Self, GraphError> {
        if demand.len() != n {
            return Err(GraphError::DemandLength {
                got: demand.len(),
                n,
            });
        }
        let max = n.saturating_sub(1);
        if let Some((vertex, &d)) = demand.iter().enumerate().find(|(_, &d)| d > max) {
            return Err(GraphError::DemandTooLarge {
                vertex,
                demand: d,
                max,
            });
        }
        let total = demand.iter().sum();
        Ok(DegreeSpec { demand, total })
    }

    pub fn uniform(n: usize, value: usize) -> Result<Self, GraphError> {
        Self::new(n, vec![value; n])
    }

    pub fn get(&self, v: VertexId) -> usize {
        self.demand[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.demand
    }

    pub fn len(&self) -> usize {
        self.demand.len()
    }

    pub fn is_empty(&self) -> bool {
        self.demand.is_empty()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Parity of the total demand; an odd total rules out any f-factor.
    pub fn is_odd(&self) -> bool {
        self.total % 2 == 1
    }

    pub fn min(&self) -> Option<usize> {
        self.demand.iter().copied().min()
    }
}

/// A partition of the vertex set into nonempty parts.
///
/// Parts are kept sorted internally and ordered by their minimum vertex, so
/// part 0 always holds vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<Vec<VertexId>>,
    part_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        let mut part_of = vec![usize::MAX; n];
        let mut parts: Vec<Vec<VertexId>> = parts;
        for part in parts.iter_mut() {
            if part.is_empty() {
                return Err(GraphError::InvalidPartition("empty part".into()));
            }
            part.sort_unstable();
        }
        parts.sort_by_key(|p| p[0]);
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} appears in more than one part"
                    )));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Partition { parts, part_of })
    }

    /// Builds a partition from a per-vertex label; equal labels share a part.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut parts: Vec<Vec<VertexId>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let i = *index.entry(l).or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[i].push(v);
        }
        // labels were scanned in vertex order, so parts are already sorted by minimum
        let mut part_of = vec![0; labels.len()];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        Partition { parts, part_of }
    }

    /// The single-part partition `{V}`.
    pub fn whole(n: usize) -> Self {
        Partition::from_labels(&vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[VertexId] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: VertexId) -> usize {
        self.part_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.part_of
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Every part of `self` lies inside some part of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        self.vertex_count() == coarser.vertex_count()
            && self.parts.iter().all(|p| {
                let host = coarser.part_of(p[0]);
                p.iter().all(|&v| coarser.part_of(v) == host)
            })
    }

    /// Merges parts `a` and `b`, re-normalizing the part order.
    pub fn merge(&self, a: usize, b: usize) -> Partition {
        let labels: Vec<usize> = self
            .part_of
            .iter()
            .map(|&p| if p == b { a } else { p })
            .collect();
        Partition::from_labels(&labels)
    }

    /// Membership mask of the union of the parts selected by `selected`.
    pub fn union_mask(&self, selected: impl Fn(usize) -> bool) -> Vec<bool> {
        self.part_of.iter().map(|&p| selected(p)).collect()
    }
}

/// An edge subset of a host graph, with cached degrees.
#[derive(Clone)]
pub struct FactorSubgraph<'g> {
    host: &'g Graph,
    member: Vec<bool>,
    degree: Vec<usize>,
    size: usize,
}

impl<'g> FactorSubgraph<'g> {
    pub fn empty(host: &'g Graph) -> Self {
        FactorSubgraph {
            host,
            member: vec![false; host.edge_count()],
            degree: vec![0; host.vertex_count()],
            size: 0,
        }
    }

    pub fn from_edges<I>(host: &'g Graph, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut h = Self::empty(host);
        for e in edges {
            if e >= host.edge_count() {
                return Err(GraphError::UnknownEdge(e));
            }
            h.insert(e);
        }
        Ok(h)
    }

    /// Builds a subgraph from endpoint pairs, failing on non-edges.
    pub fn from_pairs<I>(host: &'g Graph, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut h = Self::empty(host);
        for (a, b) in pairs {
            let e = host.edge_id(a, b).ok_or(GraphError::NotAnEdge(a, b))?;
            h.insert(e);
        }
        Ok(h)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.member[e]
    }

    /// Adds `e`; returns false if it was already present.
    pub fn insert(&mut self, e: EdgeId) -> bool {
        if self.member[e] {
            return false;
        }
        let (u, v) = self.host.edge(e);
        self.member[e] = true;
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.size += 1;
        true
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        if !self.member[e] {
            return false;
        }
        let (u, v) = self.host.edge(e);
        self.member[e] = false;
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.size -= 1;
        true
    }

    /// Flips the membership of `e`.
    pub fn toggle(&mut self, e: EdgeId) {
        if !self.remove(e) {
            self.insert(e);
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(e, &m)| m.then_some(e))
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edge_ids().map(|e| self.host.edge(e))
    }

    pub fn membership(&self) -> &[bool] {
        &self.member
    }

    /// `|N_H(v) ∩ part|` where the part is given by `partition.part_of(v)`.
    pub fn neighbors_in_own_part(&self, v: VertexId, partition: &Partition) -> usize {
        let p = partition.part_of(v);
        self.host
            .incident(v)
            .iter()
            .filter(|&&(w, e)| self.member[e] && partition.part_of(w) == p)
            .count()
    }

    /// Recomputes the degree cache from scratch; used by invariant checks.
    pub fn recount_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.host.vertex_count()];
        for (u, v) in self.edge_pairs() {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }
}

impl PartialEq for FactorSubgraph<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.member == other.member
    }
}

impl Eq for FactorSubgraph<'_> {}

impl fmt::Debug for FactorSubgraph<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edge_pairs()).finish()
    }
}

/// One crossing edge of a quotient multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientEdge {
    pub a: usize,
    pub b: usize,
    pub origin: EdgeId,
}

/// The loopless multigraph `G/Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    part_count: usize,
    edges: Vec<QuotientEdge>,
}

impl QuotientGraph {
    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub fn edges(&self) -> &[QuotientEdge] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.part_count);
        let mut joined = 1;
        for e in &self.edges {
            if uf.union(e.a, e.b) {
                joined += 1;
            }
        }
        self.part_count <= 1 || joined == self.part_count
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Connected components of `h` as a partition of the host vertex set.
pub fn components(h: &FactorSubgraph<'_>) -> Partition {
    let n = h.host().vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in h.edge_pairs() {
        uf.union(u, v);
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    Partition::from_labels(&labels)
}

pub fn quotient(g: &Graph, q: &Partition) -> Result<QuotientGraph, GraphError> {
    if q.vertex_count() != g.vertex_count() {
        return Err(GraphError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            q.vertex_count(),
            g.vertex_count()
        )));
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(origin, &(u, v))| {
            let (a, b) = (q.part_of(u), q.part_of(v));
            (a != b).then_some(QuotientEdge { a, b, origin })
        })
        .collect();
    Ok(QuotientGraph {
        part_count: q.len(),
        edges,
    })
}

/// Does `h / q` form a connected multigraph?
pub fn connects(h: &FactorSubgraph<'_>, q: &Partition) -> bool {
    let mut uf = UnionFind::new(q.len());
    let mut joined = 1;
    for (u, v) in h.edge_pairs() {
        if uf.union(q.part_of(u), q.part_of(v)) {
            joined += 1;
        }
    }
    q.len() <= 1 || joined == q.len()
}

/// Result of splitting every part of a partition into the components that
/// `h` induces inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub partition: Partition,
    pub unchanged: bool,
}

pub fn refine_by_components(h: &FactorSubgraph<'_>, q: &Partition) -> Refinement {
    let n = h.host().vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in h.edge_pairs() {
        if q.part_of(u) == q.part_of(v) {
            uf.union(u, v);
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let partition = Partition::from_labels(&labels);
    let unchanged = partition.len() == q.len();
    Refinement {
        partition,
        unchanged,
    }
}

/// Diagnostic report produced by [`verify_f_factor`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FactorReport {
    pub degrees_match: bool,
    pub is_connected: bool,
    pub connects_partition: Option<bool>,
    /// Vertices whose degree differs from the demand.
    pub mismatched: Vec<VertexId>,
}

impl FactorReport {
    /// Degree check plus connectivity, or plus partition connectivity when a
    /// partition was supplied.
    pub fn is_valid_connected(&self) -> bool {
        self.degrees_match && self.is_connected
    }

    pub fn is_valid_connector(&self) -> bool {
        self.degrees_match && self.connects_partition.unwrap_or(self.is_connected)
    }
}

pub fn verify_f_factor(
    g: &Graph,
    f: &DegreeSpec,
    h: &FactorSubgraph<'_>,
    q: Option<&Partition>,
) -> FactorReport {
    debug_assert!(std::ptr::eq(g, h.host()) || g == h.host());
    let actual = h.recount_degrees();
    let mismatched: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&v| actual[v] != f.get(v))
        .collect();
    FactorReport {
        degrees_match: mismatched.is_empty(),
        is_connected: components(h).len() <= 1,
        connects_partition: q.map(|q| connects(h, q)),
        mismatched,
    }
}

/// Breadth-first order of parts reachable from part 0 using the given
/// quotient edges, returning the chosen tree edges (host ids) in discovery
/// order. Multi-edges are scanned in canonical (host id) order.
pub(crate) fn bfs_quotient_tree(part_count: usize, edges: &[QuotientEdge]) -> Option<Vec<EdgeId>> {
    let mut adjacency: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); part_count];
    for e in edges {
        adjacency[e.a].push((e.b, e.origin));
        adjacency[e.b].push((e.a, e.origin));
    }
    for list in adjacency.iter_mut() {
        list.sort_by_key(|&(_, origin)| origin);
    }
    let mut seen = vec![false; part_count];
    let mut tree = Vec::with_capacity(part_count.saturating_sub(1));
    let mut queue = VecDeque::new();
    if part_count > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(p) = queue.pop_front() {
        for &(r, origin) in &adjacency[p] {
            if !seen[r] {
                seen[r] = true;
                tree.push(origin);
                queue.push_back(r);
            }
        }
    }
    (tree.len() + 1 >= part_count).then_some(tree)
}
