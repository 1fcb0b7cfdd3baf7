//! The f-blowup gadget graph whose perfect matchings are the f-factors of
//! its host.
//!
//! Every host vertex `v` contributes a block `A(v)` of `f(v)` core vertices;
//! every host edge `e = {v, w}` contributes a gadget pair `(v_e, w_e)` with
//! `v_e` adjacent to all of `A(v)`, `w_e` adjacent to all of `A(w)`, and the
//! two joined to each other. Global numbering places all core blocks first
//! (in vertex order) and then the gadget pairs (in edge order, smaller
//! endpoint first). Blowups never materialize their edge lists; neighbors are
//! derived from the numbering on demand.

use std::ops::Range;

use thiserror::Error;

use crate::graph::{DegreeSpec, EdgeId, Graph, VertexId};
use crate::matching::MatchingGraph;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("demand {demand} at vertex {vertex} exceeds its degree {degree}")]
    InfeasibleDemand {
        vertex: VertexId,
        demand: usize,
        degree: usize,
    },
}

/// A host graph with per-vertex demands and a mask of live edges.
///
/// Deleting an edge keeps every other edge id intact, so subinstances such as
/// `G - e` with adjusted demands share the host's numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceView<'g> {
    graph: &'g Graph,
    demand: Vec<usize>,
    live: Vec<bool>,
}

impl<'g> InstanceView<'g> {
    pub fn new(graph: &'g Graph, f: &DegreeSpec) -> Self {
        InstanceView {
            graph,
            demand: f.as_slice().to_vec(),
            live: vec![true; graph.edge_count()],
        }
    }

    pub fn from_parts(graph: &'g Graph, demand: Vec<usize>, live: Vec<bool>) -> Self {
        assert_eq!(demand.len(), graph.vertex_count());
        assert_eq!(live.len(), graph.edge_count());
        InstanceView {
            graph,
            demand,
            live,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn demand(&self) -> &[usize] {
        &self.demand
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        self.live[e]
    }

    pub fn live_mask(&self) -> &[bool] {
        &self.live
    }

    pub fn live_degree(&self, v: VertexId) -> usize {
        self.graph
            .incident(v)
            .iter()
            .filter(|&&(_, e)| self.live[e])
            .count()
    }

    /// `G - e` with both endpoint demands lowered by one, or `None` when an
    /// endpoint has no demand left to give.
    pub fn force_edge(&self, e: EdgeId) -> Option<InstanceView<'g>> {
        let (u, v) = self.graph.edge(e);
        if !self.live[e] || self.demand[u] == 0 || self.demand[v] == 0 {
            return None;
        }
        let mut next = self.clone();
        next.live[e] = false;
        next.demand[u] -= 1;
        next.demand[v] -= 1;
        Some(next)
    }
}

/// What a blowup vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupRole {
    /// The `copy`-th member of `A(vertex)`.
    Core { vertex: VertexId, copy: usize },
    /// The gadget vertex of host edge `edge` on the side of host vertex `end`.
    Gadget { edge: EdgeId, end: VertexId },
}

/// An (optionally induced) f-blowup with compact local vertex ids.
#[derive(Debug, Clone)]
pub struct BlowupGraph<'g> {
    host: &'g Graph,
    demand: Vec<usize>,
    core_offset: Vec<usize>,
    kept_vertex: Vec<bool>,
    gadget_edge: Vec<bool>,
    local: Vec<usize>,
    global: Vec<usize>,
}

impl<'g> BlowupGraph<'g> {
    /// Blowup of a view. Demands above the live degree are allowed here; such
    /// blowups simply have no perfect matching.
    pub fn of_view(view: &InstanceView<'g>) -> Self {
        let n = view.graph().vertex_count();
        Self::assemble(
            view.graph(),
            view.demand().to_vec(),
            vec![true; n],
            view.live_mask().to_vec(),
        )
    }

    fn assemble(
        host: &'g Graph,
        demand: Vec<usize>,
        kept_vertex: Vec<bool>,
        live: Vec<bool>,
    ) -> Self {
        let n = host.vertex_count();
        let mut core_offset = Vec::with_capacity(n + 1);
        let mut acc = 0;
        core_offset.push(0);
        for &d in &demand {
            acc += d;
            core_offset.push(acc);
        }
        let gadget_edge: Vec<bool> = host
            .edges()
            .iter()
            .zip(&live)
            .map(|(&(u, v), &l)| l && kept_vertex[u] && kept_vertex[v])
            .collect();
        let total = acc + 2 * host.edge_count();
        let mut local = vec![ABSENT; total];
        let mut global = Vec::new();
        for v in 0..n {
            if kept_vertex[v] {
                for (g, slot) in local
                    .iter_mut()
                    .enumerate()
                    .take(core_offset[v + 1])
                    .skip(core_offset[v])
                {
                    *slot = global.len();
                    global.push(g);
                }
            }
        }
        for (e, &present) in gadget_edge.iter().enumerate() {
            if present {
                for g in [acc + 2 * e, acc + 2 * e + 1] {
                    local[g] = global.len();
                    global.push(g);
                }
            }
        }
        BlowupGraph {
            host,
            demand,
            core_offset,
            kept_vertex,
            gadget_edge,
            local,
            global,
        }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn demand(&self) -> &[usize] {
        &self.demand
    }

    pub fn vertex_count(&self) -> usize {
        self.global.len()
    }

    fn core_total(&self) -> usize {
        self.core_offset[self.host.vertex_count()]
    }

    /// Global id (in the full numbering of this host and demand) of a local
    /// vertex. Induced blowups share global ids with their parent.
    pub fn global_id(&self, local: usize) -> usize {
        self.global[local]
    }

    pub fn local_id(&self, global: usize) -> Option<usize> {
        match self.local.get(global) {
            Some(&l) if l != ABSENT => Some(l),
            _ => None,
        }
    }

    pub fn role(&self, local: usize) -> BlowupRole {
        let g = self.global[local];
        let cores = self.core_total();
        if g < cores {
            let vertex = self.core_offset.partition_point(|&o| o <= g) - 1;
            BlowupRole::Core {
                vertex,
                copy: g - self.core_offset[vertex],
            }
        } else {
            let edge = (g - cores) / 2;
            let (u, v) = self.host.edge(edge);
            let end = if (g - cores).is_multiple_of(2) { u } else { v };
            BlowupRole::Gadget { edge, end }
        }
    }

    /// Local ids of `A(v)`, empty when `v` is not kept.
    pub fn core_block(&self, v: VertexId) -> Range<usize> {
        if !self.kept_vertex[v] || self.demand[v] == 0 {
            return 0..0;
        }
        let first = self.local[self.core_offset[v]];
        first..first + self.demand[v]
    }

    /// Local ids `(v_e, w_e)` of the gadget pair of host edge `e`, with `v_e`
    /// on the side of the smaller endpoint.
    pub fn gadget_pair(&self, e: EdgeId) -> Option<(usize, usize)> {
        if !self.gadget_edge[e] {
            return None;
        }
        let g = self.core_total() + 2 * e;
        Some((self.local[g], self.local[g + 1]))
    }

    pub fn has_gadget(&self, e: EdgeId) -> bool {
        self.gadget_edge[e]
    }

    /// Gadget vertex of edge `e` on the side of `end`.
    pub fn gadget_at(&self, e: EdgeId, end: VertexId) -> Option<usize> {
        let (a, b) = self.gadget_pair(e)?;
        Some(if self.host.edge(e).0 == end { a } else { b })
    }

    /// Blowup induced by the host vertex set `members`: gadget pairs of edges
    /// leaving the set are deleted and only `A(v)` for members survive.
    pub fn induced(&self, members: &[bool]) -> BlowupGraph<'g> {
        let kept: Vec<bool> = self
            .kept_vertex
            .iter()
            .zip(members)
            .map(|(&a, &b)| a && b)
            .collect();
        let live = self.gadget_edge.clone();
        Self::assemble(self.host, self.demand.clone(), kept, live)
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for (e, &present) in self.gadget_edge.iter().enumerate() {
            if present {
                let (u, v) = self.host.edge(e);
                count += 1 + self.demand[u] + self.demand[v];
            }
        }
        count
    }

    /// Explicit local edge list `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        let mut buf = Vec::new();
        for x in 0..self.vertex_count() {
            self.neighbors_into(x, &mut buf);
            out.extend(buf.iter().filter(|&&y| x < y).map(|&y| (x, y)));
        }
        out.sort_unstable();
        out
    }
}

impl MatchingGraph for BlowupGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.global.len()
    }

    fn neighbors_into(&self, x: usize, out: &mut Vec<usize>) {
        out.clear();
        match self.role(x) {
            BlowupRole::Core { vertex, .. } => {
                for &(_, e) in self.host.incident(vertex) {
                    if let Some(g) = self.gadget_at(e, vertex) {
                        out.push(g);
                    }
                }
            }
            BlowupRole::Gadget { edge, end } => {
                out.extend(self.core_block(end));
                let (a, b) = self.gadget_pair(edge).expect("gadget of a present edge");
                out.push(if a == x { b } else { a });
            }
        }
    }
}

/// The f-blowup of `g`. Rejects demands above a vertex degree, since such
/// instances have no f-factor.
pub fn build_blowup<'g>(g: &'g Graph, f: &DegreeSpec) -> Result<BlowupGraph<'g>, BlowupError> {
    if let Some(vertex) = (0..g.vertex_count()).find(|&v| f.get(v) > g.degree(v)) {
        return Err(BlowupError::InfeasibleDemand {
            vertex,
            demand: f.get(vertex),
            degree: g.degree(vertex),
        });
    }
    Ok(BlowupGraph::of_view(&InstanceView::new(g, f)))
}

/// The blowup induced by a host vertex set given as a list of vertices.
pub fn induced_blowup<'g>(b: &BlowupGraph<'g>, members: &[VertexId]) -> BlowupGraph<'g> {
    let mut mask = vec![false; b.host().vertex_count()];
    for &v in members {
        mask[v] = true;
    }
    b.induced(&mask)
}
