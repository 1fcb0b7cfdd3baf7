//! f-factors through perfect matchings of the f-blowup.
//!
//! Before the blossom search runs, a degree-bounded subgraph is grown
//! greedily (optionally seeded from a hint) and then translated into a
//! blowup matching, so the search only has to repair the remaining deficit.

use crate::blowup::{BlowupGraph, InstanceView};
use crate::graph::{verify_f_factor, DegreeSpec, EdgeId, FactorSubgraph, Graph, VertexId};
use crate::matching::{complete_to_perfect, Matching};

/// An f-factor of `g`, or `None` if there is none.
pub fn find_f_factor<'g>(g: &'g Graph, f: &DegreeSpec) -> Option<FactorSubgraph<'g>> {
    find_f_factor_containing(g, f, &[])
}

/// An f-factor of `g` containing every edge of `forced`.
pub fn find_f_factor_containing<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    forced: &[EdgeId],
) -> Option<FactorSubgraph<'g>> {
    find_f_factor_hinted(g, f, forced, None)
}

/// Like [`find_f_factor_containing`], warm-started from a subgraph that is
/// expected to be close to a solution (typically a previous f-factor).
pub fn find_f_factor_hinted<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    forced: &[EdgeId],
    hint: Option<&FactorSubgraph<'_>>,
) -> Option<FactorSubgraph<'g>> {
    let mut view = InstanceView::new(g, f);
    let mut seen = vec![false; g.edge_count()];
    for &e in forced {
        if seen[e] {
            continue;
        }
        seen[e] = true;
        view = view.force_edge(e)?;
    }
    let rest = solve_view(&view, hint.map(|h| h.membership()))?;
    let h = FactorSubgraph::from_edges(g, rest.into_iter().chain(forced.iter().copied()))
        .expect("edge ids come from the host");
    assert!(
        verify_f_factor(g, f, &h, None).degrees_match,
        "decoded subgraph misses its demands"
    );
    Some(h)
}

/// Live edges forming a subgraph with degree exactly `view.demand()`.
pub fn solve_view(view: &InstanceView<'_>, hint: Option<&[bool]>) -> Option<Vec<EdgeId>> {
    let g = view.graph();
    let n = g.vertex_count();
    let demand = view.demand();
    if demand.iter().sum::<usize>() % 2 == 1 {
        return None;
    }
    if (0..n).any(|v| demand[v] > view.live_degree(v)) {
        return None;
    }

    let mut warm = WarmStart::new(view);
    if let Some(hint) = hint {
        warm.seed(hint);
    }
    warm.greedy();
    warm.improve();

    let blowup = BlowupGraph::of_view(view);
    let initial = warm.into_matching(&blowup);
    let matching = complete_to_perfect(&blowup, initial)?;
    Some(decode(&blowup, view, &matching))
}

/// Host edges whose gadget pair is not matched internally.
fn decode(b: &BlowupGraph<'_>, view: &InstanceView<'_>, m: &Matching) -> Vec<EdgeId> {
    (0..view.graph().edge_count())
        .filter(|&e| match b.gadget_pair(e) {
            Some((x, y)) => m.partner(x) != Some(y),
            None => false,
        })
        .collect()
}

struct WarmStart<'a, 'g> {
    view: &'a InstanceView<'g>,
    chosen: Vec<bool>,
    degree: Vec<usize>,
}

impl<'a, 'g> WarmStart<'a, 'g> {
    fn new(view: &'a InstanceView<'g>) -> Self {
        WarmStart {
            view,
            chosen: vec![false; view.graph().edge_count()],
            degree: vec![0; view.graph().vertex_count()],
        }
    }

    fn deficit(&self, v: VertexId) -> usize {
        self.view.demand()[v] - self.degree[v]
    }

    fn try_add(&mut self, e: EdgeId) -> bool {
        let (u, v) = self.view.graph().edge(e);
        if self.chosen[e] || !self.view.is_live(e) || self.deficit(u) == 0 || self.deficit(v) == 0 {
            return false;
        }
        self.set(e, true);
        true
    }

    fn set(&mut self, e: EdgeId, on: bool) {
        let (u, v) = self.view.graph().edge(e);
        self.chosen[e] = on;
        if on {
            self.degree[u] += 1;
            self.degree[v] += 1;
        } else {
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
    }

    fn seed(&mut self, hint: &[bool]) {
        for (e, &h) in hint.iter().enumerate() {
            if h {
                self.try_add(e);
            }
        }
    }

    /// Fills vertices with the least slack first.
    fn greedy(&mut self) {
        let g = self.view.graph();
        let mut order: Vec<VertexId> = (0..g.vertex_count()).collect();
        order.sort_by_key(|&v| self.view.live_degree(v) - self.view.demand()[v]);
        for &u in &order {
            for &(_, e) in g.incident(u) {
                if self.deficit(u) == 0 {
                    break;
                }
                self.try_add(e);
            }
        }
    }

    /// Augments along short alternating paths `u - x = y - w` (added,
    /// removed, added) between deficient vertices.
    fn improve(&mut self) {
        let g = self.view.graph();
        let n = g.vertex_count();
        let mut visited = vec![usize::MAX; n];
        for u in 0..n {
            let mut progress = true;
            while self.deficit(u) > 0 && progress {
                progress = self.augment_from(u, &mut visited);
            }
        }
    }

    fn augment_from(&mut self, u: VertexId, visited: &mut [usize]) -> bool {
        let g = self.view.graph();
        for &(x, e1) in g.incident(u) {
            if self.chosen[e1] || !self.view.is_live(e1) {
                continue;
            }
            if self.deficit(x) > 0 {
                self.set(e1, true);
                return true;
            }
            for &(y, e2) in g.incident(x) {
                if !self.chosen[e2] || y == u || visited[y] == u {
                    continue;
                }
                visited[y] = u;
                for &(w, e3) in g.incident(y) {
                    if self.chosen[e3] || !self.view.is_live(e3) || w == x {
                        continue;
                    }
                    let room = if w == u { 2 } else { 1 };
                    if self.deficit(w) >= room && (w != u || self.deficit(u) >= 2) {
                        self.set(e1, true);
                        self.set(e2, false);
                        self.set(e3, true);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn into_matching(self, b: &BlowupGraph<'_>) -> Matching {
        let g = self.view.graph();
        let mut m = Matching::empty(b.vertex_count());
        let mut next_core: Vec<usize> = (0..g.vertex_count())
            .map(|v| b.core_block(v).start)
            .collect();
        for e in 0..g.edge_count() {
            let Some((x, y)) = b.gadget_pair(e) else {
                continue;
            };
            if self.chosen[e] {
                let (u, v) = g.edge(e);
                m.join(x, next_core[u]);
                next_core[u] += 1;
                m.join(y, next_core[v]);
                next_core[v] += 1;
            } else {
                m.join(x, y);
            }
        }
        m
    }
}
