//! Deterministic partition connector: try every spanning tree of the
//! quotient multigraph as a set of forced edges.

use crate::factor::find_f_factor_hinted;
use crate::graph::{
    quotient, verify_f_factor, DegreeSpec, EdgeId, FactorSubgraph, Graph, Partition, QuotientEdge,
    UnionFind,
};

/// Spanning trees of `G/Q`, as sets of host edge ids, in lexicographic order
/// of their positions in the cross-edge list (which is sorted by edge id).
///
/// Prefixes that already close a cycle over the parts are skipped together
/// with all their extensions.
#[derive(Debug, Clone)]
pub struct QuotientSpanningTrees {
    cross: Vec<QuotientEdge>,
    parts: usize,
    size: usize,
    chosen: Vec<usize>,
    started: bool,
    done: bool,
}

impl QuotientSpanningTrees {
    pub fn new(g: &Graph, q: &Partition) -> Self {
        let qg = quotient(g, q).expect("partition must cover the graph");
        QuotientSpanningTrees {
            cross: qg.edges().to_vec(),
            parts: q.len(),
            size: q.len().saturating_sub(1),
            chosen: Vec::new(),
            started: false,
            done: q.is_empty(),
        }
    }

    fn acyclic_with(&self, candidate: usize) -> bool {
        let mut uf = UnionFind::new(self.parts);
        for &p in &self.chosen {
            let e = self.cross[p];
            uf.union(e.a, e.b);
        }
        let e = self.cross[candidate];
        uf.find(e.a) != uf.find(e.b)
    }

    /// Extends `chosen` to a full tree starting the search at `start`,
    /// backtracking as needed.
    fn fill(&mut self, mut start: usize) -> bool {
        loop {
            if self.chosen.len() == self.size {
                return true;
            }
            let need = self.size - self.chosen.len();
            let last = self.cross.len().checked_sub(need);
            let next = last.and_then(|last| (start..=last).find(|&p| self.acyclic_with(p)));
            match next {
                Some(p) => {
                    self.chosen.push(p);
                    start = p + 1;
                }
                None => match self.chosen.pop() {
                    Some(p) => start = p + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for QuotientSpanningTrees {
    type Item = Vec<EdgeId>;

    fn next(&mut self) -> Option<Vec<EdgeId>> {
        if self.done {
            return None;
        }
        let found = if self.started {
            match self.chosen.pop() {
                Some(p) => self.fill(p + 1),
                None => false,
            }
        } else {
            self.started = true;
            self.fill(0)
        };
        if !found {
            self.done = true;
            return None;
        }
        Some(self.chosen.iter().map(|&p| self.cross[p].origin).collect())
    }
}

pub fn enumerate_quotient_spanning_trees(g: &Graph, q: &Partition) -> QuotientSpanningTrees {
    QuotientSpanningTrees::new(g, q)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ConnectorStats {
    pub trees_examined: usize,
}

/// An f-factor of `g` whose quotient by `q` is connected, or `None`.
pub fn pc_deterministic<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    q: &Partition,
) -> Option<FactorSubgraph<'g>> {
    pc_deterministic_with(g, f, q, None).0
}

/// [`pc_deterministic`] with an optional warm-start subgraph for the
/// forced-edge queries, also reporting how many trees were tried.
pub fn pc_deterministic_with<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    q: &Partition,
    hint: Option<&FactorSubgraph<'_>>,
) -> (Option<FactorSubgraph<'g>>, ConnectorStats) {
    let mut stats = ConnectorStats::default();
    let mut load = vec![0usize; g.vertex_count()];
    for tree in enumerate_quotient_spanning_trees(g, q) {
        stats.trees_examined += 1;
        load.iter_mut().for_each(|x| *x = 0);
        for &e in &tree {
            let (u, v) = g.edge(e);
            load[u] += 1;
            load[v] += 1;
        }
        if (0..g.vertex_count()).any(|v| load[v] > f.get(v)) {
            continue;
        }
        if let Some(h) = find_f_factor_hinted(g, f, &tree, hint) {
            assert!(verify_f_factor(g, f, &h, Some(q)).is_valid_connector());
            return (Some(h), stats);
        }
    }
    (None, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::find_f_factor;

    fn two_triangles_matching() -> Graph {
        Graph::new(
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn whole_partition_has_the_empty_tree() {
        let g = two_triangles_matching();
        let trees: Vec<_> = enumerate_quotient_spanning_trees(&g, &Partition::whole(6)).collect();
        assert_eq!(trees, vec![Vec::<EdgeId>::new()]);
    }

    #[test]
    fn two_parts_give_one_tree_per_cross_edge() {
        let g = two_triangles_matching();
        let q = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let trees: Vec<_> = enumerate_quotient_spanning_trees(&g, &q).collect();
        let id = |a, b| g.edge_id(a, b).unwrap();
        assert_eq!(trees, vec![vec![id(0, 3)], vec![id(1, 4)], vec![id(2, 5)]]);
    }

    #[test]
    fn four_cycle_singletons() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let trees: Vec<_> =
            enumerate_quotient_spanning_trees(&g, &Partition::singletons(4)).collect();
        assert_eq!(trees.len(), 4);
        assert!(trees.iter().all(|t| t.len() == 3));
    }

    #[test]
    fn disconnected_quotient_has_no_tree() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            enumerate_quotient_spanning_trees(&g, &Partition::singletons(4)).count(),
            0
        );
    }

    #[test]
    fn k5_has_cayley_many_trees() {
        let pairs: Vec<_> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let g = Graph::new(5, pairs).unwrap();
        let trees: Vec<_> =
            enumerate_quotient_spanning_trees(&g, &Partition::singletons(5)).collect();
        assert_eq!(trees.len(), 125);
        assert!(trees.len() <= binom(10, 4));
        let mut sorted = trees.clone();
        sorted.sort();
        assert_eq!(sorted, trees, "lexicographic order");
    }

    #[test]
    fn connector_examples() {
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let halves = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();

        let apart = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(pc_deterministic(&apart, &f, &halves).is_none());

        let g = two_triangles_matching();
        let h = pc_deterministic(&g, &f, &halves).unwrap();
        assert!(verify_f_factor(&g, &f, &h, Some(&halves)).is_valid_connector());

        let whole = Partition::whole(6);
        assert_eq!(
            pc_deterministic(&g, &f, &whole).is_some(),
            find_f_factor(&g, &f).is_some()
        );
    }
}
