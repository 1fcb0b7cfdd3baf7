//! Maximum-cardinality matching in general graphs (Edmonds' blossom search).
//!
//! The search grows an alternating forest from one exposed root at a time,
//! contracting odd cycles through a disjoint-set forest of blossom bases. A
//! root whose search fails can never become matched later, which gives both
//! the full maximum matching and an early-exit perfect-matching test.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

const UNLABELED: u8 = 0;
const EVEN: u8 = 1;
const ODD: u8 = 2;

/// Anything that can enumerate neighbors of dense vertex ids.
pub trait MatchingGraph {
    fn vertex_count(&self) -> usize;

    /// Replaces the contents of `out` with the neighbors of `v`.
    fn neighbors_into(&self, v: usize, out: &mut Vec<usize>);
}

/// Plain adjacency-list graph, for matching problems that are not blowups.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adjacency: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    pub fn new(n: usize) -> Self {
        AdjacencyGraph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

impl MatchingGraph for AdjacencyGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors_into(&self, v: usize, out: &mut Vec<usize>) {
        out.clear();
        out.extend_from_slice(&self.adjacency[v]);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
    size: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![NIL; n],
            size: 0,
        }
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        (self.mate[v] != NIL).then_some(self.mate[v])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.size == self.mate.len()
    }

    /// Matched pairs `(u, v)` with `u < v`, ordered by `u`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != NIL && u < v)
            .map(|(u, &v)| (u, v))
            .collect()
    }

    /// Matches `u` and `v`; both must currently be exposed.
    pub fn join(&mut self, u: usize, v: usize) {
        debug_assert!(self.mate[u] == NIL && self.mate[v] == NIL && u != v);
        self.mate[u] = v;
        self.mate[v] = u;
        self.size += 1;
    }

    /// Checks that the stored pairs are disjoint edges of `g`.
    pub fn is_valid_in<G: MatchingGraph>(&self, g: &G) -> bool {
        let mut buf = Vec::new();
        self.mate.len() == g.vertex_count()
            && self.mate.iter().enumerate().all(|(u, &v)| {
                if v == NIL {
                    return true;
                }
                if self.mate[v] != u {
                    return false;
                }
                g.neighbors_into(u, &mut buf);
                buf.contains(&v)
            })
    }
}

struct Search<'a, G: MatchingGraph> {
    graph: &'a G,
    mate: Vec<usize>,
    label: Vec<u8>,
    pred: Vec<usize>,
    base: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'a, G: MatchingGraph> Search<'a, G> {
    fn new(graph: &'a G, mate: Vec<usize>) -> Self {
        let n = graph.vertex_count();
        Search {
            graph,
            mate,
            label: vec![UNLABELED; n],
            pred: vec![NIL; n],
            base: (0..n).collect(),
            mark: vec![0; n],
            stamp: 0,
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.base[x] != x {
            self.base[x] = self.base[self.base[x]];
            x = self.base[x];
        }
        x
    }

    fn set_label(&mut self, x: usize, l: u8) {
        if self.label[x] == UNLABELED {
            self.touched.push(x);
        }
        self.label[x] = l;
    }

    fn reset(&mut self) {
        for &x in &self.touched {
            self.label[x] = UNLABELED;
            self.pred[x] = NIL;
            self.base[x] = x;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn lca(&mut self, mut x: usize, mut y: usize) -> usize {
        if self.stamp == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        loop {
            if x != NIL {
                x = self.find(x);
                if self.mark[x] == self.stamp {
                    return x;
                }
                self.mark[x] = self.stamp;
                x = match self.mate[x] {
                    NIL => NIL,
                    m => self.pred[m],
                };
            }
            std::mem::swap(&mut x, &mut y);
        }
    }

    fn shrink(&mut self, mut x: usize, mut y: usize, b: usize) {
        while self.find(x) != b {
            self.pred[x] = y;
            y = self.mate[x];
            if self.label[y] == ODD {
                self.set_label(y, EVEN);
                self.queue.push_back(y);
            }
            if self.find(x) == x {
                self.base[x] = b;
            }
            if self.find(y) == y {
                self.base[y] = b;
            }
            x = self.pred[y];
        }
    }

    fn augment(&mut self, mut u: usize) {
        while u != NIL {
            let p = self.pred[u];
            let next = self.mate[p];
            self.mate[u] = p;
            self.mate[p] = u;
            u = next;
        }
    }

    /// Looks for an augmenting path from the exposed vertex `root` and
    /// applies it when found.
    fn grow(&mut self, root: usize, buf: &mut Vec<usize>) -> bool {
        self.set_label(root, EVEN);
        self.queue.push_back(root);
        let mut found = false;
        'outer: while let Some(x) = self.queue.pop_front() {
            self.graph.neighbors_into(x, buf);
            for &y in buf.iter() {
                if self.label[y] == ODD || self.find(x) == self.find(y) {
                    continue;
                }
                if self.label[y] == UNLABELED {
                    self.set_label(y, ODD);
                    self.pred[y] = x;
                    if self.mate[y] == NIL {
                        self.augment(y);
                        found = true;
                        break 'outer;
                    }
                    let m = self.mate[y];
                    self.set_label(m, EVEN);
                    self.queue.push_back(m);
                } else {
                    let b = self.lca(x, y);
                    self.shrink(x, y, b);
                    self.shrink(y, x, b);
                }
            }
        }
        self.reset();
        found
    }

    fn into_matching(self) -> Matching {
        let size = self.mate.iter().filter(|&&m| m != NIL).count() / 2;
        Matching {
            mate: self.mate,
            size,
        }
    }
}

fn greedy_fill<G: MatchingGraph>(g: &G, mate: &mut [usize]) {
    let mut buf = Vec::new();
    for u in 0..g.vertex_count() {
        if mate[u] != NIL {
            continue;
        }
        g.neighbors_into(u, &mut buf);
        if let Some(&v) = buf.iter().find(|&&v| mate[v] == NIL && v != u) {
            mate[u] = v;
            mate[v] = u;
        }
    }
}

/// A maximum-cardinality matching of `g`.
pub fn max_matching<G: MatchingGraph>(g: &G) -> Matching {
    let mut mate = vec![NIL; g.vertex_count()];
    greedy_fill(g, &mut mate);
    let mut search = Search::new(g, mate);
    let mut buf = Vec::new();
    for root in 0..g.vertex_count() {
        if search.mate[root] == NIL {
            search.grow(root, &mut buf);
        }
    }
    search.into_matching()
}

/// Extends `initial` to a perfect matching, or returns `None` as soon as
/// some exposed vertex has no augmenting path.
pub fn complete_to_perfect<G: MatchingGraph>(g: &G, initial: Matching) -> Option<Matching> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return None;
    }
    debug_assert_eq!(initial.mate.len(), n);
    let mut search = Search::new(g, initial.mate);
    let mut buf = Vec::new();
    for root in 0..n {
        if search.mate[root] == NIL && !search.grow(root, &mut buf) {
            return None;
        }
    }
    Some(search.into_matching())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Size of a maximum matching by exhaustive branching.
    fn brute_matching_size(n: usize, edges: &[(usize, usize)]) -> usize {
        fn go(i: usize, used: &mut Vec<bool>, edges: &[(usize, usize)]) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(i + 1, used, edges);
            let (u, v) = edges[i];
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + go(i + 1, used, edges);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        go(0, &mut vec![false; n], edges)
    }

    #[test]
    fn path_of_three() {
        let g = AdjacencyGraph::from_edges(3, [(0, 1), (1, 2)]);
        let m = max_matching(&g);
        assert_eq!(m.size(), 1);
        assert!(!m.is_perfect());
    }

    #[test]
    fn four_cycle() {
        let g = AdjacencyGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let m = max_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(m.is_perfect() && m.is_valid_in(&g));
    }

    #[test]
    fn needs_blossom_contraction() {
        // a pentagon with a pendant at vertex 0 and one at vertex 2: greedy
        // pairs leave two exposed vertices joined only through the odd cycle
        let g =
            AdjacencyGraph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6)]);
        let m = max_matching(&g);
        assert_eq!(m.size(), 3);
        assert!(m.is_valid_in(&g));
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(brute_matching_size(7, &edges), 3);
    }

    #[test]
    fn perfect_completion_early_exit() {
        let star = AdjacencyGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert!(complete_to_perfect(&star, Matching::empty(4)).is_none());
        let c6 = AdjacencyGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let mut start = Matching::empty(6);
        start.join(1, 2);
        start.join(4, 5);
        let m = complete_to_perfect(&c6, start).unwrap();
        assert!(m.is_perfect() && m.is_valid_in(&c6));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(400))]
            #[test]
            fn matches_brute_force(n in 1usize..11, mask in proptest::collection::vec(any::<bool>(), 45)) {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let edges: Vec<_> = pairs.iter().zip(&mask).filter_map(|(&p, &k)| k.then_some(p)).collect();
                let g = AdjacencyGraph::from_edges(n, edges.iter().copied());
                let m = max_matching(&g);
                prop_assert!(m.is_valid_in(&g));
                prop_assert_eq!(m.size(), brute_matching_size(n, &edges));
                let perfect = complete_to_perfect(&g, Matching::empty(n));
                prop_assert_eq!(perfect.is_some(), m.is_perfect());
            }
        }
    }
}
