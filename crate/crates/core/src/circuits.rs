//! Red/blue colored symmetric differences, their decomposition into minimal
//! alternating circuits, and switching.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::graph::{
    bfs_quotient_tree, connects, EdgeId, FactorSubgraph, Partition, QuotientEdge, VertexId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoredEdge {
    /// Label of the edge, normally its host edge id. Labels are unique
    /// within one multigraph.
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

impl ColoredEdge {
    fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("vertex {vertex} has {red} red and {blue} blue edges")]
    NotAlternating {
        vertex: VertexId,
        red: usize,
        blue: usize,
    },
    #[error("edge {0} is not part of the colored graph")]
    UnknownEdge(EdgeId),
    #[error("invalid switch: {0}")]
    InvalidSwitch(String),
    #[error("contract violated: {0}")]
    Contract(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoredMultigraph {
    vertex_count: usize,
    edges: Vec<ColoredEdge>,
}

impl ColoredMultigraph {
    pub fn new(vertex_count: usize, edges: Vec<ColoredEdge>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.u < vertex_count && e.v < vertex_count));
        ColoredMultigraph {
            vertex_count,
            edges,
        }
    }

    /// Edge-disjoint union of circuits.
    pub fn from_circuits(vertex_count: usize, circuits: &[MinimalAlternatingCircuit]) -> Self {
        let edges = circuits
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(d_red(v), d_blue(v))` for every vertex.
    pub fn color_degrees(&self) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); self.vertex_count];
        for e in &self.edges {
            for x in [e.u, e.v] {
                match e.color {
                    Color::Red => d[x].0 += 1,
                    Color::Blue => d[x].1 += 1,
                }
            }
        }
        d
    }

    /// Succeeds when red and blue degrees agree everywhere, which is exactly
    /// when every component is an alternating circuit.
    pub fn check_alternating(&self) -> Result<(), CircuitError> {
        match self
            .color_degrees()
            .into_iter()
            .enumerate()
            .find(|(_, (r, b))| r != b)
        {
            Some((vertex, (red, blue))) => Err(CircuitError::NotAlternating { vertex, red, blue }),
            None => Ok(()),
        }
    }
}

/// A closed trail, stored in traversal order, whose colors alternate and in
/// which no vertex meets more than two red edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalAlternatingCircuit {
    edges: Vec<ColoredEdge>,
}

impl MinimalAlternatingCircuit {
    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Closed, cyclically alternating, and at most two red edges per vertex.
    pub fn is_valid(&self) -> bool {
        let k = self.edges.len();
        if k == 0 || k % 2 == 1 {
            return false;
        }
        // recover the traversal start: the endpoint of edge 0 not shared
        // with edge 1 (either endpoint works for a 2-cycle)
        let first = self.edges[0];
        let next = self.edges[1];
        let mut at = if first.v == next.u || first.v == next.v {
            first.u
        } else {
            first.v
        };
        let start = at;
        let mut red = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u != at && e.v != at {
                return false;
            }
            if e.color == self.edges[(i + 1) % k].color {
                return false;
            }
            if e.color == Color::Red {
                for x in [e.u, e.v] {
                    *red.entry(x).or_insert(0usize) += 1;
                }
            }
            at = e.other(at);
        }
        at == start && red.values().all(|&r| r <= 2)
    }
}

/// Colors `E(H) \ E(H2)` red and `E(H2) \ E(H)` blue.
pub fn color_symmetric_difference(
    h: &FactorSubgraph<'_>,
    h2: &FactorSubgraph<'_>,
) -> ColoredMultigraph {
    let g = h.host();
    let edges = (0..g.edge_count())
        .filter_map(|e| {
            let color = match (h.contains(e), h2.contains(e)) {
                (true, false) => Color::Red,
                (false, true) => Color::Blue,
                _ => return None,
            };
            let (u, v) = g.edge(e);
            Some(ColoredEdge {
                edge: e,
                u,
                v,
                color,
            })
        })
        .collect();
    ColoredMultigraph::new(g.vertex_count(), edges)
}

/// Splits the alternating circuits of `a` that carry edges of `required`
/// into minimal alternating circuits. Every returned circuit contains a
/// required edge, every required edge is covered, and circuits are
/// edge-disjoint; circuits without required edges are dropped.
pub fn decompose_minimal_alternating(
    a: &ColoredMultigraph,
    required: &[EdgeId],
) -> Result<Vec<MinimalAlternatingCircuit>, CircuitError> {
    a.check_alternating()?;
    let index: HashMap<EdgeId, usize> = a
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.edge, i))
        .collect();
    let mut is_required = vec![false; a.len()];
    for s in required {
        let &i = index.get(s).ok_or(CircuitError::UnknownEdge(*s))?;
        is_required[i] = true;
    }

    // pair the i-th red incidence with the i-th blue incidence at each vertex
    let n = a.vertex_count;
    let mut red_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut blue_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in a.edges.iter().enumerate() {
        for x in [e.u, e.v] {
            match e.color {
                Color::Red => red_at[x].push(i),
                Color::Blue => blue_at[x].push(i),
            }
        }
    }
    // partner[2i + s]: edge paired with edge i at its endpoint u (s = 0) or v
    let mut partner = vec![usize::MAX; 2 * a.len()];
    let slot = |i: usize, x: VertexId, edges: &[ColoredEdge]| {
        // a loop-free multigraph: u != v
        if edges[i].u == x {
            2 * i
        } else {
            2 * i + 1
        }
    };
    for x in 0..n {
        for (&r, &b) in red_at[x].iter().zip(&blue_at[x]) {
            partner[slot(r, x, &a.edges)] = b;
            partner[slot(b, x, &a.edges)] = r;
        }
    }

    let mut used = vec![false; a.len()];
    let mut out = Vec::new();
    let mut splitter = Splitter::new(n);
    for start in 0..a.len() {
        if used[start] {
            continue;
        }
        let first = a.edges[start];
        let mut trail = Vec::new();
        let mut at = first.u;
        let mut i = start;
        loop {
            used[i] = true;
            trail.push(i);
            at = a.edges[i].other(at);
            i = partner[slot(i, at, &a.edges)];
            if i == start {
                break;
            }
        }
        if trail.iter().any(|&i| is_required[i]) {
            for piece in splitter.split(&a.edges, &trail, first.u) {
                if piece.iter().any(|&i| is_required[i]) {
                    out.push(MinimalAlternatingCircuit {
                        edges: piece.iter().map(|&i| a.edges[i]).collect(),
                    });
                }
            }
        }
    }

    check_decomposition(&out, required)?;
    Ok(out)
}

#[derive(Clone, Copy)]
struct Visit {
    vertex: VertexId,
    pos: usize,
    out: Color,
}

/// Cuts a closed alternating trail into closed alternating pieces in which
/// every vertex is passed at most twice.
struct Splitter {
    pending: Vec<Vec<Visit>>,
}

impl Splitter {
    fn new(n: usize) -> Self {
        Splitter {
            pending: vec![Vec::new(); n],
        }
    }

    fn split(
        &mut self,
        edges: &[ColoredEdge],
        trail: &[usize],
        origin: VertexId,
    ) -> Vec<Vec<usize>> {
        let mut pieces = Vec::new();
        let mut stack: Vec<usize> = Vec::with_capacity(trail.len());
        let mut visits: Vec<Visit> = Vec::new();
        let open = Visit {
            vertex: origin,
            pos: 0,
            out: edges[trail[0]].color,
        };
        visits.push(open);
        self.pending[origin].push(open);
        let mut at = origin;
        for &i in trail {
            stack.push(i);
            at = edges[i].other(at);
            let c = edges[i].color;
            let close = self.pending[at].iter().rev().find(|v| v.out != c).copied();
            match close {
                Some(v) => {
                    pieces.push(stack.split_off(v.pos));
                    while visits.last().is_some_and(|w| w.pos > v.pos) {
                        let w = visits.pop().expect("checked");
                        self.pending[w.vertex].pop();
                    }
                }
                None => {
                    let v = Visit {
                        vertex: at,
                        pos: stack.len(),
                        out: c.flip(),
                    };
                    visits.push(v);
                    self.pending[at].push(v);
                }
            }
        }
        debug_assert!(stack.is_empty(), "a closed trail is consumed entirely");
        for w in visits {
            self.pending[w.vertex].clear();
        }
        pieces
    }
}

fn check_decomposition(
    circuits: &[MinimalAlternatingCircuit],
    required: &[EdgeId],
) -> Result<(), CircuitError> {
    let mut seen = HashSet::new();
    for c in circuits {
        if !c.is_valid() {
            return Err(CircuitError::Contract(
                "circuit is not minimal alternating".into(),
            ));
        }
        for e in &c.edges {
            if !seen.insert(e.edge) {
                return Err(CircuitError::Contract(format!(
                    "edge {} used twice",
                    e.edge
                )));
            }
        }
    }
    if let Some(s) = required.iter().find(|s| !seen.contains(s)) {
        return Err(CircuitError::Contract(format!(
            "required edge {s} uncovered"
        )));
    }
    let distinct: HashSet<_> = required.iter().collect();
    if circuits.len() > distinct.len() {
        return Err(CircuitError::Contract(
            "more circuits than required edges".into(),
        ));
    }
    Ok(())
}

/// `H △ M` for a switch `M` on `H`: red edges of `M` lie in `H`, blue edges
/// avoid it, and red and blue degrees agree at every vertex.
pub fn switch<'g>(
    h: &FactorSubgraph<'g>,
    m: &ColoredMultigraph,
) -> Result<FactorSubgraph<'g>, CircuitError> {
    m.check_alternating()?;
    let mut out = h.clone();
    for e in m.edges() {
        if e.edge >= h.host().edge_count() || h.host().edge(e.edge) != (e.u.min(e.v), e.u.max(e.v))
        {
            return Err(CircuitError::UnknownEdge(e.edge));
        }
        match (e.color, h.contains(e.edge)) {
            (Color::Red, true) | (Color::Blue, false) => out.toggle(e.edge),
            (Color::Red, false) => {
                return Err(CircuitError::InvalidSwitch(format!(
                    "red edge {} not in H",
                    e.edge
                )))
            }
            (Color::Blue, true) => {
                return Err(CircuitError::InvalidSwitch(format!(
                    "blue edge {} in H",
                    e.edge
                )))
            }
        }
    }
    assert_eq!(
        out.degrees(),
        h.degrees(),
        "switching must preserve degrees"
    );
    Ok(out)
}

/// Vertices `v` whose count of `H'`-neighbors inside their own part of
/// `fine` dropped by more than `2(|fine| - 1)` relative to `H`.
pub fn degree_drop_violations(
    before: &FactorSubgraph<'_>,
    after: &FactorSubgraph<'_>,
    fine: &Partition,
) -> Vec<VertexId> {
    let allowance = 2 * fine.len().saturating_sub(1);
    (0..before.host().vertex_count())
        .filter(|&v| {
            after.neighbors_in_own_part(v, fine) + allowance < before.neighbors_in_own_part(v, fine)
        })
        .collect()
}

/// Turns `H` into an f-factor connecting the finer partition `fine`, given
/// another f-factor `h2` that already connects it, while keeping most of
/// the edges `H` has inside each part of `fine`.
pub fn repair_close_factor<'g>(
    h: &FactorSubgraph<'g>,
    coarse: &Partition,
    h2: &FactorSubgraph<'_>,
    fine: &Partition,
) -> Result<FactorSubgraph<'g>, CircuitError> {
    if h.degrees() != h2.degrees() {
        return Err(CircuitError::Contract(
            "factors have different degrees".into(),
        ));
    }
    if !fine.is_refinement_of(coarse) {
        return Err(CircuitError::Contract(
            "partition is not a refinement".into(),
        ));
    }
    if !connects(h2, fine) {
        return Err(CircuitError::Contract(
            "second factor does not connect the parts".into(),
        ));
    }
    let crossing: Vec<QuotientEdge> = h2
        .edge_ids()
        .filter_map(|e| {
            let (u, v) = h2.host().edge(e);
            let (a, b) = (fine.part_of(u), fine.part_of(v));
            (a != b).then_some(QuotientEdge { a, b, origin: e })
        })
        .collect();
    let tree = bfs_quotient_tree(fine.len(), &crossing)
        .ok_or_else(|| CircuitError::Contract("no spanning tree".into()))?;
    let missing: Vec<EdgeId> = tree.into_iter().filter(|&e| !h.contains(e)).collect();
    if missing.is_empty() {
        return Ok(h.clone());
    }

    let diff = color_symmetric_difference(h, h2);
    let circuits = decompose_minimal_alternating(&diff, &missing)?;
    let m = ColoredMultigraph::from_circuits(diff.vertex_count(), &circuits);
    let out = switch(h, &m)?;
    if !connects(&out, fine) {
        return Err(CircuitError::Contract(
            "repaired factor does not connect".into(),
        ));
    }
    let bad = degree_drop_violations(h, &out, fine);
    if !bad.is_empty() {
        return Err(CircuitError::Contract(format!(
            "degree drop too large at {bad:?}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_f_factor, DegreeSpec, Graph};

    fn ce(edge: EdgeId, u: VertexId, v: VertexId, color: Color) -> ColoredEdge {
        ColoredEdge { edge, u, v, color }
    }

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

    fn triangles(g: &Graph) -> FactorSubgraph<'_> {
        FactorSubgraph::from_pairs(g, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    // hexagon 1-2-5-4-6-3-1 in one-based labels
    fn hexagon(g: &Graph) -> FactorSubgraph<'_> {
        FactorSubgraph::from_pairs(g, [(0, 1), (1, 4), (4, 3), (3, 5), (5, 2), (2, 0)]).unwrap()
    }

    fn labels(c: &MinimalAlternatingCircuit) -> Vec<EdgeId> {
        let mut v: Vec<_> = c.edges().iter().map(|e| e.edge).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn difference_of_equal_factors_is_empty() {
        let g = two_triangles_matching();
        let h = triangles(&g);
        assert!(color_symmetric_difference(&h, &h).is_empty());
    }

    #[test]
    fn difference_of_triangles_and_hexagon() {
        let g = two_triangles_matching();
        let (h, h2) = (triangles(&g), hexagon(&g));
        let d = color_symmetric_difference(&h, &h2);
        let id = |a, b| g.edge_id(a, b).unwrap();
        let red: Vec<_> = d
            .edges()
            .iter()
            .filter(|e| e.color == Color::Red)
            .map(|e| e.edge)
            .collect();
        let blue: Vec<_> = d
            .edges()
            .iter()
            .filter(|e| e.color == Color::Blue)
            .map(|e| e.edge)
            .collect();
        assert_eq!(red, vec![id(1, 2), id(4, 5)]);
        assert_eq!(blue, vec![id(1, 4), id(2, 5)]);
        assert!(d.check_alternating().is_ok());
        assert!(d.color_degrees().iter().all(|(r, b)| r == b));
    }

    #[test]
    fn mismatched_degrees_are_not_alternating() {
        let g = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let h = FactorSubgraph::from_pairs(&g, [(0, 1)]).unwrap();
        let h2 = FactorSubgraph::from_pairs(&g, [(0, 2)]).unwrap();
        let d = color_symmetric_difference(&h, &h2);
        assert_eq!(d.len(), 2);
        assert!(matches!(
            d.check_alternating(),
            Err(CircuitError::NotAlternating {
                vertex: 1,
                red: 1,
                blue: 0
            })
        ));
        assert!(decompose_minimal_alternating(&d, &[]).is_err());
    }

    #[test]
    fn four_cycle_is_its_own_circuit() {
        let a = ColoredMultigraph::new(
            4,
            vec![
                ce(0, 0, 1, Color::Red),
                ce(1, 1, 2, Color::Blue),
                ce(2, 2, 3, Color::Red),
                ce(3, 3, 0, Color::Blue),
            ],
        );
        let cs = decompose_minimal_alternating(&a, &[1, 3]).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(labels(&cs[0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn bowtie_is_indecomposable() {
        // triangles v-a-b and v-c-d sharing v = 0; both edges of the first
        // triangle at v are red, both edges of the second are blue
        let a = ColoredMultigraph::new(
            5,
            vec![
                ce(0, 0, 1, Color::Red),
                ce(1, 1, 2, Color::Blue),
                ce(2, 2, 0, Color::Red),
                ce(3, 0, 3, Color::Blue),
                ce(4, 3, 4, Color::Red),
                ce(5, 4, 0, Color::Blue),
            ],
        );
        let cs = decompose_minimal_alternating(&a, &[1, 3, 5]).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 6);
        assert!(cs[0].is_valid());
    }

    #[test]
    fn disjoint_cycles_split_by_component() {
        let mut edges = Vec::new();
        for base in [0, 4] {
            let l = base as EdgeId;
            edges.push(ce(l, base, base + 1, Color::Red));
            edges.push(ce(l + 1, base + 1, base + 2, Color::Blue));
            edges.push(ce(l + 2, base + 2, base + 3, Color::Red));
            edges.push(ce(l + 3, base + 3, base, Color::Blue));
        }
        let a = ColoredMultigraph::new(8, edges);
        let cs = decompose_minimal_alternating(&a, &[1, 5]).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(labels(&cs[0]), vec![0, 1, 2, 3]);
        assert_eq!(labels(&cs[1]), vec![4, 5, 6, 7]);
        let only_first = decompose_minimal_alternating(&a, &[1]).unwrap();
        assert_eq!(only_first.len(), 1);
    }

    #[test]
    fn splits_a_vertex_with_three_red_edges() {
        // three alternating 4-cycles through vertex 0
        let mut edges = Vec::new();
        for k in 0..3 {
            let (x, y, z) = (1 + 3 * k, 2 + 3 * k, 3 + 3 * k);
            let l = 4 * k;
            edges.push(ce(l, 0, x, Color::Red));
            edges.push(ce(l + 1, x, y, Color::Blue));
            edges.push(ce(l + 2, y, z, Color::Red));
            edges.push(ce(l + 3, z, 0, Color::Blue));
        }
        let a = ColoredMultigraph::new(10, edges);
        let all: Vec<EdgeId> = (0..12).collect();
        let cs = decompose_minimal_alternating(&a, &all).unwrap();
        let covered: usize = cs.iter().map(|c| c.len()).sum();
        assert_eq!(covered, 12);
        assert!(cs.iter().all(|c| c.is_valid()));
    }

    #[test]
    fn switch_examples() {
        let g = two_triangles_matching();
        let (h, h2) = (triangles(&g), hexagon(&g));
        assert_eq!(switch(&h, &ColoredMultigraph::new(6, vec![])).unwrap(), h);
        let d = color_symmetric_difference(&h, &h2);
        assert_eq!(switch(&h, &d).unwrap(), h2);

        let e25 = g.edge_id(1, 4).unwrap();
        let cs = decompose_minimal_alternating(&d, &[e25]).unwrap();
        let m = ColoredMultigraph::from_circuits(6, &cs);
        let out = switch(&h, &m).unwrap();
        assert!(out.contains(e25));
        let f = DegreeSpec::uniform(6, 2).unwrap();
        assert!(verify_f_factor(&g, &f, &out, None).degrees_match);

        let bad =
            ColoredMultigraph::new(6, vec![ce(e25, 1, 4, Color::Red), ce(0, 0, 1, Color::Blue)]);
        assert!(switch(&h, &bad).is_err());
    }

    #[test]
    fn repair_examples() {
        let g = two_triangles_matching();
        let (h, h2) = (triangles(&g), hexagon(&g));
        let whole = Partition::whole(6);
        let halves = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();

        let out = repair_close_factor(&h, &whole, &h2, &halves).unwrap();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        assert!(verify_f_factor(&g, &f, &out, Some(&halves)).is_valid_connector());
        assert!(degree_drop_violations(&h, &out, &halves).is_empty());

        // already connecting: nothing to do
        assert_eq!(repair_close_factor(&h2, &whole, &h2, &halves).unwrap(), h2);
        // a single part never needs repair
        assert_eq!(repair_close_factor(&h, &whole, &h2, &whole).unwrap(), h);
        // the second factor must connect
        assert!(repair_close_factor(&h2, &whole, &h, &halves).is_err());
    }

    mod props {
        use super::*;
        use crate::factor::find_f_factor_containing;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]
            /// Two f-factors of a random graph, one forced through a random
            /// edge set, decompose into valid minimal circuits and switch.
            #[test]
            fn decomposition_contract(
                n in 4usize..10,
                keep in proptest::collection::vec(0u8..10, 45),
                demand in proptest::collection::vec(1usize..4, 10),
                force in proptest::collection::vec(any::<prop::sample::Index>(), 1..4),
            ) {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .zip(&keep)
                    .filter_map(|(p, &k)| (k < 6).then_some(p))
                    .collect();
                let g = Graph::new(n, pairs).unwrap();
                prop_assume!(g.edge_count() > 0);
                let f = DegreeSpec::new(n, demand[..n].iter().map(|&d| d.min(n - 1)).collect()).unwrap();
                let Some(h) = crate::factor::find_f_factor(&g, &f) else { return Ok(()); };
                let forced: Vec<EdgeId> = force.iter().map(|i| i.index(g.edge_count())).collect();
                let Some(h2) = find_f_factor_containing(&g, &f, &forced) else { return Ok(()); };
                let d = color_symmetric_difference(&h, &h2);
                let s: Vec<EdgeId> = forced.iter().copied().filter(|&e| !h.contains(e)).collect();
                let cs = decompose_minimal_alternating(&d, &s).unwrap();
                let m = ColoredMultigraph::from_circuits(n, &cs);
                let out = switch(&h, &m).unwrap();
                prop_assert!(s.iter().all(|&e| out.contains(e)));
                prop_assert_eq!(out.degrees(), h.degrees());
            }
        }
    }
}
