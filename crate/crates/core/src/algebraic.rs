//! Randomized partition connector over GF(2^k).
//!
//! The connectivity polynomial of an instance and a partition is a sum, over
//! the part subsets `I` containing part 0, of the Tutte determinants of the
//! blowups induced by `Q(I)` and by its complement, times the squared gadget
//! variables of the edges crossing between them. It is nonzero exactly when
//! some f-factor connects the partition, so evaluating it at a random point
//! gives a one-sided test: a nonzero value is always a correct YES.

use rand::Rng;

use crate::blowup::{BlowupGraph, BlowupRole, InstanceView};
use crate::factor::solve_view;
use crate::field::{BinaryField, Gf128, Gf16, Gf32, Gf64};
use crate::graph::{verify_f_factor, DegreeSpec, EdgeId, FactorSubgraph, Graph, Partition};

/// One field value per blowup edge of a (host, demand) pair.
///
/// Values of the edges between gadget `x_e` and the cores of its endpoint
/// are stored per edge, smaller-endpoint side first; the gadget pair edge
/// has its own slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteAssignment<F> {
    pair: Vec<F>,
    link_offset: Vec<usize>,
    link: Vec<F>,
}

impl<F: BinaryField> TutteAssignment<F> {
    /// Independent uniform values for every edge of the blowup of `b`'s
    /// host and demand, including edges that `b` itself has dropped.
    pub fn random<R: Rng + ?Sized>(b: &BlowupGraph<'_>, rng: &mut R) -> Self {
        Self::from_fn(b, |_| F::random(rng))
    }

    /// Values produced by `value`, called once per blowup edge in a fixed
    /// order.
    pub fn from_fn(b: &BlowupGraph<'_>, mut value: impl FnMut(usize) -> F) -> Self {
        let g = b.host();
        let d = b.demand();
        let mut link_offset = Vec::with_capacity(g.edge_count() + 1);
        let mut total = 0;
        link_offset.push(0);
        for &(u, v) in g.edges() {
            total += d[u] + d[v];
            link_offset.push(total);
        }
        let mut counter = 0;
        let mut next = || {
            counter += 1;
            value(counter - 1)
        };
        let pair = (0..g.edge_count()).map(|_| next()).collect();
        let link = (0..total).map(|_| next()).collect();
        TutteAssignment {
            pair,
            link_offset,
            link,
        }
    }

    pub fn pair_value(&self, e: EdgeId) -> F {
        self.pair[e]
    }

    /// Value of the blowup edge between local vertices `x` and `y` of `b`,
    /// or zero if they are not adjacent.
    pub fn value(&self, b: &BlowupGraph<'_>, x: usize, y: usize) -> F {
        match (b.role(x), b.role(y)) {
            (BlowupRole::Gadget { edge: e1, .. }, BlowupRole::Gadget { edge: e2, .. }) => {
                if e1 == e2 && x != y {
                    self.pair[e1]
                } else {
                    F::ZERO
                }
            }
            (BlowupRole::Core { vertex, copy }, BlowupRole::Gadget { edge, end })
            | (BlowupRole::Gadget { edge, end }, BlowupRole::Core { vertex, copy }) => {
                if vertex != end {
                    return F::ZERO;
                }
                let (u, _) = b.host().edge(edge);
                let side = if end == u { 0 } else { b.demand()[u] };
                self.link[self.link_offset[edge] + side + copy]
            }
            _ => F::ZERO,
        }
    }
}

/// Dense Tutte matrix of a blowup at an assignment. In characteristic 2 it
/// is symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteMatrix<F> {
    order: usize,
    entries: Vec<F>,
}

impl<F: BinaryField> TutteMatrix<F> {
    pub fn build(b: &BlowupGraph<'_>, a: &TutteAssignment<F>) -> Self {
        use crate::matching::MatchingGraph;
        let order = b.vertex_count();
        let mut entries = vec![F::ZERO; order * order];
        let mut buf = Vec::new();
        for x in 0..order {
            b.neighbors_into(x, &mut buf);
            for &y in &buf {
                entries[x * order + y] = a.value(b, x, y);
            }
        }
        TutteMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entries[i * self.order + j]
    }

    /// Determinant by Gaussian elimination; the empty matrix has determinant
    /// one.
    pub fn determinant(mut self) -> F {
        let n = self.order;
        if n % 2 == 1 {
            return F::ZERO;
        }
        let mut det = F::ONE;
        let mut pivot_row = vec![F::ZERO; n];
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !self.entries[r * n + col].is_zero()) else {
                return F::ZERO;
            };
            if p != col {
                for k in col..n {
                    self.entries.swap(p * n + k, col * n + k);
                }
            }
            let pivot = self.entries[col * n + col];
            det = det.mul(pivot);
            let inv = pivot.inv().expect("pivot is nonzero");
            pivot_row[col..].copy_from_slice(&self.entries[col * n + col..(col + 1) * n]);
            for r in col + 1..n {
                let lead = self.entries[r * n + col];
                if lead.is_zero() {
                    continue;
                }
                let c = lead.mul(inv);
                F::mul_add_row(
                    &mut self.entries[r * n + col..(r + 1) * n],
                    &pivot_row[col..],
                    c,
                );
            }
        }
        det
    }
}

pub fn tutte_det<F: BinaryField>(b: &BlowupGraph<'_>, a: &TutteAssignment<F>) -> F {
    if b.vertex_count() % 2 == 1 {
        return F::ZERO;
    }
    TutteMatrix::build(b, a).determinant()
}

/// Bitmask over part indices; bit `i` set means part `i` is in the subset.
pub type PartSet = u64;

/// Product of the squared gadget-pair values over the live edges crossing
/// between `Q(I)` and the rest. Equals one when `I` holds every part.
pub fn monomial_value<F: BinaryField>(
    parts: PartSet,
    q: &Partition,
    b: &BlowupGraph<'_>,
    a: &TutteAssignment<F>,
) -> F {
    let g = b.host();
    let inside = |v| parts >> q.part_of(v) & 1 == 1;
    let mut m = F::ONE;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if b.has_gadget(e) && inside(u) != inside(v) {
            m = m.mul(a.pair_value(e).square());
        }
    }
    m
}

/// Evaluates the connectivity polynomial of `b` (the blowup of the
/// instance) with respect to `q` at `a`, summing over all `2^(|Q|-1)` part
/// subsets that contain part 0.
pub fn eval_pq<F: BinaryField>(b: &BlowupGraph<'_>, q: &Partition, a: &TutteAssignment<F>) -> F {
    let parts = q.len();
    assert!((1..=63).contains(&parts), "between 1 and 63 parts");
    let n = b.host().vertex_count();
    let full: PartSet = (1 << parts) - 1;
    let mut total = F::ZERO;
    let mut inside = vec![false; n];
    let mut outside = vec![false; n];
    for rest in 0..1u64 << (parts - 1) {
        let set = rest << 1 | 1;
        for v in 0..n {
            inside[v] = set >> q.part_of(v) & 1 == 1;
            outside[v] = !inside[v];
        }
        let left = b.induced(&inside);
        if left.vertex_count() % 2 == 1 {
            continue;
        }
        let right = b.induced(&outside);
        if right.vertex_count() % 2 == 1 {
            continue;
        }
        let d1 = tutte_det(&left, a);
        if d1.is_zero() {
            continue;
        }
        let d2 = if set == full {
            F::ONE
        } else {
            tutte_det(&right, a)
        };
        total = total.add(d1.mul(d2).mul(monomial_value(set, q, b, a)));
    }
    total
}

/// One draw of the randomized existence test on a masked instance.
pub fn exists_pc_view<F: BinaryField, R: Rng + ?Sized>(
    view: &InstanceView<'_>,
    q: &Partition,
    rng: &mut R,
) -> bool {
    let g = view.graph();
    if view.demand().iter().sum::<usize>() % 2 == 1
        || (0..g.vertex_count()).any(|v| view.demand()[v] > view.live_degree(v))
    {
        return false;
    }
    let b = BlowupGraph::of_view(view);
    let a = TutteAssignment::<F>::random(&b, rng);
    !eval_pq(&b, q, &a).is_zero()
}

/// Is there (probably) an f-factor of `g` connecting `q`? A YES answer is
/// always correct.
pub fn exists_pc_randomized<F: BinaryField, R: Rng + ?Sized>(
    g: &Graph,
    f: &DegreeSpec,
    q: &Partition,
    rng: &mut R,
) -> bool {
    exists_pc_view::<F, R>(&InstanceView::new(g, f), q, rng)
}

/// Builds an f-factor connecting `q` by repeatedly forcing an edge that
/// leaves part 0 and merging the parts it joins, as long as the randomized
/// test keeps answering YES. `None` may be a false negative.
pub fn pc_randomized<'g, F: BinaryField, R: Rng + ?Sized>(
    g: &'g Graph,
    f: &DegreeSpec,
    q: &Partition,
    rng: &mut R,
) -> Option<FactorSubgraph<'g>> {
    let mut view = InstanceView::new(g, f);
    let mut parts = q.clone();
    let mut forced = Vec::new();
    if parts.len() > 1 && !exists_pc_view::<F, R>(&view, &parts, rng) {
        return None;
    }
    while parts.len() > 1 {
        let leaving = (0..g.edge_count()).filter(|&e| {
            let (u, v) = g.edge(e);
            view.is_live(e) && (parts.part_of(u) == 0) != (parts.part_of(v) == 0)
        });
        let mut step = None;
        for e in leaving {
            let (u, v) = g.edge(e);
            let Some(sub) = view.force_edge(e) else {
                continue;
            };
            let other = parts.part_of(u).max(parts.part_of(v));
            let merged = parts.merge(0, other);
            if exists_pc_view::<F, R>(&sub, &merged, rng) {
                step = Some((e, sub, merged));
                break;
            }
        }
        let (e, sub, merged) = step?;
        forced.push(e);
        view = sub;
        parts = merged;
    }
    let rest = solve_view(&view, None)?;
    let h = FactorSubgraph::from_edges(g, rest.into_iter().chain(forced))
        .expect("edge ids come from the host");
    assert!(
        verify_f_factor(g, f, &h, Some(q)).is_valid_connector(),
        "forced edges must connect the partition"
    );
    Some(h)
}

/// Which field the randomized test works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldChoice {
    Gf16,
    Gf32,
    Gf64,
    Gf128,
}

impl FieldChoice {
    /// The smallest supported field with at least `n^6` elements.
    pub fn for_vertex_count(n: usize) -> FieldChoice {
        let needed = 6.0 * (n.max(2) as f64).log2();
        if needed <= 64.0 {
            FieldChoice::Gf64
        } else {
            FieldChoice::Gf128
        }
    }

    pub fn from_bits(bits: u32) -> Option<FieldChoice> {
        match bits {
            16 => Some(FieldChoice::Gf16),
            32 => Some(FieldChoice::Gf32),
            64 => Some(FieldChoice::Gf64),
            128 => Some(FieldChoice::Gf128),
            _ => None,
        }
    }

    pub fn bits(self) -> u32 {
        match self {
            FieldChoice::Gf16 => 16,
            FieldChoice::Gf32 => 32,
            FieldChoice::Gf64 => 64,
            FieldChoice::Gf128 => 128,
        }
    }
}

/// [`exists_pc_randomized`] over a field chosen at run time.
pub fn exists_pc_in<R: Rng + ?Sized>(
    field: FieldChoice,
    g: &Graph,
    f: &DegreeSpec,
    q: &Partition,
    rng: &mut R,
) -> bool {
    match field {
        FieldChoice::Gf16 => exists_pc_randomized::<Gf16, R>(g, f, q, rng),
        FieldChoice::Gf32 => exists_pc_randomized::<Gf32, R>(g, f, q, rng),
        FieldChoice::Gf64 => exists_pc_randomized::<Gf64, R>(g, f, q, rng),
        FieldChoice::Gf128 => exists_pc_randomized::<Gf128, R>(g, f, q, rng),
    }
}

/// [`pc_randomized`] over a field chosen at run time.
pub fn pc_randomized_in<'g, R: Rng + ?Sized>(
    field: FieldChoice,
    g: &'g Graph,
    f: &DegreeSpec,
    q: &Partition,
    rng: &mut R,
) -> Option<FactorSubgraph<'g>> {
    match field {
        FieldChoice::Gf16 => pc_randomized::<Gf16, R>(g, f, q, rng),
        FieldChoice::Gf32 => pc_randomized::<Gf32, R>(g, f, q, rng),
        FieldChoice::Gf64 => pc_randomized::<Gf64, R>(g, f, q, rng),
        FieldChoice::Gf128 => pc_randomized::<Gf128, R>(g, f, q, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::build_blowup;
    use crate::matching::{max_matching, AdjacencyGraph, MatchingGraph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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

    fn two_triangles() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    fn halves() -> Partition {
        Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap()
    }

    /// Determinant by the Leibniz expansion over permutations; in
    /// characteristic 2 this is the permanent.
    fn permanent<F: BinaryField>(m: &TutteMatrix<F>) -> F {
        fn go<F: BinaryField>(m: &TutteMatrix<F>, row: usize, used: &mut Vec<bool>) -> F {
            if row == m.order() {
                return F::ONE;
            }
            let mut acc = F::ZERO;
            for c in 0..m.order() {
                if !used[c] && !m.get(row, c).is_zero() {
                    used[c] = true;
                    acc = acc.add(m.get(row, c).mul(go(m, row + 1, used)));
                    used[c] = false;
                }
            }
            acc
        }
        go(m, 0, &mut vec![false; m.order()])
    }

    #[test]
    fn single_edge_determinant_is_the_matching_term() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let b = build_blowup(&g, &DegreeSpec::uniform(2, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
        // vertices: a_u = 0, a_v = 1, u_e = 2, v_e = 3
        let x = a.value(&b, 0, 2);
        let y = a.value(&b, 1, 3);
        assert_eq!(tutte_det(&b, &a), x.mul(y).square());
        assert!(!a.value(&b, 2, 3).is_zero());
        assert!(a.value(&b, 0, 3).is_zero());
    }

    #[test]
    fn two_by_two_and_odd_orders() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let b = build_blowup(&g, &DegreeSpec::uniform(2, 0).unwrap()).unwrap();
        // only the gadget pair remains
        assert_eq!(b.vertex_count(), 2);
        let a = TutteAssignment::<Gf64>::from_fn(&b, |i| Gf64(i as u64 + 5));
        assert_eq!(tutte_det(&b, &a), a.pair_value(0).square());

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let b = build_blowup(&p3, &DegreeSpec::new(3, vec![1, 0, 0]).unwrap()).unwrap();
        assert_eq!(b.vertex_count(), 5);
        let a = TutteAssignment::<Gf64>::from_fn(&b, |i| Gf64(i as u64 + 1));
        assert_eq!(tutte_det(&b, &a), Gf64::ZERO);

        let empty = b.induced(&[false; 3]);
        assert_eq!(tutte_det(&empty, &a), Gf64::ONE);
    }

    #[test]
    fn elimination_matches_permanent() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let f = DegreeSpec::new(4, vec![2, 1, 2, 1]).unwrap();
        let b = build_blowup(&g, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
            let m = TutteMatrix::build(&b, &a);
            for i in 0..m.order() {
                for j in 0..m.order() {
                    assert_eq!(m.get(i, j), m.get(j, i));
                }
            }
            assert_eq!(m.clone().determinant(), permanent(&m));
        }
    }

    #[test]
    fn determinant_nonzero_iff_perfect_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..100u64 {
            let n = 2 + (trial % 6) as usize;
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::new(n, pairs).unwrap();
            let f: Vec<usize> = (0..n)
                .map(|v| rng.gen_range(0..=g.degree(v).min(2)))
                .collect();
            let b = build_blowup(&g, &DegreeSpec::new(n, f).unwrap()).unwrap();
            let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
            let explicit = AdjacencyGraph::from_edges(b.vertex_count(), b.edges());
            let perfect = max_matching(&explicit).is_perfect();
            assert_eq!(!tutte_det(&b, &a).is_zero(), perfect, "trial {trial}");
            assert_eq!(explicit.vertex_count(), b.vertex_count());
        }
    }

    #[test]
    fn monomial_examples() {
        let g = two_triangles_matching();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let b = build_blowup(&g, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
        assert_eq!(monomial_value(0b11, &halves(), &b, &a), Gf64::ONE);
        let expect = [(0, 3), (1, 4), (2, 5)]
            .iter()
            .map(|&(u, v)| a.pair_value(g.edge_id(u, v).unwrap()).square())
            .fold(Gf64::ONE, |acc, x| acc.mul(x));
        assert_eq!(monomial_value(0b01, &halves(), &b, &a), expect);

        let apart = two_triangles();
        let b = build_blowup(&apart, &f).unwrap();
        let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
        assert_eq!(monomial_value(0b01, &halves(), &b, &a), Gf64::ONE);
    }

    #[test]
    fn single_part_polynomial_is_the_determinant() {
        let g = two_triangles_matching();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let b = build_blowup(&g, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
            assert_eq!(eval_pq(&b, &Partition::whole(6), &a), tutte_det(&b, &a));
        }
    }

    #[test]
    fn disjoint_triangles_polynomial_vanishes() {
        let g = two_triangles();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let b = build_blowup(&g, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let a = TutteAssignment::<Gf64>::random(&b, &mut rng);
            assert!(eval_pq(&b, &halves(), &a).is_zero());
            assert!(!exists_pc_randomized::<Gf64, _>(
                &g,
                &f,
                &halves(),
                &mut rng
            ));
        }
        assert!(pc_randomized::<Gf64, _>(&g, &f, &halves(), &mut rng).is_none());
    }

    #[test]
    fn connected_yes_instance() {
        let g = two_triangles_matching();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let yes = (0..200)
            .filter(|_| exists_pc_randomized::<Gf64, _>(&g, &f, &halves(), &mut rng))
            .count();
        assert_eq!(yes, 200);
        let h = pc_randomized::<Gf64, _>(&g, &f, &halves(), &mut rng).unwrap();
        assert!(verify_f_factor(&g, &f, &h, Some(&halves())).is_valid_connector());

        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let f4 = DegreeSpec::uniform(4, 2).unwrap();
        assert!(exists_pc_randomized::<Gf64, _>(
            &k4,
            &f4,
            &Partition::whole(4),
            &mut rng
        ));
        let h = pc_randomized::<Gf64, _>(&k4, &f4, &Partition::whole(4), &mut rng).unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn field_sizing() {
        assert_eq!(FieldChoice::for_vertex_count(30), FieldChoice::Gf64);
        assert_eq!(FieldChoice::for_vertex_count(1600), FieldChoice::Gf64);
        assert_eq!(FieldChoice::for_vertex_count(2000), FieldChoice::Gf128);
        assert_eq!(FieldChoice::from_bits(32), Some(FieldChoice::Gf32));
        assert_eq!(FieldChoice::from_bits(48), None);
    }
}
