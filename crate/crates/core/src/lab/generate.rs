//! Instance generators and a few classic graph families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DegreeSpec, Graph, VertexId};
use crate::lab::format::{Expectation, Instance};
use crate::lab::oracle::{hamiltonian_cycle_brute, MAX_HAMILTONIAN_VERTICES};

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("n >= 3")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// The `d`-dimensional hypercube.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ 1 << b)).filter(|&(u, v)| u < v));
    Graph::new(n, edges).expect("simple")
}

/// Outer 5-cycle 0..5, spokes `i - i+5`, inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, e).expect("simple")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedParams {
    pub n: usize,
    /// Probability with which each pair outside the witness becomes a noise
    /// edge. Noise never joins two different clusters.
    pub extra_edge_rate: f64,
    /// Minimum degree of the witness.
    pub min_degree: usize,
    /// Number of vertex blocks the witness is built on separately.
    pub clusters: usize,
    /// Witness edges joining consecutive clusters.
    pub bridges: usize,
    pub seed: u64,
}

impl PlantedParams {
    pub fn new(n: usize, extra_edge_rate: f64, seed: u64) -> Self {
        PlantedParams {
            n,
            extra_edge_rate,
            min_degree: 1,
            clusters: 1,
            bridges: 1,
            seed,
        }
    }
}

/// A YES instance: a random connected witness `H` with `f = d_H`, plus noise
/// edges. Inside each cluster the witness is a random spanning tree
/// thickened until every degree reaches `min_degree`; consecutive clusters
/// are joined by `bridges` witness edges.
///
/// With two or more bridges per cluster pair the instance usually also has
/// disconnected f-factors, which makes the refinement loop do real work.
pub fn gen_planted(p: PlantedParams) -> Instance {
    let n = p.n;
    assert!(n >= 3, "planted instances need at least 3 vertices");
    assert!(p.clusters >= 1 && p.bridges >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let blocks = cluster_blocks(&p, &mut rng);
    assert!(
        blocks.iter().all(|b| p.min_degree < b.len()),
        "minimum degree must be below the cluster size"
    );
    let cluster = planted_cluster_labels(&p);

    let mut w = Witness {
        adj: vec![vec![false; n]; n],
        degree: vec![0; n],
    };
    for block in &blocks {
        for i in 1..block.len() {
            let j = rng.gen_range(0..i);
            w.add(block[i], block[j]);
        }
        for &u in block {
            while w.degree[u] < p.min_degree {
                let free: Vec<VertexId> = block
                    .iter()
                    .copied()
                    .filter(|&v| v != u && !w.adj[u][v])
                    .collect();
                // prefer partners that still need edges themselves
                let needy: Vec<VertexId> = free
                    .iter()
                    .copied()
                    .filter(|&v| w.degree[v] < p.min_degree)
                    .collect();
                let pool = if needy.is_empty() { &free } else { &needy };
                let v = *pool
                    .choose(&mut rng)
                    .expect("min_degree below the cluster size");
                w.add(u, v);
            }
        }
    }
    for pair in blocks.windows(2) {
        let mut added = 0;
        while added < p.bridges.min(pair[0].len() * pair[1].len()) {
            let u = *pair[0].choose(&mut rng).expect("nonempty");
            let v = *pair[1].choose(&mut rng).expect("nonempty");
            if !w.adj[u][v] {
                w.add(u, v);
                added += 1;
            }
        }
    }

    let witness: Vec<(usize, usize)> = pairs(n).filter(|&(u, v)| w.adj[u][v]).collect();
    let noise: Vec<(usize, usize)> = pairs(n)
        .filter(|&(u, v)| {
            !w.adj[u][v] && cluster[u] == cluster[v] && rng.gen_bool(p.extra_edge_rate)
        })
        .collect();
    let graph = Graph::new(n, witness.into_iter().chain(noise)).expect("simple by construction");
    Instance {
        demand: DegreeSpec::new(n, w.degree).expect("degrees below n"),
        graph,
        partition: None,
        expectation: Some(Expectation {
            answer: true,
            provenance: format!("planted witness seed={}", p.seed),
        }),
    }
}

fn cluster_blocks(p: &PlantedParams, rng: &mut ChaCha8Rng) -> Vec<Vec<VertexId>> {
    let mut order: Vec<VertexId> = (0..p.n).collect();
    order.shuffle(rng);
    (0..p.clusters)
        .map(|c| order[c * p.n / p.clusters..(c + 1) * p.n / p.clusters].to_vec())
        .collect()
}

/// Cluster index of every vertex of the instance `gen_planted(p)` builds.
pub fn planted_cluster_labels(p: &PlantedParams) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut label = vec![0; p.n];
    for (c, block) in cluster_blocks(p, &mut rng).iter().enumerate() {
        for &v in block {
            label[v] = c;
        }
    }
    label
}

struct Witness {
    adj: Vec<Vec<bool>>,
    degree: Vec<usize>,
}

impl Witness {
    fn add(&mut self, u: usize, v: usize) {
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        self.degree[u] += 1;
        self.degree[v] += 1;
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// `G(n, p)` with demands drawn uniformly from `1..=min(deg, max_demand)`
/// and adjusted to even total. No expected answer.
pub fn gen_random(n: usize, edge_prob: f64, max_demand: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = pairs(n).filter(|_| rng.gen_bool(edge_prob)).collect();
    let graph = Graph::new(n, edges).expect("simple");
    let mut demand: Vec<usize> = (0..n)
        .map(|v| {
            let top = graph.degree(v).min(max_demand);
            if top == 0 {
                0
            } else {
                rng.gen_range(1..=top)
            }
        })
        .collect();
    if demand.iter().sum::<usize>() % 2 == 1 {
        if let Some(v) = (0..n).find(|&v| demand[v] > 1) {
            demand[v] -= 1;
        } else if let Some(v) = (0..n).find(|&v| demand[v] < graph.degree(v).min(max_demand)) {
            demand[v] += 1;
        }
    }
    Instance {
        demand: DegreeSpec::new(n, demand).expect("demands below n"),
        graph,
        partition: None,
        expectation: None,
    }
}

/// The Hamiltonian-cycle instance for `g`: every vertex `v` gets a clique of
/// `s - 1` new vertices, all joined to `v`; new vertices demand `s - 1` and
/// original ones `s + 1`. The new edges are all forced, so a connected
/// f-factor is a Hamiltonian cycle of `g` plus the cliques.
///
/// Sources small enough for exhaustive search get their expected answer
/// annotated.
pub fn gen_hamiltonian_reduction(g: &Graph, s: usize) -> Instance {
    assert!(s >= 2, "clique parameter must be at least 2");
    let n = g.vertex_count();
    let total = n * s;
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut demand = vec![s + 1; n];
    demand.resize(total, s - 1);
    for v in 0..n {
        let clique: Vec<usize> = (0..s - 1).map(|i| n + v * (s - 1) + i).collect();
        for (i, &x) in clique.iter().enumerate() {
            edges.push((v, x));
            for &y in &clique[i + 1..] {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::new(total, edges).expect("simple by construction");
    let expectation = (n <= MAX_HAMILTONIAN_VERTICES).then(|| Expectation {
        answer: hamiltonian_cycle_brute(g).expect("guarded").is_some(),
        provenance: format!("hamiltonian-cycle search on the {n}-vertex source, s={s}"),
    });
    Instance {
        demand: DegreeSpec::new(total, demand).expect("demands below vertex count"),
        graph,
        partition: None,
        expectation,
    }
}

/// Clique size `2^((z / c1)^(1 / (1 + eps))) / z` used by the asymptotic
/// hardness argument, for a source on `z` vertices. Desk-scale instances
/// pass a small `s` to [`gen_hamiltonian_reduction`] instead.
pub fn asymptotic_clique_size(z: f64, c1: f64, eps: f64) -> f64 {
    2f64.powf((z / c1).powf(1.0 / (1.0 + eps))) / z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_f_factor, FactorSubgraph};
    use crate::lab::oracle::brute_force_cff;

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
        let q3 = hypercube(3);
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn planted_without_noise_is_the_witness() {
        let inst = gen_planted(PlantedParams::new(6, 0.0, 42));
        let g = &inst.graph;
        let h = FactorSubgraph::from_edges(g, 0..g.edge_count()).unwrap();
        assert!(verify_f_factor(g, &inst.demand, &h, None).is_valid_connected());
        assert_eq!(gen_planted(PlantedParams::new(6, 0.0, 42)), inst);
    }

    #[test]
    fn planted_min_degree() {
        let p = PlantedParams {
            min_degree: 10,
            ..PlantedParams::new(30, 0.2, 1)
        };
        let inst = gen_planted(p);
        assert!(inst.demand.min().unwrap() >= 10);
        let two = gen_planted(PlantedParams {
            clusters: 2,
            bridges: 2,
            ..p
        });
        let h = crate::factor::find_f_factor(&two.graph, &two.demand).unwrap();
        assert!(verify_f_factor(&two.graph, &two.demand, &h, None).degrees_match);
    }

    #[test]
    fn planted_annotations_hold_on_small_instances() {
        for seed in 0..60 {
            let inst = gen_planted(PlantedParams::new(3 + (seed as usize % 5), 0.3, seed));
            if inst.graph.edge_count() > 20 {
                continue;
            }
            let found = brute_force_cff(&inst.graph, &inst.demand).unwrap();
            assert_eq!(found.is_some(), inst.expectation.as_ref().unwrap().answer);
        }
    }

    #[test]
    fn random_demands_are_even_and_bounded() {
        for seed in 0..20 {
            let inst = gen_random(8, 0.4, 3, seed);
            assert!(!inst.demand.is_odd() || inst.demand.as_slice().iter().all(|&d| d <= 1));
        }
    }

    #[test]
    fn reduction_shapes() {
        let r = gen_hamiltonian_reduction(&cycle(5), 4);
        assert_eq!(r.graph.vertex_count(), 20);
        // 5 cycle edges, 5 * 3 spokes, 5 * 3 clique edges
        assert_eq!(r.graph.edge_count(), 35);
        assert_eq!(r.demand.get(0), 5);
        assert_eq!(r.demand.get(5), 3);
        assert_eq!(r.expectation.as_ref().map(|e| e.answer), Some(true));

        let k4 = gen_hamiltonian_reduction(&complete(4), 2);
        assert_eq!(k4.graph.vertex_count(), 8);
        assert_eq!(k4.demand.as_slice(), &[3, 3, 3, 3, 1, 1, 1, 1]);
        assert!(brute_force_cff(&k4.graph, &k4.demand).unwrap().is_some());

        let pet = gen_hamiltonian_reduction(&petersen(), 2);
        assert_eq!(pet.graph.vertex_count(), 20);
        assert_eq!(pet.expectation.as_ref().map(|e| e.answer), Some(false));
    }

    #[test]
    fn asymptotic_size_formula() {
        assert!((asymptotic_clique_size(8.0, 2.0, 1.0) - 0.5).abs() < 1e-12);
    }
}
