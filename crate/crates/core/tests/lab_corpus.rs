use factorforge::graph::verify_f_factor;
use factorforge::lab::format::{emit_instance, parse_instance};
use factorforge::lab::generate::{
    complete, cycle, gen_hamiltonian_reduction, gen_planted, gen_random, hypercube, petersen,
    PlantedParams,
};
use factorforge::lab::oracle::{brute_force_cff, hamiltonian_cycle_brute};
use factorforge::lab::solve::{solve_instance, Algorithm, Answer, SolveOptions};
use factorforge::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det() -> SolveOptions {
    SolveOptions {
        algorithm: Algorithm::Det,
        ..SolveOptions::default()
    }
}

#[test]
fn planted_annotations_hold_under_exhaustive_search() {
    let mut checked = 0;
    for seed in 0..500 {
        let n = 3 + (seed % 6) as usize;
        let inst = gen_planted(PlantedParams::new(n, 0.25, seed));
        assert!(inst.expectation.as_ref().unwrap().answer);
        if inst.graph.edge_count() > 26 {
            continue;
        }
        checked += 1;
        assert!(
            brute_force_cff(&inst.graph, &inst.demand)
                .unwrap()
                .is_some(),
            "seed {seed}"
        );
    }
    assert!(checked >= 450);
}

#[test]
fn zero_noise_plants_the_only_factor() {
    for seed in 0..20 {
        let inst = gen_planted(PlantedParams::new(10, 0.0, seed));
        let g = &inst.graph;
        // f = d_G, so the whole graph is the only f-factor
        assert!((0..10).all(|v| inst.demand.get(v) == g.degree(v)));
        let report = solve_instance(&inst, &det()).unwrap();
        assert_eq!(report.factor.unwrap().len(), g.edge_count());
    }
}

#[test]
fn instance_files_round_trip() {
    for seed in 0..50 {
        let inst = gen_random(9, 0.4, 4, seed);
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(emit_instance(&back), text);
    }
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::new(n, edges).unwrap()
}

#[test]
fn reduction_matches_cycle_search_on_small_sources() {
    let mut sources = vec![cycle(4), complete(4), complete(5), hypercube(3), petersen()];
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    sources.extend((0..25).map(|i| random_graph(4 + i % 4, &mut rng)));
    for (i, g) in sources.iter().enumerate() {
        let truth = hamiltonian_cycle_brute(g).unwrap().is_some();
        for s in [2, 3] {
            let inst = gen_hamiltonian_reduction(g, s);
            assert_eq!(inst.expectation.as_ref().unwrap().answer, truth);
            let report = solve_instance(&inst, &det()).unwrap();
            assert_eq!(report.answer == Answer::Yes, truth, "source {i}, s={s}");
            if let Some(h) = &report.factor {
                assert!(verify_f_factor(&inst.graph, &inst.demand, h, None).is_valid_connected());
            }
        }
    }
}

#[test]
fn reduction_sizes() {
    let inst = gen_hamiltonian_reduction(&cycle(5), 4);
    assert_eq!(inst.graph.vertex_count(), 20);
    let inst = gen_hamiltonian_reduction(&complete(4), 2);
    assert_eq!(inst.graph.vertex_count(), 8);
    assert_eq!((4..8).map(|v| inst.demand.get(v)).max(), Some(1));
}
