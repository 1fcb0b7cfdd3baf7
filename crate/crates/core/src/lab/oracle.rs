//! Exhaustive reference solvers for small instances.

use thiserror::Error;

use crate::graph::{
    components, connects, DegreeSpec, EdgeId, FactorSubgraph, Graph, Partition, VertexId,
};

/// Largest edge count the subset enumeration accepts.
pub const MAX_ORACLE_EDGES: usize = 26;
/// Largest vertex count for the Hamiltonian-cycle search.
pub const MAX_HAMILTONIAN_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {0} edges, the oracle accepts at most {MAX_ORACLE_EDGES}")]
    TooManyEdges(usize),
    #[error("instance has {0} vertices, the search accepts at most {MAX_HAMILTONIAN_VERTICES}")]
    TooManyVertices(usize),
}

/// Calls `visit` on every f-factor of `g` (as an edge membership vector)
/// until it returns `true`. Branches on edges in id order and prunes as
/// soon as some vertex can no longer reach its demand.
pub fn for_each_f_factor(
    g: &Graph,
    f: &DegreeSpec,
    mut visit: impl FnMut(&[bool]) -> bool,
) -> Result<bool, OracleError> {
    let m = g.edge_count();
    if m > MAX_ORACLE_EDGES {
        return Err(OracleError::TooManyEdges(m));
    }
    let n = g.vertex_count();
    let residual: Vec<usize> = (0..n).map(|v| f.get(v)).collect();
    let ahead: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    if (0..n).any(|v| residual[v] > ahead[v]) || f.is_odd() {
        return Ok(false);
    }
    let mut state = Enumeration {
        g,
        residual,
        ahead,
        chosen: vec![false; m],
    };
    Ok(state.branch(0, &mut visit))
}

struct Enumeration<'a> {
    g: &'a Graph,
    residual: Vec<usize>,
    ahead: Vec<usize>,
    chosen: Vec<bool>,
}

impl Enumeration<'_> {
    fn branch(&mut self, e: EdgeId, visit: &mut impl FnMut(&[bool]) -> bool) -> bool {
        if e == self.g.edge_count() {
            return self.residual.iter().all(|&r| r == 0) && visit(&self.chosen);
        }
        let (u, v) = self.g.edge(e);
        self.ahead[u] -= 1;
        self.ahead[v] -= 1;
        let mut stop = false;
        if self.residual[u] > 0 && self.residual[v] > 0 {
            self.residual[u] -= 1;
            self.residual[v] -= 1;
            self.chosen[e] = true;
            if self.residual[u] <= self.ahead[u] && self.residual[v] <= self.ahead[v] {
                stop = self.branch(e + 1, visit);
            }
            self.chosen[e] = false;
            self.residual[u] += 1;
            self.residual[v] += 1;
        }
        if !stop && self.residual[u] <= self.ahead[u] && self.residual[v] <= self.ahead[v] {
            stop = self.branch(e + 1, visit);
        }
        self.ahead[u] += 1;
        self.ahead[v] += 1;
        stop
    }
}

fn first_factor<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    accept: impl Fn(&FactorSubgraph<'g>) -> bool,
) -> Result<Option<FactorSubgraph<'g>>, OracleError> {
    let mut found = None;
    for_each_f_factor(g, f, |members| {
        let h = FactorSubgraph::from_edges(g, (0..members.len()).filter(|&e| members[e]))
            .expect("edge ids come from the host");
        if accept(&h) {
            found = Some(h);
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

/// The first connected f-factor in enumeration order, or `None`.
pub fn brute_force_cff<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
) -> Result<Option<FactorSubgraph<'g>>, OracleError> {
    first_factor(g, f, |h| components(h).len() <= 1)
}

/// The first f-factor whose quotient by `q` is connected, or `None`.
pub fn brute_force_pc<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    q: &Partition,
) -> Result<Option<FactorSubgraph<'g>>, OracleError> {
    first_factor(g, f, |h| connects(h, q))
}

/// A Hamiltonian cycle of `g` as a vertex sequence starting at 0, found by
/// depth-first search.
pub fn hamiltonian_cycle_brute(g: &Graph) -> Result<Option<Vec<VertexId>>, OracleError> {
    let n = g.vertex_count();
    if n > MAX_HAMILTONIAN_VERTICES {
        return Err(OracleError::TooManyVertices(n));
    }
    if n < 3 {
        return Ok(None);
    }
    fn extend(g: &Graph, path: &mut Vec<VertexId>, on_path: &mut [bool]) -> bool {
        let last = *path.last().expect("path starts at 0");
        if path.len() == g.vertex_count() {
            return g.edge_id(last, 0).is_some();
        }
        for &(w, _) in g.incident(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if extend(g, path, on_path) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut path = vec![0];
    let mut on_path = vec![false; n];
    on_path[0] = true;
    Ok(extend(g, &mut path, &mut on_path).then_some(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::generate::{complete, cycle, petersen};

    #[test]
    fn cycle_is_its_own_two_factor() {
        let g = cycle(4);
        let h = brute_force_cff(&g, &DegreeSpec::uniform(4, 2).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn parity_rules_out_triangle_matching() {
        let g = complete(3);
        assert!(brute_force_cff(&g, &DegreeSpec::uniform(3, 1).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn petersen_has_two_factors_but_none_connected() {
        let g = petersen();
        let f = DegreeSpec::uniform(10, 2).unwrap();
        let mut count = 0;
        for_each_f_factor(&g, &f, |_| {
            count += 1;
            false
        })
        .unwrap();
        // the 2-factors of the Petersen graph are its six pairs of 5-cycles
        assert_eq!(count, 6);
        assert!(brute_force_cff(&g, &f).unwrap().is_none());
        assert!(hamiltonian_cycle_brute(&g).unwrap().is_none());
    }

    #[test]
    fn k4_two_factors_are_its_three_hamiltonian_cycles() {
        let g = complete(4);
        let mut count = 0;
        for_each_f_factor(&g, &DegreeSpec::uniform(4, 2).unwrap(), |_| {
            count += 1;
            false
        })
        .unwrap();
        assert_eq!(count, 3);
    }

    #[test]
    fn partition_connector_oracle() {
        let tri = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        let apart = Graph::new(6, tri).unwrap();
        let joined = Graph::new(6, tri.into_iter().chain([(0, 3), (1, 4), (2, 5)])).unwrap();
        let f = DegreeSpec::uniform(6, 2).unwrap();
        let q = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(brute_force_pc(&apart, &f, &q).unwrap().is_none());
        let h = brute_force_pc(&joined, &f, &q).unwrap().unwrap();
        assert!(connects(&h, &q));
        assert!(brute_force_pc(&apart, &f, &Partition::whole(6))
            .unwrap()
            .is_some());
    }

    #[test]
    fn guards() {
        let g = complete(8);
        assert_eq!(
            brute_force_cff(&g, &DegreeSpec::uniform(8, 2).unwrap()).unwrap_err(),
            OracleError::TooManyEdges(28)
        );
        assert!(hamiltonian_cycle_brute(&cycle(20)).is_err());
        assert_eq!(
            hamiltonian_cycle_brute(&cycle(5)).unwrap().unwrap().len(),
            5
        );
    }
}
