//! Line-oriented text formats for instances and factors.
//!
//! ```text
//! c any comment
//! p cff <n> <m>
//! c expect yes|no <provenance>
//! v <id> <demand>
//! e <u> <v>
//! q <part> <id>
//! ```
//!
//! Vertex ids are 0-based. Demand lines may be omitted (demand 0). Partition
//! lines are optional but, when present, must cover every vertex. A factor
//! file holds `f <u> <v>` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{DegreeSpec, FactorSubgraph, Graph, GraphError, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub answer: bool,
    /// Where the answer comes from (an oracle run or a generator guarantee).
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub demand: DegreeSpec,
    pub partition: Option<Partition>,
    pub expectation: Option<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p cff <n> <m>` header")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N], FormatError> {
    if fields.len() != N {
        return Err(syntax(
            line,
            format!("expected {N} numbers, got {}", fields.len()),
        ));
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| syntax(line, format!("`{field}` is not a non-negative integer")))?;
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut demand: Vec<Option<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut expectation = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        if tag == "c" {
            if rest.first() == Some(&"expect") {
                let answer = match rest.get(1) {
                    Some(&"yes") => true,
                    Some(&"no") => false,
                    _ => return Err(syntax(line, "expected `c expect yes|no <provenance>`")),
                };
                expectation = Some(Expectation {
                    answer,
                    provenance: rest[2..].join(" "),
                });
            }
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(syntax(line, "duplicate header"));
            }
            if rest.first() != Some(&"cff") {
                return Err(syntax(line, "expected `p cff <n> <m>`"));
            }
            let [n, m] = numbers::<2>(line, &rest[1..])?;
            header = Some((n, m));
            demand = vec![None; n];
            continue;
        }
        let (n, _) = header.ok_or(FormatError::MissingHeader)?;
        match tag {
            "v" => {
                let [v, d] = numbers::<2>(line, rest)?;
                if v >= n {
                    return Err(syntax(line, format!("vertex {v} out of range")));
                }
                if demand[v].replace(d).is_some() {
                    return Err(syntax(line, format!("second demand for vertex {v}")));
                }
            }
            "e" => {
                let [u, v] = numbers::<2>(line, rest)?;
                edges.push((u, v));
            }
            "q" => {
                let [p, v] = numbers::<2>(line, rest)?;
                parts.entry(p).or_default().push(v);
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }

    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = Graph::new(n, edges)?;
    let demand = DegreeSpec::new(n, demand.into_iter().map(|d| d.unwrap_or(0)).collect())?;
    let partition = if parts.is_empty() {
        None
    } else {
        Some(Partition::new(n, parts.into_values().collect())?)
    };
    Ok(Instance {
        graph,
        demand,
        partition,
        expectation,
    })
}

pub fn emit_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p cff {} {}", g.vertex_count(), g.edge_count()).unwrap();
    if let Some(x) = &inst.expectation {
        let answer = if x.answer { "yes" } else { "no" };
        writeln!(out, "c expect {answer} {}", x.provenance).unwrap();
    }
    for v in 0..g.vertex_count() {
        writeln!(out, "v {v} {}", inst.demand.get(v)).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    if let Some(q) = &inst.partition {
        for (i, part) in q.parts().iter().enumerate() {
            for v in part {
                writeln!(out, "q {i} {v}").unwrap();
            }
        }
    }
    out
}

pub fn parse_factor<'g>(text: &str, g: &'g Graph) -> Result<FactorSubgraph<'g>, FormatError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.split_first() {
            None => {}
            Some((&"c", _)) => {}
            Some((&"f", rest)) => {
                let [u, v] = numbers::<2>(i + 1, rest)?;
                pairs.push((u, v));
            }
            Some((other, _)) => {
                return Err(syntax(i + 1, format!("unknown line type `{other}`")));
            }
        }
    }
    Ok(FactorSubgraph::from_pairs(g, pairs)?)
}

/// Reads a standalone partition file of `q <part> <id>` lines for a graph
/// on `n` vertices.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, FormatError> {
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.split_first() {
            None | Some((&"c", _)) => {}
            Some((&"q", rest)) => {
                let [p, v] = numbers::<2>(i + 1, rest)?;
                parts.entry(p).or_default().push(v);
            }
            Some((other, _)) => {
                return Err(syntax(i + 1, format!("unknown line type `{other}`")));
            }
        }
    }
    Ok(Partition::new(n, parts.into_values().collect())?)
}

pub fn emit_factor(h: &FactorSubgraph<'_>) -> String {
    let mut out = String::new();
    for (u, v) in h.edge_pairs() {
        writeln!(out, "f {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::generate::{gen_planted, PlantedParams};

    const SAMPLE: &str = "c two triangles joined by a matching\n\
        p cff 6 9\n\
        c expect yes brute force\n\
        v 0 2\nv 1 2\nv 2 2\nv 3 2\nv 4 2\nv 5 2\n\
        e 0 1\ne 1 2\ne 0 2\ne 3 4\ne 4 5\ne 3 5\ne 0 3\ne 1 4\ne 2 5\n\
        q 0 0\nq 0 1\nq 0 2\nq 1 3\nq 1 4\nq 1 5\n";

    #[test]
    fn parses_sample() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(inst.graph.edge_count(), 9);
        assert_eq!(inst.demand.total(), 12);
        assert_eq!(inst.partition.as_ref().unwrap().len(), 2);
        assert_eq!(inst.expectation.as_ref().unwrap().provenance, "brute force");
    }

    #[test]
    fn round_trips() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
        let text = emit_instance(&inst);
        assert_eq!(emit_instance(&parse_instance(&text).unwrap()), text);
        for seed in 0..20 {
            let p = gen_planted(PlantedParams::new(9, 0.3, seed));
            assert_eq!(parse_instance(&emit_instance(&p)).unwrap(), p);
        }
    }

    #[test]
    fn reports_errors() {
        assert_eq!(
            parse_instance("e 0 1\n").unwrap_err(),
            FormatError::MissingHeader
        );
        assert!(matches!(
            parse_instance("p cff 2 1\ne 0 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("p cff 2 2\ne 0 1\n"),
            Err(FormatError::EdgeCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_instance("p cff 2 1\ne 0 0\n"),
            Err(FormatError::Graph(GraphError::SelfLoop(0)))
        ));
        assert!(parse_instance("p cff 3 0\nq 0 0\nq 1 1\n").is_err());
    }

    #[test]
    fn factor_files() {
        let inst = parse_instance(SAMPLE).unwrap();
        let h = parse_factor("f 0 1\nf 3 0\n", &inst.graph).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(parse_factor(&emit_factor(&h), &inst.graph).unwrap(), h);
        assert!(parse_factor("f 0 5\n", &inst.graph).is_err());
    }

    #[test]
    fn partition_files() {
        let q = parse_partition("c halves\nq 0 0\nq 0 1\nq 1 2\n", 3).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.part_of(2), 1);
        assert!(parse_partition("q 0 0\n", 3).is_err());
        assert!(parse_partition("x 0 0\n", 1).is_err());
    }
}
