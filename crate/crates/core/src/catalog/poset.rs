use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::budget::Budgets;
use crate::catalog::{catalog_classes, oracle_degenerates, thm31_witness, CMClass};
use crate::degeneration::verify_witness_with;
use crate::error::{Error, Result};
use crate::report::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Theorem,
    Witness,
    Extension,
    Zwara,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Theorem => "theorem",
            Provenance::Witness => "witness",
            Provenance::Extension => "extension",
            Provenance::Zwara => "zwara",
        }
    }
}

fn as_label<S: Serializer>(c: &CMClass, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(c)
}

fn as_labels<S: Serializer>(cs: &[CMClass], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(|c| c.label()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PosetEdge {
    #[serde(serialize_with = "as_label")]
    pub src: CMClass,
    #[serde(serialize_with = "as_label")]
    pub dst: CMClass,
    pub provenance: Provenance,
}

/// Catalog classes ordered by established degenerations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetGraph {
    pub dim: u8,
    #[serde(serialize_with = "as_labels")]
    pub nodes: Vec<CMClass>,
    pub edges: Vec<PosetEdge>,
    pub hasse: Vec<PosetEdge>,
}

/// Reachability matrix of the relation `edges` on `n` nodes, reflexive
/// pairs excluded unless on a cycle.
pub fn transitive_closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Edges of an acyclic relation not implied by a path of length two in
/// its closure, in input order.
pub fn transitive_reduction(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let reach = transitive_closure(n, edges);
    edges
        .iter()
        .copied()
        .filter(|&(a, b)| !(0..n).any(|k| k != a && k != b && reach[a][k] && reach[k][b]))
        .collect()
}

impl PosetGraph {
    fn index(&self, c: &CMClass) -> Option<usize> {
        self.nodes.iter().position(|n| n == c)
    }

    fn recompute_hasse(&mut self) {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (self.index(&e.src).expect("node"), self.index(&e.dst).expect("node")))
            .collect();
        let kept = transitive_reduction(self.nodes.len(), &pairs);
        self.hasse = self
            .edges
            .iter()
            .zip(&pairs)
            .filter(|(_, p)| kept.contains(p))
            .map(|(e, _)| *e)
            .collect();
    }

    /// Adds an externally certified edge; edges the oracle forbids are
    /// rejected.
    pub fn add_edge(&mut self, edge: PosetEdge) -> Result<()> {
        if self.index(&edge.src).is_none() || self.index(&edge.dst).is_none() {
            return Err(Error::Precondition(format!("{} -> {} leaves the node set", edge.src, edge.dst)));
        }
        if oracle_degenerates(&edge.src, &edge.dst)? == Verdict::No {
            return Err(Error::Precondition(format!("the oracle forbids {} -> {}", edge.src, edge.dst)));
        }
        if !self.edges.iter().any(|e| e.src == edge.src && e.dst == edge.dst) {
            self.edges.push(edge);
            self.recompute_hasse();
        }
        Ok(())
    }

    /// Closure of the Hasse edges as `(src, dst)` pairs.
    pub fn hasse_closure(&self) -> Vec<(CMClass, CMClass)> {
        let pairs: Vec<(usize, usize)> = self
            .hasse
            .iter()
            .map(|e| (self.index(&e.src).expect("node"), self.index(&e.dst).expect("node")))
            .collect();
        let reach = transitive_closure(self.nodes.len(), &pairs);
        let mut out = Vec::new();
        for (i, row) in reach.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r {
                    out.push((self.nodes[i], self.nodes[j]));
                }
            }
        }
        out
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph degenerations {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", n.label());
        }
        for e in &self.hasse {
            let (a, b) = (self.index(&e.src).expect("node"), self.index(&e.dst).expect("node"));
            let _ = writeln!(s, "  n{a} -> n{b} [provenance=\"{}\"];", e.provenance.name());
        }
        s.push_str("}\n");
        s
    }
}

/// [`build_poset_with`] with default budgets, verifying sequentially.
pub fn build_poset(dim: u8, n_max: u32) -> Result<PosetGraph> {
    build_poset_with(dim, n_max, None, &Budgets::default())
}

/// Nodes are the catalog classes up to `n_max`; edges are the oracle's
/// positive pairs, each dimension-one edge backed by a verified chain
/// witness. With `jobs`, witnesses are verified on that many threads.
pub fn build_poset_with(dim: u8, n_max: u32, jobs: Option<usize>, budgets: &Budgets) -> Result<PosetGraph> {
    let nodes = catalog_classes(dim, n_max)?;
    let mut candidates = Vec::new();
    for a in &nodes {
        for b in &nodes {
            if a != b && oracle_degenerates(a, b)? == Verdict::Yes {
                candidates.push((*a, *b));
            }
        }
    }
    let check = |&(a, b): &(CMClass, CMClass)| -> Result<PosetEdge> {
        let (Some(i), Some(j)) = (a.chain_index(), b.chain_index()) else {
            return Ok(PosetEdge {
                src: a,
                dst: b,
                provenance: Provenance::Theorem,
            });
        };
        let report = verify_witness_with(&thm31_witness(i, j)?, budgets)?;
        if report.verdict != Verdict::Valid {
            return Err(Error::Precondition(format!("witness {a} -> {b} did not verify: {:?}", report.checks)));
        }
        Ok(PosetEdge {
            src: a,
            dst: b,
            provenance: Provenance::Witness,
        })
    };
    let edges: Vec<PosetEdge> = match jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            pool.install(|| candidates.par_iter().map(check).collect::<Result<_>>())?
        }
        _ => candidates.iter().map(check).collect::<Result<_>>()?,
    };
    let mut g = PosetGraph {
        dim,
        nodes,
        edges,
        hasse: Vec::new(),
    };
    g.recompute_hasse();
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(a: u32, b: u32) -> (CMClass, CMClass) {
        (CMClass::from_chain_index(a), CMClass::from_chain_index(b))
    }

    #[test]
    fn dim1_hasse_is_parity_chains() {
        let g = build_poset(1, 5).unwrap();
        let hasse: Vec<(CMClass, CMClass)> = g.hasse.iter().map(|e| (e.src, e.dst)).collect();
        let mut expected = vec![chain(0, 2), chain(2, 4), chain(1, 3), chain(3, 5)];
        expected.sort();
        let mut got = hasse.clone();
        got.sort();
        assert_eq!(got, expected);
        assert!(g.edges.iter().all(|e| e.provenance == Provenance::Witness));
        assert!(g.to_dot().contains("[provenance=\"witness\"]"));
    }

    #[test]
    fn closure_of_hasse_is_the_oracle() {
        let g = build_poset_with(1, 6, Some(2), &Budgets::default()).unwrap();
        let mut closure = g.hasse_closure();
        closure.sort();
        let mut oracle = Vec::new();
        for a in &g.nodes {
            for b in &g.nodes {
                if a != b && oracle_degenerates(a, b).unwrap() == Verdict::Yes {
                    oracle.push((*a, *b));
                }
            }
        }
        oracle.sort();
        assert_eq!(closure, oracle);
    }

    #[test]
    fn small_and_dim2_posets() {
        let g = build_poset(1, 1).unwrap();
        assert!(g.edges.is_empty());
        let g2 = build_poset(2, 5).unwrap();
        assert!(g2.edges.is_empty());
        assert_eq!(g2.nodes.len(), 13);
    }

    #[test]
    fn forbidden_edge_rejected() {
        let mut g = build_poset(1, 3).unwrap();
        let (a, b) = chain(1, 2);
        let bad = PosetEdge {
            src: a,
            dst: b,
            provenance: Provenance::Extension,
        };
        assert!(g.add_edge(bad).is_err());
    }

    #[test]
    fn reduction_drops_implied_edges() {
        assert_eq!(transitive_reduction(3, &[(0, 1), (1, 2), (0, 2)]), vec![(0, 1), (1, 2)]);
    }
}
