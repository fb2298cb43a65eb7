//! Pairwise conflicts between assignments and the conflict graph over a set
//! of assignments. Independent sets of the graph are exactly the valid
//! solutions that can be built from its vertices.

use std::collections::HashSet;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::mis::{BitGraph, Budget, MisResult, MisSolver};
use crate::model::{ArcSet, Assignment, Instance, Solution};

/// True iff `a` and `b` cannot both be part of a valid solution: they are not
/// strictly increasing in both coordinates, or exactly one of the two induced
/// position pairs is an arc.
pub fn in_conflict(a: Assignment, b: Assignment, px: &ArcSet, py: &ArcSet) -> Result<bool> {
    if a == b {
        return Err(Error::SameAssignment(a, b));
    }
    Ok(conflicts(a, b, px, py))
}

#[inline]
pub(crate) fn conflicts(a: Assignment, b: Assignment, px: &ArcSet, py: &ArcSet) -> bool {
    let (a, b) = if a.i <= b.i { (a, b) } else { (b, a) };
    if a.i == b.i || a.j >= b.j {
        return true;
    }
    px.contains(a.i, b.i) != py.contains(a.j, b.j)
}

#[derive(Debug, Clone)]
pub struct ConflictGraph {
    vertices: Vec<Assignment>,
    graph: BitGraph,
}

impl ConflictGraph {
    pub fn vertices(&self) -> &[Assignment] {
        &self.vertices
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Vertex indices by ascending `i`, then descending `j`. Coloring in this
    /// order partitions pure order conflicts into the fewest cliques.
    pub fn coloring_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| {
            let a = self.vertices[v];
            (a.i, std::cmp::Reverse(a.j))
        });
        order
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.graph.is_independent(set)
    }

    pub fn solution_of(&self, set: &[usize]) -> Solution {
        set.iter().map(|&v| self.vertices[v]).collect()
    }

    /// Largest valid solution among the vertices found within `budget`,
    /// never smaller than the part of `incumbent` that lies in the graph.
    pub fn max_valid_subset(&self, budget: Budget, incumbent: &Solution) -> (Solution, MisResult) {
        let start: Vec<usize> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, &a)| incumbent.contains(a))
            .map(|(v, _)| v)
            .collect();
        let result = MisSolver::new(&self.graph, budget)
            .with_order(self.coloring_order())
            .with_incumbent(&start)
            .solve();
        (self.solution_of(&result.best_set), result)
    }

    /// Edge list, one `u v` pair of 0-based vertex indices per line.
    pub fn write_edge_list<W: Write>(&self, out: W) -> io::Result<()> {
        self.graph.write_edge_list(out)
    }
}

/// Conflict graph over `vars`, vertex `k` being `vars[k]`.
pub fn build_conflict_graph(vars: &[Assignment], instance: &Instance) -> Result<ConflictGraph> {
    let mut seen = HashSet::with_capacity(vars.len());
    for &a in vars {
        instance.check_assignment(a)?;
        if !seen.insert(a) {
            return Err(Error::DuplicateAssignment(a));
        }
    }
    let (px, py) = (instance.x.arcs(), instance.y.arcs());
    let mut graph = BitGraph::new(vars.len());
    for (u, &a) in vars.iter().enumerate() {
        for (v, &b) in vars.iter().enumerate().skip(u + 1) {
            if conflicts(a, b, px, py) {
                graph.add_edge(u, v);
            }
        }
    }
    Ok(ConflictGraph {
        vertices: vars.to_vec(),
        graph,
    })
}
