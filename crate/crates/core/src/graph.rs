//! Coprime graphs: elements are vertices, and `x ~ y` iff `gcd(|x|, |y|) = 1`.
//!
//! Adjacency depends only on element orders, so the graph is stored as the
//! multiset of orders ("order classes") plus a class-level adjacency matrix.
//! Vertex-level queries expand from that.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::numtheory::{gcd, rad};
use crate::perm::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("degenerate group: the query needs at least two elements")]
    DegenerateGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeGraph {
    label: String,
    vertex_orders: Vec<u64>,
    /// Distinct element orders, ascending, with their multiplicities.
    classes: Vec<(u64, usize)>,
    class_of: BTreeMap<u64, usize>,
    class_adjacent: Vec<Vec<bool>>,
}

/// End vertices of a coprime graph, identity excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndVertexReport {
    pub label: String,
    pub end_vertices: Vec<usize>,
    pub count: usize,
    /// Order of each end vertex, ascending.
    pub end_vertex_orders: Vec<u64>,
    pub is_star: bool,
    pub rad_of_group: u64,
}

pub fn build_graph(group: &FiniteGroup) -> CoprimeGraph {
    CoprimeGraph::from_orders(group.label(), group.element_orders().to_vec())
}

impl CoprimeGraph {
    /// Graph on vertices with the given element orders; vertex 0 must be the
    /// identity.
    pub fn from_orders(label: impl Into<String>, vertex_orders: Vec<u64>) -> Self {
        debug_assert!(vertex_orders.first().is_none_or(|&o| o == 1));
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &o in &vertex_orders {
            *counts.entry(o).or_default() += 1;
        }
        let classes: Vec<(u64, usize)> = counts.into_iter().collect();
        let class_of = classes
            .iter()
            .enumerate()
            .map(|(i, &(o, _))| (o, i))
            .collect();
        let class_adjacent = classes
            .iter()
            .map(|&(m, _)| classes.iter().map(|&(n, _)| gcd(m, n) == 1).collect())
            .collect();
        CoprimeGraph {
            label: label.into(),
            vertex_orders,
            classes,
            class_of,
            class_adjacent,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_orders.len()
    }

    pub fn vertex_orders(&self) -> &[u64] {
        &self.vertex_orders
    }

    /// `(order, vertex count)` per order class, ascending by order.
    pub fn order_classes(&self) -> &[(u64, usize)] {
        &self.classes
    }

    pub fn classes_adjacent(&self, m: u64, n: u64) -> bool {
        match (self.class_of.get(&m), self.class_of.get(&n)) {
            (Some(&i), Some(&j)) => self.class_adjacent[i][j],
            _ => gcd(m, n) == 1,
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.classes_adjacent(self.vertex_orders[u], self.vertex_orders[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        let i = self.class_of[&self.vertex_orders[v]];
        let total: usize = self
            .classes
            .iter()
            .enumerate()
            .filter(|&(j, _)| self.class_adjacent[i][j])
            .map(|(_, &(_, count))| count)
            .sum();
        // only the identity class is adjacent to itself, and a vertex is not
        // its own neighbour
        if self.class_adjacent[i][i] {
            total - 1
        } else {
            total
        }
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted, expanded from the
    /// class adjacency.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); self.classes.len()];
        for (v, o) in self.vertex_orders.iter().enumerate() {
            members[self.class_of[o]].push(v);
        }
        let mut edges = Vec::new();
        for i in 0..self.classes.len() {
            for j in i..self.classes.len() {
                if !self.class_adjacent[i][j] {
                    continue;
                }
                for &u in &members[i] {
                    for &v in &members[j] {
                        if (i != j && u != v) || (i == j && u < v) {
                            edges.push((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    pub fn end_vertices(&self) -> EndVertexReport {
        let end_vertices: Vec<usize> = (1..self.num_vertices())
            .filter(|&v| self.degree(v) == 1)
            .collect();
        let mut end_vertex_orders: Vec<u64> = end_vertices
            .iter()
            .map(|&v| self.vertex_orders[v])
            .collect();
        end_vertex_orders.sort_unstable();
        EndVertexReport {
            label: self.label.clone(),
            count: end_vertices.len(),
            end_vertices,
            end_vertex_orders,
            is_star: self.is_star().unwrap_or(false),
            rad_of_group: rad(self.num_vertices().max(1) as u64),
        }
    }

    /// Whether the graph is `K_{1, n-1}`.
    pub fn is_star(&self) -> Result<bool, GraphError> {
        let n = self.num_vertices();
        if n < 2 {
            return Err(GraphError::DegenerateGroup);
        }
        // the identity is always the centre; a star has no other edges
        Ok(self.degree(0) == n - 1 && (1..n).all(|v| self.degree(v) == 1))
    }

    /// Diameter, by breadth-first search over order classes.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.num_vertices() < 2 {
            return Err(GraphError::DegenerateGroup);
        }
        let k = self.classes.len();
        let mut diameter = 0;
        for start in 0..k {
            let mut dist = vec![usize::MAX; k];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                for d in 0..k {
                    if c != d && self.class_adjacent[c][d] && dist[d] == usize::MAX {
                        dist[d] = dist[c] + 1;
                        queue.push_back(d);
                    }
                }
            }
            for (other, &d) in dist.iter().enumerate() {
                let pair = if other == start {
                    if self.classes[start].1 < 2 {
                        continue;
                    }
                    if self.class_adjacent[start][start] {
                        1
                    } else {
                        // two vertices of one class meet through a neighbouring class
                        (0..k)
                            .filter(|&d2| d2 != start && self.class_adjacent[start][d2])
                            .map(|_| 2)
                            .min()
                            .unwrap_or(usize::MAX)
                    }
                } else {
                    d
                };
                diameter = diameter.max(pair);
            }
        }
        Ok(diameter)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            edges: Vec<[usize; 2]>,
            label: &'a str,
            orders: &'a [u64],
        }
        let export = Export {
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            label: &self.label,
            orders: &self.vertex_orders,
        };
        serde_json::to_string(&export).expect("plain data serializes")
    }

    pub fn to_dot(&self) -> String {
        let report = self.end_vertices();
        let mut is_end = vec![false; self.num_vertices()];
        for &v in &report.end_vertices {
            is_end[v] = true;
        }
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.label.replace('"', "\\\""));
        for (v, o) in self.vertex_orders.iter().enumerate() {
            let mark = if is_end[v] {
                ", shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(out, "  {v} [label=\"{v}:{o}\"{mark}];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

pub fn export(graph: &CoprimeGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => graph.to_dot(),
        ExportFormat::Json => graph.to_json(),
    }
}

/// Quadratic pairwise-gcd edge list; the reference the class-compressed
/// representation is checked against.
pub fn brute_force_edges(orders: &[u64]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..orders.len() {
        for v in u + 1..orders.len() {
            if gcd(orders[u], orders[v]) == 1 {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// All-pairs shortest-path diameter on the explicit graph.
pub fn brute_force_diameter(orders: &[u64]) -> Option<usize> {
    let n = orders.len();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in brute_force_edges(orders) {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut diameter = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        diameter = diameter.max(*dist.iter().max()?);
    }
    Some(diameter)
}
