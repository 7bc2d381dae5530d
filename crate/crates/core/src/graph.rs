//! Finite connected unit-edge graphs and breadth-first distance queries.

use std::collections::VecDeque;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite connected graph with unit edge lengths and opaque vertex labels.
///
/// Invariants enforced at construction: at least one vertex, no self-loops,
/// no duplicate edges, connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    labels: Vec<String>,
    adj: Vec<Vec<u32>>,
}

impl BaseGraph {
    pub fn new(labels: Vec<String>, edges: &[(u32, u32)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be >= 1".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex >= {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let graph = BaseGraph { labels, adj };
        if let Some(unreached) = graph.first_unreachable(0) {
            return Err(Error::InvalidGraph(format!(
                "graph is disconnected (vertex {unreached} unreachable from 0)"
            )));
        }
        Ok(graph)
    }

    /// The path 0 - 1 - ... - n with n+1 vertices.
    pub fn path(n: u32) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, i + 1)).collect();
        BaseGraph::new(labels, &edges).expect("path is always a valid graph")
    }

    /// The cycle on n vertices (n >= 3).
    pub fn cycle(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("cycle needs at least 3 vertices".into()));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        BaseGraph::new(labels, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// All edges as (min, max) pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    fn first_unreachable(&self, start: u32) -> Option<u32> {
        let dist = bfs_distances(&self.adj, start);
        dist.iter()
            .position(|&d| d == UNREACHED)
            .map(|i| i as u32)
    }

    /// Breadth-first distances from `v`; the graph is connected so every
    /// entry is finite.
    pub fn distances_from(&self, v: u32) -> Vec<u32> {
        bfs_distances(&self.adj, v)
    }

    /// Full all-pairs distance table, row-major. Quadratic memory; callers
    /// gate the size.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_adjacency(&self.adj)
    }
}

pub(crate) const UNREACHED: u32 = u32::MAX;

pub(crate) fn bfs_distances(adj: &[Vec<u32>], start: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHED; adj.len()];
    dist[start as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in &adj[u as usize] {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Row-major all-pairs distance table.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub(crate) fn from_adjacency(adj: &[Vec<u32>]) -> Self {
        let n = adj.len();
        let mut data = vec![0u32; n * n];
        for s in 0..n {
            let d = bfs_distances(adj, s as u32);
            data[s * n..(s + 1) * n].copy_from_slice(&d);
        }
        DistanceMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, v: u32) -> &[u32] {
        &self.data[v as usize * self.n..(v as usize + 1) * self.n]
    }

    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.data[u as usize * self.n + v as usize]
    }
}

/// Anonymous unit-edge graph used by the hyperbolicity scans and by graph
/// materialization. Unlike [`BaseGraph`] it carries no labels and does not
/// insist on connectivity; queries that need a path report
/// [`Error::DisconnectedPair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGraph {
    adj: Vec<Vec<u32>>,
}

impl UnitGraph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        UnitGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn distances_from(&self, v: u32) -> Vec<u32> {
        bfs_distances(&self.adj, v)
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_adjacency(&self.adj)
    }
}

impl From<&BaseGraph> for UnitGraph {
    fn from(g: &BaseGraph) -> Self {
        UnitGraph {
            adj: g.adj.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BaseGraphJson {
    vertices: Vec<String>,
    edges: Vec<(u32, u32)>,
}

impl Serialize for BaseGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BaseGraphJson {
            vertices: self.labels.clone(),
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BaseGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BaseGraphJson::deserialize(deserializer)?;
        BaseGraph::new(raw.vertices, &raw.edges).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_duplicates_and_disconnection() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(BaseGraph::new(labels(2), &[(0, 0)]).is_err());
        assert!(BaseGraph::new(labels(2), &[(0, 1), (1, 0)]).is_err());
        assert!(BaseGraph::new(labels(3), &[(0, 1)]).is_err());
        assert!(BaseGraph::new(vec![], &[]).is_err());
        assert!(BaseGraph::new(labels(1), &[]).is_ok());
    }

    #[test]
    fn path_distances_match_index_gap() {
        let p = BaseGraph::path(16);
        let d = p.distances_from(0);
        for (i, &di) in d.iter().enumerate() {
            assert_eq!(di as usize, i);
        }
        let m = p.distance_matrix();
        assert_eq!(m.get(3, 11), 8);
    }

    #[test]
    fn json_round_trip() {
        let p = BaseGraph::path(4);
        let s = serde_json::to_string(&p).unwrap();
        let back: BaseGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        assert!(s.contains("\"vertices\""));
    }
}
