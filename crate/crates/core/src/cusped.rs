//! Truncated cusped spaces: a Cayley ball with a combinatorial horoball glued
//! onto every coset of a peripheral subgroup.
//!
//! Cosets are computed inside the ball by closing under right multiplication
//! by the peripheral generators; each coset's horoball is built over the
//! induced subgraph of that coset, with level-0 vertices identified with the
//! coset vertices of the core.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Capacity, Error, Result};
use crate::graph::{BaseGraph, DistanceMatrix, UnitGraph};
use crate::groups::{cayley_ball, reduce_word, CayleyBall, PresentationFamily, Word};
use crate::scaling::{validate_scaling, ScalingFunction};

/// Generating words of the peripheral subgroup, over the ambient generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralSpec {
    pub generators: Vec<Word>,
}

impl PeripheralSpec {
    pub fn new(generators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParams(
                "peripheral subgroup needs at least one generating word".into(),
            ));
        }
        if generators.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidParams(
                "peripheral generating words must be nonempty".into(),
            ));
        }
        Ok(PeripheralSpec { generators })
    }
}

/// Partition of the ball vertices into cosets of the peripheral subgroup.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    /// coset id of each ball vertex.
    pub coset_of: Vec<u32>,
    /// vertex indices per coset, each list ascending; cosets ordered by their
    /// smallest vertex.
    pub members: Vec<Vec<u32>>,
}

impl CosetPartition {
    pub fn coset_count(&self) -> usize {
        self.members.len()
    }
}

/// Partition the ball into cosets gH under right multiplication by the
/// peripheral generators, with membership certified by normal-form equality.
pub fn identify_cosets(
    ball: &CayleyBall,
    peripheral: &PeripheralSpec,
    fam: &PresentationFamily,
) -> Result<CosetPartition> {
    let mut reduced_gens = Vec::with_capacity(peripheral.generators.len());
    for g in &peripheral.generators {
        let r = reduce_word(g, fam)?;
        if !r.is_empty() {
            reduced_gens.push(r);
        }
    }
    if reduced_gens.is_empty() {
        return Err(Error::TrivialPeripheral);
    }

    let n = ball.words.len();
    let mut coset_of = vec![u32::MAX; n];
    let mut members: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if coset_of[start as usize] != u32::MAX {
            continue;
        }
        let id = members.len() as u32;
        coset_of[start as usize] = id;
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let word = &ball.words[v as usize];
            for g in &reduced_gens {
                for step in [g.clone(), g.inverse()] {
                    let next = reduce_word(&word.concat(&step), fam)?;
                    if let Some(u) = ball.vertex_of(&next) {
                        if coset_of[u as usize] == u32::MAX {
                            coset_of[u as usize] = id;
                            component.push(u);
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        component.sort_unstable();
        members.push(component);
    }
    Ok(CosetPartition { coset_of, members })
}

/// One glued horoball: the induced subgraph of a coset plus its internal
/// distance table and level spans.
#[derive(Debug)]
struct CosetHoroball {
    members: Vec<u32>,
    dist: DistanceMatrix,
    /// flat id of (member k, level 1); level 0 lives in the core.
    offset: u64,
}

/// The assembled cusped space. Construction is deterministic from the
/// parameters, so serialization stores parameters only ([`CuspedSpec`]).
#[derive(Debug)]
pub struct CuspedSpace {
    core: CayleyBall,
    peripheral: PeripheralSpec,
    partition: CosetPartition,
    scale: ScalingFunction,
    depth: u32,
    horoballs: Vec<CosetHoroball>,
    spans: Vec<Vec<u64>>,
}

/// Build the cusped space over the given family with one peripheral subgroup.
pub fn build_cusped(
    fam: &PresentationFamily,
    peripheral: &PeripheralSpec,
    radius: u32,
    scale: ScalingFunction,
    depth: u32,
    capacity: &Capacity,
) -> Result<CuspedSpace> {
    if depth < 1 {
        return Err(Error::InvalidParams("cusped depth must be >= 1".into()));
    }
    validate_scaling(&scale, depth)?;
    let core = cayley_ball(fam, radius, capacity)?;
    let partition = identify_cosets(&core, peripheral, fam)?;

    let core_adj: Vec<&[u32]> = (0..core.graph.vertex_count() as u32)
        .map(|v| core.graph.neighbors(v))
        .collect();

    // Induced-subgraph distance tables, one per coset.
    let tables: Vec<Result<DistanceMatrix>> = partition
        .members
        .par_iter()
        .map(|mem| {
            let local: std::collections::HashMap<u32, u32> = mem
                .iter()
                .enumerate()
                .map(|(k, &v)| (v, k as u32))
                .collect();
            let mut adj = vec![Vec::new(); mem.len()];
            for (k, &v) in mem.iter().enumerate() {
                for &u in core_adj[v as usize] {
                    if let Some(&j) = local.get(&u) {
                        adj[k].push(j);
                    }
                }
            }
            let dist = DistanceMatrix::from_adjacency(&adj);
            for k in 0..mem.len() {
                for j in 0..mem.len() {
                    if dist.get(k as u32, j as u32) == crate::graph::UNREACHED {
                        return Err(Error::DisconnectedCoset {
                            coset: partition.coset_of[mem[0] as usize] as usize,
                            representative: core.words[mem[0] as usize].compact(),
                        });
                    }
                }
            }
            Ok(dist)
        })
        .collect();

    let mut horoballs = Vec::with_capacity(partition.members.len());
    let mut offset = core.graph.vertex_count() as u64;
    let mut spans = Vec::with_capacity(partition.members.len());
    for (mem, table) in partition.members.iter().zip(tables) {
        let dist = table?;
        let coset_spans: Vec<u64> = (0..=depth)
            .map(|lvl| scale.eval_clamped(lvl, mem.len() as u64))
            .collect::<Result<_>>()?;
        spans.push(coset_spans);
        horoballs.push(CosetHoroball {
            members: mem.clone(),
            dist,
            offset,
        });
        offset += mem.len() as u64 * depth as u64;
    }
    if offset > capacity.max_vertices {
        return Err(Error::CapacityExceeded {
            what: "cusped space vertex count",
            needed: offset,
            limit: capacity.max_vertices,
        });
    }

    Ok(CuspedSpace {
        core,
        peripheral: peripheral.clone(),
        partition,
        scale,
        depth,
        horoballs,
        spans,
    })
}

/// Flat vertex id inside a cusped space: core indices first, then horoball
/// levels coset by coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CuspedVertex {
    coset: u32,
    member: u32,
    level: u32,
}

impl CuspedSpace {
    pub fn core(&self) -> &CayleyBall {
        &self.core
    }

    pub fn partition(&self) -> &CosetPartition {
        &self.partition
    }

    pub fn scale(&self) -> &ScalingFunction {
        &self.scale
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn peripheral(&self) -> &PeripheralSpec {
        &self.peripheral
    }

    pub fn vertex_count(&self) -> u64 {
        self.core.graph.vertex_count() as u64
            + self
                .partition
                .members
                .iter()
                .map(|m| m.len() as u64 * self.depth as u64)
                .sum::<u64>()
    }

    fn flat(&self, v: CuspedVertex) -> u64 {
        if v.level == 0 {
            self.horoballs[v.coset as usize].members[v.member as usize] as u64
        } else {
            self.horoballs[v.coset as usize].offset
                + (v.level as u64 - 1) * self.partition.members[v.coset as usize].len() as u64
                + v.member as u64
        }
    }

    fn from_core(&self, core_vertex: u32) -> CuspedVertex {
        let coset = self.partition.coset_of[core_vertex as usize];
        let member = self.horoballs[coset as usize]
            .members
            .binary_search(&core_vertex)
            .expect("partition covers every core vertex") as u32;
        CuspedVertex {
            coset,
            member,
            level: 0,
        }
    }

    fn for_each_neighbor(&self, v: CuspedVertex, mut visit: impl FnMut(CuspedVertex)) {
        let hb = &self.horoballs[v.coset as usize];
        if v.level == 0 {
            // Core edges may leave the coset.
            let core_vertex = hb.members[v.member as usize];
            for &u in self.core.graph.neighbors(core_vertex) {
                visit(self.from_core(u));
            }
        }
        if v.level > 0 {
            visit(CuspedVertex { level: v.level - 1, ..v });
        }
        if v.level < self.depth {
            visit(CuspedVertex { level: v.level + 1, ..v });
        }
        let span = self.spans[v.coset as usize][v.level as usize];
        let row = hb.dist.row(v.member);
        for (u, &d) in row.iter().enumerate() {
            if u as u32 != v.member && d as u64 <= span {
                visit(CuspedVertex {
                    coset: v.coset,
                    member: u as u32,
                    level: v.level,
                });
            }
        }
    }

    /// Exact shortest-path length in the glued graph between two words, both
    /// of which must reduce into the core ball.
    pub fn dist(&self, u: &Word, v: &Word) -> Result<u64> {
        let start = self.core.locate(u)?;
        let goal = self.core.locate(v)?;
        if start == goal {
            return Ok(0);
        }
        let total = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; total];
        let s = self.from_core(start);
        dist[self.flat(s) as usize] = 0;
        let goal_flat = self.flat(self.from_core(goal));
        let mut queue = VecDeque::from([s]);
        while let Some(cur) = queue.pop_front() {
            let dc = dist[self.flat(cur) as usize];
            let mut hit = None;
            self.for_each_neighbor(cur, |next| {
                let f = self.flat(next) as usize;
                if dist[f] == u32::MAX {
                    dist[f] = dc + 1;
                    if f as u64 == goal_flat {
                        hit = Some(dc + 1);
                    }
                    queue.push_back(next);
                }
            });
            if let Some(d) = hit {
                return Ok(d as u64);
            }
        }
        unreachable!("cusped spaces are connected: the core is a connected ball")
    }

    /// Materialize the glued graph; core labels are the ball's word labels,
    /// horoball labels `word@level`.
    pub fn to_base_graph(&self, capacity: &Capacity) -> Result<BaseGraph> {
        let total = self.vertex_count();
        if total > capacity.max_vertices {
            return Err(Error::CapacityExceeded {
                what: "materialized cusped space vertex count",
                needed: total,
                limit: capacity.max_vertices,
            });
        }
        let mut labels: Vec<String> = vec![String::new(); total as usize];
        for v in 0..self.core.graph.vertex_count() as u32 {
            labels[v as usize] = self.core.graph.label(v).to_string();
        }
        for hb in &self.horoballs {
            for level in 1..=self.depth {
                for (k, &core_v) in hb.members.iter().enumerate() {
                    let id = hb.offset + (level as u64 - 1) * hb.members.len() as u64 + k as u64;
                    labels[id as usize] =
                        format!("{}@{}", self.core.graph.label(core_v), level);
                }
            }
        }
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut push_edges = |space: &CuspedSpace, cv: CuspedVertex| {
            let v = space.flat(cv) as u32;
            space.for_each_neighbor(cv, |next| {
                let u = space.flat(next) as u32;
                if v < u {
                    edges.push((v, u));
                }
            });
        };
        for v in 0..self.core.graph.vertex_count() as u32 {
            push_edges(self, self.from_core(v));
        }
        for (c, hb) in self.horoballs.iter().enumerate() {
            for level in 1..=self.depth {
                for member in 0..hb.members.len() as u32 {
                    push_edges(
                        self,
                        CuspedVertex {
                            coset: c as u32,
                            member,
                            level,
                        },
                    );
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() as u64 > capacity.max_edges {
            return Err(Error::CapacityExceeded {
                what: "materialized cusped space edge count",
                needed: edges.len() as u64,
                limit: capacity.max_edges,
            });
        }
        BaseGraph::new(labels, &edges)
    }

    pub fn to_unit_graph(&self, capacity: &Capacity) -> Result<UnitGraph> {
        Ok(UnitGraph::from(&self.to_base_graph(capacity)?))
    }
}

/// Construction parameters of a cusped space; the build is deterministic, so
/// files store these instead of edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspedSpec {
    pub family: PresentationFamily,
    /// Peripheral generating words in compact form (e.g. `["a"]`).
    pub peripheral: Vec<String>,
    pub radius: u32,
    pub scale: ScalingFunction,
    pub depth: u32,
}

impl CuspedSpec {
    pub fn build(&self, capacity: &Capacity) -> Result<CuspedSpace> {
        let words = self
            .peripheral
            .iter()
            .map(|s| Word::parse_compact(s))
            .collect::<Result<Vec<_>>>()?;
        let peripheral = PeripheralSpec::new(words)?;
        build_cusped(
            &self.family,
            &peripheral,
            self.radius,
            self.scale.clone(),
            self.depth,
            capacity,
        )
    }
}
