//! Combinatorial horoballs over a finite base graph, and exact distances in
//! them.
//!
//! The horoball over a base graph Γ with scaling f and truncation depth d has
//! vertex set Γ⁰ × {0..d}. Vertical edges join (v,n) to (v,n+1); a horizontal
//! edge joins (u,n) to (v,n) exactly when the Γ-distance of u and v is at
//! most f(n). All edges have length 1.
//!
//! Three independent routes compute distances between level-0 vertices over a
//! line base: breadth-first search in the built graph, a reachability
//! recursion ([`line_distance_dp`]), and a closed form
//! ([`line_distance_closed_form`]). The test suites hold them equal.

use std::borrow::Cow;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Capacity, Error, Result};
use crate::graph::{BaseGraph, DistanceMatrix, UnitGraph};
use crate::scaling::{validate_scaling, ScalingFunction};

/// Bases up to this many vertices get a precomputed all-pairs table;
/// larger bases fall back to per-query searches.
const MATRIX_LIMIT: usize = 4096;

/// A vertex of a horoball: a base vertex index and a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoroballVertex {
    pub base: u32,
    pub level: u32,
}

impl HoroballVertex {
    pub fn new(base: u32, level: u32) -> Self {
        HoroballVertex { base, level }
    }
}

enum BaseDistances {
    Matrix(DistanceMatrix),
    OnDemand,
}

/// A built combinatorial horoball. Immutable once constructed; queries own
/// their search state, so a single instance can serve many threads.
pub struct HoroballGraph {
    base: BaseGraph,
    scale: ScalingFunction,
    depth: u32,
    dist: BaseDistances,
    /// f(n) clamped to the base vertex count, per level. Any base distance is
    /// below the vertex count, so clamped comparisons are exact.
    span: Vec<u64>,
}

/// Build the horoball over `base` with the given scaling and depth.
///
/// Fails if the scaling violates coarse exponentiality on 0..depth, or if the
/// edge count would exceed the capacity guard.
pub fn build_horoball(
    base: BaseGraph,
    scale: ScalingFunction,
    depth: u32,
    capacity: &Capacity,
) -> Result<HoroballGraph> {
    if depth < 1 {
        return Err(Error::InvalidParams("horoball depth must be >= 1".into()));
    }
    validate_scaling(&scale, depth)?;
    let n = base.vertex_count();
    let vertex_count = n as u64 * (depth as u64 + 1);
    if vertex_count > capacity.max_vertices {
        return Err(Error::CapacityExceeded {
            what: "horoball vertex count",
            needed: vertex_count,
            limit: capacity.max_vertices,
        });
    }

    let span: Vec<u64> = (0..=depth)
        .map(|lvl| scale.eval_clamped(lvl, n as u64))
        .collect::<Result<_>>()?;

    let dist = if n <= MATRIX_LIMIT {
        BaseDistances::Matrix(base.distance_matrix())
    } else {
        BaseDistances::OnDemand
    };

    let graph = HoroballGraph {
        base,
        scale,
        depth,
        dist,
        span,
    };
    let edges = graph.edge_count();
    if edges > capacity.max_edges {
        return Err(Error::CapacityExceeded {
            what: "horoball edge count",
            needed: edges,
            limit: capacity.max_edges,
        });
    }
    Ok(graph)
}

impl HoroballGraph {
    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn scale(&self) -> &ScalingFunction {
        &self.scale
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn vertex_count(&self) -> u64 {
        self.base.vertex_count() as u64 * (self.depth as u64 + 1)
    }

    fn base_row(&self, v: u32) -> Cow<'_, [u32]> {
        match &self.dist {
            BaseDistances::Matrix(m) => Cow::Borrowed(m.row(v)),
            BaseDistances::OnDemand => Cow::Owned(self.base.distances_from(v)),
        }
    }

    pub fn check_vertex(&self, v: HoroballVertex) -> Result<()> {
        if (v.base as usize) < self.base.vertex_count() && v.level <= self.depth {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                base: v.base,
                level: v.level,
                base_count: self.base.vertex_count() as u32,
                depth: self.depth,
            })
        }
    }

    /// Number of horizontal edges at one level: pairs at base distance <=
    /// f(level).
    pub fn horizontal_edge_count(&self, level: u32) -> u64 {
        let span = self.span[level as usize];
        let n = self.base.vertex_count();
        let mut count = 0u64;
        for u in 0..n as u32 {
            let row = self.base_row(u);
            count += row
                .iter()
                .enumerate()
                .filter(|&(v, &d)| v > u as usize && d as u64 <= span)
                .count() as u64;
        }
        count
    }

    pub fn vertical_edge_count(&self) -> u64 {
        self.base.vertex_count() as u64 * self.depth as u64
    }

    pub fn edge_count(&self) -> u64 {
        let horizontal: u64 = (0..=self.depth)
            .map(|lvl| self.horizontal_edge_count(lvl))
            .sum();
        self.vertical_edge_count() + horizontal
    }

    fn flat(&self, v: HoroballVertex) -> usize {
        v.level as usize * self.base.vertex_count() + v.base as usize
    }

    /// Visit all neighbors of `v`: the vertical ones and every base vertex
    /// within the level span.
    fn for_each_neighbor(&self, v: HoroballVertex, mut visit: impl FnMut(HoroballVertex)) {
        if v.level > 0 {
            visit(HoroballVertex::new(v.base, v.level - 1));
        }
        if v.level < self.depth {
            visit(HoroballVertex::new(v.base, v.level + 1));
        }
        let span = self.span[v.level as usize];
        let row = self.base_row(v.base);
        for (u, &d) in row.iter().enumerate() {
            if u as u32 != v.base && d as u64 <= span {
                visit(HoroballVertex::new(u as u32, v.level));
            }
        }
    }

    pub fn degree(&self, v: HoroballVertex) -> Result<u64> {
        self.check_vertex(v)?;
        let mut deg = 0u64;
        self.for_each_neighbor(v, |_| deg += 1);
        Ok(deg)
    }

    /// Exact shortest-path length between two horoball vertices.
    pub fn dist(&self, p: HoroballVertex, q: HoroballVertex) -> Result<u64> {
        self.check_vertex(p)?;
        self.check_vertex(q)?;
        if p == q {
            return Ok(0);
        }
        let total = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; total];
        dist[self.flat(p)] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(p);
        let target = self.flat(q);
        while let Some(u) = queue.pop_front() {
            let du = dist[self.flat(u)];
            let mut found = None;
            self.for_each_neighbor(u, |v| {
                let slot = &mut dist[v.level as usize * self.base.vertex_count() + v.base as usize];
                if *slot == u32::MAX {
                    *slot = du + 1;
                    if v.level as usize * self.base.vertex_count() + v.base as usize == target {
                        found = Some(du + 1);
                    }
                    queue.push_back(v);
                }
            });
            if let Some(d) = found {
                return Ok(d as u64);
            }
        }
        unreachable!("horoballs over a connected base are connected")
    }

    /// Ball sizes |B(center, r)| for r = 0..=r_max, by breadth-first layers.
    pub fn ball_sizes(&self, center: HoroballVertex, r_max: u32) -> Result<GrowthCurve> {
        self.check_vertex(center)?;
        let total = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; total];
        dist[self.flat(center)] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(center);
        let mut counts = vec![0u64; r_max as usize + 1];
        counts[0] = 1;
        while let Some(u) = queue.pop_front() {
            let du = dist[self.flat(u)];
            if du >= r_max {
                continue;
            }
            self.for_each_neighbor(u, |v| {
                let slot = &mut dist[v.level as usize * self.base.vertex_count() + v.base as usize];
                if *slot == u32::MAX {
                    *slot = du + 1;
                    counts[(du + 1) as usize] += 1;
                    queue.push_back(v);
                }
            });
        }
        let mut sizes = Vec::with_capacity(counts.len());
        let mut running = 0u64;
        for (r, c) in counts.iter().enumerate() {
            running += c;
            sizes.push((r as u32, running));
        }
        Ok(GrowthCurve { sizes })
    }

    /// Materialize the explicit edge list as a labeled graph; vertex labels
    /// are `base_label@level`.
    pub fn to_base_graph(&self, capacity: &Capacity) -> Result<BaseGraph> {
        let edges = self.edge_count();
        if edges > capacity.max_edges {
            return Err(Error::CapacityExceeded {
                what: "materialized horoball edge count",
                needed: edges,
                limit: capacity.max_edges,
            });
        }
        let n = self.base.vertex_count();
        let mut labels = Vec::with_capacity(self.vertex_count() as usize);
        for level in 0..=self.depth {
            for v in 0..n {
                labels.push(format!("{}@{}", self.base.label(v as u32), level));
            }
        }
        let mut edge_list = Vec::with_capacity(edges as usize);
        for level in 0..=self.depth {
            let span = self.span[level as usize];
            let offset = level as usize * n;
            for v in 0..n as u32 {
                if level < self.depth {
                    edge_list.push(((offset + v as usize) as u32, (offset + n + v as usize) as u32));
                }
                let row = self.base_row(v);
                for (u, &d) in row.iter().enumerate() {
                    if u > v as usize && d as u64 <= span {
                        edge_list.push(((offset + v as usize) as u32, (offset + u) as u32));
                    }
                }
            }
        }
        BaseGraph::new(labels, &edge_list)
    }

    pub fn to_unit_graph(&self, capacity: &Capacity) -> Result<UnitGraph> {
        Ok(UnitGraph::from(&self.to_base_graph(capacity)?))
    }
}

/// Ball sizes from a center, radius by radius. Sizes are nondecreasing and
/// start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCurve {
    /// (radius, ball size) pairs for radius 0..=r_max.
    pub sizes: Vec<(u32, u64)>,
}

/// Serializable construction parameters of a horoball; edges are implicit in
/// the definition, which keeps files small.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoroballSpec {
    pub base: BaseGraph,
    pub scale: ScalingFunction,
    pub depth: u32,
}

impl HoroballSpec {
    pub fn build(self, capacity: &Capacity) -> Result<HoroballGraph> {
        build_horoball(self.base, self.scale, self.depth, capacity)
    }
}

/// Exact distance between (0,0) and (N,0) in the horoball over the integer
/// line, by the reachability recursion
/// `R(c, l) = max(R(c-1, l-1), R(c-1, l+1), R(c-1, l) + f(l))`
/// with answer `min { c : R(c, 0) >= N }`.
///
/// Optimal paths over a line base are monotone in displacement, so the
/// recursion is exact. Levels are capped at `max_level`; if the returned
/// count could in principle be beaten by a path climbing above the cap, the
/// result is not certified and an error is reported instead.
pub fn line_distance_dp(n: u64, f: &ScalingFunction, max_level: u32) -> Result<u64> {
    if max_level < 1 {
        return Err(Error::InvalidParams("max_level must be >= 1".into()));
    }
    let levels = if let Some(defined) = f.defined_levels() {
        if defined == 0 {
            return Err(Error::TableTooShort { needed: 0, len: 0 });
        }
        max_level.min(defined - 1)
    } else {
        max_level
    };
    validate_scaling(f, levels.max(1))?;
    if n == 0 {
        return Ok(0);
    }
    let spans: Vec<u64> = (0..=levels)
        .map(|lvl| f.eval_clamped(lvl, n))
        .collect::<Result<_>>()?;

    // reach[l] = max displacement of a c-step path from (0, 0) ending at level l.
    let mut reach: Vec<Option<u64>> = vec![None; levels as usize + 1];
    reach[0] = Some(0);
    let mut steps = 0u64;
    loop {
        steps += 1;
        let mut next = reach.clone();
        for l in 0..=levels as usize {
            let mut best: Option<u64> = None;
            let mut consider = |v: Option<u64>| {
                if let Some(v) = v {
                    best = Some(best.map_or(v, |b: u64| b.max(v)));
                }
            };
            if l > 0 {
                consider(reach[l - 1]);
            }
            if l < levels as usize {
                consider(reach[l + 1]);
            }
            consider(reach[l].map(|r| (r + spans[l]).min(n)));
            next[l] = best;
        }
        reach = next;
        if reach[0].is_some_and(|r| r >= n) {
            break;
        }
        // f(0) >= 1 guarantees progress within n steps.
        debug_assert!(steps <= n);
    }
    // A path that climbs above `levels` spends at least 2(levels+1) vertical
    // steps plus one hop; if that could undercut the answer, refuse to
    // certify. A table capped at its own last level is exempt: there the
    // truncation is part of the space, not of the search.
    let capped_by_table = f
        .defined_levels()
        .is_some_and(|defined| levels == defined - 1);
    if steps > 2 * levels as u64 + 2 && !capped_by_table {
        return Err(Error::MaxLevelTooSmall {
            max_level: levels,
            bound: steps,
        });
    }
    Ok(steps)
}

/// Closed-form line distance: the best geodesic climbs to some level k,
/// crosses at most 3 horizontal edges there, and descends, giving
/// `min(N, min { 2k + h : k >= 0, 1 <= h <= 3, h * f(k) >= N })`.
pub fn line_distance_closed_form(n: u64, f: &ScalingFunction) -> Result<u64> {
    if n == 0 {
        return Ok(0);
    }
    if let Some(defined) = f.defined_levels() {
        if defined == 0 {
            return Err(Error::TableTooShort { needed: 0, len: 0 });
        }
        validate_scaling(f, defined - 1)?;
    } else {
        validate_scaling(f, 1)?;
    }
    let mut best = n;
    let mut k = 0u64;
    loop {
        if 2 * k + 1 >= best {
            break;
        }
        let fk = match f.eval_clamped(k as u32, n) {
            Ok(v) => v,
            Err(Error::TableTooShort { .. }) => break,
            Err(e) => return Err(e),
        };
        for h in 1..=3u64 {
            if fk.saturating_mul(h) >= n {
                best = best.min(2 * k + h);
                break;
            }
        }
        if fk >= n {
            break;
        }
        k += 1;
    }
    Ok(best)
}

/// Depth that provably never clips an optimal line geodesic for
/// displacements up to `n`: two above the first level whose span reaches n.
pub fn sufficient_depth(n: u64, f: &ScalingFunction) -> Result<u32> {
    let mut k = 0u32;
    while f.eval_clamped(k, n.max(1))? < n.max(1) {
        k += 1;
    }
    Ok(k + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_vertex() -> BaseGraph {
        BaseGraph::new(vec!["v".into()], &[]).unwrap()
    }

    #[test]
    fn ray_over_a_point() {
        let h = build_horoball(single_vertex(), ScalingFunction::Exp2, 5, &Capacity::default())
            .unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.edge_count(), 5);
        let d = h
            .dist(HoroballVertex::new(0, 0), HoroballVertex::new(0, 5))
            .unwrap();
        assert_eq!(d, 5);
        let curve = h.ball_sizes(HoroballVertex::new(0, 0), 3).unwrap();
        assert_eq!(curve.sizes, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn vertex_range_checks() {
        let h = build_horoball(BaseGraph::path(4), ScalingFunction::Exp2, 2, &Capacity::default())
            .unwrap();
        assert!(h.check_vertex(HoroballVertex::new(4, 2)).is_ok());
        assert!(h.check_vertex(HoroballVertex::new(5, 0)).is_err());
        assert!(h.check_vertex(HoroballVertex::new(0, 3)).is_err());
        assert!(h
            .dist(HoroballVertex::new(0, 0), HoroballVertex::new(0, 9))
            .is_err());
    }

    #[test]
    fn depth_and_scaling_preconditions() {
        let base = BaseGraph::path(4);
        assert!(matches!(
            build_horoball(base.clone(), ScalingFunction::Exp2, 0, &Capacity::default()),
            Err(Error::InvalidParams(_))
        ));
        let bad = ScalingFunction::Table(vec![1, 2, 3]);
        assert!(matches!(
            build_horoball(base, bad, 2, &Capacity::default()),
            Err(Error::ScalingViolation { index: 1, .. })
        ));
    }

    #[test]
    fn edge_capacity_guard() {
        let cap = Capacity {
            max_vertices: 1000,
            max_edges: 10,
        };
        assert!(matches!(
            build_horoball(BaseGraph::path(10), ScalingFunction::Exp2, 3, &cap),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn dp_examples() {
        assert_eq!(line_distance_dp(0, &ScalingFunction::Exp2, 5).unwrap(), 0);
        assert_eq!(line_distance_dp(16, &ScalingFunction::Exp2, 6).unwrap(), 8);
        assert_eq!(line_distance_dp(256, &ScalingFunction::Exp2, 10).unwrap(), 16);
    }

    #[test]
    fn dp_refuses_uncertifiable_levels() {
        // With only one level available the best certified answer would need
        // more steps than a higher climb could take.
        assert!(matches!(
            line_distance_dp(256, &ScalingFunction::Exp2, 1),
            Err(Error::MaxLevelTooSmall { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            line_distance_closed_form(1, &ScalingFunction::Exp2).unwrap(),
            1
        );
        assert_eq!(
            line_distance_closed_form(16, &ScalingFunction::Exp2).unwrap(),
            8
        );
        assert_eq!(
            line_distance_closed_form(65536, &ScalingFunction::Exp2).unwrap(),
            32
        );
        assert_eq!(
            line_distance_closed_form(65536, &ScalingFunction::DExp2).unwrap(),
            9
        );
    }
}
