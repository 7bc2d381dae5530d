//! Gromov products and four-point delta-hyperbolicity of finite graphs.
//!
//! The four-point condition needs no geodesic enumeration and is exact on
//! finite graphs: delta is the worst defect of
//! `min((x|z)_w, (y|z)_w) - (x|y)_w` over vertex quadruples. Gromov products
//! of integer distances are half-integers, represented exactly as doubled
//! integers throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{UnitGraph, UNREACHED};

/// Exact half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInteger {
    doubled: i64,
}

impl HalfInteger {
    pub fn from_doubled(doubled: i64) -> Self {
        HalfInteger { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn as_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

impl std::fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Gromov product (x|y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2.
pub fn gromov_product(g: &UnitGraph, x: u32, y: u32, w: u32) -> Result<HalfInteger> {
    let n = g.vertex_count() as u32;
    for v in [x, y, w] {
        if v >= n {
            return Err(Error::InvalidParams(format!(
                "vertex {v} out of range (graph has {n} vertices)"
            )));
        }
    }
    let from_w = g.distances_from(w);
    let from_x = g.distances_from(x);
    let (dxw, dyw, dxy) = (from_w[x as usize], from_w[y as usize], from_x[y as usize]);
    for (d, from, to) in [(dxw, x, w), (dyw, y, w), (dxy, x, y)] {
        if d == UNREACHED {
            return Err(Error::DisconnectedPair { from, to });
        }
    }
    Ok(HalfInteger::from_doubled(
        dxw as i64 + dyw as i64 - dxy as i64,
    ))
}

/// How the quadruple space is explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    /// Scan every quadruple. Graphs past the vertex limit are rejected
    /// unless `force` is set.
    Exhaustive { force: bool },
    /// Draw quadruples uniformly with the given seed.
    Sampled { count: u64, seed: u64 },
}

/// Vertex-count gate for the exhaustive scan (150^4 is about 5e8 quadruple
/// evaluations).
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 150;

/// All-pairs table gate; delta scans on larger graphs are out of desk scale.
const ALL_PAIRS_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaModeReport {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// Result of a delta scan: the maximal four-point defect, a quadruple
/// attaining it, and how much of the quadruple space was examined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    /// The four-point delta.
    pub delta: f64,
    /// Same value as an exact doubled integer.
    pub delta_doubled: i64,
    /// (w, x, y, z) attaining delta.
    pub witness: [u32; 4],
    pub mode: DeltaModeReport,
    pub quadruples_examined: u64,
}

impl DeltaReport {
    pub fn delta_half(&self) -> HalfInteger {
        HalfInteger::from_doubled(self.delta_doubled)
    }
}

fn connected_distance_matrix(g: &UnitGraph) -> Result<Vec<Vec<u32>>> {
    let n = g.vertex_count();
    if n > ALL_PAIRS_LIMIT {
        return Err(Error::TooLargeForAllPairs {
            vertices: n,
            limit: ALL_PAIRS_LIMIT,
        });
    }
    let rows: Vec<Vec<u32>> = (0..n as u32).map(|v| g.distances_from(v)).collect();
    if let Some(bad) = rows[0].iter().position(|&d| d == UNREACHED) {
        return Err(Error::DisconnectedPair {
            from: 0,
            to: bad as u32,
        });
    }
    Ok(rows)
}

/// Four-point delta of a connected graph.
pub fn four_point_delta(g: &UnitGraph, mode: DeltaMode) -> Result<DeltaReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParams("empty graph".into()));
    }
    let dist = connected_distance_matrix(g)?;
    match mode {
        DeltaMode::Exhaustive { force } => {
            if n > EXHAUSTIVE_VERTEX_LIMIT && !force {
                return Err(Error::TooLargeForExhaustive {
                    vertices: n,
                    limit: EXHAUSTIVE_VERTEX_LIMIT,
                });
            }
            Ok(exhaustive_scan(&dist))
        }
        DeltaMode::Sampled { count, seed } => Ok(sampled_scan(&dist, count, seed)),
    }
}

/// Defect of one ordered quadruple, doubled and clamped at 0.
fn quad_defect(dist: &[Vec<u32>], w: usize, x: usize, y: usize, z: usize) -> i64 {
    let dw = &dist[w];
    let xz = dw[x] as i64 + dw[z] as i64 - dist[x][z] as i64;
    let yz = dw[y] as i64 + dw[z] as i64 - dist[y][z] as i64;
    let xy = dw[x] as i64 + dw[y] as i64 - dist[x][y] as i64;
    (xz.min(yz) - xy).max(0)
}

fn exhaustive_scan(dist: &[Vec<u32>]) -> DeltaReport {
    let n = dist.len();
    // Per-root scans run in parallel; the defect is symmetric in x and y, so
    // the inner loop takes y >= x.
    let (best, witness) = (0..n)
        .into_par_iter()
        .map(|w| {
            let dw = &dist[w];
            let mut best = i64::MIN;
            let mut witness = [0u32; 4];
            for z in 0..n {
                let dz = &dist[z];
                // doubled (v|z)_w for every v
                let p: Vec<i64> = (0..n)
                    .map(|v| dw[v] as i64 + dw[z] as i64 - dz[v] as i64)
                    .collect();
                for x in 0..n {
                    let dx = &dist[x];
                    let px = p[x];
                    for y in x..n {
                        let defect = px.min(p[y]) - (dw[x] as i64 + dw[y] as i64 - dx[y] as i64);
                        if defect > best {
                            best = defect;
                            witness = [w as u32, x as u32, y as u32, z as u32];
                        }
                    }
                }
            }
            (best.max(0), witness)
        })
        .reduce(
            || (i64::MIN, [0u32; 4]),
            |a, b| {
                // ties resolve to the smaller root so the witness is
                // deterministic regardless of thread scheduling
                if a.0 > b.0 || (a.0 == b.0 && a.1[0] <= b.1[0]) {
                    a
                } else {
                    b
                }
            },
        );
    let n64 = n as u64;
    DeltaReport {
        delta: best.max(0) as f64 / 2.0,
        delta_doubled: best.max(0),
        witness,
        mode: DeltaModeReport::Exhaustive,
        quadruples_examined: n64 * n64 * (n64 * (n64 + 1) / 2),
    }
}

fn sampled_scan(dist: &[Vec<u32>], count: u64, seed: u64) -> DeltaReport {
    let n = dist.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0i64;
    let mut witness = [0u32; 4];
    for _ in 0..count {
        let w = rng.random_range(0..n);
        let x = rng.random_range(0..n);
        let y = rng.random_range(0..n);
        let z = rng.random_range(0..n);
        let defect = quad_defect(dist, w, x, y, z);
        if defect > best {
            best = defect;
            witness = [w as u32, x as u32, y as u32, z as u32];
        }
    }
    DeltaReport {
        delta: best as f64 / 2.0,
        delta_doubled: best,
        witness,
        mode: DeltaModeReport::Sampled { count, seed },
        quadruples_examined: count,
    }
}

/// Re-evaluate a report's witness quadruple; used by the self-check tests.
pub fn witness_defect(g: &UnitGraph, witness: [u32; 4]) -> Result<HalfInteger> {
    let dist = connected_distance_matrix(g)?;
    let [w, x, y, z] = witness;
    Ok(HalfInteger::from_doubled(quad_defect(
        &dist, w as usize, x as usize, y as usize, z as usize,
    )))
}
