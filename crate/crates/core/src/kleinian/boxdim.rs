//! Box-counting dimension of a point cloud on the unit sphere.
//!
//! Cells come from a cube-face grid: each point is centrally projected onto
//! the face of the circumscribed cube its dominant axis selects, and the face
//! is divided into m-by-m squares, giving 6 m^2 cells at scale 1/m. The
//! dimension estimate is the least-squares slope of log occupied-cell count
//! against log(1/scale).

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Minimum sample size the estimator accepts.
pub const MIN_POINTS: usize = 1000;

/// Cell id on the cube-face grid with m cells per face side.
fn cell_of(p: &[f64; 3], m: u32) -> (u8, u32, u32) {
    let ax = p
        .iter()
        .map(|v| v.abs())
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let sign = if p[ax] >= 0.0 { 0u8 } else { 1u8 };
    let face = ax as u8 * 2 + sign;
    let denom = p[ax].abs().max(f64::MIN_POSITIVE);
    let (u_axis, v_axis) = match ax {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let to_index = |coord: f64| -> u32 {
        let unit = (coord / denom + 1.0) / 2.0;
        ((unit * m as f64) as u32).min(m - 1)
    };
    (face, to_index(p[u_axis]), to_index(p[v_axis]))
}

/// Number of occupied cells on the grid with m cells per face side.
pub fn occupied_cells(points: &[[f64; 3]], m: u32) -> usize {
    let mut cells = HashSet::new();
    for p in points {
        cells.insert(cell_of(p, m));
    }
    cells.len()
}

/// Total cells available and the number occupied; coverage is their ratio.
pub fn cell_coverage(points: &[[f64; 3]], m: u32) -> (usize, usize) {
    (occupied_cells(points, m), 6 * (m as usize) * (m as usize))
}

/// Least-squares slope of log occupied cells vs log(1/scale).
pub fn box_dimension(points: &[[f64; 3]], scales: &[f64]) -> Result<f64> {
    if points.len() < MIN_POINTS {
        return Err(Error::TooFewPoints {
            got: points.len(),
            need: MIN_POINTS,
        });
    }
    if scales.len() < 3 {
        return Err(Error::DegenerateScales { need: 3 });
    }
    for &s in scales {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParams(format!(
                "scales must lie in (0, 1), got {s}"
            )));
        }
    }
    let mut grid_sizes: Vec<u32> = scales
        .iter()
        .map(|&s| ((1.0 / s).round() as u32).max(1))
        .collect();
    grid_sizes.dedup();
    {
        let mut distinct = grid_sizes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::DegenerateScales { need: 2 });
        }
    }

    let xs: Vec<f64> = scales.iter().map(|&s| (1.0 / s).ln()).collect();
    let ys: Vec<f64> = scales
        .iter()
        .map(|&s| {
            let m = ((1.0 / s).round() as u32).max(1);
            (occupied_cells(points, m) as f64).ln()
        })
        .collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    Ok(sxy / sxx)
}
