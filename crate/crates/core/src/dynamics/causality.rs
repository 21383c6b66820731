use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::fields::{GridSpec, PhysicalConstants, RSField};
use crate::modes::{expand_rs, ModeExpansion};

/// Initial exterior fraction used when `r0` is chosen automatically.
pub const INITIAL_TAIL: f64 = 1e-9;

/// Distance from `center` to the nearest periodic image of `x`.
pub fn min_image_distance(x: [f64; 3], center: [f64; 3], box_len: f64) -> f64 {
    (0..3)
        .map(|i| {
            let d = x[i] - center[i];
            let d = d - box_len * (d / box_len).round();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn distances(grid: &GridSpec, center: [f64; 3]) -> Vec<f64> {
    (0..grid.len())
        .map(|i| min_image_distance(grid.position(i), center, grid.length))
        .collect()
}

/// Fraction of `density` at distances strictly greater than `r`.
fn exterior_fraction(density: &[f64], dist: &[f64], r: f64) -> f64 {
    let total: f64 = density.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let out: f64 = density.iter().zip(dist).filter(|(_, d)| **d > r).map(|(e, _)| e).sum();
    out / total
}

/// Smallest grid distance whose exterior fraction is below `target`.
pub fn auto_radius(f: &RSField, center: [f64; 3], target: f64, k: &PhysicalConstants) -> f64 {
    let density = f.energy_density(k);
    let dist = distances(&f.grid, center);
    let total: f64 = density.iter().sum();
    let mut order: Vec<usize> = (0..dist.len()).collect();
    order.sort_by(|a, b| dist[*b].total_cmp(&dist[*a]));
    // walk inward while the energy beyond the current shell stays below target
    let mut outside = 0.0;
    let mut r = dist[order[0]];
    let mut i = 0;
    while i < order.len() {
        let d = dist[order[i]];
        if outside / total >= target {
            break;
        }
        r = d;
        while i < order.len() && dist[order[i]] == d {
            outside += density[order[i]];
            i += 1;
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalitySample {
    pub t: f64,
    /// `r0 + c t`.
    pub radius: f64,
    pub interior: f64,
    pub exterior: f64,
    /// Largest `|Im|` of `E` and `c B` relative to the largest magnitude.
    pub imaginary: f64,
    /// The cone reached the box boundary; the fractions are not meaningful.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub r0: f64,
    pub tolerance: f64,
    pub samples: Vec<CausalitySample>,
    /// Largest exterior fraction over untruncated samples.
    pub max_exterior: f64,
    pub max_imaginary: f64,
    pub pass: bool,
}

/// Light-cone scan of evolved snapshots about `center`.
///
/// `r0 = None` picks the radius with initial exterior fraction below
/// [`INITIAL_TAIL`] from the first snapshot.
pub fn causality_scan(
    snapshots: &[ModeExpansion],
    grid: &GridSpec,
    center: [f64; 3],
    r0: Option<f64>,
    tolerance: f64,
    k: &PhysicalConstants,
) -> Result<CausalityReport, DynamicsError> {
    let first = snapshots.first().ok_or_else(|| DynamicsError::InvalidPlan("no snapshots".into()))?;
    let t0 = first.t;
    let r0 = match r0 {
        Some(r) => r,
        None => auto_radius(&expand_rs(first, grid, k)?, center, INITIAL_TAIL, k),
    };
    let limit = grid.length / 2.0;
    if r0 >= limit {
        return Err(DynamicsError::ConeExitsBox { radius: r0, limit });
    }
    let dist = distances(grid, center);
    let samples = snapshots
        .par_iter()
        .map(|s| {
            let f = expand_rs(s, grid, k)?;
            let density = f.energy_density(k);
            let radius = r0 + k.c * (s.t - t0);
            let exterior = exterior_fraction(&density, &dist, radius);
            let cb = f.b.scale(crate::algebra::c(k.c, 0.0));
            let peak = f.e.max_abs().max(cb.max_abs());
            let imaginary = if peak == 0.0 { 0.0 } else { f.e.max_imag().max(cb.max_imag()) / peak };
            Ok(CausalitySample {
                t: s.t,
                radius,
                interior: 1.0 - exterior,
                exterior,
                imaginary,
                truncated: radius >= limit,
            })
        })
        .collect::<Result<Vec<_>, DynamicsError>>()?;
    let max_exterior = samples.iter().filter(|s| !s.truncated).map(|s| s.exterior).fold(0.0, f64::max);
    let max_imaginary = samples.iter().map(|s| s.imaginary).fold(0.0, f64::max);
    Ok(CausalityReport {
        r0,
        tolerance,
        pass: max_exterior < tolerance,
        samples,
        max_exterior,
        max_imaginary,
    })
}

/// `(r, enclosed energy fraction)` at `bins` equally spaced radii up to the
/// largest min-image distance.
pub fn radial_profile(f: &RSField, center: [f64; 3], bins: usize, k: &PhysicalConstants) -> Vec<(f64, f64)> {
    let density = f.energy_density(k);
    let dist = distances(&f.grid, center);
    let r_max = dist.iter().copied().fold(0.0, f64::max);
    (1..=bins)
        .map(|b| {
            let r = r_max * b as f64 / bins as f64;
            (r, 1.0 - exterior_fraction(&density, &dist, r))
        })
        .collect()
}

pub fn write_profile_csv<W: Write>(profile: &[(f64, f64)], mut w: W) -> std::io::Result<()> {
    writeln!(w, "r,enclosed_fraction")?;
    for (r, f) in profile {
        writeln!(w, "{r:.17e},{f:.17e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_image_wraps() {
        assert!((min_image_distance([0.95, 0.0, 0.0], [0.05, 0.0, 0.0], 1.0) - 0.1).abs() < 1e-15);
        assert!((min_image_distance([0.5, 0.5, 0.5], [0.5, 0.5, 0.5], 1.0)).abs() < 1e-15);
    }

    #[test]
    fn exterior_counts_strictly_outside() {
        let d = [0.0, 1.0, 2.0];
        let e = [1.0, 1.0, 2.0];
        assert_eq!(exterior_fraction(&e, &d, 1.0), 0.5);
        assert_eq!(exterior_fraction(&e, &d, 2.0), 0.0);
    }

    #[test]
    fn csv_has_header() {
        let mut out = Vec::new();
        write_profile_csv(&[(0.5, 0.25)], &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("r,enclosed_fraction\n5.0"));
    }
}
