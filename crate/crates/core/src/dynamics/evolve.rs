use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::algebra::ComplexVec3;
use crate::fields::spectral::curl;
use crate::fields::{GridSpec, PhysicalConstants, RSField};
use crate::modes::{expand_rs, ModeExpansion};
use crate::quantum::scalar_product_k;

/// Snapshot schedule for exact free evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionPlan {
    pub expansion: ModeExpansion,
    pub t0: f64,
    pub dt: f64,
    pub steps: usize,
    /// Every `stride`-th step is kept; the last step is always kept.
    pub stride: usize,
}

impl EvolutionPlan {
    pub fn new(expansion: ModeExpansion, t0: f64, dt: f64, steps: usize, stride: usize) -> Result<Self, DynamicsError> {
        let plan = Self {
            expansion,
            t0,
            dt,
            steps,
            stride,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(DynamicsError::InvalidPlan(format!("dt must be positive, got {}", self.dt)));
        }
        if self.steps == 0 || self.stride == 0 {
            return Err(DynamicsError::InvalidPlan("steps and stride must be at least 1".into()));
        }
        if !self.t0.is_finite() {
            return Err(DynamicsError::InvalidPlan("t0 must be finite".into()));
        }
        Ok(())
    }

    /// Kept step indices, `0` included.
    pub fn kept_steps(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..=self.steps).step_by(self.stride).collect();
        if *s.last().unwrap() != self.steps {
            s.push(self.steps);
        }
        s
    }

    pub fn time(&self, step: usize) -> f64 {
        self.t0 + step as f64 * self.dt
    }
}

/// Expansions at every kept step. Each is phased directly from the start,
/// so no error accumulates across steps.
pub fn evolve(plan: &EvolutionPlan, k: &PhysicalConstants) -> Result<Vec<ModeExpansion>, DynamicsError> {
    plan.validate()?;
    let start = plan.expansion.evolved(plan.t0 - plan.expansion.t, k);
    Ok(plan
        .kept_steps()
        .into_par_iter()
        .map(|s| {
            let mut e = start.evolved(s as f64 * plan.dt, k);
            e.t = plan.time(s);
            e
        })
        .collect())
}

/// `max_t |<psi(t)|psi(t)> - <psi(0)|psi(0)>| / <psi(0)|psi(0)>`.
pub fn norm_drift(snapshots: &[ModeExpansion]) -> Result<f64, DynamicsError> {
    let Some(first) = snapshots.first() else {
        return Ok(0.0);
    };
    let n0 = scalar_product_k(first, first)?.re;
    let mut worst = 0.0f64;
    for s in snapshots {
        let n = scalar_product_k(s, s)?.re;
        worst = worst.max((n - n0).abs() / n0.max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// `max |i d_ct F - curl F| / max |curl F|`, using the field's rate.
///
/// With `F = E + i c B` the vector part is `-d_t B - curl E` and the
/// bivector part is `d_t E / c - c curl B`.
pub fn curl_form_residual(f: &RSField, k: &PhysicalConstants) -> Result<f64, DynamicsError> {
    let rate = f.rate.as_ref().ok_or(crate::fields::FieldError::MissingTimeDerivative)?;
    let (ce, cb) = (curl(&f.e), curl(&f.b));
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for i in 0..f.grid.len() {
        let v: ComplexVec3 = -rate.b.at(i) - ce.at(i);
        let w: ComplexVec3 = rate.e.at(i) * (1.0 / k.c) - cb.at(i) * k.c;
        worst = worst.max(v.norm().hypot(w.norm()));
        scale = scale.max(ce.at(i).norm().hypot(cb.at(i).norm() * k.c));
    }
    Ok(if scale == 0.0 { worst } else { worst / scale })
}

/// Per-snapshot diagnostics of a mode evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionSample {
    pub t: f64,
    pub norm: f64,
    /// `integral (|E|^2 + c^2 |B|^2) dx`.
    pub energy: f64,
    pub residual: f64,
    /// Same residual with the rate taken by central differences at `+-dt`.
    pub residual_fd: f64,
}

pub fn evolution_series(
    plan: &EvolutionPlan,
    grid: &GridSpec,
    k: &PhysicalConstants,
) -> Result<Vec<EvolutionSample>, DynamicsError> {
    let snaps = evolve(plan, k)?;
    snaps
        .par_iter()
        .map(|e| {
            let f = expand_rs(e, grid, k)?;
            let before = expand_rs(&e.evolved(-plan.dt, k), grid, k)?;
            let after = expand_rs(&e.evolved(plan.dt, k), grid, k)?;
            let fd = RSField::from_snapshots(&before, &f, &after, plan.dt)?;
            let energy: f64 = f.energy_density(k).iter().sum::<f64>() * grid.cell_volume();
            Ok(EvolutionSample {
                t: e.t,
                norm: scalar_product_k(e, e)?.re,
                energy,
                residual: curl_form_residual(&f, k)?,
                residual_fd: curl_form_residual(&fd, k)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;
    use crate::modes::ModeKey;
    use crate::Sign;

    const NAT: PhysicalConstants = PhysicalConstants::NATURAL;

    fn single() -> ModeExpansion {
        let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
        e.set(ModeKey::new([1, 2, 0], Sign::Plus, Sign::Minus), c(0.3, 0.4)).unwrap();
        e
    }

    #[test]
    fn plan_validation() {
        assert!(EvolutionPlan::new(single(), 0.0, 0.0, 3, 1).is_err());
        assert!(EvolutionPlan::new(single(), 0.0, 0.1, 0, 1).is_err());
        let p = EvolutionPlan::new(single(), 0.0, 0.1, 7, 3).unwrap();
        assert_eq!(p.kept_steps(), vec![0, 3, 6, 7]);
    }

    #[test]
    fn start_is_identity_and_period_returns() {
        let e = single();
        let key = *e.modes.keys().next().unwrap();
        let period = 2.0 * std::f64::consts::PI / e.omega(&key, &NAT);
        let p = EvolutionPlan::new(e.clone(), 0.0, period, 1, 1).unwrap();
        let s = evolve(&p, &NAT).unwrap();
        assert_eq!(s[0].modes, e.modes);
        assert!((s[1].get(&key) - e.get(&key)).norm() < 1e-12);
    }
}
