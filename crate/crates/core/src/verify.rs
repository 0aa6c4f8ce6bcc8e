//! Verification sweeps: normalized kernel-term quantities over near-boundary
//! grids, closed-form gradient bounds, modulus-of-continuity reports for
//! solution fields, and the refinement-stability detector.
//!
//! Quantities whose theory only asserts "bounded by some constant" are
//! operationalized as refinement stability: the observed maximum may grow by
//! at most 10% per refinement level across at least three levels. Quantities
//! with explicit constants (`4 ||phi||` for the weighted-harmonic gradient,
//! `(23/48) ||g||` for the Green-term gradient) are compared against those
//! constants directly.

use crate::boundary::{lipschitz_seminorm_circle, CircleFunction, DiskFunction};
use crate::error::Result;
use crate::kernels::{poisson_dz, poisson_dzbar, q_kernel_dz, q_kernel_dzbar, Interior};
use crate::majorants::Majorant;
use crate::quadrature::{circle_integral, DiskRule, QuadratureSpec};
use crate::solver::{poisson_extension, q_transform, SolutionField};
use crate::C64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Allowed growth of a sweep maximum between consecutive refinement levels.
pub const GROWTH_BUDGET: f64 = 1.10;

/// Seminorms below this are treated as zero and the normalized sweep skipped.
const SEMINORM_FLOOR: f64 = 1e-12;

/// Sampling grid for the seminorm normalizer.
const SEMINORM_GRID: usize = 256;

/// One refinement level of a sweep or report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrendPoint {
    pub level: usize,
    pub max: f64,
}

/// Location of a sweep maximum.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(untagged)]
pub enum Argmax {
    RTheta { r: f64, theta: f64 },
    Pair { pair: [[f64; 2]; 2] },
}

/// Outcome of one verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub quantity: String,
    pub max: f64,
    pub argmax: Option<Argmax>,
    /// Closed-form bound when the theory provides one.
    pub bound: Option<f64>,
    pub pass: bool,
    pub trend: Vec<TrendPoint>,
    /// True when the sweep does not apply (constant data normalize by a zero
    /// seminorm).
    pub skipped: bool,
}

/// Empirical Lipschitz-modulus estimate with witness pair and refinement
/// trend.
#[derive(Debug, Clone, Serialize)]
pub struct LipschitzReport {
    pub max_ratio: f64,
    pub witness_pair: [[f64; 2]; 2],
    pub pair_count: usize,
    pub refinement_trend: Vec<TrendPoint>,
    pub omegas: Vec<String>,
    pub divergent: bool,
}

impl LipschitzReport {
    pub fn is_stable(&self) -> bool {
        trend_is_stable(&self.refinement_trend, GROWTH_BUDGET)
    }
}

/// True when no level exceeds its predecessor by more than `budget`.
pub fn trend_is_stable(trend: &[TrendPoint], budget: f64) -> bool {
    trend
        .windows(2)
        .all(|w| w[1].max <= w[0].max * budget + 1e-12)
}

/// Near-boundary radial ladder `r = 1 - 2^(-k/4)`, `k = 4..=40`, geometric in
/// `1 - r` so the modulus scaling is resolved uniformly in log scale.
pub fn default_radial_ladder() -> Vec<f64> {
    (4..=40).map(|k| 1.0 - 2f64.powf(-(k as f64) / 4.0)).collect()
}

/// Sweep discretization: radii, base angular density, refinement levels.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub radii: Vec<f64>,
    pub n_theta: usize,
    pub levels: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            radii: default_radial_ladder(),
            n_theta: 32,
            levels: 3,
        }
    }
}

fn skipped_report(quantity: &str) -> SweepReport {
    SweepReport {
        quantity: quantity.to_string(),
        max: 0.0,
        argmax: None,
        bound: None,
        pass: true,
        trend: Vec::new(),
        skipped: true,
    }
}

/// The boundary-difference integral
/// `(1/2pi) \int |psi(e^{it}) - psi(e^{i theta})| / |1 - conj(z) e^{it}|^2 dt`
/// at `z = r e^{i theta}`.
pub fn j1_probe(psi: &CircleFunction, r: f64, theta: f64, spec: &QuadratureSpec) -> Result<f64> {
    let zi = Interior::from_polar(r, theta)?;
    let z = zi.get();
    let base = psi.eval_t(theta);
    let n = spec.n_theta(r);
    let v = circle_integral(
        |t| {
            let d = (C64::new(1.0, 0.0) - z.conj() * C64::from_polar(1.0, t)).norm_sqr();
            C64::new((psi.eval_t(t) - base).norm() / d, 0.0)
        },
        n,
    )?;
    Ok(v.re)
}

/// `Lambda_{Q[psi]}(z)` from the analytic Q-derivative kernels with the
/// vanishing-mean subtraction.
pub fn lambda_q(psi: &CircleFunction, z: C64, spec: &QuadratureSpec) -> Result<f64> {
    let zi = Interior::new(z)?;
    let base = psi.eval_t(zi.arg());
    let n = spec.n_theta(zi.abs());
    let dz = circle_integral(|t| q_kernel_dz(zi, t) * (psi.eval_t(t) - base), n)?;
    let dzb = circle_integral(|t| q_kernel_dzbar(zi, t) * (psi.eval_t(t) - base), n)?;
    Ok(dz.norm() + dzb.norm())
}

/// `Lambda_{J2}(z)` for `J2 = (1 - |z|^2) P[phi_1]`, with analytic Poisson
/// derivative kernels and the product rule on the prefactor.
pub fn lambda_j2(phi: &CircleFunction, z: C64, spec: &QuadratureSpec) -> Result<f64> {
    let zi = Interior::new(z)?;
    let phi1 = phi.to_phi1();
    let base = phi1.eval_t(zi.arg());
    let n = spec.n_theta(zi.abs());
    let p = poisson_extension(&phi1, z, spec)?;
    let dz_p = circle_integral(|t| poisson_dz(zi, t) * (phi1.eval_t(t) - base), n)?;
    let dzb_p = circle_integral(|t| poisson_dzbar(zi, t) * (phi1.eval_t(t) - base), n)?;
    let one_m_r2 = 1.0 - z.norm_sqr();
    let dz = -z.conj() * p + one_m_r2 * dz_p;
    let dzb = -z * p + one_m_r2 * dzb_p;
    Ok(dz.norm() + dzb.norm())
}

/// `Lambda_{J3}(z)` for the Green term, by centered finite differences over a
/// rule frozen per stencil.
pub fn lambda_j3(g: &DiskFunction, z: C64, spec: &QuadratureSpec) -> Result<f64> {
    if g.is_zero() {
        return Ok(0.0);
    }
    let zi = Interior::new(z)?;
    let rule = DiskRule::build(spec, Some(zi.abs()));
    let j3 = |p: C64| -> Result<C64> {
        let v = rule.integrate(|w| g.eval(w) * crate::kernels::green_biharmonic(p, w))?;
        Ok(v / (16.0 * PI))
    };
    let h = 1e-5 * (1.0 - zi.abs());
    let hx = C64::new(h, 0.0);
    let hy = C64::new(0.0, h);
    let fx = (j3(z + hx)? - j3(z - hx)?) / (2.0 * h);
    let fy = (j3(z + hy)? - j3(z - hy)?) / (2.0 * h);
    let i = C64::new(0.0, 1.0);
    Ok((0.5 * (fx - i * fy)).norm() + (0.5 * (fx + i * fy)).norm())
}

/// Runs a per-point quantity over the sweep grid at each refinement level.
fn run_point_sweep<F>(
    quantity: &str,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
    anchors: &[f64],
    value: F,
) -> Result<SweepReport>
where
    F: Fn(&QuadratureSpec, f64, f64) -> Result<f64> + Sync,
{
    let mut trend = Vec::new();
    let mut last: Option<(f64, Argmax)> = None;
    for level in 0..grid.levels {
        let factor = 1usize << level;
        let spec_l = spec.refined(factor as f64);
        let n_th = grid.n_theta * factor;
        let mut angles: Vec<f64> = (0..n_th).map(|j| 2.0 * PI * j as f64 / n_th as f64).collect();
        angles.extend_from_slice(anchors);
        let cells: Vec<(f64, f64)> = grid
            .radii
            .iter()
            .flat_map(|&r| angles.iter().map(move |&th| (r, th)))
            .collect();
        let evaluated: Vec<(f64, f64, f64)> = cells
            .par_iter()
            .map(|&(r, th)| value(&spec_l, r, th).map(|v| (v, r, th)))
            .collect::<Result<_>>()?;
        let (mut mx, mut arg) = (f64::NEG_INFINITY, Argmax::RTheta { r: 0.0, theta: 0.0 });
        for (v, r, th) in evaluated {
            if v > mx {
                mx = v;
                arg = Argmax::RTheta { r, theta: th };
            }
        }
        trend.push(TrendPoint { level: level + 1, max: mx });
        last = Some((mx, arg));
    }
    let (max, argmax) = last.expect("at least one level");
    Ok(SweepReport {
        quantity: quantity.to_string(),
        max,
        argmax: Some(argmax),
        bound: None,
        pass: trend_is_stable(&trend, GROWTH_BUDGET),
        trend,
        skipped: false,
    })
}

/// Runs a per-pair quantity over level-dependent pair sets.
fn run_pair_sweep<F, P>(
    quantity: &str,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
    pairs_for_level: P,
    value: F,
) -> Result<SweepReport>
where
    P: Fn(usize) -> Vec<(C64, C64)>,
    F: Fn(&QuadratureSpec, C64, C64) -> Result<f64> + Sync,
{
    let mut trend = Vec::new();
    let mut last: Option<(f64, Argmax)> = None;
    for level in 0..grid.levels {
        let spec_l = spec.refined((1usize << level) as f64);
        let pairs = pairs_for_level(level);
        let evaluated: Vec<(f64, C64, C64)> = pairs
            .par_iter()
            .map(|&(a, b)| value(&spec_l, a, b).map(|v| (v, a, b)))
            .collect::<Result<_>>()?;
        let mut mx = f64::NEG_INFINITY;
        let mut arg = Argmax::Pair { pair: [[0.0; 2]; 2] };
        for (v, a, b) in evaluated {
            if v > mx {
                mx = v;
                arg = Argmax::Pair {
                    pair: [[a.re, a.im], [b.re, b.im]],
                };
            }
        }
        trend.push(TrendPoint { level: level + 1, max: mx });
        last = Some((mx, arg));
    }
    let (max, argmax) = last.expect("at least one level");
    Ok(SweepReport {
        quantity: quantity.to_string(),
        max,
        argmax: Some(argmax),
        bound: None,
        pass: trend_is_stable(&trend, GROWTH_BUDGET),
        trend,
        skipped: false,
    })
}

fn seminorm_normalizer(psi: &CircleFunction, omega2: &Majorant) -> Result<Option<f64>> {
    let s = lipschitz_seminorm_circle(psi, omega2, SEMINORM_GRID)?;
    if s.max_ratio <= SEMINORM_FLOOR {
        Ok(None)
    } else {
        Ok(Some(s.max_ratio))
    }
}

/// Stability sweep of the boundary-difference integral, normalized by
/// `||psi|| omega_2(1-r) / (1-r)`.
pub fn j1_sweep(
    psi: &CircleFunction,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let s = match seminorm_normalizer(psi, omega2)? {
        None => return Ok(skipped_report("j1_normalized")),
        Some(s) => s,
    };
    run_point_sweep(
        "j1_normalized",
        grid,
        spec,
        &psi.anchors(),
        |spec_l, r, th| {
            let v = j1_probe(psi, r, th, spec_l)?;
            Ok(v * (1.0 - r) / (s * omega2.value(1.0 - r)))
        },
    )
}

/// Sweep of `|Q[psi](r xi)| / (||psi|| omega_2(1-r))`.
pub fn lemma_sweep_q_sup(
    psi: &CircleFunction,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let s = match seminorm_normalizer(psi, omega2)? {
        None => return Ok(skipped_report("q_sup_normalized")),
        Some(s) => s,
    };
    run_point_sweep(
        "q_sup_normalized",
        grid,
        spec,
        &psi.anchors(),
        |spec_l, r, th| {
            let q = q_transform(psi, C64::from_polar(r, th), spec_l)?;
            Ok(q.norm() / (s * omega2.value(1.0 - r)))
        },
    )
}

/// Sweep of `Lambda_{Q[psi]}(z) (1-r) / (||psi|| omega_2(1-r))`.
pub fn lemma_sweep_q_lambda(
    psi: &CircleFunction,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let s = match seminorm_normalizer(psi, omega2)? {
        None => return Ok(skipped_report("q_lambda_normalized")),
        Some(s) => s,
    };
    run_point_sweep(
        "q_lambda_normalized",
        grid,
        spec,
        &psi.anchors(),
        |spec_l, r, th| {
            let v = lambda_q(psi, C64::from_polar(r, th), spec_l)?;
            Ok(v * (1.0 - r) / (s * omega2.value(1.0 - r)))
        },
    )
}

/// Radial-increment sweep `|Q[psi](r1 xi) - Q[psi](r2 xi)| /
/// (||psi|| omega_2(r1 - r2))`, with gap factors covering both regimes
/// `1 - r1 <= r1 - r2` and `1 - r1 > r1 - r2`.
pub fn lemma_sweep_q_radial(
    psi: &CircleFunction,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let s = match seminorm_normalizer(psi, omega2)? {
        None => return Ok(skipped_report("q_radial_increment")),
        Some(s) => s,
    };
    let anchors = psi.anchors();
    let radii = grid.radii.clone();
    let base_rays = (grid.n_theta / 4).max(4);
    let pairs_for_level = |level: usize| {
        let n_rays = base_rays << level;
        let mut rays: Vec<f64> = (0..n_rays).map(|m| 2.0 * PI * m as f64 / n_rays as f64).collect();
        rays.extend_from_slice(&anchors);
        let mut pairs = Vec::new();
        for &xi in &rays {
            for &r1 in &radii {
                for kappa in [0.25, 0.5, 1.0, 2.0, 4.0] {
                    let r2 = r1 - kappa * (1.0 - r1);
                    if r2 >= 0.0 && r2 < r1 {
                        pairs.push((C64::from_polar(r1, xi), C64::from_polar(r2, xi)));
                    }
                }
                pairs.push((C64::from_polar(r1, xi), C64::from_polar(r1 / 2.0, xi)));
                pairs.push((C64::from_polar(r1, xi), C64::new(0.0, 0.0)));
            }
        }
        pairs
    };
    run_pair_sweep(
        "q_radial_increment",
        grid,
        spec,
        pairs_for_level,
        |spec_l, a, b| {
            let qa = q_transform(psi, a, spec_l)?;
            let qb = q_transform(psi, b, spec_l)?;
            let gap = (a.norm() - b.norm()).abs();
            if gap == 0.0 {
                return Ok(0.0);
            }
            Ok((qa - qb).norm() / (s * omega2.value(gap)))
        },
    )
}

/// Equimodular sweep `|Q[psi](z1) - Q[psi](z2)| / (||psi|| omega_2(|z1-z2|))`
/// over pairs with `|z1| = |z2|`, with angular separations on both sides of
/// the `1 - |z1|` threshold.
pub fn lemma_sweep_q_equimodular(
    psi: &CircleFunction,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let s = match seminorm_normalizer(psi, omega2)? {
        None => return Ok(skipped_report("q_equimodular_increment")),
        Some(s) => s,
    };
    let mut centers = psi.anchors();
    centers.push(0.0);
    centers.sort_by(|a, b| a.partial_cmp(b).unwrap());
    centers.dedup();
    let radii = grid.radii.clone();
    let base_rays = (grid.n_theta / 4).max(4);
    let pairs_for_level = move |level: usize| {
        let n_rays = base_rays << level;
        let mut pairs = Vec::new();
        for &r in &radii {
            for &c in &centers {
                for sfac in [0.5, 1.0, 2.0, 4.0, 8.0] {
                    let delta = (sfac * (1.0 - r)).min(PI / 2.0);
                    pairs.push((C64::from_polar(r, c + delta), C64::from_polar(r, c - delta)));
                }
            }
            for m in 0..n_rays {
                let th = 2.0 * PI * m as f64 / n_rays as f64;
                let th2 = 2.0 * PI * (m + 1) as f64 / n_rays as f64;
                pairs.push((C64::from_polar(r, th), C64::from_polar(r, th2)));
            }
        }
        pairs
    };
    run_pair_sweep(
        "q_equimodular_increment",
        grid,
        spec,
        pairs_for_level,
        |spec_l, a, b| {
            let d = (a - b).norm();
            if d == 0.0 {
                return Ok(0.0);
            }
            let qa = q_transform(psi, a, spec_l)?;
            let qb = q_transform(psi, b, spec_l)?;
            Ok((qa - qb).norm() / (s * omega2.value(d)))
        },
    )
}

/// Checks `Lambda_{J2} <= 4 ||phi||_inf` over the sweep grid.
pub fn j2_lambda_check(
    phi: &CircleFunction,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let sup = phi.sup_norm();
    let bound = 4.0 * sup;
    let mut angles: Vec<f64> = (0..16).map(|j| 2.0 * PI * j as f64 / 16.0).collect();
    angles.extend(phi.anchors());
    let cells: Vec<(f64, f64)> = grid
        .radii
        .iter()
        .flat_map(|&r| angles.iter().map(move |&th| (r, th)))
        .collect();
    let evaluated: Vec<(f64, f64, f64)> = cells
        .par_iter()
        .map(|&(r, th)| lambda_j2(phi, C64::from_polar(r, th), spec).map(|v| (v, r, th)))
        .collect::<Result<_>>()?;
    let (mut mx, mut arg) = (0.0f64, Argmax::RTheta { r: 0.0, theta: 0.0 });
    for (v, r, th) in evaluated {
        if v > mx {
            mx = v;
            arg = Argmax::RTheta { r, theta: th };
        }
    }
    Ok(SweepReport {
        quantity: "j2_lambda".to_string(),
        max: mx,
        argmax: Some(arg),
        bound: Some(bound),
        pass: mx <= bound * (1.0 + 1e-6),
        trend: vec![TrendPoint { level: 1, max: mx }],
        skipped: false,
    })
}

/// Checks `Lambda_{J3} <= (23/48) ||g||_inf` over the sweep grid.
pub fn j3_lambda_check(
    g: &DiskFunction,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    let sup = g.sup_norm();
    let bound = 23.0 / 48.0 * sup;
    let angles: Vec<f64> = (0..16).map(|j| 2.0 * PI * j as f64 / 16.0).collect();
    let cells: Vec<(f64, f64)> = grid
        .radii
        .iter()
        .flat_map(|&r| angles.iter().map(move |&th| (r, th)))
        .collect();
    let evaluated: Vec<(f64, f64, f64)> = cells
        .par_iter()
        .map(|&(r, th)| lambda_j3(g, C64::from_polar(r, th), spec).map(|v| (v, r, th)))
        .collect::<Result<_>>()?;
    let (mut mx, mut arg) = (0.0f64, Argmax::RTheta { r: 0.0, theta: 0.0 });
    for (v, r, th) in evaluated {
        if v > mx {
            mx = v;
            arg = Argmax::RTheta { r, theta: th };
        }
    }
    Ok(SweepReport {
        quantity: "j3_lambda".to_string(),
        max: mx,
        argmax: Some(arg),
        bound: Some(bound),
        pass: mx <= bound * (1.0 + 1e-3),
        trend: vec![TrendPoint { level: 1, max: mx }],
        skipped: false,
    })
}

/// Deterministic pair sampler for the modulus report: radial ladders along
/// rays and cusp anchors, equimodular pairs at modulus-matched separations,
/// and low-discrepancy interior pairs. Levels deepen the ladder and densify
/// everything.
#[derive(Debug, Clone)]
pub struct PairSampler {
    pub levels: usize,
    pub ray_angles_base: usize,
    pub ladder_j_start: u32,
    pub ladder_j_max_base: u32,
    pub interior_pairs_base: usize,
    pub r_cap: f64,
}

impl Default for PairSampler {
    fn default() -> Self {
        PairSampler {
            levels: 3,
            ray_angles_base: 8,
            ladder_j_start: 2,
            ladder_j_max_base: 14,
            interior_pairs_base: 50,
            r_cap: 0.999,
        }
    }
}

impl PairSampler {
    fn ladder(&self, level: usize) -> Vec<f64> {
        let j_max = self.ladder_j_max_base + 2 * level as u32;
        let mut radii: Vec<f64> = (self.ladder_j_start..=j_max)
            .map(|j| (1.0 - 2f64.powf(-(j as f64) / 2.0)).min(self.r_cap))
            .collect();
        radii.dedup();
        radii
    }

    /// Kronecker low-discrepancy sequence on the disk of radius 0.9.
    fn interior_point(k: usize) -> C64 {
        const A1: f64 = 0.754_877_666_246_693;
        const A2: f64 = 0.569_840_290_998_053;
        let u = ((k + 1) as f64 * A1).fract();
        let v = ((k + 1) as f64 * A2).fract();
        C64::from_polar(0.9 * u.sqrt(), 2.0 * PI * v)
    }

    fn pairs(&self, level: usize, anchors: &[f64]) -> Vec<(C64, C64)> {
        let mut pairs = Vec::new();
        let radii = self.ladder(level);
        let n_rays = self.ray_angles_base << level;
        let mut rays: Vec<f64> = (0..n_rays).map(|m| 2.0 * PI * m as f64 / n_rays as f64).collect();
        rays.extend_from_slice(anchors);
        // radial pairs: consecutive ladder radii along each ray
        for &a in &rays {
            for w in radii.windows(2) {
                pairs.push((C64::from_polar(w[0], a), C64::from_polar(w[1], a)));
            }
        }
        // equimodular pairs at separations matched to 1 - r around anchors
        let mut centers = anchors.to_vec();
        centers.push(0.0);
        for &r in &radii {
            for &c in &centers {
                for s in [0.5, 1.0, 2.0] {
                    let delta = s * (1.0 - r);
                    pairs.push((C64::from_polar(r, c + delta), C64::from_polar(r, c - delta)));
                }
            }
        }
        // uniform interior pairs
        let n_interior = self.interior_pairs_base << level;
        for m in 0..n_interior {
            pairs.push((Self::interior_point(2 * m), Self::interior_point(2 * m + 1)));
        }
        pairs
    }
}

/// Modulus-of-continuity report for a solution field: the maximum over
/// sampled pairs of `|f(z1) - f(z2)| / (omega_1(d) + omega_2(d))` with
/// `d = |z1 - z2|`, per refinement level.
pub fn modulus_report(
    field: &SolutionField,
    omega1: &Majorant,
    omega2: &Majorant,
    sampler: &PairSampler,
) -> Result<LipschitzReport> {
    omega1.validate_spec()?;
    omega2.validate_spec()?;
    let mut anchors = field.psi().anchors();
    anchors.extend(field.phi().anchors());
    anchors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    anchors.dedup();

    let mut trend = Vec::new();
    let mut best = 0.0f64;
    let mut witness = [[0.0; 2]; 2];
    let mut total_pairs = 0usize;
    for level in 1..=sampler.levels {
        let pairs = sampler.pairs(level, &anchors);
        total_pairs += pairs.len();
        // evaluate unique endpoints in parallel
        let mut unique: Vec<C64> = Vec::new();
        let mut index: HashMap<(u64, u64), usize> = HashMap::new();
        for &(a, b) in &pairs {
            for z in [a, b] {
                index.entry((z.re.to_bits(), z.im.to_bits())).or_insert_with(|| {
                    unique.push(z);
                    unique.len() - 1
                });
            }
        }
        let values: Vec<C64> = unique
            .par_iter()
            .map(|&z| field.eval(z))
            .collect::<Result<_>>()?;
        let mut level_max = best;
        for &(a, b) in &pairs {
            let d = (a - b).norm();
            if d == 0.0 {
                continue;
            }
            let fa = values[index[&(a.re.to_bits(), a.im.to_bits())]];
            let fb = values[index[&(b.re.to_bits(), b.im.to_bits())]];
            let ratio = (fa - fb).norm() / (omega1.value(d) + omega2.value(d));
            if ratio > level_max {
                level_max = ratio;
                witness = [[a.re, a.im], [b.re, b.im]];
            }
        }
        best = best.max(level_max);
        trend.push(TrendPoint {
            level,
            max: level_max,
        });
    }
    Ok(LipschitzReport {
        max_ratio: best,
        witness_pair: witness,
        pair_count: total_pairs,
        refinement_trend: trend,
        omegas: vec![omega1.id(), omega2.id()],
        divergent: false,
    })
}

/// Verifies the phase-transform seminorm inequality
/// `||phi_1|| <= ||phi|| + (2/omega(2)) sup|phi|` and its converse over a
/// shared pair set; `max` is the worse violation (negative slack means both
/// inequalities hold).
pub fn phi1_equivalence_check(phi: &CircleFunction, omega: &Majorant) -> Result<SweepReport> {
    let phi1 = phi.to_phi1();
    let s_phi = lipschitz_seminorm_circle(phi, omega, SEMINORM_GRID)?;
    let s_phi1 = lipschitz_seminorm_circle(&phi1, omega, SEMINORM_GRID)?;
    let transfer = 2.0 / omega.eval(2.0)? ;
    let sup = phi.sup_norm();
    let forward = s_phi1.max_ratio - (s_phi.max_ratio + transfer * sup);
    let converse = s_phi.max_ratio - (s_phi1.max_ratio + transfer * sup);
    let (violation, side) = if forward >= converse {
        (forward, &s_phi1)
    } else {
        (converse, &s_phi)
    };
    Ok(SweepReport {
        quantity: "phi1_equivalence".to_string(),
        max: violation,
        argmax: Some(Argmax::Pair {
            pair: side.witness_pair,
        }),
        bound: Some(0.0),
        pass: violation <= 1e-9,
        trend: vec![TrendPoint {
            level: 1,
            max: violation,
        }],
        skipped: false,
    })
}

/// The full lemma-bound suite for one data set, in a fixed order.
pub fn lemma_suite(
    phi: &CircleFunction,
    psi: &CircleFunction,
    g: &DiskFunction,
    omega1: &Majorant,
    omega2: &Majorant,
    grid: &SweepGrid,
    spec: &QuadratureSpec,
) -> Result<Vec<SweepReport>> {
    Ok(vec![
        j1_sweep(psi, omega2, grid, spec)?,
        lemma_sweep_q_sup(psi, omega2, grid, spec)?,
        lemma_sweep_q_lambda(psi, omega2, grid, spec)?,
        lemma_sweep_q_radial(psi, omega2, grid, spec)?,
        lemma_sweep_q_equimodular(psi, omega2, grid, spec)?,
        j2_lambda_check(phi, grid, spec)?,
        j3_lambda_check(g, grid, spec)?,
        phi1_equivalence_check(phi, omega1)?,
    ])
}
