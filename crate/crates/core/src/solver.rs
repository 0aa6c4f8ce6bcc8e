//! Assembly of the solution field
//!
//! ```text
//! f = P[psi] + Q[psi] - (1-|z|^2) P[phi_1] - (1/16 pi) \int_D g(w) G(z, w) dA(w)
//! ```
//!
//! with component accessors, first-order Wirtinger derivatives, the maximal
//! directional derivative `Lambda_f = |df/dz| + |df/dzbar|`, an iterated
//! finite-difference Laplacian residual probe and boundary-trace checks.
//!
//! Circle components are differentiated analytically under the integral with
//! the vanishing-mean subtraction of the boundary value at `arg z`; the
//! subtraction changes nothing analytically and suppresses near-boundary
//! cancellation error. The Green-function term is differentiated by centered
//! finite differences over a quadrature rule frozen per stencil, so the rule's
//! own discretization error cancels instead of being amplified by the step.

use crate::boundary::{CircleFunction, DiskFunction};
use crate::error::{Error, Result};
use crate::kernels::{
    green_biharmonic, poisson, poisson_dz, poisson_dzbar, q_kernel, q_kernel_dz, q_kernel_dzbar,
    Interior,
};
use crate::quadrature::{circle_integral, DiskRule, QuadratureSpec};
use crate::C64;
use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Radius beyond which derivative evaluation is refused.
const WIRTINGER_SAFE_GAP: f64 = 1e-3;

/// Relative finite-difference step for the Green-term derivatives.
const J3_FD_STEP: f64 = 1e-5;

/// Resolution of the frozen rule behind the PDE residual probe. The iterated
/// Laplacian amplifies any sub-stencil-scale quadrature roughness by h^-4, so
/// the probe needs far more nodes than field evaluation does.
const RESIDUAL_RULE_N_R: usize = 1024;
const RESIDUAL_RULE_N_THETA: usize = 4096;

/// Output grid: `n_radial` evenly spaced radii in `[0, r_max]` times
/// `n_angular` uniform angles.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct GridSpec {
    pub n_radial: usize,
    pub n_angular: usize,
    pub r_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_radial: 32,
            n_angular: 128,
            r_max: 0.99,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_max >= 0.0 && self.r_max < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "grid r_max = {} must lie in [0, 1)",
                self.r_max
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.n_radial * self.n_angular);
        for i in 0..self.n_radial {
            let r = if self.n_radial == 1 {
                self.r_max
            } else {
                self.r_max * i as f64 / (self.n_radial - 1) as f64
            };
            for j in 0..self.n_angular {
                let theta = 2.0 * PI * j as f64 / self.n_angular as f64;
                out.push(C64::from_polar(r, theta));
            }
        }
        out
    }
}

/// The four components of the representation at one point. The field value is
/// their signed sum, so the component identity holds exactly by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub p_psi: C64,
    pub q_psi: C64,
    pub j2: C64,
    pub j3: C64,
}

impl Components {
    pub fn total(&self) -> C64 {
        self.p_psi + self.q_psi - self.j2 - self.j3
    }
}

/// One evaluated output-grid point.
#[derive(Debug, Clone, Copy)]
pub struct GridRow {
    pub z: C64,
    pub f: C64,
    pub df_dz: C64,
    pub df_dzbar: C64,
    pub lambda: f64,
}

/// Harmonic extension `P[psi](z)`, by the trapezoid rule with the
/// near-boundary adaptive node count.
pub fn poisson_extension(psi: &CircleFunction, z: C64, spec: &QuadratureSpec) -> Result<C64> {
    let zi = Interior::new(z)?;
    let n = spec.n_theta(zi.abs());
    circle_integral(|t| psi.eval_t(t) * poisson(zi, t), n)
}

/// The Q-operator `Q[psi](z)`, stabilized by subtracting `psi(e^{i arg z})`
/// under the integral (the kernel has vanishing mean).
pub fn q_transform(psi: &CircleFunction, z: C64, spec: &QuadratureSpec) -> Result<C64> {
    let zi = Interior::new(z)?;
    let base = psi.eval_t(zi.arg());
    let n = spec.n_theta(zi.abs());
    circle_integral(|t| q_kernel(zi, t) * (psi.eval_t(t) - base), n)
}

/// An assembled solution field. Construction is cheap; evaluation is lazy and
/// cached per point (write-once keys, so concurrent fills are idempotent).
pub struct SolutionField {
    phi: CircleFunction,
    psi: CircleFunction,
    g: DiskFunction,
    phi1: CircleFunction,
    quad: QuadratureSpec,
    cache: DashMap<(u64, u64), Components>,
    residual_rule: OnceLock<DiskRule>,
}

/// Builds the solution field for boundary data `(phi, psi)` and source `g`.
pub fn solve(
    phi: &CircleFunction,
    psi: &CircleFunction,
    g: &DiskFunction,
    quad: &QuadratureSpec,
) -> Result<SolutionField> {
    phi.validate_spec()?;
    psi.validate_spec()?;
    g.validate_spec()?;
    quad.validate()?;
    Ok(SolutionField {
        phi: phi.clone(),
        psi: psi.clone(),
        g: g.clone(),
        phi1: phi.to_phi1(),
        quad: quad.clone(),
        cache: DashMap::new(),
        residual_rule: OnceLock::new(),
    })
}

impl SolutionField {
    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn psi(&self) -> &CircleFunction {
        &self.psi
    }

    pub fn phi(&self) -> &CircleFunction {
        &self.phi
    }

    pub fn source(&self) -> &DiskFunction {
        &self.g
    }

    /// Green-term value with an explicit rule (frozen rules keep the
    /// quadrature error smooth across stencil evaluations).
    fn j3_with_rule(&self, z: C64, rule: &DiskRule) -> Result<C64> {
        if self.g.is_zero() {
            return Ok(C64::new(0.0, 0.0));
        }
        let v = rule.integrate(|w| self.g.eval(w) * green_biharmonic(z, w))?;
        Ok(v / (16.0 * PI))
    }

    fn components_uncached(&self, z: C64) -> Result<Components> {
        let zi = Interior::new(z)?;
        let p_psi = poisson_extension(&self.psi, z, &self.quad)?;
        let q_psi = q_transform(&self.psi, z, &self.quad)?;
        let j2 = poisson_extension(&self.phi1, z, &self.quad)? * (1.0 - z.norm_sqr());
        let rule = DiskRule::build(&self.quad, Some(zi.abs()));
        let j3 = self.j3_with_rule(z, &rule)?;
        Ok(Components { p_psi, q_psi, j2, j3 })
    }

    /// The four components at `z`, cached.
    pub fn components(&self, z: C64) -> Result<Components> {
        let key = (z.re.to_bits(), z.im.to_bits());
        if let Some(c) = self.cache.get(&key) {
            return Ok(*c);
        }
        let c = self.components_uncached(z)?;
        Ok(*self.cache.entry(key).or_insert(c))
    }

    /// Field value `f(z)`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.components(z)?.total())
    }

    /// First-order Wirtinger derivatives `(df/dz, df/dzbar)`; analytic for
    /// the circle components, centered finite differences for the Green term.
    pub fn wirtinger(&self, z: C64) -> Result<(C64, C64)> {
        let zi = Interior::new(z)?;
        let r = zi.abs();
        if 1.0 - r < WIRTINGER_SAFE_GAP {
            return Err(Error::Domain(format!(
                "derivative evaluation needs 1 - |z| >= {WIRTINGER_SAFE_GAP}, got |z| = {r}"
            )));
        }
        let n = self.quad.n_theta(r);
        let zb = z.conj();
        let one_m_r2 = 1.0 - z.norm_sqr();

        let psi_base = self.psi.eval_t(zi.arg());
        let dz_p = circle_integral(|t| poisson_dz(zi, t) * (self.psi.eval_t(t) - psi_base), n)?;
        let dzb_p =
            circle_integral(|t| poisson_dzbar(zi, t) * (self.psi.eval_t(t) - psi_base), n)?;
        let dz_q = circle_integral(|t| q_kernel_dz(zi, t) * (self.psi.eval_t(t) - psi_base), n)?;
        let dzb_q =
            circle_integral(|t| q_kernel_dzbar(zi, t) * (self.psi.eval_t(t) - psi_base), n)?;

        let phi1_base = self.phi1.eval_t(zi.arg());
        let p_phi1 = poisson_extension(&self.phi1, z, &self.quad)?;
        let dz_pphi1 =
            circle_integral(|t| poisson_dz(zi, t) * (self.phi1.eval_t(t) - phi1_base), n)?;
        let dzb_pphi1 =
            circle_integral(|t| poisson_dzbar(zi, t) * (self.phi1.eval_t(t) - phi1_base), n)?;
        let dz_j2 = -zb * p_phi1 + one_m_r2 * dz_pphi1;
        let dzb_j2 = -z * p_phi1 + one_m_r2 * dzb_pphi1;

        let (dz_j3, dzb_j3) = if self.g.is_zero() {
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        } else {
            let rule = DiskRule::build(&self.quad, Some(r));
            let h = J3_FD_STEP * (1.0 - r);
            let fx = (self.j3_with_rule(z + h, &rule)? - self.j3_with_rule(z - h, &rule)?)
                / (2.0 * h);
            let ih = C64::new(0.0, h);
            let fy = (self.j3_with_rule(z + ih, &rule)? - self.j3_with_rule(z - ih, &rule)?)
                / (2.0 * h);
            let i = C64::new(0.0, 1.0);
            (0.5 * (fx - i * fy), 0.5 * (fx + i * fy))
        };

        Ok((dz_p + dz_q - dz_j2 - dz_j3, dzb_p + dzb_q - dzb_j2 - dzb_j3))
    }

    /// `Lambda_f(z) = |df/dz| + |df/dzbar|`.
    pub fn lambda(&self, z: C64) -> Result<f64> {
        let (dz, dzb) = self.wirtinger(z)?;
        Ok(dz.norm() + dzb.norm())
    }

    /// Field value over a frozen discretization (stencil probes).
    fn eval_frozen(&self, z: C64, n_theta: usize, rule: &DiskRule) -> Result<C64> {
        let zi = Interior::new(z)?;
        let psi_base = self.psi.eval_t(zi.arg());
        let p_psi = circle_integral(|t| self.psi.eval_t(t) * poisson(zi, t), n_theta)?;
        let q_psi =
            circle_integral(|t| q_kernel(zi, t) * (self.psi.eval_t(t) - psi_base), n_theta)?;
        let j2 = circle_integral(|t| self.phi1.eval_t(t) * poisson(zi, t), n_theta)?
            * (1.0 - z.norm_sqr());
        let j3 = self.j3_with_rule(z, rule)?;
        Ok(Components { p_psi, q_psi, j2, j3 }.total())
    }

    /// `|Delta_h(Delta_h f)(z) - g(z)|` with the 5-point Laplacian iterated
    /// into its 13-point stencil. All stencil values share one frozen rule.
    pub fn pde_residual(&self, g: &DiskFunction, z: C64, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::Domain(format!("step h = {h} must be positive")));
        }
        if 1.0 - z.norm() < 4.0 * h {
            return Err(Error::Domain(format!(
                "stencil leaves the disk: 1 - |z| = {} < 4h = {}",
                1.0 - z.norm(),
                4.0 * h
            )));
        }
        let n_theta = self.quad.n_theta(z.norm());
        let rule = self.residual_rule.get_or_init(|| {
            DiskRule::plain(RESIDUAL_RULE_N_R, RESIDUAL_RULE_N_THETA)
        });
        let f = |p: C64| self.eval_frozen(p, n_theta, rule);
        let lap = |p: C64| -> Result<C64> {
            let hx = C64::new(h, 0.0);
            let hy = C64::new(0.0, h);
            Ok((f(p + hx)? + f(p - hx)? + f(p + hy)? + f(p - hy)? - 4.0 * f(p)?) / (h * h))
        };
        let hx = C64::new(h, 0.0);
        let hy = C64::new(0.0, h);
        let bilap =
            (lap(z + hx)? + lap(z - hx)? + lap(z + hy)? + lap(z - hy)? - 4.0 * lap(z)?) / (h * h);
        Ok((bilap - g.eval(z)).norm())
    }

    /// Evaluates the field (value and derivatives) on an output grid in
    /// parallel; row order follows the grid order regardless of schedule.
    pub fn eval_grid(&self, grid: &GridSpec) -> Result<Vec<GridRow>> {
        grid.validate()?;
        let points = grid.points();
        if let Some(bad) = points
            .iter()
            .find(|z| 1.0 - z.norm() < WIRTINGER_SAFE_GAP)
        {
            return Err(Error::Domain(format!(
                "grid point {bad} too close to the boundary for derivatives"
            )));
        }
        points
            .par_iter()
            .map(|&z| {
                let f = self.eval(z)?;
                let (dz, dzb) = self.wirtinger(z)?;
                Ok(GridRow {
                    z,
                    f,
                    df_dz: dz,
                    df_dzbar: dzb,
                    lambda: dz.norm() + dzb.norm(),
                })
            })
            .collect()
    }

    /// Max deviation of `f(r zeta)` from `psi(zeta)` (and of
    /// `df/dzbar(r zeta)` from `phi(zeta)` where derivatives are safe) over
    /// `n_angles` uniform angles, per radius.
    pub fn boundary_trace_check(&self, r_sequence: &[f64], n_angles: usize) -> Result<TraceReport> {
        let mut rows = Vec::with_capacity(r_sequence.len());
        for &r in r_sequence {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::Domain(format!("trace radius {r} outside [0, 1)")));
            }
            let angles: Vec<f64> = (0..n_angles)
                .map(|j| 2.0 * PI * j as f64 / n_angles as f64)
                .collect();
            let f_error = angles
                .par_iter()
                .map(|&t| {
                    let z = C64::from_polar(r, t);
                    Ok((self.eval(z)? - self.psi.eval_t(t)).norm())
                })
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0f64, f64::max);
            let dzbar_error = if 1.0 - r >= WIRTINGER_SAFE_GAP {
                let worst = angles
                    .par_iter()
                    .map(|&t| {
                        let z = C64::from_polar(r, t);
                        let (_, dzb) = self.wirtinger(z)?;
                        Ok((dzb - self.phi.eval_t(t)).norm())
                    })
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0f64, f64::max);
                Some(worst)
            } else {
                None
            };
            rows.push(TraceRow {
                r,
                f_error,
                dzbar_error,
            });
        }
        Ok(TraceReport { rows })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub r: f64,
    pub f_error: f64,
    pub dzbar_error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub rows: Vec<TraceRow>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn poisson_extension_reproduces_harmonics() {
        let s = spec();
        let z = c(0.3, 0.4);
        let v = poisson_extension(&CircleFunction::harmonic(1), z, &s).unwrap();
        assert!((v - z).norm() <= 1e-12);
        let v = poisson_extension(&CircleFunction::constant(5.0, 0.0), z, &s).unwrap();
        assert!((v - c(5.0, 0.0)).norm() <= 1e-12);
        let v = poisson_extension(&CircleFunction::harmonic(-1), z, &s).unwrap();
        assert!((v - z.conj()).norm() <= 1e-12);
        assert!(poisson_extension(&CircleFunction::harmonic(1), c(1.0, 0.0), &s).is_err());
    }

    #[test]
    fn q_transform_series_identities() {
        let s = spec();
        for z in [c(0.2, 0.1), c(-0.6, 0.3), c(0.0, 0.85)] {
            let v = q_transform(&CircleFunction::harmonic(1), z, &s).unwrap();
            assert!(v.norm() <= 1e-12, "Q[e^it]({z}) = {v}");
            let v = q_transform(&CircleFunction::harmonic(-1), z, &s).unwrap();
            let expect = z.conj() * (1.0 - z.norm_sqr());
            assert!((v - expect).norm() <= 1e-12);
        }
        let v = q_transform(&CircleFunction::cusp(0.5, 0.0), c(0.0, 0.0), &s).unwrap();
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn manufactured_solution_pointwise() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::zero(),
            &DiskFunction::constant(64.0),
            &spec(),
        )
        .unwrap();
        for z in [c(0.0, 0.0), c(0.3, 0.0), c(-0.4, 0.5), c(0.0, 0.95)] {
            let expect = (1.0 - z.norm_sqr()).powi(2);
            let v = field.eval(z).unwrap();
            assert!(
                (v - c(expect, 0.0)).norm() <= 1e-6,
                "f({z}) = {v}, expected {expect}"
            );
        }
    }

    #[test]
    fn holomorphic_data_reproduce_identity_map() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::harmonic(1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        for z in [c(0.1, 0.2), c(-0.5, 0.4), c(0.85, 0.0)] {
            assert!((field.eval(z).unwrap() - z).norm() <= 1e-12);
        }
    }

    #[test]
    fn antiholomorphic_data_reproduce_conjugation() {
        let field = solve(
            &CircleFunction::constant(1.0, 0.0),
            &CircleFunction::harmonic(-1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        for z in [c(0.1, 0.2), c(-0.5, 0.4), c(0.0, 0.9)] {
            assert!((field.eval(z).unwrap() - z.conj()).norm() <= 1e-10);
        }
    }

    #[test]
    fn component_identity_is_exact() {
        let field = solve(
            &CircleFunction::harmonic(2),
            &CircleFunction::cusp(0.5, 0.0),
            &DiskFunction::monomial(1, 0),
            &spec(),
        )
        .unwrap();
        let z = c(0.4, -0.3);
        let comp = field.components(z).unwrap();
        let f = field.eval(z).unwrap();
        assert_eq!(f, comp.p_psi + comp.q_psi - comp.j2 - comp.j3);
    }

    #[test]
    fn wirtinger_identity_field() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::harmonic(1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        let (dz, dzb) = field.wirtinger(c(0.3, 0.1)).unwrap();
        assert!((dz - c(1.0, 0.0)).norm() <= 1e-8);
        assert!(dzb.norm() <= 1e-8);
        assert_abs_diff_eq!(field.lambda(c(0.3, 0.1)).unwrap(), 1.0, epsilon = 1e-8);
        assert!(field.wirtinger(c(0.9995, 0.0)).is_err());
    }

    #[test]
    fn wirtinger_manufactured_gradient() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::zero(),
            &DiskFunction::constant(64.0),
            &spec(),
        )
        .unwrap();
        // critical point by symmetry
        let (dz, dzb) = field.wirtinger(c(0.0, 0.0)).unwrap();
        assert!(dz.norm() <= 1e-7 && dzb.norm() <= 1e-7);
        // d/dz (1-|z|^2)^2 = -2 conj(z) (1-|z|^2)
        let z = c(0.4, 0.1);
        let (dz, dzb) = field.wirtinger(z).unwrap();
        let expect = -2.0 * z.conj() * (1.0 - z.norm_sqr());
        assert!((dz - expect).norm() <= 1e-5, "dz = {dz}, expect {expect}");
        assert!((dzb - expect.conj()).norm() <= 1e-5);
        // both Wirtinger parts have modulus 2 r (1 - r^2) = 0.75 at r = 0.5
        let lam = field.lambda(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(lam, 1.5, epsilon = 1e-5);
    }

    #[test]
    fn residual_of_harmonic_and_constant_fields() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::harmonic(1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        let res = field
            .pde_residual(&DiskFunction::zero(), c(0.2, 0.0), 0.05)
            .unwrap();
        assert!(res <= 1e-6, "harmonic residual {res}");

        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::constant(3.0, 0.0),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        // rounding noise in the trapezoid sums is amplified by h^-4
        let res = field
            .pde_residual(&DiskFunction::zero(), c(0.1, 0.1), 0.2)
            .unwrap();
        assert!(res <= 1e-9, "constant residual {res}");

        assert!(field
            .pde_residual(&DiskFunction::zero(), c(0.9, 0.0), 0.05)
            .is_err());
    }

    #[test]
    fn residual_of_manufactured_solution() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::zero(),
            &DiskFunction::constant(64.0),
            &spec(),
        )
        .unwrap();
        let z = c(0.2, 0.0);
        let h = 1e-2 * (1.0 - z.norm());
        let res = field
            .pde_residual(&DiskFunction::constant(64.0), z, h)
            .unwrap();
        assert!(res <= 0.64, "residual {res} above 1e-2 * ||g||");
    }

    #[test]
    fn boundary_traces_manufactured() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::zero(),
            &DiskFunction::constant(64.0),
            &spec(),
        )
        .unwrap();
        let report = field
            .boundary_trace_check(&[0.3, 0.6, 0.9], 16)
            .unwrap();
        for row in &report.rows {
            let expect = (1.0 - row.r * row.r).powi(2);
            assert!((row.f_error - expect).abs() <= 1e-6);
        }
        // decreasing toward the boundary
        assert!(report.rows[0].f_error > report.rows[1].f_error);
        assert!(report.rows[1].f_error > report.rows[2].f_error);
    }

    #[test]
    fn boundary_traces_exact_case() {
        // f = z: the true trace defect at radius r is exactly 1 - r, and the
        // computed report matches it to quadrature tolerance.
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::harmonic(1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        let report = field.boundary_trace_check(&[0.5, 0.9], 16).unwrap();
        for row in &report.rows {
            assert!((row.f_error - (1.0 - row.r)).abs() <= 1e-10);
            assert!(row.dzbar_error.unwrap() <= 1e-8);
        }
        assert!(report.rows[1].f_error < report.rows[0].f_error);
    }

    #[test]
    fn linearity_in_the_source() {
        let s = spec();
        let phi = CircleFunction::harmonic(1);
        let psi = CircleFunction::cusp(0.5, 0.0);
        let g1 = DiskFunction::constant(16.0);
        let g2 = DiskFunction::monomial(1, 0);
        let g12 = DiskFunction::BivarPoly {
            terms: vec![
                crate::boundary::BivarTerm { j: 0, k: 0, re: 16.0, im: 0.0 },
                crate::boundary::BivarTerm { j: 1, k: 0, re: 1.0, im: 0.0 },
            ],
        };
        let f_sum = solve(&phi, &psi, &g12, &s).unwrap();
        let f_1 = solve(&phi, &psi, &g1, &s).unwrap();
        let f_2 = solve(&CircleFunction::zero(), &CircleFunction::zero(), &g2, &s).unwrap();
        for z in [c(0.3, 0.2), c(-0.1, 0.6)] {
            let lhs = f_sum.eval(z).unwrap();
            let rhs = f_1.eval(z).unwrap() + f_2.eval(z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let s = spec();
        let phi = CircleFunction::TrigPoly {
            coeffs: vec![crate::boundary::TrigCoeff { k: 1, re: 0.4, im: 0.2 }],
        };
        let psi = CircleFunction::cusp(0.5, 0.7);
        let g = DiskFunction::BivarPoly {
            terms: vec![crate::boundary::BivarTerm { j: 1, k: 1, re: 8.0, im: 3.0 }],
        };
        let f = solve(&phi, &psi, &g, &s).unwrap();
        let f_star = solve(
            &phi.conjugate_reflect(),
            &psi.conjugate_reflect(),
            &g.conjugate_reflect(),
            &s,
        )
        .unwrap();
        for z in [c(0.3, 0.2), c(-0.2, -0.5)] {
            let lhs = f_star.eval(z).unwrap();
            let rhs = f.eval(z.conj()).unwrap().conj();
            assert!((lhs - rhs).norm() <= 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn grid_evaluation_shape_and_determinism() {
        let field = solve(
            &CircleFunction::zero(),
            &CircleFunction::harmonic(1),
            &DiskFunction::zero(),
            &spec(),
        )
        .unwrap();
        let grid = GridSpec {
            n_radial: 3,
            n_angular: 4,
            r_max: 0.9,
        };
        let rows = field.eval_grid(&grid).unwrap();
        assert_eq!(rows.len(), 12);
        let rows2 = field.eval_grid(&grid).unwrap();
        for (a, b) in rows.iter().zip(&rows2) {
            assert_eq!(a.f, b.f);
            assert_eq!(a.lambda, b.lambda);
        }
        let bad = GridSpec {
            r_max: 1.0,
            ..grid
        };
        assert!(bad.validate().is_err());
    }
}
