//! Deterministic quadrature: uniform trapezoid on the circle, Gauss-Legendre
//! polar rules on the disk, and a small adaptive Simpson helper for
//! one-dimensional modulus integrals.
//!
//! Circle integrals are normalized by `1/2pi`, so the rule is exact for
//! trigonometric polynomials of degree below the node count. Disk rules carry
//! the polar Jacobian; integrands with a marked near-logarithmic point get a
//! locally subdivided radial annulus around that radius.

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Discretization parameters for circle and disk integrals.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct QuadratureSpec {
    pub n_theta_base: usize,
    pub n_r: usize,
    /// Near-boundary angular refinement constant: a circle integral evaluated
    /// at `z` uses `max(n_theta_base, ceil(c / (1 - |z|)))` nodes, matching
    /// the angular concentration width of the Poisson kernel.
    pub boundary_adaptivity_c: f64,
    pub diagonal_refine: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            n_theta_base: 256,
            n_r: 64,
            boundary_adaptivity_c: 16.0,
            diagonal_refine: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta_base < 16 {
            return Err(Error::InvalidSpec(format!(
                "n_theta_base = {} < 16",
                self.n_theta_base
            )));
        }
        if self.n_r < 8 {
            return Err(Error::InvalidSpec(format!("n_r = {} < 8", self.n_r)));
        }
        if !(self.boundary_adaptivity_c > 0.0) {
            return Err(Error::InvalidSpec(
                "boundary_adaptivity_c must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Angular node count for a circle integral evaluated at radius `r_abs`.
    pub fn n_theta(&self, r_abs: f64) -> usize {
        let gap = (1.0 - r_abs).max(1e-9);
        let adaptive = (self.boundary_adaptivity_c / gap).ceil() as usize;
        self.n_theta_base.max(adaptive)
    }

    /// Spec with the angular densities scaled by `factor`, used by the dyadic
    /// refinement levels of the verification sweeps.
    pub fn refined(&self, factor: f64) -> QuadratureSpec {
        QuadratureSpec {
            n_theta_base: ((self.n_theta_base as f64) * factor).ceil() as usize,
            n_r: ((self.n_r as f64) * factor).ceil() as usize,
            boundary_adaptivity_c: self.boundary_adaptivity_c * factor,
            diagonal_refine: self.diagonal_refine,
        }
    }
}

/// Uniform trapezoid rule for `(1/2pi) \int_0^{2pi} f(t) dt` with `n` nodes.
///
/// By periodicity this coincides with the rectangle rule and is exact for
/// trigonometric polynomials of degree `< n`.
pub fn circle_integral<F: Fn(f64) -> C64>(integrand: F, n: usize) -> Result<C64> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("circle_integral needs n >= 2, got {n}")));
    }
    let mut sum = C64::new(0.0, 0.0);
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        let v = integrand(t);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite(format!("circle node t = {t}")));
        }
        sum += v;
    }
    Ok(sum / n as f64)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn gl_on(a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| (0.5 * (b - a) * xi + 0.5 * (a + b), 0.5 * (b - a) * wi))
        .collect()
}

/// Polar quadrature rule on the unit disk: Gauss-Legendre in radius (with the
/// Jacobian folded into the weights), uniform trapezoid in angle.
#[derive(Debug, Clone)]
pub struct DiskRule {
    /// Radial nodes and weights; each weight already contains the factor `r`.
    radial: Vec<(f64, f64)>,
    n_theta: usize,
}

impl DiskRule {
    /// Builds the rule. When `mark` names a radius in `(0, 1)` and the spec
    /// enables diagonal refinement, the radial annulus containing that radius
    /// is subdivided 4x locally to resolve the weak kink the Green integrand
    /// has along `|w| = |z|`.
    pub fn build(spec: &QuadratureSpec, mark: Option<f64>) -> DiskRule {
        let mut radial: Vec<(f64, f64)> = Vec::new();
        let marked = match mark {
            Some(rho) if spec.diagonal_refine && rho > 0.0 && rho < 1.0 => Some(rho),
            _ => None,
        };
        match marked {
            None => radial.extend(gl_on(0.0, 1.0, spec.n_r)),
            Some(rho) => {
                let half_width = 3.0 / spec.n_r as f64;
                let a = (rho - half_width).max(0.0);
                let b = (rho + half_width).min(1.0);
                if a > 0.0 {
                    let n = ((spec.n_r as f64 * a).ceil() as usize).max(4);
                    radial.extend(gl_on(0.0, a, n));
                }
                for p in 0..4 {
                    let lo = a + (b - a) * p as f64 / 4.0;
                    let hi = a + (b - a) * (p + 1) as f64 / 4.0;
                    radial.extend(gl_on(lo, hi, 8));
                }
                if b < 1.0 {
                    let n = ((spec.n_r as f64 * (1.0 - b)).ceil() as usize).max(4);
                    radial.extend(gl_on(b, 1.0, n));
                }
            }
        }
        for rw in &mut radial {
            rw.1 *= rw.0; // polar Jacobian
        }
        DiskRule {
            radial,
            n_theta: spec.n_theta_base,
        }
    }

    /// Plain rule with explicit node counts, independent of a spec. Used by
    /// probes that need resolution beyond the run defaults.
    pub fn plain(n_r: usize, n_theta: usize) -> DiskRule {
        let mut radial = gl_on(0.0, 1.0, n_r);
        for rw in &mut radial {
            rw.1 *= rw.0;
        }
        DiskRule { radial, n_theta }
    }

    pub fn node_count(&self) -> usize {
        self.radial.len() * self.n_theta
    }

    /// `\int_D f(w) dA(w)` over this rule, summed in a fixed order.
    pub fn integrate<F: Fn(C64) -> C64>(&self, integrand: F) -> Result<C64> {
        let dtheta = 2.0 * PI / self.n_theta as f64;
        let mut sum = C64::new(0.0, 0.0);
        for &(r, wr) in &self.radial {
            let mut ring = C64::new(0.0, 0.0);
            for j in 0..self.n_theta {
                let theta = 2.0 * PI * j as f64 / self.n_theta as f64;
                let w = C64::from_polar(r, theta);
                let v = integrand(w);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite(format!(
                        "disk node w = {w} (r = {r}, theta = {theta})"
                    )));
                }
                ring += v;
            }
            sum += ring * (wr * dtheta);
        }
        Ok(sum)
    }
}

/// Disk integral with the rule built from `spec`, no marked point.
pub fn disk_integral<F: Fn(C64) -> C64>(integrand: F, spec: &QuadratureSpec) -> Result<C64> {
    disk_integral_marked(integrand, None, spec)
}

/// Disk integral whose integrand carries a marked near-logarithmic point.
pub fn disk_integral_marked<F: Fn(C64) -> C64>(
    integrand: F,
    mark: Option<C64>,
    spec: &QuadratureSpec,
) -> Result<C64> {
    let rule = DiskRule::build(spec, mark.map(|z| z.norm()));
    rule.integrate(integrand)
}

/// Adaptive Simpson quadrature with an absolute tolerance.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth >= 60 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth + 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth + 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 0)
}
