//! Closed-form kernels of the representation formula and their first-order
//! Wirtinger derivatives.
//!
//! All kernels act at a point `z` of the open unit disk against a boundary
//! angle `t` (circle kernels) or a second disk point `w` (the biharmonic
//! Green function). Derivative kernels are supplied analytically; finite
//! differences lose accuracy exactly where the verification sweeps probe,
//! close to the boundary.

use crate::error::{Error, Result};
use crate::C64;

/// Distance to the diagonal below which the logarithmic factor of the Green
/// function is dropped and the limit value returned.
const GREEN_DIAGONAL_CUTOFF: f64 = 1e-8;

/// A point of the open unit disk, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interior(C64);

impl Interior {
    /// Wraps `z` after checking `|z| < 1`.
    pub fn new(z: C64) -> Result<Self> {
        if z.norm_sqr() < 1.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(Interior(z))
        } else {
            Err(Error::Domain(format!(
                "point {z} is not in the open unit disk"
            )))
        }
    }

    /// Interior point from polar coordinates; `r` must lie in `[0, 1)`.
    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if (0.0..1.0).contains(&r) {
            Ok(Interior(C64::from_polar(r, theta)))
        } else {
            Err(Error::Domain(format!("radius {r} is not in [0, 1)")))
        }
    }

    pub fn get(self) -> C64 {
        self.0
    }

    pub fn abs(self) -> f64 {
        self.0.norm()
    }

    /// Argument of the point, with `arg 0` defined as `0`.
    pub fn arg(self) -> f64 {
        if self.0.norm_sqr() == 0.0 {
            0.0
        } else {
            self.0.arg()
        }
    }
}

/// Poisson kernel `P(z, e^{it}) = (1 - |z|^2) / |1 - z e^{-it}|^2`.
pub fn poisson(z: Interior, t: f64) -> f64 {
    let z = z.get();
    let denom = (C64::new(1.0, 0.0) - z * C64::from_polar(1.0, -t)).norm_sqr();
    (1.0 - z.norm_sqr()) / denom
}

/// `d/dz` of the Poisson kernel: `e^{it} / (e^{it} - z)^2`.
pub fn poisson_dz(z: Interior, t: f64) -> C64 {
    let e = C64::from_polar(1.0, t);
    let d = e - z.get();
    e / (d * d)
}

/// `d/dzbar` of the Poisson kernel, the conjugate of [`poisson_dz`].
pub fn poisson_dzbar(z: Interior, t: f64) -> C64 {
    poisson_dz(z, t).conj()
}

/// Biharmonic Green function of the unit disk,
/// `G(z,w) = |z-w|^2 log |(1 - z conj(w))/(z - w)|^2 - (1-|z|^2)(1-|w|^2)`.
///
/// Defined on the closed bidisk. The diagonal is removable: within
/// [`GREEN_DIAGONAL_CUTOFF`] of `w = z` the logarithmic factor (which tends
/// to zero) is dropped, so `green_biharmonic(z, z) = -(1-|z|^2)^2`.
pub fn green_biharmonic(z: C64, w: C64) -> f64 {
    let diff = z - w;
    let d2 = diff.norm_sqr();
    let product = -(1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    if d2 <= GREEN_DIAGONAL_CUTOFF * GREEN_DIAGONAL_CUTOFF {
        return product;
    }
    let num2 = (C64::new(1.0, 0.0) - z * w.conj()).norm_sqr();
    d2 * (num2 / d2).ln() + product
}

/// Kernel of the Q-operator, multiplying `psi(e^{it})` inside the integral:
/// `conj(z) e^{it} (1 - |z|^2) / (1 - conj(z) e^{it})^2`.
pub fn q_kernel(z: Interior, t: f64) -> C64 {
    let z = z.get();
    let zb = z.conj();
    let e = C64::from_polar(1.0, t);
    let d = C64::new(1.0, 0.0) - zb * e;
    zb * e * (1.0 - z.norm_sqr()) / (d * d)
}

/// `d/dz` of the Q kernel: `-conj(z)^2 e^{it} / (1 - conj(z) e^{it})^2`.
pub fn q_kernel_dz(z: Interior, t: f64) -> C64 {
    let zb = z.get().conj();
    let e = C64::from_polar(1.0, t);
    let d = C64::new(1.0, 0.0) - zb * e;
    -zb * zb * e / (d * d)
}

/// `d/dzbar` of the Q kernel:
/// `-|z|^2 e^{it} / (1 - conj(z) e^{it})^2
///  + (1 - |z|^2) e^{it} (1 + conj(z) e^{it}) / (1 - conj(z) e^{it})^3`.
pub fn q_kernel_dzbar(z: Interior, t: f64) -> C64 {
    let z = z.get();
    let zb = z.conj();
    let e = C64::from_polar(1.0, t);
    let one = C64::new(1.0, 0.0);
    let d = one - zb * e;
    let d2 = d * d;
    let r2 = z.norm_sqr();
    -r2 * e / d2 + (1.0 - r2) * e * (one + zb * e) / (d2 * d)
}
