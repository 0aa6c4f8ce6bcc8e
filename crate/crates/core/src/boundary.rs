//! Boundary data on the unit circle, polynomial source terms on the closed
//! disk, the phase transform `phi_1(e^{it}) = phi(e^{it}) e^{-it}`, sup-norms
//! and empirical Lipschitz seminorms.
//!
//! Boundary data are restricted to trigonometric polynomials, Hoelder cusps
//! `|zeta - zeta_0|^beta` and linear combinations of these; that spans the
//! smooth, merely-Hoelder and mixed regimes the verification sweeps need
//! while keeping the serialized form trivial.

use crate::error::{Error, Result};
use crate::majorants::Majorant;
use crate::verify::{LipschitzReport, TrendPoint};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Circle sample count used by sup-norm estimation.
const SUP_NORM_SAMPLES: usize = 1 << 14;

/// Maximum total degree accepted for bivariate source polynomials.
const MAX_BIVAR_DEGREE: u32 = 32;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrigCoeff {
    pub k: i32,
    pub re: f64,
    pub im: f64,
}

/// A function on the unit circle, evaluated at `e^{it}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CircleFunction {
    /// `sum_k c_k e^{ikt}`.
    TrigPoly { coeffs: Vec<TrigCoeff> },
    /// `|e^{it} - e^{i anchor_t}|^beta` with `beta` in `(0, 1)`.
    Hoelder { beta: f64, anchor_t: f64 },
    Sum { terms: Vec<CircleFunction> },
    Scaled {
        re: f64,
        im: f64,
        term: Box<CircleFunction>,
    },
    /// `term(e^{it}) e^{ikt}`; the closed form of the phase transform applied
    /// to non-polynomial data.
    Modulated { k: i32, term: Box<CircleFunction> },
}

impl CircleFunction {
    pub fn zero() -> CircleFunction {
        CircleFunction::TrigPoly { coeffs: vec![] }
    }

    pub fn constant(re: f64, im: f64) -> CircleFunction {
        CircleFunction::TrigPoly {
            coeffs: vec![TrigCoeff { k: 0, re, im }],
        }
    }

    /// `e^{ikt}`.
    pub fn harmonic(k: i32) -> CircleFunction {
        CircleFunction::TrigPoly {
            coeffs: vec![TrigCoeff { k, re: 1.0, im: 0.0 }],
        }
    }

    pub fn cusp(beta: f64, anchor_t: f64) -> CircleFunction {
        CircleFunction::Hoelder { beta, anchor_t }
    }

    pub fn validate_spec(&self) -> Result<()> {
        match self {
            CircleFunction::TrigPoly { coeffs } => {
                for c in coeffs {
                    if !(c.re.is_finite() && c.im.is_finite()) {
                        return Err(Error::InvalidSpec("non-finite trig coefficient".into()));
                    }
                }
            }
            CircleFunction::Hoelder { beta, anchor_t } => {
                if !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "cusp exponent {beta} outside (0, 1)"
                    )));
                }
                if !anchor_t.is_finite() {
                    return Err(Error::InvalidSpec("non-finite anchor".into()));
                }
            }
            CircleFunction::Sum { terms } => {
                for t in terms {
                    t.validate_spec()?;
                }
            }
            CircleFunction::Scaled { re, im, term } => {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(Error::InvalidSpec("non-finite scale".into()));
                }
                term.validate_spec()?;
            }
            CircleFunction::Modulated { term, .. } => term.validate_spec()?,
        }
        Ok(())
    }

    /// Value at `e^{it}`.
    pub fn eval_t(&self, t: f64) -> C64 {
        match self {
            CircleFunction::TrigPoly { coeffs } => coeffs
                .iter()
                .fold(C64::new(0.0, 0.0), |acc, c| {
                    acc + C64::new(c.re, c.im) * C64::from_polar(1.0, c.k as f64 * t)
                }),
            CircleFunction::Hoelder { beta, anchor_t } => {
                let chord = 2.0 * (0.5 * (t - anchor_t)).sin().abs();
                C64::new(chord.powf(*beta), 0.0)
            }
            CircleFunction::Sum { terms } => terms
                .iter()
                .fold(C64::new(0.0, 0.0), |acc, f| acc + f.eval_t(t)),
            CircleFunction::Scaled { re, im, term } => C64::new(*re, *im) * term.eval_t(t),
            CircleFunction::Modulated { k, term } => {
                term.eval_t(t) * C64::from_polar(1.0, *k as f64 * t)
            }
        }
    }

    /// The phase transform `t -> f(e^{it}) e^{-it}`. Trigonometric
    /// polynomials shift every index down by one; other data wrap into the
    /// pointwise product form.
    pub fn to_phi1(&self) -> CircleFunction {
        match self {
            CircleFunction::TrigPoly { coeffs } => CircleFunction::TrigPoly {
                coeffs: coeffs
                    .iter()
                    .map(|c| TrigCoeff {
                        k: c.k - 1,
                        re: c.re,
                        im: c.im,
                    })
                    .collect(),
            },
            CircleFunction::Sum { terms } => CircleFunction::Sum {
                terms: terms.iter().map(|f| f.to_phi1()).collect(),
            },
            CircleFunction::Scaled { re, im, term } => CircleFunction::Scaled {
                re: *re,
                im: *im,
                term: Box::new(term.to_phi1()),
            },
            CircleFunction::Modulated { k, term } => CircleFunction::Modulated {
                k: k - 1,
                term: term.clone(),
            },
            cusp @ CircleFunction::Hoelder { .. } => CircleFunction::Modulated {
                k: -1,
                term: Box::new(cusp.clone()),
            },
        }
    }

    /// Anchor angles of every cusp component, for cusp-aware samplers.
    pub fn anchors(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_anchors(&mut out);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    fn collect_anchors(&self, out: &mut Vec<f64>) {
        match self {
            CircleFunction::Hoelder { anchor_t, .. } => out.push(*anchor_t),
            CircleFunction::Sum { terms } => {
                for t in terms {
                    t.collect_anchors(out);
                }
            }
            CircleFunction::Scaled { term, .. } | CircleFunction::Modulated { term, .. } => {
                term.collect_anchors(out)
            }
            CircleFunction::TrigPoly { .. } => {}
        }
    }

    /// Sup-norm estimate by dense sampling on 2^14 uniform angles.
    pub fn sup_norm(&self) -> f64 {
        let mut max = 0.0f64;
        for j in 0..SUP_NORM_SAMPLES {
            let t = 2.0 * PI * j as f64 / SUP_NORM_SAMPLES as f64;
            max = max.max(self.eval_t(t).norm());
        }
        max
    }

    /// The reflected conjugate `t -> conj(f(-t))`, the boundary datum of the
    /// conjugated-and-reflected solution; used by symmetry checks.
    pub fn conjugate_reflect(&self) -> CircleFunction {
        match self {
            CircleFunction::TrigPoly { coeffs } => CircleFunction::TrigPoly {
                coeffs: coeffs
                    .iter()
                    .map(|c| TrigCoeff {
                        k: c.k,
                        re: c.re,
                        im: -c.im,
                    })
                    .collect(),
            },
            CircleFunction::Hoelder { beta, anchor_t } => CircleFunction::Hoelder {
                beta: *beta,
                anchor_t: -anchor_t,
            },
            CircleFunction::Sum { terms } => CircleFunction::Sum {
                terms: terms.iter().map(|f| f.conjugate_reflect()).collect(),
            },
            CircleFunction::Scaled { re, im, term } => CircleFunction::Scaled {
                re: *re,
                im: -*im,
                term: Box::new(term.conjugate_reflect()),
            },
            CircleFunction::Modulated { k, term } => CircleFunction::Modulated {
                k: *k,
                term: Box::new(term.conjugate_reflect()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BivarTerm {
    pub j: u32,
    pub k: u32,
    pub re: f64,
    pub im: f64,
}

/// A source term on the closed disk: a bivariate polynomial in `w, conj(w)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DiskFunction {
    BivarPoly { terms: Vec<BivarTerm> },
}

impl DiskFunction {
    pub fn zero() -> DiskFunction {
        DiskFunction::BivarPoly { terms: vec![] }
    }

    pub fn constant(re: f64) -> DiskFunction {
        DiskFunction::BivarPoly {
            terms: vec![BivarTerm {
                j: 0,
                k: 0,
                re,
                im: 0.0,
            }],
        }
    }

    /// `w^j conj(w)^k` with unit coefficient.
    pub fn monomial(j: u32, k: u32) -> DiskFunction {
        DiskFunction::BivarPoly {
            terms: vec![BivarTerm {
                j,
                k,
                re: 1.0,
                im: 0.0,
            }],
        }
    }

    pub fn validate_spec(&self) -> Result<()> {
        let DiskFunction::BivarPoly { terms } = self;
        for t in terms {
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::InvalidSpec("non-finite source coefficient".into()));
            }
            if t.j + t.k > MAX_BIVAR_DEGREE {
                return Err(Error::InvalidSpec(format!(
                    "monomial degree {} exceeds {MAX_BIVAR_DEGREE}",
                    t.j + t.k
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        let DiskFunction::BivarPoly { terms } = self;
        terms.iter().all(|t| t.re == 0.0 && t.im == 0.0)
    }

    pub fn eval(&self, w: C64) -> C64 {
        let DiskFunction::BivarPoly { terms } = self;
        let wb = w.conj();
        terms.iter().fold(C64::new(0.0, 0.0), |acc, t| {
            acc + C64::new(t.re, t.im) * w.powu(t.j) * wb.powu(t.k)
        })
    }

    /// Sup-norm estimate over a 256 x 512 polar grid of the closed disk.
    pub fn sup_norm(&self) -> f64 {
        let (n_r, n_t) = (256, 512);
        let mut max = 0.0f64;
        for i in 0..n_r {
            let r = i as f64 / (n_r - 1) as f64;
            for j in 0..n_t {
                let theta = 2.0 * PI * j as f64 / n_t as f64;
                max = max.max(self.eval(C64::from_polar(r, theta)).norm());
            }
        }
        max
    }

    /// `w -> conj(g(conj(w)))`, the source of the conjugated-and-reflected
    /// problem.
    pub fn conjugate_reflect(&self) -> DiskFunction {
        let DiskFunction::BivarPoly { terms } = self;
        DiskFunction::BivarPoly {
            terms: terms
                .iter()
                .map(|t| BivarTerm {
                    j: t.j,
                    k: t.k,
                    re: t.re,
                    im: -t.im,
                })
                .collect(),
        }
    }
}

/// Pair-sampling parameters for the circle seminorm estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeminormParams {
    /// Uniform angular grid size at the finest level ("all pairs" of it are
    /// sampled); rounded up to a multiple of 4 so the levels nest.
    pub grid: usize,
    /// Geometric anchor-straddling pair count per cusp anchor at the finest
    /// level.
    pub anchor_pairs: usize,
}

impl Default for SeminormParams {
    fn default() -> Self {
        SeminormParams {
            grid: 256,
            anchor_pairs: 512,
        }
    }
}

/// Lower-bound estimate of the Lipschitz seminorm
/// `sup |f(z1) - f(z2)| / omega(|z1 - z2|)` over the circle, by all pairs of
/// a uniform angular grid plus geometric pairs straddling each cusp anchor.
/// Distances are chordal. Three nested grid levels provide the refinement
/// trend.
pub fn lipschitz_seminorm_circle(
    f: &CircleFunction,
    omega: &Majorant,
    n_pairs: usize,
) -> Result<LipschitzReport> {
    if n_pairs < 1 {
        return Err(Error::InvalidSpec("n_pairs must be >= 1".into()));
    }
    omega.validate_spec()?;
    let full = n_pairs.max(8).div_ceil(4) * 4;
    let anchors = f.anchors();
    let mut trend = Vec::new();
    let mut best = 0.0f64;
    let mut witness = (0.0f64, 0.0f64);
    let mut pair_count = 0usize;
    let mut divergent = false;

    let params = SeminormParams {
        grid: full,
        anchor_pairs: 512,
    };
    for (level, divisor) in [(1usize, 4usize), (2, 2), (3, 1)] {
        let n = params.grid / divisor;
        let angles: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
        let values: Vec<C64> = angles.iter().map(|&t| f.eval_t(t)).collect();
        let mut level_max = best;
        for i in 0..n {
            for j in (i + 1)..n {
                pair_count += 1;
                ratio_update(
                    angles[i],
                    angles[j],
                    values[i],
                    values[j],
                    omega,
                    &mut level_max,
                    &mut witness,
                    &mut divergent,
                );
            }
        }
        let n_anchor = params.anchor_pairs * 2usize.pow(level as u32) / 8;
        for &t0 in &anchors {
            let m = n_anchor / 2;
            for q in 0..m {
                // chord scales from ~1e-7 up to order one
                let delta = 1e-7 * (1e7f64).powf(q as f64 / (m.max(2) - 1) as f64);
                for (ta, tb) in [(t0, t0 + delta), (t0 - delta, t0 + delta)] {
                    pair_count += 1;
                    ratio_update(
                        ta,
                        tb,
                        f.eval_t(ta),
                        f.eval_t(tb),
                        omega,
                        &mut level_max,
                        &mut witness,
                        &mut divergent,
                    );
                }
            }
        }
        best = best.max(level_max);
        trend.push(TrendPoint {
            level,
            max: level_max,
        });
    }

    let w1 = C64::from_polar(1.0, witness.0);
    let w2 = C64::from_polar(1.0, witness.1);
    Ok(LipschitzReport {
        max_ratio: best,
        witness_pair: [[w1.re, w1.im], [w2.re, w2.im]],
        pair_count,
        refinement_trend: trend,
        omegas: vec![omega.id()],
        divergent,
    })
}

#[allow(clippy::too_many_arguments)]
fn ratio_update(
    ta: f64,
    tb: f64,
    fa: C64,
    fb: C64,
    omega: &Majorant,
    max: &mut f64,
    witness: &mut (f64, f64),
    divergent: &mut bool,
) {
    let chord = (C64::from_polar(1.0, ta) - C64::from_polar(1.0, tb)).norm();
    if chord == 0.0 {
        return;
    }
    let num = (fa - fb).norm();
    let den = omega.value(chord);
    if den == 0.0 {
        if num > 1e-13 * (1.0 + fa.norm() + fb.norm()) {
            *divergent = true;
        }
        return;
    }
    let r = num / den;
    if r > *max {
        *max = r;
        *witness = (ta, tb);
    }
}
