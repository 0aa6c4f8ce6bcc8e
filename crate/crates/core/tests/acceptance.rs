//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured quantity next to its pinned tolerance.

use biharm_core::boundary::{CircleFunction, DiskFunction};
use biharm_core::majorants::{check_fast, check_hardy_littlewood, Majorant};
use biharm_core::quadrature::QuadratureSpec;
use biharm_core::solver::{solve, GridSpec, SolutionField};
use biharm_core::verify::{
    j1_sweep, j2_lambda_check, j3_lambda_check, lemma_sweep_q_equimodular, lemma_sweep_q_lambda,
    lemma_sweep_q_radial, lemma_sweep_q_sup, modulus_report, phi1_equivalence_check, PairSampler,
    SweepGrid, SweepReport,
};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::sync::OnceLock;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn manufactured_field() -> &'static SolutionField {
    static FIELD: OnceLock<SolutionField> = OnceLock::new();
    FIELD.get_or_init(|| {
        solve(
            &CircleFunction::zero(),
            &CircleFunction::zero(),
            &DiskFunction::constant(64.0),
            &QuadratureSpec::default(),
        )
        .unwrap()
    })
}

fn cusp_field() -> &'static SolutionField {
    static FIELD: OnceLock<SolutionField> = OnceLock::new();
    FIELD.get_or_init(|| {
        solve(
            &CircleFunction::cusp(0.75, 0.0),
            &CircleFunction::cusp(0.5, 0.0),
            &DiskFunction::constant(64.0),
            &QuadratureSpec::default(),
        )
        .unwrap()
    })
}

fn polar_grid(n_radial: usize, n_angular: usize, r_max: f64) -> Vec<C64> {
    GridSpec {
        n_radial,
        n_angular,
        r_max,
    }
    .points()
}

fn max_error<F: Fn(C64) -> C64 + Sync>(field: &SolutionField, points: &[C64], exact: F) -> f64 {
    points
        .par_iter()
        .map(|&z| (field.eval(z).unwrap() - exact(z)).norm())
        .reduce(|| 0.0, f64::max)
}

#[test]
fn criterion_01_manufactured_solution() {
    let points = polar_grid(32, 128, 0.95);
    let err = max_error(manufactured_field(), &points, |z| {
        C64::new((1.0 - z.norm_sqr()).powi(2), 0.0)
    });
    report(
        "1 (manufactured biharmonic solution)",
        err <= 1e-6,
        &format!("max |f - (1-|z|^2)^2| = {err:.3e}, tolerance 1e-6"),
    );
}

#[test]
fn criterion_02_harmonic_and_antiholomorphic_data() {
    let points = polar_grid(32, 128, 0.9);
    let spec = QuadratureSpec::default();
    let f_id = solve(
        &CircleFunction::zero(),
        &CircleFunction::harmonic(1),
        &DiskFunction::zero(),
        &spec,
    )
    .unwrap();
    let err_id = max_error(&f_id, &points, |z| z);
    let f_conj = solve(
        &CircleFunction::constant(1.0, 0.0),
        &CircleFunction::harmonic(-1),
        &DiskFunction::zero(),
        &spec,
    )
    .unwrap();
    let err_conj = max_error(&f_conj, &points, |z| z.conj());
    let worst = err_id.max(err_conj);
    report(
        "2 (exact harmonic/antiholomorphic reproduction)",
        worst <= 1e-10,
        &format!("max errors {err_id:.3e} (f=z), {err_conj:.3e} (f=conj z), tolerance 1e-10"),
    );
}

#[test]
fn criterion_03_pde_residual() {
    // 100 deterministic interior points via a Kronecker sequence
    const A1: f64 = 0.754_877_666_246_693;
    const A2: f64 = 0.569_840_290_998_053;
    let field = manufactured_field();
    let g = DiskFunction::constant(64.0);
    let points: Vec<C64> = (0..100)
        .map(|k| {
            let u = ((k + 1) as f64 * A1).fract();
            let v = ((k + 1) as f64 * A2).fract();
            C64::from_polar(0.75 * u.sqrt(), 2.0 * std::f64::consts::PI * v)
        })
        .collect();
    let worst = points
        .par_iter()
        .map(|&z| {
            let h = 1e-2 * (1.0 - z.norm());
            field.pde_residual(&g, z, h).unwrap()
        })
        .reduce(|| 0.0, f64::max);
    let tol = 1e-2 * 64.0;
    report(
        "3 (iterated-Laplacian residual)",
        worst <= tol,
        &format!("worst residual over 100 points = {worst:.3e}, tolerance {tol}"),
    );
}

#[test]
fn criterion_04_boundary_traces() {
    let trace = manufactured_field()
        .boundary_trace_check(&[0.3, 0.6, 0.9, 0.95], 64)
        .unwrap();
    let manufactured_defect = trace
        .rows
        .iter()
        .map(|row| (row.f_error - (1.0 - row.r * row.r).powi(2)).abs())
        .fold(0.0f64, f64::max);

    let cusp = solve(
        &CircleFunction::zero(),
        &CircleFunction::cusp(0.5, 0.0),
        &DiskFunction::zero(),
        &QuadratureSpec::default(),
    )
    .unwrap();
    let cusp_trace = cusp.boundary_trace_check(&[0.99], 64).unwrap();
    let cusp_err = cusp_trace.rows[0].f_error;
    let cusp_bound = 10.0 * 0.01f64.powf(0.5);
    report(
        "4 (boundary traces)",
        manufactured_defect <= 1e-6 && cusp_err <= cusp_bound,
        &format!(
            "manufactured trace defect {manufactured_defect:.3e} (tol 1e-6); \
             cusp trace at r=0.99 {cusp_err:.3e} (bound {cusp_bound})"
        ),
    );
}

#[test]
fn criterion_05_majorant_calculus() {
    let mut pass = true;
    let mut notes = Vec::new();
    for beta in [0.25, 0.5, 0.75] {
        let hl = check_hardy_littlewood(&Majorant::power_law(beta)).unwrap();
        let expect = 1.0 / (1.0 - beta);
        let ok = (hl.sup_ratio - expect).abs() <= 0.01 * expect && !hl.diverged;
        pass &= ok;
        notes.push(format!("hl({beta})={:.4}~{expect:.4}", hl.sup_ratio));

        let fast = check_fast(&Majorant::power_law(beta), 1.0).unwrap();
        let expect = 1.0 / beta;
        let ok = (fast.sup_ratio - expect).abs() <= 0.01 * expect;
        pass &= ok;
        notes.push(format!("fast({beta})={:.4}~{expect:.4}", fast.sup_ratio));
    }
    let hl1 = check_hardy_littlewood(&Majorant::power_law(1.0)).unwrap();
    pass &= hl1.diverged && hl1.sup_ratio > 1e3;
    notes.push(format!(
        "hl(1.0) diverged={} sup_ratio={}",
        hl1.diverged, hl1.sup_ratio
    ));
    report("5 (majorant calculus)", pass, &notes.join(", "));
}

#[test]
fn criterion_06_closed_form_gradient_bounds() {
    let spec = QuadratureSpec::default();
    let grid = SweepGrid::default();
    let phis = [
        CircleFunction::constant(1.0, 0.0),
        CircleFunction::harmonic(1),
        CircleFunction::cusp(0.75, 0.0),
    ];
    let gs = [
        DiskFunction::constant(64.0),
        DiskFunction::monomial(1, 0),
        DiskFunction::monomial(1, 1),
    ];
    let mut violations = 0usize;
    let mut notes = Vec::new();
    for phi in &phis {
        let r = j2_lambda_check(phi, &grid, &spec).unwrap();
        if !r.pass {
            violations += 1;
        }
        notes.push(format!("j2 max={:.4}/bound {:.4}", r.max, r.bound.unwrap()));
    }
    for g in &gs {
        let r = j3_lambda_check(g, &grid, &spec).unwrap();
        if !r.pass {
            violations += 1;
        }
        notes.push(format!("j3 max={:.4}/bound {:.4}", r.max, r.bound.unwrap()));
    }
    report(
        "6 (closed-form gradient bounds)",
        violations == 0,
        &notes.join(", "),
    );
}

fn trend_string(r: &SweepReport) -> String {
    let levels: Vec<String> = r.trend.iter().map(|t| format!("{:.4}", t.max)).collect();
    format!("{} [{}]", r.quantity, levels.join(" -> "))
}

#[test]
fn criterion_07_lemma_sweeps_stability() {
    let psi = CircleFunction::cusp(0.5, 0.0);
    let omega2 = Majorant::power_law(0.5);
    let grid = SweepGrid::default();
    let spec = QuadratureSpec::default();
    let reports = [
        j1_sweep(&psi, &omega2, &grid, &spec).unwrap(),
        lemma_sweep_q_sup(&psi, &omega2, &grid, &spec).unwrap(),
        lemma_sweep_q_lambda(&psi, &omega2, &grid, &spec).unwrap(),
        lemma_sweep_q_radial(&psi, &omega2, &grid, &spec).unwrap(),
        lemma_sweep_q_equimodular(&psi, &omega2, &grid, &spec).unwrap(),
    ];
    let pass = reports.iter().all(|r| r.pass && !r.skipped);
    let notes: Vec<String> = reports.iter().map(trend_string).collect();
    report("7 (lemma sweep stability)", pass, &notes.join("; "));
}

#[test]
fn criterion_08_theorem_modulus_stability() {
    let sampler = PairSampler::default();
    let good = modulus_report(
        cusp_field(),
        &Majorant::power_law(0.75),
        &Majorant::power_law(0.5),
        &sampler,
    )
    .unwrap();

    // psi = 0 sub-configuration covers the zero-trace corollaries
    let corollary_field = solve(
        &CircleFunction::cusp(0.75, 0.0),
        &CircleFunction::zero(),
        &DiskFunction::constant(64.0),
        &QuadratureSpec::default(),
    )
    .unwrap();
    let corollary = modulus_report(
        &corollary_field,
        &Majorant::power_law(0.75),
        &Majorant::power_law(0.5),
        &sampler,
    )
    .unwrap();

    let trends = |r: &biharm_core::verify::LipschitzReport| -> String {
        let v: Vec<String> = r
            .refinement_trend
            .iter()
            .map(|t| format!("{:.4}", t.max))
            .collect();
        v.join(" -> ")
    };
    report(
        "8 (theorem-level modulus stability)",
        good.is_stable() && corollary.is_stable(),
        &format!(
            "full data trend [{}]; zero-trace trend [{}]",
            trends(&good),
            trends(&corollary)
        ),
    );
}

#[test]
fn criterion_09_negative_control_detected() {
    let sampler = PairSampler::default();
    let control = modulus_report(
        cusp_field(),
        &Majorant::power_law(1.0),
        &Majorant::power_law(1.0),
        &sampler,
    )
    .unwrap();
    let trend: Vec<String> = control
        .refinement_trend
        .iter()
        .map(|t| format!("{:.3}", t.max))
        .collect();
    report(
        "9 (negative control fires the detector)",
        !control.is_stable(),
        &format!("linear-majorant trend [{}] must grow > 10%", trend.join(" -> ")),
    );
}

#[test]
fn criterion_10_phase_transform_inequality() {
    let phis = [
        CircleFunction::constant(1.0, 0.0),
        CircleFunction::harmonic(1),
        CircleFunction::cusp(0.75, 0.0),
    ];
    let omegas = [
        Majorant::power_law(0.5),
        Majorant::power_law(0.75),
        Majorant::power_law(1.0),
    ];
    let mut pass = true;
    let mut worst: f64 = f64::NEG_INFINITY;
    for phi in &phis {
        for omega in &omegas {
            let r = phi1_equivalence_check(phi, omega).unwrap();
            pass &= r.pass && r.max <= 1e-12;
            worst = worst.max(r.max);
        }
    }
    report(
        "10 (phase-transform seminorm inequality)",
        pass,
        &format!("worst violation {worst:.3e} (slack = -violation must be >= 0)"),
    );
}
