// SPDX-License-Identifier: Apache-2.0

//! Self-check suite covering the invariants of every module. Each check
//! reports the observed worst-case value next to its pinned tolerance.

use crate::classical::{classical_energy, homogeneous_solution, trajectory, trajectory_on};
use crate::error::Result;
use crate::figures::Figure;
use crate::forcing::{sawtooth_ramp, sawtooth_series, tmafm_force, ForceModel, Tabulated};
use crate::model::{InitialState, Oscillator, OscillatorParams, Scenario, TimeGrid};
use crate::numerics::{rk4_integrate, ConvolutionAccumulator, OdeState};
use crate::quantum::{
    density, position_spread, quantum_energy, quantum_energy_undriven, uncertainty_product,
    wave_packet, Eigenstate,
};
use std::f64::consts::{FRAC_PI_2, TAU};

/// Direction of the comparison against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub tolerance: f64,
    pub bound: Bound,
    pub observed: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, bound: Bound, tolerance: f64, observed: f64) -> Self {
        let passed = match bound {
            Bound::AtMost => observed <= tolerance,
            Bound::AtLeast => observed >= tolerance,
        };
        Self {
            name: name.into(),
            tolerance,
            bound,
            observed,
            passed,
        }
    }

    fn at_most(name: impl Into<String>, tolerance: f64, observed: f64) -> Self {
        Self::new(name, Bound::AtMost, tolerance, observed)
    }

    fn failed(name: impl Into<String>, tolerance: f64) -> Self {
        Self::new(name, Bound::AtMost, tolerance, f64::NAN)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SuiteOptions {
    /// Multiplies the derived frequency of every figure scenario. Used to
    /// confirm that the suite notices a broken model.
    pub omega_factor: Option<f64>,
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    model_checks(&mut out);
    forcing_checks(&mut out);
    numerics_checks(&mut out);
    let figures: Vec<(Figure, Scenario)> = Figure::ALL
        .iter()
        .map(|&f| {
            let mut s = f.scenario();
            if let Some(k) = opts.omega_factor {
                let w = s.oscillator.omega();
                s.oscillator = s.oscillator.with_omega_override(w * k);
            }
            (f, s)
        })
        .collect();
    classical_checks(&figures, &mut out);
    quantum_checks(&figures, &mut out);
    out
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn param_sweep() -> impl Iterator<Item = OscillatorParams> {
    let omegas = [0.01, 0.3, 1.0, 1.5, 7.0, 250.0];
    let fracs = [0.0, 1e-6, 0.05, 0.5, 0.9, 0.999];
    omegas.into_iter().flat_map(move |w0| {
        fracs
            .into_iter()
            .map(move |fr| OscillatorParams::new(1.3, w0, 2.0 * w0 * fr, 0.7))
    })
}

fn model_checks(out: &mut Vec<CheckResult>) {
    let mut worst = 0.0f64;
    let mut mismatches = 0.0;
    for p in param_sweep() {
        let osc = p.validate().expect("sweep is underdamped");
        let w = osc.omega();
        let err = (p.omega0 * p.omega0 - w * w - 0.25 * p.gamma * p.gamma).abs();
        worst = worst.max(err / (p.omega0 * p.omega0));
        if w > p.omega0 || (p.gamma == 0.0) != (w == p.omega0) {
            mismatches += 1.0;
        }
        if osc.params().validate().ok() != Some(osc) {
            mismatches += 1.0;
        }
    }
    out.push(CheckResult::at_most(
        "model.frequency_identity",
        8.0 * f64::EPSILON,
        worst,
    ));
    out.push(CheckResult::at_most(
        "model.frequency_bounds_and_idempotence",
        0.0,
        mismatches,
    ));
}

fn forcing_checks(out: &mut Vec<CheckResult>) {
    let tau = 1.0;
    let (mut odd, mut periodic, mut ramp) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..1000 {
        let t = -0.45 * tau + 0.9 * tau * i as f64 / 999.0;
        let f = sawtooth_series(1.0, 1.0, TAU, 1000, t);
        odd = odd.max((sawtooth_series(1.0, 1.0, TAU, 1000, -t) + f).abs());
        periodic = periodic.max((sawtooth_series(1.0, 1.0, TAU, 1000, t + tau) - f).abs());
        ramp = ramp.max((f - sawtooth_ramp(1.0, 1.0, TAU, t)).abs());
    }
    out.push(CheckResult::at_most("forcing.sawtooth_odd", 1e-12, odd));
    out.push(CheckResult::at_most(
        "forcing.sawtooth_periodic",
        1e-12,
        periodic,
    ));
    out.push(CheckResult::at_most("forcing.sawtooth_vs_ramp", 1e-3, ramp));

    let (f_ext, k, d0, a0, m_eff) = (0.3, 0.5, 0.5, 0.3, 1.0);
    let lo = (f_ext + k * (d0 - a0)) / m_eff;
    let hi = (f_ext + k * (d0 + a0)) / m_eff;
    let mut violation = 0.0f64;
    for i in 0..2000 {
        let f = tmafm_force(f_ext, k, d0, a0, 0.3, m_eff, i as f64 * 0.05);
        violation = violation.max(lo - f).max(f - hi);
    }
    out.push(CheckResult::at_most(
        "forcing.tmafm_range",
        1e-15,
        violation,
    ));
}

/// Duhamel integral at `t = panels * h` by direct composite Simpson over
/// the full history, O(n) per call.
fn naive_particular(osc: &Oscillator, force: &ForceModel, h: f64, panels: usize) -> Result<f64> {
    let t = panels as f64 * h;
    let (g, w) = (osc.gamma(), osc.omega());
    let kernel = |s: f64| -> Result<f64> {
        let lag = t - s;
        Ok(force.eval(s)? / w * (-0.5 * g * lag).exp() * (w * lag).sin())
    };
    let mut sum = 0.0;
    for j in 0..panels {
        let a = j as f64 * h;
        let mid = (j as f64 + 0.5) * h;
        let b = (j + 1) as f64 * h;
        sum += h / 6.0 * (kernel(a)? + 4.0 * kernel(mid)? + kernel(b)?);
    }
    Ok(sum)
}

fn numerics_checks(out: &mut Vec<CheckResult>) {
    let osc = OscillatorParams::new(1.0, 1.0, 0.1, 1.0)
        .validate()
        .unwrap();

    let conv = (|| -> Result<f64> {
        let force = Figure::Fig1A.scenario().force;
        let h = 0.01;
        let mut acc = ConvolutionAccumulator::new(&osc, h)?;
        let golden = 0.618_033_988_749_894_9;
        let mut panels: Vec<usize> = (1..=100)
            .map(|i| 1 + ((i as f64 * golden).fract() * 2000.0) as usize)
            .collect();
        panels.sort_unstable();
        let (mut worst, mut scale) = (0.0f64, 0.0f64);
        for n in panels {
            acc.extend_to(&force, n as f64 * h)?;
            let (q, _) = acc.value(n as f64 * h)?;
            let naive = naive_particular(&osc, &force, h, n)?;
            worst = worst.max((q - naive).abs());
            scale = scale.max(naive.abs());
        }
        Ok(worst / scale)
    })();
    out.push(match conv {
        Ok(v) => CheckResult::at_most("numerics.convolution_vs_direct_quadrature", 1e-10, v),
        Err(_) => CheckResult::failed("numerics.convolution_vs_direct_quadrature", 1e-10),
    });

    let init = InitialState::new(3.0, 0.0).unwrap();
    let rk4_err = |dt: f64| -> f64 {
        let grid = TimeGrid::new(20.0, dt).unwrap();
        let start = OdeState {
            t: 0.0,
            q: 3.0,
            v: -0.05 * 3.0,
        };
        let traj = rk4_integrate(&osc, &ForceModel::Zero, start, &grid).unwrap();
        traj.iter()
            .map(|s| (s.q - homogeneous_solution(&osc, &init, s.t).0).abs())
            .fold(0.0, f64::max)
    };
    let ratio = rk4_err(0.04) / rk4_err(0.02);
    out.push(CheckResult::new(
        "numerics.rk4_fourth_order",
        Bound::AtLeast,
        8.0,
        ratio,
    ));
    out.push(CheckResult::at_most(
        "numerics.rk4_vs_free_oscillation",
        1e-7,
        rk4_err(1e-3) / 3.0,
    ));

    let free = OscillatorParams::new(1.0, 1.0, 0.0, 1.0)
        .validate()
        .unwrap();
    let grid = TimeGrid::new(10.0 * TAU, 1e-3).unwrap();
    let start = OdeState {
        t: 0.0,
        q: 1.0,
        v: 0.0,
    };
    let drift = rk4_integrate(&free, &ForceModel::Zero, start, &grid)
        .unwrap()
        .iter()
        .map(|s| (0.5 * (s.v * s.v + s.q * s.q) - 0.5).abs() / 0.5)
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most(
        "numerics.rk4_energy_drift",
        1e-8,
        drift,
    ));
}

/// Relative sup-norm distance between the closed-form trajectory and RK4,
/// worst of position and velocity.
pub fn trajectory_vs_rk4(scenario: &Scenario, dt: f64) -> Result<f64> {
    let grid = TimeGrid::new(scenario.grid.t_end(), dt)?;
    let osc = &scenario.oscillator;
    let closed = trajectory_on(osc, &scenario.init, &scenario.force, &grid)?;
    let (q0, v0) = homogeneous_solution(osc, &scenario.init, 0.0);
    let start = OdeState {
        t: 0.0,
        q: q0,
        v: v0,
    };
    let rk = rk4_integrate(osc, &scenario.force, start, &grid)?;
    let sup = |f: &dyn Fn(usize) -> f64| (0..rk.len()).map(f).fold(0.0, f64::max);
    let dq = sup(&|i| (closed[i].q - rk[i].q).abs()) / sup(&|i| rk[i].q.abs());
    let dv = sup(&|i| (closed[i].qdot - rk[i].v).abs()) / sup(&|i| rk[i].v.abs());
    Ok(dq.max(dv))
}

fn classical_checks(figures: &[(Figure, Scenario)], out: &mut Vec<CheckResult>) {
    let free = OscillatorParams::new(1.0, 1.0, 0.0, 1.0)
        .validate()
        .unwrap();
    let init = InitialState::new(3.0, 0.0).unwrap();
    let grid = TimeGrid::new(20.0, 0.01).unwrap();
    let conservative = trajectory_on(&free, &init, &ForceModel::Zero, &grid)
        .unwrap()
        .iter()
        .map(|pt| (classical_energy(&free, pt) - 4.5).abs() / 4.5)
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most(
        "classical.conservative_energy",
        1e-12,
        conservative,
    ));

    let damped = OscillatorParams::new(1.0, 1.0, 0.1, 0.0)
        .validate()
        .unwrap();
    let undriven = trajectory_on(&damped, &init, &ForceModel::Zero, &grid)
        .unwrap()
        .iter()
        .map(|pt| {
            let closed = quantum_energy_undriven(&damped, &init, pt.t);
            (classical_energy(&damped, pt) - closed).abs() / closed
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most(
        "classical.undriven_energy_closed_form",
        1e-9,
        undriven,
    ));

    for (fig, scenario) in figures {
        let name = format!("classical.trajectory_vs_rk4.fig{fig}");
        out.push(match trajectory_vs_rk4(scenario, 1e-3) {
            Ok(v) => CheckResult::at_most(name, 1e-5, v),
            Err(_) => CheckResult::failed(name, 1e-5),
        });
    }

    let linear = (|| -> Result<f64> {
        let ts: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        let f1: Vec<f64> = ts.iter().map(|t| (1.3 * t).sin() + 0.2).collect();
        let f2: Vec<f64> = ts.iter().map(|t| 0.5 * (-0.3 * t).exp() * t).collect();
        let tab = |v: Vec<f64>| -> Result<ForceModel> {
            Ok(ForceModel::Tabulated(Tabulated::new(
                ts.iter().copied().zip(v).collect(),
            )?))
        };
        let sum: Vec<f64> = f1.iter().zip(&f2).map(|(a, b)| a + b).collect();
        let zero = InitialState::new(0.0, 0.0)?;
        let grid = TimeGrid::new(10.0, 0.01)?;
        let run = |f: &ForceModel| trajectory_on(&damped, &zero, f, &grid);
        let (a, b, c) = (run(&tab(f1)?)?, run(&tab(f2)?)?, run(&tab(sum)?)?);
        let scale = c.iter().map(|p| p.q.abs()).fold(0.0, f64::max);
        Ok((0..c.len())
            .map(|i| (a[i].q + b[i].q - c[i].q).abs())
            .fold(0.0, f64::max)
            / scale)
    })();
    out.push(match linear {
        Ok(v) => CheckResult::at_most("classical.linearity_in_force", 1e-12, v),
        Err(_) => CheckResult::failed("classical.linearity_in_force", 1e-12),
    });
}

fn quantum_checks(figures: &[(Figure, Scenario)], out: &mut Vec<CheckResult>) {
    for (fig, scenario) in figures {
        let raw = scenario.oscillator.params();
        // reference frequency recomputed from the raw parameters
        let omega_ref = (raw.omega0 * raw.omega0 - raw.gamma * raw.gamma / 4.0).sqrt();

        let classical = scenario.with_hbar(0.0).and_then(|s| {
            let osc = s.oscillator;
            Ok(trajectory(&s)?
                .iter()
                .map(|pt| {
                    let r = quantum_energy(&osc, pt);
                    (r.e_quantum - r.e_classical).abs() / r.e_classical.max(1e-30)
                })
                .fold(0.0, f64::max))
        });
        let name = format!("quantum.correspondence_hbar0.fig{fig}");
        out.push(match classical {
            Ok(v) => CheckResult::at_most(name, 1e-12, v),
            Err(_) => CheckResult::failed(name, 1e-12),
        });

        let offset = trajectory(scenario).map(|traj| {
            let osc = scenario.oscillator;
            traj.iter()
                .map(|pt| {
                    let r = quantum_energy(&osc, pt);
                    let expected = 0.5 * raw.hbar * raw.omega0 * raw.omega0 / omega_ref
                        * (-raw.gamma * pt.t).exp();
                    ((r.e_quantum - r.e_classical) - expected).abs() / expected
                })
                .fold(0.0, f64::max)
        });
        let name = format!("quantum.correspondence_zero_point.fig{fig}");
        out.push(match offset {
            Ok(v) => CheckResult::at_most(name, 1e-12, v),
            Err(_) => CheckResult::failed(name, 1e-12),
        });
    }

    let osc = OscillatorParams::new(1.0, 1.0, 0.1, 1.0)
        .validate()
        .unwrap();
    let init = InitialState::new(3.0, 0.0).unwrap();
    let grid = TimeGrid::new(20.0, 0.01).unwrap();
    let undriven = trajectory_on(&osc, &init, &ForceModel::Zero, &grid).unwrap();
    let eq_paths = undriven
        .iter()
        .map(|pt| {
            let a = quantum_energy(&osc, pt).e_quantum;
            let b = quantum_energy_undriven(&osc, &init, pt.t);
            (a - b).abs() / b
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most(
        "quantum.energy_general_vs_undriven",
        1e-9,
        eq_paths,
    ));

    let mut formula = 0.0f64;
    let mut bound_violation = 0.0f64;
    for p in param_sweep() {
        let o = p.validate().unwrap();
        let reference =
            p.hbar * p.omega0 / (2.0 * (p.omega0.powi(2) - p.gamma.powi(2) / 4.0).sqrt());
        let u = uncertainty_product(&o);
        formula = formula.max((u - reference).abs() / reference);
        bound_violation = bound_violation.max((0.5 * p.hbar - u) / (0.5 * p.hbar));
        if p.gamma == 0.0 {
            bound_violation = bound_violation.max((u - 0.5 * p.hbar).abs() / (0.5 * p.hbar));
        }
    }
    out.push(CheckResult::at_most(
        "quantum.uncertainty_formula",
        1e-12,
        formula,
    ));
    out.push(CheckResult::at_most(
        "quantum.uncertainty_lower_bound",
        2.0 * f64::EPSILON,
        bound_violation,
    ));
    let reference = figures[0].1.clone();
    let base = uncertainty_product(&reference.oscillator);
    let spread = force_variants()
        .into_iter()
        .filter_map(|force| {
            Scenario::new(reference.oscillator, reference.init, force, reference.grid).ok()
        })
        .map(|s| (uncertainty_product(&s.oscillator) - base).abs())
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most(
        "quantum.uncertainty_force_independent",
        0.0,
        spread,
    ));

    let mut center = 0.0f64;
    for pt in &undriven {
        match Eigenstate::new(&osc, &init, pt.t, FRAC_PI_2) {
            Ok(state) => center = center.max((state.center_offset() - pt.q).abs() / init.q0),
            Err(_) => center = f64::NAN,
        }
        let wp = wave_packet(&osc, pt);
        center = center.max((wp.center - pt.q).abs() / init.q0);
    }
    out.push(CheckResult::at_most("quantum.packet_center", 1e-12, center));

    let (mut norm, mut first, mut second) = (0.0f64, 0.0f64, 0.0f64);
    for pt in undriven.iter().step_by(100) {
        let wp = wave_packet(&osc, pt);
        let (a, b) = (wp.center - 8.0 * wp.sigma, wp.center + 8.0 * wp.sigma);
        let pdf = |q: f64| density(&wp, q).unwrap_or(f64::NAN);
        let m0 = simpson(pdf, a, b, 10_000);
        let m1 = simpson(|q| q * pdf(q), a, b, 10_000);
        let m2 = simpson(|q| (q - wp.center).powi(2) * pdf(q), a, b, 10_000);
        norm = norm.max((m0 - 1.0).abs());
        first = first.max((m1 - wp.center).abs());
        second = second.max((m2.sqrt() - wp.sigma).abs());
    }
    out.push(CheckResult::at_most(
        "quantum.density_normalization",
        1e-6,
        norm,
    ));
    out.push(CheckResult::at_most(
        "quantum.density_first_moment",
        1e-6,
        first,
    ));
    out.push(CheckResult::at_most(
        "quantum.density_second_moment",
        1e-6,
        second,
    ));

    let width = (0..100)
        .map(|i| {
            let t = i as f64 * 0.2;
            let s = position_spread(&osc, t);
            (s * s * osc.m() * osc.omega() * (osc.gamma() * t).exp() - 0.5 * osc.hbar()).abs()
                / (0.5 * osc.hbar())
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most("quantum.width_law", 1e-12, width));
}

fn force_variants() -> Vec<ForceModel> {
    let mut v = vec![ForceModel::Zero, ForceModel::Constant { f0: 0.3 }];
    v.extend(Figure::ALL.iter().map(|f| f.scenario().force));
    v.push(ForceModel::Tabulated(
        Tabulated::new(vec![(0.0, 0.0), (20.0, 1.0)]).unwrap(),
    ));
    v
}

/// Composite Simpson with `n` (even) intervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}
