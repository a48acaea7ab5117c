// SPDX-License-Identifier: Apache-2.0

//! Classical solution `Q = Q_h + Q_p` of the damped, driven oscillator and
//! its mechanical energy.

use crate::error::Result;
use crate::forcing::ForceModel;
use crate::model::{InitialState, Oscillator, Scenario, TimeGrid, TrajectoryPoint};
use crate::numerics::ConvolutionAccumulator;

/// Free damped oscillation `Q0 e^{-γt/2} cos(ωt + φ)` and its derivative.
pub fn homogeneous_solution(osc: &Oscillator, init: &InitialState, t: f64) -> (f64, f64) {
    let amp = init.q0 * (-0.5 * osc.gamma() * t).exp();
    let (sin, cos) = (osc.omega() * t + init.varphi).sin_cos();
    let q = amp * cos;
    let qdot = -amp * (0.5 * osc.gamma() * cos + osc.omega() * sin);
    (q, qdot)
}

/// Full trajectory of a scenario on its output grid.
pub fn trajectory(scenario: &Scenario) -> Result<Vec<TrajectoryPoint>> {
    trajectory_on(
        &scenario.oscillator,
        &scenario.init,
        &scenario.force,
        &scenario.grid,
    )
}

/// Streams once through the grid, advancing the convolution one panel per
/// output step.
pub fn trajectory_on(
    osc: &Oscillator,
    init: &InitialState,
    force: &ForceModel,
    grid: &TimeGrid,
) -> Result<Vec<TrajectoryPoint>> {
    let mut acc = ConvolutionAccumulator::new(osc, grid.dt())?;
    let mut out = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        if i > 0 {
            acc.advance(force, 1)?;
        }
        let t = grid.time(i);
        let (qh, qdh) = homogeneous_solution(osc, init, t);
        let (qp, qdp) = acc.value(t)?;
        out.push(TrajectoryPoint::new(osc, t, qh + qp, qdh + qdp));
    }
    Ok(out)
}

/// Mechanical energy `m Q̇²/2 + m ω0² Q²/2`.
pub fn classical_energy(osc: &Oscillator, point: &TrajectoryPoint) -> f64 {
    let m = osc.m();
    0.5 * m * point.qdot * point.qdot + 0.5 * m * osc.omega0() * osc.omega0() * point.q * point.q
}
