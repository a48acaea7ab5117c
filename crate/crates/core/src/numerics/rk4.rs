// SPDX-License-Identifier: Apache-2.0

use crate::error::Result;
use crate::forcing::ForceModel;
use crate::model::{Oscillator, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub t: f64,
    pub q: f64,
    pub v: f64,
}

/// Classical fourth-order Runge-Kutta for `q'' + γ q' + ω0² q = f(t)`.
///
/// Returns one state per grid point, starting with `init` at `t = 0`.
pub fn rk4_integrate(
    osc: &Oscillator,
    force: &ForceModel,
    init: OdeState,
    grid: &TimeGrid,
) -> Result<Vec<OdeState>> {
    let (gamma, w2) = (osc.gamma(), osc.omega0() * osc.omega0());
    let accel = |t: f64, q: f64, v: f64| -> Result<f64> { Ok(force.eval(t)? - gamma * v - w2 * q) };

    let h = grid.dt();
    let mut out = Vec::with_capacity(grid.len());
    let (mut q, mut v) = (init.q, init.v);
    out.push(OdeState { t: 0.0, q, v });
    for i in 0..grid.steps() {
        let t = grid.time(i);
        let tm = t + 0.5 * h;
        let k1q = v;
        let k1v = accel(t, q, v)?;
        let k2q = v + 0.5 * h * k1v;
        let k2v = accel(tm, q + 0.5 * h * k1q, k2q)?;
        let k3q = v + 0.5 * h * k2v;
        let k3v = accel(tm, q + 0.5 * h * k2q, k3q)?;
        let k4q = v + h * k3v;
        let k4v = accel(t + h, q + h * k3q, k4q)?;
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.push(OdeState {
            t: grid.time(i + 1),
            q,
            v,
        });
    }
    Ok(out)
}
