// SPDX-License-Identifier: Apache-2.0

//! Physical parameters, initial conditions, time grids and scenario
//! descriptions. Everything here is validated once on construction and
//! immutable afterwards.

use crate::error::{Error, Result};
use crate::forcing::ForceModel;
use std::f64::consts::FRAC_PI_2;

/// Raw oscillator parameters as supplied by a user or a preset.
///
/// `gamma` is the damping constant and `hbar` the reduced Planck constant;
/// setting `hbar = 0` gives the classical limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub m: f64,
    pub omega0: f64,
    pub gamma: f64,
    pub hbar: f64,
}

impl OscillatorParams {
    pub fn new(m: f64, omega0: f64, gamma: f64, hbar: f64) -> Self {
        Self {
            m,
            omega0,
            gamma,
            hbar,
        }
    }

    /// Checks the underdamped preconditions and populates the damped
    /// frequency.
    pub fn validate(self) -> Result<Oscillator> {
        positive("m", self.m)?;
        positive("omega0", self.omega0)?;
        finite("gamma", self.gamma)?;
        finite("hbar", self.hbar)?;
        if self.gamma < 0.0 {
            return Err(Error::NegativeDamping(self.gamma));
        }
        if self.hbar < 0.0 {
            return Err(Error::NegativeHbar(self.hbar));
        }
        if self.gamma >= 2.0 * self.omega0 {
            return Err(Error::Overdamped {
                gamma: self.gamma,
                omega0: self.omega0,
            });
        }
        Ok(Oscillator {
            params: self,
            omega: derived_omega(self.omega0, self.gamma),
        })
    }
}

/// Damped angular frequency `sqrt(omega0^2 - gamma^2/4)`.
///
/// Evaluated in factored form so that `omega0^2 - omega^2` reproduces
/// `gamma^2/4` closely even near critical damping.
pub fn derived_omega(omega0: f64, gamma: f64) -> f64 {
    let half = 0.5 * gamma;
    ((omega0 - half) * (omega0 + half)).sqrt()
}

/// Validated oscillator parameters together with the derived frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    params: OscillatorParams,
    omega: f64,
}

impl Oscillator {
    pub fn params(&self) -> OscillatorParams {
        self.params
    }

    pub fn m(&self) -> f64 {
        self.params.m
    }

    pub fn omega0(&self) -> f64 {
        self.params.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.params.gamma
    }

    pub fn hbar(&self) -> f64 {
        self.params.hbar
    }

    /// Damped frequency.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Same oscillator with a different value of hbar.
    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        OscillatorParams {
            hbar,
            ..self.params
        }
        .validate()
    }

    /// Replaces the derived frequency without re-validation. Only meant for
    /// fault-injection in the validation suite.
    #[doc(hidden)]
    pub fn with_omega_override(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    /// Amplitude of the free oscillation at t = 0.
    pub q0: f64,
    /// Phase of the free oscillation, radians.
    pub varphi: f64,
}

impl InitialState {
    pub fn new(q0: f64, varphi: f64) -> Result<Self> {
        finite("Q0", q0)?;
        finite("varphi", varphi)?;
        if q0 < 0.0 {
            return Err(Error::NegativeAmplitude(q0));
        }
        Ok(Self { q0, varphi })
    }
}

/// Uniform output grid `t_i = i * dt`, `i = 0..=steps`, starting at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    dt: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, dt: f64) -> Result<Self> {
        positive("t_end", t_end)?;
        positive("dt", dt)?;
        if dt > t_end {
            return Err(Error::InvalidGrid(format!(
                "dt = {dt} exceeds t_end = {t_end}"
            )));
        }
        let steps = (t_end / dt).round() as usize;
        if steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "t_end/dt = {} gives fewer than 2 steps",
                t_end / dt
            )));
        }
        Ok(Self { t_end, dt, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of grid points, `steps + 1`.
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(move |i| self.time(i))
    }
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub oscillator: Oscillator,
    pub init: InitialState,
    pub force: ForceModel,
    pub grid: TimeGrid,
    /// Constant phase of the linear invariant; π/2 makes the eigenstate
    /// centre coincide with the classical free oscillation.
    pub chi: f64,
}

pub const DEFAULT_CHI: f64 = FRAC_PI_2;

impl Scenario {
    pub fn new(
        oscillator: Oscillator,
        init: InitialState,
        force: ForceModel,
        grid: TimeGrid,
    ) -> Result<Self> {
        force.validate()?;
        Ok(Self {
            oscillator,
            init,
            force,
            grid,
            chi: DEFAULT_CHI,
        })
    }

    pub fn with_chi(mut self, chi: f64) -> Result<Self> {
        finite("chi", chi)?;
        self.chi = chi;
        Ok(self)
    }

    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        Ok(Self {
            oscillator: self.oscillator.with_hbar(hbar)?,
            ..self.clone()
        })
    }
}

/// One sample of the classical solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub q: f64,
    pub qdot: f64,
    /// Canonical momentum `m * qdot * e^{gamma t}`.
    pub p: f64,
    /// Physical (kinematic) momentum `m * qdot`.
    pub p_k: f64,
}

impl TrajectoryPoint {
    pub fn new(osc: &Oscillator, t: f64, q: f64, qdot: f64) -> Self {
        let p_k = osc.m() * qdot;
        Self {
            t,
            q,
            qdot,
            p: p_k * (osc.gamma() * t).exp(),
            p_k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub t: f64,
    pub e_classical: f64,
    pub e_quantum: f64,
    pub zero_point: f64,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn frequency_identity(omega0 in 1e-3f64..1e3, frac in 0.0f64..0.999, m in 1e-3f64..1e3) {
            let gamma = 2.0 * omega0 * frac;
            let osc = OscillatorParams::new(m, omega0, gamma, 1.0).validate().unwrap();
            let w = osc.omega();
            prop_assert!(w > 0.0 && w <= omega0);
            let lhs = omega0 * omega0 - w * w;
            let rhs = 0.25 * gamma * gamma;
            prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * omega0 * omega0);
            if gamma == 0.0 {
                prop_assert_eq!(w, omega0);
            } else {
                prop_assert!(w < omega0);
            }
        }

        #[test]
        fn validation_is_idempotent(omega0 in 1e-2f64..1e2, frac in 0.0f64..0.99, hbar in 0.0f64..2.0) {
            let osc = OscillatorParams::new(1.0, omega0, 2.0 * omega0 * frac, hbar).validate().unwrap();
            let again = osc.params().validate().unwrap();
            prop_assert_eq!(osc, again);
        }
    }
}
