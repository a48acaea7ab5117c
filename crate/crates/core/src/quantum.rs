// SPDX-License-Identifier: Apache-2.0

//! Quantum expectation values in the coherent state built from the linear
//! invariant: energy, the undriven closed form, the position-momentum
//! uncertainty product and the Gaussian wave packet.
//!
//! Every expression keeps `hbar` until the final scalar, so the classical
//! limit is obtained by running with `hbar = 0`.

use crate::classical::{classical_energy, trajectory};
use crate::error::{Error, Result};
use crate::model::{EnergyRecord, InitialState, Oscillator, Scenario, TrajectoryPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `(1/2) hbar (omega0²/omega) e^{-γt}`.
pub fn zero_point_energy(osc: &Oscillator, t: f64) -> f64 {
    0.5 * osc.hbar() * osc.omega0() * osc.omega0() / osc.omega() * (-osc.gamma() * t).exp()
}

/// Energy expectation at a trajectory point, written in terms of the
/// canonical momentum: `ħΩ/2 + e^{-2γt} P²/(2m) + m ω0² Q²/2`.
///
/// The record also carries the classical mechanical energy, computed
/// independently from the physical velocity.
pub fn quantum_energy(osc: &Oscillator, point: &TrajectoryPoint) -> EnergyRecord {
    let m = osc.m();
    let zero_point = zero_point_energy(osc, point.t);
    let kinetic = (-2.0 * osc.gamma() * point.t).exp() * point.p * point.p / (2.0 * m);
    let potential = 0.5 * m * osc.omega0() * osc.omega0() * point.q * point.q;
    EnergyRecord {
        t: point.t,
        e_classical: classical_energy(osc, point),
        e_quantum: zero_point + kinetic + potential,
        zero_point,
    }
}

/// Energy records for every grid point of a scenario.
pub fn energy_series(scenario: &Scenario) -> Result<Vec<EnergyRecord>> {
    let osc = &scenario.oscillator;
    Ok(trajectory(scenario)?
        .iter()
        .map(|pt| quantum_energy(osc, pt))
        .collect())
}

/// Constants of the undriven energy formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumEnergyParams {
    /// `m ω0² Q0² / 2`
    pub e0: f64,
    /// `atan(2ω/γ)`, equal to π/2 when γ = 0.
    pub delta: f64,
    /// `ω0² / ω`
    pub omega_ratio: f64,
}

impl QuantumEnergyParams {
    pub fn new(osc: &Oscillator, init: &InitialState) -> Self {
        let w0 = osc.omega0();
        Self {
            e0: 0.5 * osc.m() * w0 * w0 * init.q0 * init.q0,
            delta: (2.0 * osc.omega()).atan2(osc.gamma()),
            omega_ratio: w0 * w0 / osc.omega(),
        }
    }
}

/// Closed-form energy of the undriven oscillator:
/// `ħΩ/2 + E0 e^{-γt} (1 + (γ/2ω0) cos(2(ωt+φ) - δ))`.
pub fn quantum_energy_undriven(osc: &Oscillator, init: &InitialState, t: f64) -> f64 {
    let c = QuantumEnergyParams::new(osc, init);
    let decay = (-osc.gamma() * t).exp();
    let phase = 2.0 * (osc.omega() * t + init.varphi) - c.delta;
    0.5 * osc.hbar() * c.omega_ratio * decay
        + c.e0 * decay * (1.0 + osc.gamma() / (2.0 * osc.omega0()) * phase.cos())
}

/// `Δq Δp = ħ ω0 / (2ω)`, independent of time and of the driving force.
pub fn uncertainty_product(osc: &Oscillator) -> f64 {
    osc.hbar() * osc.omega0() / (2.0 * osc.omega())
}

/// Position spread `sqrt(ħ / (2 m ω e^{γt}))`.
pub fn position_spread(osc: &Oscillator, t: f64) -> f64 {
    (osc.hbar() / (2.0 * osc.m() * osc.omega() * (osc.gamma() * t).exp())).sqrt()
}

/// Canonical-momentum spread, defined as the uncertainty product divided by
/// the position spread. Zero in the classical limit.
pub fn momentum_spread(osc: &Oscillator, t: f64) -> f64 {
    let dq = position_spread(osc, t);
    if dq == 0.0 {
        0.0
    } else {
        uncertainty_product(osc) / dq
    }
}

/// Gaussian probability density of the coherent state at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacket {
    pub t: f64,
    /// Position expectation.
    pub center: f64,
    /// Position spread.
    pub sigma: f64,
    /// Physical-momentum expectation.
    pub p_center: f64,
}

pub fn wave_packet(osc: &Oscillator, point: &TrajectoryPoint) -> WavePacket {
    WavePacket {
        t: point.t,
        center: point.q,
        sigma: position_spread(osc, point.t),
        p_center: point.p_k,
    }
}

impl WavePacket {
    pub fn density(&self, q: f64) -> Result<f64> {
        density(self, q)
    }
}

/// Normalised `|ψ(q)|²`.
pub fn density(packet: &WavePacket, q: f64) -> Result<f64> {
    if packet.sigma.is_nan() || packet.sigma <= 0.0 {
        return Err(Error::DegenerateWidth);
    }
    let var = packet.sigma * packet.sigma;
    let d = q - packet.center;
    Ok((-d * d / (2.0 * var)).exp() / (2.0 * PI * var).sqrt())
}

/// Gaussian eigenstate of the linear invariant,
/// `exp[e^{γt/2} (A q_p - B q_p²)/ħ + C]` with `q_p = q - Q_p(t)`.
///
/// Only the modulus matters for observables, so `C` is not kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate {
    pub t: f64,
    /// Invariant eigenvalue amplitude.
    pub beta: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    hbar: f64,
    gamma: f64,
}

impl Eigenstate {
    pub fn new(osc: &Oscillator, init: &InitialState, t: f64, chi: f64) -> Result<Self> {
        let (m, w, hbar, gamma) = (osc.m(), osc.omega(), osc.hbar(), osc.gamma());
        if hbar <= 0.0 {
            return Err(Error::DegenerateWidth);
        }
        let phase = Complex64::from_polar(1.0, -(w * t + init.varphi - chi));
        let beta = -Complex64::i() * (m * w / (2.0 * hbar)).sqrt() * init.q0 * phase;
        let a = (2.0 * hbar * m * w).sqrt() * beta;
        let b = 0.5 * m * (0.5 * gamma * t).exp() * Complex64::new(w, 0.5 * gamma);
        Ok(Self {
            t,
            beta,
            a,
            b,
            hbar,
            gamma,
        })
    }

    /// Peak of `|φ|²` measured from `Q_p(t)`.
    pub fn center_offset(&self) -> f64 {
        self.a.re / (2.0 * self.b.re)
    }

    /// Standard deviation of `|φ|²`.
    pub fn sigma(&self) -> f64 {
        (self.hbar / (4.0 * (0.5 * self.gamma * self.t).exp() * self.b.re)).sqrt()
    }
}
