// SPDX-License-Identifier: Apache-2.0

//! Classical and quantum solutions of the damped, driven Caldirola-Kanai
//! oscillator
//!
//! ```text
//! H = e^{-γt} p²/(2m) + (1/2) e^{γt} m [ω0² q² - 2 f(t) q]
//! ```
//!
//! The classical trajectory is built from the free damped oscillation plus
//! a Duhamel convolution of the force; the quantum energy expectation in
//! the invariant-operator coherent state equals the classical mechanical
//! energy plus the zero-point term `(1/2) ħ (ω0²/ω) e^{-γt}`.

pub mod checks;
pub mod classical;
pub mod error;
pub mod figures;
pub mod forcing;
pub mod model;
pub mod numerics;
pub mod quantum;

pub use error::{Error, Result};
pub use forcing::{ForceModel, Sawtooth, Tabulated, Tmafm};
pub use model::{
    EnergyRecord, InitialState, Oscillator, OscillatorParams, Scenario, TimeGrid, TrajectoryPoint,
};
