// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("overdamped or critically damped: gamma = {gamma} >= 2*omega0 = {}", 2.0 * omega0)]
    Overdamped { gamma: f64, omega0: f64 },

    #[error("damping constant must be non-negative, got {0}")]
    NegativeDamping(f64),

    #[error("hbar must be non-negative, got {0}")]
    NegativeHbar(f64),

    #[error("initial amplitude Q0 must be non-negative, got {0}")]
    NegativeAmplitude(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid force model: {0}")]
    InvalidForce(String),

    #[error("t = {t} is outside the tabulated window [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },

    #[error("t = {t} is not on the accumulator lattice (t_last = {t_last}, step = {step})")]
    GridMismatch { t: f64, t_last: f64, step: f64 },

    #[error("accumulator is at t = {t_last}, cannot evaluate at t = {t}")]
    StaleAccumulator { t: f64, t_last: f64 },

    #[error("wave packet has zero width (hbar = 0)")]
    DegenerateWidth,
}
