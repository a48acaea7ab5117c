// SPDX-License-Identifier: Apache-2.0

//! Built-in parameter sets for the five published figure panels.
//!
//! Panels 1A/1B drive a tapping-mode AFM cantilever, 3A/3B a damped
//! oscillator under the sawtooth series. Panel 2 is a plot of the sawtooth
//! force itself (period 1, 3 versus 1000 terms); its scenario drives the
//! standard oscillator with that force so it can be run like the others.

use crate::error::Result;
use crate::forcing::{ForceModel, Sawtooth, Tmafm, DEFAULT_SAWTOOTH_TERMS};
use crate::model::{InitialState, OscillatorParams, Scenario, TimeGrid};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

pub const FIGURE_T_END: f64 = 20.0;
pub const FIGURE_DT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig1A,
    Fig1B,
    Fig2,
    Fig3A,
    Fig3B,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Fig1A,
        Figure::Fig1B,
        Figure::Fig2,
        Figure::Fig3A,
        Figure::Fig3B,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Figure::Fig1A => "1a",
            Figure::Fig1B => "1b",
            Figure::Fig2 => "2",
            Figure::Fig3A => "3a",
            Figure::Fig3B => "3b",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Figure::Fig1A => "TMAFM cantilever energy, (omega0, omega_d) = (1, 0.3)",
            Figure::Fig1B => "TMAFM cantilever energy, (omega0, omega_d) = (1.5, 0.6)",
            Figure::Fig2 => "Sawtooth driving force, 3 vs 1000 terms",
            Figure::Fig3A => "Sawtooth-driven energy, (q0, omega_d, f0) = (3, 0.3, 1)",
            Figure::Fig3B => "Sawtooth-driven energy, (q0, omega_d, f0) = (1, 1.2, 2)",
        }
    }

    /// Scenario of the panel with `hbar = 1`.
    pub fn scenario(&self) -> Scenario {
        let grid = TimeGrid::new(FIGURE_T_END, FIGURE_DT).expect("figure grid");
        let (omega0, q0, force) = match self {
            Figure::Fig1A => (1.0, 3.0, tmafm(0.3)),
            Figure::Fig1B => (1.5, 3.0, tmafm(0.6)),
            Figure::Fig2 => (1.0, 3.0, sawtooth(1.0, TAU)),
            Figure::Fig3A => (1.0, 3.0, sawtooth(1.0, 0.3)),
            Figure::Fig3B => (1.0, 1.0, sawtooth(2.0, 1.2)),
        };
        let osc = OscillatorParams::new(1.0, omega0, 0.1, 1.0)
            .validate()
            .expect("figure parameters are underdamped");
        let init = InitialState::new(q0, 0.0).expect("figure amplitude");
        Scenario::new(osc, init, force, grid).expect("figure force")
    }
}

// k = 0.5 is kept as published even though m_eff ω0² = 1 for panel A
fn tmafm(omega_d: f64) -> ForceModel {
    ForceModel::Tmafm(Tmafm {
        f_ext: 0.3,
        k: 0.5,
        d0: 0.5,
        a0: 0.3,
        omega_d,
        m_eff: 1.0,
    })
}

fn sawtooth(f0: f64, omega_d: f64) -> ForceModel {
    ForceModel::Sawtooth(Sawtooth {
        f0,
        m: 1.0,
        omega_d,
        n_terms: DEFAULT_SAWTOOTH_TERMS,
    })
}

/// The two truncations compared in the sawtooth panel.
pub fn fig2_series(n_terms: u32) -> Sawtooth {
    Sawtooth {
        f0: 1.0,
        m: 1.0,
        omega_d: TAU,
        n_terms,
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown figure `{}` (expected 1a, 1b, 2, 3a or 3b)",
            self.0
        )
    }
}

impl std::error::Error for UnknownFigure {}

impl FromStr for Figure {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let id = s.trim().to_ascii_lowercase();
        let id = id.strip_prefix("fig").unwrap_or(&id);
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == id)
            .ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

/// Scenario for a figure with `hbar` replaced.
pub fn figure_scenario(fig: Figure, hbar: f64) -> Result<Scenario> {
    fig.scenario().with_hbar(hbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for fig in Figure::ALL {
            assert_eq!(fig.id().parse::<Figure>().unwrap(), fig);
        }
        assert_eq!("Fig3A".parse::<Figure>().unwrap(), Figure::Fig3A);
        assert!("4".parse::<Figure>().is_err());
    }

    #[test]
    fn fig1_panels_differ_only_in_frequencies() {
        let a = Figure::Fig1A.scenario();
        let b = Figure::Fig1B.scenario();
        assert_eq!(a.init, b.init);
        assert_eq!(a.grid, b.grid);
        assert_eq!(a.oscillator.gamma(), b.oscillator.gamma());
        assert_eq!(a.oscillator.m(), b.oscillator.m());
        assert_eq!((a.oscillator.omega0(), b.oscillator.omega0()), (1.0, 1.5));
        match (&a.force, &b.force) {
            (ForceModel::Tmafm(fa), ForceModel::Tmafm(fb)) => {
                assert_eq!((fa.omega_d, fb.omega_d), (0.3, 0.6));
                assert_eq!(
                    Tmafm {
                        omega_d: 0.6,
                        ..*fa
                    },
                    *fb
                );
            }
            _ => panic!("fig 1 uses the TMAFM force"),
        }
    }
}
