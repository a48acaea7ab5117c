// SPDX-License-Identifier: Apache-2.0

//! TOML scenario files.
//!
//! ```toml
//! [oscillator]
//! m = 1.0
//! omega0 = 1.0
//! gamma = 0.1
//! hbar = 1.0
//!
//! [initial]
//! Q0 = 3.0
//! varphi = 0.0
//!
//! [force]
//! type = "sawtooth"
//! f0 = 1.0
//! omega_d = 0.3
//! n_terms = 1000
//!
//! [grid]
//! t_end = 20.0
//! dt = 0.01
//!
//! [output]
//! columns = ["t", "Q", "E_quantum"]
//! format = "csv"
//! ```
//!
//! Unknown keys are rejected. `hbar` defaults to 1, `chi` (in
//! `[initial]`) to π/2, the sawtooth mass to the oscillator mass and
//! `n_terms` to 1000.

use crate::error::{CliError, Result};
use crate::output::Column;
use ckosc::forcing::{Sawtooth, Tabulated, Tmafm, DEFAULT_SAWTOOTH_TERMS};
use ckosc::model::DEFAULT_CHI;
use ckosc::{ForceModel, InitialState, OscillatorParams, Scenario, TimeGrid};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub oscillator: OscillatorSection,
    pub initial: InitialSection,
    pub force: ForceSection,
    pub grid: GridSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSection {
    pub m: f64,
    pub omega0: f64,
    pub gamma: f64,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    #[serde(rename = "Q0")]
    pub q0: f64,
    pub varphi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ForceSection {
    Zero,
    Constant {
        f0: f64,
    },
    Tmafm {
        #[serde(rename = "F_ext")]
        f_ext: f64,
        k: f64,
        #[serde(rename = "D0")]
        d0: f64,
        a0: f64,
        omega_d: f64,
        m_eff: f64,
    },
    Sawtooth {
        f0: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<f64>,
        omega_d: f64,
        #[serde(default = "default_terms")]
        n_terms: u32,
    },
    Tabulated {
        samples: Vec<[f64; 2]>,
    },
}

fn default_terms() -> u32 {
    DEFAULT_SAWTOOTH_TERMS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t_end: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

/// A loaded, validated scenario and the requested CSV columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub columns: Vec<Column>,
}

impl ScenarioFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1);
            CliError::Parse {
                path: path.to_path_buf(),
                line,
                message: e.message().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<LoadedScenario> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)?.into_scenario(path)
    }

    pub fn into_scenario(self, path: &Path) -> Result<LoadedScenario> {
        let o = &self.oscillator;
        let osc = OscillatorParams::new(o.m, o.omega0, o.gamma, o.hbar).validate()?;
        let init = InitialState::new(self.initial.q0, self.initial.varphi)?;
        let force = match self.force {
            ForceSection::Zero => ForceModel::Zero,
            ForceSection::Constant { f0 } => ForceModel::Constant { f0 },
            ForceSection::Tmafm {
                f_ext,
                k,
                d0,
                a0,
                omega_d,
                m_eff,
            } => ForceModel::Tmafm(Tmafm {
                f_ext,
                k,
                d0,
                a0,
                omega_d,
                m_eff,
            }),
            ForceSection::Sawtooth {
                f0,
                m,
                omega_d,
                n_terms,
            } => ForceModel::Sawtooth(Sawtooth {
                f0,
                m: m.unwrap_or(o.m),
                omega_d,
                n_terms,
            }),
            ForceSection::Tabulated { samples } => ForceModel::Tabulated(Tabulated::new(
                samples.into_iter().map(|[t, f]| (t, f)).collect(),
            )?),
        };
        let grid = TimeGrid::new(self.grid.t_end, self.grid.dt)?;
        let scenario = Scenario::new(osc, init, force, grid)?
            .with_chi(self.initial.chi.unwrap_or(DEFAULT_CHI))?;

        let output = self.output.unwrap_or_default();
        if let Some(format) = &output.format {
            if format != "csv" {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line: None,
                    message: format!("unsupported output format `{format}` (expected `csv`)"),
                });
            }
        }
        let columns = match output.columns {
            None => Column::ALL.to_vec(),
            Some(names) => Column::select(&names).map_err(|bad| CliError::Parse {
                path: path.to_path_buf(),
                line: None,
                message: format!("unknown output column `{bad}`"),
            })?,
        };
        Ok(LoadedScenario { scenario, columns })
    }

    /// File form of an in-memory scenario.
    pub fn from_scenario(s: &Scenario) -> Self {
        let p = s.oscillator.params();
        let force = match &s.force {
            ForceModel::Zero => ForceSection::Zero,
            ForceModel::Constant { f0 } => ForceSection::Constant { f0: *f0 },
            ForceModel::Tmafm(t) => ForceSection::Tmafm {
                f_ext: t.f_ext,
                k: t.k,
                d0: t.d0,
                a0: t.a0,
                omega_d: t.omega_d,
                m_eff: t.m_eff,
            },
            ForceModel::Sawtooth(saw) => ForceSection::Sawtooth {
                f0: saw.f0,
                m: Some(saw.m),
                omega_d: saw.omega_d,
                n_terms: saw.n_terms,
            },
            ForceModel::Tabulated(tab) => ForceSection::Tabulated {
                samples: tab.samples().iter().map(|&(t, f)| [t, f]).collect(),
            },
        };
        Self {
            oscillator: OscillatorSection {
                m: p.m,
                omega0: p.omega0,
                gamma: p.gamma,
                hbar: p.hbar,
            },
            initial: InitialSection {
                q0: s.init.q0,
                varphi: s.init.varphi,
                chi: (s.chi != DEFAULT_CHI).then_some(s.chi),
            },
            force,
            grid: GridSection {
                t_end: s.grid.t_end(),
                dt: s.grid.dt(),
            },
            output: None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario files always serialize")
    }
}
