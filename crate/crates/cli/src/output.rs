// SPDX-License-Identifier: Apache-2.0

//! Per-grid-point output rows and their CSV encoding.

use crate::error::Result;
use ckosc::classical::trajectory;
use ckosc::quantum::{momentum_spread, position_spread, quantum_energy, uncertainty_product};
use ckosc::Scenario;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    T,
    Q,
    Qdot,
    P,
    PK,
    EClassical,
    EQuantum,
    ZeroPoint,
    DeltaQ,
    DeltaP,
    UncertaintyProduct,
    FOfT,
}

impl Column {
    pub const ALL: [Column; 12] = [
        Column::T,
        Column::Q,
        Column::Qdot,
        Column::P,
        Column::PK,
        Column::EClassical,
        Column::EQuantum,
        Column::ZeroPoint,
        Column::DeltaQ,
        Column::DeltaP,
        Column::UncertaintyProduct,
        Column::FOfT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::T => "t",
            Column::Q => "Q",
            Column::Qdot => "Qdot",
            Column::P => "P",
            Column::PK => "P_k",
            Column::EClassical => "E_classical",
            Column::EQuantum => "E_quantum",
            Column::ZeroPoint => "zero_point",
            Column::DeltaQ => "delta_q",
            Column::DeltaP => "delta_p",
            Column::UncertaintyProduct => "uncertainty_product",
            Column::FOfT => "f_of_t",
        }
    }

    /// Resolves column names; the result is in canonical order. Returns the
    /// first unknown name on failure.
    pub fn select(names: &[String]) -> std::result::Result<Vec<Column>, String> {
        let mut cols = names
            .iter()
            .map(|n| {
                Column::ALL
                    .into_iter()
                    .find(|c| c.name() == n)
                    .ok_or_else(|| n.clone())
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        cols.sort_unstable();
        cols.dedup();
        Ok(cols)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputRow {
    pub t: f64,
    pub q: f64,
    pub qdot: f64,
    pub p: f64,
    pub p_k: f64,
    pub e_classical: f64,
    pub e_quantum: f64,
    pub zero_point: f64,
    pub delta_q: f64,
    pub delta_p: f64,
    pub uncertainty_product: f64,
    pub f_of_t: f64,
}

impl OutputRow {
    pub fn get(&self, col: Column) -> f64 {
        match col {
            Column::T => self.t,
            Column::Q => self.q,
            Column::Qdot => self.qdot,
            Column::P => self.p,
            Column::PK => self.p_k,
            Column::EClassical => self.e_classical,
            Column::EQuantum => self.e_quantum,
            Column::ZeroPoint => self.zero_point,
            Column::DeltaQ => self.delta_q,
            Column::DeltaP => self.delta_p,
            Column::UncertaintyProduct => self.uncertainty_product,
            Column::FOfT => self.f_of_t,
        }
    }
}

pub fn rows(scenario: &Scenario) -> Result<Vec<OutputRow>> {
    let osc = &scenario.oscillator;
    let product = uncertainty_product(osc);
    trajectory(scenario)?
        .iter()
        .map(|pt| {
            let e = quantum_energy(osc, pt);
            Ok(OutputRow {
                t: pt.t,
                q: pt.q,
                qdot: pt.qdot,
                p: pt.p,
                p_k: pt.p_k,
                e_classical: e.e_classical,
                e_quantum: e.e_quantum,
                zero_point: e.zero_point,
                delta_q: position_spread(osc, pt.t),
                delta_p: momentum_spread(osc, pt.t),
                uncertainty_product: product,
                f_of_t: scenario.force.eval(pt.t)?,
            })
        })
        .collect()
}

/// Scientific notation with 17 significant digits, independent of locale.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes a header and one record per row of `values`.
pub fn write_table<W: Write>(out: W, header: &[&str], values: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in values {
        w.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_rows<W: Write>(out: W, columns: &[Column], rows: &[OutputRow]) -> Result<()> {
    let header: Vec<&str> = columns.iter().map(|c| c.name()).collect();
    let values: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| columns.iter().map(|&c| r.get(c)).collect())
        .collect();
    write_table(out, &header, &values)
}
