// SPDX-License-Identifier: Apache-2.0

use crate::error::{CliError, Result};
use crate::output;
use crate::scenario_file::ScenarioFile;
use crate::svg::{line_chart, Series};
use ckosc::checks::{run_suite, Bound, CheckResult, SuiteOptions};
use ckosc::figures::{fig2_series, Figure};
use ckosc::forcing::{sawtooth_ramp, sawtooth_series};
use ckosc::quantum::energy_series;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Runs a scenario file and writes the CSV.
pub fn run(scenario_path: &Path, output_path: &Path) -> Result<usize> {
    let loaded = ScenarioFile::load(scenario_path)?;
    let rows = output::rows(&loaded.scenario)?;
    let file = File::create(output_path).map_err(|e| CliError::io(output_path, e))?;
    output::write_rows(BufWriter::new(file), &loaded.columns, &rows)?;
    Ok(rows.len())
}

pub const FIG2_T_END: f64 = 3.0;
pub const FIG2_DT: f64 = 1e-3;

/// Writes `fig<id>.csv`, `fig<id>.svg` and `fig<id>.toml` into `out_dir`
/// and returns the paths.
pub fn reproduce_fig(id: &str, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let fig: Figure = id.parse()?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let stem = format!("fig{}", fig.id());
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let svg_path = out_dir.join(format!("{stem}.svg"));
    let toml_path = out_dir.join(format!("{stem}.toml"));

    let (header, table, svg) = match fig {
        Figure::Fig2 => fig2_table(fig),
        _ => energy_table(fig)?,
    };
    let file = File::create(&csv_path).map_err(|e| CliError::io(&csv_path, e))?;
    output::write_table(BufWriter::new(file), &header, &table)?;
    write_text(&svg_path, &svg)?;
    write_text(
        &toml_path,
        &ScenarioFile::from_scenario(&fig.scenario()).to_toml(),
    )?;
    Ok(vec![csv_path, svg_path, toml_path])
}

type Table = (Vec<&'static str>, Vec<Vec<f64>>, String);

fn energy_table(fig: Figure) -> Result<Table> {
    let quantum = energy_series(&fig.scenario())?;
    let classical = energy_series(&fig.scenario().with_hbar(0.0)?)?;
    let table: Vec<Vec<f64>> = quantum
        .iter()
        .zip(&classical)
        .map(|(q, c)| vec![q.t, q.e_quantum, c.e_quantum, q.e_classical])
        .collect();
    let column = |i: usize| table.iter().map(|r| (r[0], r[i])).collect::<Vec<_>>();
    let svg = line_chart(
        fig.title(),
        "t",
        "energy",
        &[
            Series {
                label: "E quantum (hbar = 1)",
                color: "#c0392b",
                dashed: false,
                points: column(1),
            },
            Series {
                label: "E quantum (hbar = 0)",
                color: "#2471a3",
                dashed: false,
                points: column(2),
            },
            Series {
                label: "E classical",
                color: "#1e8449",
                dashed: true,
                points: column(3),
            },
        ],
    );
    Ok((
        vec!["t", "E_quantum", "E_quantum_hbar0", "E_classical"],
        table,
        svg,
    ))
}

fn fig2_table(fig: Figure) -> Table {
    let (coarse, fine) = (fig2_series(3), fig2_series(1000));
    let steps = (FIG2_T_END / FIG2_DT).round() as usize;
    let table: Vec<Vec<f64>> = (0..=steps)
        .map(|i| {
            let t = i as f64 * FIG2_DT;
            let eval = |s: ckosc::Sawtooth| sawtooth_series(s.f0, s.m, s.omega_d, s.n_terms, t);
            vec![
                t,
                eval(coarse),
                eval(fine),
                sawtooth_ramp(fine.f0, fine.m, fine.omega_d, t),
            ]
        })
        .collect();
    let column = |i: usize| table.iter().map(|r| (r[0], r[i])).collect::<Vec<_>>();
    let svg = line_chart(
        fig.title(),
        "t",
        "f(t)",
        &[
            Series {
                label: "n up to 3",
                color: "#2471a3",
                dashed: true,
                points: column(1),
            },
            Series {
                label: "n up to 1000",
                color: "#c0392b",
                dashed: false,
                points: column(2),
            },
        ],
    );
    (vec!["t", "f_n3", "f_n1000", "f_ramp"], table, svg)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    bound: &'static str,
    tolerance: f64,
    observed: Option<f64>,
    passed: bool,
}

/// Runs the self-check suite and prints the report to `out`. Fails with
/// [`CliError::ChecksFailed`] if any check fails.
pub fn validate<W: Write>(
    out: &mut W,
    json: bool,
    opts: &SuiteOptions,
) -> Result<Vec<CheckResult>> {
    let results = run_suite(opts);
    let stdout_err = |e| CliError::io("<stdout>", e);
    if json {
        let items: Vec<JsonCheck> = results
            .iter()
            .map(|r| JsonCheck {
                name: &r.name,
                bound: match r.bound {
                    Bound::AtMost => "at_most",
                    Bound::AtLeast => "at_least",
                },
                tolerance: r.tolerance,
                observed: r.observed.is_finite().then_some(r.observed),
                passed: r.passed,
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &items)
            .map_err(|e| CliError::io("<stdout>", e.into()))?;
        writeln!(out).map_err(stdout_err)?;
    } else {
        writeln!(
            out,
            "{:<48} {:>11} {:>12}  verdict",
            "check", "tolerance", "observed"
        )
        .map_err(stdout_err)?;
        for r in &results {
            let op = match r.bound {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            writeln!(
                out,
                "{:<48} {op}{:>9.2e} {:>12.4e}  {}",
                r.name,
                r.tolerance,
                r.observed,
                if r.passed { "PASS" } else { "FAIL" }
            )
            .map_err(stdout_err)?;
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed {
            failed,
            total: results.len(),
        });
    }
    Ok(results)
}
