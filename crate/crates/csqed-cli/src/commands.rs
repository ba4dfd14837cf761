//! Subcommand implementations: coefficient tables, single evolutions and
//! parameter sweeps. Sweep points are independent pure computations and
//! run on the rayon pool; a single collector writes the files in order so
//! identical inputs always produce byte-identical outputs.

use std::path::Path;

use rayon::prelude::*;

use csqed::{
    evolve, response_tensors, werner_state, GeometryParams, KossakowskiCoefficients,
    ResponseTensors, Trajectory,
};

use crate::config::Scenario;
use crate::output::{fmt_sci, trajectory_csv, write_file, write_file_or_stdout};
use crate::CliError;

pub const COEFFICIENTS_HEADER: &str =
    "nu,omega_r,omega_L,f11,f22,f33,g11,g22,g33,g13,A,B,C";

/// Geometries visited by a scenario: the sweep axis, or just the base point.
fn sweep_points(scenario: &Scenario) -> Result<Vec<(Option<f64>, GeometryParams)>, CliError> {
    match &scenario.sweep {
        None => Ok(vec![(None, scenario.geometry)]),
        Some(sweep) => sweep
            .values
            .iter()
            .map(|&v| Ok((Some(v), scenario.geometry_at(sweep.param, v)?)))
            .collect(),
    }
}

fn point_response(
    scenario: &Scenario,
    geometry: &GeometryParams,
) -> Result<(ResponseTensors, KossakowskiCoefficients), CliError> {
    let tensors = response_tensors(geometry, &scenario.numerics)?;
    let k = KossakowskiCoefficients::from_response(&tensors, &scenario.dipoles)?;
    Ok((tensors, k))
}

/// One row per sweep point: geometry, response components, coefficients.
pub fn run_coefficients(scenario: &Scenario, out: Option<&Path>) -> Result<(), CliError> {
    let points = sweep_points(scenario)?;
    let rows: Vec<Result<String, CliError>> = points
        .par_iter()
        .map(|(_, geometry)| {
            let (t, k) = point_response(scenario, geometry)?;
            Ok(format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt_sci(geometry.nu()),
                fmt_sci(geometry.omega_r()),
                fmt_sci(geometry.omega_l()),
                fmt_sci(t.f11),
                fmt_sci(t.f22),
                fmt_sci(t.f33),
                fmt_sci(t.g11),
                fmt_sci(t.g22),
                fmt_sci(t.g33),
                fmt_sci(t.g13),
                fmt_sci(k.a),
                fmt_sci(k.b),
                fmt_sci(k.c),
            ))
        })
        .collect();
    let mut csv = String::from(COEFFICIENTS_HEADER);
    csv.push('\n');
    for (row, (value, _)) in rows.into_iter().zip(&points) {
        let row = row.map_err(|e| e.at_sweep_point(*value))?;
        csv.push_str(&row);
        csv.push('\n');
    }
    write_file_or_stdout(out, &csv)
}

pub fn evolve_scenario(
    scenario: &Scenario,
    geometry: &GeometryParams,
) -> Result<Trajectory, CliError> {
    let (_, k) = point_response(scenario, geometry)?;
    let init = werner_state(scenario.werner_p).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(evolve(&init, &k, &scenario.evolution)?)
}

/// Single trajectory CSV. Scenarios with a sweep belong to `sweep`.
pub fn run_evolve(scenario: &Scenario, out: &Path) -> Result<(), CliError> {
    if scenario.sweep.is_some() {
        return Err(CliError::Config(
            "this scenario defines a sweep; use the `sweep` subcommand with --outdir".into(),
        ));
    }
    let traj = evolve_scenario(scenario, &scenario.geometry)?;
    write_file(out, &trajectory_csv(&traj)?)
}

/// One trajectory CSV per sweep point, named `evolve_<param>_<value>.csv`.
pub fn run_sweep(scenario: &Scenario, outdir: &Path) -> Result<(), CliError> {
    let sweep = scenario
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("config has no sweep_param/sweep_values".into()))?;
    let points = sweep_points(scenario)?;
    let results: Vec<Result<String, CliError>> = points
        .par_iter()
        .map(|(_, geometry)| {
            let traj = evolve_scenario(scenario, geometry)?;
            trajectory_csv(&traj)
        })
        .collect();
    std::fs::create_dir_all(outdir)?;
    for (result, (value, _)) in results.into_iter().zip(&points) {
        let value = value.expect("sweep points always carry a value");
        let csv = result.map_err(|e| e.at_sweep_point(Some(value)))?;
        let name = format!("evolve_{}_{}.csv", sweep.param, value);
        write_file(&outdir.join(name), &csv)?;
    }
    Ok(())
}
