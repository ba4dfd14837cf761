//! Figure runner: canned scenario families emitting one trajectory CSV per
//! curve.
//!
//! Each family pins the polarizations and the base geometry
//! (`omega r = 1/2`, `omega L = 1/2`, `nu = 2` unless swept) and varies one
//! parameter across a regime of interest: spacetime comparison, deficit
//! angle, approach to the string, the large-distance oscillatory zone, and
//! atomic separation. The value lists are this tool's contract.

use std::path::Path;

use rayon::prelude::*;

use csqed::{
    evolve, flat_space_response, response_tensors, werner_state, DipolePair, EvolutionSettings,
    GeometryParams, KossakowskiCoefficients, SummationControl,
};

use crate::output::{trajectory_csv, write_file};
use crate::CliError;

const ISO: [f64; 3] = [0.577_350_269_189_625_8; 3];
const RADIAL: [f64; 3] = [1.0, 0.0, 0.0];
const TANGENTIAL: [f64; 3] = [0.0, 1.0, 0.0];

pub const FIGURE_IDS: [&str; 8] = ["1", "2a", "2b", "3a", "3b", "4a", "4b", "5"];

#[derive(Debug, Clone, Copy)]
enum Field {
    /// Mode sums for a conical geometry.
    CosmicString { nu: f64, omega_r: f64 },
    /// Closed-form flat-spacetime response (the comparison curves).
    Minkowski,
}

#[derive(Debug, Clone, Copy)]
struct Curve {
    name: &'static str,
    value: f64,
    field: Field,
    omega_l: f64,
    dipoles: (&'static [f64; 3], &'static [f64; 3]),
}

fn curve_family(id: &str) -> Option<Vec<Curve>> {
    let mut curves = Vec::new();
    match id {
        // Varying separation at omega r = 1/2, cosmic string (nu = 2)
        // against the Minkowski comparison, isotropic polarization.
        "1" => {
            for &wl in &[0.5, 1.0, 1.5] {
                curves.push(Curve {
                    name: "string_wL",
                    value: wl,
                    field: Field::CosmicString {
                        nu: 2.0,
                        omega_r: 0.5,
                    },
                    omega_l: wl,
                    dipoles: (&ISO, &ISO),
                });
                curves.push(Curve {
                    name: "minkowski_wL",
                    value: wl,
                    field: Field::Minkowski,
                    omega_l: wl,
                    dipoles: (&ISO, &ISO),
                });
            }
        }
        // Deficit-angle families at omega L = omega r = 1/2.
        "2a" | "2b" => {
            let dipoles = if id == "2a" {
                (&ISO, &ISO)
            } else {
                (&RADIAL, &TANGENTIAL)
            };
            for &nu in &[1.0, 2.0, 3.0, 4.0] {
                curves.push(Curve {
                    name: "nu",
                    value: nu,
                    field: Field::CosmicString { nu, omega_r: 0.5 },
                    omega_l: 0.5,
                    dipoles,
                });
            }
        }
        // Atom-string distance families near the string; the smallest
        // distance realizes the on-string limit (the freezing curve for the
        // in-plane polarizations of 3b).
        "3a" | "3b" => {
            let dipoles = if id == "3a" {
                (&ISO, &ISO)
            } else {
                (&RADIAL, &TANGENTIAL)
            };
            for &wr in &[1e-6, 0.25, 0.5, 1.0] {
                curves.push(Curve {
                    name: "wr",
                    value: wr,
                    field: Field::CosmicString {
                        nu: 2.0,
                        omega_r: wr,
                    },
                    omega_l: 0.5,
                    dipoles,
                });
            }
        }
        // The large-distance oscillatory regime.
        "4a" | "4b" => {
            let dipoles = if id == "4a" {
                (&ISO, &ISO)
            } else {
                (&RADIAL, &TANGENTIAL)
            };
            for &wr in &[2.0, 4.0, 6.0, 8.0] {
                curves.push(Curve {
                    name: "wr",
                    value: wr,
                    field: Field::CosmicString {
                        nu: 2.0,
                        omega_r: wr,
                    },
                    omega_l: 0.5,
                    dipoles,
                });
            }
        }
        // Two-atom distance family at omega r = 1/2, nu = 2.
        "5" => {
            for &wl in &[0.25, 0.5, 1.0, 1.5, 2.0] {
                curves.push(Curve {
                    name: "wL",
                    value: wl,
                    field: Field::CosmicString {
                        nu: 2.0,
                        omega_r: 0.5,
                    },
                    omega_l: wl,
                    dipoles: (&ISO, &ISO),
                });
            }
        }
        _ => return None,
    }
    Some(curves)
}

pub fn run_figure(
    id: &str,
    outdir: &Path,
    numerics: &SummationControl,
    evolution: &EvolutionSettings,
) -> Result<(), CliError> {
    let curves = curve_family(id).ok_or_else(|| {
        CliError::Config(format!(
            "unknown figure id '{id}' (expected one of {})",
            FIGURE_IDS.join(", ")
        ))
    })?;
    let results: Vec<Result<String, CliError>> = curves
        .par_iter()
        .map(|curve| {
            let tensors = match curve.field {
                Field::CosmicString { nu, omega_r } => {
                    let geom = GeometryParams::new(nu, omega_r, curve.omega_l)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    response_tensors(&geom, numerics)?
                }
                Field::Minkowski => flat_space_response(curve.omega_l),
            };
            let dipoles = DipolePair::new(*curve.dipoles.0, *curve.dipoles.1)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let k = KossakowskiCoefficients::from_response(&tensors, &dipoles)?;
            let init = werner_state(2.0 / 3.0).expect("2/3 is in range");
            let traj = evolve(&init, &k, evolution)?;
            trajectory_csv(&traj)
        })
        .collect();
    std::fs::create_dir_all(outdir)?;
    for (result, curve) in results.into_iter().zip(&curves) {
        let csv = result?;
        let name = format!("fig{}_{}{}.csv", id, curve.name, curve.value);
        write_file(&outdir.join(name), &csv)?;
    }
    Ok(())
}
