//! Wootters concurrence for X-shape states and density-matrix
//! reconstruction.
//!
//! For an X-shape state with Pauli coefficients `c1 = p11`, `c2 = p22`,
//! `c3 = p33`, `c4 = p03`, `c5 = p30` the concurrence reduces to
//!
//! ```text
//! E = max(0, F1, F2)
//! F1 = [ |c1 + c2| - sqrt((c3 - c4 - c5 + 1)(c3 + c4 + c5 + 1)) ] / 2
//! F2 = [ |c1 - c2| - sqrt((c3 + c4 - c5 - 1)(c3 - c4 + c5 - 1)) ] / 2
//! ```
//!
//! Both square-root arguments are products of diagonal density-matrix
//! elements (16 rho_11 rho_44 and 16 rho_22 rho_33 respectively), hence
//! non-negative for physical states; values below `-1e-12` are treated as
//! an upstream physicality failure rather than rounding.

use nalgebra::Matrix4;
use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::PauliState;

/// Square-root arguments this far below zero are rounding; anything lower
/// is a non-physical state.
const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntanglementError {
    #[error(
        "non-physical X-state: concurrence square-root argument {argument:.3e} < -{CLAMP_TOL:e}"
    )]
    NonPhysical { argument: f64 },
}

/// Wootters concurrence of an X-shape state, in `[0, 1]`.
pub fn concurrence(state: &PauliState) -> Result<f64, EntanglementError> {
    let (c1, c2, c3, c4, c5) = (state.p11, state.p22, state.p33, state.p03, state.p30);
    let arg1 = (c3 - c4 - c5 + 1.0) * (c3 + c4 + c5 + 1.0);
    let arg2 = (c3 + c4 - c5 - 1.0) * (c3 - c4 + c5 - 1.0);
    let f1 = 0.5 * ((c1 + c2).abs() - clamped_sqrt(arg1)?);
    let f2 = 0.5 * ((c1 - c2).abs() - clamped_sqrt(arg2)?);
    Ok(f1.max(f2).clamp(0.0, 1.0))
}

fn clamped_sqrt(argument: f64) -> Result<f64, EntanglementError> {
    if argument < -CLAMP_TOL {
        return Err(EntanglementError::NonPhysical { argument });
    }
    Ok(argument.max(0.0).sqrt())
}

/// Reconstruct `rho = (1/4) sum_ij p_ij sigma_i x sigma_j` in the product
/// basis `{|00>, |01>, |10>, |11>}`. Hermitian with unit trace by
/// construction; for the real X-shape coefficients tracked here the only
/// non-zero entries are the diagonal and the anti-diagonal.
pub fn density_matrix(state: &PauliState) -> Matrix4<Complex64> {
    let [r11, r22, r33, r44] = diagonal(state);
    let rho14 = 0.25 * (state.p11 - state.p22);
    let rho23 = 0.25 * (state.p11 + state.p22);
    let re = |v: f64| Complex64::new(v, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        re(r11), zero,      zero,      re(rho14),
        zero,    re(r22),   re(rho23), zero,
        zero,    re(rho23), re(r33),   zero,
        re(rho14), zero,    zero,      re(r44),
    );
    m
}

fn diagonal(state: &PauliState) -> [f64; 4] {
    let (p33, p03, p30) = (state.p33, state.p03, state.p30);
    [
        0.25 * (1.0 + p33 + p03 + p30),
        0.25 * (1.0 - p33 - p03 + p30),
        0.25 * (1.0 - p33 + p03 - p30),
        0.25 * (1.0 + p33 - p03 - p30),
    ]
}

/// Closed-form eigenvalues of the X-shape density matrix: the outer block
/// `{rho_11, rho_44, rho_14}` and the inner block `{rho_22, rho_33, rho_23}`
/// each contribute a 2x2 pair.
pub fn density_matrix_eigenvalues(state: &PauliState) -> [f64; 4] {
    let [r11, r22, r33, r44] = diagonal(state);
    let rho14 = 0.25 * (state.p11 - state.p22);
    let rho23 = 0.25 * (state.p11 + state.p22);
    let outer_mid = 0.5 * (r11 + r44);
    let outer_rad = (0.25 * (r11 - r44) * (r11 - r44) + rho14 * rho14).sqrt();
    let inner_mid = 0.5 * (r22 + r33);
    let inner_rad = (0.25 * (r22 - r33) * (r22 - r33) + rho23 * rho23).sqrt();
    [
        outer_mid + outer_rad,
        outer_mid - outer_rad,
        inner_mid + inner_rad,
        inner_mid - inner_rad,
    ]
}
