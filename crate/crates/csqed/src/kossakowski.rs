//! Dissipator coefficients from response tensors and dipole orientations.
//!
//! With both dipoles expressed in the (radial, tangential, axial) frame and
//! normalized, the dissipator of the two-atom master equation is fixed by
//! three scalars in units of the spontaneous emission rate `Gamma`:
//!
//! ```text
//! A = (1/4) sum_i f_ii |d1_i|^2        (atom 1 self term)
//! B = (1/4) sum_i f_ii |d2_i|^2        (atom 2 self term)
//! C = (1/4) sum_ij g_ij d1_i d2_j      (cross term)
//! ```
//!
//! `Gamma` itself never appears as a runtime number; all times downstream
//! are measured in `1/Gamma`. The Kossakowski matrices share the fixed
//! structure `S_ij = X delta_ij - i X eps_{ij3} - X delta_{3i} delta_{3j}`
//! with `X` one of `A`, `B`, `C`.

use nalgebra::Matrix3;
use num_complex::Complex64;
use thiserror::Error;

use crate::response::{response_tensors, GeometryParams, ResponseError, ResponseTensors, SummationControl};

/// Tolerance on `|d| = 1` for prevalidated dipoles.
const UNIT_NORM_TOL: f64 = 1e-12;
/// Slack on the Cauchy-Schwarz bound `|C| <= sqrt(A B)`; larger violations
/// indicate quadrature failure upstream.
const CAUCHY_SCHWARZ_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KossakowskiError {
    #[error("dipole {which} must be a finite unit vector (norm deviates by {deviation:.3e})")]
    NotUnit { which: &'static str, deviation: f64 },
    #[error("dipole {which} must have finite components")]
    NotFinite { which: &'static str },
    #[error(
        "coefficient positivity violated (A = {a:.6e}, B = {b:.6e}, C = {c:.6e}): \
         the response quadrature has failed"
    )]
    PositivityViolated { a: f64, b: f64, c: f64 },
    #[error(transparent)]
    Response(#[from] ResponseError),
}

/// Unit polarization vectors of the two atoms in the (radial, tangential,
/// axial) frame. Real components only; the dynamics stays real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolePair {
    d1: [f64; 3],
    d2: [f64; 3],
}

impl DipolePair {
    /// Requires both vectors to be unit within 1e-12.
    pub fn new(d1: [f64; 3], d2: [f64; 3]) -> Result<Self, KossakowskiError> {
        check_unit(d1, "d1")?;
        check_unit(d2, "d2")?;
        Ok(Self { d1, d2 })
    }

    /// Normalizes on load and reports the larger norm deviation, letting a
    /// front end warn when an input was materially non-unit.
    pub fn normalizing(d1: [f64; 3], d2: [f64; 3]) -> Result<(Self, f64), KossakowskiError> {
        let (d1, dev1) = normalize(d1, "d1")?;
        let (d2, dev2) = normalize(d2, "d2")?;
        Ok((Self { d1, d2 }, dev1.max(dev2)))
    }

    pub fn d1(&self) -> [f64; 3] {
        self.d1
    }

    pub fn d2(&self) -> [f64; 3] {
        self.d2
    }

    pub fn swapped(&self) -> Self {
        Self {
            d1: self.d2,
            d2: self.d1,
        }
    }
}

fn check_unit(d: [f64; 3], which: &'static str) -> Result<(), KossakowskiError> {
    if d.iter().any(|v| !v.is_finite()) {
        return Err(KossakowskiError::NotFinite { which });
    }
    let deviation = (norm(d) - 1.0).abs();
    if deviation > UNIT_NORM_TOL {
        return Err(KossakowskiError::NotUnit { which, deviation });
    }
    Ok(())
}

fn normalize(d: [f64; 3], which: &'static str) -> Result<([f64; 3], f64), KossakowskiError> {
    if d.iter().any(|v| !v.is_finite()) {
        return Err(KossakowskiError::NotFinite { which });
    }
    let n = norm(d);
    if n == 0.0 {
        return Err(KossakowskiError::NotUnit {
            which,
            deviation: 1.0,
        });
    }
    Ok(([d[0] / n, d[1] / n, d[2] / n], (n - 1.0).abs()))
}

fn norm(d: [f64; 3]) -> f64 {
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// The three dissipator scalars, units of `Gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Selector for [`KossakowskiCoefficients::matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    /// Atom-1 self block, scalar `A`.
    Self1,
    /// Atom-2 self block, scalar `B`.
    Self2,
    /// Cross block, scalar `C`.
    Cross,
}

impl KossakowskiCoefficients {
    /// Validated constructor enforcing `A, B >= 0` and the Cauchy-Schwarz
    /// bound `|C| <= sqrt(A B)` (up to slack for quadrature rounding).
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, KossakowskiError> {
        if a < -CAUCHY_SCHWARZ_SLACK
            || b < -CAUCHY_SCHWARZ_SLACK
            || c.abs() > (a.max(0.0) * b.max(0.0)).sqrt() + CAUCHY_SCHWARZ_SLACK
        {
            return Err(KossakowskiError::PositivityViolated { a, b, c });
        }
        Ok(Self {
            a: a.max(0.0),
            b: b.max(0.0),
            c,
        })
    }

    /// Contraction of precomputed response tensors; used by the closed-form
    /// response paths and whenever several dipole pairs share one geometry.
    pub fn from_response(
        tensors: &ResponseTensors,
        dipoles: &DipolePair,
    ) -> Result<Self, KossakowskiError> {
        let d1 = dipoles.d1;
        let d2 = dipoles.d2;
        let a = 0.25
            * (tensors.f11 * d1[0] * d1[0]
                + tensors.f22 * d1[1] * d1[1]
                + tensors.f33 * d1[2] * d1[2]);
        let b = 0.25
            * (tensors.f11 * d2[0] * d2[0]
                + tensors.f22 * d2[1] * d2[1]
                + tensors.f33 * d2[2] * d2[2]);
        let c = 0.25
            * (tensors.g11 * d1[0] * d2[0]
                + tensors.g22 * d1[1] * d2[1]
                + tensors.g33 * d1[2] * d2[2]
                + tensors.g13 * (d1[0] * d2[2] - d1[2] * d2[0]));
        Self::new(a, b, c)
    }

    pub fn matrix(&self, kind: CoefficientKind) -> Matrix3<Complex64> {
        let x = match kind {
            CoefficientKind::Self1 => self.a,
            CoefficientKind::Self2 => self.b,
            CoefficientKind::Cross => self.c,
        };
        kossakowski_matrix(x)
    }
}

/// Full pipeline: response tensors for the geometry, then the contraction.
pub fn compute_coefficients(
    geom: &GeometryParams,
    dipoles: &DipolePair,
    ctl: &SummationControl,
) -> Result<KossakowskiCoefficients, KossakowskiError> {
    let tensors = response_tensors(geom, ctl)?;
    KossakowskiCoefficients::from_response(&tensors, dipoles)
}

/// `S_ij = X delta_ij - i X eps_{ij3} - X delta_{3i} delta_{3j}`: Hermitian,
/// PSD for `X >= 0`, eigenvalues `{0, 0, 2X}`.
pub fn kossakowski_matrix(x: f64) -> Matrix3<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let xr = Complex64::new(x, 0.0);
    let xi = Complex64::new(0.0, x);
    Matrix3::new(xr, -xi, zero, xi, xr, zero, zero, zero, zero)
}
