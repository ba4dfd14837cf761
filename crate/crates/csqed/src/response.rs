//! Fourier-transformed electric-field correlation tensors.
//!
//! Two static atoms sit at the same distance `r` from the string, separated
//! by `L` along it. At the atomic transition frequency the same-point
//! response `f_ii` and the cross-atom response `g_ij` are mode sums over the
//! angular number `n` of integrals over `eta in [0, 1]`,
//!
//! ```text
//! f11 = (3 nu/4) sum_n  I[ eta ( eta^2 J_{|nu n|-1} J_{|nu n|+1}
//!                              + (2 - eta^2) J^2_{|nu n + 1|} ) / sqrt(1-eta^2) ]
//! f22 =  same with the J_{|nu n|-1} J_{|nu n|+1} term negated
//! f33 = (3 nu/2) sum_n  I[ eta^3 J^2_{|nu n|} / sqrt(1-eta^2) ]
//! ```
//!
//! with every Bessel argument `omega r eta`. The `g_ij` carry an extra
//! `cos(omega L sqrt(1-eta^2))` under the integral, except `g13`, which has
//! the `sin` kernel, no inverse square root, and the combination
//! `J_{|nu n|} (J_{|nu n|-1} - J_{|nu n|+1})`; all remaining off-diagonal
//! entries vanish and `g31 = -g13`.
//!
//! The substitution `eta = sin(phi)` removes the endpoint singularity.
//! Terms are summed as `{+n, -n}` pairs: the product term and the `n = 0`
//! term are even in `n`, while `J^2_{|nu n + 1|}` pairs to
//! `J^2_{nu n + 1} + J^2_{nu n - 1}` (for `nu >= 1` every such order is
//! non-negative). At `n = 0` the factors reduce through `J_{-1} = -J_1` to
//! `-J_1^2` and `-2 J_1` respectively, keeping all evaluated orders >= 0.

use thiserror::Error;

use crate::bessel::j_raw;
use crate::quadrature::{integrate_to_tolerance, QuadratureError};

/// Hard ceiling on quadrature refinement within one mode pair.
const MAX_QUAD_NODES: usize = 16_384;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid summation control: {0}")]
    InvalidControl(String),
    /// The mode sum hit `n_max` with the last symmetric pair still above
    /// `term_tol`; carries the partial sums accumulated so far.
    #[error(
        "mode sum not converged: reached n_max = {n_max} with last pair contribution \
         {last_pair:.3e} > term_tol = {term_tol:.3e}; partial sums f = ({f11:.6e}, {f22:.6e}, \
         {f33:.6e}), g = ({g11:.6e}, {g22:.6e}, {g33:.6e}, g13 = {g13:.6e})"
    )]
    SumNotConverged {
        n_max: u32,
        last_pair: f64,
        term_tol: f64,
        f11: f64,
        f22: f64,
        f33: f64,
        g11: f64,
        g22: f64,
        g33: f64,
        g13: f64,
    },
    #[error("quadrature failure in mode pair n = {n}: {source}")]
    Quadrature {
        n: u32,
        #[source]
        source: QuadratureError,
    },
}

/// Deficit-angle parameter and the two dimensionless distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryParams {
    nu: f64,
    omega_r: f64,
    omega_l: f64,
}

impl GeometryParams {
    /// `nu >= 1` (conical deficit; `nu = 1` is flat spacetime), both
    /// distances finite and non-negative, in units of the inverse
    /// transition frequency.
    pub fn new(nu: f64, omega_r: f64, omega_l: f64) -> Result<Self, ResponseError> {
        if !nu.is_finite() || nu < 1.0 {
            return Err(ResponseError::InvalidGeometry(format!(
                "deficit-angle parameter nu must be finite and >= 1, got {nu}"
            )));
        }
        if !omega_r.is_finite() || omega_r < 0.0 {
            return Err(ResponseError::InvalidGeometry(format!(
                "omega_r must be finite and >= 0, got {omega_r}"
            )));
        }
        if !omega_l.is_finite() || omega_l < 0.0 {
            return Err(ResponseError::InvalidGeometry(format!(
                "omega_L must be finite and >= 0, got {omega_l}"
            )));
        }
        Ok(Self {
            nu,
            omega_r,
            omega_l,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn omega_l(&self) -> f64 {
        self.omega_l
    }
}

/// Truncation and quadrature controls for the mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationControl {
    n_max: u32,
    term_tol: f64,
    quad_points: usize,
    quad_tol: f64,
}

impl SummationControl {
    pub fn new(
        n_max: u32,
        term_tol: f64,
        quad_points: usize,
        quad_tol: f64,
    ) -> Result<Self, ResponseError> {
        if !(term_tol > 0.0 && term_tol <= 1e-3) {
            return Err(ResponseError::InvalidControl(format!(
                "term_tol must lie in (0, 1e-3], got {term_tol}"
            )));
        }
        if !(quad_tol > 0.0 && quad_tol <= 1e-3) {
            return Err(ResponseError::InvalidControl(format!(
                "quad_tol must lie in (0, 1e-3], got {quad_tol}"
            )));
        }
        if quad_points < 8 {
            return Err(ResponseError::InvalidControl(format!(
                "quad_points must be >= 8, got {quad_points}"
            )));
        }
        Ok(Self {
            n_max,
            term_tol,
            quad_points,
            quad_tol,
        })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn term_tol(&self) -> f64 {
        self.term_tol
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn with_term_tol(mut self, term_tol: f64) -> Result<Self, ResponseError> {
        Self::new(self.n_max, term_tol, self.quad_points, self.quad_tol)?;
        self.term_tol = term_tol;
        Ok(self)
    }

    pub fn with_quad_tol(mut self, quad_tol: f64) -> Result<Self, ResponseError> {
        Self::new(self.n_max, self.term_tol, self.quad_points, quad_tol)?;
        self.quad_tol = quad_tol;
        Ok(self)
    }

    pub fn with_n_max(mut self, n_max: u32) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_quad_points(mut self, quad_points: usize) -> Result<Self, ResponseError> {
        Self::new(self.n_max, self.term_tol, quad_points, self.quad_tol)?;
        self.quad_points = quad_points;
        Ok(self)
    }
}

impl Default for SummationControl {
    fn default() -> Self {
        Self {
            n_max: 512,
            term_tol: 1e-12,
            quad_points: 32,
            quad_tol: 1e-8,
        }
    }
}

impl SummationControl {
    /// Defaults with `n_max` raised to the geometry's decay window
    /// `ceil((omega_r + 40) / nu)` when that exceeds 512, so far-out
    /// geometries cannot hit the cap before the Bessel orders decay.
    pub fn for_geometry(geom: &GeometryParams) -> Self {
        let needed = ((geom.omega_r + 40.0) / geom.nu).ceil() as u32;
        Self::default().with_n_max(needed.max(512))
    }
}

/// The non-zero response components. Same-point response is diagonal;
/// the cross response has an antisymmetric `(1,3)` block on top of its
/// diagonal, exposed through [`ResponseTensors::g31`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResponseTensors {
    pub f11: f64,
    pub f22: f64,
    pub f33: f64,
    pub g11: f64,
    pub g22: f64,
    pub g33: f64,
    pub g13: f64,
}

impl ResponseTensors {
    /// `g^{(12)}_{31} = -g^{(12)}_{13}`.
    pub fn g31(&self) -> f64 {
        -self.g13
    }
}

/// Same-point diagonal response `(f11, f22, f33)`.
pub fn same_point_response(
    geom: &GeometryParams,
    ctl: &SummationControl,
) -> Result<(f64, f64, f64), ResponseError> {
    let t = response_tensors(geom, ctl)?;
    Ok((t.f11, t.f22, t.f33))
}

/// Cross-atom response; the same mode sum also yields the `f` components,
/// so the full tensor is returned.
pub fn cross_response(
    geom: &GeometryParams,
    ctl: &SummationControl,
) -> Result<ResponseTensors, ResponseError> {
    response_tensors(geom, ctl)
}

/// One pass over the mode sum computing all seven components; the `f` and
/// `g` kernels share every Bessel evaluation.
pub fn response_tensors(
    geom: &GeometryParams,
    ctl: &SummationControl,
) -> Result<ResponseTensors, ResponseError> {
    let nu = geom.nu;
    let wr = geom.omega_r;
    let wl = geom.omega_l;
    let pre_quarter = 0.75 * nu; // 3 nu / 4
    let pre_half = 1.5 * nu; // 3 nu / 2
    let prefactors = [
        pre_quarter,
        pre_quarter,
        pre_half,
        pre_quarter,
        pre_quarter,
        pre_half,
        pre_quarter,
    ];

    let mut total = [0.0f64; 7];
    let mut n = 0u32;
    loop {
        let raw = integrate_to_tolerance(
            |phi| mode_pair_kernels(n, nu, wr, wl, phi),
            0.0,
            std::f64::consts::FRAC_PI_2,
            ctl.quad_points,
            ctl.quad_tol,
            MAX_QUAD_NODES,
        )
        .map_err(|source| ResponseError::Quadrature { n, source })?;
        let mut pair_magnitude = 0.0f64;
        for k in 0..7 {
            let contrib = prefactors[k] * raw[k];
            total[k] += contrib;
            pair_magnitude = pair_magnitude.max(contrib.abs());
        }
        // Stop once a pair is negligible *and* the smallest Bessel order in
        // the next pairs is deep in the exponential-decay region.
        if n > 0 && pair_magnitude < ctl.term_tol && nu * f64::from(n) - 1.0 > wr + 30.0 {
            break;
        }
        if n >= ctl.n_max {
            return Err(ResponseError::SumNotConverged {
                n_max: ctl.n_max,
                last_pair: pair_magnitude,
                term_tol: ctl.term_tol,
                f11: total[0],
                f22: total[1],
                f33: total[2],
                g11: total[3],
                g22: total[4],
                g33: total[5],
                g13: total[6],
            });
        }
        n += 1;
    }

    Ok(ResponseTensors {
        f11: total[0],
        f22: total[1],
        f33: total[2],
        g11: total[3],
        g22: total[4],
        g33: total[5],
        g13: total[6],
    })
}

/// Integrand of the `{+n, -n}` pair (or the single `n = 0` term) at angle
/// `phi`, `eta = sin(phi)`: `[f11, f22, f33, g11, g22, g33, g13]` kernels
/// without the `3 nu / 4` prefactors. The inverse square root of the
/// measure cancels against `d eta = cos(phi) d phi` for all components but
/// `g13`, which instead picks up the `cos(phi)` factor.
fn mode_pair_kernels(n: u32, nu: f64, wr: f64, wl: f64, phi: f64) -> [f64; 7] {
    let eta = phi.sin();
    let c = phi.cos();
    let z = wr * eta;
    let eta2 = eta * eta;
    let cos_k = (wl * c).cos();
    let sin_k = (wl * c).sin();

    let (b11, b22, b33, b13);
    if n == 0 {
        // J_{-1} J_{+1} = -J_1^2 and J_{-1} - J_{+1} = -2 J_1.
        let j0 = j_raw(0.0, z);
        let j1 = j_raw(1.0, z);
        let j1sq = j1 * j1;
        b11 = eta * (2.0 - 2.0 * eta2) * j1sq;
        b22 = eta * 2.0 * j1sq;
        b33 = eta * eta2 * j0 * j0;
        b13 = eta2 * j0 * (-2.0 * j1);
    } else {
        let a = nu * f64::from(n);
        let jm = j_raw(a - 1.0, z);
        let jc = j_raw(a, z);
        let jp = j_raw(a + 1.0, z);
        // The +-n pair: the product term is even in n, while the shifted
        // order |nu n + 1| contributes J_{a+1}^2 for +n and J_{a-1}^2 for -n.
        let cross = 2.0 * jm * jp;
        let squares = jp * jp + jm * jm;
        b11 = eta * (eta2 * cross + (2.0 - eta2) * squares);
        b22 = eta * (-eta2 * cross + (2.0 - eta2) * squares);
        b33 = 2.0 * eta * eta2 * jc * jc;
        b13 = 2.0 * eta2 * jc * (jm - jp);
    }

    [
        b11,
        b22,
        b33,
        b11 * cos_k,
        b22 * cos_k,
        b33 * cos_k,
        b13 * sin_k * c,
    ]
}

/// Closed-form response of flat spacetime (`nu = 1`); the `f` components
/// are unity and the `g` diagonal depends only on `omega L`.
pub fn flat_space_response(omega_l: f64) -> ResponseTensors {
    assert!(
        omega_l.is_finite() && omega_l >= 0.0,
        "flat_space_response requires finite omega_L >= 0, got {omega_l}"
    );
    let (g11, g33) = flat_g_diagonal(omega_l);
    ResponseTensors {
        f11: 1.0,
        f22: 1.0,
        f33: 1.0,
        g11,
        g22: g11,
        g33,
        g13: 0.0,
    }
}

/// `(g11 = g22, g33)` of the flat-spacetime cross response; series
/// expansions below `x = 0.01` avoid the cancellation in the closed forms.
fn flat_g_diagonal(x: f64) -> (f64, f64) {
    if x < 1e-2 {
        let x2 = x * x;
        let g11 = 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0;
        let g33 = 1.0 - x2 / 10.0 + x2 * x2 / 280.0;
        (g11, g33)
    } else {
        let (s, c) = x.sin_cos();
        let x3 = x * x * x;
        let g11 = 3.0 * ((x * x - 1.0) * s + x * c) / (2.0 * x3);
        let g33 = 3.0 * (s - x * c) / x3;
        (g11, g33)
    }
}

/// Closed-form response for both atoms on the string (`r -> 0`, `nu > 1`
/// continuous down to 1): only the axial components survive and carry the
/// full deficit factor.
pub fn on_string_response(nu: f64, omega_l: f64) -> ResponseTensors {
    assert!(
        nu.is_finite() && nu >= 1.0,
        "on_string_response requires finite nu >= 1, got {nu}"
    );
    assert!(
        omega_l.is_finite() && omega_l >= 0.0,
        "on_string_response requires finite omega_L >= 0, got {omega_l}"
    );
    let (_, g33_unit) = flat_g_diagonal(omega_l);
    ResponseTensors {
        f11: 0.0,
        f22: 0.0,
        f33: nu,
        g11: 0.0,
        g22: 0.0,
        g33: nu * g33_unit,
        g13: 0.0,
    }
}
