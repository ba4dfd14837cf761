//! Markovian open-system dynamics of two static two-level atoms dipole-coupled
//! to the fluctuating electromagnetic vacuum of a cosmic-string spacetime.
//!
//! The conical geometry is locally flat with azimuth restricted to
//! `[0, 2*pi/nu)`; the deficit-angle parameter `nu >= 1` (with `nu = 1`
//! ordinary Minkowski spacetime) enters the field correlation functions
//! through Bessel mode sums. The pipeline is
//!
//! 1. [`bessel`]: Bessel functions `J_nu` of real non-negative order, the
//!    transcendental kernel of every mode sum;
//! 2. [`response`]: Fourier-transformed field correlation tensors at the
//!    atomic transition frequency, the same-point response `f_ii` and the
//!    cross-atom response `g_ij`, plus closed-form limits (flat spacetime,
//!    atoms on the string) used as oracles;
//! 3. [`kossakowski`]: contraction of the response tensors against the
//!    atomic dipole orientations into the dissipator scalars `A`, `B`, `C`;
//! 4. [`dynamics`]: the six coupled linear ODEs for the Pauli coefficients
//!    of the resulting X-shape two-qubit state, integrated by RK4 or by an
//!    exact matrix-exponential solver;
//! 5. [`entanglement`]: Wootters concurrence for X-shape states and
//!    density-matrix reconstruction/physicality checks.
//!
//! All rates are in units of the spontaneous emission rate `Gamma` and all
//! times in units of `1/Gamma`; distances appear only through the
//! dimensionless combinations `omega*r` (atom-string distance) and `omega*L`
//! (inter-atom separation).

pub mod bessel;
pub mod dynamics;
pub mod entanglement;
pub mod kossakowski;
pub mod quadrature;
pub mod response;

pub use bessel::{bessel_j, bessel_j_derivative, BesselOrder, SpecialFunctionError};
pub use dynamics::{
    derivative, equilibrium, evolve, werner_state, DynamicsError, EvolutionSettings, Method,
    PauliRates, PauliState, Trajectory, TrajectoryPoint,
};
pub use entanglement::{concurrence, density_matrix, density_matrix_eigenvalues, EntanglementError};
pub use kossakowski::{
    compute_coefficients, kossakowski_matrix, CoefficientKind, DipolePair, KossakowskiCoefficients,
    KossakowskiError,
};
pub use response::{
    cross_response, flat_space_response, on_string_response, response_tensors,
    same_point_response, GeometryParams, ResponseError, ResponseTensors, SummationControl,
};
