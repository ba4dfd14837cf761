//! Independent oracles shared by the integration suites.
//!
//! Nothing here reuses the library's summation, truncation, quadrature
//! ladder, or concurrence shortcut: Bessel values come from an integral
//! representation, response tensors from a raw unpaired brute-force sum,
//! and concurrence from the general Wootters construction on the
//! reconstructed density matrix.

// Each test binary compiles this module separately and uses its own subset.
#![allow(dead_code)]

use nalgebra::{Matrix4, Matrix6, SymmetricEigen, Vector6};
use num_complex::Complex64;
use rand::Rng;

use csqed::{werner_state, KossakowskiCoefficients, PauliState};

/// `J_nu(x)` from the Schlaefli integral representation, the oscillatory
/// integral `(1/pi) int_0^pi cos(nu t - x sin t) dt` minus the tail
/// `sin(nu pi)/pi int_0^inf exp(-nu s - x sinh s) ds`, evaluated with
/// dense Simpson rules. Good to ~1e-12 for the ranges used.
pub fn bessel_j_oracle(nu: f64, x: f64) -> f64 {
    use std::f64::consts::PI;
    let oscillatory = simpson(|t| (nu * t - x * t.sin()).cos(), 0.0, PI, 200_001);
    let sin_nu_pi = (nu * PI).sin();
    let tail = if sin_nu_pi.abs() < 1e-18 {
        0.0
    } else {
        // Find a cutoff where the integrand has fallen below 1e-320.
        let mut s_max = 1.0;
        while nu * s_max + x * s_max.sinh() < 745.0 {
            s_max *= 2.0;
        }
        simpson(|s| (-nu * s - x * s.sinh()).exp(), 0.0, s_max, 200_001)
    };
    oscillatory / PI - sin_nu_pi / PI * tail
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n_points: usize) -> f64 {
    assert!(n_points >= 3 && n_points % 2 == 1);
    let h = (b - a) / (n_points - 1) as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n_points - 1 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Brute-force response tensors: raw `eta` kernels under a fixed
/// 2048-node Gauss-Legendre rule, summed term by term over
/// `n = -n_range ..= n_range` with the literal `|nu n + 1|` orders (negative
/// orders resolved through `J_{-1} = -J_1` only where `nu n` hits zero).
/// Returns `[f11, f22, f33, g11, g22, g33, g13]`.
pub fn brute_force_response(nu: f64, wr: f64, wl: f64, n_range: i64) -> [f64; 7] {
    let rule = csqed::quadrature::GaussLegendre::new(2048);
    let mut total = [0.0f64; 7];
    for n in -n_range..=n_range {
        let term = rule.integrate_array(0.0, std::f64::consts::FRAC_PI_2, |phi: f64| {
            let eta = phi.sin();
            let c = phi.cos();
            let z = wr * eta;
            let a = (nu * n as f64).abs();
            // J_{a-1}: for n = 0 the order is -1; J_{-1} = -J_1.
            let jm = if n == 0 { -j(1.0, z) } else { j(a - 1.0, z) };
            let jc = j(a, z);
            let jp = j(a + 1.0, z);
            let jshift = j((nu * n as f64 + 1.0).abs(), z);
            let eta2 = eta * eta;
            let b11 = eta * (eta2 * jm * jp + (2.0 - eta2) * jshift * jshift);
            let b22 = eta * (-eta2 * jm * jp + (2.0 - eta2) * jshift * jshift);
            let b33 = eta * eta2 * jc * jc;
            let b13 = eta2 * jc * (jm - jp) * c;
            let cos_k = (wl * c).cos();
            let sin_k = (wl * c).sin();
            [
                b11,
                b22,
                b33,
                b11 * cos_k,
                b22 * cos_k,
                b33 * cos_k,
                b13 * sin_k,
            ]
        });
        for i in 0..7 {
            total[i] += term[i];
        }
    }
    let pre = [
        0.75 * nu,
        0.75 * nu,
        1.5 * nu,
        0.75 * nu,
        0.75 * nu,
        1.5 * nu,
        0.75 * nu,
    ];
    let mut out = [0.0; 7];
    for i in 0..7 {
        out[i] = pre[i] * total[i];
    }
    out
}

fn j(nu: f64, x: f64) -> f64 {
    csqed::bessel_j(csqed::BesselOrder::new(nu).unwrap(), x).unwrap()
}

/// General Wootters concurrence from the density matrix:
/// `max(0, l1 - l2 - l3 - l4)` with `l_i` the decreasing eigenvalue square
/// roots of `sqrt(rho) rho~ sqrt(rho)`, `rho~ = (sy x sy) rho* (sy x sy)`.
pub fn wootters_concurrence_general(rho: &Matrix4<Complex64>) -> f64 {
    let sy_sy = {
        let z = Complex64::new(0.0, 0.0);
        let m1 = Complex64::new(-1.0, 0.0);
        let p1 = Complex64::new(1.0, 0.0);
        Matrix4::new(z, z, z, m1, z, z, p1, z, z, p1, z, z, m1, z, z, z)
    };
    let rho_conj = rho.map(|v| v.conj());
    let rho_tilde = sy_sy * rho_conj * sy_sy;
    let sqrt_rho = hermitian_sqrt(rho);
    let m = sqrt_rho * rho_tilde * sqrt_rho;
    let mut lambdas: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = SymmetricEigen::new(*m);
    let sqrt_diag = Matrix4::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    let adjoint = eig.eigenvectors.adjoint();
    eig.eigenvectors * sqrt_diag * adjoint
}

/// Random physical X-state: positive diagonal summing to one with
/// anti-diagonal coherences inside the positivity disc of each 2x2 block.
pub fn random_x_state(rng: &mut impl Rng) -> PauliState {
    let mut d: [f64; 4] = [(); 4].map(|_| -> f64 { rng.gen_range(0.01..1.0) });
    let total: f64 = d.iter().sum();
    d = d.map(|v| v / total);
    let r14 = rng.gen_range(-1.0..1.0) * (d[0] * d[3]).sqrt();
    let r23 = rng.gen_range(-1.0..1.0) * (d[1] * d[2]).sqrt();
    PauliState {
        p11: 2.0 * (r23 + r14),
        p22: 2.0 * (r23 - r14),
        p03: d[0] - d[1] + d[2] - d[3],
        p30: d[0] + d[1] - d[2] - d[3],
        p33: d[0] - d[1] - d[2] + d[3],
    }
}

/// Unclamped `max(F1, F2)`; its sign decides entanglement, so first-death
/// times are located by bisection on it rather than by thresholding the
/// clamped concurrence.
pub fn entanglement_indicator(s: &PauliState) -> f64 {
    let (c1, c2, c3, c4, c5) = (s.p11, s.p22, s.p33, s.p03, s.p30);
    let f1 = 0.5
        * ((c1 + c2).abs()
            - ((c3 - c4 - c5 + 1.0) * (c3 + c4 + c5 + 1.0)).max(0.0).sqrt());
    let f2 = 0.5
        * ((c1 - c2).abs()
            - ((c3 + c4 - c5 - 1.0) * (c3 - c4 + c5 - 1.0)).max(0.0).sqrt());
    f1.max(f2)
}

fn augmented_generator(k: &KossakowskiCoefficients) -> Matrix6<f64> {
    let (a, b, c) = (k.a, k.b, k.c);
    let s = a + b;
    #[rustfmt::skip]
    let m = Matrix6::new(
        -2.0 * s,      0.0,  2.0 * c,  2.0 * c,  4.0 * c, 0.0,
        0.0,      -2.0 * s,  2.0 * c,  2.0 * c,  4.0 * c, 0.0,
        -2.0 * c, -2.0 * c, -4.0 * b,      0.0,      0.0, -4.0 * b,
        -2.0 * c, -2.0 * c,      0.0, -4.0 * a,      0.0, -4.0 * a,
        4.0 * c,   4.0 * c, -4.0 * a, -4.0 * b, -4.0 * s, 0.0,
        0.0,           0.0,      0.0,      0.0,      0.0, 0.0,
    );
    m
}

fn state_at(aug: &Matrix6<f64>, init: &PauliState, t: f64) -> PauliState {
    let u0 = Vector6::new(init.p11, init.p22, init.p03, init.p30, init.p33, 1.0);
    let u = (aug * t).exp() * u0;
    PauliState {
        p11: u[0],
        p22: u[1],
        p03: u[2],
        p30: u[3],
        p33: u[4],
    }
}

/// First `Gamma tau > 0` at which the Werner(2/3) trajectory loses its
/// entanglement, refined to ~1e-9 by bisection on the exact solution;
/// `None` if it stays entangled through `t_hi`.
pub fn first_death_time(k: &KossakowskiCoefficients, t_hi: f64) -> Option<f64> {
    let init = werner_state(2.0 / 3.0).unwrap();
    let aug = augmented_generator(k);
    let coarse = 0.002;
    let steps = (t_hi / coarse).ceil() as usize;
    let step = (aug * coarse).exp();
    let mut u = Vector6::new(init.p11, init.p22, init.p03, init.p30, init.p33, 1.0);
    let mut t_prev = 0.0;
    for i in 1..=steps {
        u = step * u;
        let t = i as f64 * coarse;
        let s = PauliState {
            p11: u[0],
            p22: u[1],
            p03: u[2],
            p30: u[3],
            p33: u[4],
        };
        if entanglement_indicator(&s) <= 0.0 {
            let (mut lo, mut hi) = (t_prev, t);
            for _ in 0..50 {
                let mid = 0.5 * (lo + hi);
                if entanglement_indicator(&state_at(&aug, &init, mid)) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        t_prev = t;
    }
    None
}
