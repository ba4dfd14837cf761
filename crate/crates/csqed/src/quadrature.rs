//! Gauss-Legendre quadrature with node doubling.
//!
//! The response integrands are smooth on `[0, pi/2]` after the
//! `eta = sin(phi)` substitution and at most mildly oscillatory
//! (frequency ~ omega*L), so Gauss-Legendre converges spectrally and a
//! fixed doubling ladder (32, 64, 128, ...) suffices. Rules are cached
//! process-wide; parameter sweeps running on a thread pool share them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error(
        "quadrature not converged: successive estimates still differ by {last_delta:.3e} \
         (tolerance {tol:.3e}) at {max_nodes} nodes"
    )]
    NotConverged {
        last_delta: f64,
        tol: f64,
        max_nodes: usize,
    },
}

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build the rule by Newton iteration on `P_n` with Tricomi initial
    /// guesses; exact to machine precision for the sizes used here.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            // Central node of odd rules is exactly zero.
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate a scalar function over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        half * acc
    }

    /// Integrate `K` components sharing each abscissa evaluation.
    pub fn integrate_array<const K: usize, F: FnMut(f64) -> [f64; K]>(
        &self,
        a: f64,
        b: f64,
        mut f: F,
    ) -> [f64; K] {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = [0.0; K];
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            for (a_k, v_k) in acc.iter_mut().zip(v) {
                *a_k += w * v_k;
            }
        }
        acc.map(|v| v * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Process-wide rule cache keyed by node count.
pub fn rule(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
        .clone()
}

/// Integrate a `K`-component integrand over `[a, b]`, doubling the node
/// count from `base_nodes` until the largest componentwise change between
/// successive estimates drops below `tol`.
pub fn integrate_to_tolerance<const K: usize, F: FnMut(f64) -> [f64; K]>(
    mut f: F,
    a: f64,
    b: f64,
    base_nodes: usize,
    tol: f64,
    max_nodes: usize,
) -> Result<[f64; K], QuadratureError> {
    let mut n = base_nodes.max(2);
    let mut prev = rule(n).integrate_array(a, b, &mut f);
    loop {
        n *= 2;
        if n > max_nodes {
            return Err(QuadratureError::NotConverged {
                last_delta: f64::NAN,
                tol,
                max_nodes,
            });
        }
        let cur = rule(n).integrate_array(a, b, &mut f);
        let delta = prev
            .iter()
            .zip(&cur)
            .map(|(p, c)| (p - c).abs())
            .fold(0.0, f64::max);
        if delta < tol {
            return Ok(cur);
        }
        if n * 2 > max_nodes {
            return Err(QuadratureError::NotConverged {
                last_delta: delta,
                tol,
                max_nodes,
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        // n-point Gauss-Legendre is exact through degree 2n-1.
        let q = GaussLegendre::new(5);
        let got = q.integrate(-1.0, 1.0, |x| x.powi(9) + 3.0 * x.powi(4) - x);
        let expected = 3.0 * 2.0 / 5.0;
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn known_five_point_nodes() {
        let q = GaussLegendre::new(5);
        // Classical values, e.g. Abramowitz & Stegun table 25.4.
        assert!((q.nodes()[4] - 0.906_179_845_938_664).abs() < 1e-14);
        assert!((q.weights()[4] - 0.236_926_885_056_189).abs() < 1e-14);
        assert!((q.nodes()[2]).abs() < 1e-15);
        assert!((q.weights()[2] - 0.568_888_888_888_889).abs() < 1e-14);
        let total: f64 = q.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals() {
        let q = GaussLegendre::new(32);
        let got = q.integrate(0.0, std::f64::consts::FRAC_PI_2, f64::sin);
        assert!((got - 1.0).abs() < 1e-14);
        // The singular response weight after the eta = sin(phi) substitution:
        // integral of eta^3/sqrt(1-eta^2) d eta on [0,1] = 2/3.
        let got = q.integrate(0.0, std::f64::consts::FRAC_PI_2, |phi| phi.sin().powi(3));
        assert!((got - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn doubling_converges_on_oscillatory() {
        let f = |phi: f64| [(8.0 * phi.cos()).cos() * phi.sin()];
        let got = integrate_to_tolerance(f, 0.0, std::f64::consts::FRAC_PI_2, 32, 1e-10, 16_384)
            .unwrap()[0];
        // Substituting u = cos(phi): integral_0^1 cos(8u) du = sin(8)/8.
        let expected = (8.0f64).sin() / 8.0;
        assert!((got - expected).abs() < 1e-10);
    }

    #[test]
    fn reports_non_convergence() {
        // A step discontinuity defeats any fixed Gauss ladder.
        let f = |x: f64| [if x > 0.123_456_7 { 1.0 } else { 0.0 }];
        let err = integrate_to_tolerance(f, 0.0, 1.0, 8, 1e-14, 64).unwrap_err();
        assert!(matches!(err, QuadratureError::NotConverged { .. }));
    }

    #[test]
    fn large_rules_stay_accurate() {
        let q = GaussLegendre::new(512);
        let total: f64 = q.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-12);
        let got = q.integrate(0.0, 1.0, |x| (-x).exp());
        assert!((got - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
    }
}
