use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{FusionError, Result};
use crate::tlj::chebyshev::chebyshev_v_table;

/// Composite trapezoid rule with node doubling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureParams {
    pub initial_nodes: usize,
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams {
            initial_nodes: 16,
            tol: 1e-8,
            max_doublings: 16,
        }
    }
}

/// `∫₀⁴ V_n V_m dμ` for the probability measure `dμ = (2π)⁻¹ √((4−t)/t) dt`.
///
/// With `t = 2 − 2cos u` the integrand becomes `π⁻¹ (1 + cos u) V_n V_m` on
/// `[0, π]`, a smooth even trigonometric polynomial, so the trapezoid rule is
/// exact once the node count exceeds its degree.
pub fn plancherel_pair(n: usize, m: usize, params: &QuadratureParams) -> Result<f64> {
    if params.initial_nodes < 2 {
        return Err(FusionError::Parameter("quadrature needs at least 2 nodes".into()));
    }
    let top = n.max(m);
    let integrand = |u: f64| {
        let v = chebyshev_v_table(top, &(2.0 - 2.0 * u.cos()));
        (1.0 + u.cos()) * v[n] * v[m] / PI
    };
    let trapezoid = |nodes: usize| {
        let h = PI / nodes as f64;
        let interior: f64 = (1..nodes).map(|j| integrand(j as f64 * h)).sum();
        h * (interior + 0.5 * (integrand(0.0) + integrand(PI)))
    };
    let mut nodes = params.initial_nodes;
    let mut previous = trapezoid(nodes);
    for _ in 0..params.max_doublings {
        nodes *= 2;
        let current = trapezoid(nodes);
        if (current - previous).abs() <= params.tol * f64::max(1.0, current.abs()) {
            return Ok(current);
        }
        previous = current;
    }
    Err(FusionError::Numeric {
        message: format!("quadrature for ({n},{m}) did not converge with {nodes} nodes"),
        achieved: previous,
    })
}

/// Gram matrix `[∫ V_i V_j dμ]` for `i, j ≤ n_max`.
pub fn plancherel_gram(n_max: usize, params: &QuadratureParams) -> Result<Vec<Vec<f64>>> {
    (0..=n_max)
        .map(|i| (0..=n_max).map(|j| plancherel_pair(i, j, params)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal() {
        let p = QuadratureParams::default();
        assert!((plancherel_pair(0, 0, &p).unwrap() - 1.0).abs() < 1e-12);
        assert!((plancherel_pair(1, 1, &p).unwrap() - 1.0).abs() < 1e-12);
        for n in 1..=10 {
            assert!(plancherel_pair(n, 0, &p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn non_convergence_reports_estimate() {
        let p = QuadratureParams {
            initial_nodes: 2,
            tol: 1e-8,
            max_doublings: 0,
        };
        match plancherel_pair(12, 12, &p) {
            Err(FusionError::Numeric { achieved, .. }) => assert!(achieved.is_finite()),
            other => panic!("expected numeric error, got {other:?}"),
        }
    }
}
