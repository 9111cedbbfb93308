use serde::{Deserialize, Serialize};

use crate::error::{FusionError, Result};
use crate::fusion::FusionElement;
use crate::scalar::RealScalar;
use crate::tlj::chebyshev::chebyshev_v_table;
use crate::tlj::point::{lambda_inv_of, tlj_index};

/// Number of Chebyshev nodes in the sup-norm search grid.
pub const SUP_GRID_NODES: usize = 2048;

/// Upper end of the support of the regular representation's spectral measure.
pub const REDUCED_SPECTRUM_TOP: i64 = 4;

/// A polynomial sup-norm. `value` is exact when the maximum sits at an
/// endpoint; interior maxima come from floating-point refinement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupNorm<S> {
    pub value: S,
    pub argmax: f64,
    pub exact: bool,
}

fn coefficients<S: RealScalar>(x: &FusionElement<S>) -> Result<Vec<S>> {
    let degree = x.support().map(tlj_index).collect::<Result<Vec<_>>>()?.into_iter().max();
    let Some(degree) = degree else {
        return Ok(vec![]);
    };
    let mut coeffs = vec![S::zero(); degree + 1];
    for (label, c) in x.terms() {
        coeffs[tlj_index(label)?] = c.clone();
    }
    Ok(coeffs)
}

/// Monomial coefficients (ascending powers of `t`) of `P_x = Σ_n x_n V_n`.
pub fn to_polynomial<S: RealScalar>(x: &FusionElement<S>) -> Result<Vec<S>> {
    let coeffs = coefficients(x)?;
    if coeffs.is_empty() {
        return Ok(vec![S::zero()]);
    }
    let mut out = vec![S::zero(); coeffs.len()];
    let mut prev: Vec<S> = vec![];
    let mut cur: Vec<S> = vec![S::one()];
    for (n, c) in coeffs.iter().enumerate() {
        if n == 1 {
            prev = std::mem::replace(&mut cur, vec![-S::one(), S::one()]);
        } else if n > 1 {
            // V_n = (t − 2) V_{n−1} − V_{n−2}
            let mut next = vec![S::zero(); n + 1];
            for (k, a) in cur.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + a.clone();
                next[k] = next[k].clone() - S::from_int(2) * a.clone();
            }
            for (k, a) in prev.iter().enumerate() {
                next[k] = next[k].clone() - a.clone();
            }
            prev = std::mem::replace(&mut cur, next);
        }
        for (k, a) in cur.iter().enumerate() {
            out[k] = out[k].clone() + c.clone() * a.clone();
        }
    }
    Ok(out)
}

/// `P_x(t)` and `P_x'(t)` via the Chebyshev recurrences.
fn eval_with_derivative(coeffs: &[f64], t: f64) -> (f64, f64) {
    let (mut v_prev, mut v) = (0.0, 1.0);
    let (mut dv_prev, mut dv) = (0.0, 0.0);
    let (mut p, mut dp) = (0.0, 0.0);
    for (n, c) in coeffs.iter().enumerate() {
        if n == 1 {
            v_prev = 1.0;
            v = t - 1.0;
            dv_prev = 0.0;
            dv = 1.0;
        } else if n > 1 {
            let v_next = (t - 2.0) * v - v_prev;
            let dv_next = v + (t - 2.0) * dv - dv_prev;
            v_prev = std::mem::replace(&mut v, v_next);
            dv_prev = std::mem::replace(&mut dv, dv_next);
        }
        p += c * v;
        dp += c * dv;
    }
    (p, dp)
}

fn refine(coeffs: &[f64], mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut d_lo = eval_with_derivative(coeffs, lo).1;
    let d_hi = eval_with_derivative(coeffs, hi).1;
    if d_lo == 0.0 {
        return Some(lo);
    }
    if d_lo.signum() == d_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d_mid = eval_with_derivative(coeffs, mid).1;
        if d_mid == 0.0 {
            return Some(mid);
        }
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn sup_on<S: RealScalar>(x: &FusionElement<S>, lo: S, hi: S) -> Result<SupNorm<S>> {
    let coeffs = coefficients(x)?;
    if coeffs.is_empty() {
        return Ok(SupNorm {
            value: S::zero(),
            argmax: lo.to_f64(),
            exact: true,
        });
    }
    let exact_at = |t: &S| -> S {
        let v = chebyshev_v_table(coeffs.len() - 1, t);
        coeffs
            .iter()
            .zip(v)
            .fold(S::zero(), |acc, (c, v)| acc + c.clone() * v)
            .magnitude()
    };
    let at_lo = exact_at(&lo);
    let at_hi = exact_at(&hi);
    let (mut best, mut best_t, mut best_exact) = if at_hi >= at_lo {
        (at_hi.clone(), hi.to_f64(), true)
    } else {
        (at_lo.clone(), lo.to_f64(), true)
    };

    let fc: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect();
    let (a, b) = (lo.to_f64(), hi.to_f64());
    let mut grid: Vec<f64> = (0..SUP_GRID_NODES)
        .map(|j| {
            let theta = std::f64::consts::PI * (j as f64 + 0.5) / SUP_GRID_NODES as f64;
            0.5 * (a + b) - 0.5 * (b - a) * theta.cos()
        })
        .collect();
    grid.insert(0, a);
    grid.push(b);
    let values: Vec<f64> = grid.iter().map(|&t| eval_with_derivative(&fc, t).0.abs()).collect();

    let mut interior_best = f64::NEG_INFINITY;
    let mut interior_t = a;
    for i in 1..grid.len() - 1 {
        if values[i] < values[i - 1] || values[i] < values[i + 1] {
            continue;
        }
        let mut candidate = (values[i], grid[i]);
        for (l, h) in [(grid[i - 1], grid[i]), (grid[i], grid[i + 1])] {
            if let Some(t) = refine(&fc, l, h) {
                let v = eval_with_derivative(&fc, t).0.abs();
                if v > candidate.0 {
                    candidate = (v, t);
                }
            }
        }
        if candidate.0 > interior_best {
            interior_best = candidate.0;
            interior_t = candidate.1;
        }
    }
    let endpoint = best.to_f64();
    if interior_best > endpoint * (1.0 + 1e-12) && interior_best - endpoint > 1e-300 {
        best = S::from_f64(interior_best).ok_or_else(|| FusionError::Numeric {
            message: "sup-norm not representable".into(),
            achieved: interior_best,
        })?;
        best_t = interior_t;
        best_exact = false;
    }
    Ok(SupNorm {
        value: best,
        argmax: best_t,
        exact: best_exact,
    })
}

/// `max |P_x|` over `[0, λ⁻¹]`: the norm in the universal C*-algebra.
pub fn universal_norm<S: RealScalar>(x: &FusionElement<S>) -> Result<SupNorm<S>> {
    let lambda_inv: S = lambda_inv_of(x.ring())?;
    sup_on(x, S::zero(), lambda_inv)
}

/// `max |P_x|` over `[0, 4]`: the norm in the regular representation.
pub fn reduced_norm<S: RealScalar>(x: &FusionElement<S>) -> Result<SupNorm<S>> {
    lambda_inv_of::<S>(x.ring())?;
    sup_on(x, S::zero(), S::from_int(REDUCED_SPECTRUM_TOP))
}

/// `Σ_n |x_n| d(H_n)`, the trivial upper bound for every admissible norm.
pub fn omega_bound<S: RealScalar>(x: &FusionElement<S>) -> Result<S> {
    let lambda_inv: S = lambda_inv_of(x.ring())?;
    let coeffs = coefficients(x)?;
    if coeffs.is_empty() {
        return Ok(S::zero());
    }
    let dims = chebyshev_v_table(coeffs.len() - 1, &lambda_inv);
    Ok(coeffs
        .iter()
        .zip(dims)
        .fold(S::zero(), |acc, (c, d)| acc + c.magnitude() * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::tlj::build_tlj_ainf;
    use crate::fusion::Label;
    use crate::scalar::ratio;
    use num::rational::BigRational;

    #[test]
    fn polynomial_of_basis_elements() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let h2 = FusionElement::basis(&ring, Label::Tlj(2)).unwrap();
        assert_eq!(to_polynomial::<f64>(&h2).unwrap(), vec![1.0, -3.0, 1.0]);
        let x = FusionElement::from_terms(&ring, [(Label::Tlj(0), 1.0), (Label::Tlj(1), 1.0)]).unwrap();
        assert_eq!(to_polynomial(&x).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn norms_of_h2() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let h2 = FusionElement::<BigRational>::basis(&ring, Label::Tlj(2)).unwrap();
        let r = reduced_norm(&h2).unwrap();
        assert_eq!(r.value, ratio(5, 1));
        assert!(r.exact);
        assert_eq!(universal_norm(&h2).unwrap().value, ratio(11, 1));
        assert_eq!(omega_bound(&h2).unwrap(), ratio(11, 1));
    }

    #[test]
    fn interior_maximum() {
        // 2V_0 + V_1 − V_2 = 4t − t², zero at both ends of [0,4], 4 at t = 2
        let ring = build_tlj_ainf(4.0).unwrap();
        let x = FusionElement::from_terms(
            &ring,
            [(Label::Tlj(0), 2.0f64), (Label::Tlj(1), 1.0), (Label::Tlj(2), -1.0)],
        )
        .unwrap();
        let n = reduced_norm(&x).unwrap();
        assert!((n.value - 4.0).abs() < 1e-12);
        assert!((n.argmax - 2.0).abs() < 1e-6);
        assert!(!n.exact);
    }
}
