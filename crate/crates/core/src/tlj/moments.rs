use std::sync::Mutex;

use num::rational::BigRational;

use crate::builders::tlj::build_tlj_ainf;
use crate::error::{FusionError, Result};
use crate::fusion::{FusionElement, Label};
use crate::multiplier::Multiplier;
use crate::scalar::{RealScalar, Scalar};
use crate::tlj::chebyshev::chebyshev_v_table;
use crate::tlj::point::lambda_inv_of;

/// Exact rows `c_{k,·}` computed so far, shared by all callers.
static ROWS: Mutex<Vec<Vec<BigRational>>> = Mutex::new(Vec::new());

fn exact_rows(k_max: usize) -> Vec<Vec<BigRational>> {
    let mut rows = ROWS.lock().unwrap_or_else(|e| e.into_inner());
    if rows.len() <= k_max {
        // The coefficients do not depend on the index; any TLJ ring will do.
        let ring = build_tlj_ainf(4.0).expect("index 4 is valid");
        let one = BigRational::from_integer(1.into());
        let x = FusionElement::from_terms(&ring, [(Label::Tlj(0), one.clone()), (Label::Tlj(1), one)])
            .expect("valid labels");
        let mut power = match rows.last() {
            Some(last) => FusionElement::from_terms(
                &ring,
                last.iter().enumerate().map(|(n, c)| (Label::Tlj(n as u32), c.clone())),
            )
            .expect("valid labels"),
            None => FusionElement::one(&ring),
        };
        if rows.is_empty() {
            rows.push(vec![BigRational::from_integer(1.into())]);
        }
        for k in rows.len()..=k_max {
            power = power.mul(&x).expect("same ring");
            rows.push((0..=k).map(|n| power.coefficient(&Label::Tlj(n as u32))).collect());
        }
    }
    rows[..=k_max].to_vec()
}

/// Coefficients `c_{k,n}` of `X^k = Σ_n c_{k,n} H_n`, where `X = ε + H_1`.
pub fn monomial_coefficients<S: Scalar>(k: usize) -> Vec<S> {
    exact_rows(k)[k].iter().map(S::from_rational).collect()
}

/// All coefficient rows `c_{0,·}, ..., c_{k_max,·}`.
pub fn monomial_table<S: Scalar>(k_max: usize) -> Vec<Vec<S>> {
    exact_rows(k_max)
        .iter()
        .map(|row| row.iter().map(S::from_rational).collect())
        .collect()
}

/// Moments `m_k = ω_φ(X^k)` of a multiplier on a TLJ ring.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S> {
    pub lambda_inv: S,
    pub values: Vec<S>,
    /// `Σ_n |c_{k,n} V_n(λ⁻¹) φ(H_n)|` per moment; the cancellation scale used
    /// to bound floating-point error.
    pub magnitudes: Vec<f64>,
    pub provenance: String,
}

impl<S: RealScalar> MomentSequence<S> {
    /// Moments supplied directly; magnitudes default to `|m_k|`.
    pub fn from_values(lambda_inv: S, values: Vec<S>, provenance: impl Into<String>) -> Self {
        let magnitudes = values.iter().map(|v| v.to_f64().abs()).collect();
        MomentSequence {
            lambda_inv,
            values,
            magnitudes,
            provenance: provenance.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `m_k = Σ_n c_{k,n} V_n(λ⁻¹) φ(H_n)` for `k = 0..=k_max`.
pub fn moments<S: RealScalar>(phi: &Multiplier<S>, k_max: usize) -> Result<MomentSequence<S>> {
    let lambda_inv: S = lambda_inv_of(phi.ring())?;
    let dims = chebyshev_v_table(k_max, &lambda_inv);
    let weighted: Vec<S> = (0..=k_max)
        .map(|n| Ok(dims[n].clone() * phi.eval(&Label::Tlj(n as u32))?))
        .collect::<Result<_>>()?;
    let table = monomial_table::<S>(k_max);
    let mut values = Vec::with_capacity(k_max + 1);
    let mut magnitudes = Vec::with_capacity(k_max + 1);
    for row in &table {
        let mut m = S::zero();
        let mut scale = 0.0;
        for (c, w) in row.iter().zip(&weighted) {
            let term = c.clone() * w.clone();
            scale += term.to_f64().abs();
            m = m + term;
        }
        if !m.to_f64().is_finite() {
            return Err(FusionError::Numeric {
                message: "non-finite moment".into(),
                achieved: m.to_f64(),
            });
        }
        values.push(m);
        magnitudes.push(scale);
    }
    Ok(MomentSequence {
        lambda_inv,
        values,
        magnitudes,
        provenance: phi.description().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::tlj::build_tlj_ainf;
    use crate::multiplier::{regular_multiplier, trivial_multiplier};
    use crate::scalar::ratio;
    use crate::tlj::point::phi_point;

    #[test]
    fn coefficient_rows() {
        assert_eq!(monomial_coefficients::<f64>(0), vec![1.0]);
        assert_eq!(monomial_coefficients::<f64>(2), vec![2.0, 3.0, 1.0]);
        assert_eq!(monomial_coefficients::<f64>(3), vec![5.0, 9.0, 5.0, 1.0]);
        let dims = [1.0, 4.0, 11.0, 29.0];
        let total: f64 = monomial_coefficients::<f64>(3).iter().zip(dims).map(|(c, d)| c * d).sum();
        assert_eq!(total, 125.0);
    }

    #[test]
    fn point_mass_moments_are_powers() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let t = ratio(7, 2);
        let m = moments(&phi_point(&ring, t.clone()).unwrap(), 10).unwrap();
        for (k, v) in m.values.iter().enumerate() {
            assert_eq!(*v, num::pow(t.clone(), k));
        }
    }

    #[test]
    fn regular_and_trivial_moments() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let reg = moments(&regular_multiplier::<f64>(&ring), 5).unwrap();
        assert_eq!(reg.values, vec![1.0, 1.0, 2.0, 5.0, 14.0, 42.0]);
        let triv = moments(&trivial_multiplier::<f64>(&ring), 5).unwrap();
        for (k, v) in triv.values.iter().enumerate() {
            assert_eq!(*v, 5f64.powi(k as i32));
        }
    }
}
