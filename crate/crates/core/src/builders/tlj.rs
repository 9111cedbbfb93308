use std::any::Any;

use num::rational::BigRational;

use crate::error::{FusionError, Result};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::{Dimension, RealScalar, Scalar};
use crate::tlj::chebyshev::chebyshev_v;

fn parse_tlj_label(text: &str) -> Result<Label> {
    let t = text.trim();
    if t == "e" || t == "ε" {
        return Ok(Label::Tlj(0));
    }
    let digits = t.strip_prefix('H').or_else(|| t.strip_prefix('h')).unwrap_or(t);
    digits
        .parse::<u32>()
        .map(Label::Tlj)
        .map_err(|_| FusionError::parse("label", format!("expected H<n>, got `{text}`")))
}

/// Temperley-Lieb-Jones ring with principal graph `A_∞` (index `λ⁻¹ ≥ 4`).
///
/// `H_m ⊗ H_n = ⊕_{k=|m-n|}^{m+n} H_k` and `d(H_n) = V_n(λ⁻¹)`.
#[derive(Debug, Clone)]
pub struct TljInfinite {
    lambda_inv: f64,
    exact: Option<BigRational>,
}

impl TljInfinite {
    pub fn lambda_inv(&self) -> f64 {
        self.lambda_inv
    }

    pub fn lambda_inv_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }
}

impl FusionRule for TljInfinite {
    fn name(&self) -> String {
        format!("TLJ(λ⁻¹={})", self.lambda_inv)
    }

    fn family(&self) -> Family {
        Family::TljInfinite {
            lambda_inv: self.lambda_inv,
        }
    }

    fn unit(&self) -> Label {
        Label::Tlj(0)
    }

    fn contains(&self, a: &Label) -> bool {
        matches!(a, Label::Tlj(_))
    }

    fn conjugate(&self, a: &Label) -> Label {
        a.clone()
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let (Label::Tlj(m), Label::Tlj(n)) = (a, b) else {
            unreachable!("labels checked by the ring")
        };
        Ok((m.abs_diff(*n)..=m + n).map(|k| (Label::Tlj(k), 1)).collect())
    }

    fn dimension(&self, a: &Label) -> Dimension {
        let Label::Tlj(n) = a else { unreachable!() };
        match &self.exact {
            Some(t) => Dimension::exact(chebyshev_v(*n as usize, t)),
            None => Dimension::approx(chebyshev_v(*n as usize, &self.lambda_inv)),
        }
    }

    fn level(&self, a: &Label) -> usize {
        match a {
            Label::Tlj(n) => *n as usize,
            _ => 0,
        }
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        (0..=level as u32).map(Label::Tlj).collect()
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        parse_tlj_label(text)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// TLJ ring of index `λ⁻¹ ≥ 4` (principal graph `A_∞`). The dimensions are exact
/// rationals equal to the binary value of `lambda_inv`.
pub fn build_tlj_ainf(lambda_inv: f64) -> Result<FusionRing> {
    if !lambda_inv.is_finite() || lambda_inv < 4.0 {
        return Err(FusionError::Parameter(format!(
            "TLJ A_∞ needs λ⁻¹ ≥ 4, got {lambda_inv}; use build_tlj_finite for indices 4cos²(π/m)"
        )));
    }
    Ok(FusionRing::new(TljInfinite {
        lambda_inv,
        exact: <BigRational as Scalar>::from_f64(lambda_inv),
    }))
}

/// TLJ ring with an exact rational index.
pub fn build_tlj_ainf_exact(lambda_inv: BigRational) -> Result<FusionRing> {
    let value = RealScalar::to_f64(&lambda_inv);
    if lambda_inv < <BigRational as Scalar>::from_int(4) {
        return Err(FusionError::Parameter(format!(
            "TLJ A_∞ needs λ⁻¹ ≥ 4, got {lambda_inv}; use build_tlj_finite for indices 4cos²(π/m)"
        )));
    }
    Ok(FusionRing::new(TljInfinite {
        lambda_inv: value,
        exact: Some(lambda_inv),
    }))
}

/// Finite-depth TLJ ring with principal graph `A_{m-1}` and index `4cos²(π/m)`,
/// using the level `m-2` truncation of the `SU(2)` rule restricted to even spins.
#[derive(Debug, Clone)]
pub struct TljFinite {
    m: u32,
    top: u32,
    exact_index: Option<i64>,
}

impl TljFinite {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn index(&self) -> f64 {
        let c = (std::f64::consts::PI / self.m as f64).cos();
        4.0 * c * c
    }

    /// Largest label index `p = ⌊(m-2)/2⌋`.
    pub fn top(&self) -> u32 {
        self.top
    }
}

impl FusionRule for TljFinite {
    fn name(&self) -> String {
        format!("TLJ(A_{})", self.m - 1)
    }

    fn family(&self) -> Family {
        Family::TljFinite { m: self.m }
    }

    fn unit(&self) -> Label {
        Label::Tlj(0)
    }

    fn contains(&self, a: &Label) -> bool {
        matches!(a, Label::Tlj(j) if *j <= self.top)
    }

    fn conjugate(&self, a: &Label) -> Label {
        a.clone()
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let (Label::Tlj(x), Label::Tlj(y)) = (a, b) else {
            unreachable!("labels checked by the ring")
        };
        let hi = (x + y).min((self.m - 2) - x - y);
        Ok((x.abs_diff(*y)..=hi).map(|k| (Label::Tlj(k), 1)).collect())
    }

    fn dimension(&self, a: &Label) -> Dimension {
        let Label::Tlj(j) = a else { unreachable!() };
        match self.exact_index {
            Some(index) => Dimension::exact(chebyshev_v(
                *j as usize,
                &<BigRational as Scalar>::from_int(index),
            )),
            None => {
                let base = std::f64::consts::PI / self.m as f64;
                Dimension::approx(((2 * j + 1) as f64 * base).sin() / base.sin())
            }
        }
    }

    fn level(&self, a: &Label) -> usize {
        match a {
            Label::Tlj(n) => *n as usize,
            _ => 0,
        }
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        (0..=self.top.min(level as u32)).map(Label::Tlj).collect()
    }

    fn label_count(&self) -> Option<usize> {
        Some(self.top as usize + 1)
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        parse_tlj_label(text)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn build_tlj_finite(m: u32) -> Result<FusionRing> {
    if m < 3 {
        return Err(FusionError::Parameter(format!("finite TLJ needs m ≥ 3, got {m}")));
    }
    // 4cos²(π/m) is rational only for m = 3, 4, 6.
    let exact_index = match m {
        3 => Some(1),
        4 => Some(2),
        6 => Some(3),
        _ => None,
    };
    Ok(FusionRing::new(TljFinite {
        m,
        top: (m - 2) / 2,
        exact_index,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(ring: &FusionRing, a: u32, b: u32) -> Vec<(Label, u64)> {
        ring.fuse(&Label::Tlj(a), &Label::Tlj(b)).unwrap().terms().to_vec()
    }

    #[test]
    fn ainf_fusion_and_dimensions() {
        let ring = build_tlj_ainf(5.0).unwrap();
        assert_eq!(
            outcome(&ring, 1, 1),
            vec![(Label::Tlj(0), 1), (Label::Tlj(1), 1), (Label::Tlj(2), 1)]
        );
        let h23: Vec<u32> = outcome(&ring, 2, 3)
            .into_iter()
            .map(|(l, m)| {
                assert_eq!(m, 1);
                match l {
                    Label::Tlj(k) => k,
                    _ => unreachable!(),
                }
            })
            .collect();
        assert_eq!(h23, vec![1, 2, 3, 4, 5]);
        // 11 · 29 = 4 + 11 + 29 + 76 + 199
        let dims: Vec<f64> = (0..=5).map(|n| ring.dim(&Label::Tlj(n)).unwrap().value()).collect();
        assert_eq!(dims, vec![1.0, 4.0, 11.0, 29.0, 76.0, 199.0]);
        assert_eq!(outcome(&ring, 0, 7), vec![(Label::Tlj(7), 1)]);
    }

    #[test]
    fn index_four_dimensions_are_odd() {
        let ring = build_tlj_ainf(4.0).unwrap();
        for n in 0..10u32 {
            let d = ring.dim(&Label::Tlj(n)).unwrap();
            assert_eq!(d.as_exact().unwrap(), &<BigRational as Scalar>::from_int(2 * n as i64 + 1));
        }
    }

    #[test]
    fn rejects_small_index() {
        assert!(matches!(build_tlj_ainf(3.0), Err(FusionError::Parameter(_))));
        assert!(matches!(build_tlj_finite(2), Err(FusionError::Parameter(_))));
    }

    #[test]
    fn finite_depth_rules() {
        let six = build_tlj_finite(6).unwrap();
        assert_eq!(
            outcome(&six, 1, 1),
            vec![(Label::Tlj(0), 1), (Label::Tlj(1), 1), (Label::Tlj(2), 1)]
        );
        let dims: Vec<f64> = (0..=2).map(|j| six.dim(&Label::Tlj(j)).unwrap().value()).collect();
        assert_eq!(dims, vec![1.0, 2.0, 1.0]);
        assert!(!six.contains(&Label::Tlj(3)));

        let four = build_tlj_finite(4).unwrap();
        assert_eq!(outcome(&four, 1, 1), vec![(Label::Tlj(0), 1)]);
        assert_eq!(outcome(&four, 0, 1), vec![(Label::Tlj(1), 1)]);

        let seven = build_tlj_finite(7).unwrap();
        let d1 = seven.dim(&Label::Tlj(1)).unwrap();
        assert!(!d1.is_exact());
        let c = (std::f64::consts::PI / 7.0).cos();
        assert!((d1.value() - (4.0 * c * c - 1.0)).abs() < 1e-12);
    }
}
