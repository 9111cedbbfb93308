//! Compressions of the regular representation `Θ₀(x) δ_β = Σ_α x_α Σ_γ mult(γ, α⊗β) δ_γ`
//! to the first `N` canonical labels, operator-norm lower bounds, and the
//! amenability comparison `‖Θ₀(x)‖` against `d(x)`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::builders::tlj::TljInfinite;
use crate::error::{FusionError, Result};
use crate::fusion::{FusionElement, FusionRing, Label};
use crate::scalar::Scalar;
use crate::tlj::norms::reduced_norm;

/// Default relative tolerance for power iteration.
pub const DEFAULT_POWER_TOL: f64 = 1e-12;
/// Default relative tolerance for the amenability comparison.
pub const DEFAULT_AMENABILITY_TOL: f64 = 1e-3;
/// Relative residual accepted for a Perron eigenvector certificate.
pub const PERRON_TOL: f64 = 1e-12;

/// `Θ₀(x)` compressed to the span of the first `N` labels, stored by columns.
#[derive(Clone, Debug)]
pub struct TruncatedRegularRep<S: Scalar> {
    element: FusionElement<S>,
    basis: Vec<Label>,
    columns: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> TruncatedRegularRep<S> {
    pub fn ring(&self) -> &FusionRing {
        self.element.ring()
    }

    pub fn element(&self) -> &FusionElement<S> {
        &self.element
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    /// Non-zero entries `(row, value)` of column `j`, rows ascending.
    pub fn column(&self, j: usize) -> &[(usize, S)] {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn dense(&self) -> Vec<Vec<S>> {
        let n = self.size();
        let mut out = vec![vec![S::zero(); n]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|j| self.columns[j].iter().all(|(i, v)| self.entry(j, *i) == *v))
    }

    fn to_complex(&self) -> Vec<Vec<(usize, Complex64)>> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|(i, v)| (*i, v.to_c64())).collect())
            .collect()
    }
}

/// Assembles the compression of `Θ₀(x)` to the first `n` canonical labels
/// (all labels when the ring is smaller).
pub fn truncated_matrix<S: Scalar>(x: &FusionElement<S>, n: usize) -> Result<TruncatedRegularRep<S>> {
    if n == 0 {
        return Err(FusionError::Parameter("truncation size must be at least 1".into()));
    }
    let ring = x.ring();
    let basis = ring.first_labels(n);
    let index: HashMap<&Label, usize> = basis.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let terms: Vec<(&Label, &S)> = x.sorted_terms();
    let mut columns = Vec::with_capacity(basis.len());
    for beta in &basis {
        let mut col: Vec<(usize, S)> = Vec::new();
        for (alpha, coeff) in &terms {
            for (gamma, m) in ring.fuse(alpha, beta)?.iter() {
                let Some(&row) = index.get(gamma) else { continue };
                let value = (*coeff).clone() * S::from_int(m as i64);
                match col.iter_mut().find(|(r, _)| *r == row) {
                    Some(entry) => entry.1 = entry.1.clone() + value,
                    None => col.push((row, value)),
                }
            }
        }
        col.retain(|(_, v)| *v != S::zero());
        col.sort_by_key(|(r, _)| *r);
        columns.push(col);
    }
    Ok(TruncatedRegularRep {
        element: x.clone(),
        basis,
        columns,
    })
}

/// Power-iteration result for one truncation size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationBound {
    pub size: usize,
    /// `‖M v‖` for the final unit vector `v`; a lower bound for `‖M‖`.
    pub estimate: f64,
    /// Running maximum over this and all smaller truncations.
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub truncations: Vec<TruncationBound>,
    pub estimate: f64,
    /// Difference between the last two lower bounds.
    pub gap: f64,
    pub converged: bool,
}

fn apply(columns: &[Vec<(usize, Complex64)>], v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (j, col) in columns.iter().enumerate() {
        for (i, a) in col {
            out[*i] += a * v[j];
        }
    }
    out
}

fn apply_adjoint(columns: &[Vec<(usize, Complex64)>], v: &[Complex64]) -> Vec<Complex64> {
    columns
        .iter()
        .map(|col| col.iter().map(|(i, a)| a.conj() * v[*i]).sum())
        .collect()
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Power iteration on `M^* M` from the all-ones vector.
fn power_iteration(columns: &[Vec<(usize, Complex64)>], max_iterations: usize, tol: f64) -> (f64, usize, bool) {
    let n = columns.len();
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut estimate = 0.0;
    for k in 1..=max_iterations {
        let w = apply(columns, &v);
        let current = norm2(&w);
        let u = apply_adjoint(columns, &w);
        let size = norm2(&u);
        let settled = (current - estimate).abs() <= tol * current;
        estimate = current;
        if size == 0.0 {
            return (0.0, k, true);
        }
        if settled {
            return (estimate, k, true);
        }
        v = u.into_iter().map(|z| z / size).collect();
    }
    (estimate, max_iterations, false)
}

/// Truncation sizes `N/4, N/2, N` (deduplicated, at least 1).
pub fn truncation_sizes(n: usize) -> Vec<usize> {
    let mut sizes = vec![(n / 4).max(1), (n / 2).max(1), n];
    sizes.dedup();
    sizes
}

/// Lower bounds for `‖Θ₀(x)‖` from compressions of increasing size. The
/// iteration cap defaults to `10·size`.
pub fn norm_estimate<S: Scalar>(
    x: &FusionElement<S>,
    n: usize,
    max_iterations: Option<usize>,
    tol: f64,
) -> Result<NormEstimate> {
    if n < 1 {
        return Err(FusionError::Parameter("truncation size must be at least 1".into()));
    }
    let full = truncated_matrix(x, n)?;
    let columns = full.to_complex();
    let mut truncations: Vec<TruncationBound> = Vec::new();
    let sizes = truncation_sizes(full.size());
    for size in sizes {
        let sub: Vec<Vec<(usize, Complex64)>> = columns[..size]
            .iter()
            .map(|col| col.iter().filter(|(i, _)| *i < size).copied().collect())
            .collect();
        let cap = max_iterations.unwrap_or(10 * size).max(1);
        let (estimate, iterations, converged) = power_iteration(&sub, cap, tol);
        let previous = truncations.last().map_or(0.0, |t| t.lower_bound);
        truncations.push(TruncationBound {
            size,
            estimate,
            lower_bound: estimate.max(previous),
            iterations,
            converged,
        });
    }
    let estimate = truncations.last().map_or(0.0, |t| t.lower_bound);
    let gap = match truncations.len() {
        0 | 1 => 0.0,
        k => truncations[k - 1].lower_bound - truncations[k - 2].lower_bound,
    };
    let converged = truncations.iter().all(|t| t.converged);
    Ok(NormEstimate {
        truncations,
        estimate,
        gap,
        converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmenabilityVerdict {
    AmenableWithinTol,
    GapDetected,
    Undetermined,
}

/// Where the exact norm, if any, came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSource {
    /// Sup of the associated polynomial over `[0, 4]` (TLJ `A_∞`).
    PolynomialSup,
    /// Eigensolve of the full matrix of a finite ring.
    FiniteEigensolve,
    /// Truncation lower bounds only.
    Truncation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmenabilityReport {
    pub estimate: NormEstimate,
    /// `d(x) = Σ x_α d(α)`, the norm of `x` in the trivial representation.
    pub dimension: f64,
    pub exact_norm: Option<f64>,
    pub source: NormSource,
    /// Residual of `Θ₀(x) d = d(x) d` for finite rings.
    pub perron_residual: Option<f64>,
    pub relative_gap: f64,
    pub verdict: AmenabilityVerdict,
}

fn real_coefficients<S: Scalar>(x: &FusionElement<S>) -> Option<FusionElement<f64>> {
    if x.terms().any(|(_, c)| c.to_c64().im != 0.0) {
        return None;
    }
    Some(x.map(|c| c.to_c64().re))
}

fn finite_exact_norm<S: Scalar>(x: &FusionElement<S>, d: f64) -> Result<(f64, f64)> {
    let ring = x.ring();
    let count = ring.label_count().expect("finite ring");
    let full = truncated_matrix(x, count)?;
    let n = full.size();
    let dense = full.dense();
    let matrix = DMatrix::from_fn(n, n, |i, j| dense[i][j].to_c64());
    let norm = matrix
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max);
    let dims = full
        .basis()
        .iter()
        .map(|l| ring.dim(l).map(|d| Complex64::new(d.value(), 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let dims = nalgebra::DVector::from_vec(dims);
    let residual = (&matrix * &dims - dims.scale(d)).norm() / (dims.norm() * d.abs().max(1.0));
    Ok((norm, residual))
}

/// Compares `‖Θ₀(x)‖` with `d(x)`. A gap is reported only when the norm is
/// known exactly: TLJ `A_∞` rings through the polynomial picture, finite rings
/// through a full eigensolve. Otherwise truncation can only confirm equality
/// within `tol`.
pub fn amenability_report<S: Scalar>(x: &FusionElement<S>, n: usize, tol: f64) -> Result<AmenabilityReport> {
    let ring = x.ring();
    let estimate = norm_estimate(x, n, None, DEFAULT_POWER_TOL)?;
    let mut dimension = Complex64::new(0.0, 0.0);
    for (label, c) in x.terms() {
        dimension += c.to_c64() * ring.dim(label)?.value();
    }
    let dimension = dimension.norm();

    let mut exact_norm = None;
    let mut perron_residual = None;
    let mut source = NormSource::Truncation;
    if ring.downcast::<TljInfinite>().is_some() {
        if let Some(real) = real_coefficients(x) {
            exact_norm = Some(reduced_norm(&real)?.value);
            source = NormSource::PolynomialSup;
        }
    } else if ring.is_finite() {
        let (norm, residual) = finite_exact_norm(x, dimension)?;
        exact_norm = Some(norm);
        perron_residual = Some(residual);
        source = NormSource::FiniteEigensolve;
    }

    let best = exact_norm.unwrap_or(estimate.estimate);
    let relative_gap = if dimension > 0.0 {
        (dimension - best) / dimension
    } else {
        0.0
    };
    let verdict = if best >= dimension * (1.0 - tol) {
        AmenabilityVerdict::AmenableWithinTol
    } else if exact_norm.is_some() {
        AmenabilityVerdict::GapDetected
    } else {
        AmenabilityVerdict::Undetermined
    };
    Ok(AmenabilityReport {
        estimate,
        dimension,
        exact_norm,
        source,
        perron_residual,
        relative_gap,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::group::{build_group_ring, GroupSpec};
    use crate::builders::tlj::{build_tlj_ainf, build_tlj_finite};

    fn x_element(ring: &FusionRing) -> FusionElement<f64> {
        FusionElement::from_terms(ring, [(Label::Tlj(0), 1.0), (Label::Tlj(1), 1.0)]).unwrap()
    }

    #[test]
    fn small_tlj_matrix() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let m = truncated_matrix(&x_element(&ring), 3).unwrap();
        assert_eq!(m.dense(), vec![vec![1.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]]);
        assert!(m.is_symmetric());
        let unit = FusionElement::<f64>::one(&ring);
        let id = truncated_matrix(&unit, 4).unwrap().dense();
        for (i, row) in id.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn finite_ring_matrix_is_full_when_small() {
        let ring = build_tlj_finite(6).unwrap();
        let h1 = FusionElement::<f64>::basis(&ring, Label::Tlj(1)).unwrap();
        let m = truncated_matrix(&h1, 3).unwrap();
        assert_eq!(m.dense(), vec![vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 0.0]]);
        assert_eq!(truncated_matrix(&h1, 50).unwrap().size(), 3);
    }

    #[test]
    fn three_by_three_norm() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let est = norm_estimate(&x_element(&ring), 3, None, DEFAULT_POWER_TOL).unwrap();
        assert!((est.estimate - 3.246_979_603_717_467).abs() < 1e-3);
        assert_eq!(truncation_sizes(3), vec![1, 3]);
    }

    #[test]
    fn integers_are_amenable() {
        let ring = build_group_ring(&GroupSpec::Integers { rank: 1 }).unwrap();
        let x = FusionElement::from_terms(&ring, [(Label::Int(1), 1.0), (Label::Int(-1), 1.0)]).unwrap();
        let report = amenability_report(&x, 200, DEFAULT_AMENABILITY_TOL).unwrap();
        assert_eq!(report.dimension, 2.0);
        assert_eq!(report.source, NormSource::Truncation);
        assert_eq!(report.verdict, AmenabilityVerdict::AmenableWithinTol);
    }

    #[test]
    fn finite_tlj_perron() {
        let ring = build_tlj_finite(6).unwrap();
        let h1 = FusionElement::<f64>::basis(&ring, Label::Tlj(1)).unwrap();
        let report = amenability_report(&h1, 8, DEFAULT_AMENABILITY_TOL).unwrap();
        assert!((report.exact_norm.unwrap() - 2.0).abs() < 1e-12);
        assert!(report.perron_residual.unwrap() < PERRON_TOL);
        assert_eq!(report.verdict, AmenabilityVerdict::AmenableWithinTol);
    }
}
