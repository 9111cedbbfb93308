use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{FusionError, Result};
use crate::multiplier::Multiplier;
use crate::scalar::RealScalar;
use crate::tlj::moments::{moments, MomentSequence};

/// Default relative PSD tolerance.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HankelMatrix {
    /// `H⁰ = [m_{i+j}]`
    Moment,
    /// `H¹ = [m_{i+j+1}]`
    Shifted,
    /// `H² = λ⁻¹H⁰ − H¹`
    Localizing,
}

impl fmt::Display for HankelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HankelMatrix::Moment => "H0",
            HankelMatrix::Shifted => "H1",
            HankelMatrix::Localizing => "H2",
        })
    }
}

/// The three Hankel matrices of a moment sequence at a given level.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelTriple<S> {
    pub level: usize,
    pub moment: Vec<Vec<S>>,
    pub shifted: Vec<Vec<S>>,
    pub localizing: Vec<Vec<S>>,
}

impl<S: RealScalar> HankelTriple<S> {
    /// Needs `m_0, ..., m_{2 level + 1}`.
    pub fn new(moments: &[S], lambda_inv: &S, level: usize) -> Result<Self> {
        if moments.len() < 2 * level + 2 {
            return Err(FusionError::Parameter(format!(
                "level {level} needs {} moments, got {}",
                2 * level + 2,
                moments.len()
            )));
        }
        let size = level + 1;
        let build = |shift: usize| -> Vec<Vec<S>> {
            (0..size)
                .map(|i| (0..size).map(|j| moments[i + j + shift].clone()).collect())
                .collect()
        };
        let moment = build(0);
        let shifted = build(1);
        let localizing = moment
            .iter()
            .zip(&shifted)
            .map(|(r0, r1)| {
                r0.iter()
                    .zip(r1)
                    .map(|(a, b)| lambda_inv.clone() * a.clone() - b.clone())
                    .collect()
            })
            .collect();
        Ok(HankelTriple {
            level,
            moment,
            shifted,
            localizing,
        })
    }

    pub fn matrix(&self, which: HankelMatrix) -> &[Vec<S>] {
        match which {
            HankelMatrix::Moment => &self.moment,
            HankelMatrix::Shifted => &self.shifted,
            HankelMatrix::Localizing => &self.localizing,
        }
    }
}

/// A violated PSD condition: the most negative eigenpair of one matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectionWitness {
    pub matrix: HankelMatrix,
    pub level: usize,
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
}

/// Outcome of the truncated moment test.
///
/// `Admissible(N)` certifies the PSD conditions up to level `N` only; it is
/// not a proof of admissibility. `Rejected` is conclusive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AdmissibilityVerdict {
    Admissible { level: usize },
    Rejected(RejectionWitness),
    Inconclusive { level: usize, min_eigenvalue: f64 },
}

impl AdmissibilityVerdict {
    pub fn is_rejected(&self) -> bool {
        matches!(self, AdmissibilityVerdict::Rejected(_))
    }

    pub fn is_admissible(&self) -> bool {
        matches!(self, AdmissibilityVerdict::Admissible { .. })
    }
}

fn to_dmatrix<S: RealScalar>(m: &[Vec<S>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_f64())
}

/// Smallest eigenvalue and a sign-normalized eigenvector.
pub(crate) fn min_eigenpair(m: DMatrix<f64>) -> (f64, Vec<f64>) {
    let eig = SymmetricEigen::new(m);
    let (idx, value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let mut vector: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
    let pivot = vector
        .iter()
        .copied()
        .fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best });
    if pivot < 0.0 {
        for x in &mut vector {
            *x = -*x;
        }
    }
    (value, vector)
}

/// Exact positive-semidefiniteness via symmetric `LDLᵀ` with diagonal pivoting.
pub fn is_psd_exact<S: RealScalar>(matrix: &[Vec<S>]) -> bool {
    let mut a: Vec<Vec<S>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..a.len()).collect();
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| a[*x.1][*x.1].partial_cmp(&a[*y.1][*y.1]).expect("ordered scalars"))
            .expect("non-empty");
        let pivot = a[p][p].clone();
        if pivot < S::zero() {
            return false;
        }
        if pivot == S::zero() {
            // every remaining diagonal entry is zero, so the block must vanish
            return active.iter().all(|&i| active.iter().all(|&j| a[i][j] == S::zero()));
        }
        active.remove(pos);
        for &i in &active {
            let factor = a[i][p].clone() / pivot.clone();
            if factor == S::zero() {
                continue;
            }
            for &j in &active {
                let update = factor.clone() * a[p][j].clone();
                a[i][j] = a[i][j].clone() - update;
            }
        }
    }
    true
}

/// Absolute rounding-error bound for each moment, from its cancellation scale.
fn moment_errors<S: RealScalar>(seq: &MomentSequence<S>, scale: f64) -> Vec<f64> {
    if S::EXACT {
        return vec![0.0; seq.values.len()];
    }
    seq.magnitudes
        .iter()
        .enumerate()
        .map(|(k, mag)| 8.0 * ((k + 2) * (k + 2)) as f64 * f64::EPSILON * mag / scale)
        .collect()
}

fn float_error_bound(errors: &[f64], lambda_inv: f64, level: usize, which: HankelMatrix, norm: f64) -> f64 {
    let size = level + 1;
    let mut sum = 0.0;
    for i in 0..size {
        for j in 0..size {
            let e = match which {
                HankelMatrix::Moment => errors[i + j],
                HankelMatrix::Shifted => errors[i + j + 1],
                HankelMatrix::Localizing => lambda_inv.abs() * errors[i + j] + errors[i + j + 1],
            };
            sum += e * e;
        }
    }
    sum.sqrt() + 4.0 * size as f64 * f64::EPSILON * norm
}

/// Checks the three PSD conditions at every level `0..=level` and stops at the
/// first conclusive violation. Moments are normalized to `m_0 = 1`.
pub fn admissibility_from_moments<S: RealScalar>(
    seq: &MomentSequence<S>,
    level: usize,
    tol: f64,
) -> Result<AdmissibilityVerdict> {
    if seq.values.len() < 2 * level + 2 {
        return Err(FusionError::Parameter(format!(
            "level {level} needs {} moments, got {}",
            2 * level + 2,
            seq.values.len()
        )));
    }
    if let Some(bad) = seq.values.iter().find(|m| !m.to_f64().is_finite()) {
        return Err(FusionError::Numeric {
            message: "non-finite moment".into(),
            achieved: bad.to_f64(),
        });
    }
    let m0 = seq.values[0].clone();
    if m0 < S::zero() {
        return Ok(AdmissibilityVerdict::Rejected(RejectionWitness {
            matrix: HankelMatrix::Moment,
            level: 0,
            eigenvalue: m0.to_f64(),
            eigenvector: vec![1.0],
        }));
    }
    if m0 == S::zero() {
        return Err(FusionError::Parameter("m_0 = 0 cannot be normalized".into()));
    }
    let normalized: Vec<S> = seq.values.iter().map(|m| m.clone() / m0.clone()).collect();
    let errors = moment_errors(seq, m0.to_f64().abs());
    let lambda_inv = seq.lambda_inv.to_f64();

    // Lower levels are leading principal blocks of the top level, so an exact
    // PSD certificate there covers them; otherwise scan up for the first failure.
    if S::EXACT {
        let top = HankelTriple::new(&normalized, &seq.lambda_inv, level)?;
        let all_psd = [HankelMatrix::Moment, HankelMatrix::Shifted, HankelMatrix::Localizing]
            .into_iter()
            .all(|which| is_psd_exact(top.matrix(which)));
        if all_psd {
            return Ok(AdmissibilityVerdict::Admissible { level });
        }
    }

    let mut inconclusive: Option<(usize, f64)> = None;
    for current in 0..=level {
        let triple = HankelTriple::new(&normalized, &seq.lambda_inv, current)?;
        for which in [HankelMatrix::Moment, HankelMatrix::Shifted, HankelMatrix::Localizing] {
            let matrix = triple.matrix(which);
            if S::EXACT {
                if !is_psd_exact(matrix) {
                    let (eigenvalue, eigenvector) = min_eigenpair(to_dmatrix(matrix));
                    return Ok(AdmissibilityVerdict::Rejected(RejectionWitness {
                        matrix: which,
                        level: current,
                        eigenvalue,
                        eigenvector,
                    }));
                }
                continue;
            }
            let dense = to_dmatrix(matrix);
            let trace = dense.trace();
            let norm = dense.norm();
            let tol_abs = tol * f64::max(1.0, trace.abs() / (current + 1) as f64);
            let (eigenvalue, eigenvector) = min_eigenpair(dense);
            if eigenvalue >= -tol_abs {
                continue;
            }
            let slack = float_error_bound(&errors, lambda_inv, current, which, norm);
            if eigenvalue < -(tol_abs + slack) {
                return Ok(AdmissibilityVerdict::Rejected(RejectionWitness {
                    matrix: which,
                    level: current,
                    eigenvalue,
                    eigenvector,
                }));
            }
            if inconclusive.is_none() {
                inconclusive = Some((current, eigenvalue));
            }
        }
    }
    Ok(match inconclusive {
        Some((level, min_eigenvalue)) => AdmissibilityVerdict::Inconclusive { level, min_eigenvalue },
        None => AdmissibilityVerdict::Admissible { level },
    })
}

/// Admissibility test for a multiplier on a TLJ `A_∞` ring.
pub fn admissibility<S: RealScalar>(phi: &Multiplier<S>, level: usize, tol: f64) -> Result<AdmissibilityVerdict> {
    let seq = moments(phi, 2 * level + 1)?;
    admissibility_from_moments(&seq, level, tol)
}
