use serde::{Deserialize, Serialize};

use crate::error::{FusionError, Result};
use crate::scalar::RealScalar;

/// Result of scanning `|V_n(t)| ≤ V_n(λ⁻¹)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum L1Range {
    Ok { n_max: usize },
    Violation { n: usize, value: f64, bound: f64 },
}

impl L1Range {
    pub fn is_ok(&self) -> bool {
        matches!(self, L1Range::Ok { .. })
    }

    pub fn first_violation(&self) -> Option<usize> {
        match self {
            L1Range::Violation { n, .. } => Some(*n),
            L1Range::Ok { .. } => None,
        }
    }
}

/// Runs both recurrences side by side and reports the first index where
/// `|V_n(t)|` exceeds `V_n(λ⁻¹)`. Exact for rational scalars.
pub fn l1_range_check<S: RealScalar>(lambda_inv: &S, t: &S, n_max: usize) -> Result<L1Range> {
    if n_max < 1 {
        return Err(FusionError::Parameter("n_max must be at least 1".into()));
    }
    let two = S::from_int(2);
    let (mut v_prev, mut v) = (S::one(), t.clone() - S::one());
    let (mut d_prev, mut d) = (S::one(), lambda_inv.clone() - S::one());
    for n in 1..=n_max {
        if v.magnitude() > d {
            return Ok(L1Range::Violation {
                n,
                value: v.to_f64(),
                bound: d.to_f64(),
            });
        }
        let v_next = (t.clone() - two.clone()) * v.clone() - v_prev;
        let d_next = (lambda_inv.clone() - two.clone()) * d.clone() - d_prev;
        v_prev = std::mem::replace(&mut v, v_next);
        d_prev = std::mem::replace(&mut d, d_next);
    }
    Ok(L1Range::Ok { n_max })
}
