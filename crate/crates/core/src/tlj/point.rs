use crate::builders::tlj::TljInfinite;
use crate::error::{FusionError, Result};
use crate::fusion::{FusionRing, Label};
use crate::multiplier::Multiplier;
use crate::scalar::{RealScalar, Scalar};
use crate::tlj::chebyshev::chebyshev_v;

/// Relative tolerance on `Σ w_i = 1` for inexact scalar types.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

pub(crate) fn tlj_rule(ring: &FusionRing) -> Result<&TljInfinite> {
    ring.downcast::<TljInfinite>()
        .ok_or_else(|| FusionError::Parameter(format!("{} is not a TLJ A_∞ ring", ring.name())))
}

/// `λ⁻¹` of a TLJ ring in the scalar type `S` (exact when the ring's index is).
pub fn lambda_inv_of<S: Scalar>(ring: &FusionRing) -> Result<S> {
    let rule = tlj_rule(ring)?;
    match rule.lambda_inv_exact() {
        Some(r) => Ok(S::from_rational(r)),
        None => S::from_f64(rule.lambda_inv())
            .ok_or_else(|| FusionError::Parameter("λ⁻¹ not representable".into())),
    }
}

pub(crate) fn tlj_index(label: &Label) -> Result<usize> {
    match label {
        Label::Tlj(n) => Ok(*n as usize),
        other => Err(FusionError::UnknownLabel {
            ring: "TLJ".into(),
            label: other.to_string(),
        }),
    }
}

/// `φ_t(H_n) = V_n(t) / V_n(λ⁻¹)`, the coefficient of evaluation at `t`.
/// Complete positivity is claimed only for `t ∈ [0, λ⁻¹]`.
pub fn phi_point<S: RealScalar>(ring: &FusionRing, t: S) -> Result<Multiplier<S>> {
    let lambda_inv: S = lambda_inv_of(ring)?;
    let cp = t >= S::zero() && t <= lambda_inv;
    let description = format!("point(t={})", t.to_f64());
    Ok(Multiplier::new(ring, description, cp, move |l| {
        let n = tlj_index(l)?;
        Ok(chebyshev_v(n, &t) / chebyshev_v(n, &lambda_inv))
    }))
}

/// `φ = Σ w_i φ_{t_i}` for a probability measure with atoms `t_i ∈ [0, λ⁻¹]`.
pub fn multiplier_from_measure<S: RealScalar>(ring: &FusionRing, atoms: &[(S, S)]) -> Result<Multiplier<S>> {
    let lambda_inv: S = lambda_inv_of(ring)?;
    if atoms.is_empty() {
        return Err(FusionError::Parameter("measure needs at least one atom".into()));
    }
    let mut total = S::zero();
    for (t, w) in atoms {
        if *t < S::zero() || *t > lambda_inv {
            return Err(FusionError::Parameter(format!(
                "atom t={} outside [0, {}]",
                t.to_f64(),
                lambda_inv.to_f64()
            )));
        }
        if *w <= S::zero() {
            return Err(FusionError::Parameter(format!("weight {} must be positive", w.to_f64())));
        }
        total = total + w.clone();
    }
    let sum_ok = if S::EXACT {
        total == S::one()
    } else {
        (total.to_f64() - 1.0).abs() <= WEIGHT_SUM_TOL
    };
    if !sum_ok {
        return Err(FusionError::Parameter(format!("weights sum to {}, not 1", total.to_f64())));
    }
    let atoms = atoms.to_vec();
    Ok(Multiplier::new(ring, format!("measure({} atoms)", atoms.len()), true, move |l| {
        let n = tlj_index(l)?;
        let d = chebyshev_v(n, &lambda_inv);
        let mut value = S::zero();
        for (t, w) in &atoms {
            value = value + w.clone() * chebyshev_v(n, t);
        }
        Ok(value / d)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::tlj::build_tlj_ainf;
    use crate::scalar::ratio;
    use num::rational::BigRational;

    #[test]
    fn point_values() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let trivial = phi_point(&ring, 5.0).unwrap();
        for n in 0..10 {
            assert_eq!(trivial.eval(&Label::Tlj(n)).unwrap(), 1.0);
        }
        let phi = phi_point(&ring, ratio(2, 1)).unwrap();
        assert_eq!(phi.eval(&Label::Tlj(1)).unwrap(), ratio(1, 4));
        assert!(phi.claimed_cp());
        assert!(!phi_point(&ring, 5.5).unwrap().claimed_cp());
    }

    #[test]
    fn point_multiplier_decays_inside_interval() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let phi = phi_point(&ring, 4.5f64).unwrap();
        let far = phi.eval(&Label::Tlj(200)).unwrap().abs();
        assert!(far < 1e-6, "φ_4.5(H_200) = {far}");
        let phi = phi_point(&ring, 2.0f64).unwrap();
        assert!(phi.eval(&Label::Tlj(60)).unwrap().abs() < 1e-20);
    }

    #[test]
    fn two_atom_measure() {
        let ring = build_tlj_ainf(5.0).unwrap();
        let half = ratio(1, 2);
        let phi: Multiplier<BigRational> =
            multiplier_from_measure(&ring, &[(ratio(0, 1), half.clone()), (ratio(5, 1), half)]).unwrap();
        assert_eq!(phi.eval(&Label::Tlj(1)).unwrap(), ratio(3, 8));
        assert!(multiplier_from_measure(&ring, &[(6.0, 1.0)]).is_err());
        assert!(multiplier_from_measure(&ring, &[(1.0, 0.5)]).is_err());
        assert!(multiplier_from_measure(&ring, &[(1.0, -1.0), (2.0, 2.0)]).is_err());
    }
}
