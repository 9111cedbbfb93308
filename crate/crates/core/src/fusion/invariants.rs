//! Structural checks every fusion ring must pass: unit law, conjugation,
//! Frobenius reciprocity, associativity and the dimension homomorphism.
//!
//! Each check returns a validation error whose witness names the offending labels.

use std::collections::HashMap;

use num::rational::BigRational;
use num::Zero;

use crate::error::{FusionError, Result};
use crate::fusion::label::Label;
use crate::fusion::ring::FusionRing;

/// Relative tolerance for the dimension homomorphism when dimensions are inexact.
pub const DIMENSION_REL_TOL: f64 = 1e-9;

/// Counts of what a validation pass looked at.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub labels: usize,
    pub pairs: usize,
    pub triples: usize,
}

/// Runs every pairwise check on labels up to `pair_level` and exhaustive
/// associativity on labels up to `triple_level`.
pub fn validate_ring(ring: &FusionRing, pair_level: usize, triple_level: usize) -> Result<InvariantReport> {
    let labels = ring.labels_up_to_level(pair_level);
    check_unit_and_conjugation(ring, &labels)?;
    check_frobenius(ring, &labels)?;
    check_dimension_homomorphism(ring, &labels)?;
    let small = ring.labels_up_to_level(triple_level);
    let mut triples = 0;
    for a in &small {
        for b in &small {
            for c in &small {
                check_associativity(ring, a, b, c)?;
                triples += 1;
            }
        }
    }
    Ok(InvariantReport {
        labels: labels.len(),
        pairs: labels.len() * labels.len(),
        triples,
    })
}

/// `ε ⊗ a = a ⊗ ε = a`, `mult(ε, a ⊗ b) = [b = ā]`, `ā̄ = a`, `d(ā) = d(a) ≥ 1`, `d(ε) = 1`.
pub fn check_unit_and_conjugation(ring: &FusionRing, labels: &[Label]) -> Result<()> {
    let unit = ring.unit();
    let d_unit = ring.dim(&unit)?;
    if d_unit.value() != 1.0 {
        return Err(FusionError::validation("d(ε) must be 1", format!("d(ε) = {}", d_unit.value())));
    }
    for a in labels {
        let expected = [(a.clone(), 1u64)];
        if ring.fuse(&unit, a)?.terms() != expected || ring.fuse(a, &unit)?.terms() != expected {
            return Err(FusionError::validation("unit law violated", a.to_string()));
        }
        let abar = ring.conjugate(a)?;
        if ring.conjugate(&abar)? != *a {
            return Err(FusionError::validation("conjugation is not involutive", a.to_string()));
        }
        let (da, dabar) = (ring.dim(a)?, ring.dim(&abar)?);
        let equal = match (da.as_exact(), dabar.as_exact()) {
            (Some(x), Some(y)) => x == y,
            _ => (da.value() - dabar.value()).abs() <= DIMENSION_REL_TOL * da.value(),
        };
        if !equal || da.value() < 1.0 - DIMENSION_REL_TOL {
            return Err(FusionError::validation("d(ā) = d(a) ≥ 1 violated", a.to_string()));
        }
        for b in labels {
            let m = ring.mult(&unit, a, b)?;
            let expected = u64::from(*b == abar);
            if m != expected {
                return Err(FusionError::validation(
                    "mult(ε, a⊗b) must equal [b = ā]",
                    format!("a={a}, b={b}, mult={m}"),
                ));
            }
        }
    }
    Ok(())
}

/// `mult(γ, a⊗b) = mult(a, γ⊗b̄) = mult(b, ā⊗γ)` for all `γ` in `a ⊗ b` and
/// all `a` reachable from `γ ⊗ b̄`.
pub fn check_frobenius(ring: &FusionRing, labels: &[Label]) -> Result<()> {
    for a in labels {
        let abar = ring.conjugate(a)?;
        for b in labels {
            let bbar = ring.conjugate(b)?;
            for (gamma, m) in ring.fuse(a, b)?.iter() {
                let left = ring.mult(a, gamma, &bbar)?;
                let right = ring.mult(b, &abar, gamma)?;
                if left != m || right != m {
                    return Err(FusionError::validation(
                        "Frobenius reciprocity violated",
                        format!("a={a}, b={b}, γ={gamma}: {m} vs {left} vs {right}"),
                    ));
                }
            }
            // Reverse direction: every a' in γ ⊗ b̄ with γ = a must see a' ⊗ b ∋ a.
            for (a2, m) in ring.fuse(a, &bbar)?.iter() {
                if ring.mult(a, a2, b)? != m {
                    return Err(FusionError::validation(
                        "Frobenius reciprocity violated",
                        format!("γ={a}, b={b}, a={a2}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `Σ_γ mult(γ, a⊗b) d(γ) = d(a) d(b)`, exactly when all dimensions are rational.
pub fn check_dimension_homomorphism(ring: &FusionRing, labels: &[Label]) -> Result<()> {
    for a in labels {
        let da = ring.dim(a)?;
        for b in labels {
            let db = ring.dim(b)?;
            let outcome = ring.fuse(a, b)?;
            let mut exact_sum = Some(BigRational::zero());
            let mut float_sum = 0.0;
            for (gamma, m) in outcome.iter() {
                let dg = ring.dim(gamma)?;
                float_sum += m as f64 * dg.value();
                exact_sum = match (exact_sum, dg.as_exact()) {
                    (Some(s), Some(x)) => Some(s + x * BigRational::from_integer(m.into())),
                    _ => None,
                };
            }
            let product = da.times(&db);
            let ok = match (exact_sum, product.as_exact()) {
                (Some(s), Some(p)) => s == *p,
                _ => (float_sum - product.value()).abs() <= DIMENSION_REL_TOL * product.value(),
            };
            if !ok {
                return Err(FusionError::validation(
                    "dimension homomorphism violated",
                    format!("a={a}, b={b}: Σ = {float_sum}, d(a)d(b) = {}", product.value()),
                ));
            }
        }
    }
    Ok(())
}

fn fuse_distribution(ring: &FusionRing, left: &HashMap<Label, u64>, right: &Label) -> Result<HashMap<Label, u64>> {
    let mut out = HashMap::new();
    for (l, m) in left {
        for (g, k) in ring.fuse(l, right)?.iter() {
            *out.entry(g.clone()).or_insert(0) += m * k;
        }
    }
    Ok(out)
}

/// `(a⊗b)⊗c = a⊗(b⊗c)` as multisets of irreducibles.
pub fn check_associativity(ring: &FusionRing, a: &Label, b: &Label, c: &Label) -> Result<()> {
    let ab: HashMap<Label, u64> = ring.fuse(a, b)?.iter().map(|(l, m)| (l.clone(), m)).collect();
    let left = fuse_distribution(ring, &ab, c)?;
    let mut right: HashMap<Label, u64> = HashMap::new();
    for (bc, m) in ring.fuse(b, c)?.iter() {
        for (g, k) in ring.fuse(a, bc)?.iter() {
            *right.entry(g.clone()).or_insert(0) += m * k;
        }
    }
    if left != right {
        return Err(FusionError::validation(
            "fusion is not associative",
            format!("a={a}, b={b}, c={c}"),
        ));
    }
    Ok(())
}
