//! Functions `φ : Irr(C) → ℂ` and the operations on them: the functional
//! `ω_φ`, the convolution `φ_{x,y}`, pointwise products, restriction and
//! extension by zero across full subrings, free-product multipliers and
//! grade averaging.
//!
//! A multiplier only *claims* complete positivity; the claim is propagated by
//! the constructions known to preserve it and checked where a decision
//! procedure exists (see [`crate::tlj`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::builders::free_product::FreeProduct;
use crate::builders::grading::GradingMap;
use crate::builders::subring::{validate_full_subring, SUBRING_VALIDATION_LEVEL};
use crate::error::{FusionError, Result};
use crate::fusion::{FusionElement, FusionRing, Label};
use crate::scalar::{u64_to_scalar, Scalar};

type EvalFn<S> = Arc<dyn Fn(&Label) -> Result<S> + Send + Sync>;

/// A function on the irreducibles of a ring, evaluated lazily and memoized.
#[derive(Clone)]
pub struct Multiplier<S> {
    ring: FusionRing,
    eval: EvalFn<S>,
    cache: Arc<RwLock<HashMap<Label, S>>>,
    claimed_cp: bool,
    support: Option<Arc<Vec<Label>>>,
    description: String,
}

impl<S: Scalar> fmt::Debug for Multiplier<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multiplier")
            .field("ring", &self.ring.name())
            .field("description", &self.description)
            .field("claimed_cp", &self.claimed_cp)
            .finish()
    }
}

impl<S: Scalar> Multiplier<S> {
    /// Lazily evaluated multiplier. `f` is only called on valid labels.
    pub fn new<F>(ring: &FusionRing, description: impl Into<String>, claimed_cp: bool, f: F) -> Self
    where
        F: Fn(&Label) -> Result<S> + Send + Sync + 'static,
    {
        Multiplier {
            ring: ring.clone(),
            eval: Arc::new(f),
            cache: Arc::new(RwLock::new(HashMap::new())),
            claimed_cp,
            support: None,
            description: description.into(),
        }
    }

    /// Table of values with a default elsewhere; finitely supported when the default is 0.
    pub fn from_table<I>(ring: &FusionRing, values: I, default: S) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, S)>,
    {
        let mut table = HashMap::new();
        for (label, v) in values {
            ring.check(&label)?;
            table.insert(label, v);
        }
        let support = default.is_zero().then(|| {
            let mut s: Vec<Label> = table
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(l, _)| l.clone())
                .collect();
            s.sort_by(|a, b| ring.canonical_cmp(a, b));
            Arc::new(s)
        });
        let mut m = Self::new(ring, "table", false, move |l| {
            Ok(table.get(l).cloned().unwrap_or_else(|| default.clone()))
        });
        m.support = support;
        Ok(m)
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn claimed_cp(&self) -> bool {
        self.claimed_cp
    }

    pub fn with_cp_claim(mut self, claimed_cp: bool) -> Self {
        self.claimed_cp = claimed_cp;
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.support.is_some()
    }

    /// The support, when finite, in canonical order.
    pub fn support(&self) -> Option<&[Label]> {
        self.support.as_deref().map(|v| v.as_slice())
    }

    pub fn eval(&self, a: &Label) -> Result<S> {
        if let Some(v) = self.cache.read().unwrap().get(a) {
            return Ok(v.clone());
        }
        self.ring.check(a)?;
        let v = (self.eval)(a)?;
        self.cache.write().unwrap().insert(a.clone(), v.clone());
        Ok(v)
    }

    /// `c · φ`; keeps the cp claim only for `c = 1`.
    pub fn scale(&self, c: S) -> Self {
        let inner = self.clone();
        let keep = c == S::one() && self.claimed_cp;
        let mut out = Multiplier::new(&self.ring, format!("scaled {}", self.description), keep, move |l| {
            Ok(inner.eval(l)? * c.clone())
        });
        out.support = self.support.clone();
        out
    }

    /// First label among `labels` with `|φ(α)| > φ(ε)·(1 + tol)`, a necessary
    /// condition violated by any cp multiplier.
    pub fn cp_bound_violation(&self, labels: &[Label], tol: f64) -> Result<Option<Label>> {
        let at_unit = self.eval(&self.ring.unit())?.to_c64().norm();
        for l in labels {
            if self.eval(l)?.to_c64().norm() > at_unit * (1.0 + tol) + tol {
                return Ok(Some(l.clone()));
            }
        }
        Ok(None)
    }
}

fn dim_scalar<S: Scalar>(ring: &FusionRing, a: &Label) -> Result<S> {
    let d = ring.dim(a)?;
    S::from_dimension(&d).ok_or_else(|| FusionError::InexactDimension { label: a.to_string() })
}

/// `φ_0 = δ_ε`, the coefficient of the regular representation.
pub fn regular_multiplier<S: Scalar>(ring: &FusionRing) -> Multiplier<S> {
    let unit = ring.unit();
    let mut m = Multiplier::new(ring, "regular", true, move |l| {
        Ok(if *l == unit { S::one() } else { S::zero() })
    });
    m.support = Some(Arc::new(vec![ring.unit()]));
    m
}

/// The constant function 1, the coefficient of the trivial representation.
pub fn trivial_multiplier<S: Scalar>(ring: &FusionRing) -> Multiplier<S> {
    Multiplier::new(ring, "trivial", true, |_| Ok(S::one()))
}

/// `ω_φ(x) = Σ_α x_α d(α) φ(α)`.
pub fn omega<S: Scalar>(phi: &Multiplier<S>, x: &FusionElement<S>) -> Result<S> {
    phi.ring().ensure_same(x.ring())?;
    let mut total = S::zero();
    for (a, c) in x.terms() {
        total = total + c.clone() * dim_scalar::<S>(x.ring(), a)? * phi.eval(a)?;
    }
    Ok(total)
}

/// `φ_{x,y}(ρ) = d(ρ)⁻¹ Σ_{π,η,γ} x_π conj(y_η) φ(γ) d(γ) mult(γ, η̄ ⊗ ρ ⊗ π)`,
/// the unique function with `ω_{φ_{x,y}}(a) = ω_φ(y* a x)`.
pub fn convolve<S: Scalar>(phi: &Multiplier<S>, x: &FusionElement<S>, y: &FusionElement<S>) -> Result<Multiplier<S>> {
    let ring = phi.ring().clone();
    ring.ensure_same(x.ring())?;
    ring.ensure_same(y.ring())?;
    let claimed_cp = phi.claimed_cp() && x == y;
    let xs: Vec<(Label, S)> = x.terms().map(|(l, c)| (l.clone(), c.clone())).collect();
    let ys: Vec<(Label, S)> = y
        .terms()
        .map(|(l, c)| Ok((ring.conjugate(l)?, c.conj())))
        .collect::<Result<_>>()?;
    let inner = phi.clone();
    let r = ring.clone();
    let description = format!("convolve({})", phi.description());
    Ok(Multiplier::new(&ring, description, claimed_cp, move |rho| {
        let mut total = S::zero();
        for (eta_bar, cy) in &ys {
            let left = r.fuse(eta_bar, rho)?;
            for (pi, cx) in &xs {
                let coeff = cx.clone() * cy.clone();
                let mut inner_sum = S::zero();
                for (mid, m1) in left.iter() {
                    for (gamma, m2) in r.fuse(mid, pi)?.iter() {
                        let value = inner.eval(gamma).map_err(|e| FusionError::Evaluation {
                            label: gamma.to_string(),
                            reason: e.to_string(),
                        })?;
                        if value.is_zero() {
                            continue;
                        }
                        inner_sum = inner_sum
                            + value * dim_scalar::<S>(&r, gamma)? * u64_to_scalar::<S>(m1 * m2);
                    }
                }
                total = total + coeff * inner_sum;
            }
        }
        Ok(total / dim_scalar::<S>(&r, rho)?)
    }))
}

/// `(φ_1 φ_2)(α) = φ_1(α) φ_2(α)`.
pub fn pointwise_product<S: Scalar>(phi1: &Multiplier<S>, phi2: &Multiplier<S>) -> Result<Multiplier<S>> {
    phi1.ring().ensure_same(phi2.ring())?;
    let (a, b) = (phi1.clone(), phi2.clone());
    let description = format!("{}·{}", phi1.description(), phi2.description());
    let mut out = Multiplier::new(phi1.ring(), description, phi1.claimed_cp() && phi2.claimed_cp(), move |l| {
        Ok(a.eval(l)? * b.eval(l)?)
    });
    out.support = match (&phi1.support, &phi2.support) {
        (Some(s), Some(t)) => Some(Arc::new(s.iter().filter(|l| t.contains(l)).cloned().collect())),
        (Some(s), None) | (None, Some(s)) => Some(Arc::clone(s)),
        (None, None) => None,
    };
    Ok(out)
}

fn check_full_subring(ring: &FusionRing, subring: &FusionRing) -> Result<()> {
    if !ring.contains(&subring.unit()) || ring.unit() != subring.unit() {
        return Err(FusionError::validation(
            "subring does not share the unit of the ambient ring",
            subring.unit().to_string(),
        ));
    }
    for l in subring.labels_up_to_level(SUBRING_VALIDATION_LEVEL) {
        if !ring.contains(&l) {
            return Err(FusionError::validation("subring label outside the ambient ring", l.to_string()));
        }
    }
    validate_full_subring(ring, |l| subring.contains(l), SUBRING_VALIDATION_LEVEL)
}

/// `ψ(π) = φ_1(π)` on the full subring, `0` outside; preserves complete positivity.
pub fn extend_by_zero<S: Scalar>(ring: &FusionRing, subring: &FusionRing, phi1: &Multiplier<S>) -> Result<Multiplier<S>> {
    subring.ensure_same(phi1.ring())?;
    check_full_subring(ring, subring)?;
    let (sub, inner) = (subring.clone(), phi1.clone());
    let mut out = Multiplier::new(
        ring,
        format!("extend_by_zero({})", phi1.description()),
        phi1.claimed_cp(),
        move |l| {
            if sub.contains(l) {
                inner.eval(l)
            } else {
                Ok(S::zero())
            }
        },
    );
    out.support = phi1.support.clone();
    Ok(out)
}

/// Restriction of `φ` to a full subring; preserves complete positivity.
pub fn restrict<S: Scalar>(ring: &FusionRing, subring: &FusionRing, phi: &Multiplier<S>) -> Result<Multiplier<S>> {
    ring.ensure_same(phi.ring())?;
    check_full_subring(ring, subring)?;
    let inner = phi.clone();
    let mut out = Multiplier::new(subring, format!("restrict({})", phi.description()), phi.claimed_cp(), move |l| {
        inner.eval(l)
    });
    out.support = phi.support.as_ref().map(|s| {
        Arc::new(s.iter().filter(|l| subring.contains(l)).cloned().collect())
    });
    Ok(out)
}

/// `ψ(α_1 ⋯ α_d) = r^d Π_k φ_{i_k}(α_k)` on a free-product ring, `ψ(ε) = 1`.
pub fn free_product_multiplier<S: Scalar>(
    fp_ring: &FusionRing,
    phi1: &Multiplier<S>,
    phi2: &Multiplier<S>,
    r: S,
) -> Result<Multiplier<S>> {
    let fp = fp_ring
        .downcast::<FreeProduct>()
        .ok_or_else(|| FusionError::Parameter(format!("{} is not a free product", fp_ring.name())))?;
    let rc = r.to_c64();
    if rc.im != 0.0 || !(rc.re > 0.0 && rc.re <= 1.0) {
        return Err(FusionError::Parameter(format!("r must lie in (0, 1], got {rc}")));
    }
    let (f1, f2) = fp.factors();
    f1.ensure_same(phi1.ring())?;
    f2.ensure_same(phi2.ring())?;
    for (ring, phi) in [(f1, phi1), (f2, phi2)] {
        let at_unit = phi.eval(&ring.unit())?;
        let ok = if S::EXACT {
            at_unit == S::one()
        } else {
            (at_unit.to_c64() - num::complex::Complex64::new(1.0, 0.0)).norm() <= 1e-12
        };
        if !ok {
            return Err(FusionError::Parameter(format!(
                "factor multiplier {} must be 1 at the unit",
                phi.description()
            )));
        }
    }
    let (p1, p2) = (phi1.clone(), phi2.clone());
    let claimed_cp = phi1.claimed_cp() && phi2.claimed_cp();
    Ok(Multiplier::new(
        fp_ring,
        format!("free_product({}, {})", phi1.description(), phi2.description()),
        claimed_cp,
        move |word| {
            let Label::Word(letters) = word else { unreachable!() };
            let mut value = S::one();
            for letter in letters {
                let phi = if letter.factor == 1 { &p1 } else { &p2 };
                value = value * r.clone() * phi.eval(&letter.label)?;
            }
            Ok(value)
        },
    ))
}

/// `φ_{a,a}` with `a = |Λ|^{-1/2} Σ_s d(α_s)⁻¹ α_s` for a section `s ↦ α_s` of the
/// grading (`α_0 = ε`). Averaging the kernel indicator yields the constant 1.
pub fn grade_average<S: Scalar>(
    ring: &FusionRing,
    grading: &GradingMap,
    reps: &[Label],
    phi: &Multiplier<S>,
) -> Result<Multiplier<S>> {
    ring.ensure_same(grading.ring())?;
    ring.ensure_same(phi.ring())?;
    let n = grading.modulus() as usize;
    if reps.len() != n {
        return Err(FusionError::validation(
            "section must have one representative per grade",
            format!("{} representatives for Z/{n}", reps.len()),
        ));
    }
    if reps[0] != ring.unit() {
        return Err(FusionError::validation("representative of grade 0 must be ε", reps[0].to_string()));
    }
    for (s, rep) in reps.iter().enumerate() {
        let degree = grading.degree(rep)?;
        if degree as usize != s {
            return Err(FusionError::validation(
                "representative has the wrong grade",
                format!("Ξ({rep}) = {degree}, expected {s}"),
            ));
        }
    }
    // The |Λ|^{-1/2} normalization is applied as an overall 1/|Λ| on φ_{a,a}.
    let mut terms = Vec::with_capacity(n);
    for rep in reps {
        terms.push((rep.clone(), S::one() / dim_scalar::<S>(ring, rep)?));
    }
    let a = FusionElement::from_terms(ring, terms)?;
    let averaged = convolve(phi, &a, &a)?;
    Ok(averaged
        .scale(S::one() / S::from_int(n as i64))
        .with_cp_claim(phi.claimed_cp())
        .with_description(format!("grade_average({})", phi.description())))
}
