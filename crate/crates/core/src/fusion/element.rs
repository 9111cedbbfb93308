use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::fusion::label::Label;
use crate::fusion::ring::FusionRing;
use crate::scalar::{u64_to_scalar, Scalar};

/// Finitely supported linear combination of irreducibles: an element of the
/// fusion *-algebra of its ring. Zero coefficients are never stored.
#[derive(Clone)]
pub struct FusionElement<S> {
    ring: FusionRing,
    coeffs: BTreeMap<Label, S>,
}

impl<S: Scalar> PartialEq for FusionElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for FusionElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(l, c)| format!("{c:?}·{l}"))
            .collect();
        write!(f, "FusionElement[{}]({})", self.ring.name(), terms.join(" + "))
    }
}

#[allow(clippy::should_implement_trait)]
impl<S: Scalar> FusionElement<S> {
    pub fn zero(ring: &FusionRing) -> Self {
        FusionElement {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `δ_ε`.
    pub fn one(ring: &FusionRing) -> Self {
        Self::zero(ring).with_term(ring.unit(), S::one())
    }

    pub fn basis(ring: &FusionRing, label: Label) -> Result<Self> {
        ring.check(&label)?;
        Ok(Self::zero(ring).with_term(label, S::one()))
    }

    /// Sums the given terms; duplicate labels accumulate.
    pub fn from_terms<I>(ring: &FusionRing, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, S)>,
    {
        let mut out = Self::zero(ring);
        for (label, c) in terms {
            ring.check(&label)?;
            out.accumulate(label, c);
        }
        Ok(out)
    }

    fn with_term(mut self, label: Label, c: S) -> Self {
        self.accumulate(label, c);
        self
    }

    fn accumulate(&mut self, label: Label, c: S) {
        let updated = match self.coeffs.remove(&label) {
            Some(old) => old + c,
            None => c,
        };
        if !updated.is_zero() {
            self.coeffs.insert(label, updated);
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn coefficient(&self, label: &Label) -> S {
        self.coeffs.get(label).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &S)> {
        self.coeffs.iter()
    }

    /// Terms in the ring's canonical order.
    pub fn sorted_terms(&self) -> Vec<(&Label, &S)> {
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| self.ring.canonical_cmp(a.0, b.0));
        terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest level of a label in the support.
    pub fn max_level(&self) -> usize {
        self.coeffs
            .keys()
            .map(|l| self.ring.rule().level(l))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.accumulate(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(&self.ring);
        for (l, c) in &self.coeffs {
            out.accumulate(l.clone(), c.clone() * factor.clone());
        }
        out
    }

    /// Bilinear extension of the fusion rules.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = Self::zero(&self.ring);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let coeff = ca.clone() * cb.clone();
                for (gamma, m) in self.ring.fuse(a, b)?.iter() {
                    out.accumulate(gamma.clone(), coeff.clone() * u64_to_scalar::<S>(m));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `(Σ x_α α)* = Σ conj(x_α) ᾱ`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (l, c) in &self.coeffs {
            out.accumulate(self.ring.rule().conjugate(l), c.conj());
        }
        out
    }

    /// Changes the coefficient type.
    pub fn map<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> FusionElement<T> {
        let mut out = FusionElement::zero(&self.ring);
        for (l, c) in &self.coeffs {
            out.accumulate(l.clone(), f(c));
        }
        out
    }
}
