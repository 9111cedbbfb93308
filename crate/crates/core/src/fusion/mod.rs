//! Fusion rings and the fusion *-algebra.

pub mod element;
pub mod invariants;
pub mod label;
pub mod ring;

pub use element::FusionElement;
pub use label::{Label, Letter};
pub use ring::{Family, FusionOutcome, FusionRing, FusionRule};

use std::sync::Arc;

use crate::error::Result;
use crate::scalar::{Dimension, Scalar};

pub fn conjugate(ring: &FusionRing, a: &Label) -> Result<Label> {
    ring.conjugate(a)
}

pub fn fuse(ring: &FusionRing, a: &Label, b: &Label) -> Result<Arc<FusionOutcome>> {
    ring.fuse(a, b)
}

pub fn mult_word(ring: &FusionRing, gamma: &Label, word: &[Label]) -> Result<u64> {
    ring.mult_word(gamma, word)
}

pub fn dim(ring: &FusionRing, a: &Label) -> Result<Dimension> {
    ring.dim(a)
}

pub fn element_mul<S: Scalar>(ring: &FusionRing, x: &FusionElement<S>, y: &FusionElement<S>) -> Result<FusionElement<S>> {
    ring.ensure_same(x.ring())?;
    x.mul(y)
}

pub fn element_star<S: Scalar>(ring: &FusionRing, x: &FusionElement<S>) -> Result<FusionElement<S>> {
    ring.ensure_same(x.ring())?;
    Ok(x.star())
}
