//! Text syntax for elements and label lists.
//!
//! An element is a `;`-separated list of terms `coefficient@label` or a bare
//! `label` (coefficient 1). Coefficients are decimals or `p/q`. On TLJ rings
//! the label `X` stands for `ε + H_1`.

use fusion_mult::fusion::Family;
use fusion_mult::scalar::parse_rational;
use fusion_mult::{FusionElement, FusionError, FusionRing, Label, Result, Scalar};

fn is_tlj(ring: &FusionRing) -> bool {
    matches!(ring.family(), Family::TljInfinite { .. } | Family::TljFinite { .. })
}

fn bad(message: String) -> FusionError {
    FusionError::Parse {
        path: "element".into(),
        message,
    }
}

pub fn parse_element<S: Scalar>(ring: &FusionRing, text: &str) -> Result<FusionElement<S>> {
    let mut terms: Vec<(Label, S)> = Vec::new();
    for raw in text.split(';') {
        let term = raw.trim();
        if term.is_empty() {
            continue;
        }
        let (coeff, label) = match term.split_once('@') {
            Some((c, l)) => {
                let c = c.trim();
                let value = parse_rational(c).ok_or_else(|| bad(format!("`{c}` is not a number")))?;
                (S::from_rational(&value), l.trim())
            }
            None => (S::one(), term),
        };
        if label == "X" && is_tlj(ring) {
            terms.push((Label::Tlj(0), coeff.clone()));
            terms.push((Label::Tlj(1), coeff));
        } else {
            terms.push((ring.parse_label(label)?, coeff));
        }
    }
    if terms.is_empty() {
        return Err(bad(format!("`{text}` has no terms")));
    }
    FusionElement::from_terms(ring, terms)
}

pub fn parse_label_list(ring: &FusionRing, text: &str) -> Result<Vec<Label>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ring.parse_label(s))
        .collect()
}
