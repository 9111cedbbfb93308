use std::any::Any;

use crate::error::{FusionError, Result};
use crate::fusion::label::{split_top_level, strip_enclosing, Letter};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::Dimension;

/// Free product of two fusion rings. Irreducibles are alternating words of
/// non-unit letters; Fuss-Catalan rings are free products of two TLJ rings.
#[derive(Debug, Clone)]
pub struct FreeProduct {
    factors: [FusionRing; 2],
}

impl FreeProduct {
    pub fn factors(&self) -> (&FusionRing, &FusionRing) {
        (&self.factors[0], &self.factors[1])
    }

    /// The factor ring of letters tagged `factor` (1 or 2).
    pub fn factor(&self, factor: u8) -> &FusionRing {
        &self.factors[factor as usize - 1]
    }

    fn letters(a: &Label) -> &[Letter] {
        match a {
            Label::Word(w) => w,
            _ => unreachable!("labels checked by the ring"),
        }
    }

    /// Canonical word from letters: unit letters are dropped; adjacent letters
    /// from the same factor are rejected.
    pub fn word(&self, letters: Vec<Letter>) -> Result<Label> {
        let kept: Vec<Letter> = letters
            .into_iter()
            .filter(|l| !self.factor(l.factor).is_unit(&l.label))
            .collect();
        for pair in kept.windows(2) {
            if pair[0].factor == pair[1].factor {
                return Err(FusionError::parse(
                    "label",
                    format!("adjacent letters {} and {} lie in the same factor", pair[0].label, pair[1].label),
                ));
            }
        }
        Ok(Label::Word(kept))
    }

    fn fuse_words(&self, left: &[Letter], right: &[Letter], mult: u64, out: &mut Vec<(Label, u64)>) -> Result<()> {
        let (Some(last), Some(first)) = (left.last(), right.first()) else {
            let mut w = left.to_vec();
            w.extend_from_slice(right);
            out.push((Label::Word(w), mult));
            return Ok(());
        };
        if last.factor != first.factor {
            let mut w = left.to_vec();
            w.extend_from_slice(right);
            out.push((Label::Word(w), mult));
            return Ok(());
        }
        let ring = self.factor(last.factor);
        let head = &left[..left.len() - 1];
        let tail = &right[1..];
        for (z, k) in ring.fuse(&last.label, &first.label)?.iter() {
            if ring.is_unit(z) {
                self.fuse_words(head, tail, mult * k, out)?;
            } else {
                let mut w = head.to_vec();
                w.push(Letter {
                    factor: last.factor,
                    label: z.clone(),
                });
                w.extend_from_slice(tail);
                out.push((Label::Word(w), mult * k));
            }
        }
        Ok(())
    }

    fn words(&self, budget: usize, last_factor: u8, prefix: &mut Vec<Letter>, out: &mut Vec<Label>) {
        out.push(Label::Word(prefix.clone()));
        for factor in [1u8, 2] {
            if factor == last_factor {
                continue;
            }
            let ring = self.factor(factor);
            for letter in ring.labels_up_to_level(budget) {
                if ring.is_unit(&letter) {
                    continue;
                }
                let cost = ring.rule().level(&letter).max(1);
                if cost > budget {
                    continue;
                }
                prefix.push(Letter { factor, label: letter });
                self.words(budget - cost, factor, prefix, out);
                prefix.pop();
            }
        }
    }
}

impl FusionRule for FreeProduct {
    fn name(&self) -> String {
        format!("{} * {}", self.factors[0].name(), self.factors[1].name())
    }

    fn family(&self) -> Family {
        Family::FreeProduct
    }

    fn unit(&self) -> Label {
        Label::Word(vec![])
    }

    fn contains(&self, a: &Label) -> bool {
        let Label::Word(w) = a else { return false };
        w.iter().all(|l| {
            (l.factor == 1 || l.factor == 2)
                && self.factor(l.factor).contains(&l.label)
                && !self.factor(l.factor).is_unit(&l.label)
        }) && w.windows(2).all(|p| p[0].factor != p[1].factor)
    }

    fn conjugate(&self, a: &Label) -> Label {
        Label::Word(
            Self::letters(a)
                .iter()
                .rev()
                .map(|l| Letter {
                    factor: l.factor,
                    label: self.factor(l.factor).rule().conjugate(&l.label),
                })
                .collect(),
        )
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let mut out = Vec::new();
        self.fuse_words(Self::letters(a), Self::letters(b), 1, &mut out)?;
        Ok(out)
    }

    fn dimension(&self, a: &Label) -> Dimension {
        Self::letters(a).iter().fold(Dimension::one(), |d, l| {
            d.times(&self.factor(l.factor).rule().dimension(&l.label))
        })
    }

    fn level(&self, a: &Label) -> usize {
        Self::letters(a)
            .iter()
            .map(|l| self.factor(l.factor).rule().level(&l.label).max(1))
            .sum()
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        let mut out = Vec::new();
        self.words(level, 0, &mut Vec::new(), &mut out);
        out
    }

    fn label_count(&self) -> Option<usize> {
        match (self.factors[0].label_count(), self.factors[1].label_count()) {
            (Some(1), other) | (other, Some(1)) => other,
            _ => None,
        }
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "ε" {
            return Ok(self.unit());
        }
        let mut letters = Vec::new();
        for part in split_top_level(t, '*') {
            let (factor, body) = part
                .split_once(':')
                .ok_or_else(|| FusionError::parse("label", format!("letter `{part}` needs a factor prefix `1:` or `2:`")))?;
            let factor: u8 = match factor.trim() {
                "1" => 1,
                "2" => 2,
                other => return Err(FusionError::parse("label", format!("unknown factor `{other}`"))),
            };
            let body = strip_enclosing(body, '{', '}').unwrap_or(body);
            let label = self.factor(factor).parse_label(body)?;
            letters.push(Letter { factor, label });
        }
        self.word(letters)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn build_free_product(first: &FusionRing, second: &FusionRing) -> FusionRing {
    FusionRing::new(FreeProduct {
        factors: [first.clone(), second.clone()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::group::{build_group_ring, GroupSpec};
    use crate::builders::tlj::build_tlj_ainf;

    #[test]
    fn infinite_dihedral() {
        let z2 = build_group_ring(&GroupSpec::Cyclic { order: 2 }).unwrap();
        let ring = build_free_product(&z2, &z2);
        let ab = ring.parse_label("1:1*2:1").unwrap();
        let ba = ring.parse_label("2:1*1:1").unwrap();
        let out = ring.fuse(&ab, &ba).unwrap();
        assert_eq!(out.terms(), &[(ring.unit(), 1)]);
        assert_eq!(ring.fuse(&ab, &ring.unit()).unwrap().terms(), &[(ab.clone(), 1)]);
        // level-k words: 1 + 2 + 2 + ...
        assert_eq!(ring.labels_up_to_level(3).len(), 7);
    }

    #[test]
    fn fuss_catalan_dimensions_and_fusion() {
        let ring = build_free_product(&build_tlj_ainf(5.0).unwrap(), &build_tlj_ainf(4.0).unwrap());
        let w = ring.parse_label("1:H1*2:H1").unwrap();
        assert_eq!(ring.dim(&w).unwrap().value(), 12.0);
        let wbar = ring.conjugate(&w).unwrap();
        assert_eq!(wbar.to_string(), "2:H1*1:H1");
        // w ⊗ w̄ = 1:H1 (2:H1 ⊗ 2:H1) 1:H1 = 1:H1 (ε + 2:H1 + 2:H2) 1:H1
        let out = ring.fuse(&w, &wbar).unwrap();
        let total: f64 = out.iter().map(|(l, m)| m as f64 * ring.dim(l).unwrap().value()).sum();
        assert_eq!(total, 144.0);
        assert_eq!(out.multiplicity(&ring.unit()), 1);
        assert!(ring.parse_label("1:H1*1:H2").is_err());
        assert_eq!(ring.parse_label("1:H0*2:H2").unwrap().to_string(), "2:H2");
    }
}
