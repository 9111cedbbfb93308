use std::any::Any;

use crate::error::{FusionError, Result};
use crate::fusion::label::{split_top_level, strip_enclosing};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::Dimension;

/// Tensor product of two fusion rings: pairs of labels fused componentwise.
#[derive(Debug, Clone)]
pub struct ProductRing {
    left: FusionRing,
    right: FusionRing,
}

impl ProductRing {
    pub fn factors(&self) -> (&FusionRing, &FusionRing) {
        (&self.left, &self.right)
    }

    fn split(a: &Label) -> (&Label, &Label) {
        match a {
            Label::Pair(x, y) => (x, y),
            _ => unreachable!("labels checked by the ring"),
        }
    }
}

impl FusionRule for ProductRing {
    fn name(&self) -> String {
        format!("{} × {}", self.left.name(), self.right.name())
    }

    fn family(&self) -> Family {
        Family::Product
    }

    fn unit(&self) -> Label {
        Label::pair(self.left.unit(), self.right.unit())
    }

    fn contains(&self, a: &Label) -> bool {
        match a {
            Label::Pair(x, y) => self.left.contains(x) && self.right.contains(y),
            _ => false,
        }
    }

    fn conjugate(&self, a: &Label) -> Label {
        let (x, y) = Self::split(a);
        Label::pair(self.left.rule().conjugate(x), self.right.rule().conjugate(y))
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let ((a1, a2), (b1, b2)) = (Self::split(a), Self::split(b));
        let first = self.left.fuse(a1, b1)?;
        let second = self.right.fuse(a2, b2)?;
        let mut out = Vec::with_capacity(first.len() * second.len());
        for (x, m) in first.iter() {
            for (y, k) in second.iter() {
                out.push((Label::pair(x.clone(), y.clone()), m * k));
            }
        }
        Ok(out)
    }

    fn dimension(&self, a: &Label) -> Dimension {
        let (x, y) = Self::split(a);
        self.left.rule().dimension(x).times(&self.right.rule().dimension(y))
    }

    fn level(&self, a: &Label) -> usize {
        let (x, y) = Self::split(a);
        self.left.rule().level(x) + self.right.rule().level(y)
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        let mut out = Vec::new();
        for x in self.left.labels_up_to_level(level) {
            let rest = level - self.left.rule().level(&x);
            for y in self.right.labels_up_to_level(rest) {
                out.push(Label::pair(x.clone(), y));
            }
        }
        out
    }

    fn label_count(&self) -> Option<usize> {
        Some(self.left.label_count()? * self.right.label_count()?)
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let inner = strip_enclosing(text, '(', ')')
            .ok_or_else(|| FusionError::parse("label", format!("expected (a,b), got `{text}`")))?;
        let parts = split_top_level(inner, ',');
        if parts.len() != 2 {
            return Err(FusionError::parse("label", format!("expected (a,b), got `{text}`")));
        }
        Ok(Label::pair(
            self.left.parse_label(parts[0])?,
            self.right.parse_label(parts[1])?,
        ))
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn build_product(left: &FusionRing, right: &FusionRing) -> FusionRing {
    FusionRing::new(ProductRing {
        left: left.clone(),
        right: right.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::group::{build_group_ring, GroupSpec};
    use crate::builders::tlj::build_tlj_ainf;

    #[test]
    fn tlj_times_z2() {
        let ring = build_product(
            &build_tlj_ainf(5.0).unwrap(),
            &build_group_ring(&GroupSpec::Cyclic { order: 2 }).unwrap(),
        );
        let x = ring.parse_label("(H1,1)").unwrap();
        assert_eq!(ring.unit(), Label::pair(Label::Tlj(0), Label::Int(0)));
        assert_eq!(ring.dim(&x).unwrap().value(), 4.0);
        let out = ring.fuse(&x, &x).unwrap();
        let labels: Vec<String> = out.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        assert_eq!(labels, vec!["(H0,0):1", "(H1,0):1", "(H2,0):1"]);
    }
}
