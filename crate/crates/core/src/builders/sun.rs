use std::any::Any;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::builders::lr::littlewood_richardson;
use crate::error::{FusionError, Result};
use crate::fusion::label::{split_top_level, strip_enclosing};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::Dimension;

/// Default bound on `|λ| + |μ|` for a single Littlewood-Richardson expansion.
pub const DEFAULT_MAX_BOXES: u32 = 24;

/// Fusion ring of `SU_q(n)`: partitions with fewer than `n` rows, tensor products
/// by Littlewood-Richardson with columns of height `n` removed, quantum dimensions.
#[derive(Debug, Clone)]
pub struct SpecialUnitary {
    n: u32,
    q: f64,
    max_boxes: u32,
}

/// `[k]_q = (q^k - q^{-k}) / (q - q^{-1})`, equal to `k` at `q = 1`.
pub fn quantum_integer(k: i64, q: f64) -> f64 {
    if q == 1.0 {
        return k as f64;
    }
    let kf = k as f64;
    (q.powf(kf) - q.powf(-kf)) / (q - 1.0 / q)
}

impl SpecialUnitary {
    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    fn parts(a: &Label) -> &[u32] {
        match a {
            Label::Partition(p) => p,
            _ => unreachable!("labels checked by the ring"),
        }
    }

    /// Partition padded with zeros to exactly `n` rows.
    fn padded(&self, a: &Label) -> Vec<i64> {
        let mut rows: Vec<i64> = Self::parts(a).iter().map(|&x| x as i64).collect();
        rows.resize(self.n as usize, 0);
        rows
    }

    fn normalize(&self, mut nu: Vec<u32>) -> Label {
        nu.resize(self.n as usize, 0);
        let strip = nu[self.n as usize - 1];
        Label::partition(nu.into_iter().map(|x| x - strip))
    }

    /// Classical Weyl dimension `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`, exact.
    pub fn weyl_dimension(&self, a: &Label) -> BigInt {
        let rows = self.padded(a);
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                num *= rows[i] - rows[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        num / den
    }

    /// Quantum Weyl dimension `∏_{i<j} [λ_i - λ_j + j - i]_q / [j - i]_q`.
    pub fn quantum_dimension(&self, a: &Label) -> f64 {
        let rows = self.padded(a);
        let mut d = 1.0;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let gap = (j - i) as i64;
                d *= quantum_integer(rows[i] - rows[j] + gap, self.q) / quantum_integer(gap, self.q);
            }
        }
        d
    }
}

impl FusionRule for SpecialUnitary {
    fn name(&self) -> String {
        if self.q == 1.0 {
            format!("SU({})", self.n)
        } else {
            format!("SU_q({}) q={}", self.n, self.q)
        }
    }

    fn family(&self) -> Family {
        Family::SpecialUnitary { n: self.n, q: self.q }
    }

    fn unit(&self) -> Label {
        Label::Partition(vec![])
    }

    fn contains(&self, a: &Label) -> bool {
        match a {
            Label::Partition(p) => {
                p.len() < self.n as usize && p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] >= w[1])
            }
            _ => false,
        }
    }

    fn conjugate(&self, a: &Label) -> Label {
        let rows = self.padded(a);
        let top = rows[0];
        Label::partition(rows.iter().rev().map(|x| (top - x) as u32))
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let (p, q) = (Self::parts(a), Self::parts(b));
        let boxes: u32 = p.iter().sum::<u32>() + q.iter().sum::<u32>();
        if boxes > self.max_boxes {
            return Err(FusionError::Parameter(format!(
                "{a} ⊗ {b} has {boxes} boxes, above the bound {}",
                self.max_boxes
            )));
        }
        Ok(littlewood_richardson(p, q, self.n as usize)
            .into_iter()
            .map(|(nu, c)| (self.normalize(nu), c))
            .collect())
    }

    fn dimension(&self, a: &Label) -> Dimension {
        if self.q == 1.0 {
            Dimension::exact(BigRational::from_integer(self.weyl_dimension(a)))
        } else {
            Dimension::approx(self.quantum_dimension(a))
        }
    }

    /// Number of columns: the fewest fundamental representations whose product contains `λ`.
    fn level(&self, a: &Label) -> usize {
        match a {
            Label::Partition(p) => p.first().copied().unwrap_or(0) as usize,
            _ => 0,
        }
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        fn rec(rows_left: usize, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Label>) {
            out.push(Label::Partition(prefix.clone()));
            if rows_left == 0 {
                return;
            }
            for part in 1..=max_part {
                prefix.push(part);
                rec(rows_left - 1, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.n as usize - 1, level as u32, &mut Vec::new(), &mut out);
        out
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let t = text.trim();
        if t == "e" || t == "ε" {
            return Ok(self.unit());
        }
        let inner = strip_enclosing(t, '[', ']').unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(self.unit());
        }
        let parts = split_top_level(inner, ',')
            .into_iter()
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| FusionError::parse("label", format!("bad partition `{text}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(FusionError::parse("label", format!("partition `{text}` is not weakly decreasing")));
        }
        let mut padded = parts;
        if padded.len() > self.n as usize {
            return Err(FusionError::parse("label", format!("partition `{text}` has more than {} rows", self.n)));
        }
        padded.resize(self.n as usize, 0);
        Ok(self.normalize(padded))
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Fusion ring of `SU_q(n)`, `n ≥ 2`, `0 < q ≤ 1`.
pub fn build_sun(n: u32, q: f64) -> Result<FusionRing> {
    build_sun_bounded(n, q, DEFAULT_MAX_BOXES)
}

pub fn build_sun_bounded(n: u32, q: f64, max_boxes: u32) -> Result<FusionRing> {
    if n < 2 {
        return Err(FusionError::Parameter(format!("SU(n) needs n ≥ 2, got {n}")));
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(FusionError::Parameter(format!("q must lie in (0, 1], got {q}")));
    }
    Ok(FusionRing::new(SpecialUnitary { n, q, max_boxes }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Label {
        Label::partition(parts.iter().copied())
    }

    #[test]
    fn su3_basics() {
        let ring = build_sun(3, 1.0).unwrap();
        assert_eq!(ring.conjugate(&p(&[1])).unwrap(), p(&[1, 1]));
        assert_eq!(ring.conjugate(&p(&[2, 1])).unwrap(), p(&[2, 1]));
        assert_eq!(ring.conjugate(&p(&[3, 1])).unwrap(), p(&[3, 2]));
        assert_eq!(ring.dim(&p(&[1])).unwrap().value(), 3.0);
        assert_eq!(ring.dim(&p(&[2, 1])).unwrap().value(), 8.0);
        assert_eq!(ring.dim(&p(&[3])).unwrap().value(), 10.0);

        let out = ring.fuse(&p(&[1]), &p(&[1, 1])).unwrap();
        let mut terms = out.terms().to_vec();
        terms.sort();
        assert_eq!(terms, vec![(p(&[]), 1), (p(&[2, 1]), 1)]);

        let out = ring.fuse(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(out.multiplicity(&p(&[2])), 1);
        assert_eq!(out.multiplicity(&p(&[1, 1])), 1);
        assert_eq!(out.len(), 2);

        assert_eq!(ring.mult_word(&p(&[]), &[p(&[1]), p(&[1]), p(&[1])]).unwrap(), 1);
        // 8 ⊗ 8 = 1 + 8 + 8 + 10 + 10̄ + 27
        let adj = ring.fuse(&p(&[2, 1]), &p(&[2, 1])).unwrap();
        assert_eq!(adj.multiplicity(&p(&[2, 1])), 2);
        assert_eq!(adj.multiplicity(&p(&[4, 2])), 1);
    }

    #[test]
    fn quantum_dimension_is_quantum_integer() {
        let ring = build_sun(3, 0.9).unwrap();
        let q: f64 = 0.9;
        let expected = (q.powi(3) - q.powi(-3)) / (q - 1.0 / q);
        let d = ring.dim(&p(&[1])).unwrap().value();
        assert!((d - expected).abs() < 1e-12);
        assert!((d - 3.044_567_901_234_57).abs() < 1e-12);
    }

    #[test]
    fn labels_by_columns() {
        let ring = build_sun(3, 1.0).unwrap();
        // λ_1 ≤ 2 with at most two rows: [], [1], [1,1], [2], [2,1], [2,2]
        assert_eq!(ring.labels_up_to_level(2).len(), 6);
        assert_eq!(ring.parse_label("[2,2,2]").unwrap(), p(&[]));
        assert_eq!(ring.parse_label("[3,1,1]").unwrap(), p(&[2]));
        assert!(ring.parse_label("[1,2]").is_err());
        assert!(build_sun(1, 1.0).is_err());
        assert!(build_sun(3, 1.5).is_err());
        assert!(build_sun(3, 0.0).is_err());
    }
}
