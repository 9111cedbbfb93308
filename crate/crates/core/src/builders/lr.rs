//! Littlewood-Richardson coefficients by explicit enumeration of LR skew tableaux.
//!
//! Starting from `λ`, horizontal strips of `μ_1` ones, `μ_2` twos, ... are added.
//! A strip of label `i` keeps rows weakly increasing and columns strictly
//! increasing; after each strip the reverse reading word (rows top to bottom,
//! each right to left) must stay a lattice word in `i` versus `i - 1`.

use std::collections::BTreeMap;

struct Search<'a> {
    mu: &'a [u32],
    max_rows: usize,
    /// `fill[r][i]`: number of boxes labeled `i + 1` in row `r`.
    fill: Vec<Vec<u32>>,
    out: BTreeMap<Vec<u32>, u64>,
}

impl Search<'_> {
    fn lattice_ok(&self, label: usize) -> bool {
        if label == 0 {
            return true;
        }
        let (mut seen_hi, mut seen_lo) = (0u32, 0u32);
        for row in &self.fill {
            // Right to left: the `label` boxes of a row are read before its `label - 1` boxes.
            seen_hi += row[label];
            if seen_hi > seen_lo {
                return false;
            }
            seen_lo += row[label - 1];
        }
        true
    }

    fn place(&mut self, shape: Vec<u32>, label: usize) {
        if label == self.mu.len() {
            let nu: Vec<u32> = shape.into_iter().filter(|&x| x > 0).collect();
            *self.out.entry(nu).or_insert(0) += 1;
            return;
        }
        let mut padded = shape.clone();
        padded.resize(self.max_rows, 0);
        let mut added = vec![0u32; self.max_rows];
        self.strips(&padded, &mut added, 0, self.mu[label], label);
    }

    /// Distributes `remaining` boxes of `label` over rows `row..`, each row `r`
    /// growing at most up to the old length of row `r - 1`.
    fn strips(&mut self, shape: &[u32], added: &mut [u32], row: usize, remaining: u32, label: usize) {
        if row == shape.len() {
            if remaining > 0 {
                return;
            }
            for (r, &a) in added.iter().enumerate() {
                self.fill[r][label] = a;
            }
            if self.lattice_ok(label) {
                let next: Vec<u32> = shape.iter().zip(added.iter()).map(|(s, a)| s + a).collect();
                self.place(next, label + 1);
            }
            for r in 0..added.len() {
                self.fill[r][label] = 0;
            }
            return;
        }
        let cap = if row == 0 {
            remaining
        } else {
            (shape[row - 1] - shape[row]).min(remaining)
        };
        // Lattice condition forces label i to start no higher than row i - 1.
        let cap = if row < label { 0 } else { cap };
        for k in (0..=cap).rev() {
            added[row] = k;
            self.strips(shape, added, row + 1, remaining - k, label);
        }
        added[row] = 0;
    }
}

/// `c^ν_{λμ}` for all `ν` with at most `max_rows` rows.
pub fn littlewood_richardson(lambda: &[u32], mu: &[u32], max_rows: usize) -> BTreeMap<Vec<u32>, u64> {
    let lambda: Vec<u32> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let mu: Vec<u32> = mu.iter().copied().filter(|&x| x > 0).collect();
    if lambda.len() > max_rows || mu.len() > max_rows {
        return BTreeMap::new();
    }
    let mut search = Search {
        mu: &mu,
        max_rows,
        fill: vec![vec![0; mu.len().max(1)]; max_rows],
        out: BTreeMap::new(),
    };
    search.place(lambda, 0);
    search.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(l: &[u32], m: &[u32], rows: usize) -> Vec<(Vec<u32>, u64)> {
        littlewood_richardson(l, m, rows).into_iter().collect()
    }

    #[test]
    fn pieri_rule() {
        assert_eq!(lr(&[1], &[1], 5), vec![(vec![1, 1], 1), (vec![2], 1)]);
        assert_eq!(lr(&[2], &[1], 5), vec![(vec![2, 1], 1), (vec![3], 1)]);
    }

    #[test]
    fn classic_coefficient_two() {
        // s_{21} s_{21} contains s_{321} with coefficient 2.
        let out = littlewood_richardson(&[2, 1], &[2, 1], 6);
        assert_eq!(out.get(&vec![3, 2, 1]), Some(&2));
        assert_eq!(out.get(&vec![4, 2]), Some(&1));
        assert_eq!(out.get(&vec![2, 2, 1, 1]), Some(&1));
        let total: u64 = out.values().sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn commutative_and_sized() {
        for (a, b) in [(&[2u32, 1][..], &[1u32, 1][..]), (&[3, 1], &[2, 2]), (&[2], &[3, 1, 1])] {
            let x = littlewood_richardson(a, b, 6);
            let y = littlewood_richardson(b, a, 6);
            assert_eq!(x, y);
            let size: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
            assert!(x.keys().all(|nu| nu.iter().sum::<u32>() == size));
        }
    }

    #[test]
    fn row_truncation() {
        assert_eq!(lr(&[1, 1], &[1], 2), vec![(vec![2, 1], 1)]);
    }
}
