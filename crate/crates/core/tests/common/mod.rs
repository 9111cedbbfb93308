//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fusion_mult::{FusionElement, FusionRing, Label};

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn catalan(k: u64) -> BigInt {
    // C_k = binom(2k, k) / (k + 1)
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

/// `V_n(t)` from the trigonometric / hyperbolic closed forms, written from
/// scratch here so the library's own closed form is not the reference.
pub fn v_closed(n: usize, t: f64) -> f64 {
    let n = n as f64;
    if (t - 4.0).abs() == 0.0 {
        return 2.0 * n + 1.0;
    }
    if t == 0.0 {
        return if n as u64 % 2 == 0 { 1.0 } else { -1.0 };
    }
    let c = t / 2.0 - 1.0;
    if c.abs() < 1.0 {
        let a = c.acos();
        (((n + 1.0) * a).sin() + (n * a).sin()) / a.sin()
    } else if c > 1.0 {
        let a = c.acosh();
        (((n + 1.0) * a).sinh() + (n * a).sinh()) / a.sinh()
    } else {
        let a = (-c).acosh();
        let sign = if n as u64 % 2 == 0 { 1.0 } else { -1.0 };
        sign * (((n + 1.0) * a).sinh() - (n * a).sinh()) / a.sinh()
    }
}

/// Exact `V_n(t)` for rational `t`, by the recurrence.
pub fn v_exact(n: usize, t: &BigRational) -> BigRational {
    let (mut a, mut b) = (BigRational::one(), t - BigRational::one());
    if n == 0 {
        return a;
    }
    let shift = t - BigRational::from_integer(2.into());
    for _ in 1..n {
        let c = &shift * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// Eigenvalues of a real symmetric matrix.
pub fn sym_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mat = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j]);
    mat.symmetric_eigen().eigenvalues.iter().copied().collect()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Random rational element supported on `labels`.
pub fn random_element(rng: &mut ChaCha8Rng, ring: &FusionRing, labels: &[Label], max_terms: usize) -> FusionElement<BigRational> {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Label, BigRational)> = (0..count)
        .map(|_| (labels[rng.gen_range(0..labels.len())].clone(), random_rational(rng)))
        .collect();
    FusionElement::from_terms(ring, terms).unwrap()
}

pub fn is_zero_rational(x: &BigRational) -> bool {
    x.is_zero()
}
