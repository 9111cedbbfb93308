//! The polynomials `V_n(t) = U_{2n}(√t / 2)` that carry the TLJ fusion algebra.
//!
//! `V_0 = 1`, `V_1 = t - 1`, `V_{n+1} = (t - 2) V_n - V_{n-1}`. `V_n(λ⁻¹)` is the
//! dimension of `H_n` and `H_n = V_n(X)` in the fusion algebra, with `X = ε + H_1`.

use crate::scalar::Scalar;

/// `V_n(t)` by the three-term recurrence.
pub fn chebyshev_v<S: Scalar>(n: usize, t: &S) -> S {
    let mut prev = S::one();
    if n == 0 {
        return prev;
    }
    let shift = t.clone() - S::from_int(2);
    let mut cur = t.clone() - S::one();
    for _ in 1..n {
        let next = shift.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `[V_0(t), ..., V_{n_max}(t)]`.
pub fn chebyshev_v_table<S: Scalar>(n_max: usize, t: &S) -> Vec<S> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(S::one());
    if n_max == 0 {
        return out;
    }
    let shift = t.clone() - S::from_int(2);
    out.push(t.clone() - S::one());
    for n in 1..n_max {
        let next = shift.clone() * out[n].clone() - out[n - 1].clone();
        out.push(next);
    }
    out
}

/// `V_n(t)` from the trigonometric and hyperbolic closed forms:
///
/// * `t = 2(1 + cos α)`:  `(sin((n+1)α) + sin(nα)) / sin α`
/// * `t = 2(1 + cosh α)`: `(sinh((n+1)α) + sinh(nα)) / sinh α`
/// * `t = 2(1 - cosh α)`: `(-1)^n (sinh((n+1)α) - sinh(nα)) / sinh α`
///
/// The removable singularities at `t = 0` and `t = 4` take their limits.
pub fn chebyshev_v_closed(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    if t == 4.0 {
        return 2.0 * nf + 1.0;
    }
    if t == 0.0 {
        return sign;
    }
    if t > 0.0 && t < 4.0 {
        let alpha = (t / 2.0 - 1.0).acos();
        (((nf + 1.0) * alpha).sin() + (nf * alpha).sin()) / alpha.sin()
    } else if t > 4.0 {
        let alpha = (t / 2.0 - 1.0).acosh();
        (((nf + 1.0) * alpha).sinh() + (nf * alpha).sinh()) / alpha.sinh()
    } else {
        let alpha = (1.0 - t / 2.0).acosh();
        sign * (((nf + 1.0) * alpha).sinh() - (nf * alpha).sinh()) / alpha.sinh()
    }
}
