//! The admissible loop parameters ω determined by u.

use num_traits::{One, Zero};

use crate::rational::{qr, Q};

/// ω_0, …, ω_order such that
/// `u − 1/2 + Σ ω_i u^{−i} = (u − (−1)^a/2) ∏ (u + u_i)/(u − u_i)`
/// holds through order u^{−order}.
pub fn admissible_omega(u: &[Q], order: usize) -> Vec<Q> {
    let len = order + 2;
    // P(t) = ∏ (1 + u_i t)/(1 − u_i t) with t = 1/u, truncated.
    let mut p = vec![Q::zero(); len];
    p[0] = Q::one();
    for ui in u {
        // multiply by 1/(1 − u_i t)
        for n in 1..len {
            let prev = p[n - 1].clone();
            p[n] += prev * ui;
        }
        // multiply by (1 + u_i t)
        for n in (1..len).rev() {
            let prev = p[n - 1].clone();
            p[n] += prev * ui;
        }
    }
    let half_sign = if u.len() % 2 == 0 { qr(1, 2) } else { qr(-1, 2) };
    (0..=order)
        .map(|i| {
            let w = &p[i + 1] - &half_sign * &p[i];
            if i == 0 {
                w + qr(1, 2)
            } else {
                w
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn zero_parameters_even_level() {
        assert_eq!(admissible_omega(&[q(0), q(0)], 3), vec![q(0); 4]);
    }

    #[test]
    fn omega_zero_closed_form() {
        for u in [vec![q(1), q(3)], vec![qr(1, 2), q(-2), q(5)], vec![q(7)]] {
            let w = admissible_omega(&u, 2);
            let sum: Q = u.iter().sum();
            let odd = if u.len() % 2 == 1 { q(1) } else { q(0) };
            assert_eq!(w[0], q(2) * sum + odd);
        }
    }

    #[test]
    fn level_one_series() {
        // (u + 1/2)(u + c)/(u − c) = u + 2c + 1/2 + Σ_{i≥1} (2c^{i+1} + c^i) u^{−i}
        let c = q(3);
        let w = admissible_omega(&[c.clone()], 4);
        assert_eq!(w[0], q(7));
        for (i, wi) in w.iter().enumerate().skip(1) {
            let expect = q(2) * num_traits::pow(c.clone(), i + 1) + num_traits::pow(c.clone(), i);
            assert_eq!(*wi, expect);
        }
    }
}
