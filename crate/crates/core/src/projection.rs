//! Euclidean projection onto the weighted ℓ1 ball
//! `{u : Σ_j w_j·|u_j| ≤ τ}` for complex vectors.
//!
//! The projection shrinks each magnitude by `λ·w_j` and keeps the phase:
//! `u_j = v_j/|v_j| · max(|v_j| - λ·w_j, 0)`, where the multiplier `λ ≥ 0`
//! is the smallest value placing the result on the ball boundary. `λ` is
//! located by sorting the breakpoints `|v_j|/w_j` in decreasing order (ties
//! broken by index, so the result is deterministic) and scanning prefix
//! sums, the weighted generalization of the classic sort-and-scan simplex
//! projection.

use crate::C64;

/// Weighted one-norm `Σ_j w_j·|v_j|`.
pub fn weighted_l1_norm(v: &[C64], w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(x, &wi)| wi * x.norm()).sum()
}

/// Project `v` onto `{u : Σ_j w_j·|u_j| ≤ tau}`.
///
/// Weights must be positive and `tau ≥ 0`; inputs already inside the ball
/// are returned unchanged.
pub fn project_weighted_l1_ball(v: &[C64], w: &[f64], tau: f64) -> Vec<C64> {
    assert_eq!(v.len(), w.len(), "weight length");
    assert!(tau >= 0.0, "tau must be nonnegative");
    if weighted_l1_norm(v, w) <= tau {
        return v.to_vec();
    }
    if tau == 0.0 {
        return vec![C64::new(0.0, 0.0); v.len()];
    }
    let mags: Vec<f64> = v.iter().map(|x| x.norm()).collect();

    // Breakpoints |v_j|/w_j in decreasing order, stable by index.
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| (mags[b] / w[b]).total_cmp(&(mags[a] / w[a])));

    let mut weighted_sum = 0.0; // Σ w_j·|v_j| over the active prefix
    let mut weight_sq_sum = 0.0; // Σ w_j²
    let mut lambda = 0.0;
    for &j in &order {
        weighted_sum += w[j] * mags[j];
        weight_sq_sum += w[j] * w[j];
        let candidate = (weighted_sum - tau) / weight_sq_sum;
        if candidate < mags[j] / w[j] {
            lambda = candidate;
        } else {
            break;
        }
    }
    lambda = lambda.max(0.0);

    v.iter()
        .zip(&mags)
        .zip(w)
        .map(|((x, &mag), &wi)| {
            let shrunk = mag - lambda * wi;
            if shrunk > 0.0 {
                x * (shrunk / mag)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: bisection on the KKT multiplier.
    fn bisection_oracle(v: &[C64], w: &[f64], tau: f64) -> Vec<C64> {
        if weighted_l1_norm(v, w) <= tau {
            return v.to_vec();
        }
        let shrink = |lambda: f64| -> Vec<C64> {
            v.iter()
                .zip(w)
                .map(|(x, &wi)| {
                    let s = x.norm() - lambda * wi;
                    if s > 0.0 {
                        x * (s / x.norm())
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect()
        };
        let norm_at = |lambda: f64| -> f64 {
            v.iter()
                .zip(w)
                .map(|(x, &wi)| wi * (x.norm() - lambda * wi).max(0.0))
                .sum()
        };
        let mut lo = 0.0;
        let mut hi = v
            .iter()
            .zip(w)
            .map(|(x, &wi)| x.norm() / wi)
            .fold(0.0, f64::max);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if norm_at(mid) > tau {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        shrink(0.5 * (lo + hi))
    }

    fn rand_instance(rng: &mut ChaCha8Rng, n: usize) -> (Vec<C64>, Vec<f64>) {
        let v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..5.0)).collect();
        (v, w)
    }

    #[test]
    fn inside_ball_is_unchanged() {
        let v = vec![C64::new(0.1, 0.2), C64::new(-0.3, 0.0)];
        let w = vec![1.0, 2.0];
        let tau = weighted_l1_norm(&v, &w) + 0.5;
        assert_eq!(project_weighted_l1_ball(&v, &w, tau), v);
    }

    #[test]
    fn zero_radius_gives_zero_vector() {
        let v = vec![C64::new(1.0, -2.0), C64::new(0.5, 0.5)];
        let w = vec![1.0, 1.0];
        let out = project_weighted_l1_ball(&v, &w, 0.0);
        assert!(out.iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn matches_bisection_oracle_on_random_8_element_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let (v, w) = rand_instance(&mut rng, 8);
            let tau = 0.5 * weighted_l1_norm(&v, &w);
            let fast = project_weighted_l1_ball(&v, &w, tau);
            let slow = bisection_oracle(&v, &w, tau);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn projection_preserves_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (v, w) = rand_instance(&mut rng, 12);
        let tau = 0.3 * weighted_l1_norm(&v, &w);
        let out = project_weighted_l1_ball(&v, &w, tau);
        for (a, b) in out.iter().zip(&v) {
            if a.norm() > 0.0 {
                // same phase: cross product of (re, im) pairs vanishes and
                // the dot product is positive
                let cross = a.re * b.im - a.im * b.re;
                let dot = a.re * b.re + a.im * b.im;
                assert!(cross.abs() < 1e-10 * b.norm() * a.norm());
                assert!(dot > 0.0);
            }
        }
    }

    #[test]
    fn unit_weights_reduce_to_soft_thresholding() {
        // with w ≡ 1 every surviving entry is shrunk by the same amount
        let v = vec![
            C64::new(3.0, 0.0),
            C64::new(0.0, 2.0),
            C64::new(-1.0, 0.0),
        ];
        let w = vec![1.0, 1.0, 1.0];
        let out = project_weighted_l1_ball(&v, &w, 3.0);
        let shrink0 = v[0].norm() - out[0].norm();
        let shrink1 = v[1].norm() - out[1].norm();
        assert!((shrink0 - shrink1).abs() < 1e-12);
        assert!((weighted_l1_norm(&out, &w) - 3.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn projection_is_feasible_and_idempotent(
            seed in 0u64..1_000_000,
            n in 1usize..16,
            frac in 0.0f64..1.2,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (v, w) = rand_instance(&mut rng, n);
            let tau = frac * weighted_l1_norm(&v, &w);
            let out = project_weighted_l1_ball(&v, &w, tau);
            let norm = weighted_l1_norm(&out, &w);
            prop_assert!(norm <= tau * (1.0 + 1e-9) + 1e-12);
            let again = project_weighted_l1_ball(&out, &w, tau);
            for (a, b) in again.iter().zip(&out) {
                prop_assert!((a - b).norm() <= 1e-9 * (1.0 + b.norm()));
            }
        }
    }
}
