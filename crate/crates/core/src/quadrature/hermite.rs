//! Gauss-Hermite nodes and weights for the weight `e^{-t^2}`.
//!
//! Newton iteration on the orthonormal Hermite recurrence with the classical
//! asymptotic initial guesses; weights through the derivative relation
//! `p_n'(x) = sqrt(2n) p_{n-1}(x)`, `w_i = 2 / p_n'(x_i)^2`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `(p_n(x), p_{n-1}(x))` for the orthonormal Hermite polynomials.
fn hermite_pair(n: u32, x: f64) -> (f64, f64) {
    let mut pm1 = 0.0f64;
    let mut p = std::f64::consts::PI.powf(-0.25);
    for j in 0..n {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * p - (jf / (jf + 1.0)).sqrt() * pm1;
        pm1 = p;
        p = next;
    }
    (p, pm1)
}

fn compute(n: u32) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let half = (n as usize).div_ceil(2);
    let mut upper = vec![0.0f64; half];
    let mut z = 0.0f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * upper[0],
            3 => 1.91 * z - 0.91 * upper[1],
            _ => 2.0 * z - upper[i - 2],
        };
        for _ in 0..200 {
            let (p, pm1) = hermite_pair(n, z);
            let dp = (2.0 * n as f64).sqrt() * pm1;
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 * (1.0 + z.abs()) {
                break;
            }
        }
        upper[i] = z;
    }
    if n % 2 == 1 {
        // the middle root is exactly zero by symmetry
        upper[half - 1] = 0.0;
    }
    // assemble the symmetric full rule in ascending order; upper[] holds the
    // nonnegative roots from largest to smallest
    let mut full = Vec::with_capacity(n as usize);
    for i in 0..half {
        full.push(-upper[i]);
    }
    for i in (0..half).rev() {
        if n % 2 == 1 && i == half - 1 {
            continue;
        }
        full.push(upper[i]);
    }
    let weights: Vec<f64> = full
        .iter()
        .map(|&x| {
            let (_, pm1) = hermite_pair(n, x);
            let dp = (2.0 * n as f64).sqrt() * pm1;
            2.0 / (dp * dp)
        })
        .collect();
    (full, weights)
}

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

/// Cached nodes/weights for order `n`.
pub fn gauss_hermite(n: u32) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<u32, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert_with(|| Arc::new(compute(n))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn moments_exact() {
        for n in [8u32, 17, 64, 96] {
            let rule = gauss_hermite(n);
            let (x, w) = (&rule.0, &rule.1);
            let total: f64 = w.iter().sum();
            assert!((total - PI.sqrt()).abs() < 1e-12, "order {n}");
            // int t^2 e^{-t^2} = sqrt(pi)/2
            let m2: f64 = x.iter().zip(w).map(|(t, w)| w * t * t).sum();
            assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-12, "order {n}");
            // int t^4 e^{-t^2} = 3 sqrt(pi)/4
            let m4: f64 = x.iter().zip(w).map(|(t, w)| w * t.powi(4)).sum();
            assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-11, "order {n}");
        }
    }

    #[test]
    fn nodes_sorted_and_symmetric() {
        let rule = gauss_hermite(33);
        let (x, _) = (&rule.0, &rule.1);
        assert_eq!(x.len(), 33);
        for i in 1..x.len() {
            assert!(x[i] > x[i - 1]);
        }
        for i in 0..x.len() {
            assert!((x[i] + x[x.len() - 1 - i]).abs() < 1e-13);
        }
    }
}
