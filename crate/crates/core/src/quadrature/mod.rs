//! Numerical evaluation of shifted-contour Gaussian integrals
//! `int_{i xi + R^n} f dgamma` with rational or branch-tracked complex-power
//! integrands: tensor Gauss-Hermite for `n <= 3`, seeded Monte Carlo above.

pub mod de;
pub mod hermite;
mod integrands;
mod mc;

pub use integrands::{
    build_integrand_bilinear, build_integrand_d21, build_integrand_deformed,
    build_integrand_identity, build_integrand_mm, build_integrand_reciprocal, DeformedKind,
    Integrand, NumericArrangement,
};

use crate::arrangements::{BranchMode, ContourSpec};
use num_complex::Complex64;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum QuadError {
    #[error("shift vector is not regular for the integrand")]
    NonRegularShift,
    #[error("no convergence: error estimate {error_est:.3e} above tolerance at max refinement")]
    NonConvergent { error_est: f64 },
    #[error("dimension {0} unsupported here")]
    UnsupportedDimension(usize),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Auto,
    TensorGaussHermite,
    MonteCarlo,
}

/// Quadrature configuration; `order`/`samples` default per dimension
/// (GH 64 / 96^2 / 64^3, Monte Carlo 1e7). Deserializable from JSON for the
/// command-line front end.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub method: Method,
    pub order: Option<u32>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub max_refinements: u32,
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            method: Method::Auto,
            order: None,
            samples: None,
            seed: 0,
            max_refinements: 3,
            tol_rel: None,
            tol_abs: None,
        }
    }
}

impl QuadConfig {
    pub fn with_order(order: u32) -> Self {
        QuadConfig { order: Some(order), ..Default::default() }
    }
}

pub fn default_gh_order(dim: usize) -> u32 {
    match dim {
        0 | 1 => 64,
        2 => 96,
        _ => 64,
    }
}

/// Result of a quadrature run: value, an error estimate from the difference
/// of the last two refinement levels, the method descriptor and the
/// refinement history (coarsest first).
#[derive(Debug, Clone)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    pub error_est: f64,
    pub method: String,
    pub wall_time_s: f64,
    pub history: Vec<(u64, Complex64)>,
}

impl QuadratureEstimate {
    pub fn scaled(mut self, c: Complex64) -> Self {
        self.value *= c;
        self.error_est *= c.norm();
        for h in &mut self.history {
            h.1 *= c;
        }
        self
    }
}

/// Estimate `int_{i xi + R^n} f dgamma_sigma` where `dgamma_sigma` is the
/// product Gaussian with per-axis scales `sigma_i` from the integrand
/// (standard `sigma = 1` unless set).
pub fn shifted_gaussian_integral(
    f: &Integrand,
    spec: &ContourSpec,
    cfg: &QuadConfig,
) -> Result<QuadratureEstimate, QuadError> {
    let dim = f.dim();
    if spec.shift.len() != dim {
        return Err(QuadError::Domain(format!(
            "shift has dimension {}, integrand {}",
            spec.shift.len(),
            dim
        )));
    }
    if dim == 0 {
        return Ok(QuadratureEstimate {
            value: f.eval(&[]),
            error_est: 0.0,
            method: "exact/0d".into(),
            wall_time_s: 0.0,
            history: vec![],
        });
    }
    if spec.branch == BranchMode::PrincipalLog {
        // principal-log branch requires every factor in the upper half plane,
        // which the builders certify by positive pairings with the shift
        f.assert_branch_compatible(&spec.shift)?;
    }
    let method = match cfg.method {
        Method::Auto => {
            if dim <= 3 {
                Method::TensorGaussHermite
            } else {
                Method::MonteCarlo
            }
        }
        m => m,
    };
    let started = Instant::now();
    let mut est = match method {
        Method::TensorGaussHermite => gh_tensor(f, spec, cfg)?,
        Method::MonteCarlo => monte_carlo(f, spec, cfg)?,
        Method::Auto => unreachable!(),
    };
    est.wall_time_s = started.elapsed().as_secs_f64();
    let scale = est.value.norm().max(1.0e-300);
    if let Some(tr) = cfg.tol_rel {
        if est.error_est > tr * scale {
            return Err(QuadError::NonConvergent { error_est: est.error_est });
        }
    }
    if let Some(ta) = cfg.tol_abs {
        if est.error_est > ta {
            return Err(QuadError::NonConvergent { error_est: est.error_est });
        }
    }
    Ok(est)
}

fn gh_tensor(
    f: &Integrand,
    spec: &ContourSpec,
    cfg: &QuadConfig,
) -> Result<QuadratureEstimate, QuadError> {
    let dim = f.dim();
    if dim > 3 && cfg.method == Method::TensorGaussHermite {
        return Err(QuadError::UnsupportedDimension(dim));
    }
    let top = cfg.order.unwrap_or(default_gh_order(dim));
    let levels = cfg.max_refinements.max(1);
    let mut orders: Vec<u32> = (0..levels)
        .map(|i| (top >> (levels - 1 - i)).max(6))
        .collect();
    orders.dedup();
    let mut history = Vec::new();
    let mut prev: Option<Complex64> = None;
    let mut error_est = f64::INFINITY;
    for &order in &orders {
        let value = gh_tensor_once(f, spec, order);
        history.push((order as u64, value));
        if let Some(p) = prev {
            error_est = (value - p).norm();
        }
        prev = Some(value);
        let scale = value.norm().max(1e-300);
        if let (Some(tr), true) = (cfg.tol_rel, history.len() >= 2) {
            if error_est <= tr * scale {
                break;
            }
        }
    }
    Ok(QuadratureEstimate {
        value: prev.unwrap(),
        error_est,
        method: format!("tensor-hermite({})", history.last().unwrap().0),
        wall_time_s: 0.0,
        history,
    })
}

fn gh_tensor_once(f: &Integrand, spec: &ContourSpec, order: u32) -> Complex64 {
    let dim = f.dim();
    let rule = hermite::gauss_hermite(order);
    let (nodes, weights) = (&rule.0, &rule.1);
    let sigmas = f.axis_scales();
    let xi = &spec.shift;
    // prefactor e^{sum xi_i^2 / (2 sigma_i^2)}; pi^{-n/2} from the GH weights
    let pref: f64 = xi
        .iter()
        .zip(sigmas)
        .map(|(x, s)| x * x / (2.0 * s * s))
        .sum::<f64>()
        .exp()
        / std::f64::consts::PI.powf(dim as f64 / 2.0);
    let m = nodes.len();
    let mut idx = vec![0usize; dim];
    let mut point = vec![Complex64::new(0.0, 0.0); dim];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0f64;
        let mut phase = 0.0f64;
        for a in 0..dim {
            let t = nodes[idx[a]];
            let u = sigmas[a] * std::f64::consts::SQRT_2 * t;
            point[a] = Complex64::new(u, xi[a]);
            w *= weights[idx[a]];
            phase -= u * xi[a] / (sigmas[a] * sigmas[a]);
        }
        let val = f.eval(&point) * Complex64::new(0.0, phase).exp() * w;
        // Kahan summation keeps the large cancellations deterministic and tight
        let y = val - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // advance multi-index
        let mut a = 0;
        loop {
            idx[a] += 1;
            if idx[a] < m {
                break;
            }
            idx[a] = 0;
            a += 1;
            if a == dim {
                return sum * pref;
            }
        }
    }
}

fn monte_carlo(
    f: &Integrand,
    spec: &ContourSpec,
    cfg: &QuadConfig,
) -> Result<QuadratureEstimate, QuadError> {
    let dim = f.dim();
    let samples = cfg.samples.unwrap_or(10_000_000);
    let sigmas = f.axis_scales().to_vec();
    let xi = spec.shift.clone();
    let pref: f64 = xi
        .iter()
        .zip(&sigmas)
        .map(|(x, s)| x * x / (2.0 * s * s))
        .sum::<f64>()
        .exp();
    let integrand = |z: &[f64]| -> Complex64 {
        let mut point = vec![Complex64::new(0.0, 0.0); dim];
        let mut phase = 0.0;
        for a in 0..dim {
            let u = sigmas[a] * z[a];
            point[a] = Complex64::new(u, xi[a]);
            phase -= u * xi[a] / (sigmas[a] * sigmas[a]);
        }
        f.eval(&point) * Complex64::new(0.0, phase).exp()
    };
    let (mean, half_mean) = mc::gaussian_mean(integrand, dim, samples, cfg.seed);
    let value = mean * pref;
    let half = half_mean * pref;
    Ok(QuadratureEstimate {
        value,
        error_est: (value - half).norm(),
        method: format!("monte-carlo({samples},seed={})", cfg.seed),
        wall_time_s: 0.0,
        history: vec![(samples / 2, half), (samples, value)],
    })
}

/// Evaluate at two shifts and compare within the combined error estimates.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub first: QuadratureEstimate,
    pub second: QuadratureEstimate,
    pub difference: f64,
    pub combined_err: f64,
    pub pass: bool,
}

pub fn contour_independence_check(
    f: &Integrand,
    spec1: &ContourSpec,
    spec2: &ContourSpec,
    cfg: &QuadConfig,
) -> Result<IndependenceReport, QuadError> {
    let first = shifted_gaussian_integral(f, spec1, cfg)?;
    let second = shifted_gaussian_integral(f, spec2, cfg)?;
    let difference = (first.value - second.value).norm();
    let scale = first.value.norm().max(second.value.norm()).max(1e-300);
    // floor the bound at combined roundoff; the two error estimates can both
    // be zero-ish when the ladder has fully converged
    let combined_err = (first.error_est + second.error_est).max(1e-11 * scale) + 1e-13;
    let pass = difference <= combined_err;
    Ok(IndependenceReport { first, second, difference, combined_err, pass })
}
