//! Integrand builders: rational Macdonald-Mehta denominators, the
//! Baker-Akhiezer identity kernel, the bilinear-form kernel, the deformed
//! families and the 3-parameter exploratory integrand.

use crate::arrangements::{clearance, Arrangement, BranchMode, ContourSpec};
use crate::exact_algebra::{Block, ExpPoly, MultiPoly};
use crate::quadrature::QuadError;
use num_complex::Complex64;

/// Floating-coordinate arrangement data: vectors with integer multiplicities.
#[derive(Debug, Clone)]
pub struct NumericArrangement {
    pub dim: usize,
    pub vectors: Vec<(Vec<f64>, u32)>,
}

impl NumericArrangement {
    pub fn from_exact(arrangement: &Arrangement) -> Self {
        NumericArrangement {
            dim: arrangement.dim(),
            vectors: arrangement.numeric_vectors(),
        }
    }
}

type ExtraFn = Box<dyn Fn(&[Complex64]) -> Complex64 + Send + Sync>;

/// One multiplicative factor `(alpha, x)^{power}`.
#[derive(Debug, Clone)]
struct Factor {
    alpha: Vec<f64>,
    power: Complex64,
    /// integer powers use exact `powi` and are branch-free
    int_power: Option<i32>,
}

impl Factor {
    fn new(alpha: Vec<f64>, power: Complex64) -> Self {
        let int_power = if power.im == 0.0 && (power.re - power.re.round()).abs() < 1e-12 {
            Some(power.re.round() as i32)
        } else {
            None
        };
        Factor { alpha, power, int_power }
    }
}

/// Callable integrand on the shifted plane, together with per-axis Gaussian
/// scales (`sigma_i = 1` is the standard measure `dgamma`).
pub struct Integrand {
    dim: usize,
    axis_scales: Vec<f64>,
    factors: Vec<Factor>,
    extra: Option<ExtraFn>,
    branch: BranchMode,
}

impl Integrand {
    fn new(dim: usize) -> Self {
        Integrand {
            dim,
            axis_scales: vec![1.0; dim],
            factors: Vec::new(),
            extra: None,
            branch: BranchMode::Rational,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn axis_scales(&self) -> &[f64] {
        &self.axis_scales
    }

    pub fn branch(&self) -> BranchMode {
        self.branch
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut v = match &self.extra {
            Some(f) => f(x),
            None => Complex64::new(1.0, 0.0),
        };
        for f in &self.factors {
            let mut z = Complex64::new(0.0, 0.0);
            for (a, xi) in f.alpha.iter().zip(x) {
                z += a * xi;
            }
            v *= match f.int_power {
                Some(p) => z.powi(p),
                None => (f.power * z.ln()).exp(),
            };
        }
        v
    }

    /// For the principal-log branch every non-integer-power factor must keep
    /// a fixed half-plane along the contour: `(alpha, xi) != 0`, and the
    /// builders arrange `(alpha, xi) > 0` (positive chamber).
    pub fn assert_branch_compatible(&self, shift: &[f64]) -> Result<(), QuadError> {
        for f in &self.factors {
            if f.int_power.is_some() {
                continue;
            }
            let dot: f64 = f.alpha.iter().zip(shift).map(|(a, s)| a * s).sum();
            let norm: f64 = f.alpha.iter().map(|a| a * a).sum::<f64>().sqrt();
            if dot <= 1e-9 * norm {
                return Err(QuadError::NonRegularShift);
            }
        }
        Ok(())
    }
}

/// `prod_alpha (alpha, x)^{2 k_alpha}` on the shifted plane. Integer
/// exponents are branch-free; otherwise the principal log per factor is
/// used and the shift must pair positively with every such vector.
pub fn build_integrand_mm(vectors: &[(Vec<f64>, Complex64)]) -> Integrand {
    let dim = vectors.first().map(|(v, _)| v.len()).unwrap_or(0);
    let mut f = Integrand::new(dim);
    let mut any_branch = false;
    for (alpha, two_k) in vectors {
        let factor = Factor::new(alpha.clone(), *two_k);
        any_branch |= factor.int_power.is_none();
        f.factors.push(factor);
    }
    f.branch = if any_branch { BranchMode::PrincipalLog } else { BranchMode::Rational };
    f
}

/// `1 / prod (alpha, x)^{2 m_alpha}` for an arrangement: the integrand of
/// the `phi(0,0)` reciprocal.
pub fn build_integrand_reciprocal(arrangement: &NumericArrangement) -> Integrand {
    let pairs: Vec<(Vec<f64>, Complex64)> = arrangement
        .vectors
        .iter()
        .map(|(v, m)| (v.clone(), Complex64::new(-2.0 * *m as f64, 0.0)))
        .collect();
    build_integrand_mm(&pairs)
}

/// Kernel `phi(-ix, lambda) phi(ix, mu) / A_m(x)^2` of the self-duality
/// identity.
pub fn build_integrand_identity(
    phi: &ExpPoly,
    lambda: &[Complex64],
    mu: &[Complex64],
    arrangement: &Arrangement,
) -> Integrand {
    let dim = arrangement.dim();
    assert_eq!(phi.arity(), dim);
    let p_lambda = phi.poly.compile_x(lambda);
    let p_mu = phi.poly.compile_x(mu);
    let lambda_v = lambda.to_vec();
    let mu_v = mu.to_vec();
    let mut f = build_integrand_reciprocal(&NumericArrangement::from_exact(arrangement));
    f.extra = Some(Box::new(move |x: &[Complex64]| {
        let i = Complex64::new(0.0, 1.0);
        let minus_ix: Vec<Complex64> = x.iter().map(|z| -i * z).collect();
        let plus_ix: Vec<Complex64> = x.iter().map(|z| i * z).collect();
        let pair1: Complex64 = minus_ix.iter().zip(&lambda_v).map(|(a, b)| a * b).sum();
        let pair2: Complex64 = plus_ix.iter().zip(&mu_v).map(|(a, b)| a * b).sum();
        p_lambda.eval(&minus_ix) * pair1.exp() * p_mu.eval(&plus_ix) * pair2.exp()
    }));
    f
}

/// Kernel `p(-ix) q(ix) / A_m(x)^2` of the bilinear form (with `p`, `q`
/// already pushed through `e^{L/2}`).
pub fn build_integrand_bilinear(
    p: &MultiPoly,
    q: &MultiPoly,
    arrangement: &Arrangement,
) -> Integrand {
    let dim = arrangement.dim();
    assert_eq!(p.arity(), dim);
    assert_eq!(q.arity(), dim);
    assert_eq!(p.degree(Block::Lambda), 0, "quasi-invariants live in the x block");
    assert_eq!(q.degree(Block::Lambda), 0, "quasi-invariants live in the x block");
    let zeros = vec![Complex64::new(0.0, 0.0); dim];
    let cp = p.compile_x(&zeros);
    let cq = q.compile_x(&zeros);
    let mut f = build_integrand_reciprocal(&NumericArrangement::from_exact(arrangement));
    f.extra = Some(Box::new(move |x: &[Complex64]| {
        let i = Complex64::new(0.0, 1.0);
        let minus_ix: Vec<Complex64> = x.iter().map(|z| -i * z).collect();
        let plus_ix: Vec<Complex64> = x.iter().map(|z| i * z).collect();
        cp.eval(&minus_ix) * cq.eval(&plus_ix)
    }));
    f
}

/// Which deformed family an integrand belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeformedKind {
    /// Variables `(t_1..t_n, tau_1..tau_m)`, kernel
    /// `prod (t_i - t_j)^{2/rho} prod (tau_i - tau_j)^{2 rho}
    ///  / prod (sqrt(-rho) t_i - tau_j)^2`.
    A { n: u32, m: u32, rho: f64 },
    /// Variables `(t_1..t_n, tau_1..tau_m)`, kernel
    /// `prod t_i^{-2a/r+1} prod tau_j^{2a+1} prod (t_i^2 - t_j^2)^{2/rho}
    ///  prod (tau_i^2 - tau_j^2)^{2 rho} / prod (rho t_i^2 + tau_j^2)^2`.
    Bc { n: u32, m: u32, alpha: f64, rho: f64 },
}

/// Build the deformed integrand together with a contour obeying the stacking
/// `xi_n > ... > xi_1 > eta_m > ... > eta_1 > 0` (spacing `delta`).
pub fn build_integrand_deformed(
    kind: DeformedKind,
    delta: f64,
) -> Result<(Integrand, ContourSpec), QuadError> {
    let (n, m, rho) = match kind {
        DeformedKind::A { n, m, rho } | DeformedKind::Bc { n, m, alpha: _, rho } => (n, m, rho),
    };
    if rho >= 0.0 {
        return Err(QuadError::Domain("rho must be negative".into()));
    }
    let dim = (n + m) as usize;
    let mut shift = Vec::with_capacity(dim);
    for i in 1..=n {
        shift.push(delta * (m + i) as f64);
    }
    for j in 1..=m {
        shift.push(delta * j as f64);
    }
    let mut f = Integrand::new(dim);
    let cp = |z: Complex64, p: f64| -> Complex64 {
        if (p - p.round()).abs() < 1e-12 {
            z.powi(p.round() as i32)
        } else {
            (z.ln() * p).exp()
        }
    };
    let sq = (-rho).sqrt();
    let nn = n as usize;
    let mm = m as usize;
    match kind {
        DeformedKind::A { .. } => {
            f.extra = Some(Box::new(move |x: &[Complex64]| {
                let (t, tau) = x.split_at(nn);
                let mut v = Complex64::new(1.0, 0.0);
                for i in 0..nn {
                    for j in (i + 1)..nn {
                        v *= cp(t[i] - t[j], 2.0 / rho);
                    }
                }
                for i in 0..mm {
                    for j in (i + 1)..mm {
                        v *= cp(tau[i] - tau[j], 2.0 * rho);
                    }
                }
                for ti in t {
                    for tj in tau {
                        let d = sq * ti - tj;
                        v /= d * d;
                    }
                }
                v
            }));
        }
        DeformedKind::Bc { alpha, .. } => {
            f.extra = Some(Box::new(move |x: &[Complex64]| {
                let (t, tau) = x.split_at(nn);
                let mut v = Complex64::new(1.0, 0.0);
                for ti in t {
                    v *= cp(*ti, -2.0 * alpha / rho + 1.0);
                }
                for tj in tau {
                    v *= cp(*tj, 2.0 * alpha + 1.0);
                }
                for i in 0..nn {
                    for j in (i + 1)..nn {
                        v *= cp(t[i] * t[i] - t[j] * t[j], 2.0 / rho);
                    }
                }
                for i in 0..mm {
                    for j in (i + 1)..mm {
                        v *= cp(tau[i] * tau[i] - tau[j] * tau[j], 2.0 * rho);
                    }
                }
                for ti in t {
                    for tj in tau {
                        let d = rho * ti * ti + tj * tj;
                        v /= d * d;
                    }
                }
                v
            }));
        }
    }
    // regularity of the stacking against the pole hyperplanes
    let pole_vectors = deformed_pole_vectors(kind);
    let clr = clearance(&pole_vectors, &shift);
    if !pole_vectors.is_empty() && clr < 1e-9 {
        return Err(QuadError::NonRegularShift);
    }
    let noninteger = |p: f64| (p - p.round()).abs() > 1e-12;
    let any_branch = match kind {
        DeformedKind::A { .. } => noninteger(2.0 / rho) || noninteger(2.0 * rho),
        DeformedKind::Bc { alpha, .. } => {
            noninteger(2.0 / rho)
                || noninteger(2.0 * rho)
                || noninteger(-2.0 * alpha / rho + 1.0)
                || noninteger(2.0 * alpha + 1.0)
        }
    };
    f.branch = if any_branch { BranchMode::PrincipalLog } else { BranchMode::Rational };
    let branch = f.branch;
    Ok((f, ContourSpec { shift, branch, clearance: clr }))
}

fn deformed_pole_vectors(kind: DeformedKind) -> Vec<Vec<f64>> {
    let (n, m, rho) = match kind {
        DeformedKind::A { n, m, rho } | DeformedKind::Bc { n, m, alpha: _, rho } => (n, m, rho),
    };
    let dim = (n + m) as usize;
    let sq = (-rho).sqrt();
    let mut out = Vec::new();
    let mut push = |entries: &[(usize, f64)]| {
        let mut v = vec![0.0; dim];
        for (i, c) in entries {
            v[*i] = *c;
        }
        out.push(v);
    };
    // the BC kernel also has coordinate-power factors
    if matches!(kind, DeformedKind::Bc { .. }) {
        for i in 0..dim {
            push(&[(i, 1.0)]);
        }
    }
    for i in 0..n as usize {
        for j in 0..m as usize {
            match kind {
                DeformedKind::A { .. } => push(&[(i, sq), (n as usize + j, -1.0)]),
                DeformedKind::Bc { .. } => {
                    push(&[(i, sq), (n as usize + j, -1.0)]);
                    push(&[(i, sq), (n as usize + j, 1.0)]);
                }
            }
        }
    }
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            push(&[(i, 1.0), (j, -1.0)]);
            if matches!(kind, DeformedKind::Bc { .. }) {
                push(&[(i, 1.0), (j, 1.0)]);
            }
        }
    }
    for i in 0..m as usize {
        for j in (i + 1)..m as usize {
            push(&[(n as usize + i, 1.0), (n as usize + j, -1.0)]);
            if matches!(kind, DeformedKind::Bc { .. }) {
                push(&[(n as usize + i, 1.0), (n as usize + j, 1.0)]);
            }
        }
    }
    out
}

/// Exploratory 3D integrand for the three-parameter family: value of the
/// plain integral is `prefactor * estimate` where the estimate integrates
/// against `dgamma_sigma` with `sigma_i = sqrt(lambda_i / 2)`.
pub struct D21Integral {
    pub integrand: Integrand,
    pub spec: ContourSpec,
    pub prefactor: f64,
    pub exponents: [f64; 3],
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pointwise_mm_values() {
        // absolute-style positive power at a real point: (sqrt2 * 1)^2 = 2
        let f = build_integrand_mm(&[(vec![2f64.sqrt()], c(2.0, 0.0))]);
        assert!((f.eval(&[c(1.0, 0.0)]) - c(2.0, 0.0)).norm() < 1e-14);
        // coupling -1 on the shifted plane at u = 0, xi = 1: 1/(2 i^2) = -1/2
        let f = build_integrand_mm(&[(vec![2f64.sqrt()], c(-2.0, 0.0))]);
        assert!((f.eval(&[c(0.0, 1.0)]) - c(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn branch_assertion_requires_positive_pairing() {
        let f = build_integrand_mm(&[(vec![1.0, 0.0], c(0.5, 0.0))]);
        assert_eq!(f.branch(), crate::arrangements::BranchMode::PrincipalLog);
        assert!(f.assert_branch_compatible(&[1.0, 0.0]).is_ok());
        assert!(f.assert_branch_compatible(&[-1.0, 0.0]).is_err());
        // integer powers stay branch-free and skip the check
        let g = build_integrand_mm(&[(vec![1.0, 0.0], c(-2.0, 0.0))]);
        assert_eq!(g.branch(), crate::arrangements::BranchMode::Rational);
        assert!(g.assert_branch_compatible(&[-1.0, 0.0]).is_ok());
    }

    #[test]
    fn deformed_shift_stacking() {
        let (_, spec) =
            build_integrand_deformed(DeformedKind::A { n: 2, m: 1, rho: -2.0 }, 1.0).unwrap();
        // [xi_1, xi_2, eta_1] with xi_2 > xi_1 > eta_1 > 0
        assert_eq!(spec.shift, vec![2.0, 3.0, 1.0]);
        assert!(spec.clearance > 0.1);
    }
}

pub fn build_integrand_d21(lambdas: [f64; 3], shift: [f64; 3]) -> Result<D21Integral, QuadError> {
    if lambdas.iter().any(|&l| l <= 0.0) {
        return Err(QuadError::Domain("lambda parameters must be positive".into()));
    }
    let [l1, l2, l3] = lambdas;
    let exps = [
        (l2 + l3 - l1) / (2.0 * l1),
        (l3 + l1 - l2) / (2.0 * l2),
        (l1 + l2 - l3) / (2.0 * l3),
    ];
    // seven pole hyperplanes: the coordinate planes and the four sums
    let mut pole_vectors: Vec<Vec<f64>> = vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ];
    for (s2, s3) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        pole_vectors.push(vec![1.0, s2, s3]);
    }
    let clr = clearance(&pole_vectors, &shift);
    if clr < 1e-9 {
        return Err(QuadError::NonRegularShift);
    }
    let mut f = Integrand::new(3);
    f.axis_scales = vec![
        (l1 / 2.0).sqrt(),
        (l2 / 2.0).sqrt(),
        (l3 / 2.0).sqrt(),
    ];
    for (i, &e) in exps.iter().enumerate() {
        let mut alpha = vec![0.0; 3];
        alpha[i] = 1.0;
        f.factors.push(Factor::new(alpha, Complex64::new(-2.0 * e, 0.0)));
    }
    for (s2, s3) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        f.factors
            .push(Factor::new(vec![1.0, s2, s3], Complex64::new(-2.0, 0.0)));
    }
    let any_branch = f.factors.iter().any(|fa| fa.int_power.is_none());
    f.branch = if any_branch { BranchMode::PrincipalLog } else { BranchMode::Rational };
    let branch = f.branch;
    let prefactor = (std::f64::consts::PI * l1).sqrt()
        * (std::f64::consts::PI * l2).sqrt()
        * (std::f64::consts::PI * l3).sqrt();
    Ok(D21Integral {
        integrand: f,
        spec: ContourSpec { shift: shift.to_vec(), branch, clearance: clr },
        prefactor,
        exponents: exps,
    })
}
