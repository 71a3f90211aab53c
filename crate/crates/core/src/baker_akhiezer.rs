//! Construction of the Baker-Akhiezer function via iterated application of
//! the shifted Calogero-Moser operator, axiom verification, the finite
//! `e^{L/2}` series and the bilinear form on quasi-invariants.

use crate::arrangements::{Arrangement, ContourSpec};
use crate::exact_algebra::{Block, ExpPoly, MultiPoly, Scalar};
use crate::gamma::factorial;
use crate::quadrature::{
    build_integrand_bilinear, shifted_gaussian_integral, QuadConfig, QuadError, QuadratureEstimate,
};
use crate::AlgebraError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Default cap on stored monomials during the Berest iteration.
pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

/// Berest's construction:
/// `phi = (2^{|m|} |m|!)^{-1} (L - lambda^2)^{|m|} (A_m(x)^2 e^{(x,lambda)})`.
///
/// Every division by `(alpha, x)` along the way must be exact; a failure is
/// surfaced as `NonDivisible`. The polynomial part has highest x-degree term
/// `A_m(x) A_m(lambda)` and the x-degree drops by exactly one per
/// application, ending at `|m|`.
pub fn construct_berest(arrangement: &Arrangement, budget: usize) -> Result<ExpPoly, BaError> {
    let total = arrangement.total_multiplicity() as u64;
    let am2 = arrangement.a_m_poly(Block::X).pow(2)?;
    if am2.num_terms() > budget {
        return Err(AlgebraError::TermBudgetExceeded { budget }.into());
    }
    let mut phi = ExpPoly::new(am2);
    for _ in 0..total {
        phi = phi.apply_shifted_cm_budgeted(arrangement, budget)?;
    }
    let denom = BigRational::from_integer(BigInt::one() << total) * factorial(total);
    Ok(ExpPoly::new(
        phi.poly.scale(&Scalar::from_rational(denom.recip())),
    ))
}

/// `phi(0, 0)`: the constant term of the polynomial part.
pub fn value_at_origin(phi: &ExpPoly) -> Scalar {
    phi.poly.constant_term()
}

/// Verification report for the four defining properties.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Odd normal derivatives up to `2 m_alpha - 1` vanish on each `Pi_alpha`.
    pub quasi_invariance: bool,
    /// `P(x, lambda) = P(lambda, x)`.
    pub symmetry: bool,
    /// Highest x-degree part equals `A_m(x) A_m(lambda)`.
    pub highest_term: bool,
    /// `L phi = lambda^2 phi` (the shifted operator annihilates `phi`).
    pub eigenfunction: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.quasi_invariance && self.symmetry && self.highest_term && self.eigenfunction
    }
}

/// Check the Baker-Akhiezer axioms for `phi` against the arrangement.
///
/// Quasi-invariance is decided by exact polynomial reduction: on `Pi_alpha`
/// the k-th normal derivative of `P e^{(x,lambda)}` is
/// `sum_i C(k,i) (alpha,lambda)^{k-i} d_alpha^i P` modulo `(alpha, x)`,
/// and the remainder must vanish identically.
pub fn check_axioms(phi: &ExpPoly, arrangement: &Arrangement) -> AxiomReport {
    let p = &phi.poly;
    let n = arrangement.dim();
    assert_eq!(p.arity(), n);

    let mut quasi_invariance = true;
    'outer: for v in arrangement.vectors() {
        // derivatives d_alpha^i P for i = 0 .. 2m-1
        let top = (2 * v.multiplicity - 1) as usize;
        let mut ders: Vec<MultiPoly> = Vec::with_capacity(top + 1);
        ders.push(p.clone());
        for i in 1..=top {
            let next = ders[i - 1]
                .dir_derivative(&v.coords, Block::X)
                .expect("arity checked");
            ders.push(next);
        }
        let al = MultiPoly::linear_form(n, Block::Lambda, &v.coords);
        let mut al_pows: Vec<MultiPoly> = vec![MultiPoly::one(n)];
        for i in 1..=top {
            let next = al_pows[i - 1].mul(&al).expect("compat");
            al_pows.push(next);
        }
        for k in (1..=top).step_by(2) {
            let mut q = MultiPoly::zero(n);
            let mut binom = BigRational::one();
            for i in 0..=k {
                // binom = C(k, i)
                let term = ders[i].mul(&al_pows[k - i]).expect("compat");
                q = q
                    .add(&term.scale(&Scalar::from_rational(binom.clone())))
                    .expect("compat");
                binom = binom * BigRational::from_integer(BigInt::from((k - i) as i64))
                    / BigRational::from_integer(BigInt::from((i + 1) as i64));
            }
            let (_, rem) = q
                .div_linear_with_remainder(&v.coords, Block::X)
                .expect("arity checked");
            if !rem.is_zero() {
                quasi_invariance = false;
                break 'outer;
            }
        }
    }

    let symmetry = p.swap_blocks() == *p;

    let deg = p.degree(Block::X);
    let am_x = arrangement.a_m_poly(Block::X);
    let am_l = arrangement.a_m_poly(Block::Lambda);
    let highest_term = match am_x.mul(&am_l) {
        Ok(target) => p.homogeneous_part(Block::X, deg) == target,
        Err(_) => false,
    };

    let eigenfunction = match phi.apply_shifted_cm(arrangement) {
        Ok(out) => out.poly.is_zero(),
        Err(_) => false,
    };

    AxiomReport { quasi_invariance, symmetry, highest_term, eigenfunction }
}

/// Finite series `e^{c L} p = sum_k c^k L^k p / k!` for a quasi-invariant
/// polynomial `p` in the x variables; `L` lowers the degree by two, so the
/// series terminates. `NonDivisible` signals `p` outside the quasi-invariant
/// ring.
pub fn exp_scaled_l(
    p: &MultiPoly,
    arrangement: &Arrangement,
    c: &Scalar,
) -> Result<MultiPoly, AlgebraError> {
    let mut sum = p.clone();
    let mut term = p.clone();
    let mut k = 0u64;
    let max_iter = p.degree(Block::X) as u64 / 2 + 2;
    while !term.is_zero() {
        assert!(
            k <= max_iter,
            "operator failed to lower the degree; series would not terminate"
        );
        term = apply_l(&term, arrangement)?;
        k += 1;
        let coeff = c
            .pow(k as u32)
            .mul_ref(&Scalar::from_rational(factorial(k).recip()));
        sum = sum.add(&term.scale(&coeff))?;
    }
    Ok(sum)
}

/// `e^{L/2} p`.
pub fn exp_half_l(p: &MultiPoly, arrangement: &Arrangement) -> Result<MultiPoly, AlgebraError> {
    exp_scaled_l(p, arrangement, &Scalar::ratio(1, 2))
}

/// `L p = Delta p - sum_alpha 2 m_alpha (alpha,x)^{-1} d_alpha p`.
pub fn apply_l(p: &MultiPoly, arrangement: &Arrangement) -> Result<MultiPoly, AlgebraError> {
    let n = arrangement.dim();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        out = out.add(&p.derivative(Block::X, i).derivative(Block::X, i))?;
    }
    for v in arrangement.vectors() {
        let d = p.dir_derivative(&v.coords, Block::X)?;
        let q = d.exact_div_linear(&v.coords, Block::X)?;
        out = out.sub(&q.scale(&Scalar::from_int(2 * v.multiplicity as i64)))?;
    }
    Ok(out)
}

/// Bilinear form on quasi-invariants through its contour-integral
/// representation:
/// `(p, q) = phi(0,0) int (e^{L/2}p)(-ix) (e^{L/2}q)(ix) / A_m(x)^2 dgamma`.
pub fn bilinear_form(
    p: &MultiPoly,
    q: &MultiPoly,
    arrangement: &Arrangement,
    phi00: &Scalar,
    spec: &ContourSpec,
    cfg: &QuadConfig,
) -> Result<QuadratureEstimate, BaError> {
    let ep = exp_half_l(p, arrangement)?;
    let eq = exp_half_l(q, arrangement)?;
    let integrand = build_integrand_bilinear(&ep, &eq, arrangement);
    let est = shifted_gaussian_integral(&integrand, spec, cfg)?;
    Ok(est.scaled(Complex64::new(phi00.to_f64(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{build_coxeter, CoxeterLabel, Normalization};

    fn rank_one(m: u32) -> Arrangement {
        Arrangement::new(1, vec![(vec![Scalar::sqrt_int(2)], m)]).unwrap()
    }

    #[test]
    fn berest_rank_one_m1() {
        let phi = construct_berest(&rank_one(1), DEFAULT_TERM_BUDGET).unwrap();
        // 2 x1 l1 - 2
        let expect = MultiPoly::var(1, Block::X, 0)
            .mul(&MultiPoly::var(1, Block::Lambda, 0))
            .unwrap()
            .scale(&Scalar::from_int(2))
            .sub(&MultiPoly::constant(1, Scalar::from_int(2)))
            .unwrap();
        assert_eq!(phi.poly, expect);
        assert_eq!(value_at_origin(&phi), Scalar::from_int(-2));
        assert!(check_axioms(&phi, &rank_one(1)).all_pass());
    }

    #[test]
    fn berest_rank_one_values_at_origin() {
        for (m, expect) in [(2u32, 12i64), (3, -120)] {
            let arr = rank_one(m);
            let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
            assert_eq!(value_at_origin(&phi), Scalar::from_int(expect), "m={m}");
            assert!(check_axioms(&phi, &arr).all_pass(), "m={m}");
        }
    }

    #[test]
    fn degree_drops_by_one_per_application() {
        let arrangements = vec![
            rank_one(2),
            build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap().0,
            build_coxeter(CoxeterLabel::B(2), Normalization::Norm2).unwrap().0,
        ];
        for arr in arrangements {
            let am2 = arr.a_m_poly(Block::X).pow(2).unwrap();
            let mut cur = ExpPoly::new(am2);
            let mut deg = cur.poly.degree(Block::X);
            for _ in 0..arr.total_multiplicity() {
                cur = cur.apply_shifted_cm(&arr).unwrap();
                let nd = cur.poly.degree(Block::X);
                assert_eq!(nd, deg - 1);
                deg = nd;
            }
            assert_eq!(deg as u32, arr.total_multiplicity());
        }
    }

    #[test]
    fn perturbed_phi_fails_quasi_invariance() {
        let phi = construct_berest(&rank_one(1), DEFAULT_TERM_BUDGET).unwrap();
        // 2 x1 l1 - 1 instead of 2 x1 l1 - 2
        let bad = ExpPoly::new(
            phi.poly
                .add(&MultiPoly::constant(1, Scalar::one()))
                .unwrap(),
        );
        let report = check_axioms(&bad, &rank_one(1));
        assert!(!report.quasi_invariance);
        assert!(!report.eigenfunction);
        assert!(report.symmetry);
    }

    #[test]
    fn a2_axioms() {
        let (arr, _) = build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap();
        let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(value_at_origin(&phi), Scalar::from_int(-12));
        assert!(check_axioms(&phi, &arr).all_pass());
    }

    #[test]
    fn origin_closed_form_bridge_larger_groups() {
        // phi(0,0) * int dgamma/A_m^2 = 1 exactly, including a quadratic-field
        // construction (G2 over Q(sqrt3)) and a rank-3 rational one (A3)
        use crate::closed_forms::contour_gaussian;
        for label in [CoxeterLabel::G2, CoxeterLabel::A(3)] {
            let (arr, datum) = build_coxeter(label, Normalization::Norm2).unwrap();
            let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
            let phi00 = value_at_origin(&phi);
            let cg = contour_gaussian(&datum, 1).exact.unwrap();
            assert_eq!(phi00.mul_ref(&cg), Scalar::one(), "{label}");
        }
    }

    #[test]
    fn term_budget_trips() {
        let (arr, _) = build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap();
        assert!(matches!(
            construct_berest(&arr, 10),
            Err(BaError::Algebra(AlgebraError::TermBudgetExceeded { .. }))
        ));
    }

    #[test]
    fn product_arrangement_factorizes() {
        // phi_{A (+) B} = phi_A phi_B on A1 x A1
        let a = rank_one(1);
        let sum = a.direct_sum(&a).unwrap();
        let phi2 = construct_berest(&sum, DEFAULT_TERM_BUDGET).unwrap();
        // product of two rank-one functions, lifted to 2D
        let x1l1 = MultiPoly::var(2, Block::X, 0)
            .mul(&MultiPoly::var(2, Block::Lambda, 0))
            .unwrap();
        let x2l2 = MultiPoly::var(2, Block::X, 1)
            .mul(&MultiPoly::var(2, Block::Lambda, 1))
            .unwrap();
        let two = |p: &MultiPoly| {
            p.scale(&Scalar::from_int(2))
                .sub(&MultiPoly::constant(2, Scalar::from_int(2)))
                .unwrap()
        };
        let expect = two(&x1l1).mul(&two(&x2l2)).unwrap();
        assert_eq!(phi2.poly, expect);
        // phi(0,0) multiplies: (-2)^2
        assert_eq!(value_at_origin(&phi2), Scalar::from_int(4));
    }

    #[test]
    fn exp_half_l_examples() {
        let arr = rank_one(1);
        // p = 1 -> 1
        let one = MultiPoly::one(1);
        assert_eq!(exp_half_l(&one, &arr).unwrap(), one);
        // p = x^2 -> x^2 - 1
        let x2 = MultiPoly::var(1, Block::X, 0).pow(2).unwrap();
        let expect = x2.sub(&MultiPoly::one(1)).unwrap();
        assert_eq!(exp_half_l(&x2, &arr).unwrap(), expect);
        // p = x is not quasi-invariant
        let x = MultiPoly::var(1, Block::X, 0);
        assert!(matches!(
            exp_half_l(&x, &arr),
            Err(AlgebraError::NonDivisible { .. })
        ));
    }

    #[test]
    fn exp_l_round_trip() {
        // e^{L/2} then e^{-L/2} returns the input
        let arr = rank_one(1);
        let p = MultiPoly::var(1, Block::X, 0).pow(4).unwrap();
        let up = exp_scaled_l(&p, &arr, &Scalar::ratio(1, 2)).unwrap();
        let back = exp_scaled_l(&up, &arr, &Scalar::ratio(-1, 2)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn wm_is_l_harmonic() {
        // w_m = (sqrt2 x)^{2m+1} for rank one: L w = 0
        let arr = rank_one(1);
        let w = arr.a_m_poly(Block::X).pow(3).unwrap(); // m=1: A_m^3 = (sqrt2 x)^3
        assert!(apply_l(&w, &arr).unwrap().is_zero());
        assert_eq!(exp_half_l(&w, &arr).unwrap(), w);
    }
}
