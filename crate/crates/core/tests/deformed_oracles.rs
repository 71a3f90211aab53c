//! Independent quadrature oracles for the half-line limits of the arc
//! integrals: rotated-ray double-exponential quadrature against the
//! closed-form evaluator, including the integer-coupling limits.

use mmba::closed_forms::{m1_deformed_b, m_deformed_a};
use mmba::quadrature::de::ray_integral;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn cpow(z: Complex64, p: Complex64) -> Complex64 {
    (z.ln() * p).exp()
}

/// `M_1(1,0)`: single rotated ray from 0 to infinity.
#[test]
fn m1_single_ray_oracle() {
    for (a, r) in [(2.5, -1.5), (0.8, -1.7), (3.0, -2.0)] {
        let f = move |t: Complex64| cpow(t, c(-a / r)) * (t / (2.0 * r)).exp();
        let (value, err) = ray_integral(f, 0.3, 7, 200.0 * (-r));
        let closed = m1_deformed_b(1, 0, c(a), c(r)).unwrap().value;
        assert!(
            (value - closed).norm() <= 1e-9 * closed.norm() + err,
            "a={a} r={r}: ray={value} closed={closed}"
        );
    }
}

/// `M_1(1,1)`: tensor product of an upper and a lower rotated ray; the
/// integer coupling `rho = -1` exercises the entire-function limits inside
/// the closed form.
#[test]
fn m1_double_ray_oracle() {
    for (a, r) in [(2.5, -1.5), (3.0, -1.0), (2.2, -2.0)] {
        let theta = 0.35;
        let outer = |t: Complex64| {
            let f_inner = move |tau: Complex64| {
                cpow(t, c(-a / r)) * cpow(tau, c(a)) * (t / (2.0 * r) - tau / 2.0).exp()
                    / ((t - tau) * (t - tau))
            };
            ray_integral(f_inner, -theta, 6, 120.0).0
        };
        let (value, _) = ray_integral(outer, theta, 6, 200.0 * (-r));
        let closed = m1_deformed_b(1, 1, c(a), c(r)).unwrap().value;
        assert!(
            (value - closed).norm() <= 1e-7 * closed.norm(),
            "a={a} r={r}: ray={value} closed={closed}"
        );
    }
}

/// The deformed-A evaluator at `n = 0` or `m = 0` degenerates to 1.
#[test]
fn deformed_a_degenerate_blocks() {
    assert!((m_deformed_a(1, 0, c(-2.3)).unwrap().value - c(1.0)).norm() < 1e-13);
    assert!((m_deformed_a(0, 1, c(-2.3)).unwrap().value - c(1.0)).norm() < 1e-13);
}

/// The `(0,1)` and `(1,0)` arc integrals against direct quadrature of the
/// interval integral they deform to.
#[test]
fn arc_integral_beta_quadrature_oracle() {
    use mmba::closed_forms::{dotsenko_fateev, DfDenominator};
    use mmba::quadrature::de::tanh_sinh;
    for (a, b, r) in [(1.0, 1.0, -1.7), (0.7, 1.9, -2.3), (2.5, 0.4, -1.1)] {
        // (0,1): int_0^1 tau^a (1-tau)^b dtau
        let (oracle, err) = tanh_sinh(|t| t.powf(a) * (1.0 - t).powf(b), 0.0, 1.0, 7);
        let v = dotsenko_fateev(0, 1, c(a), c(b), c(r), DfDenominator::default()).unwrap();
        assert!(
            (v.value - c(oracle)).norm() <= 1e-12 * oracle.abs() + err,
            "(0,1) a={a} b={b}: {} vs {oracle}",
            v.value
        );
        // (1,0): int_0^1 t^{-a/r} (1-t)^{-b/r} dt
        let (oracle, err) = tanh_sinh(|t| t.powf(-a / r) * (1.0 - t).powf(-b / r), 0.0, 1.0, 7);
        let v = dotsenko_fateev(1, 0, c(a), c(b), c(r), DfDenominator::default()).unwrap();
        assert!(
            (v.value - c(oracle)).norm() <= 1e-12 * oracle.abs() + err,
            "(1,0) a={a} b={b}: {} vs {oracle}",
            v.value
        );
    }
}

/// At equal couplings the two-orbit contour phase factor coincides with the
/// equal-multiplicity one (phases are blind to root lengths).
#[test]
fn two_param_factor_equal_coupling_consistency() {
    use mmba::arrangements::{coxeter_datum, CoxeterLabel};
    use mmba::closed_forms::{contour_factor_equal, contour_factor_two_param, TwoParamFamily};
    for k in [0.25, 0.3, 0.75] {
        let b2 = coxeter_datum(CoxeterLabel::B(2)).unwrap();
        let lhs = contour_factor_two_param(TwoParamFamily::B(2), c(k), c(k)).value;
        let rhs = contour_factor_equal(&b2, c(k)).value;
        assert!((lhs - rhs).norm() < 1e-13, "B2 k={k}");
        let f4 = coxeter_datum(CoxeterLabel::F4).unwrap();
        let lhs = contour_factor_two_param(TwoParamFamily::F4, c(k), c(k)).value;
        let rhs = contour_factor_equal(&f4, c(k)).value;
        assert!((lhs - rhs).norm() < 1e-13, "F4 k={k}");
    }
}

/// Numeric oracle for the rank-2 discriminant norm: the bilinear-form
/// integral against the Pochhammer product.
#[test]
fn a2_wm_norm_numeric_oracle() {
    use mmba::arrangements::{
        build_coxeter, coxeter_datum, regular_shift, CoxeterLabel, Normalization, ShiftStrategy,
    };
    use mmba::baker_akhiezer::{bilinear_form, construct_berest, value_at_origin};
    use mmba::closed_forms::wm_norm;
    use mmba::exact_algebra::Block;
    use mmba::quadrature::QuadConfig;
    let (arr, datum) = build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap();
    let _ = coxeter_datum(CoxeterLabel::A(2)).unwrap();
    let phi = construct_berest(&arr, 1_000_000).unwrap();
    let phi00 = value_at_origin(&phi);
    let spec = regular_shift(&arr, ShiftStrategy::NegativeChamber).unwrap();
    let w = arr.a_m_poly(Block::X).pow(3).unwrap();
    let est = bilinear_form(&w, &w, &arr, &phi00, &spec, &QuadConfig::default()).unwrap();
    let expect = wm_norm(&datum, 1).exact.unwrap().to_f64();
    assert!((expect + 51840.0).abs() < 1e-9, "closed form is -51840");
    let rel = (est.value - c(expect)).norm() / expect.abs();
    assert!(rel < 1e-5, "numeric {} vs {expect} (rel {rel:.2e})", est.value);
}
