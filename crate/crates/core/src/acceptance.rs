//! The cross-validation suite: every headline identity is checked through
//! its independent routes (exact symbolic construction, gamma-product closed
//! form, shifted-contour quadrature) at pinned tolerances. Each criterion
//! contributes rows to a machine-readable report; the suite passes iff every
//! row passes.

use crate::arrangements::{
    build_coxeter, build_deformed_a, build_deformed_c, coxeter_datum, regular_shift,
    regular_shift_numeric, Arrangement, ContourSpec, CoxeterLabel, Normalization, ShiftStrategy,
};
use crate::baker_akhiezer::{
    bilinear_form, check_axioms, construct_berest, exp_half_l, value_at_origin,
    DEFAULT_TERM_BUDGET,
};
use crate::closed_forms::{self, DfDenominator, TwoParamFamily};
use crate::exact_algebra::{Block, MultiPoly, Scalar};
use crate::export::{Report, ReportRow, RouteJson};
use crate::gamma::gamma;
use crate::quadrature::{
    build_integrand_d21, build_integrand_deformed, build_integrand_identity, build_integrand_mm,
    build_integrand_reciprocal, contour_independence_check, de, shifted_gaussian_integral,
    DeformedKind, Integrand, NumericArrangement, QuadConfig,
};
use crate::wronskian2d::{a_coeff_magnitude, emit_arrangement, factorize_q};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Reduced case list; every criterion still runs.
    Fast,
    /// Everything.
    Full,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "fast" => Some(Suite::Fast),
            "full" => Some(Suite::Full),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionSummary {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub rows: usize,
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub report: Report,
    pub criteria: Vec<CriterionSummary>,
    pub all_pass: bool,
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn route(v: Complex64, err: Option<f64>) -> RouteJson {
    RouteJson { re: v.re, im: v.im, error_est: err }
}

/// Relative-agreement row.
fn rel_row(
    case: impl Into<String>,
    source: &str,
    a: Complex64,
    b: Complex64,
    b_err: Option<f64>,
    tol: f64,
) -> ReportRow {
    let scale = a.norm().max(b.norm()).max(1e-300);
    let rel_err = (a - b).norm() / scale;
    ReportRow {
        case: case.into(),
        source: source.into(),
        route_a: route(a, None),
        route_b: route(b, b_err),
        rel_err,
        tol,
        pass: rel_err <= tol,
    }
}

/// Absolute-agreement row (for values at zeros).
fn abs_row(
    case: impl Into<String>,
    source: &str,
    a: Complex64,
    b: Complex64,
    b_err: Option<f64>,
    tol: f64,
) -> ReportRow {
    let err = (a - b).norm();
    ReportRow {
        case: case.into(),
        source: source.into(),
        route_a: route(a, None),
        route_b: route(b, b_err),
        rel_err: err,
        tol,
        pass: err <= tol,
    }
}

/// Exact-equality row for scalars.
fn exact_row(case: impl Into<String>, source: &str, a: &Scalar, b: &Scalar) -> ReportRow {
    let pass = a == b;
    ReportRow {
        case: case.into(),
        source: source.into(),
        route_a: route(c64(a.to_f64()), None),
        route_b: route(c64(b.to_f64()), None),
        rel_err: if pass { 0.0 } else { (a.to_f64() - b.to_f64()).abs() },
        tol: 0.0,
        pass,
    }
}

fn bool_row(case: impl Into<String>, source: &str, pass: bool) -> ReportRow {
    ReportRow {
        case: case.into(),
        source: source.into(),
        route_a: route(c64(if pass { 1.0 } else { 0.0 }), None),
        route_b: route(c64(1.0), None),
        rel_err: if pass { 0.0 } else { 1.0 },
        tol: 0.0,
        pass,
    }
}

/// An integral retained for the shift-independence sweep.
struct StoredIntegral {
    name: String,
    integrand: Integrand,
    spec: ContourSpec,
    cfg: QuadConfig,
}

struct Ctx {
    suite: Suite,
    seed: u64,
    stored: Vec<StoredIntegral>,
}

impl Ctx {
    fn cfg(&self) -> QuadConfig {
        QuadConfig { seed: self.seed, ..Default::default() }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteOutcome {
    let report = build_report(suite, seed);
    let mut criteria = Vec::new();
    for id in 1..=11u32 {
        let prefix = format!("c{id:02}.");
        let rows: Vec<&ReportRow> = report
            .rows
            .iter()
            .filter(|r| r.case.starts_with(&prefix))
            .collect();
        criteria.push(CriterionSummary {
            id,
            name: criterion_name(id).into(),
            pass: rows.iter().all(|r| r.pass),
            rows: rows.len(),
        });
    }
    let all_pass = report.all_pass();
    SuiteOutcome { report, criteria, all_pass }
}

pub fn criterion_name(id: u32) -> &'static str {
    match id {
        1 => "rank-one construction",
        2 => "value at origin, three routes",
        3 => "self-duality integral identity",
        4 => "contour shift independence",
        5 => "branch factor vs absolute integral",
        6 => "two-parameter bridges",
        7 => "bilinear form and discriminant norms",
        8 => "planar Wronskian configurations",
        9 => "deformed families",
        10 => "three-parameter exploratory integral",
        11 => "determinism",
        _ => "?",
    }
}

fn collect_rows(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    rows.extend(criterion1(ctx));
    rows.extend(criterion2(ctx));
    rows.extend(criterion3(ctx));
    rows.extend(criterion4(ctx));
    rows.extend(criterion5(ctx));
    rows.extend(criterion6(ctx));
    rows.extend(criterion7(ctx));
    rows.extend(criterion8(ctx));
    rows.extend(criterion9(ctx));
    rows.extend(criterion10(ctx));
    rows
}

fn build_report(suite: Suite, seed: u64) -> Report {
    let mut ctx = Ctx { suite, seed, stored: Vec::new() };
    let mut rows = collect_rows(&mut ctx);

    // determinism: rebuild the selected tier twice and compare bytes
    let inner = |s: Suite| -> String {
        let mut ctx2 = Ctx { suite: s, seed, stored: Vec::new() };
        let rows2 = collect_rows(&mut ctx2);
        let rep = Report {
            version: crate::export::REPORT_VERSION.into(),
            config: suite_config(s, seed),
            rows: rows2,
        };
        rep.to_json_pretty()
    };
    let first = inner(suite);
    let second = inner(suite);
    rows.push(bool_row(
        "c11.byte-identical-reports",
        "determinism",
        first == second,
    ));

    Report {
        version: crate::export::REPORT_VERSION.into(),
        config: suite_config(suite, seed),
        rows,
    }
}

/// Full configuration embedded for reproduction.
fn suite_config(suite: Suite, seed: u64) -> serde_json::Value {
    serde_json::json!({
        "suite": suite_name(suite),
        "seed": seed,
        "gh_orders": {"1d": 64, "2d": 96, "3d": 64},
        "mc_samples": 10_000_000u64,
        "max_refinements": 3,
        "term_budget": DEFAULT_TERM_BUDGET,
    })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Fast => "fast",
        Suite::Full => "full",
    }
}

// -------------------------------------------------------------------------
// Criterion 1: rank-one construction, exact values and axioms
// -------------------------------------------------------------------------

fn criterion1(_ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let (a1, _) = build_coxeter(CoxeterLabel::A(1), Normalization::Norm2).unwrap();
    let phi = construct_berest(&a1, DEFAULT_TERM_BUDGET).unwrap();
    let expect = MultiPoly::var(1, Block::X, 0)
        .mul(&MultiPoly::var(1, Block::Lambda, 0))
        .unwrap()
        .scale(&Scalar::from_int(2))
        .sub(&MultiPoly::constant(1, Scalar::from_int(2)))
        .unwrap();
    rows.push(bool_row(
        "c01.rank-one-m1-exact-polynomial",
        "berest-formula",
        phi.poly == expect,
    ));
    for (m, expect) in [(1u32, -2i64), (2, 12), (3, -120)] {
        let arr = a1.with_multiplicity(m);
        let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
        rows.push(exact_row(
            format!("c01.rank-one-m{m}-value-at-origin"),
            "berest-formula",
            &value_at_origin(&phi),
            &Scalar::from_int(expect),
        ));
        rows.push(bool_row(
            format!("c01.rank-one-m{m}-axioms"),
            "ba-axioms",
            check_axioms(&phi, &arr).all_pass(),
        ));
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 2: phi(0,0) by symbolic construction, closed form, quadrature
// -------------------------------------------------------------------------

fn coxeter_case(label: CoxeterLabel, m: u32) -> (Arrangement, Scalar, &'static str) {
    let (arr, datum) = build_coxeter(label, Normalization::Norm2).unwrap();
    let arr = arr.with_multiplicity(m);
    let cf = closed_forms::contour_gaussian(&datum, m);
    (arr, cf.exact.unwrap(), cf.source)
}

fn criterion2(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let mut cases: Vec<(String, Arrangement, Scalar, &'static str)> = Vec::new();
    for m in 1..=3u32 {
        let (arr, recip, src) = coxeter_case(CoxeterLabel::A(1), m);
        cases.push((format!("a1-m{m}"), arr, recip, src));
    }
    let a2_top = if ctx.suite == Suite::Full { 2 } else { 1 };
    for m in 1..=a2_top {
        let (arr, recip, src) = coxeter_case(CoxeterLabel::A(2), m);
        cases.push((format!("a2-m{m}"), arr, recip, src));
    }
    let (arr, recip, src) = coxeter_case(CoxeterLabel::B(2), 1);
    cases.push(("b2-m1".into(), arr, recip, src));
    let (arr, recip, src) = coxeter_case(CoxeterLabel::I2(4), 1);
    cases.push(("i2(4)-m1".into(), arr, recip, src));
    for p in 1..=3u32 {
        let (arr, _) = build_deformed_a(1, p).unwrap();
        let cf = closed_forms::phi00_deformed_a(1, p);
        let recip = cf.exact.clone().unwrap().inv();
        cases.push((format!("a-def-1({p})"), arr, recip, cf.source));
    }
    {
        let (arr, _) = build_deformed_c(1, 1, 0).unwrap();
        let cf = closed_forms::phi00_deformed_c(1, 1, 0).unwrap();
        let recip = cf.exact.clone().unwrap().inv();
        cases.push(("c-def-2(1,0)".into(), arr, recip, cf.source));
    }

    for (name, arr, recip_closed, src) in cases {
        let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
        let phi00 = value_at_origin(&phi);
        // exact bridge: phi(0,0) * closed-form integral = 1
        rows.push(exact_row(
            format!("c02.{name}-closed-form-exact"),
            src,
            &phi00.mul_ref(&recip_closed),
            &Scalar::one(),
        ));
        // numeric route: the shifted integral of 1/A_m^2 inverts phi(0,0)
        let spec = regular_shift(&arr, ShiftStrategy::NegativeChamber).unwrap();
        let integrand = build_integrand_reciprocal(&NumericArrangement::from_exact(&arr));
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        rows.push(rel_row(
            format!("c02.{name}-quadrature"),
            "contour-reciprocal",
            c64(1.0 / phi00.to_f64()),
            est.value,
            Some(est.error_est),
            1e-8,
        ));
        ctx.stored.push(StoredIntegral {
            name: format!("c02.{name}"),
            integrand,
            spec,
            cfg: ctx.cfg(),
        });
        rows.push(bool_row(
            format!("c02.{name}-axioms"),
            "ba-axioms",
            check_axioms(&phi, &arr).all_pass(),
        ));
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 3: the self-duality identity
// -------------------------------------------------------------------------

fn criterion3(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let (a1, _) = build_coxeter(CoxeterLabel::A(1), Normalization::Norm2).unwrap();
    let phi = construct_berest(&a1, DEFAULT_TERM_BUDGET).unwrap();
    let pairs: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 1.0), (1.0, 2.0), (0.5, -0.3), (-1.2, 0.7)];
    for (lam, mu) in pairs {
        let lambda = [c64(lam)];
        let mu_v = [c64(mu)];
        let rhs = c64(-(lam * lam + mu * mu) / 2.0).exp() * phi.eval_complex(&lambda, &mu_v);
        let integrand = build_integrand_identity(&phi, &lambda, &mu_v, &a1);
        let spec = regular_shift(&a1, ShiftStrategy::NegativeChamber).unwrap();
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        let case = format!("c03.a1-lambda{lam}-mu{mu}");
        if rhs.norm() < 1e-12 {
            rows.push(abs_row(case, "self-duality", rhs, est.value, Some(est.error_est), 1e-10));
        } else {
            rows.push(rel_row(case, "self-duality", rhs, est.value, Some(est.error_est), 1e-8));
        }
        ctx.stored.push(StoredIntegral {
            name: format!("c03.a1-{lam}-{mu}"),
            integrand,
            spec,
            cfg: ctx.cfg(),
        });
    }
    // A2 pairs
    let (a2, _) = build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap();
    let phi2 = construct_berest(&a2, DEFAULT_TERM_BUDGET).unwrap();
    let vec_pairs: Vec<([f64; 3], [f64; 3])> = match ctx.suite {
        Suite::Full => vec![
            ([0.4, 0.1, -0.5], [0.2, -0.3, 0.1]),
            ([0.9, -0.2, -0.7], [-0.1, 0.4, -0.3]),
        ],
        Suite::Fast => vec![([0.4, 0.1, -0.5], [0.2, -0.3, 0.1])],
    };
    for (lv, mv) in vec_pairs {
        let lambda: Vec<Complex64> = lv.iter().map(|&x| c64(x)).collect();
        let mu: Vec<Complex64> = mv.iter().map(|&x| c64(x)).collect();
        let l2: f64 = lv.iter().map(|x| x * x).sum();
        let m2: f64 = mv.iter().map(|x| x * x).sum();
        let rhs = c64(-(l2 + m2) / 2.0).exp() * phi2.eval_complex(&lambda, &mu);
        let integrand = build_integrand_identity(&phi2, &lambda, &mu, &a2);
        let spec = regular_shift(&a2, ShiftStrategy::NegativeChamber).unwrap();
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        rows.push(rel_row(
            format!("c03.a2-{lv:?}"),
            "self-duality",
            rhs,
            est.value,
            Some(est.error_est),
            1e-6,
        ));
        ctx.stored.push(StoredIntegral {
            name: format!("c03.a2-{lv:?}"),
            integrand,
            spec,
            cfg: ctx.cfg(),
        });
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 4: every stored integral recomputed in another chamber
// -------------------------------------------------------------------------

fn criterion4(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let stored = std::mem::take(&mut ctx.stored);
    for item in &stored {
        let mut other = item.spec.clone();
        // opposite chamber, different magnitude; regularity is preserved
        for c in &mut other.shift {
            *c *= -0.9;
        }
        let check =
            contour_independence_check(&item.integrand, &item.spec, &other, &item.cfg).unwrap();
        rows.push(ReportRow {
            case: format!("c04.{}", &item.name[4..]),
            source: "shift-independence".into(),
            route_a: route(check.first.value, Some(check.first.error_est)),
            route_b: route(check.second.value, Some(check.second.error_est)),
            rel_err: check.difference,
            tol: check.combined_err,
            pass: check.pass,
        });
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 5: branch factor against the absolute-value integral
// -------------------------------------------------------------------------

fn criterion5(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for label in [CoxeterLabel::A(1), CoxeterLabel::A(2)] {
        let (arr, datum) = build_coxeter(label, Normalization::Norm2).unwrap();
        for k in [0.25f64, 0.5, 0.75] {
            let name = format!("c05.{label}-k{k}");
            let numeric = arr.numeric_vectors();
            let abs_vectors: Vec<(Vec<f64>, f64)> =
                numeric.iter().map(|(v, _)| (v.clone(), 2.0 * k)).collect();
            let (absolute, abs_err) = de::absolute_gaussian_integral(&abs_vectors, 7).unwrap();
            let shifted_vectors: Vec<(Vec<f64>, Complex64)> =
                numeric.iter().map(|(v, _)| (v.clone(), c64(2.0 * k))).collect();
            let integrand = build_integrand_mm(&shifted_vectors);
            let mut spec = regular_shift(&arr, ShiftStrategy::PositiveChamber).unwrap();
            spec.branch = integrand.branch();
            let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
            let factor = closed_forms::contour_factor_equal(&datum, c64(k));
            let expect = factor.value * absolute;
            if (k - 0.5).abs() < 1e-12 {
                rows.push(abs_row(
                    name,
                    factor.source,
                    expect,
                    est.value,
                    Some(est.error_est + abs_err),
                    1e-9,
                ));
            } else {
                rows.push(rel_row(
                    name,
                    factor.source,
                    expect,
                    est.value,
                    Some(est.error_est + abs_err),
                    1e-7,
                ));
            }
        }
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 6: two-parameter bridges (B2 numeric, F4 exact)
// -------------------------------------------------------------------------

fn criterion6(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let b2 = closed_forms::contour_gaussian_two_param(TwoParamFamily::B(2), 1, 1);
    rows.push(exact_row(
        "c06.b2-two-param-value",
        b2.source,
        b2.exact.as_ref().unwrap(),
        &Scalar::ratio(1, 12),
    ));
    let datum_b2 = coxeter_datum(CoxeterLabel::B(2)).unwrap();
    let norm2 = closed_forms::contour_gaussian(&datum_b2, 1);
    rows.push(exact_row(
        "c06.b2-normalization-bridge",
        norm2.source,
        &b2.exact.clone().unwrap().mul_ref(&Scalar::ratio(1, 4)),
        norm2.exact.as_ref().unwrap(),
    ));
    // numeric quadrature over the orbitwise (unnormalized short roots) B2
    let (arr_orb, _) = build_coxeter(CoxeterLabel::B(2), Normalization::Orbitwise).unwrap();
    let spec = regular_shift(&arr_orb, ShiftStrategy::NegativeChamber).unwrap();
    let integrand = build_integrand_reciprocal(&NumericArrangement::from_exact(&arr_orb));
    let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
    rows.push(rel_row(
        "c06.b2-two-param-quadrature",
        "contour-reciprocal",
        c64(1.0 / 12.0),
        est.value,
        Some(est.error_est),
        1e-7,
    ));
    // F4 identities, closed form only
    for m in 1..=2u32 {
        let two = closed_forms::contour_gaussian_two_param(TwoParamFamily::F4, m, m);
        let datum_f4 = coxeter_datum(CoxeterLabel::F4).unwrap();
        let eq = closed_forms::contour_gaussian(&datum_f4, m);
        let mut bridge = two.exact.clone().unwrap();
        for _ in 0..12 * m {
            bridge = bridge.mul_ref(&Scalar::ratio(1, 2));
        }
        rows.push(exact_row(
            format!("c06.f4-normalization-bridge-m{m}"),
            two.source,
            &bridge,
            eq.exact.as_ref().unwrap(),
        ));
    }
    // equal-multiplicity consistency of the two-parameter gamma product
    let datum = coxeter_datum(CoxeterLabel::B(3)).unwrap();
    let two = closed_forms::mm_two_param(TwoParamFamily::B(3), c64(1.0), c64(1.0)).unwrap();
    let eq = closed_forms::mm_coxeter(&datum, c64(1.0)).unwrap();
    let mut bridge = two.exact.clone().unwrap();
    for _ in 0..3 {
        bridge = bridge.mul_ref(&Scalar::from_int(2));
    }
    rows.push(exact_row(
        "c06.b3-mm-consistency",
        two.source,
        &bridge,
        eq.exact.as_ref().unwrap(),
    ));
    rows
}

// -------------------------------------------------------------------------
// Criterion 7: bilinear form normalization and discriminant norms
// -------------------------------------------------------------------------

fn criterion7(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let cases: Vec<(&str, CoxeterLabel)> =
        vec![("a1", CoxeterLabel::A(1)), ("i2(2)", CoxeterLabel::I2(2))];
    for (name, label) in cases {
        let (arr, datum) = build_coxeter(label, Normalization::Norm2).unwrap();
        let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
        let phi00 = value_at_origin(&phi);
        let spec = regular_shift(&arr, ShiftStrategy::NegativeChamber).unwrap();
        // (1,1) = 1
        let one = MultiPoly::one(arr.dim());
        let est = bilinear_form(&one, &one, &arr, &phi00, &spec, &ctx.cfg()).unwrap();
        rows.push(rel_row(
            format!("c07.{name}-unit-norm"),
            "bilinear-integral",
            c64(1.0),
            est.value,
            Some(est.error_est),
            1e-9,
        ));
        // (w_m, w_m) against the Pochhammer product (m = 1)
        let w = arr.a_m_poly(Block::X).pow(3).unwrap();
        let est = bilinear_form(&w, &w, &arr, &phi00, &spec, &ctx.cfg()).unwrap();
        let wm = closed_forms::wm_norm(&datum, 1);
        rows.push(rel_row(
            format!("c07.{name}-wm-norm"),
            wm.source,
            c64(wm.exact.unwrap().to_f64()),
            est.value,
            Some(est.error_est),
            1e-7,
        ));
    }
    // w_m is annihilated by L, so e^{L/2} leaves it fixed
    let (a1, _) = build_coxeter(CoxeterLabel::A(1), Normalization::Norm2).unwrap();
    let w = a1.a_m_poly(Block::X).pow(3).unwrap();
    let e = exp_half_l(&w, &a1).unwrap();
    rows.push(bool_row("c07.a1-wm-is-harmonic", "harmonic-shortcut", e == w));
    rows
}

// -------------------------------------------------------------------------
// Criterion 8: planar Wronskian configurations
// -------------------------------------------------------------------------

fn criterion8(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let tuples: [(u32, u32, u32, u32); 5] =
        [(1, 0, 0, 1), (1, 1, 0, 1), (1, 1, 0, 2), (2, 1, 0, 1), (1, 1, 2, 1)];
    for (m, mt, l, q) in tuples {
        let name = format!("c08.({m},{mt},{l},{q})");
        let fact = match factorize_q(m, mt, l, q) {
            Ok(f) => f,
            Err(e) => {
                let mut r = bool_row(format!("{name}-factorize"), "wronskian-ratio", false);
                r.source = format!("wronskian-ratio: {e}");
                rows.push(r);
                continue;
            }
        };
        rows.push(abs_row(
            format!("{name}-residual"),
            "wronskian-ratio",
            c64(0.0),
            c64(fact.residual),
            None,
            1e-10,
        ));
        // |A| exactly: leading-coefficient route against the Darboux product
        let a_formula = a_coeff_magnitude(m, mt, l, q);
        let a_sq = BigRational::from_integer(&a_formula * &a_formula);
        rows.push(bool_row(
            format!("{name}-a-coeff-exact"),
            "wronskian-leading-coeff",
            fact.a_squared_data == a_sq && fact.a_coeff.clone().abs() == a_formula,
        ));
        let sum: f64 = fact.angles.iter().sum();
        rows.push(abs_row(
            format!("{name}-angle-sum"),
            "factorization-angles",
            c64(PI * l as f64 / 2.0),
            c64(sum),
            None,
            1e-10,
        ));
        // mm_2d = (A^2 2^{(q-2)(m+mt+l)} phi00)^{-1} exactly
        let mm = closed_forms::mm_2d(m, mt, l, q).exact.unwrap();
        let phi00 = closed_forms::phi00_dihedral_wronskian(m, mt, l, q).exact.unwrap();
        let pow2 = (q as i32 - 2) * (m + mt + l) as i32;
        let mut bridge =
            Scalar::from_rational(BigRational::from_integer(&a_formula * &a_formula))
                .mul_ref(&phi00);
        let two = Scalar::from_int(2);
        for _ in 0..pow2.abs() {
            bridge = if pow2 >= 0 { bridge.mul_ref(&two) } else { bridge.div_ref(&two) };
        }
        rows.push(exact_row(
            format!("{name}-mm2d-bridge"),
            "mm-2d/wronskian",
            &bridge.inv(),
            &mm,
        ));
        // numeric: M = (A^2 2^{(q-2)s})^{-1} int dgamma / prod (alpha,x)^{2m}
        let arr = emit_arrangement(m, mt, q, &fact.angles);
        let coords: Vec<Vec<f64>> = arr.vectors.iter().map(|(v, _)| v.clone()).collect();
        let max_mult = arr.vectors.iter().map(|(_, k)| *k).max().unwrap_or(1);
        let spec =
            regular_shift_numeric(&coords, (1.0 + 0.5 * max_mult as f64).min(2.5)).unwrap();
        let integrand = build_integrand_reciprocal(&arr);
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        let norm_const = big_f64(&a_formula).powi(2) * 2f64.powi(pow2);
        rows.push(rel_row(
            format!("{name}-quadrature"),
            "mm-2d/wronskian",
            c64(mm.to_f64()),
            est.value / norm_const,
            Some(est.error_est / norm_const),
            1e-6,
        ));
    }
    rows
}

fn big_f64(a: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    a.to_f64().unwrap()
}

// -------------------------------------------------------------------------
// Criterion 9: deformed families
// -------------------------------------------------------------------------

fn criterion9(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    // Beta specializations at five parameter points, alpha != beta included
    let params = [
        (1.0, 1.0, -1.7),
        (0.7, 1.9, -2.3),
        (2.5, 0.4, -1.1),
        (1.3, 1.3, -3.2),
        (0.2, 2.8, -1.9),
    ];
    for (i, &(a, b, r)) in params.iter().enumerate() {
        let v =
            closed_forms::dotsenko_fateev(0, 1, c64(a), c64(b), c64(r), DfDenominator::default())
                .unwrap();
        let beta = gamma(c64(1.0 + a)).unwrap() * gamma(c64(1.0 + b)).unwrap()
            / gamma(c64(2.0 + a + b)).unwrap();
        rows.push(rel_row(format!("c09.df-beta-(0,1)-p{i}"), v.source, beta, v.value, None, 1e-12));
        let v =
            closed_forms::dotsenko_fateev(1, 0, c64(a), c64(b), c64(r), DfDenominator::default())
                .unwrap();
        let beta = gamma(c64(1.0 - a / r)).unwrap() * gamma(c64(1.0 - b / r)).unwrap()
            / gamma(c64(2.0 - (a + b) / r)).unwrap();
        rows.push(rel_row(format!("c09.df-beta-(1,0)-p{i}"), v.source, beta, v.value, None, 1e-12));
    }

    // deformed A: closed form vs quadrature
    let quad_cases: [(u32, u32, f64, f64, f64); 4] = [
        (1, 1, -1.0, 1.4, 1e-8),
        (1, 1, -2.0, 1.4, 1e-7),
        (1, 1, -3.0, 1.4, 1e-7),
        (2, 1, -1.0, 1.1, 1e-5),
    ];
    for (n, m, rho, delta, tol) in quad_cases {
        let cf = closed_forms::m_deformed_a(n, m, c64(rho)).unwrap();
        let (integrand, spec) =
            build_integrand_deformed(DeformedKind::A { n, m, rho }, delta).unwrap();
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        rows.push(rel_row(
            format!("c09.a-def-({n},{m},{rho})-quadrature"),
            cf.source,
            cf.value,
            est.value,
            Some(est.error_est),
            tol,
        ));
    }
    let cf = closed_forms::m_deformed_a(1, 1, c64(-1.0)).unwrap();
    rows.push(exact_row(
        "c09.a-def-(1,1,-1)-exact",
        cf.source,
        cf.exact.as_ref().unwrap(),
        &Scalar::ratio(-1, 2),
    ));
    // phi00_deformed_a(2,1) = -12 = A2 value, exactly, and equal to Berest
    let da = closed_forms::phi00_deformed_a(2, 1);
    rows.push(exact_row(
        "c09.a-def-phi00(2,1)",
        da.source,
        da.exact.as_ref().unwrap(),
        &Scalar::from_int(-12),
    ));
    let (a2, _) = build_coxeter(CoxeterLabel::A(2), Normalization::Norm2).unwrap();
    let phi2 = construct_berest(&a2, DEFAULT_TERM_BUDGET).unwrap();
    rows.push(exact_row(
        "c09.a-def-phi00(2,1)-berest",
        "berest-formula",
        da.exact.as_ref().unwrap(),
        &value_at_origin(&phi2),
    ));

    // deformed BC at the C2(1,0) point, through the deformed normalization
    let bc = closed_forms::m_deformed_bc(1, 1, c64(-1.5), c64(-3.0)).unwrap();
    let (c2, _) = build_deformed_c(1, 1, 0).unwrap();
    let phic = construct_berest(&c2, DEFAULT_TERM_BUDGET).unwrap();
    let phi00 = value_at_origin(&phic);
    rows.push(rel_row(
        "c09.bc-def-(1,1,-3/2,-3)-berest",
        bc.source,
        c64(1.0 / phi00.to_f64()),
        bc.value,
        None,
        1e-6,
    ));
    let (integrand, spec) =
        build_integrand_deformed(DeformedKind::Bc { n: 1, m: 1, alpha: -1.5, rho: -3.0 }, 1.2)
            .unwrap();
    let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
    rows.push(rel_row(
        "c09.bc-def-(1,1,-3/2,-3)-quadrature",
        bc.source,
        bc.value,
        est.value,
        Some(est.error_est),
        1e-6,
    ));
    if ctx.suite == Suite::Full {
        let (a, r) = (0.7, -1.5);
        let bc = closed_forms::m_deformed_bc(1, 1, c64(a), c64(r)).unwrap();
        let (integrand, spec) =
            build_integrand_deformed(DeformedKind::Bc { n: 1, m: 1, alpha: a, rho: r }, 1.2)
                .unwrap();
        let est = shifted_gaussian_integral(&integrand, &spec, &ctx.cfg()).unwrap();
        rows.push(rel_row(
            "c09.bc-def-(1,1,0.7,-1.5)-quadrature",
            bc.source,
            bc.value,
            est.value,
            Some(est.error_est),
            1e-6,
        ));
    }
    rows
}

// -------------------------------------------------------------------------
// Criterion 10: exploratory three-parameter integral
// -------------------------------------------------------------------------

fn criterion10(ctx: &mut Ctx) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let base = build_integrand_d21([1.0, 1.0, 2.0], [0.9, 1.7, 3.1]).unwrap();
    let est = shifted_gaussian_integral(&base.integrand, &base.spec, &ctx.cfg()).unwrap();
    let diffs: Vec<f64> =
        est.history.windows(2).map(|w| (w[1].1 - w[0].1).norm()).collect();
    let mut shrinking = diffs.len() >= 2;
    for w in diffs.windows(2) {
        shrinking &= w[1] < w[0];
    }
    rows.push(bool_row("c10.d21-error-shrinks", "exploratory-integral", shrinking));
    // permutation invariance within combined error estimates
    let perm = build_integrand_d21([2.0, 1.0, 1.0], [3.1, 0.9, 1.7]).unwrap();
    let est_p = shifted_gaussian_integral(&perm.integrand, &perm.spec, &ctx.cfg()).unwrap();
    let va = est.value * c64(base.prefactor);
    let vb = est_p.value * c64(perm.prefactor);
    let diff = (va - vb).norm();
    let bound = (est.error_est * base.prefactor + est_p.error_est * perm.prefactor)
        .max(1e-10 * va.norm().max(1e-300));
    rows.push(ReportRow {
        case: "c10.d21-permutation-invariance".into(),
        source: "exploratory-integral".into(),
        route_a: route(va, Some(est.error_est * base.prefactor)),
        route_b: route(vb, Some(est_p.error_est * perm.prefactor)),
        rel_err: diff,
        tol: bound,
        pass: diff <= bound,
    });
    if ctx.suite == Suite::Full {
        // non-integer exponents: convergence only
        let gen = build_integrand_d21([1.0, 1.3, 1.7], [0.9, 1.7, 3.1]).unwrap();
        let est_g = shifted_gaussian_integral(&gen.integrand, &gen.spec, &ctx.cfg()).unwrap();
        let diffs: Vec<f64> =
            est_g.history.windows(2).map(|w| (w[1].1 - w[0].1).norm()).collect();
        let mut ok = diffs.len() >= 2;
        for w in diffs.windows(2) {
            ok &= w[1] < w[0];
        }
        rows.push(bool_row("c10.d21-generic-lambda-converges", "exploratory-integral", ok));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("fast"), Some(Suite::Fast));
        assert_eq!(Suite::parse("full"), Some(Suite::Full));
        assert_eq!(Suite::parse("other"), None);
        for id in 1..=11 {
            assert_ne!(criterion_name(id), "?");
        }
    }
}
