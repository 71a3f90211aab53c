//! JSON schemas for arrangements, Baker-Akhiezer functions and verification
//! reports. Rationals are serialized as integer pairs so files are bit-exact
//! and diff-stable (terms in canonical lexicographic exponent order).

use crate::arrangements::Arrangement;
use crate::exact_algebra::{ExpPoly, Scalar};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldJson {
    /// 0 encodes the rationals; otherwise the square-free `d` of `Q(sqrt d)`.
    pub d: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementVectorJson {
    /// Each coordinate is `[[a_num, a_den], [b_num, b_den]]` for `a + b sqrt(d)`.
    pub coords: Vec<[[i64; 2]; 2]>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub dimension: usize,
    pub field: FieldJson,
    pub vectors: Vec<ArrangementVectorJson>,
}

fn scalar_pairs(s: &Scalar) -> Option<[[i64; 2]; 2]> {
    let a = s.rational_part();
    let b = s.radical_part();
    Some([
        [a.numer().to_i64()?, a.denom().to_i64()?],
        [b.numer().to_i64()?, b.denom().to_i64()?],
    ])
}

pub fn arrangement_to_json(arrangement: &Arrangement) -> Option<ArrangementJson> {
    let vectors = arrangement
        .vectors()
        .iter()
        .map(|v| {
            Some(ArrangementVectorJson {
                coords: v.coords.iter().map(scalar_pairs).collect::<Option<_>>()?,
                multiplicity: v.multiplicity,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(ArrangementJson {
        dimension: arrangement.dim(),
        field: FieldJson { d: arrangement.field_d() },
        vectors,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiTermJson {
    pub x_exponents: Vec<u16>,
    pub lambda_exponents: Vec<u16>,
    /// `[a_num, a_den, b_num, b_den]` for the coefficient `a + b sqrt(d)`.
    pub coeff: [i64; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiJson {
    pub dimension: usize,
    pub field: FieldJson,
    pub terms: Vec<PhiTermJson>,
}

/// Serialize the polynomial part of `phi` (the `e^{(x,lambda)}` factor is
/// implicit). Term order is lexicographic in the full exponent vector.
pub fn phi_to_json(phi: &ExpPoly) -> Option<PhiJson> {
    let n = phi.arity();
    let mut terms = Vec::new();
    for (exps, coeff) in phi.poly.terms() {
        let a = coeff.rational_part();
        let b = coeff.radical_part();
        terms.push(PhiTermJson {
            x_exponents: exps[..n].to_vec(),
            lambda_exponents: exps[n..].to_vec(),
            coeff: [
                a.numer().to_i64()?,
                a.denom().to_i64()?,
                b.numer().to_i64()?,
                b.denom().to_i64()?,
            ],
        });
    }
    Some(PhiJson {
        dimension: n,
        field: FieldJson { d: phi.poly.field_d() },
        terms,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RouteJson {
    pub re: f64,
    pub im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_est: Option<f64>,
}

/// One verification row: two routes to the same number and their agreement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub case: String,
    pub source: String,
    pub route_a: RouteJson,
    pub route_b: RouteJson,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: serde_json::Value,
    pub rows: Vec<ReportRow>,
}

pub const REPORT_VERSION: &str = "1";

impl Report {
    pub fn new(config: serde_json::Value) -> Self {
        Report { version: REPORT_VERSION.into(), config, rows: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "case,source,route_a_re,route_a_im,route_b_re,route_b_im,route_b_error_est,rel_err,tol,pass\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:.15e},{:.15e},{:.15e},{:.15e},{},{:.3e},{:.1e},{}\n",
                r.case,
                r.source,
                r.route_a.re,
                r.route_a.im,
                r.route_b.re,
                r.route_b.im,
                r.route_b
                    .error_est
                    .map(|e| format!("{e:.3e}"))
                    .unwrap_or_default(),
                r.rel_err,
                r.tol,
                r.pass
            ));
        }
        out
    }
}
