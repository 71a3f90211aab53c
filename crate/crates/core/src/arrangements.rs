//! Arrangements of vectors with multiplicities: Coxeter positive root
//! systems with degree data, the deformed families, and contour shifts.

use crate::exact_algebra::{Block, MultiPoly, Scalar};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ArrangementError {
    #[error("vectors {0} and {1} are collinear")]
    Collinear(usize, usize),
    #[error("no open half-space contains all vectors")]
    NoPositiveHalfspace,
    #[error("unsupported Coxeter label: {0}")]
    UnsupportedLabel(String),
    #[error("{0} admits closed forms only; exact coordinates leave a single quadratic extension")]
    NumericOnly(String),
    #[error("orbitwise normalization is only available for B_n, C_n and F4")]
    OrbitwiseUnavailable,
    #[error("(2r+1)/(2s+1) = {0}/{1} is not a positive integer")]
    IntegralityViolation(u32, u32),
    #[error("shift vector is not regular: |(alpha, xi)| = {0:.3e} for some alpha")]
    NotRegular(f64),
    #[error("coefficient field mismatch inside arrangement")]
    FieldMismatch,
}

/// A vector of the arrangement together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrVector {
    pub coords: Vec<Scalar>,
    pub multiplicity: u32,
}

/// Finite set of pairwise non-collinear vectors with multiplicities `>= 1`,
/// all contained in an open half-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    field_d: u32,
    vectors: Vec<ArrVector>,
}

impl Arrangement {
    pub fn new(dim: usize, vectors: Vec<(Vec<Scalar>, u32)>) -> Result<Self, ArrangementError> {
        let mut field_d = 0u32;
        let mut vs = Vec::with_capacity(vectors.len());
        for (coords, multiplicity) in vectors {
            assert_eq!(coords.len(), dim, "coordinate length mismatch");
            assert!(multiplicity >= 1, "multiplicities must be >= 1");
            for c in &coords {
                field_d = Scalar::join_field(field_d, c.field_d())
                    .ok_or(ArrangementError::FieldMismatch)?;
            }
            vs.push(ArrVector { coords, multiplicity });
        }
        let arr = Arrangement { dim, field_d, vectors: vs };
        arr.check_noncollinear()?;
        arr.check_halfspace()?;
        Ok(arr)
    }

    fn check_noncollinear(&self) -> Result<(), ArrangementError> {
        for i in 0..self.vectors.len() {
            for j in (i + 1)..self.vectors.len() {
                let a = &self.vectors[i].coords;
                let b = &self.vectors[j].coords;
                let collinear = (0..self.dim).all(|p| {
                    (p + 1..self.dim).all(|q| {
                        a[p].mul_ref(&b[q]) == a[q].mul_ref(&b[p])
                    })
                });
                if collinear {
                    return Err(ArrangementError::Collinear(i, j));
                }
            }
        }
        Ok(())
    }

    fn check_halfspace(&self) -> Result<(), ArrangementError> {
        if self.vectors.is_empty() {
            return Ok(());
        }
        chamber_representative(&self.numeric_coords())
            .map(|_| ())
            .ok_or(ArrangementError::NoPositiveHalfspace)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field_d(&self) -> u32 {
        self.field_d
    }

    pub fn vectors(&self) -> &[ArrVector] {
        &self.vectors
    }

    /// `|m| = sum of multiplicities`.
    pub fn total_multiplicity(&self) -> u32 {
        self.vectors.iter().map(|v| v.multiplicity).sum()
    }

    /// `A_m = prod (alpha, v)^{m_alpha}` over the chosen block.
    pub fn a_m_poly(&self, block: Block) -> MultiPoly {
        let mut p = MultiPoly::one(self.dim);
        for v in &self.vectors {
            let form = MultiPoly::linear_form(self.dim, block, &v.coords);
            p = p
                .mul(&form.pow(v.multiplicity).expect("a_m power"))
                .expect("a_m product");
        }
        p
    }

    pub fn numeric_coords(&self) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .map(|v| v.coords.iter().map(Scalar::to_f64).collect())
            .collect()
    }

    /// Floating vectors paired with `2 * multiplicity` exponents, the usual
    /// denominator data for `1/A_m^2` integrands.
    pub fn numeric_vectors(&self) -> Vec<(Vec<f64>, u32)> {
        self.vectors
            .iter()
            .map(|v| (v.coords.iter().map(Scalar::to_f64).collect(), v.multiplicity))
            .collect()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.vectors.iter().map(|v| v.multiplicity).max().unwrap_or(0)
    }

    /// Same vectors with every multiplicity set to `m` (the
    /// equal-multiplicity family over a fixed root system).
    pub fn with_multiplicity(&self, m: u32) -> Arrangement {
        assert!(m >= 1);
        let mut out = self.clone();
        for v in &mut out.vectors {
            v.multiplicity = m;
        }
        out
    }

    /// Direct sum on orthogonal coordinate blocks.
    pub fn direct_sum(&self, other: &Arrangement) -> Result<Arrangement, ArrangementError> {
        let dim = self.dim + other.dim;
        let mut vectors = Vec::new();
        for v in &self.vectors {
            let mut coords = v.coords.clone();
            coords.extend(std::iter::repeat_with(Scalar::zero).take(other.dim));
            vectors.push((coords, v.multiplicity));
        }
        for v in &other.vectors {
            let mut coords: Vec<Scalar> =
                std::iter::repeat_with(Scalar::zero).take(self.dim).collect();
            coords.extend(v.coords.iter().cloned());
            vectors.push((coords, v.multiplicity));
        }
        Arrangement::new(dim, vectors)
    }

    /// Multiset of pairwise inner products, sorted; equal for arrangements
    /// that agree up to an orthogonal change of basis and reordering.
    pub fn gram_multiset(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for v in &self.vectors {
            for w in &self.vectors {
                let mut s = Scalar::zero();
                for (a, b) in v.coords.iter().zip(&w.coords) {
                    s = s.add_ref(&a.mul_ref(b));
                }
                assert!(s.is_rational(), "gram entries must be rational");
                out.push(s.rational_part().clone());
            }
        }
        out.sort();
        out
    }
}

// ---------------------------------------------------------------------------
// Coxeter data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxeterLabel {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

impl CoxeterLabel {
    pub fn parse(s: &str) -> Result<Self, ArrangementError> {
        let t = s.trim().to_uppercase();
        let bad = || ArrangementError::UnsupportedLabel(s.to_string());
        if let Some(rest) = t.strip_prefix("I2") {
            let q: u32 = rest
                .trim_matches(|c| c == '(' || c == ')' || c == '_' || c == '-')
                .parse()
                .map_err(|_| bad())?;
            if q < 2 {
                return Err(bad());
            }
            return Ok(CoxeterLabel::I2(q));
        }
        match t.as_str() {
            "E6" => return Ok(CoxeterLabel::E6),
            "E7" => return Ok(CoxeterLabel::E7),
            "E8" => return Ok(CoxeterLabel::E8),
            "F4" => return Ok(CoxeterLabel::F4),
            "G2" => return Ok(CoxeterLabel::G2),
            "H3" => return Ok(CoxeterLabel::H3),
            "H4" => return Ok(CoxeterLabel::H4),
            _ => {}
        }
        let (family, rank) = t.split_at(1);
        let n: u32 = rank.parse().map_err(|_| bad())?;
        match (family, n) {
            ("A", n) if n >= 1 => Ok(CoxeterLabel::A(n)),
            ("B", n) if n >= 2 => Ok(CoxeterLabel::B(n)),
            ("C", n) if n >= 2 => Ok(CoxeterLabel::C(n)),
            ("D", n) if n >= 2 => Ok(CoxeterLabel::D(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterLabel::A(n) => write!(f, "A{n}"),
            CoxeterLabel::B(n) => write!(f, "B{n}"),
            CoxeterLabel::C(n) => write!(f, "C{n}"),
            CoxeterLabel::D(n) => write!(f, "D{n}"),
            CoxeterLabel::E6 => write!(f, "E6"),
            CoxeterLabel::E7 => write!(f, "E7"),
            CoxeterLabel::E8 => write!(f, "E8"),
            CoxeterLabel::F4 => write!(f, "F4"),
            CoxeterLabel::G2 => write!(f, "G2"),
            CoxeterLabel::H3 => write!(f, "H3"),
            CoxeterLabel::H4 => write!(f, "H4"),
            CoxeterLabel::I2(q) => write!(f, "I2({q})"),
        }
    }
}

/// Invariant-theory degree data of a finite Coxeter group. Compiled in and
/// validated at load time through `prod d_j = |W|` and `sum (d_j - 1) = |R+|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDatum {
    pub label: CoxeterLabel,
    pub rank: u32,
    pub degrees: Vec<u32>,
    pub order: u64,
    pub positive_roots: u32,
    /// `(short, long)` positive-root counts for the two-orbit groups.
    pub orbit_split: Option<(u32, u32)>,
}

impl CoxeterDatum {
    fn validate(&self) {
        let prod: u64 = self.degrees.iter().map(|&d| d as u64).product();
        assert_eq!(prod, self.order, "degree product must equal |W| for {}", self.label);
        let sum: u32 = self.degrees.iter().map(|&d| d - 1).sum();
        assert_eq!(
            sum, self.positive_roots,
            "sum of (d_j - 1) must equal |R+| for {}",
            self.label
        );
    }
}

/// Degree table for every supported label.
pub fn coxeter_datum(label: CoxeterLabel) -> Result<CoxeterDatum, ArrangementError> {
    let datum = match label {
        CoxeterLabel::A(n) => CoxeterDatum {
            label,
            rank: n,
            degrees: (2..=n + 1).collect(),
            order: factorial_u64(n as u64 + 1),
            positive_roots: n * (n + 1) / 2,
            orbit_split: None,
        },
        CoxeterLabel::B(n) | CoxeterLabel::C(n) => CoxeterDatum {
            label,
            rank: n,
            degrees: (1..=n).map(|j| 2 * j).collect(),
            order: (1u64 << n) * factorial_u64(n as u64),
            positive_roots: n * n,
            orbit_split: Some((n, n * (n - 1))),
        },
        CoxeterLabel::D(n) => {
            let mut degrees: Vec<u32> = (1..n).map(|j| 2 * j).collect();
            degrees.push(n);
            degrees.sort_unstable();
            CoxeterDatum {
                label,
                rank: n,
                degrees,
                order: (1u64 << (n - 1)) * factorial_u64(n as u64),
                positive_roots: n * (n - 1),
                orbit_split: None,
            }
        }
        CoxeterLabel::E6 => CoxeterDatum {
            label,
            rank: 6,
            degrees: vec![2, 5, 6, 8, 9, 12],
            order: 51_840,
            positive_roots: 36,
            orbit_split: None,
        },
        CoxeterLabel::E7 => CoxeterDatum {
            label,
            rank: 7,
            degrees: vec![2, 6, 8, 10, 12, 14, 18],
            order: 2_903_040,
            positive_roots: 63,
            orbit_split: None,
        },
        CoxeterLabel::E8 => CoxeterDatum {
            label,
            rank: 8,
            degrees: vec![2, 8, 12, 14, 18, 20, 24, 30],
            order: 696_729_600,
            positive_roots: 120,
            orbit_split: None,
        },
        CoxeterLabel::F4 => CoxeterDatum {
            label,
            rank: 4,
            degrees: vec![2, 6, 8, 12],
            order: 1152, // 2^7 * 3^2
            positive_roots: 24,
            orbit_split: Some((12, 12)),
        },
        CoxeterLabel::G2 => CoxeterDatum {
            label,
            rank: 2,
            degrees: vec![2, 6],
            order: 12,
            positive_roots: 6,
            orbit_split: Some((3, 3)),
        },
        CoxeterLabel::H3 => CoxeterDatum {
            label,
            rank: 3,
            degrees: vec![2, 6, 10],
            order: 120,
            positive_roots: 15,
            orbit_split: None,
        },
        CoxeterLabel::H4 => CoxeterDatum {
            label,
            rank: 4,
            degrees: vec![2, 12, 20, 30],
            order: 14_400,
            positive_roots: 60,
            orbit_split: None,
        },
        CoxeterLabel::I2(q) => CoxeterDatum {
            label,
            rank: 2,
            degrees: vec![2, q],
            order: 2 * q as u64,
            positive_roots: q,
            orbit_split: if q % 2 == 0 { Some((q / 2, q / 2)) } else { None },
        },
    };
    datum.validate();
    Ok(datum)
}

fn factorial_u64(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// All roots scaled to `(alpha, alpha) = 2`.
    Norm2,
    /// Short roots kept at their classical unnormalized length
    /// (`e_j` for B_n, `e_j` and `(e1 +- e2 +- e3 +- e4)/2` for F4).
    Orbitwise,
}

/// Positive roots with the requested normalization plus the degree table.
///
/// `I2(3)` and `I2(6)` are realized through their crystallographic models
/// (`A2` and `G2` in three coordinates) so that coordinates stay inside one
/// quadratic extension. `H3`, `H4` and the remaining dihedrals only admit
/// closed forms and return [`ArrangementError::NumericOnly`].
pub fn build_coxeter(
    label: CoxeterLabel,
    normalization: Normalization,
) -> Result<(Arrangement, CoxeterDatum), ArrangementError> {
    let datum = coxeter_datum(label)?;
    if normalization == Normalization::Orbitwise
        && !matches!(label, CoxeterLabel::B(_) | CoxeterLabel::C(_) | CoxeterLabel::F4)
    {
        return Err(ArrangementError::OrbitwiseUnavailable);
    }
    let arrangement = match label {
        // rank one stays in R^1 as a single normalized vector
        CoxeterLabel::A(1) => Arrangement::new(1, vec![(vec![Scalar::sqrt_int(2)], 1)]),
        CoxeterLabel::A(n) => a_series(n as usize),
        CoxeterLabel::B(n) | CoxeterLabel::C(n) => bc_series(n as usize, normalization),
        CoxeterLabel::D(n) => d_series(n as usize),
        CoxeterLabel::E6 => e_series(6),
        CoxeterLabel::E7 => e_series(7),
        CoxeterLabel::E8 => e_series(8),
        CoxeterLabel::F4 => f4(normalization),
        CoxeterLabel::G2 => g2(),
        // A1 x A1: two orthogonal lines
        CoxeterLabel::I2(2) => Arrangement::new(
            2,
            vec![
                (vec![Scalar::sqrt_int(2), Scalar::zero()], 1),
                (vec![Scalar::zero(), Scalar::sqrt_int(2)], 1),
            ],
        ),
        CoxeterLabel::I2(3) => a_series(2),
        CoxeterLabel::I2(4) => bc_series(2, Normalization::Norm2),
        CoxeterLabel::I2(6) => g2(),
        CoxeterLabel::H3 | CoxeterLabel::H4 | CoxeterLabel::I2(_) => {
            return Err(ArrangementError::NumericOnly(label.to_string()))
        }
    }?;
    Ok((arrangement, datum))
}

fn unit(dim: usize, i: usize, c: Scalar) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = std::iter::repeat_with(Scalar::zero).take(dim).collect();
    v[i] = c;
    v
}

fn e_minus_e(dim: usize, i: usize, j: usize) -> Vec<Scalar> {
    let mut v = unit(dim, i, Scalar::one());
    v[j] = Scalar::from_int(-1);
    v
}

fn e_plus_e(dim: usize, i: usize, j: usize) -> Vec<Scalar> {
    let mut v = unit(dim, i, Scalar::one());
    v[j] = Scalar::one();
    v
}

/// A_n realized in `R^{n+1}` as `e_i - e_j`, `i < j`; already `(alpha,alpha)=2`
/// and rational. Integrands are constant along the diagonal direction, so the
/// extra Gaussian coordinate integrates out exactly.
fn a_series(n: usize) -> Result<Arrangement, ArrangementError> {
    let dim = n + 1;
    let mut vectors = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            vectors.push((e_minus_e(dim, i, j), 1));
        }
    }
    Arrangement::new(dim, vectors)
}

fn bc_series(n: usize, normalization: Normalization) -> Result<Arrangement, ArrangementError> {
    let mut vectors = Vec::new();
    for i in 0..n {
        let short = match normalization {
            Normalization::Norm2 => unit(n, i, Scalar::sqrt_int(2)),
            Normalization::Orbitwise => unit(n, i, Scalar::one()),
        };
        vectors.push((short, 1));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            vectors.push((e_minus_e(n, i, j), 1));
            vectors.push((e_plus_e(n, i, j), 1));
        }
    }
    Arrangement::new(n, vectors)
}

fn d_series(n: usize) -> Result<Arrangement, ArrangementError> {
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            vectors.push((e_minus_e(n, i, j), 1));
            vectors.push((e_plus_e(n, i, j), 1));
        }
    }
    Arrangement::new(n, vectors)
}

/// E6/E7/E8 as sign-filtered full root sets in `R^8` (E8 coordinates); all
/// roots have norm 2 and rational coordinates.
fn e_series(which: usize) -> Result<Arrangement, ArrangementError> {
    let dim = 8;
    let mut roots: Vec<Vec<BigRational>> = Vec::new();
    let rat = |n: i64| BigRational::from_integer(n.into());
    // +- e_i +- e_j
    for i in 0..dim {
        for j in (i + 1)..dim {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![rat(0); dim];
                v[i] = rat(si);
                v[j] = rat(sj);
                roots.push(v);
            }
        }
    }
    // (1/2) sum +- e_i with an even number of minus signs
    for mask in 0u32..256 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let v: Vec<BigRational> = (0..dim)
            .map(|i| {
                let s = if mask & (1 << i) != 0 { -1 } else { 1 };
                BigRational::new(s.into(), 2.into())
            })
            .collect();
        roots.push(v);
    }
    // restrict to the E7 / E6 subsystems
    let keep = |v: &[BigRational]| -> bool {
        match which {
            8 => true,
            // E7: orthogonal to e7 + e8
            7 => (&v[6] + &v[7]).is_zero(),
            // E6: orthogonal to e7 + e8 and to e6 + e8
            6 => (&v[6] + &v[7]).is_zero() && (&v[5] + &v[7]).is_zero(),
            _ => unreachable!(),
        }
    };
    // positivity by a generic linear functional with binary weights
    let positive = |v: &[BigRational]| -> bool {
        let mut s = BigRational::from_integer(0.into());
        for (i, c) in v.iter().enumerate() {
            s += c * BigRational::from_integer((1i64 << i).into());
        }
        s.is_positive()
    };
    let vectors: Vec<(Vec<Scalar>, u32)> = roots
        .into_iter()
        .filter(|v| keep(v) && positive(v))
        .map(|v| (v.into_iter().map(Scalar::from_rational).collect(), 1))
        .collect();
    Arrangement::new(dim, vectors)
}

fn f4(normalization: Normalization) -> Result<Arrangement, ArrangementError> {
    let n = 4;
    let mut vectors = Vec::new();
    // long: e_i +- e_j
    for i in 0..n {
        for j in (i + 1)..n {
            vectors.push((e_minus_e(n, i, j), 1));
            vectors.push((e_plus_e(n, i, j), 1));
        }
    }
    let (short_unit, short_half) = match normalization {
        Normalization::Norm2 => (
            Scalar::sqrt_int(2),
            Scalar::sqrt_int(2).mul_ref(&Scalar::ratio(1, 2)),
        ),
        Normalization::Orbitwise => (Scalar::one(), Scalar::ratio(1, 2)),
    };
    // short: e_j and (e1 +- e2 +- e3 +- e4)/2
    for i in 0..n {
        vectors.push((unit(n, i, short_unit.clone()), 1));
    }
    for mask in 0u32..8 {
        let coords: Vec<Scalar> = (0..n)
            .map(|i| {
                let neg = i > 0 && (mask & (1 << (i - 1))) != 0;
                if neg {
                    -&short_half
                } else {
                    short_half.clone()
                }
            })
            .collect();
        vectors.push((coords, 1));
    }
    Arrangement::new(n, vectors)
}

/// G2 in three coordinates: short `e_i - e_j`, long `(2e_i - e_j - e_k)/sqrt(3)`
/// representatives, all norm 2, field Q(sqrt(3)).
fn g2() -> Result<Arrangement, ArrangementError> {
    let dim = 3;
    let third = |n: i64| Scalar::sqrt_int(3).mul_ref(&Scalar::ratio(n, 3));
    let vectors = vec![
        (e_minus_e(dim, 0, 1), 1),
        (e_minus_e(dim, 1, 2), 1),
        (e_minus_e(dim, 0, 2), 1),
        (vec![third(2), third(-1), third(-1)], 1),
        (vec![third(1), third(-2), third(1)], 1),
        (vec![third(1), third(1), third(-2)], 1),
    ];
    Arrangement::new(dim, vectors)
}

// ---------------------------------------------------------------------------
// Deformed families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeformedDatum {
    /// Deformation of the A root system: parameters `(m, p)`.
    A { m: u32, p: u32 },
    /// Deformation of the C root system: parameters `(m, r, s)` with
    /// `p = (2r+1)/(2s+1)`.
    C { m: u32, r: u32, s: u32, p: u32 },
}

/// `A_m(p)`: vectors `e_i - e_j` (`i < j <= m`) with multiplicity `p` and
/// `e_i - sqrt(p) e_{m+1}` with multiplicity 1, inside `R^{m+1}`.
pub fn build_deformed_a(m: u32, p: u32) -> Result<(Arrangement, DeformedDatum), ArrangementError> {
    assert!(m >= 1 && p >= 1);
    let dim = (m + 1) as usize;
    let sqrt_p = Scalar::sqrt_int(p);
    let mut vectors = Vec::new();
    for i in 0..m as usize {
        for j in (i + 1)..m as usize {
            vectors.push((e_minus_e(dim, i, j), p));
        }
    }
    for i in 0..m as usize {
        let mut v = unit(dim, i, Scalar::one());
        v[dim - 1] = -&sqrt_p;
        vectors.push((v, 1));
    }
    let arr = Arrangement::new(dim, vectors)?;
    Ok((arr, DeformedDatum::A { m, p }))
}

/// `C_{m+1}(r, s)`: vectors `e_i +- e_j` (mult `p`), `e_i` (mult `r`),
/// `e_{m+1}` (mult `s`) and `e_i +- sqrt(p) e_{m+1}` (mult 1) in `R^{m+1}`,
/// where `p = (2r+1)/(2s+1)` must be a positive integer. Zero-multiplicity
/// vectors are dropped.
pub fn build_deformed_c(
    m: u32,
    r: u32,
    s: u32,
) -> Result<(Arrangement, DeformedDatum), ArrangementError> {
    assert!(m >= 1);
    if !(2 * r + 1).is_multiple_of(2 * s + 1) {
        return Err(ArrangementError::IntegralityViolation(2 * r + 1, 2 * s + 1));
    }
    let p = (2 * r + 1) / (2 * s + 1);
    let dim = (m + 1) as usize;
    let sqrt_p = Scalar::sqrt_int(p);
    let mut vectors = Vec::new();
    for i in 0..m as usize {
        for j in (i + 1)..m as usize {
            vectors.push((e_minus_e(dim, i, j), p));
            vectors.push((e_plus_e(dim, i, j), p));
        }
    }
    if r >= 1 {
        for i in 0..m as usize {
            vectors.push((unit(dim, i, Scalar::one()), r));
        }
    }
    if s >= 1 {
        vectors.push((unit(dim, dim - 1, Scalar::one()), s));
    }
    for i in 0..m as usize {
        for sign in [1i64, -1] {
            let mut v = unit(dim, i, Scalar::one());
            v[dim - 1] = sqrt_p.mul_ref(&Scalar::from_int(sign));
            vectors.push((v, 1));
        }
    }
    let arr = Arrangement::new(dim, vectors)?;
    Ok((arr, DeformedDatum::C { m, r, s, p }))
}

// ---------------------------------------------------------------------------
// Contour shifts
// ---------------------------------------------------------------------------

/// Branch convention for non-integer powers on the shifted plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchMode {
    /// Integer multiplicities; the integrand is single-valued.
    Rational,
    /// Principal logarithm per factor; with a positive-chamber shift each
    /// `(alpha, u + i xi)` stays in the upper half-plane, realizing the
    /// unique continuous branch.
    PrincipalLog,
}

/// Shift vector for `i xi + R^n` with its regularity certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub shift: Vec<f64>,
    pub branch: BranchMode,
    /// `min_alpha |(alpha, xi)| / |alpha|`, the pole clearance.
    pub clearance: f64,
}

#[derive(Debug, Clone)]
pub enum ShiftStrategy {
    /// Solve strict feasibility for `(alpha, xi) < 0`.
    NegativeChamber,
    /// Solve strict feasibility for `(alpha, xi) > 0` (needed by the
    /// principal-log branch).
    PositiveChamber,
    Given(Vec<f64>),
}

const REGULARITY_EPS: f64 = 1e-9;

/// Certified regular shift for the arrangement. Chamber strategies scale the
/// representative so that the pole clearance grows with the maximal
/// multiplicity (deeper poles need more distance for the quadrature), capped
/// to keep the `e^{xi^2/2}` cancellation mild.
pub fn regular_shift(
    arrangement: &Arrangement,
    strategy: ShiftStrategy,
) -> Result<ContourSpec, ArrangementError> {
    let coords = arrangement.numeric_coords();
    let shift = match strategy {
        ShiftStrategy::Given(xi) => {
            assert_eq!(xi.len(), arrangement.dim(), "shift dimension mismatch");
            xi
        }
        ShiftStrategy::NegativeChamber | ShiftStrategy::PositiveChamber => {
            let mut v =
                chamber_representative(&coords).ok_or(ArrangementError::NoPositiveHalfspace)?;
            if matches!(strategy, ShiftStrategy::NegativeChamber) {
                for c in &mut v {
                    *c = -*c;
                }
            }
            // deeper shifts buy pole clearance at the cost of e^{xi^2/2}
            // cancellation; in one dimension the oscillation is mild enough
            // to push straight to the cap
            let target = if arrangement.dim() == 1 {
                2.5
            } else {
                (1.0 + 0.5 * arrangement.max_multiplicity() as f64).min(2.5)
            };
            let clr = clearance(&coords, &v);
            let scale = if clr > 0.0 { target / clr } else { 1.0 };
            v.iter().map(|c| c * scale).collect()
        }
    };
    let clr = clearance(&coords, &shift);
    if !coords.is_empty() && clr <= REGULARITY_EPS {
        return Err(ArrangementError::NotRegular(clr));
    }
    Ok(ContourSpec { shift, branch: BranchMode::Rational, clearance: clr })
}

/// Chamber-representative shift for floating vector data (used by the
/// Wronskian-emitted 2D configurations), scaled to the target clearance.
pub fn regular_shift_numeric(
    coords: &[Vec<f64>],
    target_clearance: f64,
) -> Result<ContourSpec, ArrangementError> {
    let mut v = chamber_representative(coords).ok_or(ArrangementError::NoPositiveHalfspace)?;
    let clr = clearance(coords, &v);
    if clr <= REGULARITY_EPS {
        return Err(ArrangementError::NotRegular(clr));
    }
    let scale = target_clearance / clr;
    for c in &mut v {
        *c *= scale;
    }
    Ok(ContourSpec {
        shift: v,
        branch: BranchMode::Rational,
        clearance: target_clearance,
    })
}

pub fn clearance(coords: &[Vec<f64>], xi: &[f64]) -> f64 {
    coords
        .iter()
        .map(|a| {
            let dot: f64 = a.iter().zip(xi).map(|(x, y)| x * y).sum();
            let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            dot.abs() / norm
        })
        .fold(f64::INFINITY, f64::min)
}

/// Perceptron-style search for `v` with `(alpha, v) > 0` for all alpha.
fn chamber_representative(coords: &[Vec<f64>]) -> Option<Vec<f64>> {
    if coords.is_empty() {
        return Some(vec![]);
    }
    let dim = coords[0].len();
    let normalized: Vec<Vec<f64>> = coords
        .iter()
        .map(|a| {
            let n = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            a.iter().map(|x| x / n).collect()
        })
        .collect();
    let mut v = vec![0.0; dim];
    for a in &normalized {
        for (vi, ai) in v.iter_mut().zip(a) {
            *vi += ai;
        }
    }
    for _ in 0..20_000 {
        let mut worst = f64::INFINITY;
        let mut worst_idx = 0;
        for (k, a) in normalized.iter().enumerate() {
            let dot: f64 = a.iter().zip(&v).map(|(x, y)| x * y).sum();
            if dot < worst {
                worst = dot;
                worst_idx = k;
            }
        }
        if worst > 1e-3 {
            return Some(v);
        }
        for (vi, ai) in v.iter_mut().zip(&normalized[worst_idx]) {
            *vi += ai;
        }
    }
    None
}
