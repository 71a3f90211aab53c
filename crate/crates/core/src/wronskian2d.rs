//! Exact trigonometric Wronskians for the planar configurations
//! `A^q_{(m, mtilde, 1^l)}`: compute the ratio `Q`, factor out
//! `(sin q phi)^m (cos q phi)^{mtilde}`, extract the remaining angles
//! numerically, and emit the line arrangement.

use crate::closed_forms::dihedral_frequencies;
use crate::quadrature::NumericArrangement;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum WronskianError {
    #[error("repeated frequency {0}: the Wronskian vanishes identically")]
    RepeatedFrequency(u64),
    #[error("trigonometric division left a nonzero remainder")]
    NotDivisible,
    #[error("factorization residual {0:.3e} exceeds tolerance")]
    FactorizationMismatch(f64),
    #[error("root finding did not converge")]
    RootsDiverged,
}

/// Finite trigonometric polynomial
/// `sum_k a_k cos(k phi) + b_k sin(k phi)` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TrigPoly {
    // freq -> (cos coefficient, sin coefficient); no zero entries, freq 0
    // carries no sine part
    terms: BTreeMap<u64, (BigRational, BigRational)>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut t = TrigPoly::zero();
        t.add_cos(0, c);
        t
    }

    pub fn cos(k: u64) -> Self {
        let mut t = TrigPoly::zero();
        t.add_cos(k, BigRational::one());
        t
    }

    pub fn sin(k: u64) -> Self {
        let mut t = TrigPoly::zero();
        t.add_sin(k, BigRational::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_freq(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &(BigRational, BigRational))> {
        self.terms.iter()
    }

    fn add_cos(&mut self, k: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(k)
            .or_insert_with(|| (BigRational::zero(), BigRational::zero()));
        e.0 += c;
        if e.0.is_zero() && e.1.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn add_sin(&mut self, k: u64, c: BigRational) {
        if c.is_zero() || k == 0 {
            return;
        }
        let e = self
            .terms
            .entry(k)
            .or_insert_with(|| (BigRational::zero(), BigRational::zero()));
        e.1 += c;
        if e.0.is_zero() && e.1.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (&k, (a, b)) in &rhs.terms {
            out.add_cos(k, a.clone());
            out.add_sin(k, b.clone());
        }
        out
    }

    pub fn neg(&self) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (&k, (a, b)) in &self.terms {
            out.add_cos(k, -a.clone());
            out.add_sin(k, -b.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TrigPoly) -> TrigPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &BigRational) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (&k, (a, b)) in &self.terms {
            out.add_cos(k, a * c);
            out.add_sin(k, b * c);
        }
        out
    }

    /// Product via the product-to-sum identities; exact.
    pub fn mul(&self, rhs: &TrigPoly) -> TrigPoly {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = TrigPoly::zero();
        for (&k1, (a1, b1)) in &self.terms {
            for (&k2, (a2, b2)) in &rhs.terms {
                let sum = k1 + k2;
                let (diff, diff_sign) = if k1 >= k2 {
                    (k1 - k2, BigRational::one())
                } else {
                    (k2 - k1, -BigRational::one())
                };
                // cos cos: (1/2)[cos(d) + cos(s)]
                let cc = a1 * a2 * &half;
                out.add_cos(diff, cc.clone());
                out.add_cos(sum, cc);
                // sin sin: (1/2)[cos(d) - cos(s)]
                let ss = b1 * b2 * &half;
                out.add_cos(diff, ss.clone());
                out.add_cos(sum, -ss);
                // sin(k1) cos(k2): (1/2)[sin(s) + sign * sin(d)]
                let sc = b1 * a2 * &half;
                out.add_sin(sum, sc.clone());
                out.add_sin(diff, sc * &diff_sign);
                // cos(k1) sin(k2): (1/2)[sin(s) - sign * sin(d)]
                let cs = a1 * b2 * &half;
                out.add_sin(sum, cs.clone());
                out.add_sin(diff, -(cs * &diff_sign));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TrigPoly {
        let mut acc = TrigPoly::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (&k, (a, b)) in &self.terms {
            let kf = BigRational::from_integer(BigInt::from(k));
            out.add_sin(k, -(a * &kf));
            out.add_cos(k, b * &kf);
        }
        out
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let mut v = 0.0;
        for (&k, (a, b)) in &self.terms {
            let (s, c) = (k as f64 * phi).sin_cos();
            v += rat_f64(a) * c + rat_f64(b) * s;
        }
        v
    }

    /// Laurent coefficients in `z = e^{i phi}`:
    /// `c_k = a_k/2 - i b_k/2`, `c_{-k} = conj(c_k)`.
    fn laurent(&self) -> BTreeMap<i64, Gaussian> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out: BTreeMap<i64, Gaussian> = BTreeMap::new();
        for (&k, (a, b)) in &self.terms {
            if k == 0 {
                out.entry(0).or_insert_with(Gaussian::zero).re += a;
                continue;
            }
            let e = out.entry(k as i64).or_insert_with(Gaussian::zero);
            e.re += a * &half;
            e.im -= b * &half;
            let e = out.entry(-(k as i64)).or_insert_with(Gaussian::zero);
            e.re += a * &half;
            e.im += b * &half;
        }
        out.retain(|_, g| !g.is_zero());
        out
    }

    fn from_laurent(map: &BTreeMap<i64, Gaussian>) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (&k, g) in map {
            if k < 0 {
                continue;
            }
            if k == 0 {
                debug_assert!(g.im.is_zero());
                out.add_cos(0, g.re.clone());
            } else {
                let conj = map.get(&(-k)).cloned().unwrap_or_else(Gaussian::zero);
                out.add_cos(k as u64, &g.re + &conj.re);
                out.add_sin(k as u64, &conj.im - &g.im);
            }
        }
        out
    }

    /// Exact division in the trig-polynomial ring (through Laurent series in
    /// `e^{i phi}` over the Gaussian rationals).
    pub fn div_exact(&self, rhs: &TrigPoly) -> Result<TrigPoly, WronskianError> {
        if rhs.is_zero() {
            return Err(WronskianError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(TrigPoly::zero());
        }
        let num = self.laurent();
        let den = rhs.laurent();
        let num_lo = *num.keys().next().unwrap();
        let den_lo = *den.keys().next().unwrap();
        let num_hi = *num.keys().next_back().unwrap();
        let den_hi = *den.keys().next_back().unwrap();
        if num_hi - num_lo < den_hi - den_lo {
            return Err(WronskianError::NotDivisible);
        }
        // dense coefficient vectors, ascending exponent
        let n_len = (num_hi - num_lo + 1) as usize;
        let d_len = (den_hi - den_lo + 1) as usize;
        let mut n_vec = vec![Gaussian::zero(); n_len];
        for (&k, g) in &num {
            n_vec[(k - num_lo) as usize] = g.clone();
        }
        let mut d_vec = vec![Gaussian::zero(); d_len];
        for (&k, g) in &den {
            d_vec[(k - den_lo) as usize] = g.clone();
        }
        let lead = d_vec.last().unwrap().clone();
        let q_len = n_len - d_len + 1;
        let mut quot = vec![Gaussian::zero(); q_len];
        for qi in (0..q_len).rev() {
            let c = n_vec[qi + d_len - 1].div(&lead);
            if c.is_zero() {
                continue;
            }
            for di in 0..d_len {
                let sub = c.mul(&d_vec[di]);
                n_vec[qi + di] = n_vec[qi + di].sub(&sub);
            }
            quot[qi] = c;
        }
        if n_vec.iter().any(|g| !g.is_zero()) {
            return Err(WronskianError::NotDivisible);
        }
        let q_lo = num_lo - den_lo;
        let mut map = BTreeMap::new();
        for (i, g) in quot.into_iter().enumerate() {
            if !g.is_zero() {
                map.insert(q_lo + i as i64, g);
            }
        }
        Ok(TrigPoly::from_laurent(&map))
    }
}

impl std::fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, (a, b)) in &self.terms {
            if !a.is_zero() {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({a})cos{k}")?;
                first = false;
            }
            if !b.is_zero() {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({b})sin{k}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Gaussian {
    re: BigRational,
    im: BigRational,
}

impl Gaussian {
    fn zero() -> Self {
        Gaussian { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn div(&self, o: &Gaussian) -> Gaussian {
        let norm = &o.re * &o.re + &o.im * &o.im;
        assert!(!norm.is_zero());
        Gaussian {
            re: (&self.re * &o.re + &self.im * &o.im) / &norm,
            im: (&self.im * &o.re - &self.re * &o.im) / &norm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `Wr[chi_0, ..., chi_m]` with `chi_j = cos(k_j phi)` or `sin(k_j phi)`,
/// expanded exactly (Leibniz over permutations; the matrix entries are
/// single-term trig polynomials).
pub fn wronskian(freqs: &[u64], kind: TrigKind) -> Result<TrigPoly, WronskianError> {
    let n = freqs.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if freqs[i] == freqs[j] {
                return Err(WronskianError::RepeatedFrequency(freqs[i]));
            }
        }
    }
    // matrix[i][j] = d^i/dphi^i chi_j
    let mut matrix: Vec<Vec<TrigPoly>> = Vec::with_capacity(n);
    let base: Vec<TrigPoly> = freqs
        .iter()
        .map(|&k| match kind {
            TrigKind::Cos => TrigPoly::cos(k),
            TrigKind::Sin => TrigPoly::sin(k),
        })
        .collect();
    matrix.push(base);
    for i in 1..n {
        let prev = &matrix[i - 1];
        let row = prev.iter().map(TrigPoly::derivative).collect();
        matrix.push(row);
    }
    let mut det = TrigPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_det(&matrix, &mut perm, 0, true, &mut det);
    Ok(det)
}

fn permute_det(
    matrix: &[Vec<TrigPoly>],
    perm: &mut Vec<usize>,
    k: usize,
    positive: bool,
    acc: &mut TrigPoly,
) {
    let n = perm.len();
    if k == n {
        let mut prod = TrigPoly::constant(BigRational::one());
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&matrix[i][j]);
        }
        *acc = if positive { acc.add(&prod) } else { acc.sub(&prod) };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        let sign = if i == k { positive } else { !positive };
        permute_det(matrix, perm, k + 1, sign, acc);
        perm.swap(k, i);
    }
}

/// Result of factoring `Q = Wr[chi_0..chi_m] / Wr[chi_0..chi_{m-1}]` as
/// `A (sin q phi)^m (cos q phi)^{mtilde} prod_j sin(q phi - phi_j)`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub q_poly: TrigPoly,
    /// Exact integer coefficient (sign resolved numerically).
    pub a_coeff: BigInt,
    /// `|A|^2` recovered exactly from the leading Laurent coefficient of the
    /// residual factor (`|c_top|^2 4^l`); an independent exact route to the
    /// coefficient magnitude.
    pub a_squared_data: BigRational,
    /// The `l` angles, each in `(0, pi)`.
    pub angles: Vec<f64>,
    /// Max relative reconstruction error over the sample angles.
    pub residual: f64,
    /// Two extracted angles collided within root-finding accuracy.
    pub angle_collision: bool,
}

/// `|A| = 2^{m+mtilde+l-1} prod_{j<m} (k_m - k_j)` from the frequency data.
pub fn a_coeff_magnitude(m: u32, mtilde: u32, l: u32, q: u32) -> BigInt {
    let freqs = dihedral_frequencies(m, mtilde, l, q);
    let km = *freqs.last().unwrap();
    let mut a_abs = BigInt::one() << (m + mtilde + l - 1);
    for &kj in &freqs[..m as usize] {
        a_abs *= BigInt::from(km - kj);
    }
    a_abs
}

/// Factor the Wronskian ratio for parameters `(m, mtilde, l, q)`.
pub fn factorize_q(m: u32, mtilde: u32, l: u32, q: u32) -> Result<Factorization, WronskianError> {
    let freqs = dihedral_frequencies(m, mtilde, l, q);
    let w_m = wronskian(&freqs, TrigKind::Cos)?;
    let w_prev = wronskian(&freqs[..m as usize], TrigKind::Cos)?;
    let q_poly = w_m.div_exact(&w_prev)?;
    let divisor = TrigPoly::sin(q as u64)
        .pow(m)
        .mul(&TrigPoly::cos(q as u64).pow(mtilde));
    let rest = q_poly.div_exact(&divisor)?;

    // |A| from the Darboux data
    let a_abs = a_coeff_magnitude(m, mtilde, l, q);

    // independent exact magnitude: the leading Laurent coefficient of the
    // residual factor satisfies |c_top|^2 = |A|^2 / 4^l
    let rest_laurent = rest.laurent();
    let c_top = rest_laurent
        .values()
        .next_back()
        .cloned()
        .unwrap_or_else(Gaussian::zero);
    let four_l = BigRational::from_integer(BigInt::one() << (2 * l));
    let a_squared_data = (&c_top.re * &c_top.re + &c_top.im * &c_top.im) * four_l;
    if a_squared_data != BigRational::from_integer(&a_abs * &a_abs) {
        return Err(WronskianError::FactorizationMismatch(f64::INFINITY));
    }

    // angles from the roots of `rest` viewed as a polynomial in v = e^{2 i q phi}
    let mut angles = Vec::new();
    let mut angle_collision = false;
    if l > 0 {
        let laurent = rest.laurent();
        let two_q = 2 * q as i64;
        let half_l = (l / 2) as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); l as usize + 1];
        for (&k, g) in &laurent {
            if k.rem_euclid(two_q) != 0 {
                return Err(WronskianError::FactorizationMismatch(f64::INFINITY));
            }
            let j = k / two_q;
            debug_assert!(j.abs() <= half_l);
            coeffs[(j + half_l) as usize] = Complex64::new(rat_f64(&g.re), rat_f64(&g.im));
        }
        let roots = durand_kerner(&coeffs)?;
        for v in &roots {
            if (v.norm() - 1.0).abs() > 1e-6 {
                return Err(WronskianError::FactorizationMismatch(f64::INFINITY));
            }
            let mut arg = v.arg();
            if arg <= 0.0 {
                arg += 2.0 * PI;
            }
            angles.push(arg / 2.0);
        }
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in angles.windows(2) {
            if (w[1] - w[0]).abs() < 1e-8 {
                angle_collision = true;
            }
        }
    }

    // sign of A: compare Q against the reconstruction at a reference angle
    let phi_star = PI / (4.0 * (q * (m + mtilde + l)) as f64);
    let recon = |a: f64, phi: f64| -> f64 {
        let mut v = a
            * (q as f64 * phi).sin().powi(m as i32)
            * (q as f64 * phi).cos().powi(mtilde as i32);
        for &aj in &angles {
            v *= (q as f64 * phi - aj).sin();
        }
        v
    };
    let a_abs_f = big_f64(&a_abs);
    let q_at_star = q_poly.eval(phi_star);
    let a_signed_f = if q_at_star * recon(a_abs_f, phi_star) >= 0.0 {
        a_abs_f
    } else {
        -a_abs_f
    };
    let a_coeff = if a_signed_f < 0.0 { -a_abs.clone() } else { a_abs.clone() };

    // reconstruction residual over a deterministic angle sweep
    let mut scale = 0.0f64;
    let mut worst = 0.0f64;
    let golden = 0.618_033_988_749_894_9_f64;
    let samples: Vec<f64> = (1..=50).map(|i| (i as f64 * golden).fract() * PI).collect();
    for &phi in &samples {
        scale = scale.max(q_poly.eval(phi).abs());
    }
    for &phi in &samples {
        let diff = (q_poly.eval(phi) - recon(a_signed_f, phi)).abs();
        worst = worst.max(diff);
    }
    let residual = worst / scale.max(1e-300);
    if residual > 1e-8 {
        return Err(WronskianError::FactorizationMismatch(residual));
    }
    Ok(Factorization {
        q_poly,
        a_coeff,
        a_squared_data,
        angles,
        residual,
        angle_collision,
    })
}

/// Lines of the configuration: angles `phi_{j,s} = (phi_j + pi s)/q` with
/// `phi_0 = 0` (multiplicity `m`), `phi_{l+1} = pi/2` (multiplicity
/// `mtilde`), extracted angles multiplicity 1; vectors
/// `sqrt2 (-sin phi, cos phi)`. Zero multiplicities are dropped.
pub fn emit_arrangement(m: u32, mtilde: u32, q: u32, angles: &[f64]) -> NumericArrangement {
    let mut vectors = Vec::new();
    let mut push = |phi0: f64, mult: u32| {
        if mult == 0 {
            return;
        }
        for s in 0..q {
            let phi = (phi0 + PI * s as f64) / q as f64;
            vectors.push((
                vec![-(2f64).sqrt() * phi.sin(), (2f64).sqrt() * phi.cos()],
                mult,
            ));
        }
    };
    push(0.0, m);
    for &a in angles {
        push(a, 1);
    }
    push(PI / 2.0, mtilde);
    NumericArrangement { dim: 2, vectors }
}

fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>, WronskianError> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs[deg];
    if lead.norm() == 0.0 {
        return Err(WronskianError::RootsDiverged);
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            v = v * z + c;
        }
        v
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut max_move = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / den;
            roots[i] -= delta;
            max_move = max_move.max(delta.norm());
        }
        if max_move < 1e-14 {
            return Ok(roots);
        }
    }
    Err(WronskianError::RootsDiverged)
}

fn rat_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn big_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_basics() {
        // Wr[cos(0 phi)] = 1
        let w = wronskian(&[0], TrigKind::Cos).unwrap();
        assert_eq!(w, TrigPoly::constant(BigRational::one()));
        // Wr[1, cos phi] = -sin phi
        let w = wronskian(&[0, 1], TrigKind::Cos).unwrap();
        assert_eq!(w, TrigPoly::sin(1).neg());
        // repeated frequency
        assert!(matches!(
            wronskian(&[1, 1], TrigKind::Cos),
            Err(WronskianError::RepeatedFrequency(1))
        ));
    }

    #[test]
    fn wronskian_matches_numeric_determinant() {
        // Wr[sin phi, sin 2phi] against the 2x2 numeric determinant
        let w = wronskian(&[1, 2], TrigKind::Sin).unwrap();
        for i in 0..10 {
            let phi = 0.17 + 0.29 * i as f64;
            let numeric = phi.sin() * 2.0 * (2.0 * phi).cos() - (2.0 * phi).sin() * phi.cos();
            assert!((w.eval(phi) - numeric).abs() < 1e-12);
        }
    }

    #[test]
    fn trig_mul_identity() {
        // sin^2 + cos^2 = 1
        let s = TrigPoly::sin(3);
        let c = TrigPoly::cos(3);
        let one = s.mul(&s).add(&c.mul(&c));
        assert_eq!(one, TrigPoly::constant(BigRational::one()));
    }

    #[test]
    fn div_round_trip() {
        let a = TrigPoly::sin(1).mul(&TrigPoly::cos(2)).add(&TrigPoly::cos(5));
        let b = TrigPoly::sin(2).add(&TrigPoly::constant(BigRational::new(3.into(), 7.into())));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(matches!(
            TrigPoly::cos(1).div_exact(&TrigPoly::sin(2)),
            Err(WronskianError::NotDivisible)
        ));
    }

    #[test]
    fn factorize_simple_cases() {
        // (1,0,0,1): Q = -sin phi, A = -1
        let f = factorize_q(1, 0, 0, 1).unwrap();
        assert_eq!(f.q_poly, TrigPoly::sin(1).neg());
        assert_eq!(f.a_coeff, BigInt::from(-1));
        assert!(f.angles.is_empty());

        // (1,1,0,1): Q = -2 sin 2phi = -4 sin cos, A = -4
        let f = factorize_q(1, 1, 0, 1).unwrap();
        assert_eq!(f.a_coeff, BigInt::from(-4));
        assert!(f.residual < 1e-12);

        // (2,1,0,1): A = +24 (hand expansion of Wr[1, cos, cos3])
        let f = factorize_q(2, 1, 0, 1).unwrap();
        assert_eq!(f.a_coeff, BigInt::from(24));
    }

    #[test]
    fn factorize_with_angles() {
        // (1,1,2,1): the two angles are pi/4 and 3pi/4, summing to pi
        let f = factorize_q(1, 1, 2, 1).unwrap();
        use num_traits::Signed;
        assert_eq!(f.a_coeff.abs(), BigInt::from(32));
        assert_eq!(f.angles.len(), 2);
        assert!((f.angles[0] - PI / 4.0).abs() < 1e-10);
        assert!((f.angles[1] - 3.0 * PI / 4.0).abs() < 1e-10);
        let sum: f64 = f.angles.iter().sum();
        assert!((sum - PI).abs() < 1e-10);
        assert!(!f.angle_collision);
    }

    #[test]
    fn emit_matches_dihedral() {
        // (1,1,0,1) -> two orthogonal lines
        let arr = emit_arrangement(1, 1, 1, &[]);
        assert_eq!(arr.vectors.len(), 2);
        let dot: f64 = arr.vectors[0]
            .0
            .iter()
            .zip(&arr.vectors[1].0)
            .map(|(a, b)| a * b)
            .sum();
        assert!(dot.abs() < 1e-12);
        // (1,1,0,2) -> four lines at 45 degrees, the I2(4) geometry with
        // the two multiplicities alternating around the circle
        let arr = emit_arrangement(1, 1, 2, &[]);
        assert_eq!(arr.vectors.len(), 4);
        let (i24, _) = crate::arrangements::build_coxeter(
            crate::arrangements::CoxeterLabel::I2(4),
            crate::arrangements::Normalization::Norm2,
        )
        .unwrap();
        let gram = |vs: &[Vec<f64>]| -> Vec<i64> {
            let mut g: Vec<i64> = vs
                .iter()
                .flat_map(|a| {
                    vs.iter().map(move |b| {
                        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                        (dot.abs() * 1e6).round() as i64
                    })
                })
                .collect();
            g.sort_unstable();
            g
        };
        let emitted: Vec<Vec<f64>> = arr.vectors.iter().map(|(v, _)| v.clone()).collect();
        let reference: Vec<Vec<f64>> = i24.numeric_coords();
        assert_eq!(gram(&emitted), gram(&reference));
    }
}
