//! Complex gamma function and exact gamma-product bookkeeping.
//!
//! Floating evaluation uses the Stirling series after recursion pushes the
//! argument into its convergence region, with the reflection formula for the
//! left half-plane. Poles are reported, never returned as infinities.
//!
//! Exact evaluation of gamma products at integer and half-integer arguments
//! runs through [`GammaProd`], which keeps `sqrt(pi)` and `sqrt(2)` symbolic
//! so that cancellations such as `(2 pi)^{-(m+1)/2} * Gamma(1/2) * ...`
//! resolve to exact rationals.

use crate::exact_algebra::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum GammaError {
    #[error("gamma pole at argument {re}{im:+}i", re = .0.re, im = .0.im)]
    Pole(Complex64),
}

const INT_EPS: f64 = 1e-12;

/// Is `z` (numerically) a real integer?
pub fn near_integer(z: Complex64) -> Option<i64> {
    if z.im.abs() < INT_EPS {
        let r = z.re.round();
        if (z.re - r).abs() < INT_EPS && r.abs() < 9e15 {
            return Some(r as i64);
        }
    }
    None
}

/// Principal branch of `ln Gamma` on the complex plane.
pub fn ln_gamma(mut z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: ln G(z) = ln(pi / sin(pi z)) - ln G(1 - z)
        let s = (PI * z).sin();
        return Complex64::new(PI, 0.0).ln() - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    // recursion until the Stirling series converges well
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 10.0 {
        shift -= z.ln();
        z += 1.0;
    }
    // Stirling with Bernoulli terms B_2 .. B_16
    const COEF: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let z2 = z * z;
    let mut zp = z;
    for c in COEF {
        series += c / zp;
        zp *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series + shift
}

/// `Gamma(z)` with pole detection at nonpositive integers.
pub fn gamma(z: Complex64) -> Result<Complex64, GammaError> {
    if let Some(n) = near_integer(z) {
        if n <= 0 {
            return Err(GammaError::Pole(z));
        }
        if n <= 20 {
            let mut acc = 1.0f64;
            for k in 2..n {
                acc *= k as f64;
            }
            return Ok(Complex64::new(acc, 0.0));
        }
    }
    Ok(ln_gamma(z).exp())
}

/// The entire function `E(x) = (1 - e^{-2 pi i x}) Gamma(x)`.
///
/// The phase zero cancels every gamma pole: `E(-q) = 2 pi i (-1)^q / q!` for
/// integers `q >= 0`, and `E` vanishes at positive integers. Ratios of `E`
/// values evaluate the phase-times-gamma products of the deformed
/// Macdonald-Mehta closed forms uniformly in their parameters, with no
/// case analysis at integer couplings.
pub fn e_entire(x: Complex64) -> Complex64 {
    if let Some(n) = near_integer(x) {
        if n > 0 {
            return Complex64::new(0.0, 0.0);
        }
        let q = (-n) as u32;
        let mut fact = 1.0f64;
        for k in 2..=q as u64 {
            fact *= k as f64;
        }
        let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
        return Complex64::new(0.0, 2.0 * PI * sign / fact);
    }
    let phase = Complex64::new(1.0, 0.0) - (Complex64::new(0.0, -2.0 * PI) * x).exp();
    phase * ln_gamma(x).exp()
}

/// `(1 - e^{2 pi i c s}) / (1 - e^{2 pi i s})` with its limit `c` at integer
/// `s` (the removable singularity of the contour phase factors).
pub fn phase_ratio(c: f64, s: Complex64) -> Complex64 {
    if near_integer(s).is_some() {
        return Complex64::new(c, 0.0);
    }
    let num = Complex64::new(1.0, 0.0) - (Complex64::new(0.0, 2.0 * PI) * c * s).exp();
    let den = Complex64::new(1.0, 0.0) - (Complex64::new(0.0, 2.0 * PI) * s).exp();
    num / den
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)` over the rationals.
pub fn pochhammer(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Exact accumulator for products of gamma values, rational factors and
/// powers of 2, of the form `r * sqrt(pi)^a * sqrt(2)^b` with `r` rational.
///
/// `finish` produces an exact [`Scalar`] when the `sqrt(pi)` exponent has
/// cancelled to zero (the radical `sqrt(2)` is representable). A pole or an
/// argument outside the integer/half-integer lattice poisons the accumulator
/// and `finish` returns `None`.
#[derive(Debug, Clone)]
pub struct GammaProd {
    rat: BigRational,
    sqrt_pi_pow: i64,
    sqrt2_pow: i64,
    valid: bool,
    pole: bool,
}

impl Default for GammaProd {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaProd {
    pub fn new() -> Self {
        GammaProd {
            rat: BigRational::one(),
            sqrt_pi_pow: 0,
            sqrt2_pow: 0,
            valid: true,
            pole: false,
        }
    }

    pub fn is_pole(&self) -> bool {
        self.pole
    }

    pub fn mul_rational(&mut self, r: &BigRational) -> &mut Self {
        if r.is_zero() {
            self.rat = BigRational::zero();
        } else {
            self.rat *= r;
        }
        self
    }

    pub fn mul_int(&mut self, n: i64) -> &mut Self {
        self.mul_rational(&BigRational::from_integer(n.into()))
    }

    pub fn div_rational(&mut self, r: &BigRational) -> &mut Self {
        assert!(!r.is_zero());
        self.rat /= r;
        self
    }

    pub fn mul_sign(&mut self, negative: bool) -> &mut Self {
        if negative {
            self.rat = -self.rat.clone();
        }
        self
    }

    /// Multiply by `2^e` where `2e` must be an integer (half-integer `e` adds
    /// a `sqrt(2)` factor).
    pub fn mul_pow2(&mut self, e: &BigRational) -> &mut Self {
        let doubled = e * BigRational::from_integer(2.into());
        if !doubled.is_integer() {
            self.valid = false;
            return self;
        }
        match doubled.to_integer().to_i64() {
            Some(k) => self.sqrt2_pow += k,
            None => self.valid = false,
        }
        self
    }

    pub fn mul_sqrt_pi_pow(&mut self, k: i64) -> &mut Self {
        self.sqrt_pi_pow += k;
        self
    }

    /// Multiply by `Gamma(q)` exactly; `q` must be a positive integer, or a
    /// half-integer (any sign). Nonpositive integers mark a pole.
    pub fn mul_gamma(&mut self, q: &BigRational) -> &mut Self {
        self.gamma_pow(q, 1)
    }

    pub fn div_gamma(&mut self, q: &BigRational) -> &mut Self {
        self.gamma_pow(q, -1)
    }

    fn gamma_pow(&mut self, q: &BigRational, e: i64) -> &mut Self {
        if !self.valid {
            return self;
        }
        if q.is_integer() {
            if !q.is_positive() {
                if e > 0 {
                    self.pole = true;
                }
                self.valid = false;
                return self;
            }
            let n = match q.to_integer().to_u64() {
                Some(n) => n,
                None => {
                    self.valid = false;
                    return self;
                }
            };
            let f = factorial(n - 1);
            if e > 0 {
                self.rat *= &f;
            } else {
                self.rat /= &f;
            }
            return self;
        }
        let doubled = q * BigRational::from_integer(2.into());
        if !doubled.is_integer() {
            self.valid = false;
            return self;
        }
        // Gamma(k + 1/2) = sqrt(pi) * prod_{j=1..k} (j - 1/2) upward, or
        // divide downward for negative k; both stay rational * sqrt(pi).
        let two = BigRational::from_integer(2.into());
        let k = (q - BigRational::new(1.into(), 2.into())).to_integer();
        let k = match k.to_i64() {
            Some(k) => k,
            None => {
                self.valid = false;
                return self;
            }
        };
        let mut r = BigRational::one();
        if k >= 0 {
            for j in 1..=k {
                r *= BigRational::from_integer(BigInt::from(2 * j - 1)) / &two;
            }
        } else {
            for j in 0..(-k) {
                let factor = BigRational::from_integer(BigInt::from(-2 * j - 1)) / &two;
                r /= factor;
            }
        }
        if e > 0 {
            self.rat *= &r;
            self.sqrt_pi_pow += 1;
        } else {
            self.rat /= &r;
            self.sqrt_pi_pow -= 1;
        }
        self
    }

    pub fn mul_pochhammer(&mut self, x: &BigRational, n: u64) -> &mut Self {
        self.mul_rational(&pochhammer(x, n))
    }

    /// `r * sqrt(2)^b` as an exact scalar, if `sqrt(pi)` cancelled.
    pub fn finish(&self) -> Option<Scalar> {
        if !self.valid || self.sqrt_pi_pow != 0 {
            return None;
        }
        let two = BigRational::from_integer(2.into());
        let (half, rem) = self.sqrt2_pow.div_rem(&2);
        let mut r = self.rat.clone();
        let mut e = half;
        while e > 0 {
            r *= &two;
            e -= 1;
        }
        while e < 0 {
            r /= &two;
            e += 1;
        }
        if rem == 0 {
            Some(Scalar::from_rational(r))
        } else if rem == 1 || rem == -1 {
            if rem == -1 {
                r /= &two;
            }
            Some(Scalar::from_parts(BigRational::zero(), r, 2))
        } else {
            unreachable!()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integers_and_halves() {
        assert!((gamma(Complex64::new(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-13);
        let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-13);
        assert!(gamma(Complex64::new(-3.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_reflection_accuracy() {
        // Gamma(-1.5) = 4 sqrt(pi) / 3
        let g = gamma(Complex64::new(-1.5, 0.0)).unwrap();
        assert!((g.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-12);
        // |Gamma(1 + i)| known value
        let g = gamma(Complex64::new(1.0, 1.0)).unwrap();
        let expect = Complex64::new(0.498_015_668_118_356_04, -0.154_949_828_301_810_69);
        assert!((g - expect).norm() < 1e-12);
    }

    #[test]
    fn e_entire_matches_definition_and_limits() {
        let x = Complex64::new(-1.3, 0.2);
        let direct = (Complex64::new(1.0, 0.0)
            - (Complex64::new(0.0, -2.0 * PI) * x).exp())
            * ln_gamma(x).exp();
        assert!((e_entire(x) - direct).norm() < 1e-12);
        // E(-2) = 2 pi i / 2
        let e2 = e_entire(Complex64::new(-2.0, 0.0));
        assert!((e2 - Complex64::new(0.0, PI)).norm() < 1e-12);
        // continuity across the integer
        let e2eps = e_entire(Complex64::new(-2.0 + 1e-7, 0.0));
        assert!((e2 - e2eps).norm() < 1e-5);
    }

    #[test]
    fn phase_ratio_limits() {
        let r = phase_ratio(3.0, Complex64::new(2.0, 0.0));
        assert!((r - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        let s = Complex64::new(0.25, 0.0);
        let r = phase_ratio(2.0, s);
        // (1 - e^{pi i}) / (1 - e^{pi i /2}) = 2 / (1 - i) = 1 + i
        assert!((r - Complex64::new(1.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn gamma_prod_half_integers() {
        // (2 pi)^{-1} * Gamma(1/2) * Gamma(5/2) = (1/2pi) * sqrt(pi) * (3/4) sqrt(pi) = 3/8
        let mut g = GammaProd::new();
        g.mul_pow2(&BigRational::from_integer((-1).into()))
            .mul_sqrt_pi_pow(-2)
            .mul_gamma(&BigRational::new(1.into(), 2.into()))
            .mul_gamma(&BigRational::new(5.into(), 2.into()));
        assert_eq!(g.finish().unwrap(), Scalar::ratio(3, 8));
    }

    #[test]
    fn gamma_prod_negative_half() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let mut g = GammaProd::new();
        g.mul_gamma(&BigRational::new((-1).into(), 2.into()))
            .mul_sqrt_pi_pow(-1);
        assert_eq!(g.finish().unwrap(), Scalar::from_int(-2));
    }

    #[test]
    fn gamma_prod_sqrt2() {
        let mut g = GammaProd::new();
        g.mul_pow2(&BigRational::new(3.into(), 2.into()));
        let v = g.finish().unwrap();
        assert!((v.to_f64() - 2f64.powf(1.5)).abs() < 1e-13);
        assert_eq!(v.field_d(), 2);
    }

    #[test]
    fn gamma_prod_pole() {
        let mut g = GammaProd::new();
        g.mul_gamma(&BigRational::from_integer((-2).into()));
        assert!(g.is_pole());
        assert!(g.finish().is_none());
    }
}
