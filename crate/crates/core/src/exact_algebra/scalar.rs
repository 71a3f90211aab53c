use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element `a + b*sqrt(d)` of Q or of a real quadratic field Q(sqrt(d)).
///
/// `d == 0` encodes a plain rational (then `b == 0`). `d` is a square-free
/// integer >= 2 otherwise. Values with different nonzero `d` cannot be mixed;
/// a rational combines with anything. `sqrt(d)` is never approximated here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero(), d: 0 }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_parts(a: BigRational, b: BigRational, d: u32) -> Self {
        Scalar { a, b, d }.normalized()
    }

    /// Exact `sqrt(n)` for a nonnegative integer: factors out the square part,
    /// so e.g. `sqrt(8) = 2 sqrt(2)` and `sqrt(9) = 3`.
    pub fn sqrt_int(n: u32) -> Self {
        if n == 0 {
            return Scalar::zero();
        }
        let (s, d) = split_square(n);
        if d == 1 {
            Scalar::from_int(s as i64)
        } else {
            Scalar {
                a: BigRational::zero(),
                b: BigRational::from_integer(BigInt::from(s)),
                d,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field_d(&self) -> u32 {
        self.d
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    /// The common field tag of two operands, or `None` when they live in
    /// different quadratic extensions.
    pub fn join_field(d1: u32, d2: u32) -> Option<u32> {
        match (d1, d2) {
            (0, d) | (d, 0) => Some(d),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    fn combined(&self, rhs: &Scalar) -> u32 {
        Scalar::join_field(self.d, rhs.d)
            .unwrap_or_else(|| panic!("field mismatch: sqrt({}) vs sqrt({})", self.d, rhs.d))
    }

    pub fn add_ref(&self, rhs: &Scalar) -> Scalar {
        let d = self.combined(rhs);
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d }.normalized()
    }

    pub fn sub_ref(&self, rhs: &Scalar) -> Scalar {
        let d = self.combined(rhs);
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d }.normalized()
    }

    pub fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        let d = self.combined(rhs);
        let dd = BigRational::from_integer(BigInt::from(d.max(1)));
        Scalar {
            a: &self.a * &rhs.a + (&self.b * &rhs.b) * &dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        if self.d == 0 {
            return Scalar { a: self.a.recip(), b: BigRational::zero(), d: 0 };
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - (&self.b * &self.b) * &dd;
        assert!(!norm.is_zero(), "degenerate quadratic element (d not square-free?)");
        Scalar { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d }.normalized()
    }

    pub fn div_ref(&self, rhs: &Scalar) -> Scalar {
        self.mul_ref(&rhs.inv())
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
        }
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -self.b.clone(), d: self.d }.normalized()
    }
}

/// `n = s^2 * d` with `d` square-free; returns `(s, d)`. `split_square(0) = (0, 0)`.
fn split_square(n: u32) -> (u32, u32) {
    if n == 0 {
        return (0, 0);
    }
    let mut s = 1u32;
    let mut d = n;
    let mut f = 2u32;
    while f * f <= d {
        while d.is_multiple_of(f * f) {
            d /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, d)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_ref(rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
