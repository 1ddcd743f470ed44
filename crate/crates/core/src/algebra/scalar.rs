//! Exact arithmetic in the quadratic field ℚ(√5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `a + b·√5` of ℚ(√5).
///
/// Both components are stored as reduced `BigRational`s, so equal values always
/// have identical representations. A value with `b = 0` is an ordinary rational.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
}

const SQRT5: f64 = 2.236_067_977_499_79;

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        ExactScalar { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        ExactScalar { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `p/q + (r/s)·√5`
    pub fn quad(p: i64, q: i64, r: i64, s: i64) -> Self {
        ExactScalar {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::new(BigInt::from(r), BigInt::from(s)),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        ExactScalar { a: BigRational::zero(), b: BigRational::one() }
    }

    /// The golden ratio `(1+√5)/2`.
    pub fn golden() -> Self {
        Self::quad(1, 2, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    /// 5 when the value genuinely involves √5, else 1.
    pub fn radicand(&self) -> u32 {
        if self.b.is_zero() {
            1
        } else {
            5
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Integer value, when the scalar is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.b.is_zero() && self.a.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Galois conjugate `a − b√5`.
    pub fn conjugate(&self) -> Self {
        ExactScalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::rational(self.a.recip()));
        }
        let n = self.norm();
        Some(ExactScalar { a: &self.a / &n, b: -(&self.b / &n) })
    }

    /// Exact sign of the real number `a + b√5`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 5b²
        match self.norm().cmp(&BigRational::zero()) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * SQRT5
        }
    }

    /// Canonical text form: `p/q` for rationals, `(p/q+r/s*r5)` otherwise.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Exact numeric comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let bpart = if self.b.is_one() {
            "r5".to_string()
        } else if (-self.b.clone()).is_one() {
            "-r5".to_string()
        } else {
            format!("{}*r5", fmt_rat(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "({bpart})")
        } else if bpart.starts_with('-') {
            write!(f, "({}{})", fmt_rat(&self.a), bpart)
        } else {
            write!(f, "({}+{})", fmt_rat(&self.a), bpart)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Structural total order (rational part, then √5 part). Used only for
/// canonical orderings, never as the numeric order.
impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl FromStr for ExactScalar {
    type Err = crate::algebra::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p = crate::algebra::parse_poly(s)?;
        if p.is_zero() {
            return Ok(Self::zero());
        }
        p.as_constant().ok_or_else(|| crate::algebra::ParseError::new(s, "not a constant"))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                let f: fn(&ExactScalar, &ExactScalar) -> ExactScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| ExactScalar { a: &x.a + &y.a, b: &x.b + &y.b });
forward_binop!(Sub, sub, |x, y| ExactScalar { a: &x.a - &y.a, b: &x.b - &y.b });
forward_binop!(Mul, mul, |x, y| {
    if x.b.is_zero() && y.b.is_zero() {
        return ExactScalar { a: &x.a * &y.a, b: BigRational::zero() };
    }
    if y.b.is_zero() {
        return ExactScalar { a: &x.a * &y.a, b: &x.b * &y.a };
    }
    if x.b.is_zero() {
        return ExactScalar { a: &x.a * &y.a, b: &x.a * &y.b };
    }
    let five = BigRational::from_integer(BigInt::from(5));
    ExactScalar { a: &x.a * &y.a + five * &x.b * &y.b, b: &x.a * &y.b + &x.b * &y.a }
});
forward_binop!(Div, div, |x, y| x * &y.inverse().expect("division by zero in ExactScalar"));

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.a += &rhs.a;
        if !rhs.b.is_zero() {
            self.b += &rhs.b;
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.a -= &rhs.a;
        if !rhs.b.is_zero() {
            self.b -= &rhs.b;
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identity() {
        let c = ExactScalar::golden();
        assert_eq!(&c * &c, &c + &ExactScalar::one());
        let ci = c.inverse().unwrap();
        assert_eq!(ci, &c - &ExactScalar::one());
    }

    #[test]
    fn canonical_rational_embedding() {
        let x = ExactScalar::quad(6, 4, 0, 3);
        assert_eq!(x, ExactScalar::from_frac(3, 2));
        assert_eq!(x.radicand(), 1);
        assert_eq!(ExactScalar::sqrt5().radicand(), 5);
    }

    #[test]
    fn signs() {
        // 9 - 4√5 ≈ 0.0557 > 0
        assert_eq!(ExactScalar::quad(9, 1, -4, 1).signum(), 1);
        assert_eq!(ExactScalar::quad(-9, 1, 4, 1).signum(), -1);
        assert_eq!(ExactScalar::quad(2, 1, -1, 1).signum(), -1);
        assert_eq!(ExactScalar::zero().signum(), 0);
    }

    #[test]
    fn text_form() {
        assert_eq!(ExactScalar::golden().to_string(), "(1/2+1/2*r5)");
        assert_eq!(ExactScalar::quad(-4, 1, -1, 1).to_string(), "(-4-r5)");
        assert_eq!(ExactScalar::from_frac(-3, 6).to_string(), "-1/2");
        let back: ExactScalar = "(1/2+1/2*r5)".parse().unwrap();
        assert_eq!(back, ExactScalar::golden());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = ExactScalar::quad(3, 7, -2, 5);
        assert!((&x * &x.inverse().unwrap()).is_one());
        assert!(ExactScalar::zero().inverse().is_none());
    }
}
