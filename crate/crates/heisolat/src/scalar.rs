//! Exact scalars: rational numbers, optionally extended by a single fixed
//! square root `sqrt(D)` with `D >= 2` square-free.
//!
//! A [`Scalar`] is `a + b*sqrt(D)` with `a`, `b` arbitrary-precision
//! rationals.  All comparisons (including sign and total order) are exact;
//! no floating point is used anywhere.  A session works inside one field:
//! either the rationals alone or one quadratic extension.  Mixing two
//! different extensions in one computation is a programming error and
//! panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Check that `d` is square-free and at least 2 (a valid quadratic radicand).
pub fn valid_radicand(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// `a + b*sqrt(d)`.  Invariant: `b == 0` implies `d == 0`; `b != 0` implies
/// `d` is a valid radicand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            a: BigRational::from_integer(n),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            a: q,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Build `a + b*sqrt(d)`.  Fails when `b != 0` and `d` is not a valid
    /// square-free radicand.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Scalar::from_rational(a));
        }
        if !valid_radicand(d) {
            return Err(Error::domain(format!(
                "radicand {d} must be square-free and at least 2"
            )));
        }
        Ok(Scalar { a, b, d })
    }

    /// Convenience constructor from small integers: `(a_n/a_d) + (b_n/b_d)*sqrt(d)`.
    pub fn quad_ratio(a_n: i64, a_d: i64, b_n: i64, b_d: i64, d: u64) -> Self {
        Scalar::quadratic(
            BigRational::new(BigInt::from(a_n), BigInt::from(a_d)),
            BigRational::new(BigInt::from(b_n), BigInt::from(b_d)),
            d,
        )
        .expect("invalid radicand")
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    fn merged_radicand(&self, other: &Scalar) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) => {
                assert_eq!(
                    d1, d2,
                    "cannot mix scalars from different quadratic fields (sqrt {d1} vs sqrt {d2})"
                );
                d1
            }
        }
    }

    fn normalized(a: BigRational, b: BigRational, d: u64) -> Scalar {
        if b.is_zero() {
            Scalar {
                a,
                b,
                d: 0,
            }
        } else {
            Scalar { a, b, d }
        }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (s, t) if s == t => s,
            (s, _) => {
                // a and b*sqrt(d) have opposite signs: compare |a| with |b|*sqrt(d)
                // via a^2 vs b^2 * d.
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => -s,
                    Ordering::Equal => 0, // impossible for square-free d, kept for safety
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Scalar::from_rational(self.a.recip()));
        }
        // 1/(a+b√d) = (a-b√d)/(a²-b²d)
        let norm = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        debug_assert!(!norm.is_zero(), "square-free radicand makes norms nonzero");
        Some(Scalar::normalized(
            &self.a / &norm,
            -(&self.b / &norm),
            self.d,
        ))
    }

    /// Exact floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // Start from an estimate of b*sqrt(d) via integer square root, then
        // correct by exact comparison.  x = a + b*sqrt(d).
        let d = BigInt::from(self.d);
        // floor(b * sqrt(d)) estimate: sqrt(b^2 d) with sign handling.
        let b2d = self.b.numer() * self.b.numer() * &d;
        let den2 = self.b.denom() * self.b.denom();
        // isqrt of b2d/den2
        let est = (b2d / den2).sqrt() * BigInt::from(rational_sign(&self.b));
        let mut n = self.a.floor().to_integer() + est;
        // Correct: ensure n <= x < n+1.
        loop {
            let diff = self - &Scalar::from_bigint(n.clone());
            if diff.is_negative() {
                n -= 1;
                continue;
            }
            let diff1 = self - &Scalar::from_bigint(&n + 1);
            if !diff1.is_negative() {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// `self - floor(self/modulus)*modulus` for a positive modulus: the
    /// representative of `self` in `[0, modulus)`.
    pub fn rem_euclid(&self, modulus: &Scalar) -> Scalar {
        assert!(modulus.is_positive(), "modulus must be positive");
        let q = (self / modulus).floor_int();
        self - &(modulus * &Scalar::from_bigint(q))
    }

    /// Does `other` divide `self` with an *integer* quotient?
    pub fn is_integer_multiple_of(&self, other: &Scalar) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        (self / other).is_integer()
    }

    /// Format as the document grammar expects: `p/q` for rationals,
    /// `a + b*sqrt(d)` otherwise.
    pub fn display(&self) -> String {
        format!("{self}")
    }
}

fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", fmt_rational(&self.b), self.d)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                fmt_rational(&self.a),
                fmt_rational(&self.b),
                self.d
            )
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl<'a, 'b> Add<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'b Scalar) -> Scalar {
        let d = self.merged_radicand(rhs);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}
forward_binop!(Add, add);

impl<'a, 'b> Sub<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'b Scalar) -> Scalar {
        let d = self.merged_radicand(rhs);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}
forward_binop!(Sub, sub);

impl<'a, 'b> Mul<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'b Scalar) -> Scalar {
        let d = self.merged_radicand(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}
forward_binop!(Mul, mul);

impl<'a, 'b> Div<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.a.clone(), -self.b.clone(), self.d)
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Greatest common divisor of two positive rationals: the positive generator
/// of the group `p/c·Z + r/d·Z`, namely `gcd(p·d, r·c) / (c·d)`.
pub fn rational_gcd(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    let num = (x.numer() * y.denom()).gcd(&(y.numer() * x.denom()));
    BigRational::new(num, x.denom() * y.denom())
}

/// gcd over a slice (zero entries ignored); zero when all are zero.
pub fn rational_gcd_all(values: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for v in values {
        acc = rational_gcd(&acc, v);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn basic_field_ops() {
        let x = s(3, 4);
        let y = s(-2, 3);
        assert_eq!(&x + &y, s(1, 12));
        assert_eq!(&x * &y, s(-1, 2));
        assert_eq!(&x / &y, s(-9, 8));
        assert_eq!((&x - &x).signum(), 0);
    }

    #[test]
    fn quadratic_arithmetic() {
        // (1 + sqrt(2))(1 - sqrt(2)) = -1
        let x = Scalar::quad_ratio(1, 1, 1, 1, 2);
        let y = Scalar::quad_ratio(1, 1, -1, 1, 2);
        assert_eq!(&x * &y, s(-1, 1));
        // inverse of sqrt(2) is sqrt(2)/2
        let r2 = Scalar::quad_ratio(0, 1, 1, 1, 2);
        assert_eq!(r2.inverse().unwrap(), Scalar::quad_ratio(0, 1, 1, 2, 2));
        // (sqrt 2)^2 = 2
        assert_eq!(&r2 * &r2, s(2, 1));
    }

    #[test]
    fn exact_sign_near_cancellation() {
        // 7/5 < sqrt(2) < 17/12, so 7/5 - sqrt(2) < 0 and 17/12 - sqrt(2) > 0.
        let low = Scalar::quad_ratio(7, 5, -1, 1, 2);
        let high = Scalar::quad_ratio(17, 12, -1, 1, 2);
        assert_eq!(low.signum(), -1);
        assert_eq!(high.signum(), 1);
    }

    #[test]
    fn floor_of_quadratic() {
        let r2 = Scalar::quad_ratio(0, 1, 1, 1, 2); // ~1.414
        assert_eq!(r2.floor_int(), BigInt::from(1));
        let x = Scalar::quad_ratio(-3, 1, 5, 1, 2); // -3 + 5*1.414.. ~ 4.07
        assert_eq!(x.floor_int(), BigInt::from(4));
        let y = -&x; // ~ -4.07
        assert_eq!(y.floor_int(), BigInt::from(-5));
        assert_eq!(s(-7, 2).floor_int(), BigInt::from(-4));
    }

    #[test]
    fn rem_euclid_reduces_into_range() {
        let m = s(3, 2);
        let x = s(-7, 4);
        let r = x.rem_euclid(&m);
        assert!(!r.is_negative() && r < m);
        assert!((&x - &r).is_integer_multiple_of(&m));
    }

    #[test]
    fn radicand_validation() {
        assert!(valid_radicand(2));
        assert!(valid_radicand(15));
        assert!(!valid_radicand(4));
        assert!(!valid_radicand(12));
        assert!(!valid_radicand(1));
        assert!(Scalar::quadratic(
            BigRational::zero(),
            BigRational::one(),
            8
        )
        .is_err());
    }

    #[test]
    fn rational_gcd_matches_definition() {
        let g = rational_gcd(
            &BigRational::new(BigInt::from(3), BigInt::from(4)),
            &BigRational::new(BigInt::from(5), BigInt::from(6)),
        );
        assert_eq!(g, BigRational::new(BigInt::from(1), BigInt::from(12)));
        // gcd(1/2, 1/3) = 1/6
        let g = rational_gcd(
            &BigRational::new(BigInt::from(1), BigInt::from(2)),
            &BigRational::new(BigInt::from(1), BigInt::from(3)),
        );
        assert_eq!(g, BigRational::new(BigInt::from(1), BigInt::from(6)));
    }
}
