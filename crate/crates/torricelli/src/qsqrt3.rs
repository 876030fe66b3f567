//! Exact arithmetic in the field Q(√3).
//!
//! [`Rat`] is an arbitrary-precision rational kept normalized (positive
//! denominator, reduced, canonical zero). [`F3`] is a number a + b√3 with
//! rational components; because √3 is irrational the representation is
//! unique, so equality is component-wise and the sign of any value can be
//! decided exactly by integer arithmetic. Every length², area and
//! coordinate in this crate is an [`F3`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Division by an exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("division by zero")]
pub struct DivisionByZero;

/// Arbitrary-precision rational, always normalized: denominator positive,
/// gcd(|num|, den) = 1, zero stored as 0/1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Canonical rational equal to `num / den`. Errors when `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, DivisionByZero> {
        let den = den.into();
        if den.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat::from_int(1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// −1, 0 or +1.
    pub fn sign(&self) -> i32 {
        match self.0.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, DivisionByZero> {
        if self.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    /// Panics on a zero divisor; use [`Rat::checked_div`] when the divisor
    /// is not known to be nonzero.
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Rat {
    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, DivisionByZero> {
        if rhs.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    /// `num/den`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &BigInt::from(1) {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when a string is not a valid `num` or `num/den` rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseRatError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rat::new(num, den).map_err(|_| bad())
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Element a + b√3 of Q(√3). Unique representation; `a² = 3b²` forces
/// `a = b = 0`, which makes division total on nonzero values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct F3 {
    pub a: Rat,
    pub b: Rat,
}

impl F3 {
    pub fn new(a: Rat, b: Rat) -> Self {
        F3 { a, b }
    }

    pub fn zero() -> Self {
        F3::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        F3::new(Rat::one(), Rat::zero())
    }

    pub fn sqrt3() -> Self {
        F3::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        F3::new(Rat::from_int(n), Rat::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        F3::new(r, Rat::zero())
    }

    /// `num/den`, as a pure-rational element. Panics when `den` is zero;
    /// intended for literals.
    pub fn rational(num: i64, den: i64) -> Self {
        F3::from_rat(Rat::new(num, den).expect("nonzero literal denominator"))
    }

    /// `(num/den)·√3`. Panics when `den` is zero; intended for literals.
    pub fn sqrt3_scaled(num: i64, den: i64) -> Self {
        F3::new(Rat::zero(), Rat::new(num, den).expect("nonzero literal denominator"))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real value a + b√3: −1, 0 or +1.
    ///
    /// When the components agree in sign the answer is immediate. When they
    /// disagree, exactly one of a, b is negative, so sign(a + b√3) is
    /// decided by comparing a² against 3b² — valid because squaring both
    /// sides of |a| ⋛ |b|√3 preserves the order, and exact because the
    /// comparison is rational.
    pub fn sign(&self) -> i32 {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sa == 0 && sb == 0 {
            return 0;
        }
        if sa >= 0 && sb >= 0 {
            return 1;
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        let a2 = &self.a * &self.a;
        let b2x3 = &(&self.b * &self.b) * &Rat::from_int(3);
        match a2.cmp(&b2x3) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a² = 3b² with rational a, b forces a = b = 0, already handled
            Ordering::Equal => unreachable!("a² = 3b² only at zero"),
        }
    }

    pub fn abs(&self) -> F3 {
        if self.sign() < 0 { -self } else { self.clone() }
    }

    /// Exact quotient via the conjugate: x·(ā)/N(y) with N(y) = a² − 3b².
    pub fn checked_div(&self, rhs: &F3) -> Result<F3, DivisionByZero> {
        if rhs.is_zero() {
            return Err(DivisionByZero);
        }
        // norm is nonzero for nonzero rhs since √3 is irrational
        let norm = &(&rhs.a * &rhs.a) - &(&(&rhs.b * &rhs.b) * &Rat::from_int(3));
        let conj = F3::new(rhs.a.clone(), -&rhs.b);
        let num = self * &conj;
        Ok(F3::new(&num.a / &norm, &num.b / &norm))
    }

    /// f64 shadow of the exact value; used only at rendering and test-oracle
    /// boundaries.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3.0_f64.sqrt()
    }
}

impl From<i64> for F3 {
    fn from(n: i64) -> Self {
        F3::from_int(n)
    }
}

impl From<Rat> for F3 {
    fn from(r: Rat) -> Self {
        F3::from_rat(r)
    }
}

impl Add<&F3> for &F3 {
    type Output = F3;
    fn add(self, rhs: &F3) -> F3 {
        F3::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&F3> for &F3 {
    type Output = F3;
    fn sub(self, rhs: &F3) -> F3 {
        F3::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&F3> for &F3 {
    type Output = F3;
    /// (a₁ + b₁√3)(a₂ + b₂√3) = (a₁a₂ + 3b₁b₂) + (a₁b₂ + b₁a₂)√3
    fn mul(self, rhs: &F3) -> F3 {
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &Rat::from_int(3));
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        F3::new(a, b)
    }
}

impl Div<&F3> for &F3 {
    type Output = F3;
    /// Panics on a zero divisor; use [`F3::checked_div`] otherwise.
    fn div(self, rhs: &F3) -> F3 {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3::new(-&self.a, -&self.b)
    }
}

macro_rules! f3_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for F3 {
            type Output = F3;
            fn $method(self, rhs: F3) -> F3 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&F3> for F3 {
            type Output = F3;
            fn $method(self, rhs: &F3) -> F3 {
                (&self).$method(rhs)
            }
        }
        impl $trait<F3> for &F3 {
            type Output = F3;
            fn $method(self, rhs: F3) -> F3 {
                self.$method(&rhs)
            }
        }
    };
}

f3_owned_binop!(Add, add);
f3_owned_binop!(Sub, sub);
f3_owned_binop!(Mul, mul);
f3_owned_binop!(Div, div);

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        -&self
    }
}

impl PartialOrd for F3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F3 {
    /// Total order by the real value, decided exactly.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for F3 {
    /// `a`, `b r3`, or `a + b r3`, matching the script-literal notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{} r3", self.b);
        }
        write!(f, "{} + {} r3", self.a, self.b)
    }
}

impl fmt::Debug for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3(an: i64, ad: i64, bn: i64, bd: i64) -> F3 {
        F3::new(Rat::new(an, ad).unwrap(), Rat::new(bn, bd).unwrap())
    }

    #[test]
    fn normalize_reduces_and_fixes_sign() {
        assert_eq!(Rat::new(2, 4).unwrap(), Rat::new(1, 2).unwrap());
        assert_eq!(Rat::new(3, -6).unwrap(), Rat::new(-1, 2).unwrap());
        let z = Rat::new(0, 7).unwrap();
        assert_eq!(z, Rat::zero());
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(Rat::new(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(Rat::new(1, 1).unwrap().to_string(), "1");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(Rat::new(5, 0), Err(DivisionByZero));
    }

    #[test]
    fn rat_parsing() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4).unwrap());
        assert_eq!("-7".parse::<Rat>().unwrap(), Rat::from_int(-7));
        assert_eq!("6/-4".parse::<Rat>().unwrap(), Rat::new(-3, 2).unwrap());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a".parse::<Rat>().is_err());
        assert!("1.5".parse::<Rat>().is_err());
    }

    #[test]
    fn field_mul_expands_and_collects() {
        // (1 + √3)(2 − √3) = −1 + √3
        let x = f3(1, 1, 1, 1);
        let y = f3(2, 1, -1, 1);
        assert_eq!(&x * &y, f3(-1, 1, 1, 1));
        // conjugates: (2 + √3)(2 − √3) = 1
        let x = f3(2, 1, 1, 1);
        let y = f3(2, 1, -1, 1);
        assert_eq!(&x * &y, F3::one());
        // multiplicative identity
        let x = f3(-7, 3, 5, 2);
        assert_eq!(&x * &F3::one(), x);
    }

    #[test]
    fn field_div_inverts_mul() {
        // 1 / (2 + √3) = 2 − √3
        let q = F3::one().checked_div(&f3(2, 1, 1, 1)).unwrap();
        assert_eq!(q, f3(2, 1, -1, 1));
        // round trip: ((−1 + √3)/(1 + √3))·(1 + √3) = −1 + √3
        let x = f3(-1, 1, 1, 1);
        let y = f3(1, 1, 1, 1);
        let v = x.checked_div(&y).unwrap();
        assert_eq!(&v * &y, x);
        // x / x = 1
        let x = f3(22, 7, -3, 5);
        assert_eq!(x.checked_div(&x).unwrap(), F3::one());
        // zero divisor
        assert_eq!(x.checked_div(&F3::zero()), Err(DivisionByZero));
    }

    #[test]
    fn sign_easy_cases() {
        assert_eq!(F3::zero().sign(), 0);
        assert_eq!(f3(1, 2, 0, 1).sign(), 1);
        assert_eq!(f3(0, 1, -4, 1).sign(), -1);
        assert_eq!(f3(2, 1, 5, 1).sign(), 1);
        assert_eq!(f3(-2, 1, -5, 1).sign(), -1);
    }

    #[test]
    fn sign_near_ties_decided_by_integer_comparison() {
        // 7 − 4√3: 7² = 49 > 48 = 3·4², so positive (float value ≈ 0.0718)
        assert_eq!(49_i64.cmp(&(3 * 16)), Ordering::Greater);
        assert_eq!(f3(7, 1, -4, 1).sign(), 1);
        // 97 − 56√3: 97² = 9409 > 9408 = 3·56², positive (≈ 0.0052)
        assert_eq!((97_i64 * 97).cmp(&(3 * 56 * 56)), Ordering::Greater);
        assert_eq!(f3(97, 1, -56, 1).sign(), 1);
        assert_eq!(f3(-97, 1, 56, 1).sign(), -1);
        // and the mirror pair just below √3: 168² = 28224 < 28227 = 3·97²
        assert_eq!((168_i64 * 168).cmp(&(3 * 97 * 97)), Ordering::Less);
        assert_eq!(f3(168, 1, -97, 1).sign(), -1);
    }

    #[test]
    fn sign_is_odd_and_multiplicative() {
        let samples = [
            f3(0, 1, 0, 1),
            f3(7, 1, -4, 1),
            f3(-7, 1, 4, 1),
            f3(1, 3, -1, 5),
            f3(-22, 7, 0, 1),
            f3(0, 1, 9, 2),
        ];
        for x in &samples {
            assert_eq!(x.sign(), -(-x).sign());
            for y in &samples {
                assert_eq!((x * y).sign(), x.sign() * y.sign());
            }
        }
    }

    #[test]
    fn total_order_matches_sign() {
        let lo = f3(168, 1, -97, 1); // just below 0
        let hi = f3(97, 1, -56, 1); // just above 0
        assert!(lo < F3::zero());
        assert!(F3::zero() < hi);
        assert!(lo < hi);
        assert_eq!(hi.cmp(&hi), Ordering::Equal);
    }

    #[test]
    fn serialization_shape() {
        let x = f3(3, 1, 25, 12);
        assert_eq!(
            serde_json::to_value(&x).unwrap(),
            serde_json::json!({"a": "3", "b": "25/12"})
        );
        assert_eq!(x.to_string(), "3 + 25/12 r3");
        assert_eq!(f3(0, 1, -2, 1).to_string(), "-2 r3");
        assert_eq!(f3(5, 4, 0, 1).to_string(), "5/4");
    }

    #[test]
    fn display_of_abs() {
        assert_eq!(f3(-3, 1, 0, 1).abs(), f3(3, 1, 0, 1));
        assert_eq!(f3(3, 1, -25, 12).abs(), f3(-3, 1, 25, 12));
    }
}
