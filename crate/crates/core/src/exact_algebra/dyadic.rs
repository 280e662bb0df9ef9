use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Rounding direction for [`Dyadic`] truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
    Nearest,
}

/// Exact binary fraction `mantissa * 2^exponent`.
///
/// Normalized: the mantissa is odd, or zero with exponent zero, so equal
/// values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    /// `2^k`
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        if bits <= 53 && (-1000..=900).contains(&self.exp) {
            return self.mant.to_f64().unwrap_or(f64::NAN) * 2f64.powi(self.exp as i32);
        }
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Self::new(BigInt::from(mant) * sign, exp))
    }

    /// Upper bound on `log2 |x|`: `|x| < 2^magnitude_bits()`. Zero maps to `i64::MIN`.
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    /// Round to a multiple of `2^exp`.
    pub fn round_to_exp(&self, exp: i64, mode: Rounding) -> Self {
        if self.exp >= exp || self.is_zero() {
            return self.clone();
        }
        let shift = (exp - self.exp) as usize;
        let d = BigInt::one() << shift;
        let m = div_round(&self.mant, &d, mode);
        Self::new(m, exp)
    }

    /// Round the magnitude up to at most `bits` significant bits. Intended for
    /// radii and other upper bounds.
    pub fn round_up_bits(&self, bits: u64) -> Self {
        let have = self.mant.bits();
        if have <= bits {
            return self.clone();
        }
        let mag = self.abs();
        let exp = mag.exp + (have - bits) as i64;
        let r = mag.round_to_exp(exp, Rounding::Ceil);
        if self.is_negative() {
            -r
        } else {
            r
        }
    }

    /// Round a rational to a multiple of `2^exp`.
    pub fn from_rational(q: &Rational, exp: i64, mode: Rounding) -> Self {
        let (mut num, mut den) = (q.numer().clone(), q.denom().clone());
        if exp < 0 {
            num <<= (-exp) as usize;
        } else {
            den <<= exp as usize;
        }
        Self::new(div_round(&num, &den, mode), exp)
    }

    /// Approximate quotient rounded to a multiple of `2^exp`; panics on a zero divisor.
    pub fn div_round(&self, rhs: &Self, exp: i64, mode: Rounding) -> Self {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        // self/rhs = (m1/m2) * 2^(e1-e2); want q * 2^exp
        let shift = self.exp - rhs.exp - exp;
        let (num, den) = if shift >= 0 {
            (&self.mant << shift as usize, rhs.mant.clone())
        } else {
            (self.mant.clone(), &rhs.mant << (-shift) as usize)
        };
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        Self::new(div_round(&num, &den, mode), exp)
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

fn div_round(n: &BigInt, d: &BigInt, mode: Rounding) -> BigInt {
    match mode {
        Rounding::Floor => n.div_floor(d),
        Rounding::Ceil => -((-n).div_floor(d)),
        Rounding::Nearest => (n * BigInt::from(2) + d).div_floor(&(d * BigInt::from(2))),
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).mant.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Fixed-point decimal rendering with `digits` digits after the point,
/// rounded to nearest. Deterministic for a given dyadic value.
pub fn to_decimal_string(x: &Dyadic, digits: u32) -> String {
    let scaled = x.to_rational() * Rational::from_integer(BigInt::from(10u32).pow(digits));
    let two = BigInt::from(2);
    let n = (scaled.numer() * &two + scaled.denom()).div_floor(&(scaled.denom() * &two));
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        let a = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(a, Dyadic::new(BigInt::from(3), 2));
        assert_eq!(a.to_rational(), q(12, 1));
        assert_eq!(Dyadic::new(BigInt::zero(), 7), Dyadic::zero());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Dyadic::from_rational(&q(3, 4), -10, Rounding::Nearest);
        let b = Dyadic::from_rational(&q(-5, 8), -10, Rounding::Nearest);
        assert_eq!((&a + &b).to_rational(), q(1, 8));
        assert_eq!((&a * &b).to_rational(), q(-15, 32));
        assert!(b < a);
    }

    #[test]
    fn rational_rounding_modes() {
        let third = q(1, 3);
        let lo = Dyadic::from_rational(&third, -20, Rounding::Floor);
        let hi = Dyadic::from_rational(&third, -20, Rounding::Ceil);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!((&hi - &lo), Dyadic::pow2(-20));
        let neg = Dyadic::from_rational(&-third.clone(), -20, Rounding::Floor);
        assert!(neg.to_rational() < -third);
    }

    #[test]
    fn round_up_bits_is_upper_bound() {
        let x = Dyadic::new(BigInt::from(0b1011_0111_0001u32), -5);
        let r = x.round_up_bits(4);
        assert!(r >= x);
        assert!(r.mantissa().bits() <= 4);
    }

    #[test]
    fn division_rounding() {
        let one = Dyadic::one();
        let three = Dyadic::from_i64(3);
        let lo = one.div_round(&three, -30, Rounding::Floor);
        let hi = one.div_round(&three, -30, Rounding::Ceil);
        assert!(lo.to_rational() < q(1, 3) && q(1, 3) < hi.to_rational());
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.0, 1.5, -3.25e-7, 1e300, 5e-324] {
            assert_eq!(Dyadic::from_f64(x).unwrap().to_f64(), x);
        }
    }

    #[test]
    fn decimal_rendering() {
        let x = Dyadic::from_rational(&q(-7, 4), 0, Rounding::Nearest);
        assert_eq!(to_decimal_string(&Dyadic::new(BigInt::from(-7), -2), 3), "-1.750");
        assert_eq!(to_decimal_string(&x, 0), "-2");
    }
}
