use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::Rational;

use super::dyadic::{Dyadic, Rounding};

/// Significant bits kept in radii; radii are always rounded upward.
const RADIUS_BITS: u64 = 64;

/// Complex disc `{ z : |z - (re + i*im)| <= rad }` with dyadic midpoint and radius.
///
/// Every operation returns a ball containing all results of the operation
/// applied to points of the operand balls.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallOp {
    Add,
    Mul,
    Neg,
    Pow(u32),
}

/// Apply `op` to the operands: `Add` and `Mul` fold over all operands, `Neg`
/// and `Pow` act on the first one.
pub fn ball_arith(op: BallOp, operands: &[Ball]) -> Ball {
    match op {
        BallOp::Add => operands.iter().fold(Ball::zero(), |acc, b| &acc + b),
        BallOp::Mul => operands.iter().fold(Ball::one(), |acc, b| &acc * b),
        BallOp::Neg => -&operands[0],
        BallOp::Pow(k) => operands[0].pow(k),
    }
}

impl Ball {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative(), "ball radius must be nonnegative");
        Ball {
            re,
            im,
            rad: rad.round_up_bits(RADIUS_BITS),
        }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        Ball {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::exact(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::exact(Dyadic::one(), Dyadic::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::exact(Dyadic::from_i64(n), Dyadic::zero())
    }

    /// Enclosure of a real rational with radius at most `2^-bits` (zero if the
    /// rational is dyadic at that scale).
    pub fn from_rational(q: &Rational, bits: i64) -> Self {
        let mid = Dyadic::from_rational(q, -bits, Rounding::Nearest);
        let err = (q - mid.to_rational()).abs();
        let rad = Dyadic::from_rational(&err, -bits - 2, Rounding::Ceil);
        Ball::new(mid, Dyadic::zero(), rad)
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn radius(&self) -> &Dyadic {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Same midpoint, radius enlarged by `extra`.
    pub fn inflate(&self, extra: &Dyadic) -> Self {
        Ball::new(self.re.clone(), self.im.clone(), &self.rad + &extra.abs())
    }

    /// Round the midpoint to multiples of `2^-bits`, absorbing the exact
    /// rounding error into the radius.
    pub fn round(&self, bits: i64) -> Self {
        let re = self.re.round_to_exp(-bits, Rounding::Nearest);
        let im = self.im.round_to_exp(-bits, Rounding::Nearest);
        let err = &(&self.re - &re).abs() + &(&self.im - &im).abs();
        Ball::new(re, im, &self.rad + &err)
    }

    /// Upper bound on `max |z|` over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        &(&self.re.abs() + &self.im.abs()) + &self.rad
    }

    /// `|mid|^2`, exact.
    pub fn mid_norm_sqr(&self) -> Dyadic {
        &self.re.square() + &self.im.square()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_norm_sqr() <= self.rad.square()
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    /// Whether the exact complex rational `re + i*im` lies in the ball.
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        let dr = self.re.to_rational() - re;
        let di = self.im.to_rational() - im;
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let slack = &self.rad - &other.rad;
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        &dr.square() + &di.square() <= slack.square()
    }

    /// Whether the two discs are disjoint.
    pub fn disjoint(&self, other: &Ball) -> bool {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let reach = &self.rad + &other.rad;
        &dr.square() + &di.square() > reach.square()
    }

    pub fn pow(&self, k: u32) -> Ball {
        let mut acc = Ball::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `pow` with the midpoint rounded to `2^-bits` after every product.
    pub fn pow_rounded(&self, k: u32, bits: i64) -> Ball {
        let mut acc = Ball::one();
        for _ in 0..k {
            acc = (&acc * self).round(bits);
        }
        acc
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball::new(&self.re + &rhs.re, &self.im + &rhs.im, &self.rad + &rhs.rad)
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball::new(&self.re - &rhs.re, &self.im - &rhs.im, &self.rad + &rhs.rad)
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        // |xy - ab| <= |a| s + |b| r + r s
        let a = &self.re.abs() + &self.im.abs();
        let b = &rhs.re.abs() + &rhs.im.abs();
        let rad = &(&(&a * &rhs.rad) + &(&b * &self.rad)) + &(&self.rad * &rhs.rad);
        Ball::new(re, im, rad)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_c64();
        write!(f, "Ball({re:e} + {im:e}i ± {:e})", self.rad.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn zero() -> Rational {
        q(0, 1)
    }

    #[test]
    fn exact_addition() {
        let s = ball_arith(BallOp::Add, &[Ball::from_i64(1), Ball::from_i64(2)]);
        assert_eq!(s, Ball::from_i64(3));
        assert!(s.is_exact());
    }

    #[test]
    fn sqrt2_square_contains_two() {
        let two = q(2, 1);
        let bits = 40;
        // midpoint from f64 sqrt, radius generous enough to include the true root
        let mid = Dyadic::from_f64(2f64.sqrt()).unwrap().round_to_exp(-bits, Rounding::Nearest);
        let b = Ball::new(mid, Dyadic::zero(), Dyadic::pow2(-bits + 1));
        let sq = ball_arith(BallOp::Mul, &[b.clone(), b]);
        assert!(sq.contains(&two, &zero()));
    }

    #[test]
    fn cube_of_minus_one() {
        let b = Ball::from_i64(-1);
        let c = ball_arith(BallOp::Pow(3), &[b]);
        assert_eq!(c, Ball::from_i64(-1));
        assert!(c.is_exact());
    }

    #[test]
    fn rounding_keeps_containment() {
        let third = q(1, 3);
        let b = Ball::from_rational(&third, 20);
        assert!(b.contains(&third, &zero()));
        assert!(b.radius() <= &Dyadic::pow2(-20));
        let r = (&b * &b).round(10);
        assert!(r.contains(&(&third * &third), &zero()));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = Ball::exact(Dyadic::zero(), Dyadic::one());
        assert_eq!(&i * &i, Ball::from_i64(-1));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        // Chained operations over enclosures of rationals keep the exact value.
        #[test]
        fn chained_ops_contain_exact_value(a in rational(), b in rational(), c in rational(), bits in 4i64..40) {
            let (ba, bb, bc) = (Ball::from_rational(&a, bits), Ball::from_rational(&b, bits), Ball::from_rational(&c, bits));
            let ball = ball_arith(BallOp::Pow(2), &[&(&ba * &bb) + &(-&bc)]).round(bits);
            let ball = ball_arith(BallOp::Mul, &[ball, ba.clone(), bb.clone()]);
            let exact = {
                let t = &a * &b - &c;
                &t * &t * &a * &b
            };
            prop_assert!(ball.contains(&exact, &zero()));
        }
    }
}
