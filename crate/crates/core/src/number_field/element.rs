use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::NumberField;
use crate::error::{Error, Result};
use crate::exact_algebra::ball::Ball;
use crate::exact_algebra::dyadic::Dyadic;
use crate::exact_algebra::poly::format_terms;
use crate::scalar::Scalar;
use crate::{QPoly, Rational};

/// Element of `Q(u)`, stored as the coefficient vector of its reduced
/// polynomial in `u` (lowest power first).
///
/// An element without a field is a rational constant. It combines with an
/// element of any field, which is what lets `Zero` and `One` exist.
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<NumberField>>,
    poly: QPoly,
}

impl FieldElement {
    /// Field-less rational constant.
    pub fn rational(q: Rational) -> Self {
        FieldElement {
            field: None,
            poly: QPoly::constant(q),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    /// Rational constant inside `field`.
    pub fn constant(field: &Arc<NumberField>, q: Rational) -> Self {
        FieldElement {
            field: Some(field.clone()),
            poly: QPoly::constant(q),
        }
    }

    /// The generator `u`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, QPoly::x())
    }

    /// `g(u)`, reduced modulo the minimal polynomial.
    pub fn from_poly(field: &Arc<NumberField>, g: QPoly) -> Self {
        let poly = g.rem(field.min_poly());
        FieldElement {
            field: Some(field.clone()),
            poly,
        }
    }

    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        Self::from_poly(field, QPoly::new(coeffs))
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Reduced representative in `Q[t]`.
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    /// Coefficients of `1, u, ..., u^(d-1)`, padded with zeros to the field degree.
    pub fn coeffs(&self) -> Vec<Rational> {
        let d = self.field.as_ref().map_or(1, |f| f.degree());
        (0..d).map(|k| self.poly.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.poly.is_constant().then(|| self.poly.coeff(0))
    }

    /// Re-home a field-less constant (or an element of an equal field) in `field`.
    pub fn in_field(&self, field: &Arc<NumberField>) -> Result<Self> {
        match &self.field {
            Some(f) if !f.same_arithmetic(field) => Err(Error::FieldMismatch),
            _ => Ok(FieldElement {
                field: Some(field.clone()),
                poly: self.poly.clone(),
            }),
        }
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<NumberField>>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if !a.same_arithmetic(b) => Err(Error::FieldMismatch),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    fn with(field: Option<Arc<NumberField>>, g: QPoly) -> Self {
        match field {
            Some(f) => Self::from_poly(&f, g),
            None => FieldElement { field: None, poly: g },
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        Ok(Self::with(f, &self.poly + &other.poly))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        Ok(Self::with(f, &self.poly - &other.poly))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        Ok(Self::with(f, &self.poly * &other.poly))
    }

    /// Inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.field {
            None => Ok(Self::rational(self.poly.coeff(0).recip())),
            Some(f) => {
                let (g, s, _) = self.poly.xgcd(f.min_poly());
                if g != QPoly::one() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Self::from_poly(f, s))
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.join(other)?;
        self.try_mul(&other.try_inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = FieldElement {
            field: self.field.clone(),
            poly: QPoly::one(),
        };
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Image under `u -> s_root`, as a ball of radius at most `2^-bits`.
    pub fn embed(&self, root: usize, bits: u32) -> Result<Ball> {
        let limit = Dyadic::pow2(-(bits as i64));
        let field = match &self.field {
            None => return Ok(Ball::from_rational(&self.poly.coeff(0), bits as i64 + 1)),
            Some(f) => f,
        };
        let mut w = bits + 16;
        loop {
            let s = field.root(root, w)?;
            let mut acc = Ball::zero();
            for c in self.poly.coeffs().iter().rev() {
                acc = (&(&acc * &s) + &Ball::from_rational(c, w as i64 + 8)).round(w as i64 + 8);
            }
            if acc.radius() <= &limit {
                return Ok(acc);
            }
            if w > 1 << 20 {
                return Err(Error::PrecisionExhausted {
                    required_bits: w as u64,
                    max_bits: 1 << 20,
                });
            }
            w *= 2;
        }
    }

    /// Human-readable form in the field symbol, highest power first.
    pub fn to_string_with_var(&self, var: &str) -> String {
        let cs = self.poly.coeffs();
        format_terms(
            (0..cs.len()).rev().filter(|&k| !cs[k].is_zero()).map(|k| (cs[k].clone(), k)),
            var,
        )
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.field.as_ref().map_or("u", |fl| fl.symbol());
        f.write_str(&self.to_string_with_var(var))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.join(other).is_ok() && self.poly == other.poly
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl Scalar for FieldElement {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("field arithmetic: {e}"))
            }
        }

        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            poly: -&self.poly,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
