use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    GaussianRationals,
}

impl BaseField {
    pub fn name(self) -> &'static str {
        match self {
            BaseField::Rationals => "rationals",
            BaseField::GaussianRationals => "gaussian-rationals",
        }
    }
}

/// One of Q, Q(i), Q(t), Q(i)(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub base: BaseField,
    /// Name of the transcendental, if the field is a rational function field.
    pub variable: Option<String>,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor {
            base: BaseField::Rationals,
            variable: None,
        }
    }

    pub fn gaussian() -> Self {
        FieldDescriptor {
            base: BaseField::GaussianRationals,
            variable: None,
        }
    }

    pub fn rational_functions(base: BaseField, var: impl Into<String>) -> Self {
        FieldDescriptor {
            base,
            variable: Some(var.into()),
        }
    }

    pub fn has_variable(&self) -> bool {
        self.variable.is_some()
    }

    /// Whether `x` is an element of this field.
    pub fn contains(&self, x: &FieldElement) -> bool {
        if self.variable.is_none() && !x.is_constant() {
            return false;
        }
        self.base == BaseField::GaussianRationals || x.has_real_coefficients()
    }
}

/// An element `num/den` of Q(i)(t) in canonical form: `den` is monic and
/// coprime to `num`, and zero is `0/1`. Structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Poly,
    den: Poly,
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

impl FieldElement {
    /// Brings `num/den` to canonical form.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElement::zero());
        }
        if den.is_constant() {
            let inv = den.constant_term().inv().expect("nonzero constant");
            return Ok(FieldElement {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc_inv = den.leading().expect("nonzero").inv().expect("nonzero");
        Ok(FieldElement {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn zero() -> Self {
        FieldElement {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        FieldElement::from_scalar(Scalar::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::from_scalar(Scalar::from_int(n))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        FieldElement::from_scalar(Scalar::from_frac(p, q))
    }

    pub fn from_scalar(c: Scalar) -> Self {
        FieldElement {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElement {
            num: p,
            den: Poly::one(),
        }
    }

    /// The transcendental `t`.
    pub fn var() -> Self {
        FieldElement::from_poly(Poly::var())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if this element does not involve `t`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.num.has_real_coefficients() && self.den.has_real_coefficients()
    }

    fn both_constant(&self, other: &Self) -> bool {
        self.is_constant() && other.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        FieldElement::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `t = point`.
    pub fn evaluate_at(&self, point: &Scalar) -> Result<Self> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole {
                point: point.to_string(),
            });
        }
        let n = self.num.eval(point);
        Ok(FieldElement::from_scalar(
            n.checked_div(&d).expect("nonzero denominator"),
        ))
    }

    /// Sign of a nonzero real constant.
    pub fn real_sign(&self) -> Option<i8> {
        self.as_scalar().and_then(|s| s.real_sign())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FieldElement::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return FieldElement::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FieldElement::normalize(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        if self.both_constant(rhs) {
            return FieldElement::from_scalar(&self.num.constant_term() * &rhs.num.constant_term());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FieldElement::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lc_inv = den.leading().expect("nonzero").inv().expect("nonzero");
        FieldElement {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }
}

/// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<Scalar> for FieldElement {
    fn from(c: Scalar) -> Self {
        FieldElement::from_scalar(c)
    }
}

/// Literal form: a scalar for constants, `[c0, ...]` for polynomials and
/// `[n0, ...]/[d0, ...]` otherwise.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            write!(f, "{}", self.num.constant_term())
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
