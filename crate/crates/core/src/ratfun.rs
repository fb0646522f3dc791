//! The rational function field ℚ(a₁,…,aₘ).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Rational, Rationals};
use crate::gcd::{exact_div, gcd, lcm, primitive_integer, QPoly};
use crate::poly::{Ring, RingExt};

/// Fraction field of a polynomial ring over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionField {
    params: Ring<Rationals>,
}

impl FractionField {
    pub fn new(params: Ring<Rationals>) -> Self {
        FractionField { params }
    }

    pub fn params(&self) -> &Ring<Rationals> {
        &self.params
    }

    /// The parameter `name` as a field element.
    pub fn param(&self, name: &str) -> Option<RationalFunction> {
        self.params.index_of(name).map(|i| RationalFunction::from_poly(self.params.var(i)))
    }
}

/// `num / den` with `gcd(num, den) = 1`, `den` primitive over ℤ with positive
/// leading coefficient, and `den = 1` whenever it is constant.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    pub fn from_poly(num: QPoly) -> Self {
        let den = num.ring().one();
        RationalFunction { num, den }
    }

    /// Build and normalize `num / den`.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.ring() != den.ring() {
            return Err(AlgebraError::RingMismatch);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_unit() {
            (num, den)
        } else {
            (exact_div(&num, &g).expect("gcd divides"), exact_div(&den, &g).expect("gcd divides"))
        };
        Ok(Self::scaled(num, den))
    }

    /// Fix the unit: coprimality of `num` and `den` is already known.
    fn scaled(num: QPoly, den: QPoly) -> Self {
        if den.is_unit() {
            let inv = den.lc().recip();
            let one = den.ring().one();
            return RationalFunction { num: num.scale(&inv), den: one };
        }
        let (c, den) = primitive_integer(&den);
        let num = if c.is_one() { num } else { num.scale(&c.recip()) };
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_unit()
    }

    /// Constant in the parameters: neither numerator nor denominator has positive degree.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_unit()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_polynomial() && other.is_polynomial() {
            return Self::from_poly(&self.num + &other.num);
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &other.den);
        let d1 = exact_div(&self.den, &g).expect("gcd divides");
        let d2 = exact_div(&other.den, &g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&other.num * &d1);
        let den = &d1 * &other.den;
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_poly(self.num.ring().zero());
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Self::from_poly(&self.num * &other.num);
        }
        if self.num.is_unit() && self.den.is_unit() {
            return RationalFunction { num: other.num.scale(self.num.lc()), den: other.den.clone() };
        }
        if other.num.is_unit() && other.den.is_unit() {
            return other.mul(self);
        }
        // cross-cancel; both inputs are already reduced
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = exact_div(&self.num, &g1).expect("gcd divides");
        let d2 = exact_div(&other.den, &g1).expect("gcd divides");
        let n2 = exact_div(&other.num, &g2).expect("gcd divides");
        let d1 = exact_div(&self.den, &g2).expect("gcd divides");
        Self::scaled(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::scaled(self.den.clone(), self.num.clone()))
    }

    /// Value at a parameter point; fails when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::OutsideFlatLocus);
        }
        Ok(self.num.eval(point)? / d)
    }

    fn render(&self) -> (String, bool) {
        if self.is_polynomial() {
            return (self.num.to_string(), self.num.len() <= 1);
        }
        let n = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let single_factor = self.den.len() == 1
            && self.den.lc().is_one()
            && self.den.lm().exponents().iter().filter(|&&e| e > 0).count() == 1;
        let d = if single_factor { self.den.to_string() } else { format!("({})", self.den) };
        (format!("{n}/{d}"), false)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().0)
    }
}

impl Field for FractionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(self.params.zero())
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(self.params.one())
    }
    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &RationalFunction) -> bool {
        a.den.is_unit() && a.num.is_unit() && a.num.lc().is_one()
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }
    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.sub(b)
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }
    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction> {
        a.inv()
    }
    fn from_rational(&self, q: &Rational) -> RationalFunction {
        RationalFunction::from_poly(self.params.rational(q))
    }
    fn is_constant(&self, a: &RationalFunction) -> bool {
        a.is_constant()
    }
    fn as_rational(&self, a: &RationalFunction) -> Option<Rational> {
        if !a.is_constant() {
            return None;
        }
        Some(if a.num.is_zero() { Rational::zero() } else { a.num.lc().clone() })
    }
    fn render(&self, a: &RationalFunction) -> (String, bool) {
        a.render()
    }
    fn is_negative(&self, a: &RationalFunction) -> bool {
        !a.num.is_zero() && a.num.lc().is_negative()
    }
}

/// Normalize `num / den` into a [`RationalFunction`].
pub fn rf_normalize(num: &QPoly, den: &QPoly) -> Result<RationalFunction> {
    RationalFunction::new(num.clone(), den.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
}

pub fn rf_arith(f: &RationalFunction, g: &RationalFunction, op: RfOp) -> Result<RationalFunction> {
    match op {
        RfOp::Add => Ok(f.add(g)),
        RfOp::Mul => Ok(f.mul(g)),
        RfOp::Inv => f.inv(),
    }
}

/// Least common multiple of the denominators, canonicalized; `1` when there are none.
pub fn lcm_denominators<'a>(ring: &Ring<Rationals>, list: impl IntoIterator<Item = &'a RationalFunction>) -> QPoly {
    list.into_iter().fold(ring.one(), |acc, f| if f.den.is_unit() { acc } else { lcm(&acc, &f.den) })
}
