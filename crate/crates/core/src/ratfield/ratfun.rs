use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Element of Q(x) in canonical form.
///
/// The fraction is always reduced and the denominator monic, so two values
/// are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// The four field operations, for callers that dispatch on an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Normalizes a pair already known to be coprime.
    fn from_coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
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

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this is a constant, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Sum of numerator and denominator degrees; a growth measure for pivoting.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn apply(&self, op: ArithOp, rhs: &RatFun) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    /// Exact value at `x0`.
    pub fn eval(&self, x0: &Rat) -> Result<Rat> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint {
                point: x0.to_string(),
            });
        }
        Ok(self.num.eval(x0) / d)
    }

    /// `true` for a constant strictly below zero.
    pub fn is_negative_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_negative())
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFun {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RatFun {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // b = g b', d = g d'  =>  a/b + c/d = (a d' + c b') / (g b' d'),
        // and only g can share a factor with the new numerator.
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::from_coprime(num, &self.den * &rhs.den);
        }
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let h = Poly::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h), g.exact_div(&h))
        };
        RatFun::from_coprime(num, &(&g * &b1) * &d1)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g)
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFun::from_coprime(num, den)
    }
}

/// Panics on division by zero; use [`RatFun::checked_div`] for a `Result`.
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

/// Canonical printer: `num` alone for polynomials, `(num)/(den)` otherwise.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(poly(n), poly(d)).unwrap()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn add_equal_fractions() {
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(&inv_x + &inv_x, rf(&[2], &[0, 1]));
    }

    #[test]
    fn reciprocal_pair_multiplies_to_one() {
        let a = rf(&[1, 1], &[-1, 1]);
        let b = rf(&[-1, 1], &[1, 1]);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn polynomial_quotient() {
        let a = RatFun::from_poly(poly(&[-1, 0, 1]));
        let b = RatFun::from_poly(poly(&[1, 1]));
        assert_eq!(
            a.apply(ArithOp::Div, &b).unwrap(),
            RatFun::from_poly(poly(&[-1, 1]))
        );
    }

    #[test]
    fn divide_by_zero_is_an_error() {
        assert_eq!(
            RatFun::one().checked_div(&RatFun::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            RatFun::new(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn denominator_is_monic_and_reduced() {
        let a = rf(&[2, 2], &[-4, 0, 4]); // 2(x+1) / 4(x-1)(x+1)
        assert_eq!(a.numer(), &Poly::constant(q(1, 2)));
        assert_eq!(a.denom(), &poly(&[-1, 1]));
    }

    #[test]
    fn eval_values_and_poles() {
        assert_eq!(
            RatFun::from_poly(poly(&[1, 1])).eval(&q(2, 1)).unwrap(),
            q(3, 1)
        );
        assert!(matches!(
            rf(&[1, 1], &[-1, 1]).eval(&q(1, 1)),
            Err(Error::PoleAtPoint { .. })
        ));
        let entry = rf(&[-21, -30, 4], &[49, 140, 204]);
        assert_eq!(entry.eval(&q(0, 1)).unwrap(), q(-3, 7));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[1, 1], &[1]).to_string(), "1+x");
        assert_eq!(rf(&[1], &[0, 2]).to_string(), "(1/2)/(x)");
        assert_eq!(RatFun::from_int(-3).to_string(), "-3");
    }

    #[test]
    fn add_with_shared_denominator_factor_reduces() {
        // 1/(x(x+1)) + 1/(x(x-1)) = 2/((x-1)(x+1))
        let a = rf(&[1], &[0, 1, 1]);
        let b = rf(&[1], &[0, -1, 1]);
        assert_eq!(&a + &b, rf(&[2], &[-1, 0, 1]));
        // x/(x+1) - x/(x+1) = 0 with canonical zero
        let c = rf(&[0, 1], &[1, 1]);
        assert_eq!(&c - &c, RatFun::zero());
    }
}
