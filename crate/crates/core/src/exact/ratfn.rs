use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{MPoly, Rat, Var};
use crate::error::{Error, Result};

/// Quotient of two polynomials.
///
/// Never reduced by a multivariate gcd. Equality is decided by
/// cross-multiplication; the denominator is kept with a positive leading
/// coefficient.
#[derive(Clone, Debug)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let negative = den.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
        Ok(if negative {
            RatFn { num: -num, den: -den }
        } else {
            RatFn { num, den }
        })
    }

    pub fn poly(p: MPoly) -> Self {
        RatFn { num: p, den: MPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::poly(MPoly::constant(c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, point: &[Rat; 4]) -> Result<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    pub fn recip(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Quotient rule.
    pub fn partial(&self, v: Var) -> RatFn {
        let num = &self.num.partial(v) * &self.den - &self.num * &self.den.partial(v);
        RatFn { num, den: &self.den * &self.den }
    }

    pub fn specialize(&self, v: Var, value: &Rat) -> Result<RatFn> {
        RatFn::new(self.num.specialize(v, value), self.den.specialize(v, value))
    }

    pub fn compose(&self, images: &[MPoly; 4]) -> Result<RatFn> {
        RatFn::new(self.num.compose(images), self.den.compose(images))
    }

    pub fn swap(&self, a: Var, b: Var) -> RatFn {
        RatFn { num: self.num.swap(a, b), den: self.den.swap(a, b) }
    }

    /// Divides numerator and denominator by `factor` for as long as both
    /// quotients are exact. Returns the number of factors removed.
    pub fn cancel_factor(&mut self, factor: &MPoly) -> usize {
        let mut removed = 0;
        if factor.degree() == 0 {
            return 0;
        }
        while let (Some(n), Some(d)) = (self.num.div_exact(factor), self.den.div_exact(factor)) {
            self.num = n;
            self.den = d;
            removed += 1;
        }
        if removed > 0 {
            *self = RatFn::new(self.num.clone(), self.den.clone()).expect("nonzero quotient");
        }
        removed
    }

    /// Rescales so the denominator has coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn normalized(&self) -> RatFn {
        let c = self.den.content();
        let inv = Rat::one() / c;
        RatFn { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    /// `f.num·g.den − g.num·f.den`; zero iff `f == g`.
    pub fn cross_difference(&self, other: &RatFn) -> MPoly {
        &self.num * &other.den - &other.num * &self.den
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.cross_difference(other).is_zero()
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::poly(p)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFn {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Div<&RatFn> for &RatFn {
    type Output = Result<RatFn>;
    fn div(self, rhs: &RatFn) -> Result<RatFn> {
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::poly(MPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}
