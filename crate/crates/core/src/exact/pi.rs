use std::fmt;

use num_traits::{One, Zero};

use super::{Rat, RatFn};
use crate::error::{Error, Result};

/// `coeff · π^pi_power`.
///
/// Addition is only defined between equal grades; a zero coefficient always
/// carries grade 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<T> {
    coeff: T,
    pi_power: i32,
}

pub type PiScalar = Graded<Rat>;
pub type PiRatFn = Graded<RatFn>;

impl<T: Zero + Clone> Graded<T> {
    pub fn new(coeff: T, pi_power: i32) -> Self {
        let pi_power = if coeff.is_zero() { 0 } else { pi_power };
        Graded { coeff, pi_power }
    }

    pub fn coeff(&self) -> &T {
        &self.coeff
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn grade_check(&self, other: &Self) -> Result<()> {
        if self.is_zero() || other.is_zero() || self.pi_power == other.pi_power {
            Ok(())
        } else {
            Err(Error::PiGradeMismatch { left: self.pi_power, right: other.pi_power })
        }
    }

    fn joint_grade(&self, other: &Self) -> i32 {
        if self.is_zero() {
            other.pi_power
        } else {
            self.pi_power
        }
    }
}

impl PiScalar {
    pub fn rational(c: Rat) -> Self {
        Self::new(c, 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grade_check(other)?;
        Ok(Self::new(&self.coeff + &other.coeff, self.joint_grade(other)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grade_check(other)?;
        Ok(Self::new(&self.coeff - &other.coeff, self.joint_grade(other)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.coeff / &other.coeff, self.pi_power - other.pi_power))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(&self.coeff * c, self.pi_power)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.coeff.clone(), self.pi_power)
    }

    /// Exact comparison; only meaningful within one grade.
    pub fn cmp_same_grade(&self, other: &Self) -> Result<std::cmp::Ordering> {
        self.grade_check(other)?;
        Ok(self.coeff.cmp(&other.coeff))
    }

    /// Multiplies in a double-precision π. Rendering only.
    pub fn to_f64(&self) -> f64 {
        super::to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl PiRatFn {
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grade_check(other)?;
        Ok(Self::new(&self.coeff + &other.coeff, self.joint_grade(other)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn eval(&self, point: &[Rat; 4]) -> Result<PiScalar> {
        Ok(PiScalar::new(self.coeff.eval(point)?, self.pi_power))
    }

    /// Same grade and equal rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.pi_power == other.pi_power && self.coeff == other.coeff)
    }
}

impl<T: fmt::Display + Zero + Clone> fmt::Display for Graded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*pi", self.coeff),
            k => write!(f, "{}*pi^{}", self.coeff, k),
        }
    }
}

impl Default for PiScalar {
    fn default() -> Self {
        Self::new(Rat::zero(), 0)
    }
}

impl One for PiScalar {
    fn one() -> Self {
        Self::new(Rat::one(), 0)
    }
}

impl std::ops::Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        PiScalar::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn grading_rules() {
        let s0 = PiScalar::new(int(8), 1);
        let a = PiScalar::new(rat(1, 3), -2);
        assert!(matches!(s0.add(&a), Err(Error::PiGradeMismatch { left: 1, right: -2 })));
        assert_eq!(s0.mul(&a).pi_power(), -1);
        assert_eq!(s0.add(&s0).unwrap(), PiScalar::new(int(16), 1));
        // zero is canonical and adds to anything
        let z = PiScalar::new(int(0), 5);
        assert_eq!(z.pi_power(), 0);
        assert_eq!(z.add(&a).unwrap(), a);
        assert_eq!(s0.sub(&s0).unwrap().pi_power(), 0);
    }

    #[test]
    fn rendering() {
        assert_eq!(PiScalar::new(int(8), 1).to_string(), "8*pi");
        assert_eq!(PiScalar::new(rat(1, 4), -2).to_string(), "1/4*pi^-2");
        assert!((PiScalar::new(int(2), 1).to_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }
}
