//! Exact arithmetic substrate: rationals, sparse polynomials in the four
//! Kähler parameters, rational functions and π-graded scalars.
//!
//! Every quantity the toolkit computes has the shape `rational · π^k`. The
//! rational part lives in [`Rat`] (or a [`RatFn`] when symbolic) and the power
//! of π is carried alongside in [`Graded`]; π itself is never approximated
//! here.

mod fixture;
mod mpoly;
mod pi;
mod ratfn;

pub use fixture::{PolyRecord, RatFnFixture, TermRecord, VAR_NAMES};
pub use mpoly::{Monomial, MPoly};
pub use pi::{Graded, PiRatFn, PiScalar};
pub use ratfn::RatFn;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// The four Kähler parameters, in storage order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha = 0,
    Beta = 1,
    Gamma = 2,
    Delta = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Alpha, Var::Beta, Var::Gamma, Var::Delta];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha" | "a" | "α" => Ok(Var::Alpha),
            "beta" | "b" | "β" => Ok(Var::Beta),
            "gamma" | "g" | "γ" => Ok(Var::Gamma),
            "delta" | "d" | "δ" => Ok(Var::Delta),
            other => Err(Error::Parse(format!("unknown variable `{other}`"))),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q`, or a finite decimal such as `0.25`, `-3e-2`, exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i32 + 1 - exp;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rat::new(all, num_traits::pow(ten, scale as usize))
    } else {
        Rat::from_integer(all * num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders a float with 15 significant digits, shortest form.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    format!("{rounded}")
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
