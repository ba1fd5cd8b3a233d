use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, Var};
use crate::error::{Error, Result};

/// Exponent vector over (α, β, γ, δ).
///
/// Ordered graded-lexicographically with α < β < γ < δ: total degree first,
/// then the exponent of δ, γ, β, α in turn.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a -= b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[3].cmp(&other.0[3]))
            .then_with(|| self.0[2].cmp(&other.0[2]))
            .then_with(|| self.0[1].cmp(&other.0[1]))
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ in (α, β, γ, δ). Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::ONE)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms (the `v`-adic valuation).
    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms of exactly degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Minimum stored coefficient; 0 for the zero polynomial.
    pub fn min_coefficient(&self) -> Rat {
        self.terms.values().min().cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms with negative coefficient.
    pub fn negative_terms(&self) -> Vec<(Monomial, Rat)> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(m, c)| (*m, c.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[Rat; 4]) -> Rat {
        let mut powers: [Vec<Rat>; 4] = Default::default();
        for (i, v) in Var::ALL.iter().enumerate() {
            let d = self.degree_in(*v) as usize;
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(Rat::one());
            for k in 1..=d {
                let next = &pw[k - 1] * &point[i];
                pw.push(next);
            }
            powers[i] = pw;
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.0[i] as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> f64 {
        self.to_float().eval(point)
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0.map(|e| e as i32), super::to_f64(c)))
                .collect(),
        }
    }

    pub fn partial(&self, v: Var) -> MPoly {
        let i = v.index();
        MPoly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * Rat::from_integer(BigInt::from(k)))
        }))
    }

    /// Multiplies each monomial of degree `d` by `v^(target - d)`.
    pub fn homogenize(&self, v: Var, target: u32) -> Result<MPoly> {
        let degree = self.degree();
        if target < degree {
            return Err(Error::HomogenizeDegree { target, degree });
        }
        Ok(MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.0;
            e[v.index()] += target - m.degree();
            (Monomial(e), c.clone())
        })))
    }

    /// Substitutes the constant `value` for `v`.
    pub fn specialize(&self, v: Var, value: &Rat) -> MPoly {
        let i = v.index();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[i];
            e[i] = 0;
            let coef = if k == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(Monomial(e), coef);
        }
        out
    }

    /// Substitutes `images[i]` for the i-th variable simultaneously.
    pub fn compose(&self, images: &[MPoly; 4]) -> MPoly {
        let mut cache: [Vec<MPoly>; 4] = Default::default();
        for (i, v) in Var::ALL.iter().enumerate() {
            let d = self.degree_in(*v) as usize;
            let mut pw = vec![MPoly::one()];
            for k in 1..=d {
                let next = &pw[k - 1] * &images[i];
                pw.push(next);
            }
            cache[i] = pw;
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, pw) in cache.iter().enumerate() {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out = out + t;
        }
        out
    }

    /// Permutes variables: variable `i` is renamed to `perm[i]`.
    pub fn rename(&self, perm: [Var; 4]) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = [0; 4];
            for (i, target) in perm.iter().enumerate() {
                e[target.index()] += m.0[i];
            }
            (Monomial(e), c.clone())
        }))
    }

    pub fn swap(&self, a: Var, b: Var) -> MPoly {
        let mut perm = Var::ALL;
        perm[a.index()] = b;
        perm[b.index()] = a;
        self.rename(perm)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let t = MPoly::term(m.div(&lm), c / &lc);
            rem = rem - &t * divisor;
            quot = quot + t;
        }
        Some(quot)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Returns 1 for the zero polynomial.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        Rat::new(g, l)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::constant(super::int(n))
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly { (&self).$f(rhs) }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const SYM: [&str; 4] = ["α", "β", "γ", "δ"];
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.to_string());
            }
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(SYM[i].to_string()),
                    _ => factors.push(format!("{}^{}", SYM[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Floating-point image of an [`MPoly`], for fast approximate sweeps only.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<([i32; 4], f64)>,
}

impl FloatPoly {
    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = *c;
                for i in 0..4 {
                    if e[i] != 0 {
                        t *= x[i].powi(e[i]);
                    }
                }
                t
            })
            .sum()
    }
}
