//! The lattice H²(ℂP² # k·C̄P²), k = 2, 3, in the basis (L, E₁, …, E_k).
//!
//! A class is stored as `(ℓ; e₁, …, e_k)` with `ℓ = X·L` and `e_i = X·E_i`,
//! so `X·Y = ℓℓ′ − Σ e_i e_i′` and `c₁ = (3; 1, …, 1)`. In coefficient form
//! `X = nL + Σ a_i E_i` one has `n = ℓ` and `a_i = −e_i`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Rat};
use crate::polytope::{KahlerParams, SurfaceKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    pub ell: Rat,
    pub e: Vec<Rat>,
}

impl CohClass {
    pub fn new(ell: Rat, e: Vec<Rat>) -> Self {
        CohClass { ell, e }
    }

    /// `nL + Σ a_i E_i`.
    pub fn from_coefficients(n: i64, a: &[i64]) -> Self {
        CohClass::new(int(n), a.iter().map(|&x| int(-x)).collect())
    }

    /// `(n; a₁, …, a_k)` with `X = nL + Σ a_i E_i`.
    pub fn coefficients(&self) -> (Rat, Vec<Rat>) {
        (self.ell.clone(), self.e.iter().map(|x| -x).collect())
    }

    pub fn k(&self) -> usize {
        self.e.len()
    }

    pub fn line(k: usize) -> Self {
        CohClass::new(Rat::one(), vec![Rat::zero(); k])
    }

    /// The exceptional class E_i (0-based index).
    pub fn exceptional(k: usize, i: usize) -> Self {
        let mut e = vec![Rat::zero(); k];
        e[i] = -Rat::one();
        CohClass::new(Rat::zero(), e)
    }

    pub fn c1(k: usize) -> Self {
        CohClass::new(int(3), vec![Rat::one(); k])
    }

    pub fn surface(&self) -> Result<SurfaceKind> {
        match self.k() {
            2 => Ok(SurfaceKind::Dp2),
            3 => Ok(SurfaceKind::Dp3),
            k => Err(Error::Unsupported(format!("{k} blow-ups"))),
        }
    }

    pub fn square(&self) -> Rat {
        intersect(self, self).expect("same lattice")
    }

    pub fn c1_degree(&self) -> Rat {
        intersect(&CohClass::c1(self.k()), self).expect("same lattice")
    }

    pub fn is_integral(&self) -> bool {
        self.ell.is_integer() && self.e.iter().all(Rat::is_integer)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CohClass::new(&self.ell * c, self.e.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_k(self, other)?;
        Ok(CohClass::new(
            &self.ell + &other.ell,
            self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }
}

impl fmt::Display for CohClass {
    /// Coefficient form `(n; a, b, c)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, a) = self.coefficients();
        let a: Vec<String> = a.iter().map(ToString::to_string).collect();
        write!(f, "({n}; {})", a.join(","))
    }
}

fn same_k(x: &CohClass, y: &CohClass) -> Result<()> {
    if x.k() == y.k() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(x.k(), y.k()))
    }
}

pub fn intersect(x: &CohClass, y: &CohClass) -> Result<Rat> {
    same_k(x, y)?;
    let mut acc = &x.ell * &y.ell;
    for (a, b) in x.e.iter().zip(&y.e) {
        acc -= a * b;
    }
    Ok(acc)
}

/// The (−1)-classes bounding the Kähler cone: E_i, then L − E_i − E_j.
pub fn minus_one_classes(k: usize) -> Vec<CohClass> {
    let mut out: Vec<CohClass> = (0..k).map(|i| CohClass::exceptional(k, i)).collect();
    for i in 0..k {
        for j in i + 1..k {
            let mut e = vec![Rat::zero(); k];
            e[i] = Rat::one();
            e[j] = Rat::one();
            out.push(CohClass::new(Rat::one(), e));
        }
    }
    out
}

/// Positive on every (−1)-class.
pub fn is_kahler(class: &CohClass) -> bool {
    minus_one_classes(class.k())
        .iter()
        .all(|c| intersect(class, c).map(|v| v.is_positive()).unwrap_or(false))
}

/// 𝓣 = (c₁·Ω)²/Ω².
pub fn cal_t(class: &CohClass) -> Result<Rat> {
    let sq = class.square();
    let deg = class.c1_degree();
    if !sq.is_positive() || !deg.is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    Ok(&deg * &deg / sq)
}

pub fn class_from_params(kind: SurfaceKind, p: &KahlerParams) -> CohClass {
    match kind {
        SurfaceKind::Dp3 => CohClass::new(
            &p.alpha + &p.beta + &p.gamma + &p.delta,
            vec![p.alpha.clone(), p.beta.clone(), p.gamma.clone()],
        ),
        SurfaceKind::Dp2 => CohClass::new(&p.beta + &p.gamma + &p.delta, vec![p.beta.clone(), p.gamma.clone()]),
    }
}

pub fn params_from_class(class: &CohClass) -> Result<(SurfaceKind, KahlerParams)> {
    let kind = class.surface()?;
    let sum: Rat = class.e.iter().sum();
    let delta = &class.ell - sum;
    let p = match kind {
        SurfaceKind::Dp3 => KahlerParams::new(class.e[0].clone(), class.e[1].clone(), class.e[2].clone(), delta),
        SurfaceKind::Dp2 => KahlerParams::dp2(class.e[0].clone(), class.e[1].clone(), delta),
    };
    Ok((kind, p))
}

/// Quadratic Cremona involution: `(ℓ; e) ↦ (2ℓ − Σe; ℓ − e_j − e_k)`, i.e.
/// `(α, β, γ, δ) ↦ (α + δ, β + δ, γ + δ, −δ)`.
pub fn cremona(class: &CohClass) -> Result<CohClass> {
    if class.k() != 3 {
        return Err(Error::DimensionMismatch(class.k(), 3));
    }
    let sum: Rat = class.e.iter().sum();
    let ell = int(2) * &class.ell - &sum;
    let e = (0..3).map(|i| &class.ell - (&sum - &class.e[i])).collect();
    Ok(CohClass::new(ell, e))
}

pub fn cremona_params(p: &KahlerParams) -> KahlerParams {
    KahlerParams::new(&p.alpha + &p.delta, &p.beta + &p.delta, &p.gamma + &p.delta, -p.delta.clone())
}

/// Normalizes δ ≥ 0 by at most one Cremona move.
pub fn cremona_normalize(p: &KahlerParams) -> KahlerParams {
    if p.delta.is_negative() {
        cremona_params(p)
    } else {
        p.clone()
    }
}

/// Integer range of n with (9−m)n² − 6(2−k)n + (2−k)² − mk ≤ 0.
fn n_range(m: i64, k: i64) -> Option<(i64, i64)> {
    let (qa, qb, qc) = (9 - m, -6 * (2 - k), (2 - k) * (2 - k) - m * k);
    let f = |n: i64| qa * n * n + qb * n + qc <= 0;
    let disc = (qb * qb - 4 * qa * qc) as f64;
    if disc < 0.0 {
        return None;
    }
    let centre = -(qb as f64) / (2.0 * qa as f64);
    let half = disc.sqrt() / (2.0 * qa as f64);
    // widen, then trim exactly
    let mut lo = (centre - half).floor() as i64 - 1;
    let mut hi = (centre + half).ceil() as i64 + 1;
    while lo <= hi && !f(lo) {
        lo += 1;
    }
    while hi >= lo && !f(hi) {
        hi -= 1;
    }
    (lo <= hi).then_some((lo, hi))
}

fn tuples(len: usize, sum: i64, sq: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if sum == 0 && sq == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if sq < 0 {
        return;
    }
    // Cauchy–Schwarz on the remaining slots
    if sum * sum > len as i64 * sq {
        return;
    }
    let r = (sq as f64).sqrt() as i64 + 1;
    for a in -r..=r {
        if a * a > sq {
            continue;
        }
        prefix.push(a);
        tuples(len - 1, sum - a, sq - a * a, prefix, out);
        prefix.pop();
    }
}

/// All integral classes A with A² = −k_self and c₁·A = 2 − k_self, sorted by
/// coefficient tuple.
pub fn enumerate_negative_classes(kind: SurfaceKind, k_self: i64) -> Result<Vec<CohClass>> {
    if k_self < 1 {
        return Err(Error::OutOfRange { name: "k", value: int(k_self) });
    }
    let m = kind.blowups() as i64;
    let mut found: Vec<Vec<i64>> = Vec::new();
    if let Some((lo, hi)) = n_range(m, k_self) {
        for n in lo..=hi {
            let mut rows = Vec::new();
            tuples(m as usize, 2 - k_self - 3 * n, n * n + k_self, &mut Vec::new(), &mut rows);
            for a in rows {
                let mut row = vec![n];
                row.extend(a);
                found.push(row);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found.iter().map(|r| CohClass::from_coefficients(r[0], &r[1..])).collect())
}

/// 𝓣 ≤ t, decided directly and through the disk picture; the two must agree.
pub fn t_sublevel_test(class: &CohClass, t: &Rat) -> Result<bool> {
    if class.k() != 2 {
        return Err(Error::DimensionMismatch(class.k(), 2));
    }
    let direct = cal_t(class)? <= *t;
    let disk = t_sublevel_disk(class, t)?;
    if direct != disk {
        return Err(Error::AssertionFailure {
            statement: "sublevel tests agree".into(),
            point: format!("{class}, t = {t}"),
        });
    }
    Ok(direct)
}

/// Normalizes to c₁·ϖ = 7 and tests −η² ≤ 7(t − 7)/t for η = ϖ − c₁.
pub fn t_sublevel_disk(class: &CohClass, t: &Rat) -> Result<bool> {
    let sq = class.square();
    let deg = class.c1_degree();
    if !sq.is_positive() || !deg.is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    if !t.is_positive() {
        return Err(Error::OutOfRange { name: "t", value: t.clone() });
    }
    let eta = eta(class)?;
    let bound = int(7) * (t - int(7)) / t;
    Ok(-eta.square() <= bound)
}

/// η = 7Ω/(c₁·Ω) − c₁; c₁·η = 0 on the two-point blow-up.
pub fn eta(class: &CohClass) -> Result<CohClass> {
    let deg = class.c1_degree();
    if deg.is_zero() {
        return Err(Error::NonPositiveSquare);
    }
    let c1 = CohClass::c1(class.k());
    class.scale(&(c1.square() / deg)).sub(&c1)
}

/// Bound on |η²| for the disk 𝓣 ≤ t; defined for 7 < t < 8.
pub fn disk_radius(t: &Rat) -> Result<Rat> {
    if *t <= int(7) || *t >= int(8) {
        return Err(Error::OutOfRange { name: "t", value: t.clone() });
    }
    Ok(int(7) * (t - int(7)) / t)
}

fn unit_interval(t: &Rat) -> Result<()> {
    if t.is_negative() || *t > Rat::one() {
        return Err(Error::OutOfRange { name: "t", value: t.clone() });
    }
    Ok(())
}

/// (1 − t)·from + t·to.
pub fn segment(from: &CohClass, to: &CohClass, t: &Rat) -> Result<CohClass> {
    unit_interval(t)?;
    from.scale(&(Rat::one() - t)).add(&to.scale(t))
}

/// Pull-back along the blow-down of E₁: (ℓ; b, c) ↦ (ℓ; 0, b, c).
pub fn pullback(class: &CohClass) -> Result<CohClass> {
    if class.k() != 2 {
        return Err(Error::DimensionMismatch(class.k(), 2));
    }
    let mut e = vec![Rat::zero()];
    e.extend(class.e.iter().cloned());
    Ok(CohClass::new(class.ell.clone(), e))
}

/// (1 − t)c₁ + t·p*Ω on the three-point blow-up.
pub fn degeneration_path(omega2: &CohClass, t: &Rat) -> Result<CohClass> {
    if !is_kahler(omega2) || omega2.k() != 2 {
        return Err(Error::ConeViolation(format!("{omega2} is not a Kähler class on dp2")));
    }
    segment(&CohClass::c1(3), &pullback(omega2)?, t)
}

/// Integer coefficient tuple, for sorting and printing.
pub fn integer_coefficients(class: &CohClass) -> Option<Vec<i64>> {
    let (n, a) = class.coefficients();
    std::iter::once(n)
        .chain(a)
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}
