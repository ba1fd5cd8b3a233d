//! Minimization of 𝓐 over the projectivized Kähler cone of the two-point
//! blow-up, and parameter sweeps.
//!
//! The minimizer is located on the diagonal β = γ by exact sign bisection of
//! ∂𝓐/∂β, inside the sublevel region Y = {𝓣 ≤ 29/4}, then checked against a
//! 1/100 grid over Y.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cohomology::{class_from_params, eta};
use crate::error::{Error, Result};
use crate::exact::{fmt_float, int, rat, to_f64, MPoly, PiScalar, Rat, RatFn, Var};
use crate::invariants::{corner_bound, functional, invariant_set, invariant_set_symbolic, scalar_bounds};
use crate::polytope::{KahlerParams, SurfaceKind};

pub const MAX_BISECTIONS: usize = 256;

/// Upper sublevel used to confine the search: 𝓣(c₁) + 1/4.
pub fn y_level() -> Rat {
    rat(29, 4)
}

fn sign_at(f: &RatFn, var: Var, x: &Rat) -> Result<(i8, i8)> {
    let mut point = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    point[var.index()] = x.clone();
    let sign = |r: Rat| if r.is_positive() { 1 } else if r.is_negative() { -1 } else { 0 };
    Ok((sign(f.num().eval(&point)), sign(f.den().eval(&point))))
}

/// Bracket `[lo, hi]` of width ≤ `tol` across which the univariate `f`
/// changes sign, found by exact bisection.
pub fn sign_bisection(f: &RatFn, var: Var, lo: &Rat, hi: &Rat, tol: &Rat) -> Result<(Rat, Rat, usize)> {
    if !tol.is_positive() {
        return Err(Error::OutOfRange { name: "tolerance", value: tol.clone() });
    }
    for v in Var::ALL {
        if v != var && (f.num().degree_in(v) > 0 || f.den().degree_in(v) > 0) {
            return Err(Error::Unsupported(format!("sign_bisection needs a function of {} only", var.name())));
        }
    }
    let (mut lo, mut hi) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
    let (n_lo, d_lo) = sign_at(f, var, &lo)?;
    if d_lo == 0 {
        return Err(Error::DenominatorVanishes(lo));
    }
    let (n_hi, d_hi) = sign_at(f, var, &hi)?;
    if d_hi != d_lo {
        return Err(Error::DenominatorVanishes(hi));
    }
    if n_lo == 0 {
        return Ok((lo.clone(), lo, 0));
    }
    if n_hi == 0 {
        return Ok((hi.clone(), hi, 0));
    }
    if n_lo == n_hi {
        return Err(Error::SameSign { lo, hi });
    }
    let half = rat(1, 2);
    let mut steps = 0;
    while &hi - &lo > *tol {
        if steps == MAX_BISECTIONS {
            return Err(Error::ToleranceTooSmall(MAX_BISECTIONS));
        }
        steps += 1;
        let mid = (&lo + &hi) * &half;
        let (n, d) = sign_at(f, var, &mid)?;
        if d != d_lo {
            return Err(Error::DenominatorVanishes(mid));
        }
        if n == 0 {
            return Ok((mid.clone(), mid, steps));
        }
        if n == n_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi, steps))
}

/// 𝓐 on the two-point blow-up at δ = 1, as a rational function of (β, γ).
pub fn cal_a_dp2() -> RatFn {
    let sym = invariant_set_symbolic(SurfaceKind::Dp2);
    let v = sym.volume.coeff().num().clone();
    let t = RatFn::new(&sym.perimeter * &sym.perimeter, v.scale(&int(2))).expect("V ≠ 0");
    (&t + &sym.cal_b).specialize(Var::Delta, &Rat::one()).expect("δ = 1")
}

fn diagonal(f: &RatFn) -> RatFn {
    let images = [MPoly::var(Var::Alpha), MPoly::var(Var::Beta), MPoly::var(Var::Beta), MPoly::var(Var::Delta)];
    f.compose(&images).expect("nonzero on the diagonal")
}

fn eval2(f: &RatFn, beta: &Rat, gamma: &Rat) -> Result<Rat> {
    f.eval(&[Rat::zero(), beta.clone(), gamma.clone(), Rat::one()])
}

/// 4(300 + 2i + 2j)² ≤ 29(10⁴ + 200i + 200j + 2ij): the grid point
/// (i, j)/100 lies in Y.
pub fn grid_point_in_y(i: i64, j: i64) -> bool {
    let p = BigInt::from(300 + 2 * i + 2 * j);
    let omega2 = BigInt::from(10_000 + 200 * i + 200 * j) + BigInt::from(2) * BigInt::from(i) * BigInt::from(j);
    BigInt::from(4) * &p * &p <= BigInt::from(29) * omega2
}

#[derive(Clone, Debug)]
pub struct MinimizationResult {
    /// Rational witness on the δ = 1 slice.
    pub params_star: KahlerParams,
    pub cal_a_star: Rat,
    pub cal_t_star: Rat,
    pub cal_b_star: Rat,
    /// Diagnostic only.
    pub gradient_norm: f64,
    /// Set when 𝓐 at the witness is exactly below 29/4.
    pub certified_below: Option<Rat>,
    /// −η² < 7(t − 7)/t at t = 29/4.
    pub inside_y: bool,
    pub eta_square: Rat,
    pub bracket: (Rat, Rat),
    pub bisection_steps: usize,
    /// 𝓐(β, γ) = 𝓐(γ, β) as rational functions.
    pub symmetric: bool,
    /// ∂𝓐/∂β and ∂𝓐/∂γ both change sign across the bracket.
    pub partials_change_sign: bool,
    pub grid_points: usize,
    /// Exact 𝓐 at the smallest grid point.
    pub grid_min: Rat,
    pub grid_argmin: (Rat, Rat),
    /// No grid point of Y has 𝓐 below `cal_a_star`.
    pub grid_clear: bool,
    /// Grid points below all eight neighbours (float screening).
    pub local_minima: Vec<(Rat, Rat)>,
}

/// Float evaluation with a relative safety margin; values within the margin
/// of a comparison are re-decided exactly.
const FLOAT_MARGIN: f64 = 1e-9;

pub fn minimize_cal_a_dp2(tolerance: &Rat) -> Result<MinimizationResult> {
    if !tolerance.is_positive() {
        return Err(Error::OutOfRange { name: "tolerance", value: tolerance.clone() });
    }
    let cal_a = cal_a_dp2();
    let symmetric = cal_a.swap(Var::Beta, Var::Gamma) == cal_a;
    let d_beta = cal_a.partial(Var::Beta);
    let d_gamma = cal_a.partial(Var::Gamma);

    // Y ∩ diagonal is {6u² − 20u + 7 ≤ 0}; bracket both roots from inside.
    let u = MPoly::var(Var::Beta);
    let q = RatFn::poly(u.pow(2).scale(&int(6)) - u.scale(&int(20)) + MPoly::from(7));
    let fine = rat(1, 1 << 20);
    let (_, left, _) = sign_bisection(&q, Var::Beta, &int(0), &int(1), &fine)?;
    let (right, _, _) = sign_bisection(&q, Var::Beta, &int(1), &int(10), &fine)?;

    let g = diagonal(&d_beta);
    let (lo, hi, steps) = sign_bisection(&g, Var::Beta, &left, &right, tolerance).map_err(|e| match e {
        Error::SameSign { lo, hi } => Error::BracketFailure(format!("∂𝓐/∂β keeps its sign on the diagonal over [{lo}, {hi}]")),
        other => other,
    })?;

    let sign = |r: Rat| r.cmp(&Rat::zero());
    let change = |f: &RatFn| -> Result<bool> {
        let a = sign(eval2(f, &lo, &lo)?);
        let b = sign(eval2(f, &hi, &hi)?);
        Ok(a != b || a == std::cmp::Ordering::Equal)
    };
    let partials_change_sign = change(&d_beta)? && change(&d_gamma)?;

    let mid = (&lo + &hi) * rat(1, 2);
    let params_star = KahlerParams::dp2(mid.clone(), mid.clone(), Rat::one());
    let value = functional(SurfaceKind::Dp2, &params_star)?;
    debug_assert_eq!(eval2(&cal_a, &mid, &mid)?, value.cal_a);
    let gb = to_f64(&eval2(&d_beta, &mid, &mid)?);
    let gg = to_f64(&eval2(&d_gamma, &mid, &mid)?);

    let class = class_from_params(SurfaceKind::Dp2, &params_star);
    let eta_square = eta(&class)?.square();
    let level = y_level();
    let inside_y = -eta_square.clone() < int(7) * (&level - int(7)) / &level;
    let certified_below = (value.cal_a < level).then(|| level.clone());

    let grid = grid_scan(&cal_a, &value.cal_a)?;
    Ok(MinimizationResult {
        params_star,
        cal_a_star: value.cal_a,
        cal_t_star: value.cal_t,
        cal_b_star: value.cal_b,
        gradient_norm: (gb * gb + gg * gg).sqrt(),
        certified_below,
        inside_y,
        eta_square,
        bracket: (lo, hi),
        bisection_steps: steps,
        symmetric,
        partials_change_sign,
        grid_points: grid.points,
        grid_min: grid.min,
        grid_argmin: grid.argmin,
        grid_clear: grid.clear,
        local_minima: grid.local_minima,
    })
}

struct GridScan {
    points: usize,
    min: Rat,
    argmin: (Rat, Rat),
    clear: bool,
    local_minima: Vec<(Rat, Rat)>,
}

const GRID_MAX: i64 = 1000;

fn grid_scan(cal_a: &RatFn, reference: &Rat) -> Result<GridScan> {
    let num = cal_a.num().to_float();
    let den = cal_a.den().to_float();
    let at = |i: i64, j: i64| {
        let x = [0.0, i as f64 / 100.0, j as f64 / 100.0, 1.0];
        num.eval(&x) / den.eval(&x)
    };
    let rows: Vec<Vec<(i64, f64)>> = (1..=GRID_MAX)
        .into_par_iter()
        .map(|i| (1..=GRID_MAX).filter(|&j| grid_point_in_y(i, j)).map(|j| (j, at(i, j))).collect())
        .collect();
    let lookup = |i: i64, j: i64| -> Option<f64> {
        if i < 1 || i > GRID_MAX {
            return None;
        }
        let row = &rows[(i - 1) as usize];
        row.binary_search_by_key(&j, |&(k, _)| k).ok().map(|idx| row[idx].1)
    };
    let reference_f = to_f64(reference);
    let mut points = 0;
    let mut near: Vec<(i64, i64)> = Vec::new();
    let mut best: Option<(f64, i64, i64)> = None;
    let mut local_minima = Vec::new();
    for (ii, row) in rows.iter().enumerate() {
        let i = ii as i64 + 1;
        for &(j, v) in row {
            points += 1;
            if v <= reference_f + FLOAT_MARGIN * reference_f.abs() {
                near.push((i, j));
            }
            if best.map_or(true, |(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
            let neighbours = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];
            if neighbours.iter().all(|(di, dj)| lookup(i + di, j + dj).map_or(false, |w| v < w)) {
                local_minima.push((rat(i, 100), rat(j, 100)));
            }
        }
    }
    let mut clear = true;
    for (i, j) in near {
        if eval2(cal_a, &rat(i, 100), &rat(j, 100))? < *reference {
            clear = false;
        }
    }
    let (_, bi, bj) = best.ok_or_else(|| Error::BracketFailure("empty grid".into()))?;
    let argmin = (rat(bi, 100), rat(bj, 100));
    let min = eval2(cal_a, &argmin.0, &argmin.1)?;
    Ok(GridScan { points, min, argmin, clear, local_minima })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    V,
    S0,
    F1,
    F2,
    CalT,
    CalB,
    CalA,
    SMin,
    SMax,
    Corner,
}

impl Quantity {
    pub const ALL: [Quantity; 10] = [
        Quantity::V,
        Quantity::S0,
        Quantity::F1,
        Quantity::F2,
        Quantity::CalT,
        Quantity::CalB,
        Quantity::CalA,
        Quantity::SMin,
        Quantity::SMax,
        Quantity::Corner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::V => "V",
            Quantity::S0 => "s0",
            Quantity::F1 => "F1",
            Quantity::F2 => "F2",
            Quantity::CalT => "calT",
            Quantity::CalB => "calB",
            Quantity::CalA => "calA",
            Quantity::SMin => "smin",
            Quantity::SMax => "smax",
            Quantity::Corner => "corner",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown quantity `{s}`")))
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Quantity::ALL.to_vec());
        }
        s.split(',').map(Quantity::parse).collect()
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact value and its float rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub exact: String,
    pub float: f64,
}

impl Value {
    pub fn rational(r: &Rat) -> Self {
        Value { exact: r.to_string(), float: to_f64(r) }
    }

    pub fn graded(s: &PiScalar) -> Self {
        Value { exact: s.to_string(), float: s.to_f64() }
    }

    pub fn float_str(&self) -> String {
        fmt_float(self.float)
    }
}

/// Values of `quantities` at one point.
pub fn evaluate(kind: SurfaceKind, params: &KahlerParams, quantities: &[Quantity]) -> Result<Vec<Value>> {
    let set = invariant_set(kind, params)?;
    let fv = functional(kind, params)?;
    let needs_bounds = quantities.iter().any(|q| matches!(q, Quantity::SMin | Quantity::SMax));
    let bounds = if needs_bounds { Some(scalar_bounds(kind, params)?) } else { None };
    quantities
        .iter()
        .map(|q| {
            Ok(match q {
                Quantity::V => Value::rational(&set.volume),
                Quantity::S0 => Value::graded(&set.s0),
                Quantity::F1 => Value::rational(&set.f1),
                Quantity::F2 => Value::rational(&set.f2),
                Quantity::CalT => Value::rational(&fv.cal_t),
                Quantity::CalB => Value::rational(&fv.cal_b),
                Quantity::CalA => Value::rational(&fv.cal_a),
                Quantity::SMin => Value::graded(&bounds.as_ref().expect("computed").0),
                Quantity::SMax => Value::graded(&bounds.as_ref().expect("computed").1),
                Quantity::Corner => Value::graded(&corner_bound(kind, params)?),
            })
        })
        .collect()
}

/// One sweep axis: the listed variables share each value.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepAxis {
    pub vars: Vec<Var>,
    pub lo: Rat,
    pub hi: Rat,
    pub step: Rat,
}

impl SweepAxis {
    /// `VAR[=VAR…]=lo:hi:step`, e.g. `beta=gamma=0.2:3:0.2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts: Vec<&str> = s.split('=').collect();
        let spec = parts.pop().ok_or_else(|| Error::Parse(format!("bad range `{s}`")))?;
        if parts.is_empty() {
            return Err(Error::Parse(format!("range `{s}` names no variable")));
        }
        let vars = parts.iter().map(|p| Var::parse(p)).collect::<Result<Vec<_>>>()?;
        let nums: Vec<&str> = spec.split(':').collect();
        if nums.len() != 3 {
            return Err(Error::Parse(format!("range `{spec}` is not lo:hi:step")));
        }
        let lo = crate::exact::parse_rat(nums[0])?;
        let hi = crate::exact::parse_rat(nums[1])?;
        let step = crate::exact::parse_rat(nums[2])?;
        if !step.is_positive() {
            return Err(Error::OutOfRange { name: "step", value: step });
        }
        Ok(SweepAxis { vars, lo, hi, step })
    }

    /// lo, lo + step, … up to and including hi; empty when lo > hi.
    pub fn values(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: KahlerParams,
    /// Empty when the point is outside the cone.
    pub values: Vec<Value>,
    pub status: Option<String>,
}

/// Evaluates `quantities` on the product grid of `axes`, starting from
/// `base` (unswept entries), in row-major order.
pub fn grid_sweep(
    kind: SurfaceKind,
    base: &KahlerParams,
    axes: &[SweepAxis],
    quantities: &[Quantity],
) -> Result<Vec<SweepRow>> {
    let mut points = vec![base.clone()];
    for axis in axes {
        let values = axis.values();
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in &values {
                let mut q = p.clone();
                for &var in &axis.vars {
                    q.set(var, v.clone());
                }
                next.push(q);
            }
        }
        points = next;
    }
    if axes.is_empty() {
        points.clear();
    }
    Ok(points
        .into_par_iter()
        .map(|p| match evaluate(kind, &p, quantities) {
            Ok(values) => SweepRow { params: p, values, status: None },
            Err(e) => SweepRow { params: p, values: Vec::new(), status: Some(e.to_string()) },
        })
        .collect())
}

/// Default unswept parameters: all ones, α = 0 on dp2.
pub fn default_base(kind: SurfaceKind) -> KahlerParams {
    match kind {
        SurfaceKind::Dp2 => KahlerParams::dp2(Rat::one(), Rat::one(), Rat::one()),
        SurfaceKind::Dp3 => KahlerParams::new(Rat::one(), Rat::one(), Rat::one(), Rat::one()),
    }
}

pub fn ratio_to_f64_checked(r: &Rat) -> Option<f64> {
    r.numer().to_f64().zip(r.denom().to_f64()).map(|(n, d)| n / d)
}
