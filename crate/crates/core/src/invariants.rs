//! Class-level invariants of an extremal toric metric: volume, Futaki
//! components, second moments, the affine scalar-curvature potential, and the
//! action functional 𝓐 = 𝓣 + 𝓑.
//!
//! With x = x̃/2π and dμ = dx̃ dỹ on the scaled polygon,
//!
//! ```text
//! ∫ x^p y^q dμ     = (2π)^-(p+q) · area_moment(p, q)
//! ∫ x^p y^q s dμ   = 4π (2π)^-(p+q) · boundary_moment(p, q)
//! s - s₀           = a (x - x₀) + b (y - y₀)
//! 𝓑                = (B𝔉₁² - 2C𝔉₁𝔉₂ + A𝔉₂²) / (32π² (AB - C²))
//! ```

use std::sync::OnceLock;

use num_traits::{One, Signed};

use crate::cohomology;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Graded, MPoly, PiRatFn, PiScalar, Rat, RatFn, Var};
use crate::polytope::{
    area_moment, boundary_moment, build_polygon, polygon_symbolic, vertices_symbolic, BuildOptions,
    KahlerParams, MomentKind, MomentPolygon, MomentRing, SurfaceKind,
};

/// ∫_M x^p y^q s dμ for the extremal scalar curvature s.
pub fn scalar_moment(poly: &MomentPolygon, p: u32, q: u32) -> PiScalar {
    let scale = rat(4, 1) / Rat::from_integer(num_bigint::BigInt::from(2u32).pow(p + q));
    PiScalar::new(boundary_moment(poly, p, q) * scale, 1 - (p + q) as i32)
}

/// Raw moments of one polygon over a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Moments<R> {
    pub v: R,
    /// Lattice perimeter, equal to c₁·Ω.
    pub p: R,
    pub m10: R,
    pub m01: R,
    pub m20: R,
    pub m11: R,
    pub m02: R,
    pub b10: R,
    pub b01: R,
}

impl Moments<Rat> {
    pub fn of(poly: &MomentPolygon) -> Self {
        Moments {
            v: area_moment(poly, 0, 0),
            p: poly.lattice_perimeter(),
            m10: area_moment(poly, 1, 0),
            m01: area_moment(poly, 0, 1),
            m20: area_moment(poly, 2, 0),
            m11: area_moment(poly, 1, 1),
            m02: area_moment(poly, 0, 2),
            b10: boundary_moment(poly, 1, 0),
            b01: boundary_moment(poly, 0, 1),
        }
    }
}

impl Moments<MPoly> {
    pub fn symbolic(kind: SurfaceKind) -> Self {
        let a = |p, q| polygon_symbolic(kind, p, q, MomentKind::Area).expect("within cap");
        let b = |p, q| polygon_symbolic(kind, p, q, MomentKind::Boundary).expect("within cap");
        Moments {
            v: a(0, 0),
            p: b(0, 0),
            m10: a(1, 0),
            m01: a(0, 1),
            m20: a(2, 0),
            m11: a(1, 1),
            m02: a(0, 2),
            b10: b(1, 0),
            b01: b(0, 1),
        }
    }
}

/// Denominator-free combinations: 𝔉₁ = f1/V, A = an/(4π²V), C = cn/(4π²V),
/// AB − C² = det/(16π⁴V²).
struct Cleared<R> {
    f1: R,
    f2: R,
    an: R,
    bn: R,
    cn: R,
    det: R,
}

impl<R: MomentRing> Moments<R> {
    fn cleared(&self) -> Cleared<R> {
        let two = R::from_rat(int(2));
        let f1 = two.mul(&self.b10.mul(&self.v).sub(&self.p.mul(&self.m10)));
        let f2 = two.mul(&self.b01.mul(&self.v).sub(&self.p.mul(&self.m01)));
        let an = self.m20.mul(&self.v).sub(&self.m10.mul(&self.m10));
        let bn = self.m02.mul(&self.v).sub(&self.m01.mul(&self.m01));
        let cn = self.m11.mul(&self.v).sub(&self.m10.mul(&self.m01));
        let det = an.mul(&bn).sub(&cn.mul(&cn));
        Cleared { f1, f2, an, bn, cn, det }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSet {
    /// V = Ω²/2, grade π⁰.
    pub volume: Rat,
    /// c₁·Ω.
    pub perimeter: Rat,
    pub s0: PiScalar,
    /// Barycenter in scaled coordinates; x₀ = x̃₀/2π.
    pub x0: Rat,
    pub y0: Rat,
    pub f1: Rat,
    pub f2: Rat,
    /// A = ∫(x−x₀)² dμ, grade π⁻².
    pub var_x: PiScalar,
    /// B = ∫(y−y₀)² dμ.
    pub var_y: PiScalar,
    /// C = ∫(x−x₀)(y−y₀) dμ.
    pub cov_xy: PiScalar,
    pub a: PiScalar,
    pub b: PiScalar,
    moments: Moments<Rat>,
}

impl InvariantSet {
    pub fn from_polygon(poly: &MomentPolygon) -> Result<Self> {
        let m = Moments::of(poly);
        if !m.v.is_positive() {
            return Err(Error::DegeneratePolygon("zero area".into()));
        }
        let v = m.v.clone();
        let x0 = &m.m10 / &v;
        let y0 = &m.m01 / &v;
        let s0 = PiScalar::new(int(4) * &m.p / &v, 1);
        let f1 = int(2) * (&m.b10 - &m.p * &x0);
        let f2 = int(2) * (&m.b01 - &m.p * &y0);
        let quarter = rat(1, 4);
        let var_x = PiScalar::new((&m.m20 - &m.m10 * &x0) * &quarter, -2);
        let var_y = PiScalar::new((&m.m02 - &m.m01 * &y0) * &quarter, -2);
        let cov_xy = PiScalar::new((&m.m11 - &m.m10 * &y0) * &quarter, -2);
        let det = var_x.mul(&var_y).sub(&cov_xy.mul(&cov_xy))?;
        if det.is_zero() {
            return Err(Error::DegenerateMoments);
        }
        let (pf1, pf2) = (PiScalar::rational(f1.clone()), PiScalar::rational(f2.clone()));
        let a = var_y.mul(&pf1).sub(&cov_xy.mul(&pf2))?.div(&det)?;
        let b = var_x.mul(&pf2).sub(&cov_xy.mul(&pf1))?.div(&det)?;
        Ok(InvariantSet {
            volume: v,
            perimeter: m.p.clone(),
            s0,
            x0,
            y0,
            f1,
            f2,
            var_x,
            var_y,
            cov_xy,
            a,
            b,
            moments: m,
        })
    }

    pub fn moments(&self) -> &Moments<Rat> {
        &self.moments
    }

    /// AB − C², grade π⁻⁴.
    pub fn gram_det(&self) -> PiScalar {
        self.var_x
            .mul(&self.var_y)
            .sub(&self.cov_xy.mul(&self.cov_xy))
            .expect("equal grades")
    }

    /// B𝔉₁² − 2C𝔉₁𝔉₂ + A𝔉₂², grade π⁻².
    fn futaki_form(&self) -> PiScalar {
        let (f1, f2) = (&self.f1, &self.f2);
        let t1 = self.var_y.scale(&(f1 * f1));
        let t2 = self.cov_xy.scale(&(int(-2) * f1 * f2));
        let t3 = self.var_x.scale(&(f2 * f2));
        t1.add(&t2).and_then(|t| t.add(&t3)).expect("equal grades")
    }

    /// 𝓑; the π-grade cancels.
    pub fn cal_b(&self) -> Rat {
        let q = self.futaki_form().div(&self.gram_det()).expect("nondegenerate");
        let value = q.div(&PiScalar::new(int(32), 2)).expect("nonzero");
        debug_assert!(value.is_zero() || value.pi_power() == 0);
        value.coeff().clone()
    }

    /// 𝓣 = (c₁·Ω)²/Ω².
    pub fn cal_t(&self) -> Rat {
        &self.perimeter * &self.perimeter / (int(2) * &self.volume)
    }

    pub fn potential(&self) -> AffinePotential {
        AffinePotential {
            s0: self.s0.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            x0: self.x0.clone(),
            y0: self.y0.clone(),
        }
    }
}

pub fn invariant_set(kind: SurfaceKind, params: &KahlerParams) -> Result<InvariantSet> {
    InvariantSet::from_polygon(&build_polygon(kind, params, BuildOptions::default())?)
}

/// s = s₀ + a(x − x₀) + b(y − y₀) in unscaled coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePotential {
    pub s0: PiScalar,
    pub a: PiScalar,
    pub b: PiScalar,
    /// Scaled barycenter.
    pub x0: Rat,
    pub y0: Rat,
}

impl AffinePotential {
    /// s at the scaled point (x̃, ỹ); grade π¹.
    pub fn at_scaled(&self, x: &Rat, y: &Rat) -> PiScalar {
        let half_inv_pi = PiScalar::new(rat(1, 2), -1);
        let dx = half_inv_pi.scale(&(x - &self.x0));
        let dy = half_inv_pi.scale(&(y - &self.y0));
        self.s0
            .add(&self.a.mul(&dx))
            .and_then(|s| s.add(&self.b.mul(&dy)))
            .expect("all terms have grade 1")
    }

    pub fn vertex_values(&self, poly: &MomentPolygon) -> Vec<PiScalar> {
        poly.vertices().iter().map(|(x, y)| self.at_scaled(x, y)).collect()
    }

    /// ∫(s − s₀) dμ, integrated directly from raw area moments.
    pub fn mean_deviation(&self, poly: &MomentPolygon) -> PiScalar {
        let v = area_moment(poly, 0, 0);
        let ix = PiScalar::new((area_moment(poly, 1, 0) - &self.x0 * &v) / int(2), -1);
        let iy = PiScalar::new((area_moment(poly, 0, 1) - &self.y0 * &v) / int(2), -1);
        self.a.mul(&ix).add(&self.b.mul(&iy)).expect("grade 1")
    }

    /// ∫(s − s₀)² dμ, expanded from raw area moments of the polygon.
    pub fn l2_deviation(&self, poly: &MomentPolygon) -> PiScalar {
        let am = |p, q| area_moment(poly, p, q);
        let (x0, y0) = (&self.x0, &self.y0);
        let v = am(0, 0);
        let ixx = am(2, 0) - int(2) * x0 * am(1, 0) + x0 * x0 * &v;
        let iyy = am(0, 2) - int(2) * y0 * am(0, 1) + y0 * y0 * &v;
        let ixy = am(1, 1) - x0 * am(0, 1) - y0 * am(1, 0) + x0 * y0 * &v;
        let quarter_pi2 = PiScalar::new(rat(1, 4), -2);
        let aa = self.a.mul(&self.a).mul(&quarter_pi2).scale(&ixx);
        let ab = self.a.mul(&self.b).mul(&quarter_pi2).scale(&(int(2) * ixy));
        let bb = self.b.mul(&self.b).mul(&quarter_pi2).scale(&iyy);
        aa.add(&ab).and_then(|s| s.add(&bb)).expect("grade 2")
    }
}

pub fn extremal_potential(kind: SurfaceKind, params: &KahlerParams) -> Result<AffinePotential> {
    Ok(invariant_set(kind, params)?.potential())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalValue {
    pub cal_t: Rat,
    pub cal_b: Rat,
    pub cal_a: Rat,
}

pub fn cal_b(kind: SurfaceKind, params: &KahlerParams) -> Result<Rat> {
    Ok(invariant_set(kind, params)?.cal_b())
}

/// 𝓣 from the lattice, 𝓑 from the polygon.
pub fn functional(kind: SurfaceKind, params: &KahlerParams) -> Result<FunctionalValue> {
    let set = invariant_set(kind, params)?;
    let cal_t = cohomology::cal_t(&cohomology::class_from_params(kind, params))?;
    let cal_b = set.cal_b();
    Ok(FunctionalValue { cal_a: &cal_t + &cal_b, cal_t, cal_b })
}

/// Exact minimum and maximum of the extremal potential over all vertices.
pub fn scalar_bounds(kind: SurfaceKind, params: &KahlerParams) -> Result<(PiScalar, PiScalar)> {
    let poly = build_polygon(kind, params, BuildOptions::default())?;
    let pot = InvariantSet::from_polygon(&poly)?.potential();
    let values = pot.vertex_values(&poly);
    let cmp = |x: &&PiScalar, y: &&PiScalar| x.coeff().cmp(y.coeff());
    let lo = values.iter().min_by(cmp).expect("non-empty").clone();
    let hi = values.iter().max_by(cmp).expect("non-empty").clone();
    Ok((lo, hi))
}

/// Potential at the far corner of the bounding box. When a, b < 0 this is a
/// lower bound for s on the polygon, weaker than the vertex minimum.
pub fn corner_bound(kind: SurfaceKind, params: &KahlerParams) -> Result<PiScalar> {
    let poly = build_polygon(kind, params, BuildOptions::default())?;
    let pot = InvariantSet::from_polygon(&poly)?.potential();
    let (x, y) = poly.upper_corner();
    Ok(pot.at_scaled(&x, &y))
}

/// Invariants as rational functions of (α, β, γ, δ), homogeneous in the
/// parameters. Built once per surface and shared.
#[derive(Clone, Debug)]
pub struct SymbolicInvariants {
    pub kind: SurfaceKind,
    pub volume: PiRatFn,
    pub perimeter: MPoly,
    pub s0: PiRatFn,
    pub f1: PiRatFn,
    pub f2: PiRatFn,
    pub var_x: PiRatFn,
    pub var_y: PiRatFn,
    pub cov_xy: PiRatFn,
    pub a: PiRatFn,
    pub b: PiRatFn,
    /// 𝓑 with the volume factor cancelled and the denominator scaled to
    /// coprime integer coefficients.
    pub cal_b: RatFn,
    /// Potential at each polygon vertex, in template order, reduced like `cal_b`.
    pub vertex_values: Vec<PiRatFn>,
    /// Potential at the far bounding-box corner.
    pub corner_value: PiRatFn,
}

fn ratfn(num: MPoly, den: MPoly) -> RatFn {
    RatFn::new(num, den).expect("nonzero symbolic denominator")
}

fn reduced(mut f: RatFn, factor: &MPoly) -> RatFn {
    f.cancel_factor(factor);
    f.normalized()
}

fn derive_symbolic(kind: SurfaceKind) -> SymbolicInvariants {
    let m = Moments::<MPoly>::symbolic(kind);
    let c = m.cleared();
    let v = &m.v;
    let four = int(4);
    let over_v = |num: &MPoly, s: Rat| ratfn(num.scale(&s), v.clone());
    let a_num = &c.bn * &c.f1 - &c.cn * &c.f2;
    let b_num = &c.an * &c.f2 - &c.cn * &c.f1;
    let q = &c.bn * &c.f1 * &c.f1 - (&c.cn * &c.f1 * &c.f2).scale(&int(2)) + &c.an * &c.f2 * &c.f2;
    let cal_b = reduced(ratfn(q, (v * &c.det).scale(&int(8))), v);

    // s(v) = 2π[2P·det + a_num(x̃V − m10) + b_num(ỹV − m01)] / (V·det)
    let value_at = |x: &MPoly, y: &MPoly| {
        let num = (&m.p * &c.det).scale(&int(2)) + &a_num * &(x * v - &m.m10) + &b_num * &(y * v - &m.m01);
        Graded::new(reduced(ratfn(num.scale(&int(2)), v * &c.det), v), 1)
    };
    let vertex_values = vertices_symbolic(kind).iter().map(|(x, y)| value_at(x, y)).collect();
    let (bx, by) = match kind {
        SurfaceKind::Dp2 => (&MPoly::var(Var::Beta) + &MPoly::var(Var::Delta), &MPoly::var(Var::Gamma) + &MPoly::var(Var::Delta)),
        SurfaceKind::Dp3 => {
            let ad = &MPoly::var(Var::Alpha) + &MPoly::var(Var::Delta);
            (&ad + &MPoly::var(Var::Beta), &ad + &MPoly::var(Var::Gamma))
        }
    };
    let corner_value = value_at(&bx, &by);

    SymbolicInvariants {
        kind,
        volume: Graded::new(RatFn::poly(v.clone()), 0),
        perimeter: m.p.clone(),
        s0: Graded::new(ratfn(m.p.scale(&four), v.clone()), 1),
        f1: Graded::new(ratfn(c.f1.clone(), v.clone()), 0),
        f2: Graded::new(ratfn(c.f2.clone(), v.clone()), 0),
        var_x: Graded::new(over_v(&c.an, rat(1, 4)), -2),
        var_y: Graded::new(over_v(&c.bn, rat(1, 4)), -2),
        cov_xy: Graded::new(over_v(&c.cn, rat(1, 4)), -2),
        a: Graded::new(reduced(ratfn(a_num.scale(&four), c.det.clone()), v), 2),
        b: Graded::new(reduced(ratfn(b_num.scale(&four), c.det.clone()), v), 2),
        cal_b,
        vertex_values,
        corner_value,
    }
}

/// Symbolic invariants of `kind`, derived from the polygon on first use.
pub fn invariant_set_symbolic(kind: SurfaceKind) -> &'static SymbolicInvariants {
    static DP2: OnceLock<SymbolicInvariants> = OnceLock::new();
    static DP3: OnceLock<SymbolicInvariants> = OnceLock::new();
    match kind {
        SurfaceKind::Dp2 => DP2.get_or_init(|| derive_symbolic(kind)),
        SurfaceKind::Dp3 => DP3.get_or_init(|| derive_symbolic(kind)),
    }
}

pub fn cal_b_symbolic(kind: SurfaceKind) -> &'static RatFn {
    &invariant_set_symbolic(kind).cal_b
}

impl SymbolicInvariants {
    /// Named entry, for derivation output and fixture comparison.
    pub fn get(&self, name: &str) -> Option<PiRatFn> {
        Some(match name {
            "V" => self.volume.clone(),
            "s0" => self.s0.clone(),
            "F1" => self.f1.clone(),
            "F2" => self.f2.clone(),
            "A" => self.var_x.clone(),
            "B" => self.var_y.clone(),
            "C" => self.cov_xy.clone(),
            "a" => self.a.clone(),
            "b" => self.b.clone(),
            "calB" => Graded::new(self.cal_b.clone(), 0),
            "smin" => self.corner_value.clone(),
            _ => return None,
        })
    }

    pub const NAMES: [&'static str; 11] = ["V", "s0", "F1", "F2", "A", "B", "C", "a", "b", "calB", "smin"];

    /// Restriction to the standard normalization δ = 1 (and α = 0 on dp2).
    pub fn at_unit_delta(f: &PiRatFn) -> PiRatFn {
        let g = f.coeff().specialize(Var::Delta, &Rat::one()).expect("δ = 1 keeps denominators nonzero");
        Graded::new(g, f.pi_power())
    }
}
