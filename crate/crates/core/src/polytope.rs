//! Delzant moment polygons of the toric two- and three-point blow-ups and
//! their exact area and lattice-boundary moments.
//!
//! Polygons live in scaled coordinates `(x̃, ỹ) = 2π·(x, y)`, where every
//! vertex is linear in (α, β, γ, δ). The hexagon is cut out by
//!
//! ```text
//! x̃ ≥ 0,  ỹ ≥ 0,  x̃ + ỹ ≥ α,
//! x̃ ≤ α + β + δ,  ỹ ≤ α + γ + δ,  x̃ + ỹ ≤ α + β + γ + δ
//! ```
//!
//! and the pentagon is the same region with α = 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, MPoly, Rat, Var};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// ℂP² blown up at two points; pentagon.
    Dp2,
    /// ℂP² blown up at three points; hexagon.
    Dp3,
}

impl SurfaceKind {
    pub fn blowups(self) -> usize {
        match self {
            SurfaceKind::Dp2 => 2,
            SurfaceKind::Dp3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Dp2 => "dp2",
            SurfaceKind::Dp3 => "dp3",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dp2" => Ok(SurfaceKind::Dp2),
            "dp3" => Ok(SurfaceKind::Dp3),
            other => Err(Error::Parse(format!("unknown surface `{other}` (expected dp2|dp3)"))),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Edge-parameters of a Kähler class: symplectic areas of the exceptional
/// curves. α is identically zero on the two-point blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KahlerParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub delta: Rat,
}

impl KahlerParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Self {
        KahlerParams { alpha, beta, gamma, delta }
    }

    pub fn dp2(beta: Rat, gamma: Rat, delta: Rat) -> Self {
        Self::new(Rat::zero(), beta, gamma, delta)
    }

    pub fn from_point(p: &[Rat; 4]) -> Self {
        Self::new(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone())
    }

    pub fn point(&self) -> [Rat; 4] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone(), self.delta.clone()]
    }

    pub fn get(&self, v: Var) -> &Rat {
        match v {
            Var::Alpha => &self.alpha,
            Var::Beta => &self.beta,
            Var::Gamma => &self.gamma,
            Var::Delta => &self.delta,
        }
    }

    pub fn set(&mut self, v: Var, value: Rat) {
        match v {
            Var::Alpha => self.alpha = value,
            Var::Beta => self.beta = value,
            Var::Gamma => self.gamma = value,
            Var::Delta => self.delta = value,
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self::new(&self.alpha * c, &self.beta * c, &self.gamma * c, &self.delta * c)
    }

    /// Curve areas in polygon edge order (see [`edge_lengths_symbolic`]).
    pub fn curve_areas(&self, kind: SurfaceKind) -> Vec<Rat> {
        let p = self.point();
        edge_lengths_symbolic(kind).iter().map(|l| l.eval(&p)).collect()
    }

    pub fn check_kind(&self, kind: SurfaceKind) -> Result<()> {
        if kind == SurfaceKind::Dp2 && !self.alpha.is_zero() {
            return Err(Error::OutOfRange { name: "alpha (must be 0 on dp2)", value: self.alpha.clone() });
        }
        Ok(())
    }

    /// A random point of the open cone with small-height rational entries.
    /// On dp3, δ is negative about a third of the time.
    pub fn random<R: rand::Rng + ?Sized>(kind: SurfaceKind, rng: &mut R) -> Self {
        fn pos<R: rand::Rng + ?Sized>(rng: &mut R) -> Rat {
            Rat::new(BigInt::from(rng.gen_range(1..=80)), BigInt::from(rng.gen_range(1..=16)))
        }
        match kind {
            SurfaceKind::Dp2 => {
                let (b, g, d) = (pos(rng), pos(rng), pos(rng));
                Self::dp2(b, g, d)
            }
            SurfaceKind::Dp3 => {
                let (a, b, g) = (pos(rng), pos(rng), pos(rng));
                let d = if rng.gen_ratio(1, 3) {
                    let m = a.clone().min(b.clone()).min(g.clone());
                    let k = rng.gen_range(0..31);
                    -m * Rat::new(BigInt::from(k), BigInt::from(31))
                } else {
                    pos(rng)
                };
                Self::new(a, b, g, d)
            }
        }
    }

    /// Every curve area strictly positive.
    pub fn in_cone(&self, kind: SurfaceKind) -> bool {
        self.check_kind(kind).is_ok() && self.curve_areas(kind).iter().all(Signed::is_positive)
    }
}

impl fmt::Display for KahlerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(α={}, β={}, γ={}, δ={})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

pub type Point = (Rat, Rat);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Primitive integer direction, counterclockwise.
    pub direction: (i64, i64),
    /// Primitive integer outward normal.
    pub normal: (i64, i64),
    /// Lattice length: Euclidean length over |direction|.
    pub length: Rat,
}

/// Convex lattice polygon; `edges[i]` runs from `vertices[i]` to
/// `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPolygon {
    vertices: Vec<Point>,
    edges: Vec<Edge>,
}

#[derive(Copy, Clone, Debug, Default)]
pub struct BuildOptions {
    /// Permit zero-length edges (boundary of the cone); such edges are dropped.
    pub allow_degenerate: bool,
}

fn v(var: Var) -> MPoly {
    MPoly::var(var)
}

/// Template vertices (as linear forms) and outgoing primitive directions.
fn template(kind: SurfaceKind) -> Vec<((MPoly, MPoly), (i64, i64))> {
    let (a, b, g, d) = (v(Var::Alpha), v(Var::Beta), v(Var::Gamma), v(Var::Delta));
    let z = MPoly::zero;
    match kind {
        SurfaceKind::Dp3 => vec![
            ((a.clone(), z()), (1, 0)),
            ((&a + &b + &d, z()), (0, 1)),
            ((&a + &b + &d, g.clone()), (-1, 1)),
            ((b.clone(), &a + &g + &d), (-1, 0)),
            ((z(), &a + &g + &d), (0, -1)),
            ((z(), a.clone()), (1, -1)),
        ],
        SurfaceKind::Dp2 => vec![
            ((z(), z()), (1, 0)),
            ((&b + &d, z()), (0, 1)),
            ((&b + &d, g.clone()), (-1, 1)),
            ((b.clone(), &g + &d), (-1, 0)),
            ((z(), &g + &d), (0, -1)),
        ],
    }
}

fn lattice_length<R: MomentRing>(from: &(R, R), to: &(R, R), dir: (i64, i64)) -> R {
    if dir.0 != 0 {
        to.0.sub(&from.0).mul(&R::from_rat(Rat::new(BigInt::one(), BigInt::from(dir.0))))
    } else {
        to.1.sub(&from.1).mul(&R::from_rat(Rat::new(BigInt::one(), BigInt::from(dir.1))))
    }
}

/// Edge lattice lengths as linear forms, in cyclic order starting with the
/// bottom edge: `{β+δ, γ, α+δ, β, γ+δ, α}` on dp3 and `{β+δ, γ, δ, β, γ+δ}`
/// on dp2.
pub fn edge_lengths_symbolic(kind: SurfaceKind) -> Vec<MPoly> {
    let t = template(kind);
    (0..t.len())
        .map(|i| lattice_length(&t[i].0, &t[(i + 1) % t.len()].0, t[i].1))
        .collect()
}

fn outward_normal(dir: (i64, i64)) -> (i64, i64) {
    (dir.1, -dir.0)
}

fn cross(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

fn primitive_direction(dx: &Rat, dy: &Rat) -> Result<(i64, i64)> {
    let l = dx.denom().lcm(dy.denom());
    let x = (dx * Rat::from_integer(l.clone())).to_integer();
    let y = (dy * Rat::from_integer(l)).to_integer();
    let g = x.gcd(&y);
    if g.is_zero() {
        return Err(Error::DegeneratePolygon("repeated vertex".into()));
    }
    let (x, y) = (&x / &g, &y / &g);
    match (x.to_i64(), y.to_i64()) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Unsupported("edge direction does not fit in i64".into())),
    }
}

impl MomentPolygon {
    /// Builds a polygon from counterclockwise vertices, deriving primitive
    /// edge directions and lattice lengths.
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
            let r = &vertices[(i + 2) % n];
            if !cross(p, q, r).is_positive() {
                return Err(Error::DegeneratePolygon(format!("not strictly convex at vertex {}", (i + 1) % n)));
            }
            let direction = primitive_direction(&(&q.0 - &p.0), &(&q.1 - &p.1))?;
            let length = lattice_length(p, q, direction);
            edges.push(Edge { direction, normal: outward_normal(direction), length });
        }
        Ok(MomentPolygon { vertices, edges })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Adjacent primitive directions form a ℤ²-basis at every vertex.
    pub fn is_delzant(&self) -> bool {
        let n = self.edges.len();
        (0..n).all(|i| {
            let (a, b) = (self.edges[i].direction, self.edges[(i + 1) % n].direction);
            (a.0 * b.1 - a.1 * b.0).abs() == 1
        })
    }

    pub fn lattice_perimeter(&self) -> Rat {
        self.edges.iter().map(|e| e.length.clone()).sum()
    }

    /// Tight bounding box `(x̃_max, ỹ_max)`; the lower corner is the origin
    /// for both families.
    pub fn upper_corner(&self) -> Point {
        let xmax = self.vertices.iter().map(|p| p.0.clone()).max().expect("non-empty");
        let ymax = self.vertices.iter().map(|p| p.1.clone()).max().expect("non-empty");
        (xmax, ymax)
    }
}

impl fmt::Display for MomentPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# vertices (scaled coordinates)")?;
        for (x, y) in &self.vertices {
            writeln!(f, "{x} {y}")?;
        }
        writeln!(f, "# edges: normal, lattice length")?;
        for e in &self.edges {
            writeln!(f, "({},{}) {}", e.normal.0, e.normal.1, e.length)?;
        }
        Ok(())
    }
}

/// Builds the moment polygon of `params`.
pub fn build_polygon(kind: SurfaceKind, params: &KahlerParams, opts: BuildOptions) -> Result<MomentPolygon> {
    params.check_kind(kind)?;
    let point = params.point();
    let t = template(kind);
    let n = t.len();
    let verts: Vec<Point> = t.iter().map(|((x, y), _)| (x.eval(&point), y.eval(&point))).collect();
    let mut vertices = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        let length = lattice_length(&verts[i], &verts[(i + 1) % n], t[i].1);
        if length.is_negative() || (length.is_zero() && !opts.allow_degenerate) {
            return Err(Error::ConeViolation(format!(
                "{kind} curve area {} at {params} is {length}",
                edge_lengths_symbolic(kind)[i]
            )));
        }
        if length.is_zero() {
            continue;
        }
        vertices.push(verts[i].clone());
        edges.push(Edge { direction: t[i].1, normal: outward_normal(t[i].1), length });
    }
    if vertices.len() < 3 {
        return Err(Error::DegeneratePolygon(format!("only {} edges remain at {params}", vertices.len())));
    }
    let poly = MomentPolygon { vertices, edges };
    if !area_moment(&poly, 0, 0).is_positive() {
        return Err(Error::DegeneratePolygon(format!("zero area at {params}")));
    }
    Ok(poly)
}

/// Coefficient ring for moment integrals: exact rationals (numeric) or
/// polynomials in the parameters (symbolic).
pub trait MomentRing: Clone {
    fn zero_elem() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl MomentRing for Rat {
    fn zero_elem() -> Self {
        Rat::zero()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl MomentRing for MPoly {
    fn zero_elem() -> Self {
        MPoly::zero()
    }
    fn from_rat(r: Rat) -> Self {
        MPoly::constant(r)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

fn powers<R: MomentRing>(x: &R, n: u32) -> Vec<R> {
    let mut out = vec![R::from_rat(Rat::one())];
    for k in 1..=n as usize {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}

fn compositions3(n: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..=n).flat_map(move |i| (0..=n - i).map(move |j| [i, j, n - i - j]))
}

fn frac(n: BigInt, d: BigInt) -> Rat {
    Rat::new(n, d)
}

/// ∫∫ over the triangle (a, b, c) of x̃^p ỹ^q, signed by orientation.
///
/// Pulls back to the standard simplex and integrates barycentric monomials:
/// ∫ λ₀^m₀ λ₁^m₁ λ₂^m₂ = m₀! m₁! m₂! / (m₀ + m₁ + m₂ + 2)!.
fn triangle_moment<R: MomentRing>(tri: [&(R, R); 3], p: u32, q: u32) -> R {
    let [a, b, c] = tri;
    let jac = b.0.sub(&a.0).mul(&c.1.sub(&a.1)).sub(&b.1.sub(&a.1).mul(&c.0.sub(&a.0)));
    let xp: Vec<Vec<R>> = tri.iter().map(|v| powers(&v.0, p)).collect();
    let yp: Vec<Vec<R>> = tri.iter().map(|v| powers(&v.1, q)).collect();
    let total = factorial(p + q + 2);
    let (fp, fq) = (factorial(p), factorial(q));
    let mut acc = R::zero_elem();
    for i in compositions3(p) {
        for j in compositions3(q) {
            let mut num = &fp * &fq;
            let mut den = total.clone();
            for k in 0..3 {
                num *= factorial(i[k] + j[k]);
                den *= factorial(i[k]) * factorial(j[k]);
            }
            let mut t = R::from_rat(frac(num, den));
            for k in 0..3 {
                t = t.mul(&xp[k][i[k] as usize]).mul(&yp[k][j[k] as usize]);
            }
            acc = acc.add(&t);
        }
    }
    acc.mul(&jac)
}

/// ∫ over the segment from `a` to `b` of x̃^p ỹ^q dt, t ∈ [0, 1].
fn segment_moment<R: MomentRing>(a: &(R, R), b: &(R, R), p: u32, q: u32) -> R {
    let (ax, bx) = (powers(&a.0, p), powers(&b.0, p));
    let (ay, by) = (powers(&a.1, q), powers(&b.1, q));
    let total = factorial(p + q + 1);
    let mut acc = R::zero_elem();
    for i in 0..=p {
        for j in 0..=q {
            let num = crate::exact::binomial(p, i)
                * crate::exact::binomial(q, j)
                * factorial(i + j)
                * factorial(p + q - i - j);
            let t = R::from_rat(frac(num, total.clone()))
                .mul(&ax[i as usize])
                .mul(&bx[(p - i) as usize])
                .mul(&ay[j as usize])
                .mul(&by[(q - j) as usize]);
            acc = acc.add(&t);
        }
    }
    acc
}

fn fan_area_moment<R: MomentRing>(vertices: &[(R, R)], p: u32, q: u32) -> R {
    let mut acc = R::zero_elem();
    for i in 1..vertices.len().saturating_sub(1) {
        acc = acc.add(&triangle_moment([&vertices[0], &vertices[i], &vertices[i + 1]], p, q));
    }
    acc
}

fn boundary_sum<R: MomentRing>(vertices: &[(R, R)], lengths: &[R], p: u32, q: u32) -> R {
    let n = vertices.len();
    let mut acc = R::zero_elem();
    for i in 0..n {
        let seg = segment_moment(&vertices[i], &vertices[(i + 1) % n], p, q);
        acc = acc.add(&seg.mul(&lengths[i]));
    }
    acc
}

/// Exact ∫∫_P x̃^p ỹ^q dx̃ dỹ.
pub fn area_moment(poly: &MomentPolygon, p: u32, q: u32) -> Rat {
    fan_area_moment(&poly.vertices, p, q)
}

/// Exact ∫_∂P x̃^p ỹ^q dλ with dλ the lattice length measure.
pub fn boundary_moment(poly: &MomentPolygon, p: u32, q: u32) -> Rat {
    let lengths: Vec<Rat> = poly.edges.iter().map(|e| e.length.clone()).collect();
    boundary_sum(&poly.vertices, &lengths, p, q)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MomentKind {
    Area,
    Boundary,
}

/// Moment of the family as a polynomial in (α, β, γ, δ).
pub fn polygon_symbolic(kind: SurfaceKind, p: u32, q: u32, which: MomentKind) -> Result<MPoly> {
    if p + q > 4 {
        return Err(Error::Unsupported(format!("symbolic moments need p + q <= 4, got {}", p + q)));
    }
    let t = template(kind);
    let vertices: Vec<(MPoly, MPoly)> = t.iter().map(|(vx, _)| vx.clone()).collect();
    Ok(match which {
        MomentKind::Area => fan_area_moment(&vertices, p, q),
        MomentKind::Boundary => boundary_sum(&vertices, &edge_lengths_symbolic(kind), p, q),
    })
}

/// Symbolic vertex list, in the same order as [`build_polygon`] produces on
/// the open cone.
pub fn vertices_symbolic(kind: SurfaceKind) -> Vec<(MPoly, MPoly)> {
    template(kind).into_iter().map(|(v, _)| v).collect()
}
