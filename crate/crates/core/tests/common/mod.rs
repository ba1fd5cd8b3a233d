//! Reference computations for tests, written from first principles and
//! sharing no code with the library beyond the rational type.
//!
//! Polygon integrals use the edge-midpoint rule per fan triangle, exact for
//! integrands of degree ≤ 2. The extremal potential is the affine σ with
//! ∫_P σ f dA = ∫_∂P f dλ for f ∈ {1, x, y}; then s = 4πσ and
//! 𝓑 = ½∫(σ − σ̄)² dA.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use toric_kahler::exact::Rat;

pub type Pt = (Rat, Rat);

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn z(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Vertices of the moment polygon, counterclockwise, from the curve areas.
/// dp2 is the pentagon with β, γ, δ; dp3 the hexagon with α, β, γ, δ.
pub fn polygon(alpha: &Rat, beta: &Rat, gamma: &Rat, delta: &Rat) -> Vec<Pt> {
    if alpha.is_zero() {
        let (b, g, d) = (beta, gamma, delta);
        vec![
            (z(0), z(0)),
            (b + d, z(0)),
            (b + d, g.clone()),
            (b.clone(), g + d),
            (z(0), g + d),
        ]
    } else {
        let (a, b, g, d) = (alpha, beta, gamma, delta);
        vec![
            (a.clone(), z(0)),
            (a + b + d, z(0)),
            (a + b + d, g.clone()),
            (b.clone(), a + g + d),
            (z(0), a + g + d),
            (z(0), a.clone()),
        ]
    }
}

fn cross(o: &Pt, p: &Pt, q: &Pt) -> Rat {
    (&p.0 - &o.0) * (&q.1 - &o.1) - (&p.1 - &o.1) * (&q.0 - &o.0)
}

fn mid(p: &Pt, q: &Pt) -> Pt {
    ((&p.0 + &q.0) / z(2), (&p.1 + &q.1) / z(2))
}

/// ∫_P f dA for f of degree ≤ 2.
pub fn area_integral(v: &[Pt], f: impl Fn(&Pt) -> Rat) -> Rat {
    let mut total = Rat::zero();
    for i in 1..v.len() - 1 {
        let (a, b, c) = (&v[0], &v[i], &v[i + 1]);
        let area = cross(a, b, c) / z(2);
        let s = f(&mid(a, b)) + f(&mid(b, c)) + f(&mid(c, a));
        total += area * s / z(3);
    }
    total
}

fn lattice_length(p: &Pt, q: &Pt) -> Rat {
    let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
    // the primitive direction of an edge with rational endpoints: divide by
    // the gcd of the numerators over a common denominator
    let den = dx.denom().lcm(dy.denom());
    let nx = (&dx * Rat::from_integer(den.clone())).to_integer();
    let ny = (&dy * Rat::from_integer(den.clone())).to_integer();
    let g = nx.gcd(&ny);
    Rat::new(g, den)
}

/// ∫_∂P f dλ for f of degree ≤ 2 (Simpson per edge).
pub fn boundary_integral(v: &[Pt], f: impl Fn(&Pt) -> Rat) -> Rat {
    let mut total = Rat::zero();
    for i in 0..v.len() {
        let (p, q) = (&v[i], &v[(i + 1) % v.len()]);
        let len = lattice_length(p, q);
        total += len * (f(p) + z(4) * f(&mid(p, q)) + f(q)) / z(6);
    }
    total
}

pub fn lattice_perimeter(v: &[Pt]) -> Rat {
    boundary_integral(v, |_| Rat::one())
}

pub fn area(v: &[Pt]) -> Rat {
    area_integral(v, |_| Rat::one())
}

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Coefficients (c, a, b) of σ = c + a·x + b·y, by Cramer's rule.
pub fn potential(v: &[Pt]) -> [Rat; 3] {
    let basis: [fn(&Pt) -> Rat; 3] = [|_| Rat::one(), |p| p.0.clone(), |p| p.1.clone()];
    let mut m: [[Rat; 3]; 3] = Default::default();
    let mut rhs: [Rat; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = area_integral(v, |p| basis[i](p) * basis[j](p));
        }
        rhs[i] = boundary_integral(v, basis[i]);
    }
    let d = det3(&m);
    let mut out: [Rat; 3] = Default::default();
    for (k, slot) in out.iter_mut().enumerate() {
        let mut mk = m.clone();
        for i in 0..3 {
            mk[i][k] = rhs[i].clone();
        }
        *slot = det3(&mk) / &d;
    }
    out
}

pub fn sigma_at(c: &[Rat; 3], p: &Pt) -> Rat {
    &c[0] + &c[1] * &p.0 + &c[2] * &p.1
}

/// 𝓑 = ½∫(σ − σ̄)² dA.
pub fn cal_b(v: &[Pt]) -> Rat {
    let c = potential(v);
    let mean = area_integral(v, |p| sigma_at(&c, p)) / area(v);
    area_integral(v, |p| {
        let d = sigma_at(&c, p) - &mean;
        &d * &d
    }) / z(2)
}

/// 𝓣 = P²/(2V) with P the lattice perimeter and V the area.
pub fn cal_t(v: &[Pt]) -> Rat {
    let p = lattice_perimeter(v);
    &p * &p / (z(2) * area(v))
}

/// Coefficients of π in s = 4πσ at the vertices.
pub fn vertex_scalar(v: &[Pt]) -> Vec<Rat> {
    let c = potential(v);
    v.iter().map(|p| z(4) * sigma_at(&c, p)).collect()
}

/// A random rational in [lo, hi] with denominator at most `den`.
pub fn rand_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rat {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(lo * d..=hi * d);
    r(n, d)
}

pub fn positive<R: Rng>(rng: &mut R) -> Rat {
    let d = rng.gen_range(1..=12);
    r(rng.gen_range(1..=60), d)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_pos(x: &Rat) -> bool {
    x.is_positive()
}
