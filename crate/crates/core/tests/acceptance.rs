//! Acceptance criteria AC1–AC8. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_kahler::certify::{
    b_bound_certificate, b_bound_witnesses, cal_b_parts_unit_delta, scalar_positivity_certificate, vertex_degrees,
    Certificate, WitnessForm,
};
use toric_kahler::cohomology::{
    cal_t, class_from_params, cremona_params, degeneration_path, enumerate_negative_classes, eta, pullback,
    t_sublevel_test, CohClass,
};
use toric_kahler::exact::{int, rat, MPoly, PolyRecord, Rat, Var};
use toric_kahler::invariants::{cal_b_symbolic, extremal_potential, functional, invariant_set, scalar_bounds};
use toric_kahler::optimize::{minimize_cal_a_dp2, y_level};
use toric_kahler::polytope::{build_polygon, BuildOptions, KahlerParams, SurfaceKind};
use toric_kahler::regression::{compare, embedded, fixture_regression, mandatory};

use common::{r, z};

const SEED: u64 = 0x5eed_2024;
/// Bracket width for the minimization criterion.
const MIN_TOLERANCE: (i64, i64) = (1, 100_000_000);

const BUDGET_AC1: Duration = Duration::from_secs(30);
const BUDGET_AC2: Duration = Duration::from_secs(60);
const BUDGET_AC3: Duration = Duration::from_secs(10);
const BUDGET_AC4: Duration = Duration::from_secs(1);
const BUDGET_AC5: Duration = Duration::from_secs(120);
const BUDGET_AC6: Duration = Duration::from_secs(60);
const BUDGET_AC7: Duration = Duration::from_secs(60);
const BUDGET_AC8: Duration = Duration::from_secs(30);

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dp2(b: Rat, g: Rat, d: Rat) -> KahlerParams {
    KahlerParams::dp2(b, g, d)
}

fn oracle_vertices(p: &KahlerParams) -> Vec<common::Pt> {
    common::polygon(&p.alpha, &p.beta, &p.gamma, &p.delta)
}

fn ac1() -> Check {
    let rows = fixture_regression(None).map_err(e2s)?;
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        for name in mandatory(kind) {
            let row = rows
                .iter()
                .find(|r| r.kind == kind && r.name == *name)
                .ok_or(format!("{kind}/{name} not compared"))?;
            ensure(row.pass, format!("{kind}/{name}: {}", row.detail))?;
        }
    }
    ensure(rows.iter().all(|r| r.pass), "a non-mandatory fixture differs")?;
    // a single perturbed coefficient must be caught
    let mut bad = embedded(SurfaceKind::Dp2, "a").map_err(e2s)?;
    let n: i64 = bad.num.terms[0].num.parse().map_err(e2s)?;
    bad.num.terms[0].num = (n + 1).to_string();
    ensure(!compare(SurfaceKind::Dp2, &bad).map_err(e2s)?.pass, "perturbed fixture passed")?;
    Ok(format!("{} fixtures equal under cross-multiplication (dp2 a included)", rows.len()))
}

fn ac2() -> Check {
    let mut notes = Vec::new();
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        let cert = b_bound_certificate(kind);
        ensure(cert.verified, cert.summary())?;
        ensure(cert.reverify().map_err(e2s)?, "stored parts do not reverify")?;
        if kind == SurfaceKind::Dp3 {
            ensure(
                cert.side_conditions.iter().any(|s| s.name == "delta_squared_divides_numerator" && s.holds),
                "δ² ∤ numerator",
            )?;
        }
        let (n, d) = cal_b_parts_unit_delta(kind);
        // mutation 1: a residual coefficient flipped
        let mut tampered = cert.clone();
        let t = &mut tampered.claims[0].residual.terms[0];
        t.num = format!("-{}", t.num);
        ensure(!tampered.reverify().map_err(e2s)?, "tampered residual accepted")?;
        // mutation 2: forged witness (β² passed off as a sextic bump)
        let mut forged = cert.clone();
        forged.claims[0].witness_forms[0].form = PolyRecord::from_poly(&MPoly::var(Var::Beta).pow(2), 0);
        ensure(!forged.reverify().map_err(e2s)?, "forged witness accepted")?;
        // mutation 3: 𝓑 < 1/8 is false (𝓑(c₁) = 56/409 on dp2), so D − 8N has no certificate
        let false_claim = &d - &n.scale(&int(8));
        let mutant = Certificate::dominance("mutant", &false_claim, b_bound_witnesses(kind), vec![]);
        ensure(!mutant.verified, "D − 8N certified")?;
        notes.push(format!("{} ok", cert.statement));
    }
    // mutation 4: a numerator with a δ¹ term fails the divisibility side condition
    let num = cal_b_symbolic(SurfaceKind::Dp3).num().clone();
    let mutant = num + MPoly::var(Var::Delta) * MPoly::var(Var::Alpha);
    ensure(mutant.min_degree_in(Var::Delta) < 2, "δ-divisibility check blind to δ¹ terms")?;
    // the comparison forms are exactly 4·v²(1 − v² + v⁴)
    let w: Vec<WitnessForm> = b_bound_witnesses(SurfaceKind::Dp3);
    ensure(w.len() == 3 && w.iter().all(|f| f.is_whitelisted() && f.multiplier().ok() == Some(int(4))), "comparison forms")?;
    Ok(format!("{}; 4 mutations rejected", notes.join(", ")))
}

fn ac3() -> Check {
    let c1 = dp2(z(1), z(1), z(1));
    let fv = functional(SurfaceKind::Dp2, &c1).map_err(e2s)?;
    let expect_b = r(1736, 12679);
    let expect_a = r(90489, 12679);
    ensure(fv.cal_b == expect_b, format!("calB(c1) = {}", fv.cal_b))?;
    ensure(fv.cal_a == expect_a, format!("calA(c1) = {}", fv.cal_a))?;
    ensure(fv.cal_a < r(29, 4), "calA(c1) >= 29/4")?;
    // printed formula substituted at β = γ = 1
    let printed = embedded(SurfaceKind::Dp2, "calB").map_err(e2s)?.to_ratfn().map_err(e2s)?;
    let at = printed.coeff().eval(&[z(0), z(1), z(1), z(1)]).map_err(e2s)?;
    ensure(at == expect_b, format!("printed calB(c1) = {at}"))?;
    // independent polygon integration
    let v = oracle_vertices(&c1);
    ensure(common::cal_b(&v) == expect_b, "oracle calB(c1)")?;
    ensure(common::cal_t(&v) + common::cal_b(&v) == expect_a, "oracle calA(c1)")?;
    Ok(format!("calB(c1) = 1736/12679 = {expect_b}, calA(c1) = 90489/12679 = {expect_a} < 29/4"))
}

fn coeff_tuples(list: &[CohClass]) -> Vec<Vec<Rat>> {
    list.iter()
        .map(|c| {
            let (n, a) = c.coefficients();
            std::iter::once(n).chain(a).collect()
        })
        .collect()
}

fn ac4() -> Check {
    // E_i is (0; …, 1, …) and L − E_i − E_j is (1; …, −1, …, −1, …) in coefficient form
    let mut dp3 = coeff_tuples(&enumerate_negative_classes(SurfaceKind::Dp3, 1).map_err(e2s)?);
    let mut expected3: Vec<Vec<Rat>> = [
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, -1, -1, 0],
        [1, -1, 0, -1],
        [1, 0, -1, -1],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| z(x)).collect())
    .collect();
    dp3.sort();
    expected3.sort();
    ensure(dp3 == expected3, format!("dp3 k=1 gives {dp3:?}"))?;

    let mut dp2 = coeff_tuples(&enumerate_negative_classes(SurfaceKind::Dp2, 1).map_err(e2s)?);
    let mut expected2: Vec<Vec<Rat>> =
        [[0, 1, 0], [0, 0, 1], [1, -1, -1]].iter().map(|row| row.iter().map(|&x| z(x)).collect()).collect();
    dp2.sort();
    expected2.sort();
    ensure(dp2 == expected2, format!("dp2 k=1 gives {dp2:?}"))?;

    // brute force over a box: A² = −2 and c₁·A = 0 force |a_i| ≤ 2, n small
    let mut brute = Vec::new();
    for n in -10i64..=10 {
        for a1 in -10i64..=10 {
            for a2 in -10i64..=10 {
                let sq = n * n - a1 * a1 - a2 * a2;
                let c1 = 3 * n + a1 + a2;
                if sq == -2 && c1 == 0 {
                    brute.push(vec![z(n), z(a1), z(a2)]);
                }
            }
        }
    }
    let mut k2 = coeff_tuples(&enumerate_negative_classes(SurfaceKind::Dp2, 2).map_err(e2s)?);
    k2.sort();
    brute.sort();
    ensure(k2 == brute, format!("dp2 k=2 gives {k2:?}, brute force {brute:?}"))?;
    ensure(k2 == vec![vec![z(0), z(-1), z(1)], vec![z(0), z(1), z(-1)]], "dp2 k=2 is not ±(E1 − E2)")?;
    Ok("dp3 k=1: 6 classes, dp2 k=1: 3 classes, dp2 k=2: ±(E1−E2)".into())
}

fn ac5() -> Check {
    let tol = rat(MIN_TOLERANCE.0, MIN_TOLERANCE.1);
    let m = minimize_cal_a_dp2(&tol).map_err(e2s)?;
    ensure(m.certified_below.as_ref() == Some(&y_level()), "no certified bound")?;
    ensure(m.cal_a_star < y_level(), "calA* >= 29/4")?;
    ensure(m.inside_y, "witness not inside Y")?;
    ensure((-m.eta_square.clone()) < r(7, 29), format!("|η²| = {} not < 7/29", -m.eta_square.clone()))?;
    ensure(m.symmetric, "𝓐 not symmetric in β, γ")?;
    ensure(m.partials_change_sign, "partials do not change sign")?;
    ensure(m.grid_clear && m.grid_min >= m.cal_a_star, "grid point below calA*")?;
    ensure(&m.bracket.1 - &m.bracket.0 <= tol, "bracket too wide")?;
    ensure(m.cal_a_star <= r(90489, 12679), "calA* above calA(c1)")?;
    ensure(m.cal_a_star >= m.cal_t_star && m.cal_b_star < r(1, 4), "calA* < calT* or calB* >= 1/4")?;
    // oracle re-evaluation at the witness
    let v = oracle_vertices(&m.params_star);
    ensure(common::cal_t(&v) + common::cal_b(&v) == m.cal_a_star, "oracle disagrees at witness")?;
    Ok(format!(
        "β = γ ≈ {:.10}, calA* ≈ {:.10} < 29/4, {} grid points, none smaller",
        toric_kahler::exact::to_f64(&m.params_star.beta),
        toric_kahler::exact::to_f64(&m.cal_a_star),
        m.grid_points
    ))
}

fn ac6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        for _ in 0..100 {
            let p = KahlerParams::random(kind, &mut rng);
            let at = || format!("{kind} at {p}");
            let poly = build_polygon(kind, &p, BuildOptions::default()).map_err(e2s)?;
            let class = class_from_params(kind, &p);
            ensure(poly.lattice_perimeter() == class.c1_degree(), format!("perimeter ≠ c1·Ω, {}", at()))?;
            ensure(common::lattice_perimeter(&oracle_vertices(&p)) == class.c1_degree(), format!("oracle perimeter, {}", at()))?;

            let set = invariant_set(kind, &p).map_err(e2s)?;
            let b = set.cal_b();
            let l2 = extremal_potential(kind, &p).map_err(e2s)?.l2_deviation(&poly);
            ensure((l2.is_zero() || l2.pi_power() == 2) && *l2.coeff() == &b * int(32), format!("32π²𝓑 ≠ ∫(s−s0)², {}", at()))?;
            ensure(common::cal_b(&oracle_vertices(&p)) == b, format!("oracle calB, {}", at()))?;

            let c = common::positive(&mut rng);
            let q = p.scaled(&c);
            let fq = functional(kind, &q).map_err(e2s)?;
            let fp = functional(kind, &p).map_err(e2s)?;
            ensure(fq.cal_b == fp.cal_b && fq.cal_t == fp.cal_t, format!("not scale invariant, {}", at()))?;
            let (lo, hi) = scalar_bounds(kind, &p).map_err(e2s)?;
            let (lo_q, hi_q) = scalar_bounds(kind, &q).map_err(e2s)?;
            ensure(
                lo_q.coeff() * &c == *lo.coeff() && hi_q.coeff() * &c == *hi.coeff(),
                format!("s-bounds not of degree −1, {}", at()),
            )?;

            match kind {
                SurfaceKind::Dp2 => {
                    let on_dp3 = cal_b_symbolic(SurfaceKind::Dp3).eval(&p.point()).map_err(e2s)?;
                    ensure(on_dp3 == b, format!("dp3 formula at α = 0 ≠ dp2, {}", at()))?;
                }
                SurfaceKind::Dp3 => {
                    let q = cremona_params(&p);
                    let fq = functional(kind, &q).map_err(e2s)?;
                    ensure(fq.cal_b == fp.cal_b && fq.cal_t == fp.cal_t, format!("Cremona changes 𝓣/𝓑, {}", at()))?;
                }
            }
        }
    }
    let dp3 = cal_b_symbolic(SurfaceKind::Dp3).specialize(Var::Alpha, &Rat::zero()).map_err(e2s)?;
    ensure(dp3 == *cal_b_symbolic(SurfaceKind::Dp2), "symbolic dp3 calB at α = 0 ≠ dp2")?;
    Ok("100 points per surface: perimeter, L² identity, scaling, α = 0 restriction, Cremona".into())
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        for i in 0..1000 {
            let p = KahlerParams::random(kind, &mut rng);
            let poly = build_polygon(kind, &p, BuildOptions::default()).map_err(e2s)?;
            let values = extremal_potential(kind, &p).map_err(e2s)?.vertex_values(&poly);
            ensure(values.iter().all(|v| v.pi_power() == 1 && v.coeff().is_positive()), format!("s ≤ 0 at a vertex, {kind} at {p}"))?;
            if i % 10 == 0 {
                let mut ours: Vec<Rat> = values.iter().map(|v| v.coeff().clone()).collect();
                let mut oracle = common::vertex_scalar(&oracle_vertices(&p));
                ours.sort();
                oracle.sort();
                ensure(ours == oracle, format!("vertex values differ from oracle, {kind} at {p}"))?;
            }
        }
        let cert = scalar_positivity_certificate(kind);
        ensure(cert.verified, cert.summary())?;
        let degrees = vertex_degrees(kind);
        ensure(degrees.iter().all(|&d| d == (9, 10)), format!("{kind} vertex degrees {degrees:?}"))?;
    }
    let row = compare(SurfaceKind::Dp2, &embedded(SurfaceKind::Dp2, "smin").map_err(e2s)?).map_err(e2s)?;
    ensure(row.pass, format!("dp2 s-bound fixture: {}", row.detail))?;
    Ok("1000 points per surface positive; pos2/pos3 verified; degrees (9, 10); dp2 bound fixture equal".into())
}

fn ac8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let omega = CohClass::c1(2);
    let t_end = cal_t(&pullback(&omega).map_err(e2s)?).map_err(e2s)?;
    let mut ts = vec![Rat::zero(), Rat::one()];
    while ts.len() < 100 {
        let d = rng.gen_range(1..=1000);
        ts.push(r(rng.gen_range(0..=d), d));
    }
    for t in &ts {
        let x = degeneration_path(&omega, t).map_err(e2s)?;
        // e₁ = X·E₁ is the area of E₁
        ensure(x.e[0] == Rat::one() - t, format!("E1-area at t = {t} is {}", x.e[0]))?;
        ensure(cal_t(&x).map_err(e2s)? <= t_end, format!("𝓣 above endpoint at t = {t}"))?;
    }
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..200 {
        let p = dp2(common::rand_rat(&mut rng, 0, 4, 20), common::rand_rat(&mut rng, 0, 4, 20), z(1));
        if !p.in_cone(SurfaceKind::Dp2) {
            continue;
        }
        let t = z(7) + common::rand_rat(&mut rng, 0, 1, 50);
        if t == z(7) || t == z(8) {
            continue;
        }
        let class = class_from_params(SurfaceKind::Dp2, &p);
        let library = t_sublevel_test(&class, &t).map_err(e2s)?;
        // direct: (c₁·Ω)² ≤ t·Ω²
        let (deg, sq) = (&class.ell * z(3) - &class.e[0] - &class.e[1], class.square());
        let direct = &deg * &deg <= &t * &sq;
        // disk: −η² ≤ 7(t − 7)/t
        let disk = -eta(&class).map_err(e2s)?.square() <= z(7) * (&t - z(7)) / &t;
        ensure(library == direct && direct == disk, format!("sublevel tests disagree at {p}, t = {t}"))?;
        if direct {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    ensure(inside > 0 && outside > 0, "sample did not straddle the disk boundary")?;
    Ok(format!("100 path samples; disk test agrees ({inside} inside, {outside} outside)"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Check, Duration); 8] = [
        ("AC1", "formula regression", ac1, BUDGET_AC1),
        ("AC2", "calB < 1/4 certificates", ac2, BUDGET_AC2),
        ("AC3", "calB(c1), calA(c1) on dp2", ac3, BUDGET_AC3),
        ("AC4", "negative class enumeration", ac4, BUDGET_AC4),
        ("AC5", "minimization of calA on dp2", ac5, BUDGET_AC5),
        ("AC6", "identity suite", ac6, BUDGET_AC6),
        ("AC7", "scalar curvature positivity", ac7, BUDGET_AC7),
        ("AC8", "path and disk diagnostics", ac8, BUDGET_AC8),
    ];
    let mut failed = 0;
    for (id, name, f, budget) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; over budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!("{id} PASS {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{id} FAIL {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
