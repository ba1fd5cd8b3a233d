mod common;

use num_traits::{One, Zero};
use toric_kahler::certify::{b_bound_certificate, Certificate};
use toric_kahler::cohomology::{
    cal_t, class_from_params, cremona_normalize, degeneration_path, disk_radius, enumerate_negative_classes,
    minus_one_classes, CohClass,
};
use toric_kahler::exact::{rat, PiScalar, Rat, Var};
use toric_kahler::invariants::{corner_bound, functional, invariant_set, invariant_set_symbolic, scalar_bounds};
use toric_kahler::optimize::{cal_a_dp2, default_base, grid_sweep, minimize_cal_a_dp2, Quantity, SweepAxis};
use toric_kahler::polytope::{build_polygon, BuildOptions, KahlerParams, SurfaceKind};
use toric_kahler::regression::{compare, embedded, fixture_regression};
use toric_kahler::Error;

use common::{r, z};

fn c1_dp2() -> KahlerParams {
    KahlerParams::dp2(z(1), z(1), z(1))
}

#[test]
fn first_chern_class_of_dp2() {
    let p = c1_dp2();
    let set = invariant_set(SurfaceKind::Dp2, &p).unwrap();
    let v = common::polygon(&p.alpha, &p.beta, &p.gamma, &p.delta);
    assert_eq!(set.volume, common::area(&v));
    assert_eq!(set.volume, r(7, 2));
    assert_eq!(set.s0, PiScalar::new(z(8), 1));
    let (lo, hi) = scalar_bounds(SurfaceKind::Dp2, &p).unwrap();
    let mut oracle = common::vertex_scalar(&v);
    oracle.sort();
    assert_eq!(lo.coeff(), &oracle[0]);
    assert_eq!(hi.coeff(), oracle.last().unwrap());
    assert_eq!(hi, PiScalar::new(r(4488, 409), 1));
    // the bounding-box corner bound is weaker than the vertex minimum
    let corner = corner_bound(SurfaceKind::Dp2, &p).unwrap();
    assert_eq!(corner, PiScalar::new(r(1800, 409), 1));
    assert!(corner.coeff() < lo.coeff() && *corner.coeff() > Rat::zero());
}

#[test]
fn first_chern_class_of_dp3_is_critical() {
    // c₁ = (3; 1, 1, 1) is α = β = γ = 1, δ = 0: the regular hexagon
    let p = KahlerParams::new(z(1), z(1), z(1), z(0));
    let f = functional(SurfaceKind::Dp3, &p).unwrap();
    assert_eq!(f.cal_b, z(0));
    assert_eq!(f.cal_t, z(6));
    let v = common::polygon(&p.alpha, &p.beta, &p.gamma, &p.delta);
    let s0 = z(4) * common::lattice_perimeter(&v) / common::area(&v);
    assert_eq!(invariant_set(SurfaceKind::Dp3, &p).unwrap().s0, PiScalar::new(s0, 1));
}

#[test]
fn degenerate_and_invalid_classes() {
    let bad = KahlerParams::dp2(z(-1), z(1), z(1));
    assert!(matches!(build_polygon(SurfaceKind::Dp2, &bad, BuildOptions::default()), Err(Error::ConeViolation(_))));
    let edge = KahlerParams::dp2(z(0), z(1), z(1));
    assert!(build_polygon(SurfaceKind::Dp2, &edge, BuildOptions::default()).is_err());
    let kept = build_polygon(SurfaceKind::Dp2, &edge, BuildOptions { allow_degenerate: true }).unwrap();
    assert_eq!(kept.vertices().len(), 4);
    assert!(functional(SurfaceKind::Dp2, &KahlerParams::new(z(1), z(1), z(1), z(1))).is_err());
}

#[test]
fn symmetric_hexagons_have_no_futaki_invariant() {
    let axes = [SweepAxis::parse("alpha=beta=gamma=1/2:3:1/2").unwrap()];
    let rows = grid_sweep(SurfaceKind::Dp3, &default_base(SurfaceKind::Dp3), &axes, &[Quantity::CalB, Quantity::F1]).unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row.values[0].exact, "0");
        assert_eq!(row.values[1].exact, "0");
    }
}

#[test]
fn diagonal_sweep() {
    let axes = [SweepAxis::parse("beta=gamma=0.2:3:0.2").unwrap()];
    let q = [Quantity::CalB, Quantity::CalA];
    let rows = grid_sweep(SurfaceKind::Dp2, &default_base(SurfaceKind::Dp2), &axes, &q).unwrap();
    assert_eq!(rows.len(), 15);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.params.beta, r(i as i64 + 1, 5));
        let b = functional(SurfaceKind::Dp2, &row.params).unwrap().cal_b;
        assert!(b < r(1, 4));
        assert_eq!(row.values[0].exact, b.to_string());
    }
    // rows come back in the same order on every run
    assert_eq!(grid_sweep(SurfaceKind::Dp2, &default_base(SurfaceKind::Dp2), &axes, &q).unwrap(), rows);
    let empty = [SweepAxis::parse("beta=2:1:1").unwrap()];
    assert!(grid_sweep(SurfaceKind::Dp2, &default_base(SurfaceKind::Dp2), &empty, &q).unwrap().is_empty());
}

#[test]
fn functional_is_symmetric_on_dp2() {
    let a = cal_a_dp2();
    assert!(a.swap(Var::Beta, Var::Gamma) == a);
    let x = [z(0), r(3, 2), r(2, 5), z(1)];
    let y = [z(0), r(2, 5), r(3, 2), z(1)];
    assert_eq!(a.eval(&x).unwrap(), a.eval(&y).unwrap());
}

#[test]
fn minimizer_refines_monotonically() {
    let coarse = minimize_cal_a_dp2(&r(1, 1_000_000)).unwrap();
    let fine = minimize_cal_a_dp2(&r(1, 10_000_000)).unwrap();
    assert!(coarse.bracket.0 <= fine.bracket.0 && fine.bracket.1 <= coarse.bracket.1);
    let a = cal_a_dp2();
    let at = |u: &Rat| a.eval(&[z(0), u.clone(), u.clone(), z(1)]).unwrap();
    let samples = [at(&coarse.bracket.0), at(&coarse.bracket.1), coarse.cal_a_star.clone()];
    let oscillation = samples.iter().max().unwrap() - samples.iter().min().unwrap();
    let change = &fine.cal_a_star - &coarse.cal_a_star;
    assert!(change.clone() * change.clone() <= oscillation.clone() * oscillation, "refinement moved 𝓐 too far");
    assert!(fine.cal_a_star <= r(90489, 12679));
    assert_eq!(fine.local_minima.len(), 1);
    assert!(fine.gradient_norm < 1e-6);
}

#[test]
fn enumeration_and_cone_generators() {
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        let listed = enumerate_negative_classes(kind, 1).unwrap();
        let mut generators = minus_one_classes(kind.blowups());
        generators.sort_by_key(|c| c.to_string());
        let mut sorted = listed.clone();
        sorted.sort_by_key(|c| c.to_string());
        assert_eq!(sorted, generators);
    }
    assert!(matches!(enumerate_negative_classes(SurfaceKind::Dp2, 0), Err(Error::OutOfRange { .. })));
}

#[test]
fn disk_and_path() {
    assert_eq!(disk_radius(&r(29, 4)).unwrap(), r(7, 29));
    assert!(disk_radius(&z(8)).is_err() && disk_radius(&z(7)).is_err());
    let omega = CohClass::c1(2);
    let mid = degeneration_path(&omega, &r(1, 2)).unwrap();
    assert_eq!(mid.e[0], r(1, 2));
    assert_eq!(cal_t(&mid).unwrap(), r(169, 27));
    assert!(degeneration_path(&omega, &r(3, 2)).is_err());
    let not_kahler = CohClass::new(z(1), vec![z(1), z(1)]);
    assert!(matches!(degeneration_path(&not_kahler, &r(1, 2)), Err(Error::ConeViolation(_))));
}

#[test]
fn cremona_normalization() {
    let p = KahlerParams::new(z(2), z(3), z(4), z(-1));
    let q = cremona_normalize(&p);
    assert_eq!(q, KahlerParams::new(z(1), z(2), z(3), z(1)));
    assert_eq!(functional(SurfaceKind::Dp3, &p).unwrap(), functional(SurfaceKind::Dp3, &q).unwrap());
    assert_eq!(cal_t(&class_from_params(SurfaceKind::Dp3, &p)).unwrap(), cal_t(&class_from_params(SurfaceKind::Dp3, &q)).unwrap());
}

#[test]
fn fixture_directory_regression() {
    let dir = tempfile::tempdir().unwrap();
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        let sub = dir.path().join(kind.name());
        std::fs::create_dir_all(&sub).unwrap();
        for name in toric_kahler::regression::known(kind) {
            std::fs::write(sub.join(format!("{name}.json")), embedded(kind, name).unwrap().to_json()).unwrap();
        }
    }
    assert!(fixture_regression(Some(dir.path())).unwrap().iter().all(|r| r.pass));

    // one perturbed coefficient is reported with the differing monomial
    let mut v = embedded(SurfaceKind::Dp2, "V").unwrap();
    v.num.terms[0].num = "7".into();
    let row = compare(SurfaceKind::Dp2, &v).unwrap();
    assert!(!row.pass);
    assert!(row.detail.contains("leading"), "{}", row.detail);

    std::fs::remove_file(dir.path().join("dp3/A.json")).unwrap();
    assert!(matches!(fixture_regression(Some(dir.path())), Err(Error::Fixture(_))));
}

#[test]
fn certificate_json_round_trip() {
    let cert = b_bound_certificate(SurfaceKind::Dp3);
    let json = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&json).unwrap();
    assert!(back.reverify().unwrap());
    let mut bad = back;
    bad.side_conditions[1].holds = false;
    assert!(!bad.reverify().unwrap());
    assert!(matches!(bad.require(), Err(Error::NotVerified { .. })));
}

#[test]
fn symbolic_volume_at_unit_delta() {
    // V = βγ + β + γ + 1/2 on the pentagon
    let v = invariant_set_symbolic(SurfaceKind::Dp2).volume.coeff().clone();
    let at = |b: i64, g: i64| v.eval(&[z(0), z(b), z(g), Rat::one()]).unwrap();
    assert_eq!(at(1, 1), r(7, 2));
    assert_eq!(at(2, 3), z(6 + 2 + 3) + rat(1, 2));
}
