//! Comparison of derived symbolic invariants against stored formula fixtures.
//!
//! Fixtures hold closed forms at δ = 1 in the JSON format of
//! [`crate::exact::fixture`]. A copy is compiled into the library; a directory
//! laid out as `<dir>/{dp2,dp3}/<name>.json` can be supplied instead.

use std::path::Path;

use crate::certify::b_bound_difference;
use crate::error::{Error, Result};
use crate::exact::{Graded, PiRatFn, RatFn, RatFnFixture};
use crate::invariants::{invariant_set_symbolic, SymbolicInvariants};
use crate::polytope::SurfaceKind;

const EMBEDDED: &[(SurfaceKind, &str, &str)] = &[
    (SurfaceKind::Dp2, "V", include_str!("../fixtures/dp2/V.json")),
    (SurfaceKind::Dp2, "F1", include_str!("../fixtures/dp2/F1.json")),
    (SurfaceKind::Dp2, "F2", include_str!("../fixtures/dp2/F2.json")),
    (SurfaceKind::Dp2, "A", include_str!("../fixtures/dp2/A.json")),
    (SurfaceKind::Dp2, "B", include_str!("../fixtures/dp2/B.json")),
    (SurfaceKind::Dp2, "C", include_str!("../fixtures/dp2/C.json")),
    (SurfaceKind::Dp2, "calB", include_str!("../fixtures/dp2/calB.json")),
    (SurfaceKind::Dp2, "a", include_str!("../fixtures/dp2/a.json")),
    (SurfaceKind::Dp2, "smin", include_str!("../fixtures/dp2/smin.json")),
    (SurfaceKind::Dp2, "up1_difference", include_str!("../fixtures/dp2/up1_difference.json")),
    (SurfaceKind::Dp3, "V", include_str!("../fixtures/dp3/V.json")),
    (SurfaceKind::Dp3, "F1", include_str!("../fixtures/dp3/F1.json")),
    (SurfaceKind::Dp3, "F2", include_str!("../fixtures/dp3/F2.json")),
    (SurfaceKind::Dp3, "A", include_str!("../fixtures/dp3/A.json")),
    (SurfaceKind::Dp3, "B", include_str!("../fixtures/dp3/B.json")),
    (SurfaceKind::Dp3, "C", include_str!("../fixtures/dp3/C.json")),
    (SurfaceKind::Dp3, "up2_difference", include_str!("../fixtures/dp3/up2_difference.json")),
    (SurfaceKind::Dp3, "pos3_vertex", include_str!("../fixtures/dp3/pos3_vertex.json")),
];

pub fn mandatory(kind: SurfaceKind) -> &'static [&'static str] {
    match kind {
        SurfaceKind::Dp2 => &["V", "F1", "F2", "A", "B", "C", "calB", "a", "smin"],
        SurfaceKind::Dp3 => &["V", "F1", "F2", "A", "B", "C"],
    }
}

/// Every fixture name known for `kind`, mandatory ones first.
pub fn known(kind: SurfaceKind) -> Vec<&'static str> {
    EMBEDDED.iter().filter(|(k, _, _)| *k == kind).map(|(_, n, _)| *n).collect()
}

pub fn embedded(kind: SurfaceKind, name: &str) -> Result<RatFnFixture> {
    let (_, _, json) = EMBEDDED
        .iter()
        .find(|(k, n, _)| *k == kind && *n == name)
        .ok_or_else(|| Error::Fixture(format!("no fixture `{name}` for {kind}")))?;
    Ok(serde_json::from_str(json)?)
}

/// The derived counterpart of a fixture, restricted to δ = 1.
pub fn derived(kind: SurfaceKind, name: &str) -> Result<PiRatFn> {
    let sym = invariant_set_symbolic(kind);
    let f = match (kind, name) {
        (SurfaceKind::Dp2, "up1_difference") | (SurfaceKind::Dp3, "up2_difference") => {
            return Ok(Graded::new(RatFn::poly(b_bound_difference(kind)), 0));
        }
        (SurfaceKind::Dp3, "pos3_vertex") => sym.vertex_values[0].clone(),
        _ => sym
            .get(name)
            .ok_or_else(|| Error::Fixture(format!("no derived quantity `{name}` for {kind}")))?,
    };
    Ok(SymbolicInvariants::at_unit_delta(&f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegressionRow {
    pub kind: SurfaceKind,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Compares `fixture` with the derived quantity of the same name.
pub fn compare(kind: SurfaceKind, fixture: &RatFnFixture) -> Result<RegressionRow> {
    let printed = fixture.to_ratfn()?;
    let ours = derived(kind, &fixture.name)?;
    let (pass, detail) = if printed.pi_power() != ours.pi_power() && !(printed.is_zero() && ours.is_zero()) {
        (false, format!("pi grade {} vs derived {}", printed.pi_power(), ours.pi_power()))
    } else {
        let diff = printed.coeff().cross_difference(ours.coeff());
        match diff.leading_term() {
            None => (true, "equal".to_string()),
            Some((m, c)) => (false, format!("cross-difference has {} terms, leading {}", diff.len(), crate::exact::MPoly::term(*m, c.clone()))),
        }
    };
    Ok(RegressionRow { kind, name: fixture.name.clone(), pass, detail })
}

/// Runs every fixture, from `dir` if given, else the compiled-in copies.
/// A missing mandatory fixture is a configuration error.
pub fn fixture_regression(dir: Option<&Path>) -> Result<Vec<RegressionRow>> {
    let mut rows = Vec::new();
    for kind in [SurfaceKind::Dp2, SurfaceKind::Dp3] {
        let names: Vec<String> = match dir {
            None => known(kind).into_iter().map(String::from).collect(),
            Some(d) => {
                let sub = d.join(kind.name());
                for m in mandatory(kind) {
                    if !sub.join(format!("{m}.json")).is_file() {
                        return Err(Error::Fixture(format!("mandatory fixture {}/{m}.json missing", sub.display())));
                    }
                }
                let mut found: Vec<String> = std::fs::read_dir(&sub)?
                    .filter_map(|e| e.ok())
                    .filter_map(|e| e.file_name().to_str().and_then(|n| n.strip_suffix(".json")).map(String::from))
                    .collect();
                found.sort();
                found
            }
        };
        for name in names {
            let fixture = match dir {
                None => embedded(kind, &name)?,
                Some(d) => RatFnFixture::load(&d.join(kind.name()).join(format!("{name}.json")))?,
            };
            rows.push(compare(kind, &fixture)?);
        }
    }
    Ok(rows)
}
