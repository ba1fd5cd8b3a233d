//! Coefficient-dominance certificates for 𝓑 < 1/4 and for positivity of the
//! extremal scalar curvature.
//!
//! A certificate states `P = R + Σ cᵢ·Wᵢ` where `R` has no negative
//! coefficient and every `Wᵢ` is a whitelisted form that is nonnegative on the
//! closed positive octant:
//!
//! * `t²(1 − t² + t⁴)`, nonnegative because `1 − t² + t⁴ = (t² − 1/2)² + 3/4`;
//! * a monomial with coefficient 1;
//! * the square of an arbitrary polynomial.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{class_from_params, cremona_params};
use crate::error::{Error, Result};
use crate::exact::{int, rat, MPoly, Monomial, PolyRecord, Rat, RatFn, Var};
use crate::invariants::{cal_b, invariant_set_symbolic, SymbolicInvariants};
use crate::polytope::{KahlerParams, SurfaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `t²(1 − t² + t⁴)` in the named variable.
    SexticBump,
    /// A monomial with coefficient 1.
    Monomial,
    /// `base²`.
    Square,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessForm {
    pub kind: WitnessKind,
    /// Variable of a sextic bump.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    /// Base polynomial of a square.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<PolyRecord>,
    /// Nonnegative multiplier, as `p/q`.
    pub multiplier: String,
    pub form: PolyRecord,
}

/// `1 − t² + t⁴ − ((t² − 1/2)² + 3/4)` is the zero polynomial.
fn bump_identity_holds(t: Var) -> bool {
    let t2 = MPoly::var(t).pow(2);
    let lhs = MPoly::one() - &t2 + t2.pow(2);
    let rhs = (&t2 - &MPoly::constant(rat(1, 2))).pow(2) + MPoly::constant(rat(3, 4));
    (lhs - rhs).is_zero()
}

fn sextic_bump(t: Var) -> MPoly {
    let t2 = MPoly::var(t).pow(2);
    &t2 * &(MPoly::one() - &t2 + t2.pow(2))
}

impl WitnessForm {
    pub fn sextic_bump(t: Var, multiplier: Rat) -> Self {
        WitnessForm {
            kind: WitnessKind::SexticBump,
            var: Some(t.name().to_string()),
            base: None,
            multiplier: multiplier.to_string(),
            form: PolyRecord::from_poly(&sextic_bump(t), 0),
        }
    }

    pub fn square(base: &MPoly, multiplier: Rat) -> Self {
        WitnessForm {
            kind: WitnessKind::Square,
            var: None,
            base: Some(PolyRecord::from_poly(base, 0)),
            multiplier: multiplier.to_string(),
            form: PolyRecord::from_poly(&base.pow(2), 0),
        }
    }

    pub fn monomial(m: Monomial, multiplier: Rat) -> Self {
        WitnessForm {
            kind: WitnessKind::Monomial,
            var: None,
            base: None,
            multiplier: multiplier.to_string(),
            form: PolyRecord::from_poly(&MPoly::term(m, Rat::one()), 0),
        }
    }

    pub fn multiplier(&self) -> Result<Rat> {
        crate::exact::parse_rat(&self.multiplier)
    }

    /// `multiplier · form`.
    pub fn value(&self) -> Result<MPoly> {
        Ok(self.form.to_poly()?.scale(&self.multiplier()?))
    }

    /// The form is literally what its kind says it is and the multiplier is
    /// nonnegative.
    pub fn is_whitelisted(&self) -> bool {
        let Ok(form) = self.form.to_poly() else { return false };
        let Ok(mult) = self.multiplier() else { return false };
        if mult.is_negative() {
            return false;
        }
        match self.kind {
            WitnessKind::SexticBump => match self.var.as_deref().map(Var::parse) {
                Some(Ok(t)) => bump_identity_holds(t) && form == sextic_bump(t),
                _ => false,
            },
            WitnessKind::Monomial => form.len() == 1 && form.terms().all(|(_, c)| c.is_one()),
            WitnessKind::Square => match self.base.as_ref().map(PolyRecord::to_poly) {
                Some(Ok(b)) => form == b.pow(2),
                _ => false,
            },
        }
    }
}

/// A named side condition of a certificate, with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCondition {
    pub name: String,
    pub holds: bool,
}

/// One polynomial claimed nonnegative on the closed positive octant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub target: PolyRecord,
    /// `target − Σ witnesses`; must have no negative coefficient.
    pub residual: PolyRecord,
    pub witness_forms: Vec<WitnessForm>,
}

impl Claim {
    pub fn new(label: &str, target: &MPoly, witnesses: Vec<WitnessForm>) -> Self {
        let mut residual = target.clone();
        for w in &witnesses {
            residual = residual - w.value().expect("freshly built witness");
        }
        Claim {
            label: label.to_string(),
            target: PolyRecord::from_poly(target, 0),
            residual: PolyRecord::from_poly(&residual, 0),
            witness_forms: witnesses,
        }
    }

    /// Recomputes everything from the stored records.
    pub fn check(&self) -> Result<bool> {
        let target = self.target.to_poly()?;
        let residual = self.residual.to_poly()?;
        let mut sum = residual.clone();
        for w in &self.witness_forms {
            sum = sum + w.value()?;
        }
        Ok(sum == target
            && !residual.min_coefficient().is_negative()
            && self.witness_forms.iter().all(WitnessForm::is_whitelisted))
    }

    pub fn offending_terms(&self) -> Vec<String> {
        self.residual
            .to_poly()
            .map(|r| r.negative_terms().iter().map(|(m, c)| MPoly::term(*m, c.clone()).to_string()).collect())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub statement: String,
    pub claims: Vec<Claim>,
    #[serde(default)]
    pub side_conditions: Vec<SideCondition>,
    pub verified: bool,
}

impl Certificate {
    /// Verified iff every claim checks and every side condition holds.
    pub fn build(statement: &str, claims: Vec<Claim>, side: Vec<SideCondition>) -> Self {
        let mut cert = Certificate { statement: statement.to_string(), claims, side_conditions: side, verified: false };
        cert.verified = cert.reverify().unwrap_or(false);
        cert
    }

    /// Single-claim shorthand.
    pub fn dominance(statement: &str, target: &MPoly, witnesses: Vec<WitnessForm>, side: Vec<SideCondition>) -> Self {
        Self::build(statement, vec![Claim::new(statement, target, witnesses)], side)
    }

    /// Re-checks a (possibly deserialized) certificate from its stored parts.
    pub fn reverify(&self) -> Result<bool> {
        for c in &self.claims {
            if !c.check()? {
                return Ok(false);
            }
        }
        Ok(self.side_conditions.iter().all(|s| s.holds))
    }

    /// Ok only if the stored parts reverify; the `verified` flag alone is
    /// not trusted.
    pub fn require(self) -> Result<Self> {
        if self.verified && self.reverify()? {
            return Ok(self);
        }
        let mut reasons: Vec<String> = self
            .side_conditions
            .iter()
            .filter(|s| !s.holds)
            .map(|s| format!("side condition `{}` fails", s.name))
            .collect();
        for c in &self.claims {
            if !c.check().unwrap_or(false) {
                let bad = c.offending_terms();
                if bad.is_empty() {
                    reasons.push(format!("claim `{}` is inconsistent", c.label));
                } else {
                    reasons.push(format!("claim `{}` has negative terms {}", c.label, bad.join(", ")));
                }
            }
        }
        Err(Error::NotVerified { statement: self.statement, reason: reasons.join("; ") })
    }

    pub fn summary(&self) -> String {
        let terms: usize = self.claims.iter().map(|c| c.residual.terms.len()).sum();
        let witnesses: usize = self.claims.iter().map(|c| c.witness_forms.len()).sum();
        let side: Vec<String> = self
            .side_conditions
            .iter()
            .map(|s| format!("{}={}", s.name, if s.holds { "ok" } else { "FAIL" }))
            .collect();
        format!(
            "{}: {} (claims {}, residual terms {terms}, witnesses {witnesses}{}{})",
            self.statement,
            if self.verified { "verified" } else { "NOT VERIFIED" },
            self.claims.len(),
            if side.is_empty() { "" } else { "; " },
            side.join(", ")
        )
    }
}

fn cone_vars(kind: SurfaceKind) -> &'static [Var] {
    match kind {
        SurfaceKind::Dp2 => &[Var::Beta, Var::Gamma],
        SurfaceKind::Dp3 => &[Var::Alpha, Var::Beta, Var::Gamma],
    }
}

pub fn b_bound_statement(kind: SurfaceKind) -> &'static str {
    match kind {
        SurfaceKind::Dp2 => "up1",
        SurfaceKind::Dp3 => "up2",
    }
}

/// 𝓑 = N/D at δ = 1, as derived from the polygon.
pub fn cal_b_parts_unit_delta(kind: SurfaceKind) -> (MPoly, MPoly) {
    let f = invariant_set_symbolic(kind).cal_b.specialize(Var::Delta, &Rat::one()).expect("δ = 1");
    f.into_parts()
}

/// `D − 4N`, the polynomial the 𝓑 < 1/4 argument shows is positive.
pub fn b_bound_difference(kind: SurfaceKind) -> MPoly {
    let (n, d) = cal_b_parts_unit_delta(kind);
    d - n.scale(&int(4))
}

/// The comparison forms 4·v²(1 − v² + v⁴).
pub fn b_bound_witnesses(kind: SurfaceKind) -> Vec<WitnessForm> {
    cone_vars(kind).iter().map(|&v| WitnessForm::sextic_bump(v, int(4))).collect()
}

fn nonneg_with_positive_constant(p: &MPoly) -> bool {
    !p.min_coefficient().is_negative() && p.constant_term().is_positive()
}

/// 𝓑 < 1/4 on the whole Kähler cone.
///
/// On δ > 0 the ratio is scale invariant, so δ = 1 suffices. The dp3 cone
/// also needs δ = 0, where δ² divides the numerator, and δ < 0, which
/// Cremona invariance maps back to δ > 0.
pub fn b_bound_certificate(kind: SurfaceKind) -> Certificate {
    let sym = invariant_set_symbolic(kind);
    let (_, d) = cal_b_parts_unit_delta(kind);
    let mut side = vec![SideCondition {
        name: "denominator_positive".into(),
        holds: nonneg_with_positive_constant(&d),
    }];
    if kind == SurfaceKind::Dp3 {
        side.push(SideCondition {
            name: "delta_squared_divides_numerator".into(),
            holds: sym.cal_b.num().min_degree_in(Var::Delta) >= 2,
        });
        side.push(SideCondition { name: "cremona_invariant".into(), holds: cal_b_cremona_invariant() });
    }
    Certificate::dominance(b_bound_statement(kind), &b_bound_difference(kind), b_bound_witnesses(kind), side)
}

/// Symbolic 𝓑 on dp3 is unchanged by (α, β, γ, δ) ↦ (α+δ, β+δ, γ+δ, −δ).
pub fn cal_b_cremona_invariant() -> bool {
    let f = &invariant_set_symbolic(SurfaceKind::Dp3).cal_b;
    let d = MPoly::var(Var::Delta);
    let images = [
        MPoly::var(Var::Alpha) + &d,
        MPoly::var(Var::Beta) + &d,
        MPoly::var(Var::Gamma) + &d,
        -d.clone(),
    ];
    f.compose(&images).map(|g| g == *f).unwrap_or(false)
}

pub fn verify_b_bound(kind: SurfaceKind) -> Result<Certificate> {
    b_bound_certificate(kind).require()
}

pub fn positivity_statement(kind: SurfaceKind) -> &'static str {
    match kind {
        SurfaceKind::Dp2 => "pos2",
        SurfaceKind::Dp3 => "pos3",
    }
}

/// Why `f` fails to be manifestly positive on the open octant, if it does.
pub fn positive_ratio_failure(f: &RatFn) -> Option<String> {
    let (n, d) = (f.num(), f.den());
    let mut why = Vec::new();
    for (name, p) in [("numerator", n), ("denominator", d)] {
        if p.is_zero() {
            why.push(format!("{name} vanishes"));
            continue;
        }
        let neg: Vec<String> = p.negative_terms().iter().map(|(m, c)| MPoly::term(*m, c.clone()).to_string()).collect();
        if !neg.is_empty() {
            why.push(format!("{name} has negative terms {}", neg.join(", ")));
        }
    }
    (!why.is_empty()).then(|| why.join("; "))
}

/// Per-vertex degrees of the homogenized numerator and denominator.
pub fn vertex_degrees(kind: SurfaceKind) -> Vec<(u32, u32)> {
    invariant_set_symbolic(kind)
        .vertex_values
        .iter()
        .map(|v| {
            let f = SymbolicInvariants::at_unit_delta(v);
            (f.coeff().num().degree(), f.coeff().den().degree())
        })
        .collect()
}

/// Every vertex value of the extremal potential is a quotient of
/// polynomials with nonnegative coefficients, nonzero on the open octant; the
/// δ-homogenizations of the δ = 1 forms keep nonzero top-degree parts with
/// nonnegative coefficients, so the quotient extends continuously to δ = 0.
pub fn scalar_positivity_certificate(kind: SurfaceKind) -> Certificate {
    let sym = invariant_set_symbolic(kind);
    let mut claims = Vec::new();
    let mut side = Vec::new();
    for (i, v) in sym.vertex_values.iter().enumerate() {
        let f = SymbolicInvariants::at_unit_delta(v);
        let (n, d) = (f.coeff().num(), f.coeff().den());
        claims.push(Claim::new(&format!("vertex{i}_numerator"), n, Vec::new()));
        claims.push(Claim::new(&format!("vertex{i}_denominator"), d, Vec::new()));
        side.push(SideCondition {
            name: format!("vertex{i}_nonvanishing"),
            holds: v.pi_power() == 1 && n.constant_term().is_positive() && d.constant_term().is_positive(),
        });
        let top = |p: &MPoly| {
            let h = p.homogeneous_part(p.degree());
            !h.is_zero() && !h.min_coefficient().is_negative()
        };
        side.push(SideCondition {
            name: format!("vertex{i}_degree_{}_{}", n.degree(), d.degree()),
            holds: top(n) && top(d) && d.degree() == n.degree() + 1,
        });
    }
    Certificate::build(positivity_statement(kind), claims, side)
}

pub fn verify_scalar_positivity(kind: SurfaceKind) -> Result<Certificate> {
    scalar_positivity_certificate(kind).require()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpotReport {
    pub kind: SurfaceKind,
    pub samples: usize,
    pub max_cal_b: Rat,
    pub argmax: KahlerParams,
}

/// Exact 0 ≤ 𝓑 < 1/4 at `n` seeded random cone points.
pub fn numeric_spotcheck_b(kind: SurfaceKind, n: usize, seed: u64) -> Result<SpotReport> {
    spotcheck(kind, n, seed, |p| p)
}

/// dp3 points on the face δ = 0, where 𝓑 must vanish.
pub fn spotcheck_delta_face(n: usize, seed: u64) -> Result<SpotReport> {
    let report = spotcheck(SurfaceKind::Dp3, n, seed, |mut p| {
        p.delta = Rat::zero();
        p
    })?;
    if !report.max_cal_b.is_zero() {
        return Err(Error::AssertionFailure {
            statement: "calB = 0 on delta = 0".into(),
            point: report.argmax.to_string(),
        });
    }
    Ok(report)
}

fn spotcheck(
    kind: SurfaceKind,
    n: usize,
    seed: u64,
    adjust: impl Fn(KahlerParams) -> KahlerParams,
) -> Result<SpotReport> {
    if n == 0 {
        return Err(Error::OutOfRange { name: "n_samples", value: Rat::zero() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quarter = rat(1, 4);
    let mut best: Option<(Rat, KahlerParams)> = None;
    for _ in 0..n {
        let p = adjust(KahlerParams::random(kind, &mut rng));
        let b = cal_b(kind, &p)?;
        if b.is_negative() || b >= quarter {
            return Err(Error::AssertionFailure {
                statement: format!("0 <= calB < 1/4 on {kind}"),
                point: p.to_string(),
            });
        }
        if best.as_ref().map_or(true, |(m, _)| b > *m) {
            best = Some((b, p));
        }
    }
    let (max_cal_b, argmax) = best.expect("n >= 1");
    Ok(SpotReport { kind, samples: n, max_cal_b, argmax })
}

/// 𝓑 is unchanged by the Cremona move at a numeric point.
pub fn cremona_preserves_cal_b(p: &KahlerParams) -> Result<bool> {
    let q = cremona_params(p);
    let same_t = crate::cohomology::cal_t(&class_from_params(SurfaceKind::Dp3, p))?
        == crate::cohomology::cal_t(&class_from_params(SurfaceKind::Dp3, &q))?;
    Ok(same_t && cal_b(SurfaceKind::Dp3, p)? == cal_b(SurfaceKind::Dp3, &q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_is_whitelisted() {
        let w = WitnessForm::sextic_bump(Var::Beta, int(4));
        assert!(w.is_whitelisted());
        let mut bad = w.clone();
        bad.multiplier = "-1".into();
        assert!(!bad.is_whitelisted());
        let mut forged = w;
        forged.form = PolyRecord::from_poly(&MPoly::var(Var::Beta).pow(2), 0);
        assert!(!forged.is_whitelisted());
        assert!(WitnessForm::square(&(MPoly::var(Var::Beta) - MPoly::one()), int(1)).is_whitelisted());
    }

    #[test]
    fn dominance_and_falsification() {
        let b = MPoly::var(Var::Beta);
        // β² − 2β + 1 = (β − 1)²
        let target = b.pow(2) - b.scale(&int(2)) + MPoly::one();
        let ok = Certificate::dominance("square", &target, vec![WitnessForm::square(&(b.clone() - MPoly::one()), int(1))], vec![]);
        assert!(ok.verified);
        assert!(ok.reverify().unwrap());
        let bad = Certificate::dominance("no witness", &target, vec![], vec![]);
        assert!(!bad.verified);
        assert_eq!(bad.claims[0].offending_terms(), vec!["-2*β".to_string()]);
        assert!(matches!(bad.require(), Err(Error::NotVerified { .. })));
    }

    #[test]
    fn dp2_bound_certificate() {
        let cert = verify_b_bound(SurfaceKind::Dp2).unwrap();
        assert!(cert.verified);
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert!(back.reverify().unwrap());
        // a residual swapped for D − 3N − Q no longer matches its target
        let (n, d) = cal_b_parts_unit_delta(SurfaceKind::Dp2);
        let q: MPoly = b_bound_witnesses(SurfaceKind::Dp2).iter().map(|w| w.value().unwrap()).fold(MPoly::zero(), |a, b| a + b);
        let mut tampered = cert.clone();
        tampered.claims[0].residual = PolyRecord::from_poly(&(&d - &n.scale(&int(3)) - q), 0);
        assert!(!tampered.reverify().unwrap());
        // 𝓑 < 1/8 is false at c₁, so D − 8N cannot be dominated
        let false_bound = Certificate::dominance("mutant", &(d - n.scale(&int(8))), b_bound_witnesses(SurfaceKind::Dp2), vec![]);
        assert!(!false_bound.verified);
    }

    #[test]
    fn negated_potential_fails() {
        let sym = invariant_set_symbolic(SurfaceKind::Dp2);
        let f = SymbolicInvariants::at_unit_delta(&sym.vertex_values[0]);
        assert!(positive_ratio_failure(f.coeff()).is_none());
        assert!(positive_ratio_failure(&-f.coeff()).is_some());
    }

    #[test]
    fn spotcheck_small() {
        let r = numeric_spotcheck_b(SurfaceKind::Dp2, 20, 7).unwrap();
        assert!(r.max_cal_b < rat(1, 4));
        assert_eq!(numeric_spotcheck_b(SurfaceKind::Dp2, 20, 7).unwrap(), r);
        assert!(numeric_spotcheck_b(SurfaceKind::Dp2, 0, 7).is_err());
    }
}
