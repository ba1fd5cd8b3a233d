//! Bit-exact JSON records for polynomials and rational functions.
//!
//! ```json
//! {"vars": ["alpha","beta","gamma","delta"], "pi_power": 0,
//!  "terms": [{"exp": [0,1,1,0], "num": "1", "den": "1"}]}
//! ```
//! Coefficients are decimal integer strings in lowest terms; terms are written
//! in ascending graded-lex order.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Graded, MPoly, Monomial, PiRatFn, Rat, RatFn};
use crate::error::{Error, Result};

pub const VAR_NAMES: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: [u32; 4],
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub vars: Vec<String>,
    pub pi_power: i32,
    pub terms: Vec<TermRecord>,
}

impl PolyRecord {
    pub fn from_poly(p: &MPoly, pi_power: i32) -> Self {
        PolyRecord {
            vars: VAR_NAMES.iter().map(|s| s.to_string()).collect(),
            pi_power,
            terms: p
                .terms()
                .map(|(m, c)| TermRecord {
                    exp: m.0,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MPoly> {
        if self.vars.len() != 4 || self.vars.iter().zip(VAR_NAMES).any(|(a, b)| a != b) {
            return Err(Error::Fixture(format!("unexpected variable list {:?}", self.vars)));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !seen.insert(t.exp) {
                return Err(Error::Fixture(format!("duplicate monomial {:?}", t.exp)));
            }
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::Fixture(format!("bad numerator `{}`", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::Fixture(format!("bad denominator `{}`", t.den)))?;
            if den <= BigInt::from(0) {
                return Err(Error::Fixture(format!("non-positive denominator `{}`", t.den)));
            }
            terms.push((Monomial(t.exp), Rat::new(num, den)));
        }
        Ok(MPoly::from_terms(terms))
    }
}

/// A named rational-function fixture; its grade is `num.pi_power - den.pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnFixture {
    pub name: String,
    pub num: PolyRecord,
    pub den: PolyRecord,
}

impl RatFnFixture {
    pub fn from_ratfn(name: &str, f: &PiRatFn) -> Self {
        RatFnFixture {
            name: name.to_string(),
            num: PolyRecord::from_poly(f.coeff().num(), f.pi_power()),
            den: PolyRecord::from_poly(f.coeff().den(), 0),
        }
    }

    pub fn to_ratfn(&self) -> Result<PiRatFn> {
        let f = RatFn::new(self.num.to_poly()?, self.den.to_poly()?)?;
        Ok(Graded::new(f, self.num.pi_power - self.den.pi_power))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Var};

    #[test]
    fn poly_record_round_trip() {
        let p = MPoly::var(Var::Beta).scale(&rat(-7, 3)) + MPoly::constant(rat(1, 2));
        let rec = PolyRecord::from_poly(&p, 2);
        assert_eq!(rec.terms[0].exp, [0, 0, 0, 0]);
        assert_eq!(rec.terms[1].num, "-7");
        assert_eq!(rec.terms[1].den, "3");
        let json = serde_json::to_string(&rec).unwrap();
        let back: PolyRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_poly().unwrap(), p);
    }

    #[test]
    fn rejects_malformed_records() {
        let mut rec = PolyRecord::from_poly(&MPoly::var(Var::Gamma), 0);
        rec.terms.push(rec.terms[0].clone());
        assert!(rec.to_poly().is_err());
        let mut rec = PolyRecord::from_poly(&MPoly::var(Var::Gamma), 0);
        rec.terms[0].den = "0".into();
        assert!(rec.to_poly().is_err());
        let mut rec = PolyRecord::from_poly(&MPoly::var(Var::Gamma), 0);
        rec.vars.swap(0, 1);
        assert!(rec.to_poly().is_err());
    }
}
