//! The bundled example data: fields, `mu`, and the published factorizations.

use std::collections::BTreeMap;

use serde::Deserialize;

use picardcm_core::exact::{parse_factored_expr, parse_q, FactoredNumber, Q, Z};
use picardcm_core::number_fields::{CubicField, FieldElement};
use picardcm_core::{Error, Result};

const DATA: &str = include_str!("../data/examples.json");

#[derive(Clone, Debug, Deserialize)]
pub struct ExampleFile {
    pub version: u32,
    pub examples: Vec<ExampleRecord>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExampleInvariants {
    pub j1: String,
    pub j2: String,
    pub kw1: String,
    pub kw2: String,
    pub i1: String,
    pub i2: String,
    pub i3: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CurveRecord {
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassPolyDenominators {
    pub den_h1: String,
    pub den_h2hat: String,
    /// Denominator of the class polynomial of `j1' = b^2/a^3`.
    pub den_h_kw1: String,
    pub den_h_i1: String,
}

/// One example. Every value is stored as printed, in factored notation.
#[derive(Clone, Debug, Deserialize)]
pub struct ExampleRecord {
    pub id: u32,
    /// `[c0, c1, c2]` of `x^3 + c2 x^2 + c1 x + c0`.
    pub field_poly: [String; 3],
    /// Power-basis coordinates of `mu`.
    pub mu: [String; 3],
    pub n_mu: String,
    pub invariants: Option<ExampleInvariants>,
    pub den_abs: Option<String>,
    pub den_kw_abs: Option<String>,
    pub den_delta_abs: Option<String>,
    /// `B^10 / 8` in scientific notation, e.g. `"7.2e10"`.
    pub b_approx: Option<String>,
    pub curve: Option<CurveRecord>,
    pub class_poly_dens: Option<ClassPolyDenominators>,
    pub cite: BTreeMap<String, String>,
}

impl ExampleRecord {
    pub fn field(&self) -> Result<CubicField> {
        field_from_coeffs(&parse_q3(&self.field_poly)?)
    }

    pub fn mu_element(&self) -> Result<FieldElement> {
        Ok(FieldElement::new(parse_q3(&self.mu)?))
    }

    pub fn expected_n_mu(&self) -> Result<FactoredNumber> {
        parse_factored_expr(&self.n_mu)
    }

    /// The denominators the divisibility law applies to: `den_abs` and the
    /// denominators of `H_{j1}` and `Hhat`.
    pub fn law_denominators(&self) -> Result<Vec<(&'static str, FactoredNumber)>> {
        let mut out = Vec::new();
        if let Some(d) = &self.den_abs {
            out.push(("den_abs", parse_factored_expr(d)?));
        }
        if let Some(c) = &self.class_poly_dens {
            out.push(("den_h1", parse_factored_expr(&c.den_h1)?));
            out.push(("den_h2hat", parse_factored_expr(&c.den_h2hat)?));
        }
        Ok(out)
    }

    /// Mantissa, exponent and number of significant digits of `b_approx`.
    pub fn b_approx_parts(&self) -> Result<Option<(Z, i64, u32)>> {
        self.b_approx.as_deref().map(parse_scientific).transpose()
    }
}

/// Parses `"7.2e10"` or `"1.e18"` into `(72, 10, 2)` or `(1, 18, 1)`.
pub fn parse_scientific(s: &str) -> Result<(Z, i64, u32)> {
    let bad = || Error::Parse(format!("bad scientific notation {s:?}"));
    let (m, e) = s.split_once(['e', 'E']).ok_or_else(bad)?;
    let digits: String = m.chars().filter(|c| *c != '.').collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
        return Err(bad());
    }
    let exp: i64 = e.parse().map_err(|_| bad())?;
    let mantissa: Z = digits.parse().map_err(|_| bad())?;
    Ok((mantissa, exp, digits.len() as u32))
}

pub fn parse_q3(s: &[String; 3]) -> Result<[Q; 3]> {
    Ok([parse_q(&s[0])?, parse_q(&s[1])?, parse_q(&s[2])?])
}

/// The cubic field of a monic polynomial with integer coefficients.
pub fn field_from_coeffs(c: &[Q; 3]) -> Result<CubicField> {
    if c.iter().any(|x| !x.is_integer()) {
        return Err(Error::OutOfRange(
            "field polynomial coefficients must be integers".into(),
        ));
    }
    CubicField::new(c[0].to_integer(), c[1].to_integer(), c[2].to_integer())
}

pub fn load_examples() -> Result<ExampleFile> {
    serde_json::from_str(DATA).map_err(|e| Error::Parse(format!("example data: {e}")))
}

/// The selected examples in the order requested; all of them when `ids` is empty.
pub fn select_examples(ids: &[u32]) -> Result<Vec<ExampleRecord>> {
    let all = load_examples()?.examples;
    if ids.is_empty() {
        return Ok(all);
    }
    ids.iter()
        .map(|id| {
            all.iter()
                .find(|r| r.id == *id)
                .cloned()
                .ok_or_else(|| Error::OutOfRange(format!("no example with id {id}")))
        })
        .collect()
}
