//! Recomputes every stored example value and compares it exactly.

use std::time::Instant;

use num_traits::One;
use serde::Serialize;

use picardcm_core::bound_engine::{compute_n_mu, BoundCertificate, BoundOptions};
use picardcm_core::exact::{parse_factored_expr, parse_q, FactoredNumber, Q, Z};
use picardcm_core::lattice_search::{compute_b, find_mu, minkowski_bounds, scientific};
use picardcm_core::number_fields::{maximal_order, sextic_maximal_order, SexticField};
use picardcm_core::picard::{
    absolute_denominators, den_abs_valuation_form, invariants, reconstruct, verify_against,
    AbsoluteDenominators, InvariantVector, PicardCurve,
};
use picardcm_core::Result;

use crate::examples::{select_examples, ExampleRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub computed: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, expected: impl ToString, computed: impl ToString) -> Self {
        Check {
            name: name.into(),
            pass,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    fn factored(name: &str, expected: &FactoredNumber, computed: Option<&FactoredNumber>) -> Self {
        let shown = computed.map_or_else(|| "undefined".to_string(), |c| c.to_string());
        Check::new(name, computed == Some(expected), expected, shown)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub id: u32,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl ExampleReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub examples: Vec<ExampleReport>,
}

/// The report and, separately, the wall time of each example in milliseconds.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: VerifyReport,
    pub timings_ms: Vec<(u32, u128)>,
}

/// Everything recomputed for one example.
#[derive(Clone, Debug)]
pub struct ExampleComputation {
    pub certificate: BoundCertificate,
    pub o_plus_disc: Z,
    pub t2_bound: Z,
    /// Smallest `Tr(mu^2)` over `mu in Z + 2O+` outside `Q`.
    pub min_t2: Option<Z>,
    pub b: Z,
}

pub fn compute_example(rec: &ExampleRecord, opts: &BoundOptions) -> Result<ExampleComputation> {
    let field = rec.field()?;
    let sextic = SexticField::new(field.clone());
    let order = sextic_maximal_order(&sextic);
    let certificate = compute_n_mu(&sextic, &order, &rec.mu_element()?, opts)?;
    let o_plus = maximal_order(&field);
    let t2_bound = minkowski_bounds(o_plus.disc())?.t2_bound;
    let min_t2 = find_mu(&field, &o_plus, Some(t2_bound.clone()))?
        .first()
        .map(|c| c.t2.clone());
    let b = compute_b(&sextic, &order)?.b;
    Ok(ExampleComputation {
        certificate,
        o_plus_disc: o_plus.disc().clone(),
        t2_bound,
        min_t2,
        b,
    })
}

fn q_display(x: &Q) -> String {
    FactoredNumber::from_rational(x).map_or_else(|_| "0".into(), |f| f.to_string())
}

fn invariant_checks(label: &str, exp: &[(&str, Q)], inv: &InvariantVector) -> Vec<Check> {
    exp.iter()
        .map(|(name, e)| {
            let c = match *name {
                "j1" => &inv.j1,
                "j2" => &inv.j2,
                "kw1" => &inv.kw1,
                "kw2" => &inv.kw2,
                "i1" => &inv.i1,
                "i2" => &inv.i2,
                _ => &inv.i3,
            };
            let shown = c.as_ref().map_or_else(|| "undefined".into(), q_display);
            Check::new(format!("{label}{name}"), c.as_ref() == Some(e), q_display(e), shown)
        })
        .collect()
}

fn denominator_checks(label: &str, rec: &ExampleRecord, d: &AbsoluteDenominators) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, exp, got) in [
        ("den_abs", &rec.den_abs, &d.den_abs),
        ("den_kw_abs", &rec.den_kw_abs, &d.den_kw_abs),
        ("den_delta_abs", &rec.den_delta_abs, &d.den_delta_abs),
    ] {
        if let Some(e) = exp {
            out.push(Check::factored(&format!("{label}{name}"), &parse_factored_expr(e)?, got.as_ref()));
        }
    }
    Ok(out)
}

fn curve_checks(label: &str, rec: &ExampleRecord, cur: &PicardCurve, exp: &[(&str, Q)]) -> Result<Vec<Check>> {
    let mut out = invariant_checks(label, exp, &invariants(cur));
    let dens = absolute_denominators(cur)?;
    out.extend(denominator_checks(label, rec, &dens)?);
    let alt = den_abs_valuation_form(cur)?;
    out.push(Check::factored(&format!("{label}den_abs valuation form"), &alt, dens.den_abs.as_ref()));
    Ok(out)
}

/// The invariant and denominator checks, which need no enumeration.
pub fn static_checks(rec: &ExampleRecord) -> Result<Vec<Check>> {
    let Some(inv) = &rec.invariants else {
        return Ok(Vec::new());
    };
    let parse = |s: &str| -> Result<Q> {
        parse_factored_expr(s)?
            .to_rational()
            .ok_or_else(|| picardcm_core::Error::Parse(format!("{s} is not rational")))
    };
    let exp: Vec<(&str, Q)> = vec![
        ("j1", parse(&inv.j1)?),
        ("j2", parse(&inv.j2)?),
        ("kw1", parse(&inv.kw1)?),
        ("kw2", parse(&inv.kw2)?),
        ("i1", parse(&inv.i1)?),
        ("i2", parse(&inv.i2)?),
        ("i3", parse(&inv.i3)?),
    ];
    let cur = reconstruct(&exp[0].1, &exp[1].1)?;
    let mut out = curve_checks("", rec, &cur, &exp)?;
    if let Some(c) = &rec.curve {
        let model = PicardCurve::new(parse_q(&c.a)?, parse_q(&c.b)?, parse_q(&c.c)?)?;
        out.extend(curve_checks("curve model: ", rec, &model, &exp)?);
    }
    Ok(out)
}

fn max_prime(n: &FactoredNumber) -> Z {
    n.primes().into_iter().max().unwrap_or_else(Z::one)
}

/// Checks against a finished computation.
pub fn computed_checks(rec: &ExampleRecord, comp: &ExampleComputation) -> Result<Vec<Check>> {
    let cert = &comp.certificate;
    let mut out = vec![Check::factored("N_mu", &rec.expected_n_mu()?, Some(&cert.n_mu))];

    let dens = rec.law_denominators()?;
    let ds: Vec<FactoredNumber> = dens.iter().map(|(_, d)| d.clone()).collect();
    let v = verify_against(&ds, &cert.n_mu);
    let names: Vec<&str> = dens.iter().map(|(n, _)| *n).collect();
    let missing: Vec<String> = v
        .primes
        .iter()
        .filter(|c| !c.divides_six_n_mu)
        .map(|c| c.prime.to_string())
        .collect();
    out.push(Check::new(
        format!("denominator primes of {} divide 6 N_mu", names.join(", ")),
        v.pass,
        "no missing primes",
        if missing.is_empty() { "no missing primes".to_string() } else { format!("missing {}", missing.join(", ")) },
    ));

    let cap = Z::from(3).max(cert.t2_cubed.clone());
    let mp = max_prime(&cert.six_n_mu);
    out.push(Check::new("max prime of 6 N_mu <= max(3, t2^3)", mp <= cap, format!("<= {cap}"), mp));
    let (pass, shown) = match &comp.min_t2 {
        Some(t) => (t <= &comp.t2_bound, t.to_string()),
        None => (false, "none found".to_string()),
    };
    out.push(Check::new(
        "minimal t2 <= 1 + 16 sqrt|disc O+| / pi",
        pass,
        format!("<= {}", comp.t2_bound),
        shown,
    ));

    if let Some((m, e, digits)) = rec.b_approx_parts()? {
        let val = Q::new(comp.b.pow(10u32), Z::from(8));
        let (cm, ce) = scientific(&val, digits);
        out.push(Check::new(
            "B^10 / 8",
            cm == m && ce == e,
            format!("{m}e{e} ({digits} digits)"),
            format!("{cm}e{ce} (B = {})", comp.b),
        ));
    }
    Ok(out)
}

pub fn verify_example(rec: &ExampleRecord, opts: &BoundOptions) -> Result<ExampleReport> {
    let mut checks = static_checks(rec)?;
    let comp = compute_example(rec, opts)?;
    checks.extend(computed_checks(rec, &comp)?);
    Ok(ExampleReport {
        id: rec.id,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

pub fn verify_examples(ids: &[u32], opts: &BoundOptions) -> Result<VerifyOutcome> {
    let recs = select_examples(ids)?;
    let mut examples = Vec::new();
    let mut timings_ms = Vec::new();
    for rec in &recs {
        let t = Instant::now();
        examples.push(verify_example(rec, opts)?);
        timings_ms.push((rec.id, t.elapsed().as_millis()));
    }
    Ok(VerifyOutcome {
        report: VerifyReport {
            pass: examples.iter().all(|e| e.pass),
            examples,
        },
        timings_ms,
    })
}
