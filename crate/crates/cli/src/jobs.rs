//! Validated job specifications and their runners.

use std::fmt::Write as _;

use serde_json::{json, Value};

use picardcm_core::bound_engine::{compute_n_mu, BoundOptions, MuData};
use picardcm_core::exact::{fmt_q, FactoredNumber, Q, Z};
use picardcm_core::lattice_search::{compute_b, find_mu, minkowski_bounds, mu_minpoly_coeffs, scientific};
use picardcm_core::number_fields::cubic::coords_to_strings;
use picardcm_core::number_fields::{
    maximal_order, sextic_maximal_order, z_plus_2o, FieldElement, OrderBasis, SexticElement, SexticField,
};
use picardcm_core::picard::{
    absolute_denominators, class_polynomials, classify_reduction, den_abs_valuation_form, invariants, PicardCurve,
};
use picardcm_core::{Error, Result};

use crate::examples::field_from_coeffs;
use crate::verify::verify_examples;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInput {
    pub field_poly: [Q; 3],
    pub mu: [Q; 3],
    /// Rows of an order of `K` in the basis `(1, a, a^2, z, a z, a^2 z)`.
    pub order_basis: Option<Vec<Vec<Q>>>,
    /// Must agree with `Tr(mu^2)` when given.
    pub t2: Option<Z>,
    pub threads: Option<usize>,
    pub alt_isogeny: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Bound(Box<BoundInput>),
    FindMu { field_poly: [Q; 3], cap: Option<Z> },
    Invariants { curve: PicardCurve },
    Classify { curve: PicardCurve, prime: Z },
    ClassPoly { points: Vec<(Q, Q)> },
    ConstantB { field_poly: [Q; 3] },
    VerifyExamples { ids: Vec<u32>, threads: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub output_format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Mismatch => 1,
        }
    }
}

/// Exit code for validation failures.
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Clone, Debug)]
pub struct JobOutput {
    pub status: Status,
    /// Deterministic payload.
    pub json: Value,
    pub table: String,
    /// Wall times, reported beside the payload and never inside it.
    pub timing_ms: Option<Value>,
}

impl JobOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.table.clone(),
            OutputFormat::Json => {
                let mut v = self.json.clone();
                if let (Some(t), Value::Object(m)) = (&self.timing_ms, &mut v) {
                    m.insert("timing_ms".into(), t.clone());
                }
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
        }
    }
}

/// Machine-readable form of a validation error.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.code(), "message": e.to_string() })
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

struct BoundJob {
    sextic: SexticField,
    order: OrderBasis,
    mu: FieldElement,
    opts: BoundOptions,
}

enum Prepared {
    Bound(Box<BoundJob>),
    FindMu {
        field: picardcm_core::number_fields::CubicField,
        cap: Option<Z>,
    },
    Invariants(PicardCurve),
    Classify(PicardCurve, Z),
    ClassPoly(Vec<(Q, Q)>),
    ConstantB(SexticField),
    VerifyExamples(Vec<u32>, BoundOptions),
}

fn check_curve(c: &PicardCurve) -> Result<PicardCurve> {
    PicardCurve::new(c.a.clone(), c.b.clone(), c.c.clone())
}

fn prepare_bound(b: &BoundInput) -> Result<Prepared> {
    if b.alt_isogeny {
        return Err(Error::NotImplemented(
            "the variant with the modified isogeny is not available".into(),
        ));
    }
    if b.threads == Some(0) {
        return Err(Error::OutOfRange("--parallel must be at least 1".into()));
    }
    let field = field_from_coeffs(&b.field_poly)?;
    let sextic = SexticField::new(field.clone());
    let order = match &b.order_basis {
        Some(rows) => {
            if rows.len() != 6 || rows.iter().any(|r| r.len() != 6) {
                return Err(Error::InvalidLattice("order basis must be 6 rows of 6 rationals".into()));
            }
            OrderBasis::new(&sextic, rows)?
        }
        None => sextic_maximal_order(&sextic),
    };
    if order.rank() != 6 {
        return Err(Error::InvalidLattice("order basis has rank below 6".into()));
    }
    let mu = FieldElement::new(b.mu.clone());
    if mu.is_rational() {
        return Err(Error::DegenerateMu);
    }
    if !z_plus_2o(&sextic, &order).contains(&SexticElement::real(mu.clone()).to_vec()) {
        return Err(Error::MuNotInOrder);
    }
    let [t1, a1, n] = mu_minpoly_coeffs(&field, &mu)?;
    let data = MuData::new(t1, a1, n)?;
    if let Some(t2) = &b.t2 {
        if *t2 != data.t2 {
            return Err(Error::OutOfRange(format!(
                "t2 override {t2} differs from Tr(mu^2) = {}",
                data.t2
            )));
        }
    }
    Ok(Prepared::Bound(Box::new(BoundJob {
        sextic,
        order,
        mu,
        opts: BoundOptions {
            threads: b.threads,
            alt_isogeny: false,
        },
    })))
}

impl JobSpec {
    /// Validates every input; nothing expensive is computed here.
    fn prepare(&self) -> Result<Prepared> {
        Ok(match &self.command {
            Command::Bound(b) => prepare_bound(b)?,
            Command::FindMu { field_poly, cap } => {
                if let Some(c) = cap {
                    if c < &Z::from(0) {
                        return Err(Error::OutOfRange("cap must be nonnegative".into()));
                    }
                }
                Prepared::FindMu {
                    field: field_from_coeffs(field_poly)?,
                    cap: cap.clone(),
                }
            }
            Command::Invariants { curve } => Prepared::Invariants(check_curve(curve)?),
            Command::Classify { curve, prime } => {
                let c = check_curve(curve)?;
                if !picardcm_core::exact::is_probable_prime(prime) {
                    return Err(Error::NotPrime(prime.to_string()));
                }
                Prepared::Classify(c, prime.clone())
            }
            Command::ClassPoly { points } => {
                if points.is_empty() {
                    return Err(Error::OutOfRange("no points given".into()));
                }
                Prepared::ClassPoly(points.clone())
            }
            Command::ConstantB { field_poly } => Prepared::ConstantB(SexticField::new(field_from_coeffs(field_poly)?)),
            Command::VerifyExamples { ids, threads } => {
                if *threads == Some(0) {
                    return Err(Error::OutOfRange("--parallel must be at least 1".into()));
                }
                crate::examples::select_examples(ids)?;
                Prepared::VerifyExamples(
                    ids.clone(),
                    BoundOptions {
                        threads: *threads,
                        alt_isogeny: false,
                    },
                )
            }
        })
    }
}

/// Validates the job, then runs it. An `Err` is a validation failure.
pub fn run(spec: &JobSpec) -> Result<JobOutput> {
    let prepared = spec.prepare()?;
    let ok = |json: Value, table: String| JobOutput {
        status: Status::Success,
        json,
        table,
        timing_ms: None,
    };
    match prepared {
        Prepared::Bound(job) => {
            let BoundJob { sextic, order, mu, opts } = *job;
            let cert = compute_n_mu(&sextic, &order, &mu, &opts)?;
            let mut t = String::new();
            let survivors = cert.survivors().count();
            let _ = writeln!(t, "field       {}", sextic.base().describe());
            let _ = writeln!(t, "order disc  {}", order.disc());
            let _ = writeln!(t, "mu          {}", mu);
            let _ = writeln!(t, "t1 a1 N     {} {} {}", cert.data.t1, cert.data.a1, cert.data.n);
            let _ = writeln!(t, "t2          {}", cert.data.t2);
            let _ = writeln!(t, "t2^3        {}", cert.t2_cubed);
            let _ = writeln!(t, "candidates  {} ({} survive)", cert.tuples.len(), survivors);
            let _ = writeln!(t, "N_mu        {}", cert.n_mu);
            let _ = writeln!(t, "6 N_mu      {}", cert.six_n_mu);
            let primes: Vec<String> = cert.prime_set.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(t, "primes      {}", primes.join(" "));
            let _ = writeln!(t, "\n   m    x    a  n");
            for c in cert.survivors() {
                let mark = if c.counted { "*" } else { "" };
                let _ = writeln!(t, "{:>4} {:>4} {:>4}  {}{}", c.m, c.x, c.a, c.n, mark);
            }
            let mut js = to_json(&cert);
            js["order_disc"] = Value::String(order.disc().to_string());
            Ok(ok(js, t))
        }
        Prepared::FindMu { field, cap } => {
            let o_plus = maximal_order(&field);
            let bounds = minkowski_bounds(o_plus.disc())?;
            let cap = cap.unwrap_or_else(|| bounds.t2_bound.clone());
            let cands = find_mu(&field, &o_plus, Some(cap.clone()))?;
            let mut t = String::new();
            let _ = writeln!(t, "field       {}", field.describe());
            let _ = writeln!(t, "disc O+     {}", o_plus.disc());
            let _ = writeln!(t, "t2 bound    {}", bounds.t2_bound);
            let _ = writeln!(t, "cap         {}", cap);
            let _ = writeln!(t, "\n{:>6}  {:<28} t1 a1 N", "t2", "mu");
            for c in &cands {
                let coeffs: Vec<String> = c.minpoly_coeffs.iter().map(|z| z.to_string()).collect();
                let mu = format!("[{}]", coords_to_strings(&c.mu.coords).join(", "));
                let _ = writeln!(t, "{:>6}  {:<28} {}", c.t2, mu, coeffs.join(" "));
            }
            let js = json!({
                "field_poly": coords_to_strings(&field.coefficients().clone().map(Q::from_integer)),
                "disc": o_plus.disc().to_string(),
                "bounds": to_json(&bounds),
                "cap": cap.to_string(),
                "candidates": to_json(&cands),
            });
            Ok(ok(js, t))
        }
        Prepared::Invariants(cur) => {
            let inv = invariants(&cur);
            let dens = absolute_denominators(&cur)?;
            let mut t = String::new();
            let names = ["j1", "j2", "j3", "kw1", "kw2", "i1", "i2", "i3", "i4", "i5"];
            for (n, v) in names.iter().zip(inv.values()) {
                let _ = writeln!(t, "{:<14}{}", n, v.map_or_else(|| "undefined".into(), |x| fmt_q(&x)));
            }
            let _ = writeln!(t, "{:<14}{}", "delta", fmt_q(&inv.delta));
            for (n, d) in [
                ("den_abs", &dens.den_abs),
                ("den_kw_abs", &dens.den_kw_abs),
                ("den_delta_abs", &dens.den_delta_abs),
            ] {
                let _ = writeln!(t, "{:<14}{}", n, d.as_ref().map_or_else(|| "undefined".into(), |x| x.to_string()));
            }
            let mut js = json!({
                "curve": to_json(&cur),
                "invariants": to_json(&inv),
                "denominators": to_json(&dens),
            });
            if let Ok(v) = den_abs_valuation_form(&cur) {
                js["den_abs_valuation_form"] = to_json(&v);
            }
            Ok(ok(js, t))
        }
        Prepared::Classify(cur, p) => {
            let v = classify_reduction(&cur, &p)?;
            let case = serde_json::to_value(v.case).expect("serializable");
            let mut t = String::new();
            let _ = writeln!(t, "prime       {}", v.prime);
            let _ = writeln!(t, "case        {}", case.as_str().unwrap_or_default());
            let _ = writeln!(t, "m0          {}", v.m0);
            let attained: String = v.attained_by.iter().collect();
            let _ = writeln!(t, "attained by {}", attained);
            if let Some(a) = &v.abar_squared {
                let _ = writeln!(t, "abar^2      {} mod {}", a, v.prime);
            }
            let _ = writeln!(t, "reason      {}", v.reason);
            Ok(ok(to_json(&v), t))
        }
        Prepared::ClassPoly(points) => {
            let cp = class_polynomials(&points)?;
            let d1 = FactoredNumber::from_integer(&cp.den_h1)?;
            let d2 = FactoredNumber::from_integer(&cp.den_h2hat)?;
            let mut t = String::new();
            let _ = writeln!(t, "H1     {}", cp.h1_poly());
            let _ = writeln!(t, "H2hat  {}", cp.h2hat_poly());
            let _ = writeln!(t, "den H1     {}", d1);
            let _ = writeln!(t, "den H2hat  {}", d2);
            let mut js = to_json(&cp);
            js["den_h1_factored"] = to_json(&d1);
            js["den_h2hat_factored"] = to_json(&d2);
            Ok(ok(js, t))
        }
        Prepared::ConstantB(sextic) => {
            let order = sextic_maximal_order(&sextic);
            let b = compute_b(&sextic, &order)?;
            let val = Q::new(b.b.pow(10u32), Z::from(8));
            let (m, e) = scientific(&val, 2);
            let approx = format!("{}.{}e{}", &m / Z::from(10), &m % Z::from(10), e);
            let mut t = String::new();
            let _ = writeln!(t, "field       {}", sextic.base().describe());
            let _ = writeln!(t, "B           {}", b.b);
            let _ = writeln!(t, "B^10/8      {}", approx);
            let _ = writeln!(t, "minimizer   [{}]", coords_to_strings(&b.minimizer).join(", "));
            let mut js = to_json(&b);
            js["b10_over_8"] = Value::String(fmt_q(&val));
            js["b10_over_8_approx"] = Value::String(approx);
            Ok(ok(js, t))
        }
        Prepared::VerifyExamples(ids, opts) => {
            let out = verify_examples(&ids, &opts)?;
            let mut t = String::new();
            for ex in &out.report.examples {
                let ms = out.timings_ms.iter().find(|(i, _)| *i == ex.id).map_or(0, |x| x.1);
                let verdict = if ex.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(t, "example {}: {} ({} checks, {} ms)", ex.id, verdict, ex.checks.len(), ms);
                for c in ex.failures() {
                    let _ = writeln!(t, "  {}: expected {}, computed {}", c.name, c.expected, c.computed);
                }
            }
            let timing: serde_json::Map<String, Value> = out
                .timings_ms
                .iter()
                .map(|(i, ms)| (i.to_string(), Value::from(*ms as u64)))
                .collect();
            Ok(JobOutput {
                status: if out.report.pass { Status::Success } else { Status::Mismatch },
                json: to_json(&out.report),
                table: t,
                timing_ms: Some(Value::Object(timing)),
            })
        }
    }
}
