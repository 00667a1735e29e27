//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::process::ExitCode;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use picardcm::examples::{load_examples, ExampleRecord};
use picardcm::verify::{compute_example, ExampleComputation};
use picardcm_core::bound_engine::{
    compute_n_mu, derive_efb, iota_mu, n_mu_from_tuples, BoundOptions, MuData,
};
use picardcm_core::exact::{parse_factored_expr, q, qf, qz, FactoredNumber, Matrix3, Q, Z};
use picardcm_core::lattice_search::{box_points, enumerate_short_vectors, scientific, GramMatrix};
use picardcm_core::linalg::inverse;
use picardcm_core::number_fields::order::{
    check_ring, imaginary_sublattice, is_p_maximal, square_dividing_primes,
};
use picardcm_core::number_fields::poly::dedekind_p_maximal;
use picardcm_core::number_fields::sextic::conjugate_vec;
use picardcm_core::number_fields::{
    maximal_order, sextic_maximal_order, Algebra, CubicField, FieldElement, OrderBasis, SexticField,
};
use picardcm_core::picard::{
    absolute_denominators, classify_reduction, invariants, PicardCurve, ReductionCase,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(v: i64) -> Z {
    Z::from(v)
}

fn fx(s: &str) -> FactoredNumber {
    parse_factored_expr(s).expect("well-formed factored literal")
}

fn rat(s: &str) -> Q {
    fx(s).to_rational().expect("rational literal")
}

struct Computed {
    rec: ExampleRecord,
    comp: ExampleComputation,
}

fn n_mu_matches(all: &[Computed], ids: &[u32]) -> Outcome {
    let mut parts = Vec::new();
    for id in ids {
        let c = all.iter().find(|c| c.rec.id == *id).expect("example present");
        let expected = c.rec.expected_n_mu().map_err(|e| e.to_string())?;
        ensure(c.comp.certificate.n_mu == expected, || {
            format!("example {id}: expected {expected}, computed {}", c.comp.certificate.n_mu)
        })?;
        parts.push(format!("example {id}: N_mu = {expected}"));
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Outcome {
    let cur = PicardCurve::new(qz(&z(-2 * 49 * 13)), qz(&z(8 * 5 * 13 * 47)), qz(&z(-25 * 169 * 31)))
        .map_err(|e| e.to_string())?;
    let inv = invariants(&cur);
    let expected = [
        ("j1", inv.j1.clone(), rat("-7^6 * 13/(2^3 * 5^2 * 47^2)")),
        ("j2", inv.j2.clone(), rat("7^2 * 13 * 31/(2^5 * 47^2)")),
        ("j3", inv.j3.clone(), rat("-5^2 * 13^2 * 31^3/(2^12 * 47^4)")),
    ];
    for (name, got, want) in &expected {
        ensure(got.as_ref() == Some(want), || format!("{name}: got {got:?}, want {want}"))?;
    }
    let d = absolute_denominators(&cur).map_err(|e| e.to_string())?;
    ensure(d.den_abs == Some(fx("2^3 * 5 * 47")), || format!("den_abs = {:?}", d.den_abs))?;
    ensure(d.den_kw_abs == Some(fx("(2^3 * 7^6 * 13)^(1/2)")), || format!("den_kw_abs = {:?}", d.den_kw_abs))?;
    Ok("j1, j2, j3 exact; den_abs = 2^3 * 5 * 47; den_KW_abs = (2^3 * 7^6 * 13)^(1/2)".into())
}

fn criterion_6() -> Outcome {
    let (a, b, c) = (z(-2 * 49 * 13), z(8 * 5 * 13 * 47), z(-25 * 169 * 31));
    let cur = PicardCurve::new(qz(&a), qz(&b), qz(&c)).map_err(|e| e.to_string())?;
    let case_at = |p: i64| classify_reduction(&cur, &z(p)).map_err(|e| e.to_string());
    let v5 = case_at(5)?;
    ensure(v5.case == ReductionCase::Two, || format!("p = 5: {:?}", v5.case))?;
    let v7 = case_at(7)?;
    ensure(v7.case == ReductionCase::None, || format!("p = 7: {:?}", v7.case))?;
    let v47 = case_at(47)?;
    ensure(v47.case == ReductionCase::Three, || format!("p = 47: {:?}", v47.case))?;
    let p = z(47);
    let abar2 = v47.abar_squared.clone().ok_or("no reduced model at 47")?;
    ensure(abar2 == (z(19) * z(19)).mod_floor(&p), || format!("abar^2 = {abar2}"))?;
    // Twist by alpha = sqrt(r), r = 11: a -> r^3 a, b -> r^4 alpha b, c -> r^6 c.
    let r = z(11);
    ensure(r.modpow(&z(23), &p) == &p - 1u32, || "11 is a square mod 47".into())?;
    let a_red = (r.pow(3u32) * &a).mod_floor(&p);
    let c_red = (r.pow(6u32) * &c).mod_floor(&p);
    let b_red = (r.pow(4u32) * &b).mod_floor(&p);
    ensure(a_red == z(19) && c_red == z(1) && b_red.is_zero(), || {
        format!("twisted model mod 47: ({a_red}, {b_red}, {c_red})")
    })?;
    Ok("case 2 at 5, none at 7, case 3 at 47 with reduction y^3 = x^4 + 19 x^2 + 1".into())
}

fn criterion_7(all: &[Computed]) -> Outcome {
    let mut checked = 0;
    for c in all {
        let dens = c.rec.law_denominators().map_err(|e| e.to_string())?;
        let six = &c.comp.certificate.six_n_mu;
        for (name, d) in &dens {
            for p in d.primes() {
                ensure(six.exponent(&p).is_positive(), || {
                    format!("example {}: prime {p} of {name} does not divide 6 N_mu", c.rec.id)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} denominator primes over examples 1-9 all divide 6 N_mu"))
}

fn criterion_8(all: &[Computed]) -> Outcome {
    for c in all {
        let cert = &c.comp.certificate;
        let cap = z(3).max(cert.t2_cubed.clone());
        let mp = cert.six_n_mu.primes().into_iter().max().unwrap_or_else(Z::one);
        ensure(mp <= cap, || format!("example {}: max prime {mp} > {cap}", c.rec.id))?;
        let t = c.comp.min_t2.clone().ok_or_else(|| format!("example {}: no mu found", c.rec.id))?;
        ensure(t <= c.comp.t2_bound, || {
            format!("example {}: minimal t2 {t} > {}", c.rec.id, c.comp.t2_bound)
        })?;
    }
    Ok("max prime of 6 N_mu <= max(3, t2^3) and minimal t2 within the Minkowski bound, examples 1-9".into())
}

/// `min Tr_{K+/Q}(x conj x)` over a box containing every lattice point with
/// value at most `bound`, away from the line `Q sqrt(-3)`.
fn naive_b(sextic: &SexticField, bound: &Z) -> Option<Z> {
    let order = sextic_maximal_order(sextic);
    let lat = imaginary_sublattice(&order).ok()?;
    let rows = lat.rows();
    let g: Vec<Vec<Q>> = rows
        .iter()
        .map(|x| rows.iter().map(|y| sextic.trace(&sextic.mul(x, &conjugate_vec(y))) / q(2)).collect())
        .collect();
    let inv = inverse(&g)?;
    let radii: Vec<Z> = (0..g.len())
        .map(|i| {
            let r2 = qz(bound) * &inv[i][i];
            (r2.to_integer()).sqrt() + 1
        })
        .collect();
    let mut best: Option<Z> = None;
    for v in box_points(&radii) {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let x = lat.combine(&v);
        let on_line = x[1].is_zero() && x[2].is_zero() && x[4].is_zero() && x[5].is_zero() && x[3] == &x[0] * q(2);
        if on_line {
            continue;
        }
        let val = sextic.trace(&sextic.mul(&x, &conjugate_vec(&x))) / q(2);
        if val <= qz(bound) {
            let val = val.to_integer();
            best = Some(best.map_or(val.clone(), |b: Z| b.min(val)));
        }
    }
    best
}

fn criterion_9(all: &[Computed]) -> Outcome {
    let mut parts = Vec::new();
    for c in all {
        let Some((m, e, digits)) = c.rec.b_approx_parts().map_err(|e| e.to_string())? else {
            continue;
        };
        let b = &c.comp.b;
        let (cm, ce) = scientific(&Q::new(b.pow(10u32), z(8)), digits);
        ensure(cm == m && ce == e, || {
            format!("example {}: B = {b} gives {cm}e{ce}, printed {m}e{e}", c.rec.id)
        })?;
        parts.push(format!("{}:{b}", c.rec.id));
    }
    let ex1 = all.iter().find(|c| c.rec.id == 1).ok_or("example 1 missing")?;
    let sextic = SexticField::new(ex1.rec.field().map_err(|e| e.to_string())?);
    let oracle = naive_b(&sextic, &ex1.comp.b).ok_or("oracle failed")?;
    ensure(oracle == ex1.comp.b && ex1.comp.b == z(15), || format!("oracle B = {oracle}"))?;
    Ok(format!("B per example {}; example 1 B = 15 confirmed by box enumeration", parts.join(" ")))
}

fn cayley_hamilton(mu: &MuData, m: &Matrix3<Q>) -> bool {
    let m2 = m * m;
    let m3 = &m2 * m;
    let r = &(&(&m3 - &m2.scale(&qz(&mu.t1))) + &m.scale(&qz(&mu.a1))) - &Matrix3::scalar(qz(&mu.n));
    r == Matrix3::zero()
}

fn property_iota(rng: &mut StdRng) -> Result<(), String> {
    for _ in 0..500 {
        let (t1, a1, n) = (z(rng.gen_range(-50..=50)), z(rng.gen_range(-50..=50)), z(rng.gen_range(-50..=50)));
        let t2 = &t1 * &t1 - z(2) * &a1;
        let mu = MuData { t1, a1, n, t2 };
        let (x, a) = (z(rng.gen_range(-30..=30)), z(rng.gen_range(-30..=30)));
        let (e, f, b) = derive_efb(&mu, &x, &a);
        let m = iota_mu(&x, &a, &b, &e, &f);
        ensure(cayley_hamilton(&mu, &m), || format!("Cayley-Hamilton fails for {mu:?}, x = {x}, a = {a}"))?;
        ensure((&m * &m).trace() == qz(&mu.t2), || format!("trace identity fails for {mu:?}"))?;
    }
    Ok(())
}

fn random_q(rng: &mut StdRng, lim: i64) -> Q {
    qf(rng.gen_range(-lim..=lim), rng.gen_range(1..=6))
}

fn property_scaling(rng: &mut StdRng) -> Result<(), String> {
    let mut done = 0;
    while done < 100 {
        let Ok(cur) = PicardCurve::new(random_q(rng, 40), random_q(rng, 40), random_q(rng, 40)) else {
            continue;
        };
        let l = random_q(rng, 9);
        if l.is_zero() {
            continue;
        }
        let scaled = cur.scale(&l);
        ensure(invariants(&cur).values() == invariants(&scaled).values(), || {
            format!("invariants change under scaling by {l} of {cur:?}")
        })?;
        ensure(absolute_denominators(&cur) == absolute_denominators(&scaled), || {
            format!("denominators change under scaling by {l} of {cur:?}")
        })?;
        done += 1;
    }
    Ok(())
}

fn property_fincke_pohst(rng: &mut StdRng) -> Result<(), String> {
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        // G = B^T B + I, so v^T G v >= |v|^2
        let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let g: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: i64 = (0..n).map(|k| b[k][i] * b[k][j]).sum();
                        q(s + i64::from(i == j))
                    })
                    .collect()
            })
            .collect();
        let gm = GramMatrix::new(g).map_err(|e| e.to_string())?;
        let bound = rng.gen_range(0..=30);
        let fast = enumerate_short_vectors(&gm, &q(bound));
        let r = z(bound).sqrt();
        let mut naive: Vec<Vec<Z>> = box_points(&vec![r; n])
            .into_iter()
            .filter(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
            .filter(|v| gm.eval(v) <= q(bound))
            .collect();
        naive.sort();
        ensure(fast == naive, || format!("enumeration differs for bound {bound}"))?;
    }
    Ok(())
}

fn property_orders(all: &[Computed]) -> Result<(), String> {
    for c in all {
        let field: CubicField = c.rec.field().map_err(|e| e.to_string())?;
        let o_plus = maximal_order(&field);
        check_ring(&field, o_plus.lattice()).map_err(|e| format!("example {}: {e}", c.rec.id))?;
        let f = field.min_poly();
        for p in square_dividing_primes(field.poly_disc()) {
            ensure(is_p_maximal(&field, &o_plus, &p), || format!("example {}: O+ not maximal at {p}", c.rec.id))?;
            if dedekind_p_maximal(&f, &p) {
                let idx = o_plus.index_of(&OrderBasis::equation_order(&field));
                ensure(idx.is_integer() && !(idx.to_integer() % &p).is_zero(), || {
                    format!("example {}: Dedekind certifies {p} but p divides [O+ : Z[a]] = {idx}", c.rec.id)
                })?;
            }
        }
        let sextic = SexticField::new(field.clone());
        let o = sextic_maximal_order(&sextic);
        check_ring(&sextic, o.lattice()).map_err(|e| format!("example {}: {e}", c.rec.id))?;
        for p in square_dividing_primes(o.disc()) {
            ensure(is_p_maximal(&sextic, &o, &p), || format!("example {}: O not maximal at {p}", c.rec.id))?;
        }
        ensure(o_plus.disc() == &c.comp.o_plus_disc, || "discriminant mismatch".into())?;
    }
    Ok(())
}

fn property_order_independence(rng: &mut StdRng, all: &[Computed]) -> Result<(), String> {
    for id in [1u32, 2, 5] {
        let c = all.iter().find(|c| c.rec.id == id).ok_or("example missing")?;
        let sextic = SexticField::new(c.rec.field().map_err(|e| e.to_string())?);
        let order = sextic_maximal_order(&sextic);
        let mu: FieldElement = c.rec.mu_element().map_err(|e| e.to_string())?;
        for threads in [Some(1), Some(3), None] {
            let opts = BoundOptions { threads, alt_isogeny: false };
            let cert = compute_n_mu(&sextic, &order, &mu, &opts).map_err(|e| e.to_string())?;
            ensure(cert == c.comp.certificate, || format!("example {id}: certificate depends on threads {threads:?}"))?;
        }
        let mut tuples = c.comp.certificate.tuples.clone();
        for _ in 0..5 {
            tuples.shuffle(rng);
            let n = n_mu_from_tuples(&tuples).map_err(|e| e.to_string())?;
            ensure(n == c.comp.certificate.n_mu, || format!("example {id}: N_mu depends on order"))?;
        }
    }
    Ok(())
}

fn criterion_10(all: &[Computed]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    property_iota(&mut rng)?;
    property_scaling(&mut rng)?;
    property_fincke_pohst(&mut rng)?;
    property_orders(all)?;
    property_order_independence(&mut rng, all)?;
    Ok("Cayley-Hamilton and trace on 500 cases; scaling on 100; Fincke-Pohst on 50 forms; \
        order certificates on 9 fields; order independence on 3 examples"
        .into())
}

fn main() -> ExitCode {
    let recs = load_examples().expect("example data").examples;
    let opts = BoundOptions::default();
    let all: Vec<Computed> = recs
        .into_iter()
        .map(|rec| {
            let comp = compute_example(&rec, &opts).expect("example computes");
            Computed { rec, comp }
        })
        .collect();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "N_mu of example 1", n_mu_matches(&all, &[1])),
        (2, "N_mu of example 2", n_mu_matches(&all, &[2])),
        (3, "N_mu of example 5 (not a cube)", n_mu_matches(&all, &[5])),
        (4, "N_mu of examples 3, 4, 6, 7", n_mu_matches(&all, &[3, 4, 6, 7])),
        (5, "invariants of the example curve", criterion_5()),
        (6, "reduction types of the example curve", criterion_6()),
        (7, "denominator primes divide 6 N_mu", criterion_7(&all)),
        (8, "bound law", criterion_8(&all)),
        (9, "constant B", criterion_9(&all)),
        (10, "property suites", criterion_10(&all)),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2}: PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
