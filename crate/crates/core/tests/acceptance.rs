//! Acceptance criteria 1 to 11, one PASS/FAIL line each. Run with
//! `cargo test -p qtrunc-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};
use rayon::prelude::*;

use qtrunc::identities::limits::limit_check;
use qtrunc::identities::proof_support::{
    basecase_f, closed_partial_sum, f_series, gk_closed, qpartial_fraction_check,
    qpartial_fraction_polynomial, solve_constants,
};
use qtrunc::identities::tables::{flip_sign, PTerm, P_RHO2, P_RHO3, P_RHO4};
use qtrunc::identities::{
    builders, lhs_series, rhs_series, verify, verify_theta_with_table, IdentityId, Params,
};
use qtrunc::qfunctions::{qpochhammer_inf, MParam, PochhammerBase};
use qtrunc::telescoping::{
    annihilation_crosscheck, compare_up_to_factor, find_certificate, printed_certificate,
    printed_certificate_json, verify_certificate, verify_sum_recurrence, Bounds, Certificate, Grid,
    QHyperTerm,
};
use qtrunc::{Error, Series, EXACT};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn same(label: &str, a: &Series, b: &Series, upto: i64) -> Result<(), String> {
    match a.first_difference(b, upto) {
        None => Ok(()),
        Some((m, x, y)) => fail(format!("{label}: differ at {m:?} ({x} vs {y})")),
    }
}

fn verify_all(tasks: &[(IdentityId, Params)], order: i64) -> Outcome {
    let failures: Vec<String> = tasks
        .par_iter()
        .map(|&(id, params)| verify(id, params.auto_form(id), order))
        .filter_map(|r| match r {
            Ok(report) if report.passed() => None,
            Ok(report) => Some(report.summary()),
            Err(e) => Some(e.to_string()),
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} instances at N = {order}", tasks.len()))
    } else {
        fail(failures.join("; "))
    }
}

fn grid(
    ids: &[IdentityId],
    ks: std::ops::RangeInclusive<i64>,
    ms: Option<std::ops::RangeInclusive<i64>>,
) -> Vec<(IdentityId, Params)> {
    let mut out = Vec::new();
    for &id in ids {
        for k in ks.clone() {
            match &ms {
                None => out.push((id, Params::k(k))),
                Some(ms) => out.extend(ms.clone().map(|m| (id, Params::km(k, MParam::Numeric(m))))),
            }
        }
    }
    out
}

// 1
fn euler() -> Outcome {
    let n = 1000;
    let product = qpochhammer_inf(PochhammerBase::q(1), n).map_err(err)?;
    same("bilateral", &product, &builders::euler_bilateral_rhs(n), n)?;
    same(
        "unilateral",
        &product,
        &builders::euler_unilateral_rhs(n),
        n,
    )?;
    if product.order() < n {
        return fail(format!("product only exact through q^{}", product.order()));
    }
    Ok(format!(
        "(q;q)_inf against both pentagonal forms through q^{n}"
    ))
}

// 2
fn partial_sums() -> Outcome {
    for m in 0..=50 {
        let pair = closed_partial_sum(m, EXACT).map_err(err)?;
        if pair.defining != pair.closed {
            return fail(format!("M = {m}: {} vs {}", pair.defining, pair.closed));
        }
    }
    Ok("exact polynomial equality for M = 0..=50".into())
}

// 3
fn catalogue() -> Outcome {
    use IdentityId::*;
    let mut tasks = vec![
        (EulerBilateral, Params::NONE),
        (EulerUnilateral, Params::NONE),
    ];
    tasks.extend(grid(
        &[
            AndrewsMerca,
            XiaYeeZhao,
            ThmNaturalreplace,
            ThmAnothernatural,
        ],
        1..=8,
        None,
    ));
    tasks.extend(grid(&[Kolitsch, Yao], 1..=6, Some(1..=5)));
    tasks.extend(grid(&[ThmInfinite, Rho3, Rho4], 1..=6, Some(1..=4)));
    verify_all(&tasks, 200)
}

// 4
fn symbolic_m() -> Outcome {
    use IdentityId::*;
    let order = 60;
    let ids = [Kolitsch, Yao, ThmInfinite, Rho3, Rho4];
    let tasks: Vec<_> = ids
        .iter()
        .flat_map(|&id| (1..=4).map(move |k| (id, Params::km(k, MParam::Symbolic))))
        .collect();
    verify_all(&tasks, order)?;
    let mut compared = 0;
    for &(id, params) in &tasks {
        let symbolic = params.auto_form(id);
        let lhs = lhs_series(id, symbolic, order).map_err(err)?;
        let rhs = rhs_series(id, symbolic, order).map_err(err)?;
        for m in 1..=3 {
            let numeric =
                Params::km(params.k.unwrap(), MParam::Numeric(m)).with_cleared(symbolic.cleared);
            let label = format!("{id} k = {} m = {m}", params.k.unwrap());
            let lhs_m = lhs_series(id, numeric, order).map_err(err)?;
            let rhs_m = rhs_series(id, numeric, order).map_err(err)?;
            same(&format!("{label} lhs"), &lhs.substitute_t(m), &lhs_m, order)?;
            same(&format!("{label} rhs"), &rhs.substitute_t(m), &rhs_m, order)?;
            compared += 1;
        }
    }
    Ok(format!(
        "{} symbolic instances at N = {order}; {compared} t -> q^m substitutions coherent",
        tasks.len()
    ))
}

fn certificate_check(
    id: &str,
    term: &QHyperTerm,
    size: i64,
    ms: &[Option<i64>],
    ks: std::ops::RangeInclusive<i64>,
    order: i64,
) -> Outcome {
    let cert = printed_certificate(id).map_err(err)?;
    let report = verify_certificate(term, &cert, Grid::square(size)).map_err(err)?;
    if !report.passed() {
        return fail(report.summary());
    }
    for &m in ms {
        let rec = verify_sum_recurrence(term, m, &cert, ks.clone(), order).map_err(err)?;
        if !rec.passed() || rec.degenerate {
            return fail(format!("recurrence at m = {m:?} failed or is degenerate"));
        }
    }
    Ok(format!(
        "{} grid points, grid sufficient: {}, symbolic residual zero: {}; recurrence k = {}..={} at N = {order}",
        report.points_checked,
        report.grid_sufficient,
        report.symbolic_identity,
        ks.start(),
        ks.end()
    ))
}

// 5
fn naturalreplace_certificate() -> Outcome {
    certificate_check(
        "thm_naturalreplace",
        &QHyperTerm::naturalreplace(),
        12,
        &[None],
        1..=8,
        150,
    )
}

// 6
fn infinite_certificate() -> Outcome {
    certificate_check(
        "thm_infinite",
        &QHyperTerm::infinite(),
        8,
        &[Some(1), Some(2), Some(3)],
        1..=6,
        120,
    )
}

// 7
fn proof_support() -> Outcome {
    for which in [1, 2] {
        let pair = basecase_f(which, 200).map_err(err)?;
        if !pair.agrees() || pair.order() < 200 {
            return fail(format!(
                "f({which}) closed form disagrees (order {})",
                pair.order()
            ));
        }
    }
    // g(k) carries q^-k and 1/q^4 factors, so the constants need headroom
    // for g(k) to be exact through q^150.
    let constants = solve_constants(150 + 2 * 8 + 8).map_err(err)?;
    for k in 3..=8 {
        let g = gk_closed(k, &constants, 150).map_err(err)?;
        let f = f_series(k, 150).map_err(err)?;
        same(&format!("g({k}) vs f({k})"), &g, &f, 150)?;
        if g.order() < 150 {
            return fail(format!("g({k}) only exact through q^{}", g.order()));
        }
    }
    for j in 0..=10 {
        let report = qpartial_fraction_check(j, 120).map_err(err)?;
        if !report.passed() || !qpartial_fraction_polynomial(j) {
            return fail(report.summary());
        }
    }
    Ok(
        "f(1), f(2) to N = 200; g(k) = f(k) for k = 3..=8 to N = 150; partial fractions j = 0..=10"
            .into(),
    )
}

fn rediscover(id: &str, term: &QHyperTerm, ms: &[Option<i64>]) -> Result<String, String> {
    let found: Certificate =
        find_certificate(id, term, 2, Bounds::default_for(term)).map_err(err)?;
    let printed = printed_certificate(id).map_err(err)?;
    let cmp = compare_up_to_factor(&found, &printed);
    let factor = match (cmp.matches, cmp.factor) {
        (true, Some(f)) => f,
        _ => {
            return fail(format!(
                "{id}: discovered certificate is not a multiple of the shipped one"
            ))
        }
    };
    for &m in ms {
        let check = annihilation_crosscheck(&found, term, m, 1..=4, 60).map_err(err)?;
        if !check.passed() || check.degenerate {
            return fail(format!("{id}: crosscheck failed at m = {m:?}"));
        }
    }
    Ok(format!("{id} printed/found = {factor}"))
}

// 8
fn rediscovery() -> Outcome {
    let a = rediscover("thm_naturalreplace", &QHyperTerm::naturalreplace(), &[None])?;
    let b = rediscover("thm_infinite", &QHyperTerm::infinite(), &[Some(1), Some(2)])?;
    let term = QHyperTerm::infinite();
    match find_certificate("thm_infinite", &term, 1, Bounds::default_for(&term)) {
        Err(Error::NotFound(_)) => Ok(format!("{a}; {b}; order 1 NotFound")),
        Ok(_) => fail("order-1 search unexpectedly found a certificate"),
        Err(e) => fail(e.to_string()),
    }
}

// 9
fn limits() -> Outcome {
    let report = limit_check(IdentityId::LimitNaturalreplace, None, 10, 200).map_err(err)?;
    if !report.passed() {
        return fail(format!(
            "valuations {:?} against bounds {:?}",
            report.valuations, report.bounds
        ));
    }
    let infinite = verify(
        IdentityId::LimitInfinite,
        Params::m(MParam::Numeric(1)),
        200,
    )
    .map_err(err)?;
    if !infinite.passed() {
        return fail(infinite.summary());
    }
    Ok(format!(
        "valuations {:?}; limit_infinite at m = 1 through q^200",
        report.valuations
    ))
}

/// A mutated table must fail somewhere on `k = 1..=3`, `m = 1..=2`.
fn table_run_fails(id: IdentityId, table: &[PTerm]) -> Result<bool, String> {
    for k in 1..=3 {
        for m in 1..=2 {
            let report = verify_theta_with_table(id, table, Params::km(k, MParam::Numeric(m)), 120)
                .map_err(err)?;
            if !report.passed() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

// 10
fn mutations() -> Outcome {
    let tables = [
        (IdentityId::ThmInfinite, P_RHO2),
        (IdentityId::Rho3, P_RHO3),
        (IdentityId::Rho4, P_RHO4),
    ];
    let mut silent = Vec::new();
    let mut runs = 0;
    for (id, table) in tables {
        if table_run_fails(id, table)? {
            return fail(format!("unmutated {id} table fails"));
        }
        for (i, row) in table.iter().enumerate() {
            runs += 1;
            if !table_run_fails(id, &flip_sign(table, i))? {
                silent.push(format!("{id} row {i} ({})", row.display));
            }
        }
    }

    let json = printed_certificate_json("thm_infinite").map_err(err)?;
    let term = QHyperTerm::infinite();
    let mut sites: Vec<(bool, usize, usize, usize)> = Vec::new();
    sites.extend(
        json.r_num
            .locations()
            .into_iter()
            .map(|(f, l, t, _)| (true, f, l, t)),
    );
    sites.extend(
        json.r_den
            .locations()
            .into_iter()
            .map(|(f, l, t, _)| (false, f, l, t)),
    );
    let outcomes: Vec<Result<Option<String>, String>> = sites
        .par_iter()
        .map(|&(num, f, l, t)| {
            let mut mutated = json.clone();
            if num {
                mutated.r_num = json.r_num.flip_sign(f, l, t);
            } else {
                mutated.r_den = json.r_den.flip_sign(f, l, t);
            }
            let cert = mutated.to_certificate().map_err(err)?;
            let report = verify_certificate(&term, &cert, Grid::square(8)).map_err(err)?;
            let localized =
                !report.residual_failures.is_empty() || !report.relation_failures.is_empty();
            Ok(if report.passed() || !localized {
                Some(format!(
                    "R {} factor {f} line {l} term {t}",
                    if num { "num" } else { "den" }
                ))
            } else {
                None
            })
        })
        .collect();
    for o in outcomes {
        if let Some(s) = o? {
            silent.push(s);
        }
    }
    runs += sites.len();
    if silent.is_empty() {
        Ok(format!(
            "{runs} single-sign mutations, all FAIL with localized grid points"
        ))
    } else {
        fail(format!("silent PASS for {}", silent.join(", ")))
    }
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> common::Check,
) -> Result<(), String> {
    let config = Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner
        .run(&strategy, |v| test(v).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

// 11
fn properties() -> Outcome {
    for n in 0..=30 {
        for k in 0..=n {
            common::qbinomial_laws(n, k)?;
        }
    }
    for n in 2..=20 {
        for k in 1..n {
            common::reduction_identities(n, k, 60)?;
        }
    }
    run_property(
        "Pochhammer recurrence",
        (common::pochhammer_base(), 0u32..14, 20i64..120),
        |(a, n, order)| common::pochhammer_recurrence(a, n, order),
    )?;
    run_property(
        "ring axioms",
        (
            common::sparse_series(),
            common::sparse_series(),
            common::sparse_series(),
        ),
        |(a, b, c)| common::ring_axioms(&a, &b, &c),
    )?;
    run_property(
        "truncation locality",
        (
            common::sparse_series(),
            common::sparse_series(),
            common::perturbation(),
        ),
        |(a, b, bump)| common::truncation_locality(&a, &b, &bump),
    )?;
    run_property("invert contract", common::unit_series(), |a| {
        common::invert_contract(&a)
    })?;
    for k in 1..=8 {
        common::negative_exponents_cancel(k, 120)?;
    }
    Ok("q-binomial laws n <= 30, Pochhammer recurrence, ring axioms, locality, inverse, negative-exponent cancellation".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Euler product against pentagonal sums", euler),
        ("partial-sum closed form", partial_sums),
        ("catalogue matrix", catalogue),
        ("symbolic m", symbolic_m),
        ("[n-2, k-1] certificate", naturalreplace_certificate),
        ("rho = 2k + m certificate", infinite_certificate),
        ("proof-support closed forms", proof_support),
        ("certificate rediscovery", rediscovery),
        ("limits", limits),
        ("mutation sensitivity", mutations),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
