//! Exact checks of a certificate against its term and against the sums it
//! annihilates.

use std::ops::RangeInclusive;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::verify_pair;
use crate::identities::{ReportParams, Status, SummandExtras, VerificationReport};
use crate::qfunctions::MParam;
use crate::series::{Series, EXACT};
use crate::telescoping::certificate::Certificate;
use crate::telescoping::mpoly::{MPoly, RationalFunction, RationalValue, X, Y};
use crate::telescoping::term::QHyperTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub n: (i64, i64),
    pub k: (i64, i64),
}

impl Grid {
    /// `{1..size} x {1..size}`.
    pub fn square(size: i64) -> Self {
        Grid {
            n: (1, size),
            k: (1, size),
        }
    }

    fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.n.0..=self.n.1).flat_map(move |n| (self.k.0..=self.k.1).map(move |k| (n, k)))
    }

    fn n_count(&self) -> i64 {
        (self.n.1 - self.n.0 + 1).max(0)
    }

    fn k_count(&self) -> i64 {
        (self.k.1 - self.k.0 + 1).max(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub point: (i64, i64),
    pub replacement: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub id: String,
    pub grid: Grid,
    pub status: Status,
    /// The cleared residual is the zero polynomial.
    pub symbolic_identity: bool,
    /// Exponent spans in `x` and `y` bounding the cleared residual before
    /// cancellation.
    pub residual_span_x: i64,
    pub residual_span_y: i64,
    /// The grid has more distinct `n` than `span_x` and more distinct `k`
    /// than `span_y`, so vanishing on it proves the identity.
    pub grid_sufficient: bool,
    pub points_checked: usize,
    /// Grid points where the cleared residual does not vanish.
    pub residual_failures: Vec<(i64, i64)>,
    /// Points where the undivided relation on the term's exact values fails.
    pub relation_failures: Vec<(i64, i64)>,
    pub skipped: Vec<Skipped>,
    pub millis: Option<u64>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn summary(&self) -> String {
        let mut line = format!(
            "{} certificate {} on n in {}..={}, k in {}..={}: {} points, residual spans (x {}, y {}), grid {}sufficient, symbolic identity {}",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            },
            self.id,
            self.grid.n.0,
            self.grid.n.1,
            self.grid.k.0,
            self.grid.k.1,
            self.points_checked,
            self.residual_span_x,
            self.residual_span_y,
            if self.grid_sufficient { "" } else { "not " },
            if self.symbolic_identity { "holds" } else { "fails" },
        );
        if !self.residual_failures.is_empty() {
            line.push_str(&format!(
                "; residual nonzero at {:?}",
                self.residual_failures
            ));
        }
        if !self.relation_failures.is_empty() {
            line.push_str(&format!("; relation fails at {:?}", self.relation_failures));
        }
        if !self.skipped.is_empty() {
            line.push_str(&format!("; skipped {:?}", self.skipped));
        }
        line
    }
}

/// The cleared residual of
/// `sum_i p_i prod_(j < r-i) shift_n(q^j x) - (R(x, q y) shift_k - R)`
/// and the exponent spans of its summands before cancellation.
pub fn cleared_residual(term: &QHyperTerm, cert: &Certificate) -> (MPoly, i64, i64) {
    let r = cert.order();
    let r1 = term.shift_n();
    let mut pieces: Vec<RationalFunction> = Vec::new();
    for (i, p) in cert.p.iter().enumerate() {
        let shift = r - i;
        let mut piece = RationalFunction::poly(p.clone());
        for j in 0..shift {
            let f = r1.q_shift(X, j as i64);
            piece = RationalFunction {
                num: piece.num.mul(&f.num),
                den: piece.den.mul(&f.den),
            };
        }
        pieces.push(piece);
    }
    let s1 = term.shift_k();
    let up = cert.r.q_shift(Y, 1);
    pieces.push(RationalFunction {
        num: up.num.mul(&s1.num).neg(),
        den: up.den.mul(&s1.den),
    });
    pieces.push(cert.r.clone());

    let mut dens: Vec<MPoly> = Vec::new();
    for p in &pieces {
        if !dens.contains(&p.den) {
            dens.push(p.den.clone());
        }
    }
    let mut residual = MPoly::zero();
    let (mut lo, mut hi) = ([i64::MAX; 2], [i64::MIN; 2]);
    for p in &pieces {
        let own = dens.iter().position(|d| *d == p.den).unwrap();
        let cofactor = MPoly::product(
            dens.iter()
                .enumerate()
                .filter(|(i, _)| *i != own)
                .map(|(_, d)| d),
        );
        let product = p.num.mul(&cofactor);
        for (v, var) in [X, Y].into_iter().enumerate() {
            if let (Some(a), Some(b)) = (product.min_degree(var), product.max_degree(var)) {
                lo[v] = lo[v].min(a);
                hi[v] = hi[v].max(b);
            }
        }
        residual = residual.add(&product);
    }
    let span = |v: usize| if hi[v] >= lo[v] { hi[v] - lo[v] } else { 0 };
    (residual, span(0), span(1))
}

fn eval_p(cert: &Certificate, n: i64) -> Result<Vec<RationalValue>> {
    cert.p
        .iter()
        .map(|p| Ok(RationalValue::from_series(p.eval_xy(n, 0)?)))
        .collect()
}

enum Anchor {
    Holds(bool),
    /// `R` has a pole where the term vanishes.
    Undefined,
}

/// The undivided relation at `(n, k)` on the term's exact values.
fn anchor_relation(term: &QHyperTerm, cert: &Certificate, n: i64, k: i64) -> Result<Anchor> {
    let r = cert.order();
    let ps = eval_p(cert, n)?;
    let mut lhs = RationalValue::zero();
    for (i, p) in ps.iter().enumerate() {
        let shift = (r - i) as i64;
        lhs = lhs.add(&p.mul(&term.anchor(n + shift, k)?));
    }
    let mut g = Vec::new();
    for kk in [k, k + 1] {
        let t = term.anchor(n, kk)?;
        match cert.r.eval_xy(n, kk) {
            Ok(rv) => g.push(rv.mul(&t)),
            Err(Error::PoleOnGrid { .. }) if t.is_zero() => return Ok(Anchor::Undefined),
            Err(e) => return Err(e),
        }
    }
    let rhs = g[1].sub(&g[0]);
    Ok(Anchor::Holds(lhs.equals(&rhs)))
}

/// Checks the certificate relation symbolically and at every grid point.
pub fn verify_certificate(
    term: &QHyperTerm,
    cert: &Certificate,
    grid: Grid,
) -> Result<CertificateReport> {
    let started = Instant::now();
    let (residual, span_x, span_y) = cleared_residual(term, cert);
    let mut residual_failures = Vec::new();
    let mut relation_failures = Vec::new();
    let mut skipped = Vec::new();
    let mut checked = 0;
    for (n, k) in grid.points() {
        term.check_domain(n, k)?;
        checked += 1;
        if !residual.eval_xy(n, k)?.is_zero() {
            residual_failures.push((n, k));
        }
        match anchor_relation(term, cert, n, k)? {
            Anchor::Holds(true) => {}
            Anchor::Holds(false) => relation_failures.push((n, k)),
            Anchor::Undefined => {
                let mut kk = grid.k.1;
                let outcome = loop {
                    kk += 1;
                    if skipped.iter().any(|s: &Skipped| s.replacement == (n, kk)) {
                        continue;
                    }
                    if let Anchor::Holds(ok) = anchor_relation(term, cert, n, kk)? {
                        break ok;
                    }
                };
                skipped.push(Skipped {
                    point: (n, k),
                    replacement: (n, kk),
                });
                if !outcome {
                    relation_failures.push((n, kk));
                }
            }
        }
    }
    let symbolic_identity = residual.is_zero();
    let ok = symbolic_identity && residual_failures.is_empty() && relation_failures.is_empty();
    Ok(CertificateReport {
        id: cert.id.clone(),
        grid,
        status: if ok { Status::Pass } else { Status::Fail },
        symbolic_identity,
        residual_span_x: span_x,
        residual_span_y: span_y,
        grid_sufficient: grid.n_count() > span_x && grid.k_count() > span_y,
        points_checked: checked,
        residual_failures,
        relation_failures,
        skipped,
        millis: Some(started.elapsed().as_millis() as u64),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub id: String,
    pub order: i64,
    pub status: Status,
    /// All recurrence polynomials vanish, so the check is vacuous.
    pub degenerate: bool,
    pub per_k: Vec<VerificationReport>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `f(k) = sum_n T(k, n)` in the original roles, i.e. the signed tail sum.
pub fn sum_f(term: &QHyperTerm, k: i64, order: i64) -> Result<Series> {
    let extras = SummandExtras {
        bracket: term.bracket > 0,
    };
    if term.bracket > 1 {
        return Err(Error::InvalidArgument(
            "only a single q-bracket is supported".into(),
        ));
    }
    let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
    Ok(crate::identities::tail::tail_sum_with(&term.tail, k, order, extras)?.scale_int(sign))
}

/// Checks `sum_i p_i(q^k) f(k + r - i) = 0` through `order` for each `k`.
/// A numeric `m` replaces a formal one in both the term and the certificate.
pub fn verify_sum_recurrence(
    term: &QHyperTerm,
    m: Option<i64>,
    cert: &Certificate,
    ks: RangeInclusive<i64>,
    order: i64,
) -> Result<RecurrenceReport> {
    let mut term = *term;
    let mut cert = cert.clone();
    if let Some(m) = m {
        if m < 1 {
            return Err(Error::InvalidArgument(format!(
                "m must be positive, got {m}"
            )));
        }
        if term.tail.shift.is_symbolic() {
            term.tail.shift = MParam::Numeric(m);
        }
        cert.p = cert.p.iter().map(|p| p.substitute_t(m)).collect();
    }
    let r = cert.order() as i64;
    let degenerate = cert.is_degenerate();
    let mut per_k = Vec::new();
    for k in ks {
        let started = Instant::now();
        let ps: Vec<Series> = cert
            .p
            .iter()
            .map(|p| p.eval_xy(k, 0))
            .collect::<Result<_>>()?;
        let pad = ps
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| -p.min_q_exp())
            .max()
            .unwrap_or(0)
            .max(0);
        let work = order + pad;
        let mut combo = Series::zero(EXACT);
        for (i, p) in ps.iter().enumerate() {
            let f = sum_f(&term, k + r - i as i64, work)?;
            combo = combo.add(&p.mul(&f));
        }
        let params = ReportParams {
            k: Some(k),
            m: m.map(MParam::Numeric).or(if term.tail.shift.is_symbolic() {
                Some(MParam::Symbolic)
            } else {
                None
            }),
            cleared: false,
        };
        let zero = Series::zero(order);
        let mut report = verify_pair(
            &format!("{}:recurrence", cert.id),
            params,
            &combo.truncate(order),
            &zero,
            order,
            started,
        );
        if combo.order() < order {
            report.status = Status::Fail;
            report.note = Some(format!(
                "combination only exact through q^{}",
                combo.order()
            ));
        }
        per_k.push(report);
    }
    let ok = per_k.iter().all(|r| r.passed());
    Ok(RecurrenceReport {
        id: cert.id.clone(),
        order,
        status: if ok { Status::Pass } else { Status::Fail },
        degenerate,
        per_k,
    })
}

/// A discovered certificate must annihilate the actual sums.
pub fn annihilation_crosscheck(
    found: &Certificate,
    term: &QHyperTerm,
    m: Option<i64>,
    ks: RangeInclusive<i64>,
    order: i64,
) -> Result<RecurrenceReport> {
    verify_sum_recurrence(term, m, found, ks, order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorComparison {
    pub matches: bool,
    /// `printed / found`, when the two agree up to a common factor.
    pub factor: Option<RationalFunction>,
}

/// Whether `printed = lambda * found` for a single rational function
/// `lambda` in `(q, t)`, componentwise in `p` and in `R`.
pub fn compare_up_to_factor(found: &Certificate, printed: &Certificate) -> FactorComparison {
    let no = FactorComparison {
        matches: false,
        factor: None,
    };
    if found.p.len() != printed.p.len() {
        return no;
    }
    let Some(pivot) = (0..printed.p.len()).find(|&i| !printed.p[i].is_zero()) else {
        return no;
    };
    let (fp, pp) = (&found.p[pivot], &printed.p[pivot]);
    if fp.is_zero() {
        return no;
    }
    let p_ok = found
        .p
        .iter()
        .zip(&printed.p)
        .all(|(f, p)| f.mul(pp) == p.mul(fp));
    let r_ok = found.r.num.mul(&printed.r.den).mul(pp) == printed.r.num.mul(&found.r.den).mul(fp);
    // lambda(q x) = lambda(x) forces lambda to be free of x; p has no y.
    let lambda_free_of_xy = fp.mul(&pp.q_shift(X, 1)) == fp.q_shift(X, 1).mul(pp);
    let lambda = if let Some(f) = pp.div_exact(fp) {
        RationalFunction::poly(f)
    } else if let Some(d) = fp.div_exact(pp) {
        RationalFunction {
            num: MPoly::one(),
            den: d,
        }
    } else {
        RationalFunction {
            num: pp.clone(),
            den: fp.clone(),
        }
    };
    if p_ok && r_ok && lambda_free_of_xy {
        FactorComparison {
            matches: true,
            factor: Some(lambda),
        }
    } else {
        no
    }
}

/// `v_q(G(n, k))` for `k` in `ks`: the telescoping boundary terms.
pub fn boundary_valuations(
    term: &QHyperTerm,
    cert: &Certificate,
    n: i64,
    ks: RangeInclusive<i64>,
    order: i64,
) -> Result<Vec<Option<i64>>> {
    ks.map(|k| {
        let g = cert.r.eval_xy(n, k)?.mul(&term.anchor(n, k)?);
        Ok(g.to_series(order)?.valuation())
    })
    .collect()
}
