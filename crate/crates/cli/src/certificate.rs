use std::path::PathBuf;

use serde_json::json;

use qtrunc::identities::IdentityId;
use qtrunc::qfunctions::MParam;
use qtrunc::telescoping::discover::default_seed;
use qtrunc::telescoping::{
    annihilation_crosscheck, compare_up_to_factor, printed_certificate, search, verify_certificate,
    verify_sum_recurrence, Bounds, Certificate, Grid, QHyperTerm, RecurrenceReport,
};

use crate::output::{finish, sink, write_line};
use crate::ranges::{IntRange, MSpec};
use crate::{CheckArgs, DiscoverArgs, Failure, Format};

fn term_for(id: &str) -> Result<(IdentityId, QHyperTerm), Failure> {
    let id: IdentityId = id.parse()?;
    let term = QHyperTerm::for_identity(id)
        .ok_or_else(|| Failure::Usage(format!("{id} has no q-hypergeometric tail summand")))?;
    Ok((id, term))
}

/// The `m` values for a recurrence check: `None` alone when the term has no
/// formal `m`.
fn m_values(term: &QHyperTerm, spec: Option<MSpec>, default: MSpec) -> Vec<Option<i64>> {
    if !term.has_t() {
        return vec![None];
    }
    spec.unwrap_or(default)
        .values()
        .into_iter()
        .map(|m| match m {
            MParam::Numeric(v) => Some(v),
            MParam::Symbolic => None,
        })
        .collect()
}

fn strip_timing(report: &mut RecurrenceReport) {
    for r in &mut report.per_k {
        r.millis = None;
    }
}

fn recurrence_summary(report: &RecurrenceReport, m: Option<i64>) -> String {
    let ks: Vec<i64> = report.per_k.iter().filter_map(|r| r.params.k).collect();
    let mut line = format!(
        "{} recurrence {} [k={}..{}{}] N={}",
        if report.passed() { "PASS" } else { "FAIL" },
        report.id,
        ks.first().copied().unwrap_or(0),
        ks.last().copied().unwrap_or(0),
        m.map(|m| format!(", m={m}")).unwrap_or_default(),
        report.order
    );
    if report.degenerate {
        line.push_str(" DEGENERATE (all recurrence polynomials vanish)");
    }
    for r in report.per_k.iter().filter(|r| !r.passed()) {
        line.push_str(&format!("\n  {}", r.summary()));
    }
    line
}

fn load(args: &CheckArgs, id: IdentityId) -> Result<Certificate, Failure> {
    match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(Certificate::from_json_str(&text)?)
        }
        None => Ok(printed_certificate(id.name())?),
    }
}

pub fn check(args: &CheckArgs) -> Result<(), Failure> {
    let (id, term) = term_for(&args.id)?;
    let cert = load(args, id)?;
    let size = args.grid.unwrap_or(if term.has_t() { 8 } else { 12 });
    if size < 1 {
        return Err(Failure::Usage(format!(
            "grid size must be positive, got {size}"
        )));
    }
    let ks = args.k.unwrap_or(if term.has_t() {
        IntRange::new(1, 6)
    } else {
        IntRange::new(1, 8)
    });
    let mut report = verify_certificate(&term, &cert, Grid::square(size))?;
    if !args.output.timing {
        report.millis = None;
    }
    let mut ok = report.passed();
    let mut out = sink(&args.output)?;
    match args.output.format {
        Format::Json => write_line(
            &mut *out,
            &serde_json::to_string(&report).expect("serialize"),
        )?,
        Format::Text => write_line(&mut *out, &report.summary())?,
    }
    let ms = m_values(&term, args.m, MSpec::Range(IntRange::new(1, 3)));
    for m in ms {
        let mut rec = verify_sum_recurrence(&term, m, &cert, ks.lo..=ks.hi, args.order)?;
        if !args.output.timing {
            strip_timing(&mut rec);
        }
        ok &= rec.passed();
        let line = match args.output.format {
            Format::Json => serde_json::to_string(&rec).expect("serialize"),
            Format::Text => recurrence_summary(&rec, m),
        };
        write_line(&mut *out, &line)?;
    }
    finish(out)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed(String::new()))
    }
}

pub fn discover(args: &DiscoverArgs) -> Result<(), Failure> {
    let (id, term) = term_for(&args.id)?;
    let defaults = Bounds::default_for(&term);
    let bounds = Bounds::new(
        args.deg_p.unwrap_or(defaults.deg_p),
        args.deg_rx.unwrap_or(defaults.deg_rx),
        args.deg_ry.unwrap_or(defaults.deg_ry),
    );
    let outcome = search(
        id.name(),
        &term,
        args.order,
        bounds,
        default_seed(id.name()),
    )?;
    let mut out = sink(&args.output)?;
    let Some(found) = outcome.certificate.clone() else {
        match args.output.format {
            Format::Json => write_line(
                &mut *out,
                &json!({"id": id.name(), "order": args.order, "status": "NOT_FOUND", "attempts": outcome.attempts})
                    .to_string(),
            )?,
            Format::Text => write_line(
                &mut *out,
                &format!("NOT FOUND {} at recurrence order {}", id.name(), args.order),
            )?,
        }
        finish(out)?;
        return Err(Failure::Failed(format!(
            "rank profile: {}",
            outcome.diagnostics()
        )));
    };

    let path = args
        .write
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.certificate.json", id.name())));
    std::fs::write(&path, found.to_json_string() + "\n")
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;

    let comparison = printed_certificate(id.name())
        .ok()
        .map(|printed| compare_up_to_factor(&found, &printed));
    let factor = comparison
        .as_ref()
        .and_then(|c| c.factor.as_ref())
        .map(|f| f.to_string());

    let ks = args.k.unwrap_or(IntRange::new(1, 4));
    let mut checks = Vec::new();
    for m in m_values(&term, args.m, MSpec::Range(IntRange::new(1, 2))) {
        let mut rec = annihilation_crosscheck(&found, &term, m, ks.lo..=ks.hi, args.series_order)?;
        if !args.output.timing {
            strip_timing(&mut rec);
        }
        checks.push((m, rec));
    }
    let ok =
        checks.iter().all(|(_, r)| r.passed()) && comparison.as_ref().is_none_or(|c| c.matches);

    match args.output.format {
        Format::Json => {
            let value = json!({
                "id": id.name(),
                "order": args.order,
                "status": "FOUND",
                "attempts": outcome.attempts,
                "certificate_file": path.display().to_string(),
                "matches_printed": comparison.as_ref().map(|c| c.matches),
                "printed_over_found": factor,
                "crosscheck": checks.iter().map(|(_, r)| r).collect::<Vec<_>>(),
            });
            write_line(&mut *out, &value.to_string())?;
        }
        Format::Text => {
            write_line(
                &mut *out,
                &format!(
                    "FOUND {} at recurrence order {} ({}); written to {}",
                    id.name(),
                    args.order,
                    outcome.diagnostics(),
                    path.display()
                ),
            )?;
            for (i, p) in found.p.iter().enumerate() {
                write_line(&mut *out, &format!("  p{} = {}", i + 1, p))?;
            }
            write_line(&mut *out, &format!("  R = {}", found.r))?;
            if let Some(c) = &comparison {
                let text = match (&factor, c.matches) {
                    (Some(f), true) => {
                        format!("matches the shipped certificate: printed = ({f}) * found")
                    }
                    _ => "does NOT match the shipped certificate up to a factor in (q, t)"
                        .to_string(),
                };
                write_line(&mut *out, &format!("  {text}"))?;
            }
            for (m, rec) in &checks {
                write_line(&mut *out, &recurrence_summary(rec, *m))?;
            }
        }
    }
    finish(out)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed(String::new()))
    }
}
