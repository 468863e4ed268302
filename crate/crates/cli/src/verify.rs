use rayon::prelude::*;

use qtrunc::identities::{verify, IdentityId, MUsage, Params, VerificationReport};

use crate::output::{finish, sink, write_line};
use crate::ranges::{IntRange, MSpec};
use crate::{Failure, Format, VerifyArgs};

const DEFAULT_K: IntRange = IntRange { lo: 1, hi: 3 };
const DEFAULT_M: MSpec = MSpec::Range(IntRange { lo: 1, hi: 2 });

/// Every `(identity, params)` pair requested, in input order.
fn tasks(args: &VerifyArgs) -> Result<Vec<(IdentityId, Params)>, Failure> {
    if args.order < 1 {
        return Err(Failure::Usage(format!(
            "order must be at least 1, got {}",
            args.order
        )));
    }
    let ids: Vec<IdentityId> = if args.all {
        IdentityId::ALL.to_vec()
    } else if args.ids.is_empty() {
        return Err(Failure::Usage("give --id or --all".into()));
    } else {
        args.ids
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    let ks: Vec<i64> = args.k.unwrap_or(DEFAULT_K).values().collect();
    let ms = args.m.unwrap_or(DEFAULT_M).values();
    let mut out = Vec::new();
    for id in ids {
        let sig = id.signature();
        let k_values: Vec<Option<i64>> = if sig.needs_k {
            ks.iter().map(|&k| Some(k)).collect()
        } else {
            vec![None]
        };
        let m_values: Vec<_> = match sig.m {
            MUsage::Unused => vec![None],
            MUsage::IntegerOrSymbolic => ms.iter().map(|&m| Some(m)).collect(),
        };
        for &k in &k_values {
            for &m in &m_values {
                let params = Params {
                    k,
                    m,
                    cleared: false,
                }
                .auto_form(id);
                params.validate(id)?;
                out.push((id, params));
            }
        }
    }
    Ok(out)
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    let tasks = tasks(args)?;
    let reports: Vec<Result<VerificationReport, qtrunc::Error>> = tasks
        .par_iter()
        .map(|&(id, params)| verify(id, params, args.order))
        .collect();
    let mut out = sink(&args.output)?;
    let mut failed = 0;
    for report in reports {
        let mut report = report?;
        if !args.output.timing {
            report.millis = None;
        }
        if !report.passed() {
            failed += 1;
        }
        let line = match args.output.format {
            Format::Json => report.to_json(),
            Format::Text => report.summary(),
        };
        write_line(&mut *out, &line)?;
    }
    finish(out)?;
    if failed > 0 {
        return Err(Failure::Failed(format!(
            "{failed} of {} checks failed",
            tasks.len()
        )));
    }
    Ok(())
}
