use qtrunc::identities::{lhs_series, rhs_series, tail_series, IdentityId, Params, TailSpec};
use qtrunc::qfunctions::{euler_product, partition_gf};
use qtrunc::Series;

use crate::output::{finish, sink, write_line};
use crate::ranges::parse_m;
use crate::{ExpandArgs, Failure, Format};

fn build(args: &ExpandArgs) -> Result<Series, Failure> {
    if args.order < 1 {
        return Err(Failure::Usage(format!(
            "order must be at least 1, got {}",
            args.order
        )));
    }
    let m = args
        .m
        .as_deref()
        .map(parse_m)
        .transpose()
        .map_err(Failure::Usage)?;
    match args.name.as_str() {
        "euler_product" => Ok(euler_product(args.order)),
        "partition_gf" => Ok(partition_gf(args.order)),
        "tail" => {
            let k = args
                .k
                .ok_or_else(|| Failure::Usage("tail needs --k".into()))?;
            let shift = parse_m(&args.shift).map_err(Failure::Usage)?;
            let spec = TailSpec::new(args.slope, shift, args.ell1, args.ell2, args.start_n);
            Ok(tail_series(&spec, k, args.order)?)
        }
        other => {
            let (id, side) = other.rsplit_once('.').ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown series {other:?}; expected euler_product, partition_gf, tail or <identity>.lhs|rhs"
                ))
            })?;
            let id: IdentityId = id.parse()?;
            let params = Params {
                k: args.k,
                m,
                cleared: args.cleared,
            };
            match side {
                "lhs" => Ok(lhs_series(id, params, args.order)?),
                "rhs" => Ok(rhs_series(id, params, args.order)?),
                _ => Err(Failure::Usage(format!(
                    "side must be lhs or rhs, got {side:?}"
                ))),
            }
        }
    }
}

/// `q^e` or `q^e*t^j`.
fn label(q_exp: i64, t_exp: u32) -> String {
    if t_exp == 0 {
        format!("q^{q_exp}")
    } else {
        format!("q^{q_exp}*t^{t_exp}")
    }
}

pub fn run(args: &ExpandArgs) -> Result<(), Failure> {
    let series = build(args)?.truncate(args.order);
    let mut out = sink(&args.output)?;
    match args.output.format {
        Format::Json => {
            let json = serde_json::to_string(&series.to_json()).expect("series serialize");
            write_line(&mut *out, &json)?;
        }
        Format::Text => {
            for (m, c) in series.terms() {
                write_line(&mut *out, &format!("{:<16} {}", label(m.q_exp, m.t_exp), c))?;
            }
            if !series.is_exact() {
                write_line(&mut *out, &format!("O(q^{})", series.order() + 1))?;
            }
        }
    }
    finish(out)
}
