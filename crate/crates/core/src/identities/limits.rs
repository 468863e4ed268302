//! Valuations of partial sums against their `k -> inf` limits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::builders::{minus_partial_sum, theta_partial_sum};
use crate::identities::{rhs_series, IdentityId, Params};
use crate::qfunctions::MParam;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub id: String,
    pub order: i64,
    /// `v(k)` for `k = 1..=K`; `None` when the difference vanishes through `order`.
    pub valuations: Vec<Option<i64>>,
    /// The lower bound each `v(k)` must meet.
    pub bounds: Vec<i64>,
    pub nondecreasing: bool,
    pub bounds_met: bool,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.nondecreasing && self.bounds_met
    }
}

/// Computes `v(k)` for `k = 1..=cutoff`. `order` must reach the bound at
/// `cutoff` so that a difference vanishing through `order` still certifies it.
pub fn limit_check(
    id: IdentityId,
    m: Option<MParam>,
    cutoff: i64,
    order: i64,
) -> Result<LimitReport> {
    let bound: fn(i64) -> i64 = match id {
        IdentityId::LimitNaturalreplace => |k| k * (3 * k - 1) / 2,
        IdentityId::LimitInfinite => |k| k * (5 * k - 1) / 2,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{id} is not a limit identity"
            )))
        }
    };
    if cutoff < 1 {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be positive, got {cutoff}"
        )));
    }
    if order + 1 < bound(cutoff) {
        return Err(Error::InvalidArgument(format!(
            "order {order} cannot certify the valuation bound {} at k = {cutoff}",
            bound(cutoff)
        )));
    }
    let params = match id {
        IdentityId::LimitNaturalreplace => Params::NONE,
        _ => Params::m(m.ok_or_else(|| Error::InvalidArgument(format!("{id} needs m")))?),
    };
    let limit = rhs_series(id, params, order)?;
    let mut valuations = Vec::new();
    for k in 1..=cutoff {
        let partial = match id {
            IdentityId::LimitNaturalreplace => minus_partial_sum(k).truncate(order),
            _ => {
                let family = id.theta_family().expect("limit_infinite has a family");
                theta_partial_sum(
                    family.step,
                    family.exponent,
                    family.table,
                    Some(k),
                    params.m.unwrap(),
                    order,
                )?
            }
        };
        valuations.push(partial.sub(&limit).truncate(order).valuation());
    }
    let effective: Vec<i64> = valuations.iter().map(|v| v.unwrap_or(order + 1)).collect();
    let bounds: Vec<i64> = (1..=cutoff).map(bound).collect();
    Ok(LimitReport {
        id: id.name().to_string(),
        order,
        nondecreasing: effective.windows(2).all(|w| w[0] <= w[1]),
        bounds_met: effective.iter().zip(&bounds).all(|(v, b)| v >= b),
        valuations,
        bounds,
    })
}
