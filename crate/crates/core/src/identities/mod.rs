//! The identity catalogue: executable left- and right-hand sides, the
//! verification engine, and closed forms used by the proofs.

pub mod builders;
pub mod limits;
pub mod proof_support;
pub mod tables;
pub mod tail;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfunctions::{qpochhammer_inf, ExponentFamily, MParam};
use crate::series::Series;
use builders::ThetaFamily;
use tables::{P_RHO2, P_RHO3, P_RHO4};

pub use tail::{tail_series, tail_sum, SummandExtras, TailSpec};
pub use verify::{
    verify, verify_pair, verify_theta_with_table, Mismatch, ReportParams, Status,
    VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    EulerBilateral,
    EulerUnilateral,
    AndrewsMerca,
    Kolitsch,
    Yao,
    XiaYeeZhao,
    ThmNaturalreplace,
    ThmAnothernatural,
    ThmInfinite,
    Rho3,
    Rho4,
    LimitNaturalreplace,
    LimitInfinite,
}

/// How an identity uses the parameter `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MUsage {
    Unused,
    /// Any positive integer or the formal symbol.
    IntegerOrSymbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub needs_k: bool,
    pub m: MUsage,
    /// The printed left side divides by `(q^m;q)_inf`.
    pub divides_by_qm: bool,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::EulerBilateral,
        IdentityId::EulerUnilateral,
        IdentityId::AndrewsMerca,
        IdentityId::Kolitsch,
        IdentityId::Yao,
        IdentityId::XiaYeeZhao,
        IdentityId::ThmNaturalreplace,
        IdentityId::ThmAnothernatural,
        IdentityId::ThmInfinite,
        IdentityId::Rho3,
        IdentityId::Rho4,
        IdentityId::LimitNaturalreplace,
        IdentityId::LimitInfinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::EulerBilateral => "euler_bilateral",
            IdentityId::EulerUnilateral => "euler_unilateral",
            IdentityId::AndrewsMerca => "andrews_merca",
            IdentityId::Kolitsch => "kolitsch",
            IdentityId::Yao => "yao",
            IdentityId::XiaYeeZhao => "xia_yee_zhao",
            IdentityId::ThmNaturalreplace => "thm_naturalreplace",
            IdentityId::ThmAnothernatural => "thm_anothernatural",
            IdentityId::ThmInfinite => "thm_infinite",
            IdentityId::Rho3 => "rho3",
            IdentityId::Rho4 => "rho4",
            IdentityId::LimitNaturalreplace => "limit_naturalreplace",
            IdentityId::LimitInfinite => "limit_infinite",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::EulerBilateral => {
                "(q;q)_inf = 1 + sum_{n>=1} (-1)^n q^(n(3n+1)/2) (1 + q^-n)"
            }
            IdentityId::EulerUnilateral => {
                "(q;q)_inf = sum_{n>=0} (-1)^n q^(n(3n+1)/2) (1 - q^(2n+1))"
            }
            IdentityId::AndrewsMerca => "truncated pentagonal sum over (q;q)_inf, rho(k) = k+1",
            IdentityId::Kolitsch => "rho(k) = k+m with (q^(j+1);q)_(k-j) weights",
            IdentityId::Yao => "rho(k) = k+m with (1 - q^(2j+m)) weights",
            IdentityId::XiaYeeZhao => "rho(k) = k+2 with (1-q^(j+1))(1-q^(2j+2)) weights",
            IdentityId::ThmNaturalreplace => "pentagonal partial sums against the [n-2, k-1] tail",
            IdentityId::ThmAnothernatural => "tail divided by the q-bracket [n+1]_q",
            IdentityId::ThmInfinite => "rho(k) = 2k+m with a 4-term truncation polynomial",
            IdentityId::Rho3 => "rho(k) = 3k+m with an 8-term truncation polynomial",
            IdentityId::Rho4 => "rho(k) = 4k+m with a 16-term truncation polynomial",
            IdentityId::LimitNaturalreplace => "sum_j (-1)^j q^(j(3j-1)/2)(1+q^j) = 1 + (q;q)_inf",
            IdentityId::LimitInfinite => "the rho(k) = 2k+m sum as k -> inf equals (q^m;q)_inf",
        }
    }

    pub fn signature(self) -> Signature {
        use IdentityId::*;
        let needs_k = !matches!(
            self,
            EulerBilateral | EulerUnilateral | LimitNaturalreplace | LimitInfinite
        );
        let m = match self {
            Kolitsch | Yao | ThmInfinite | Rho3 | Rho4 | LimitInfinite => MUsage::IntegerOrSymbolic,
            _ => MUsage::Unused,
        };
        let divides_by_qm = matches!(self, Kolitsch | Yao | ThmInfinite | Rho3 | Rho4);
        Signature {
            needs_k,
            m,
            divides_by_qm,
        }
    }

    pub(crate) fn theta_family(self) -> Option<ThetaFamily> {
        let (step, exponent, table) = match self {
            IdentityId::ThmInfinite | IdentityId::LimitInfinite => {
                (2, ExponentFamily::Rho2, P_RHO2)
            }
            IdentityId::Rho3 => (3, ExponentFamily::Rho3, P_RHO3),
            IdentityId::Rho4 => (4, ExponentFamily::Rho4, P_RHO4),
            _ => return None,
        };
        Some(ThetaFamily {
            step,
            exponent,
            table,
        })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Parameters of one identity instance. `cleared` multiplies both sides
/// through by `(q^m;q)_inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub k: Option<i64>,
    pub m: Option<MParam>,
    pub cleared: bool,
}

impl Params {
    pub const NONE: Params = Params {
        k: None,
        m: None,
        cleared: false,
    };

    pub fn k(k: i64) -> Self {
        Params {
            k: Some(k),
            ..Params::NONE
        }
    }

    pub fn km(k: i64, m: MParam) -> Self {
        Params {
            k: Some(k),
            m: Some(m),
            cleared: false,
        }
    }

    pub fn m(m: MParam) -> Self {
        Params {
            m: Some(m),
            ..Params::NONE
        }
    }

    pub fn with_cleared(self, cleared: bool) -> Self {
        Params { cleared, ..self }
    }

    /// The form `verify` uses by default: cleared exactly when `m` is
    /// symbolic and the identity divides by `(q^m;q)_inf`.
    pub fn auto_form(self, id: IdentityId) -> Self {
        let cleared = id.signature().divides_by_qm && matches!(self.m, Some(MParam::Symbolic));
        self.with_cleared(cleared)
    }

    /// Checks the parameters against the identity's signature.
    pub fn validate(&self, id: IdentityId) -> Result<()> {
        let sig = id.signature();
        match (sig.needs_k, self.k) {
            (true, None) => {
                return Err(Error::InvalidArgument(format!("{id} needs a parameter k")))
            }
            (true, Some(k)) if k < 1 => {
                return Err(Error::InvalidArgument(format!(
                    "k must be positive, got {k}"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidArgument(format!("{id} takes no parameter k")))
            }
            _ => {}
        }
        match (sig.m, self.m) {
            (MUsage::Unused, Some(_)) => {
                Err(Error::InvalidArgument(format!("{id} takes no parameter m")))
            }
            (MUsage::IntegerOrSymbolic, None) => {
                Err(Error::InvalidArgument(format!("{id} needs a parameter m")))
            }
            (_, Some(MParam::Numeric(0))) => Err(Error::DivergentProduct),
            (_, Some(MParam::Numeric(m))) if m < 0 => Err(Error::InvalidArgument(format!(
                "m must be a positive integer, got {m}"
            ))),
            _ if self.cleared && !sig.divides_by_qm => Err(Error::InvalidArgument(format!(
                "{id} has no (q^m;q)_inf denominator to clear"
            ))),
            _ => Ok(()),
        }
    }
}

fn need_k(p: &Params) -> i64 {
    p.k.expect("validated")
}

fn need_m(p: &Params) -> MParam {
    p.m.expect("validated")
}

/// The left-hand side of `id` through `order`.
pub fn lhs_series(id: IdentityId, params: Params, order: i64) -> Result<Series> {
    params.validate(id)?;
    let p = &params;
    match id {
        IdentityId::EulerBilateral | IdentityId::EulerUnilateral => Ok(builders::euler_lhs(order)),
        IdentityId::AndrewsMerca => builders::andrews_merca_lhs(need_k(p), order),
        IdentityId::Kolitsch => builders::kolitsch_lhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::Yao => builders::yao_lhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::XiaYeeZhao => builders::xia_yee_zhao_lhs(need_k(p), order),
        IdentityId::ThmNaturalreplace => {
            Ok(builders::naturalreplace_lhs(need_k(p)).truncate(order))
        }
        IdentityId::ThmAnothernatural => builders::anothernatural_lhs(need_k(p), order),
        IdentityId::ThmInfinite | IdentityId::Rho3 | IdentityId::Rho4 => id
            .theta_family()
            .unwrap()
            .lhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::LimitNaturalreplace => Ok(builders::limit_naturalreplace_lhs(order)),
        IdentityId::LimitInfinite => {
            let family = id.theta_family().unwrap();
            builders::theta_partial_sum(
                family.step,
                family.exponent,
                family.table,
                None,
                need_m(p),
                order,
            )
        }
    }
}

/// The right-hand side of `id` through `order`.
pub fn rhs_series(id: IdentityId, params: Params, order: i64) -> Result<Series> {
    params.validate(id)?;
    let p = &params;
    match id {
        IdentityId::EulerBilateral => Ok(builders::euler_bilateral_rhs(order)),
        IdentityId::EulerUnilateral => Ok(builders::euler_unilateral_rhs(order)),
        IdentityId::AndrewsMerca => builders::andrews_merca_rhs(need_k(p), order),
        IdentityId::Kolitsch => builders::kolitsch_rhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::Yao => builders::yao_rhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::XiaYeeZhao => builders::xia_yee_zhao_rhs(need_k(p), order),
        IdentityId::ThmNaturalreplace => builders::naturalreplace_rhs(need_k(p), order),
        IdentityId::ThmAnothernatural => builders::anothernatural_rhs(need_k(p), order),
        IdentityId::ThmInfinite | IdentityId::Rho3 | IdentityId::Rho4 => id
            .theta_family()
            .unwrap()
            .rhs(need_k(p), need_m(p), order, p.cleared),
        IdentityId::LimitNaturalreplace => Ok(builders::limit_naturalreplace_rhs(order)),
        IdentityId::LimitInfinite => qpochhammer_inf(need_m(p).base(0), order),
    }
}
