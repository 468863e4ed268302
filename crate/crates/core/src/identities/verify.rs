use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::identities::builders::naturalreplace_rhs_alternative;
use crate::identities::tables::PTerm;
use crate::identities::{lhs_series, rhs_series, IdentityId, Params};
use crate::qfunctions::MParam;
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SymbolicTag {
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum MValue {
    Int(i64),
    Symbolic(SymbolicTag),
}

mod m_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<MParam>, s: S) -> Result<S::Ok, S::Error> {
        m.map(|m| match m {
            MParam::Numeric(v) => MValue::Int(v),
            MParam::Symbolic => MValue::Symbolic(SymbolicTag::Symbolic),
        })
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<MParam>, D::Error> {
        Ok(Option::<MValue>::deserialize(d)?.map(|v| match v {
            MValue::Int(v) => MParam::Numeric(v),
            MValue::Symbolic(_) => MParam::Symbolic,
        }))
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub k: Option<i64>,
    #[serde(with = "m_json")]
    pub m: Option<MParam>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub cleared: bool,
}

impl From<Params> for ReportParams {
    fn from(p: Params) -> Self {
        ReportParams {
            k: p.k,
            m: p.m,
            cleared: p.cleared,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub q_exp: i64,
    pub t_exp: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: ReportParams,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub millis: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// One line for terminal output.
    pub fn summary(&self) -> String {
        let mut params = Vec::new();
        if let Some(k) = self.params.k {
            params.push(format!("k={k}"));
        }
        if let Some(m) = self.params.m {
            params.push(format!("m={m}"));
        }
        if self.params.cleared {
            params.push("cleared".into());
        }
        let mut line = format!(
            "{} {} [{}] N={}",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            },
            self.id,
            params.join(", "),
            self.order
        );
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(
                " first mismatch at q^{} t^{}: lhs {} rhs {}",
                m.q_exp, m.t_exp, m.lhs, m.rhs
            ));
        }
        if let Some(ms) = self.millis {
            line.push_str(&format!(" ({ms} ms)"));
        }
        if let Some(note) = &self.note {
            line.push_str(&format!("; {note}"));
        }
        line
    }
}

/// Compares two series through `order` and packages the outcome.
pub fn verify_pair(
    id: &str,
    params: ReportParams,
    lhs: &Series,
    rhs: &Series,
    order: i64,
    started: Instant,
) -> VerificationReport {
    let first_mismatch = lhs.first_difference(rhs, order).map(|(m, l, r)| Mismatch {
        q_exp: m.q_exp,
        t_exp: m.t_exp,
        lhs: l.to_fraction_string(),
        rhs: r.to_fraction_string(),
    });
    VerificationReport {
        id: id.to_string(),
        params,
        order,
        status: if first_mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        first_mismatch,
        millis: Some(started.elapsed().as_millis() as u64),
        note: None,
    }
}

/// Builds both sides of `id` and compares them through `order`.
pub fn verify(id: IdentityId, params: Params, order: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let lhs = lhs_series(id, params, order)?;
    let rhs = rhs_series(id, params, order)?;
    let mut report = verify_pair(id.name(), params.into(), &lhs, &rhs, order, started);
    if id == IdentityId::ThmNaturalreplace && !report.passed() {
        let alt = naturalreplace_rhs_alternative(params.k.expect("validated"), order)?;
        let other = verify_pair(id.name(), params.into(), &lhs, &alt, order, started);
        report.note = Some(format!(
            "with (q;q)_inf multiplying only the leading 1: {}",
            match other.status {
                Status::Pass => "PASS".to_string(),
                Status::Fail => format!("FAIL at q^{}", other.first_mismatch.unwrap().q_exp),
            }
        ));
    }
    Ok(report)
}

/// Verifies a theta-type identity with a replacement truncation table,
/// e.g. a deliberately corrupted one.
pub fn verify_theta_with_table(
    id: IdentityId,
    table: &[PTerm],
    params: Params,
    order: i64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    params.validate(id)?;
    let family = id.theta_family().ok_or_else(|| {
        crate::error::Error::InvalidArgument(format!("{id} has no truncation table"))
    })?;
    let (k, m) = (params.k.expect("validated"), params.m.expect("validated"));
    let lhs = family.lhs_with_table(table, k, m, order, params.cleared)?;
    let rhs = family.rhs(k, m, order, params.cleared)?;
    Ok(verify_pair(
        id.name(),
        params.into(),
        &lhs,
        &rhs,
        order,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::tables::{flip_sign, P_RHO2};

    #[test]
    fn report_json_shape() {
        let report = verify(IdentityId::AndrewsMerca, Params::k(2), 20).unwrap();
        let mut value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        value["millis"] = serde_json::Value::Null;
        assert_eq!(
            value.to_string(),
            r#"{"first_mismatch":null,"id":"andrews_merca","millis":null,"order":20,"params":{"k":2,"m":null},"status":"PASS"}"#
        );
    }

    #[test]
    fn symbolic_m_serializes_as_string() {
        let params = ReportParams {
            k: Some(1),
            m: Some(MParam::Symbolic),
            cleared: true,
        };
        let text = serde_json::to_string(&params).unwrap();
        assert_eq!(text, r#"{"k":1,"m":"symbolic","cleared":true}"#);
        assert_eq!(serde_json::from_str::<ReportParams>(&text).unwrap(), params);
    }

    #[test]
    fn corrupted_table_fails() {
        let bad = flip_sign(P_RHO2, 1);
        let report = verify_theta_with_table(
            IdentityId::ThmInfinite,
            &bad,
            Params::km(2, MParam::Numeric(1)),
            40,
        )
        .unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.first_mismatch.is_some());
    }

    #[test]
    fn status_matches_mismatch() {
        let report = verify(IdentityId::EulerBilateral, Params::NONE, 50).unwrap();
        assert!(report.passed() && report.first_mismatch.is_none());
    }
}
