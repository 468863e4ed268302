//! Certificates `(p_1, ..., p_(r+1), R)` and their JSON form.
//!
//! `p_1` multiplies the highest shift: for order 2 the relation is
//! `p1 T(n+2,k) + p2 T(n+1,k) + p3 T(n,k) = G(n,k+1) - G(n,k)`, `G = R T`.

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::telescoping::mpoly::{Exps, MPoly, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub id: String,
    /// Recurrence polynomials in `(q, x, t)`, highest shift first.
    pub p: Vec<MPoly>,
    pub r: RationalFunction,
}

impl Certificate {
    pub fn order(&self) -> usize {
        self.p.len().saturating_sub(1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.p.iter().all(MPoly::is_zero)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            id: self.id.clone(),
            order: self.order(),
            p: self.p.iter().map(PolyJson::from_poly).collect(),
            r_num: PolyJson::from_poly(&self.r.num),
            r_den: PolyJson::from_poly(&self.r.den),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificates serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Certificate> {
        let json: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        json.to_certificate()
    }
}

/// `{"factors": [{"lines": [{"source", "terms": [[coef, q, x, y, t], ...]}]}]}`:
/// a product of factors, each the sum of its lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub lines: Vec<LineJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub source: String,
    pub terms: Vec<TermJson>,
}

/// `[coefficient, q_exp, x_exp, y_exp, t_exp]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson(pub String, pub i64, pub i64, pub i64, pub i64);

impl TermJson {
    fn exps(&self) -> Exps {
        [self.1, self.2, self.3, self.4]
    }
}

impl PolyJson {
    pub fn from_poly(p: &MPoly) -> PolyJson {
        let terms = p
            .terms()
            .map(|(e, c)| TermJson(c.to_fraction_string(), e[0], e[1], e[2], e[3]))
            .collect();
        PolyJson {
            factors: vec![FactorJson {
                lines: vec![LineJson {
                    source: "computed".into(),
                    terms,
                }],
            }],
        }
    }

    pub fn to_poly(&self) -> Result<MPoly> {
        let mut acc = MPoly::one();
        for f in &self.factors {
            let mut sum = Vec::new();
            for line in &f.lines {
                for t in &line.terms {
                    let c: Coefficient = t.0.parse()?;
                    sum.push((t.exps(), c));
                }
            }
            acc = acc.mul(&MPoly::from_terms(sum));
        }
        Ok(acc)
    }

    /// Every monomial with its `(factor, line, term)` position and source.
    pub fn locations(&self) -> Vec<(usize, usize, usize, &str)> {
        let mut out = Vec::new();
        for (fi, f) in self.factors.iter().enumerate() {
            for (li, l) in f.lines.iter().enumerate() {
                for ti in 0..l.terms.len() {
                    out.push((fi, li, ti, l.source.as_str()));
                }
            }
        }
        out
    }

    /// A copy with the sign of one monomial flipped.
    pub fn flip_sign(&self, factor: usize, line: usize, term: usize) -> PolyJson {
        let mut out = self.clone();
        let t = &mut out.factors[factor].lines[line].terms[term];
        t.0 = if let Some(rest) = t.0.strip_prefix('-') {
            rest.to_string()
        } else {
            format!("-{}", t.0)
        };
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub id: String,
    pub order: usize,
    pub p: Vec<PolyJson>,
    pub r_num: PolyJson,
    pub r_den: PolyJson,
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<Certificate> {
        if self.p.len() != self.order + 1 {
            return Err(Error::Parse(format!(
                "order {} needs {} recurrence polynomials, found {}",
                self.order,
                self.order + 1,
                self.p.len()
            )));
        }
        let p = self
            .p
            .iter()
            .map(PolyJson::to_poly)
            .collect::<Result<Vec<_>>>()?;
        if p.iter()
            .any(|pi| pi.max_degree(crate::telescoping::mpoly::Y).unwrap_or(0) != 0)
        {
            return Err(Error::Parse(
                "recurrence polynomials must not involve y".into(),
            ));
        }
        let r = RationalFunction::new(self.r_num.to_poly()?, self.r_den.to_poly()?)?;
        Ok(Certificate {
            id: self.id.clone(),
            p,
            r,
        })
    }
}

const NATURALREPLACE: &str = include_str!("../../data/thm_naturalreplace.json");
const INFINITE: &str = include_str!("../../data/thm_infinite.json");

/// The shipped certificate for `id`, as transcribed.
pub fn printed_certificate_json(id: &str) -> Result<CertificateJson> {
    let text = match id {
        "thm_naturalreplace" => NATURALREPLACE,
        "thm_infinite" => INFINITE,
        other => {
            return Err(Error::InvalidArgument(format!(
                "no shipped certificate for {other}"
            )))
        }
    };
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn printed_certificate(id: &str) -> Result<Certificate> {
    printed_certificate_json(id)?.to_certificate()
}
