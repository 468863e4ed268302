use std::str::FromStr;

use qtrunc::qfunctions::MParam;

/// `A..B` (inclusive) or a single integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| format!("not an integer: {v:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

/// Values of `m`: an integer range or the formal symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MSpec {
    Range(IntRange),
    Symbolic,
}

impl MSpec {
    pub fn values(&self) -> Vec<MParam> {
        match self {
            MSpec::Range(r) => r.values().map(MParam::Numeric).collect(),
            MSpec::Symbolic => vec![MParam::Symbolic],
        }
    }
}

impl FromStr for MSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            Ok(MSpec::Symbolic)
        } else {
            s.parse().map(MSpec::Range)
        }
    }
}

pub fn parse_m(s: &str) -> Result<MParam, String> {
    match s.parse::<MSpec>()? {
        MSpec::Symbolic => Ok(MParam::Symbolic),
        MSpec::Range(r) if r.lo == r.hi => Ok(MParam::Numeric(r.lo)),
        MSpec::Range(_) => Err(format!("expected a single m, got {s:?}")),
    }
}
