//! The tail sums
//! `1 + (-1)^(k-1) sum_{n >= start} q^(C(k,2) + rho(k) n) / (q;q)_(n+l2) * [n-l1, k-1]_q`
//! with `rho(k) = slope*k + shift`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfunctions::{qbinomial, MParam};
use crate::series::{Monomial, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSpec {
    pub slope: i64,
    /// The constant part of `rho(k)`; `Symbolic` means `rho(k) = slope*k + m`
    /// with `m` kept formal.
    pub shift: MParam,
    pub ell1: i64,
    pub ell2: i64,
    pub start_n: i64,
}

impl TailSpec {
    pub fn new(slope: i64, shift: MParam, ell1: i64, ell2: i64, start_n: i64) -> Self {
        TailSpec {
            slope,
            shift,
            ell1,
            ell2,
            start_n,
        }
    }

    /// `rho(k) = k + 1`, `l1 = 1`, `l2 = 0`: the Andrews-Merca tail.
    pub fn andrews_merca() -> Self {
        TailSpec::new(1, MParam::Numeric(1), 1, 0, 1)
    }

    pub fn validate(&self, k: i64) -> Result<()> {
        if !(1..=4).contains(&self.slope) {
            return Err(Error::InvalidArgument(format!(
                "slope {} outside 1..=4",
                self.slope
            )));
        }
        if self.ell1 < 1 || self.ell2 < 0 || self.start_n < 1 {
            return Err(Error::InvalidArgument(format!(
                "need l1 >= 1, l2 >= 0, start_n >= 1 (got {}, {}, {})",
                self.ell1, self.ell2, self.start_n
            )));
        }
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "k must be positive, got {k}"
            )));
        }
        if let MParam::Numeric(s) = self.shift {
            if self.slope * k + s < 1 {
                return Err(Error::InvalidArgument("rho(k) must be positive".into()));
            }
        }
        Ok(())
    }

    /// The monomial `q^(C(k,2) + rho(k) n)`, with the `m n` part on `t`.
    fn exponent(&self, k: i64, n: i64) -> Monomial {
        let base = k * (k - 1) / 2 + self.slope * k * n;
        match self.shift {
            MParam::Numeric(s) => Monomial::q(base + s * n),
            MParam::Symbolic => Monomial::new(base, n as u32),
        }
    }
}

/// Options for the summand's denominator beyond `(q;q)_(n+l2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SummandExtras {
    /// Also divide by the q-bracket `[n+1]_q`.
    pub bracket: bool,
}

/// The unsigned sum `sum_n q^(C(k,2) + rho(k) n) / (q;q)_(n+l2) [n-l1, k-1]_q`
/// through `order`.
pub fn tail_sum(spec: &TailSpec, k: i64, order: i64) -> Result<Series> {
    tail_sum_with(spec, k, order, SummandExtras::default())
}

pub fn tail_sum_with(spec: &TailSpec, k: i64, order: i64, extras: SummandExtras) -> Result<Series> {
    spec.validate(k)?;
    let mut total = Series::zero(order);
    // inv_poch = 1/(q;q)_j, advanced one factor at a time.
    let mut inv_poch = Series::one(order);
    let mut poch_len = 0;
    let mut n = spec.start_n;
    loop {
        let mono = spec.exponent(k, n);
        // The t-part and the binomial never lower the q-valuation.
        if mono.q_exp > order {
            break;
        }
        let binom = qbinomial(n - spec.ell1, k - 1);
        if !binom.is_zero() {
            while poch_len < n + spec.ell2 {
                poch_len += 1;
                inv_poch = inv_poch.div_one_minus_q(poch_len)?;
            }
            let budget = order - mono.q_exp;
            let mut term = inv_poch.truncate(budget);
            if extras.bracket {
                // 1/[n+1]_q = (1 - q)/(1 - q^(n+1))
                term = term
                    .div_one_minus_q(n + 1)?
                    .mul(&Series::q_polynomial(&[(0, 1), (1, -1)]));
            }
            term = term.mul(&binom).shift(mono);
            total = total.add(&term.truncate(order));
        }
        n += 1;
    }
    Ok(total.truncate(order))
}

/// `1 + (-1)^(k-1) * tail_sum`.
pub fn tail_series(spec: &TailSpec, k: i64, order: i64) -> Result<Series> {
    signed_tail(spec, k, order, SummandExtras::default())
}

pub fn signed_tail(spec: &TailSpec, k: i64, order: i64, extras: SummandExtras) -> Result<Series> {
    let sum = tail_sum_with(spec, k, order, extras)?;
    let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
    Ok(Series::one(order).add(&sum.scale_int(sign)))
}
