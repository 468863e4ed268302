//! q-Pochhammer symbols, Gaussian binomials, q-brackets and the exponent
//! families of the truncated theta sums.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::series::{Monomial, Series, EXACT};

/// The base `a = sign * q^q_exp * t^t_exp` of a Pochhammer symbol
/// `(a; q^step)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochhammerBase {
    pub sign: i8,
    pub q_exp: i64,
    pub t_exp: u32,
    pub step: i64,
}

impl PochhammerBase {
    /// `q^e` with step 1.
    pub fn q(e: i64) -> Self {
        PochhammerBase {
            sign: 1,
            q_exp: e,
            t_exp: 0,
            step: 1,
        }
    }

    /// `t * q^e` with step 1.
    pub fn tq(e: i64) -> Self {
        PochhammerBase {
            sign: 1,
            q_exp: e,
            t_exp: 1,
            step: 1,
        }
    }

    pub fn with_step(self, step: i64) -> Self {
        PochhammerBase { step, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidArgument(format!("base sign {}", self.sign)));
        }
        if self.q_exp < 0 || self.t_exp > 1 || self.step < 1 {
            return Err(Error::InvalidArgument(format!("unsupported base {self:?}")));
        }
        Ok(())
    }

    /// The factor `1 - a q^(step*i)` as an exact polynomial.
    fn factor(&self, i: i64) -> Series {
        Series::polynomial([
            (Monomial::ONE, Coefficient::one()),
            (
                Monomial::new(self.q_exp + self.step * i, self.t_exp),
                Coefficient::from_int(-(self.sign as i64)),
            ),
        ])
    }

    fn factor_degree(&self, i: i64) -> i64 {
        self.q_exp + self.step * i
    }
}

/// How the parameter `m` enters an identity: a concrete positive integer or
/// the formal symbol `t = q^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MParam {
    Numeric(i64),
    Symbolic,
}

impl MParam {
    /// The base `q^(m + extra)`.
    pub fn base(self, extra: i64) -> PochhammerBase {
        match self {
            MParam::Numeric(m) => PochhammerBase::q(m + extra),
            MParam::Symbolic => PochhammerBase::tq(extra),
        }
    }

    /// Maps a monomial whose `t` exponent counts multiples of `m` to the
    /// representation used for this parameter.
    pub fn realize(self, mono: Monomial) -> Monomial {
        match self {
            MParam::Numeric(m) => Monomial::q(mono.q_exp + m * mono.t_exp as i64),
            MParam::Symbolic => mono,
        }
    }

    /// `q^(m_mult * m + c)`.
    pub fn monomial(self, m_mult: u32, c: i64) -> Monomial {
        self.realize(Monomial::new(c, m_mult))
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, MParam::Symbolic)
    }
}

impl std::fmt::Display for MParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MParam::Numeric(m) => write!(f, "{m}"),
            MParam::Symbolic => write!(f, "symbolic"),
        }
    }
}

/// `(a; q^step)_n` truncated to `order`. Exact when the full product fits.
pub fn qpochhammer(a: PochhammerBase, n: u32, order: i64) -> Result<Series> {
    a.validate()?;
    let n = n as i64;
    let degree: i64 = (0..n).map(|i| a.factor_degree(i)).sum();
    let target = if degree <= order { EXACT } else { order };
    let mut acc = Series::one(target);
    for i in 0..n {
        if a.factor_degree(i) > target {
            break;
        }
        acc = acc.mul(&a.factor(i));
    }
    Ok(acc)
}

/// `(a; q^step)_inf` truncated to `order`.
pub fn qpochhammer_inf(a: PochhammerBase, order: i64) -> Result<Series> {
    a.validate()?;
    if a.q_exp == 0 && a.t_exp == 0 {
        return if a.sign == 1 {
            Err(Error::DivergentProduct)
        } else {
            Err(Error::InvalidArgument(
                "(-1; q)_inf is outside the supported bases".into(),
            ))
        };
    }
    let mut acc = Series::one(order);
    let mut i = 0;
    while a.factor_degree(i) <= order {
        acc = acc.mul(&a.factor(i));
        i += 1;
    }
    Ok(acc)
}

/// Euler's product `(q; q)_inf`.
pub fn euler_product(order: i64) -> Series {
    qpochhammer_inf(PochhammerBase::q(1), order).expect("(q;q)_inf is well defined")
}

/// `1/(q;q)_inf`, the partition generating function.
pub fn partition_gf(order: i64) -> Series {
    euler_product(order)
        .invert()
        .expect("(q;q)_inf has constant term 1")
}

thread_local! {
    static QBINOMIAL_MEMO: RefCell<HashMap<(i64, i64), Series>> = RefCell::new(HashMap::new());
}

/// The Gaussian binomial `[n, k]_q` as an exact polynomial; zero outside
/// `0 <= k <= n`. Built with the q-Pascal rule
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]` on a per-thread memo table.
pub fn qbinomial(n: i64, k: i64) -> Series {
    if k < 0 || n < 0 || k > n {
        return Series::zero(EXACT);
    }
    if k == 0 || k == n {
        return Series::one(EXACT);
    }
    let k = k.min(n - k);
    if let Some(s) = memo_get(n, k) {
        return s;
    }
    // Fill row by row so the recursion depth stays flat.
    for row in 2..=n {
        for col in 1..=k.min(row - 1) {
            if memo_get(row, col).is_some() {
                continue;
            }
            let left = memo_get(row - 1, col - 1).expect("previous row filled");
            let right = memo_get(row - 1, col).expect("previous row filled");
            let value = left.add(&right.shift(Monomial::q(col)));
            QBINOMIAL_MEMO.with(|m| m.borrow_mut().insert((row, col), value));
        }
    }
    memo_get(n, k).expect("table filled through row n")
}

fn memo_get(n: i64, k: i64) -> Option<Series> {
    if k < 0 || k > n {
        return Some(Series::zero(EXACT));
    }
    if k == 0 || k == n {
        return Some(Series::one(EXACT));
    }
    QBINOMIAL_MEMO.with(|m| m.borrow().get(&(n, k)).cloned())
}

/// `[n, k]_q` through the Pochhammer quotient `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
/// Kept as an independent cross-check of [`qbinomial`].
pub fn qbinomial_by_division(n: i64, k: i64) -> Series {
    if k < 0 || n < 0 || k > n {
        return Series::zero(EXACT);
    }
    let degree = k * (n - k);
    let poch = |len: i64| qpochhammer(PochhammerBase::q(1), len as u32, degree).unwrap();
    let num = poch(n).truncate(degree);
    let den = poch(k).mul(&poch(n - k)).truncate(degree);
    let quotient = num.div(&den).expect("(q;q)_j has constant term 1");
    Series::polynomial(quotient.terms().map(|(m, c)| (*m, c.clone())))
}

/// The q-bracket `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn qbracket(n: i64) -> Result<Series> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "q-bracket needs n >= 1, got {n}"
        )));
    }
    Ok(Series::polynomial(
        (0..n).map(|e| (Monomial::q(e), Coefficient::one())),
    ))
}

/// `[a_1, ..., a_r | q^step]_n = (a_1; q^step)_n ... (a_r; q^step)_n`.
pub fn multi_pochhammer(bases: &[PochhammerBase], n: u32, order: i64) -> Result<Series> {
    if let Some(first) = bases.first() {
        if bases.iter().any(|b| b.step != first.step) {
            return Err(Error::InvalidArgument(
                "multi-Pochhammer bases must share one step".into(),
            ));
        }
    }
    let mut acc = Series::one(EXACT);
    for b in bases {
        acc = acc.mul(&qpochhammer(*b, n, order)?);
    }
    Ok(if acc.is_exact() {
        acc
    } else {
        acc.truncate(order)
    })
}

/// Exponent families of the pentagonal and theta-type sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExponentFamily {
    /// `j(3j+1)/2`
    GpPlus,
    /// `j(3j-1)/2`
    GpMinus,
    /// `j(5j+2m-1)/2`
    Rho2,
    /// `j(7j+2m-1)/2`
    Rho3,
    /// `j(9j+2m-1)/2`
    Rho4,
}

/// The exponent of the `j`-th term of a family, with the `m`-linear part
/// carried on `t`: e.g. `Rho2` at `j` is `q^(j(5j-1)/2) t^j`.
pub fn pent_exponent(j: i64, family: ExponentFamily) -> Monomial {
    let (a, with_m) = match family {
        ExponentFamily::GpPlus => return Monomial::q(j * (3 * j + 1) / 2),
        ExponentFamily::GpMinus => return Monomial::q(j * (3 * j - 1) / 2),
        ExponentFamily::Rho2 => (5, true),
        ExponentFamily::Rho3 => (7, true),
        ExponentFamily::Rho4 => (9, true),
    };
    debug_assert!(with_m);
    assert!(j >= 0, "theta-type families are indexed by j >= 0");
    Monomial::new(j * (a * j - 1) / 2, j as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(terms: &[(i64, i64)]) -> Series {
        Series::q_polynomial(terms)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(
            qpochhammer(PochhammerBase::q(3), 0, 10).unwrap(),
            Series::one(EXACT)
        );
        assert_eq!(
            qpochhammer(PochhammerBase::q(1), 2, 10).unwrap(),
            qpoly(&[(0, 1), (1, -1), (2, -1), (3, 1)])
        );
        let expected = Series::polynomial([
            (Monomial::ONE, Coefficient::from_int(1)),
            (Monomial::new(0, 1), Coefficient::from_int(-1)),
            (Monomial::new(2, 1), Coefficient::from_int(-1)),
            (Monomial::new(2, 2), Coefficient::from_int(1)),
        ]);
        assert_eq!(
            qpochhammer(PochhammerBase::tq(0).with_step(2), 2, 10).unwrap(),
            expected
        );
    }

    #[test]
    fn pochhammer_truncates_when_too_long() {
        let p = qpochhammer(PochhammerBase::q(1), 12, 12).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p, euler_product(12));
    }

    #[test]
    fn infinite_product_examples() {
        assert_eq!(
            euler_product(12),
            qpoly(&[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]).truncate(12)
        );
        let p = qpochhammer_inf(PochhammerBase::q(2), 9).unwrap();
        assert_eq!(p.coeff_at(0).unwrap().get(&0), Some(&Coefficient::one()));
        let expected = Series::polynomial([
            (Monomial::ONE, Coefficient::from_int(1)),
            (Monomial::new(0, 1), Coefficient::from_int(-1)),
            (Monomial::new(1, 1), Coefficient::from_int(-1)),
            (Monomial::new(1, 2), Coefficient::from_int(1)),
        ])
        .truncate(1);
        assert_eq!(qpochhammer_inf(PochhammerBase::tq(0), 1).unwrap(), expected);
        assert_eq!(
            qpochhammer_inf(PochhammerBase::q(0), 5),
            Err(Error::DivergentProduct)
        );
    }

    #[test]
    fn qbinomial_examples() {
        assert_eq!(qbinomial(7, 0), Series::one(EXACT));
        assert_eq!(
            qbinomial(4, 2),
            qpoly(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert!(qbinomial(2, 3).is_zero());
        assert!(qbinomial(0, -1).is_zero());
        assert_eq!(qbinomial(12, 5), qbinomial_by_division(12, 5));
    }

    #[test]
    fn qbracket_examples() {
        assert_eq!(qbracket(1).unwrap(), Series::one(EXACT));
        assert_eq!(qbracket(3).unwrap(), qpoly(&[(0, 1), (1, 1), (2, 1)]));
        assert!(qbracket(0).is_err());
    }

    #[test]
    fn multi_pochhammer_examples() {
        assert_eq!(multi_pochhammer(&[], 4, 10).unwrap(), Series::one(EXACT));
        let bases = [
            PochhammerBase::tq(0).with_step(2),
            PochhammerBase::tq(1).with_step(2),
        ];
        let expected = qpochhammer(PochhammerBase::tq(0), 2, 10).unwrap();
        assert_eq!(multi_pochhammer(&bases, 1, 10).unwrap(), expected);
        let three = [
            PochhammerBase::tq(0).with_step(3),
            PochhammerBase::tq(1).with_step(3),
            PochhammerBase::tq(2).with_step(3),
        ];
        assert_eq!(multi_pochhammer(&three, 0, 10).unwrap(), Series::one(EXACT));
        let mixed = [PochhammerBase::q(1), PochhammerBase::q(1).with_step(2)];
        assert!(multi_pochhammer(&mixed, 1, 10).is_err());
    }

    #[test]
    fn exponent_families() {
        for f in [
            ExponentFamily::GpPlus,
            ExponentFamily::GpMinus,
            ExponentFamily::Rho2,
            ExponentFamily::Rho3,
            ExponentFamily::Rho4,
        ] {
            assert_eq!(pent_exponent(0, f), Monomial::ONE);
        }
        assert_eq!(pent_exponent(2, ExponentFamily::GpPlus), Monomial::q(7));
        assert_eq!(pent_exponent(-2, ExponentFamily::GpPlus), Monomial::q(5));
        assert_eq!(pent_exponent(1, ExponentFamily::Rho2), Monomial::new(2, 1));
        assert_eq!(pent_exponent(2, ExponentFamily::Rho3), Monomial::new(13, 2));
        assert_eq!(pent_exponent(2, ExponentFamily::Rho4), Monomial::new(17, 2));
    }

    #[test]
    fn mparam_realize() {
        assert_eq!(MParam::Numeric(3).monomial(2, 1), Monomial::q(7));
        assert_eq!(MParam::Symbolic.monomial(2, 1), Monomial::new(1, 2));
    }
}
