//! The summands as q-hypergeometric terms in the difference-equation roles:
//! `n` is the truncation parameter (`x = q^n`), `k` the summation index
//! (`y = q^k`).

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::identities::{IdentityId, TailSpec};
use crate::qfunctions::{qbinomial, qpochhammer, MParam, PochhammerBase};
use crate::series::{Monomial, Series, EXACT};
use crate::telescoping::mpoly::{MPoly, RationalFunction, RationalValue};

/// `T(n, k) = (-1)^(n-1) q^(C(n,2) + rho(n) k) / (q;q)_(k+l2) [k-l1, n-1]_q`,
/// divided by `[k+1]_q^bracket`. This is the tail summand with its two
/// indices exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QHyperTerm {
    pub tail: TailSpec,
    pub bracket: u32,
}

impl QHyperTerm {
    pub fn new(tail: TailSpec) -> Self {
        QHyperTerm { tail, bracket: 0 }
    }

    /// The `[n-2, k-1]` summand, `rho = k + 1`.
    pub fn naturalreplace() -> Self {
        QHyperTerm::new(TailSpec::new(1, MParam::Numeric(1), 2, 0, 2))
    }

    /// The `rho = 2k + m` summand with `m` formal.
    pub fn infinite() -> Self {
        QHyperTerm::new(TailSpec::new(2, MParam::Symbolic, 1, 0, 1))
    }

    /// The summand divided by `[k+1]_q`.
    pub fn anothernatural() -> Self {
        QHyperTerm {
            tail: TailSpec::andrews_merca(),
            bracket: 1,
        }
    }

    /// The summand of an identity's tail sum, in the difference-equation
    /// roles; `None` for identities without one.
    pub fn for_identity(id: IdentityId) -> Option<Self> {
        let formal = |slope| QHyperTerm::new(TailSpec::new(slope, MParam::Symbolic, 1, 0, 1));
        Some(match id {
            IdentityId::AndrewsMerca => QHyperTerm::new(TailSpec::andrews_merca()),
            IdentityId::XiaYeeZhao => {
                QHyperTerm::new(TailSpec::new(1, MParam::Numeric(2), 1, 0, 1))
            }
            IdentityId::Kolitsch => formal(1),
            IdentityId::ThmNaturalreplace => QHyperTerm::naturalreplace(),
            IdentityId::ThmAnothernatural => QHyperTerm::anothernatural(),
            IdentityId::ThmInfinite => QHyperTerm::infinite(),
            IdentityId::Rho3 => formal(3),
            IdentityId::Rho4 => formal(4),
            _ => return None,
        })
    }

    pub fn has_t(&self) -> bool {
        self.tail.shift.is_symbolic()
    }

    /// `q^shift`, or `t` for a formal `m`.
    fn shift_poly(&self) -> MPoly {
        match self.tail.shift {
            MParam::Numeric(s) => MPoly::from_ints(&[(1, [s, 0, 0, 0])]),
            MParam::Symbolic => MPoly::from_ints(&[(1, [0, 0, 0, 1])]),
        }
    }

    /// `T(n+1, k) / T(n, k) = -y^slope (x - q^(1-l1) y) / (1 - x)`.
    pub fn shift_n(&self) -> RationalFunction {
        let s = self.tail.slope;
        let num = MPoly::from_ints(&[(-1, [0, 1, s, 0]), (1, [1 - self.tail.ell1, 0, s + 1, 0])]);
        let den = MPoly::from_ints(&[(1, [0, 0, 0, 0]), (-1, [0, 1, 0, 0])]);
        RationalFunction { num, den }
    }

    /// `T(n, k+1) / T(n, k)
    ///  = x^(slope+1) S (1 - q^(1-l1) y) / ((1 - q^(l2+1) y)(x - q^(2-l1) y))`
    /// times `((1 - q y)/(1 - q^2 y))^bracket`, with `S = q^shift` or `t`.
    pub fn shift_k(&self) -> RationalFunction {
        let (l1, l2, s) = (self.tail.ell1, self.tail.ell2, self.tail.slope);
        let mut num = self
            .shift_poly()
            .mul(&MPoly::from_ints(&[(1, [0, s + 1, 0, 0])]))
            .mul(&MPoly::from_ints(&[
                (1, [0, 0, 0, 0]),
                (-1, [1 - l1, 0, 1, 0]),
            ]));
        let mut den = MPoly::from_ints(&[(1, [0, 0, 0, 0]), (-1, [l2 + 1, 0, 1, 0])]).mul(
            &MPoly::from_ints(&[(1, [0, 1, 0, 0]), (-1, [2 - l1, 0, 1, 0])]),
        );
        for _ in 0..self.bracket {
            num = num.mul(&MPoly::from_ints(&[(1, [0, 0, 0, 0]), (-1, [1, 0, 1, 0])]));
            den = den.mul(&MPoly::from_ints(&[(1, [0, 0, 0, 0]), (-1, [2, 0, 1, 0])]));
        }
        RationalFunction { num, den }
    }

    pub fn check_domain(&self, n: i64, k: i64) -> Result<()> {
        if n < 1 || k < 0 || k + self.tail.ell2 < 0 {
            return Err(Error::DomainError { n, k });
        }
        Ok(())
    }

    /// The exact value of `T(n, k)` as a quotient of Laurent polynomials.
    pub fn anchor(&self, n: i64, k: i64) -> Result<RationalValue> {
        self.check_domain(n, k)?;
        let binom = qbinomial(k - self.tail.ell1, n - 1);
        if binom.is_zero() {
            return Ok(RationalValue::zero());
        }
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        let mut mono = Monomial::q(n * (n - 1) / 2 + self.tail.slope * n * k);
        mono = match self.tail.shift {
            MParam::Numeric(s) => Monomial::q(mono.q_exp + s * k),
            MParam::Symbolic => Monomial::new(mono.q_exp, k as u32),
        };
        let num = Series::monomial(mono, Coefficient::from_int(sign), EXACT).mul(&binom);
        let len = (k + self.tail.ell2) as u32;
        let mut den = qpochhammer(PochhammerBase::q(1), len, EXACT)?;
        for _ in 0..self.bracket {
            // [k+1]_q = (1 - q^(k+1))/(1 - q): multiply the numerator by (1 - q).
            den = den.mul(&Series::q_polynomial(&[(0, 1), (k + 1, -1)]));
        }
        let num = num.mul(&Series::q_polynomial(&[(0, 1), (1, -1)]).pow(self.bracket));
        Ok(RationalValue { num, den })
    }

    /// Checks `T(n+1,k) = shift_n T(n,k)` and `T(n,k+1) = shift_k T(n,k)` at
    /// one point; quotients with a pole there are skipped.
    pub fn shift_consistent(&self, n: i64, k: i64) -> Result<bool> {
        let here = self.anchor(n, k)?;
        for (quot, next) in [
            (self.shift_n(), self.anchor(n + 1, k)?),
            (self.shift_k(), self.anchor(n, k + 1)?),
        ] {
            match quot.eval_xy(n, k) {
                Ok(v) => {
                    if !v.mul(&here).equals(&next) {
                        return Ok(false);
                    }
                }
                Err(Error::PoleOnGrid { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }
}

/// `T(n, k)` expanded through `order`.
pub fn eval_term(term: &QHyperTerm, n: i64, k: i64, order: i64) -> Result<Series> {
    term.anchor(n, k)?.to_series(order)
}

trait PowExt {
    fn pow(&self, n: u32) -> Series;
}

impl PowExt for Series {
    fn pow(&self, n: u32) -> Series {
        (0..n).fold(Series::one(EXACT), |acc, _| acc.mul(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_binomial_gives_zero() {
        // [k-2, n-1] = 0 for k <= n.
        assert!(QHyperTerm::naturalreplace().anchor(3, 3).unwrap().is_zero());
    }

    #[test]
    fn naturalreplace_value_at_1_2() {
        // n = 1: q^(2k)/(q;q)_k at k = 2.
        let v = QHyperTerm::naturalreplace().anchor(1, 2).unwrap();
        let expected = RationalValue {
            num: Series::q_power(4, 1, EXACT),
            den: Series::q_polynomial(&[(0, 1), (1, -1), (2, -1), (3, 1)]),
        };
        assert!(v.equals(&expected));
    }

    #[test]
    fn shift_quotients_consistent() {
        for term in [
            QHyperTerm::naturalreplace(),
            QHyperTerm::infinite(),
            QHyperTerm::anothernatural(),
        ] {
            for n in 1..=5 {
                for k in 0..=5 {
                    assert!(
                        term.shift_consistent(n, k).unwrap(),
                        "{term:?} at ({n}, {k})"
                    );
                }
            }
        }
    }

    #[test]
    fn domain() {
        assert_eq!(
            QHyperTerm::infinite().anchor(0, 1).unwrap_err(),
            Error::DomainError { n: 0, k: 1 }
        );
    }
}
