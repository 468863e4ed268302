//! Left- and right-hand sides of the catalogued identities.
//!
//! Every builder returns a series exact through `order`; internal padding
//! absorbs the order lost to negative exponents and divisions.

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::identities::tables::{eval_ptable, PTerm};
use crate::identities::tail::{signed_tail, tail_sum, SummandExtras, TailSpec};
use crate::qfunctions::{
    euler_product, multi_pochhammer, partition_gf, pent_exponent, qpochhammer, qpochhammer_inf,
    ExponentFamily, MParam, PochhammerBase,
};
use crate::series::{Monomial, Series, EXACT};

fn sign(j: i64) -> i64 {
    if j.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn c2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn finish(s: Series, order: i64) -> Result<Series> {
    if s.order() < order {
        return Err(Error::InvalidArgument(format!(
            "internal padding too small: built to q^{} but q^{order} requested",
            s.order()
        )));
    }
    Ok(s.truncate(order))
}

/// `1 - q^k + q^(2k)`.
pub(crate) fn theta_den(k: i64) -> Series {
    Series::q_polynomial(&[(0, 1), (k, -1), (2 * k, 1)])
}

// Euler

/// `(q;q)_inf`.
pub fn euler_lhs(order: i64) -> Series {
    euler_product(order)
}

/// `1 + sum_{n>=1} (-1)^n q^(n(3n+1)/2) (1 + q^-n)`.
pub fn euler_bilateral_rhs(order: i64) -> Series {
    let mut acc = Series::one(order);
    let mut n = 1;
    while n * (3 * n - 1) / 2 <= order {
        let e = pent_exponent(n, ExponentFamily::GpPlus).q_exp;
        acc = acc
            .add(&Series::q_power(e, sign(n), order))
            .add(&Series::q_power(e - n, sign(n), order));
        n += 1;
    }
    acc
}

/// `sum_{n>=0} (-1)^n q^(n(3n+1)/2) (1 - q^(2n+1))`.
pub fn euler_unilateral_rhs(order: i64) -> Series {
    let mut acc = Series::zero(order);
    let mut n = 0;
    while n * (3 * n + 1) / 2 <= order {
        let e = pent_exponent(n, ExponentFamily::GpPlus).q_exp;
        acc = acc
            .add(&Series::q_power(e, sign(n), order))
            .add(&Series::q_power(e + 2 * n + 1, -sign(n), order));
        n += 1;
    }
    acc
}

// Andrews-Merca, Xia-Yee-Zhao

/// `sum_{j<k} (-1)^j q^(j(3j+1)/2) (1 - q^(2j+1))`.
pub fn pentagonal_partial_sum(k: i64) -> Series {
    let mut acc = Series::zero(EXACT);
    for j in 0..k {
        let e = pent_exponent(j, ExponentFamily::GpPlus).q_exp;
        acc = acc.add(&Series::q_polynomial(&[
            (e, sign(j)),
            (e + 2 * j + 1, -sign(j)),
        ]));
    }
    acc
}

pub fn andrews_merca_lhs(k: i64, order: i64) -> Result<Series> {
    finish(partition_gf(order).mul(&pentagonal_partial_sum(k)), order)
}

pub fn andrews_merca_rhs(k: i64, order: i64) -> Result<Series> {
    signed_tail(
        &TailSpec::andrews_merca(),
        k,
        order,
        SummandExtras::default(),
    )
}

pub fn xia_yee_zhao_lhs(k: i64, order: i64) -> Result<Series> {
    let mut sum = Series::zero(EXACT);
    for j in 0..k {
        let e = 3 * j * (j + 1) / 2;
        let term = Series::q_power(e, sign(j), EXACT)
            .mul(&Series::q_polynomial(&[(0, 1), (j + 1, -1)]))
            .mul(&Series::q_polynomial(&[(0, 1), (2 * j + 2, -1)]));
        sum = sum.add(&term);
    }
    finish(partition_gf(order).mul(&sum), order)
}

pub fn xia_yee_zhao_rhs(k: i64, order: i64) -> Result<Series> {
    signed_tail(
        &TailSpec::new(1, MParam::Numeric(2), 1, 0, 1),
        k,
        order,
        SummandExtras::default(),
    )
}

// Kolitsch, Yao

/// Tail shared by Kolitsch and Yao: `rho(k) = k + m`, summed from `n = k`.
fn kolitsch_tail(k: i64, m: MParam, order: i64) -> Result<Series> {
    signed_tail(
        &TailSpec::new(1, m, 1, 0, k),
        k,
        order,
        SummandExtras::default(),
    )
}

/// `sum_{j<k} (-1)^j q^((k+m)j + C(j,2)) (q^(j+1);q)_(k-j)`.
fn kolitsch_sum(k: i64, m: MParam, order: i64) -> Result<Series> {
    let mut acc = Series::zero(EXACT);
    for j in 0..k {
        let mono = m.realize(Monomial::new(k * j + c2(j), j as u32));
        let poch = qpochhammer(PochhammerBase::q(j + 1), (k - j) as u32, order)?;
        acc = acc.add(&poch.mul(&Series::monomial(
            mono,
            Coefficient::from_int(sign(j)),
            EXACT,
        )));
    }
    Ok(acc)
}

pub fn kolitsch_lhs(k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
    let sum = kolitsch_sum(k, m, order)?;
    if cleared {
        // (q^m;q)_inf (q^(k+1);q)_(m-1) / (q;q)_inf = (q^m;q)_k / (q;q)_k
        let num = qpochhammer(m.base(0), k as u32, order)?;
        let den = qpochhammer(PochhammerBase::q(1), k as u32, order)?.truncate(order);
        return finish(num.mul(&sum).truncate(order).div(&den)?, order);
    }
    let prefactor = match m {
        MParam::Numeric(mm) => {
            check_positive_m(mm)?;
            qpochhammer(PochhammerBase::q(k + 1), (mm - 1) as u32, order)?
        }
        // (q^(k+1);q)_(m-1) = (q^(k+1);q)_inf / (t q^k;q)_inf
        MParam::Symbolic => qpochhammer_inf(PochhammerBase::q(k + 1), order)?
            .div(&qpochhammer_inf(PochhammerBase::tq(k), order)?)?,
    };
    finish(prefactor.mul(&partition_gf(order)).mul(&sum), order)
}

pub fn kolitsch_rhs(k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
    cleared_rhs(kolitsch_tail(k, m, order)?, m, order, cleared)
}

pub fn yao_lhs(k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
    let mut acc = Series::zero(order);
    for j in 0..k {
        let mono = m.realize(Monomial::new(j * (3 * j - 1) / 2, j as u32));
        let tail_factor = Series::polynomial([
            (Monomial::ONE, Coefficient::one()),
            (m.monomial(1, 2 * j), Coefficient::from_int(-1)),
        ]);
        let signed =
            Series::monomial(mono, Coefficient::from_int(sign(j)), EXACT).mul(&tail_factor);
        let term = if cleared {
            // (q^m;q)_inf (q^(j+1);q)_(m-1) / (q;q)_inf = (q^m;q)_j / (q;q)_j
            let num = qpochhammer(m.base(0), j as u32, order)?;
            let den = qpochhammer(PochhammerBase::q(1), j as u32, order)?.truncate(order);
            num.mul(&signed).truncate(order).div(&den)?
        } else {
            let poch = match m {
                MParam::Numeric(mm) => {
                    check_positive_m(mm)?;
                    qpochhammer(PochhammerBase::q(j + 1), (mm - 1) as u32, order)?
                }
                MParam::Symbolic => qpochhammer_inf(PochhammerBase::q(j + 1), order)?
                    .div(&qpochhammer_inf(PochhammerBase::tq(j), order)?)?,
            };
            poch.mul(&signed).mul(&partition_gf(order))
        };
        acc = acc.add(&term.truncate(order));
    }
    finish(acc, order)
}

pub fn yao_rhs(k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
    kolitsch_rhs(k, m, order, cleared)
}

fn check_positive_m(m: i64) -> Result<()> {
    if m < 1 {
        return Err(if m == 0 {
            Error::DivergentProduct
        } else {
            Error::InvalidArgument(format!("m must be a positive integer, got {m}"))
        });
    }
    Ok(())
}

/// Multiplies a right-hand side by `(q^m;q)_inf` when clearing.
fn cleared_rhs(rhs: Series, m: MParam, order: i64, cleared: bool) -> Result<Series> {
    if !cleared {
        return Ok(rhs);
    }
    if let MParam::Numeric(mm) = m {
        check_positive_m(mm)?;
    }
    finish(qpochhammer_inf(m.base(0), order)?.mul(&rhs), order)
}

// Theta-type families: rho(k) = s k + m with step-s multi-Pochhammer numerators

/// A theta-type truncation family `rho(k) = step*k + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaFamily {
    pub step: i64,
    pub exponent: ExponentFamily,
    pub table: &'static [PTerm],
}

/// `sum_{j<k} (-1)^j q^(j((2s+1)j+2m-1)/2) [q^m, ..., q^(m+s-1) | q^s]_j / (q;q)_j p(j)`;
/// with `k = None` the sum runs until its terms pass `order`.
pub fn theta_partial_sum(
    step: i64,
    exponent: ExponentFamily,
    table: &[PTerm],
    k: Option<i64>,
    m: MParam,
    order: i64,
) -> Result<Series> {
    let bases: Vec<PochhammerBase> = (0..step).map(|i| m.base(i).with_step(step)).collect();
    let mut acc = Series::zero(order);
    let mut inv_poch = Series::one(order);
    let mut j = 0;
    loop {
        if let Some(k) = k {
            if j >= k {
                break;
            }
        }
        let mono = m.realize(pent_exponent(j, exponent));
        if mono.q_exp > order {
            break;
        }
        if j > 0 {
            inv_poch = inv_poch.div_one_minus_q(j)?;
        }
        let budget = order - mono.q_exp;
        let numerator = multi_pochhammer(&bases, j as u32, budget)?;
        let p = eval_ptable(table, j, m);
        let term = inv_poch
            .truncate(budget)
            .mul(&numerator)
            .mul(&p)
            .shift(mono)
            .scale_int(sign(j));
        acc = acc.add(&term.truncate(order));
        j += 1;
    }
    Ok(acc)
}

impl ThetaFamily {
    pub fn tail(&self, m: MParam) -> TailSpec {
        TailSpec::new(self.step, m, 1, 0, 1)
    }

    pub fn lhs(&self, k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
        self.lhs_with_table(self.table, k, m, order, cleared)
    }

    pub fn lhs_with_table(
        &self,
        table: &[PTerm],
        k: i64,
        m: MParam,
        order: i64,
        cleared: bool,
    ) -> Result<Series> {
        if let MParam::Numeric(mm) = m {
            check_positive_m(mm)?;
        }
        let sum = theta_partial_sum(self.step, self.exponent, table, Some(k), m, order)?;
        if cleared {
            return finish(sum, order);
        }
        finish(sum.div(&qpochhammer_inf(m.base(0), order)?)?, order)
    }

    pub fn rhs(&self, k: i64, m: MParam, order: i64, cleared: bool) -> Result<Series> {
        let rhs = signed_tail(&self.tail(m), k, order, SummandExtras::default())?;
        cleared_rhs(rhs, m, order, cleared)
    }
}

// Proved truncations with rho(k) = k + 1

/// `sum_{j<k} (-1)^j q^(j(3j-1)/2) (1 + q^j)`.
pub fn minus_partial_sum(k: i64) -> Series {
    let mut acc = Series::zero(EXACT);
    for j in 0..k {
        let e = pent_exponent(j, ExponentFamily::GpMinus).q_exp;
        acc = acc.add(&Series::q_polynomial(&[(e, sign(j)), (e + j, sign(j))]));
    }
    acc
}

/// The `[n-2, k-1]` tail `sum_{n>=2} q^(C(k,2)+(k+1)n)/(q;q)_n [n-2, k-1]_q`.
pub fn naturalreplace_tail_spec() -> TailSpec {
    TailSpec::new(1, MParam::Numeric(1), 2, 0, 2)
}

pub fn naturalreplace_lhs(k: i64) -> Series {
    minus_partial_sum(k)
}

/// `1 - (-1)^k q^(k(3k-1)/2)/(1-q^k+q^2k) + (q;q)_inf (1 - c_k S)` with
/// `c_k = (1-q)(-q)^k / (q (1-q^k+q^2k))` and `S` the `[n-2, k-1]` tail.
pub fn naturalreplace_rhs(k: i64, order: i64) -> Result<Series> {
    let (pent, c_k, sum) = naturalreplace_parts(k, order)?;
    let inner = Series::one(order).sub(&c_k.mul(&sum));
    finish(
        Series::one(order)
            .sub(&pent)
            .add(&euler_product(order).mul(&inner)),
        order,
    )
}

/// The other reading of the bracket: `(q;q)_inf` multiplies only the `1`.
pub fn naturalreplace_rhs_alternative(k: i64, order: i64) -> Result<Series> {
    let (pent, c_k, sum) = naturalreplace_parts(k, order)?;
    finish(
        Series::one(order)
            .sub(&pent)
            .add(&euler_product(order))
            .sub(&c_k.mul(&sum)),
        order,
    )
}

fn naturalreplace_parts(k: i64, order: i64) -> Result<(Series, Series, Series)> {
    let e = pent_exponent(k, ExponentFamily::GpMinus).q_exp;
    let pent = Series::q_power(e, sign(k), order).div(&theta_den(k))?;
    // (1-q)(-q)^k / q = (-1)^k (q^(k-1) - q^k)
    let c_num = Series::q_polynomial(&[(k - 1, sign(k)), (k, -sign(k))]).truncate(order);
    let c_k = c_num.div(&theta_den(k))?;
    let sum = tail_sum(&naturalreplace_tail_spec(), k, order)?;
    Ok((pent, c_k, sum))
}

pub fn anothernatural_lhs(k: i64, order: i64) -> Result<Series> {
    let pad = order + 2 * k;
    let e = pent_exponent(k, ExponentFamily::GpMinus).q_exp;
    let inner = Series::q_power(e, sign(k), pad)
        .div(&theta_den(k))?
        .sub(&Series::one(pad))
        .add(&minus_partial_sum(k).truncate(pad));
    let weight = Series::q_polynomial(&[(0, 1), (-k, -1), (-2 * k, 1)]);
    let front = Series::q_polynomial(&[(-k, 1), (-2 * k, -1)]);
    finish(
        front.add(&weight.mul(&partition_gf(pad).mul(&inner))),
        order,
    )
}

pub fn anothernatural_rhs(k: i64, order: i64) -> Result<Series> {
    signed_tail(
        &TailSpec::andrews_merca(),
        k,
        order,
        SummandExtras { bracket: true },
    )
}

// Limits as k -> infinity

/// `sum_{j>=0} (-1)^j q^(j(3j-1)/2)(1+q^j)` through `order`.
pub fn limit_naturalreplace_lhs(order: i64) -> Series {
    let mut k = 0;
    while pent_exponent(k, ExponentFamily::GpMinus).q_exp <= order {
        k += 1;
    }
    minus_partial_sum(k).truncate(order)
}

/// `1 + (q;q)_inf`.
pub fn limit_naturalreplace_rhs(order: i64) -> Series {
    Series::one(order).add(&euler_product(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::tables::P_RHO2;

    #[test]
    fn naturalreplace_constant_term() {
        // Both sides of the k = 1 truncation start at 2.
        assert_eq!(
            naturalreplace_lhs(1).coeff(Monomial::ONE),
            Coefficient::from_int(2)
        );
        let rhs = naturalreplace_rhs(1, 0).unwrap();
        assert_eq!(rhs.coeff(Monomial::ONE), Coefficient::from_int(2));
    }

    #[test]
    fn andrews_merca_k1_lhs() {
        let lhs = andrews_merca_lhs(1, 20).unwrap();
        let expected = partition_gf(20).mul(&Series::q_polynomial(&[(0, 1), (1, -1)]));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn unilateral_rhs_to_twelve() {
        assert_eq!(
            euler_unilateral_rhs(12),
            Series::q_polynomial(&[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)])
                .truncate(12)
        );
    }

    #[test]
    fn symbolic_yao_needs_clearing() {
        assert!(matches!(
            yao_lhs(2, MParam::Symbolic, 10, false),
            Err(Error::NotAUnit(_))
        ));
        let family = ThetaFamily {
            step: 2,
            exponent: ExponentFamily::Rho2,
            table: P_RHO2,
        };
        assert!(matches!(
            family.lhs(2, MParam::Symbolic, 10, false),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn m_zero_is_divergent() {
        assert_eq!(
            kolitsch_lhs(2, MParam::Numeric(0), 10, false),
            Err(Error::DivergentProduct)
        );
    }
}
