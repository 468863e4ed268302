//! Closed forms used to prove the `[n-2, k-1]` truncation: the two base
//! cases `f(1)`, `f(2)`, the general solution `g(k)` of the recurrence, the
//! constants fixing `g = f`, and the q-partial fraction step.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::identities::builders::{naturalreplace_tail_spec, theta_den};
use crate::identities::tail::tail_sum;
use crate::identities::verify::{verify_pair, ReportParams, Status, VerificationReport};
use crate::qfunctions::partition_gf;
use crate::series::{Monomial, Series};

/// A quantity computed two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct FormPair {
    pub defining: Series,
    pub closed: Series,
}

impl FormPair {
    pub fn order(&self) -> i64 {
        self.defining.order().min(self.closed.order())
    }

    pub fn agrees(&self) -> bool {
        self.defining
            .first_difference(&self.closed, self.order())
            .is_none()
    }
}

fn sign(j: i64) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum_{n=0}^{M} (-1)^n q^(n(3n+1)/2) (q^-n + q^(2n+1))` against
/// `1 + (-1)^M q^((M+1)(3M+2)/2)`.
pub fn closed_partial_sum(big_m: i64, order: i64) -> Result<FormPair> {
    if big_m < 0 {
        return Err(Error::InvalidArgument(format!(
            "M must be nonnegative, got {big_m}"
        )));
    }
    let mut defining = Series::zero(order);
    for n in 0..=big_m {
        let e = n * (3 * n + 1) / 2;
        defining = defining
            .add(&Series::q_power(e - n, sign(n), order))
            .add(&Series::q_power(e + 2 * n + 1, sign(n), order));
    }
    let closed = Series::one(order).add(&Series::q_power(
        (big_m + 1) * (3 * big_m + 2) / 2,
        sign(big_m),
        order,
    ));
    Ok(FormPair { defining, closed })
}

/// `f(k) = (-1)^(k-1) sum_{n>=2} q^(C(k,2)+(k+1)n)/(q;q)_n [n-2, k-1]_q`.
pub fn f_series(k: i64, order: i64) -> Result<Series> {
    Ok(tail_sum(&naturalreplace_tail_spec(), k, order)?.scale_int(sign(k - 1)))
}

/// `f(1)` or `f(2)` from its defining sum and from its closed form.
pub fn basecase_f(which: u8, order: i64) -> Result<FormPair> {
    let one_minus_q = Series::q_polynomial(&[(0, 1), (1, -1)]);
    match which {
        1 => {
            let defining = tail_sum(&naturalreplace_tail_spec(), 1, order)?;
            // 1/(q^2;q)_inf - 1 - q^2/(1-q)
            let closed = partition_gf(order)
                .mul(&one_minus_q)
                .sub(&Series::one(order))
                .sub(&Series::q_power(2, 1, order).div_one_minus_q(1)?);
            Ok(FormPair { defining, closed })
        }
        2 => {
            // -(q/(1-q)) sum_{n>=2} q^(3n) (1 - q^(n-2))/(q;q)_n
            let mut sum = Series::zero(order);
            let mut inv_poch = Series::one(order);
            let mut n = 1;
            while 3 * n < order || n < 2 {
                inv_poch = inv_poch.div_one_minus_q(n)?;
                if n >= 2 {
                    let num = Series::q_polynomial(&[(3 * n, 1), (4 * n - 2, -1)]);
                    sum = sum.add(&inv_poch.mul(&num));
                }
                n += 1;
            }
            let defining = sum
                .shift(Monomial::q(1))
                .div_one_minus_q(1)?
                .neg()
                .truncate(order);
            // (1-q)(1+q)(1-q^2-q^3)/(q (q;q)_inf) - (1-q^2+q^4)/((1-q) q)
            let pad = order + 1;
            let front = Series::q_polynomial(&[(-1, 1), (1, -2), (2, -1), (3, 1), (4, 1)]);
            let back = Series::q_polynomial(&[(-1, 1), (1, -1), (3, 1)])
                .truncate(pad)
                .div_one_minus_q(1)?;
            let closed = front.mul(&partition_gf(pad)).sub(&back).truncate(order);
            Ok(FormPair { defining, closed })
        }
        _ => Err(Error::InvalidArgument(format!(
            "base case must be 1 or 2, got {which}"
        ))),
    }
}

/// The two constants of the general solution `g(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub c1: Series,
    pub c2: Series,
}

/// `(1-q+q^2)(1-q^2+q^4) / (q^4 (1-q^3))` through `order`.
fn kappa(order: i64) -> Result<Series> {
    let num = theta_den(1).mul(&theta_den(2)).truncate(order + 8);
    num.div(&Series::q_polynomial(&[(4, 1), (7, -1)]))
}

/// `sum_{j<k} (-1)^j q^(j(3j+5)/2) (1 - q^(2j+1)) / ((1-q^j+q^2j)(1-q^(j+1)+q^(2j+2)))`.
pub fn gk_inner_sum(k: i64, order: i64) -> Result<Series> {
    let mut acc = Series::zero(order);
    for j in 0..k {
        let e = j * (3 * j + 5) / 2;
        if e > order {
            break;
        }
        let num = Series::q_polynomial(&[(e, sign(j)), (e + 2 * j + 1, -sign(j))]).truncate(order);
        acc = acc.add(&num.div(&theta_den(j).mul(&theta_den(j + 1)))?);
    }
    Ok(acc)
}

/// The coefficients `(A_k, B_k)` in `g(k) = A_k c1 - B_k c2`.
fn gk_basis(k: i64, order: i64) -> Result<(Series, Series)> {
    let a = theta_den(k).shift(Monomial::q(-k));
    let b = a.mul(&kappa(order)?).mul(&gk_inner_sum(k, order)?);
    Ok((a, b))
}

/// `g(k) = ((1-q^k+q^2k)/q^k)(c1 - c2 kappa S_k)`, exact through whatever
/// order the constants allow, truncated to `order`.
pub fn gk_closed(k: i64, constants: &Constants, order: i64) -> Result<Series> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "k must be positive, got {k}"
        )));
    }
    let work = order + 2 * k + 16;
    let (a, b) = gk_basis(k, work)?;
    let g = a.mul(&constants.c1).sub(&b.mul(&constants.c2));
    Ok(g.truncate(order))
}

/// Solves `g(1) = f(1)`, `g(2) = f(2)` for `(c1, c2)`, both exact through
/// `order`.
pub fn solve_constants(order: i64) -> Result<Constants> {
    let mut pad = 24;
    loop {
        let work = order + pad;
        let f1 = f_series(1, work)?;
        let f2 = f_series(2, work)?;
        let (a1, b1) = gk_basis(1, work)?;
        let (a2, b2) = gk_basis(2, work)?;
        let det = a2.mul(&b1).sub(&a1.mul(&b2));
        let inv = det
            .invert()
            .map_err(|e| Error::SingularSystem(format!("determinant {det} is not a unit ({e})")))?;
        let c1 = b1.mul(&f2).sub(&b2.mul(&f1)).mul(&inv);
        let c2 = a1.mul(&f2).sub(&a2.mul(&f1)).mul(&inv);
        if c1.order() >= order && c2.order() >= order {
            return Ok(Constants {
                c1: c1.truncate(order),
                c2: c2.truncate(order),
            });
        }
        pad *= 2;
    }
}

/// Cross-multiplied form of the partial fraction step, an exact polynomial
/// identity: `D_(j+1) - q D_j = (1-q)(1-q^(2j+1))`.
pub fn qpartial_fraction_polynomial(j: i64) -> bool {
    let lhs = theta_den(j + 1).sub(&theta_den(j).shift(Monomial::q(1)));
    let rhs = Series::q_polynomial(&[(0, 1), (1, -1)])
        .mul(&Series::q_polynomial(&[(0, 1), (2 * j + 1, -1)]));
    lhs == rhs
}

/// `(1/(1-q))(1/D_j - q/D_(j+1)) = (1-q^(2j+1))/(D_j D_(j+1))` as truncated
/// series, plus the cross-multiplied polynomial identity.
pub fn qpartial_fraction_check(j: i64, order: i64) -> Result<VerificationReport> {
    if j < 0 {
        return Err(Error::InvalidArgument(format!(
            "j must be nonnegative, got {j}"
        )));
    }
    let started = Instant::now();
    let lhs = Series::one(order)
        .div(&theta_den(j))?
        .sub(&Series::q_power(1, 1, order).div(&theta_den(j + 1))?)
        .div_one_minus_q(1)?;
    let rhs = Series::q_polynomial(&[(0, 1), (2 * j + 1, -1)])
        .truncate(order)
        .div(&theta_den(j).mul(&theta_den(j + 1)))?;
    let params = ReportParams {
        k: Some(j),
        m: None,
        cleared: false,
    };
    let mut report = verify_pair("qpartial_fraction", params, &lhs, &rhs, order, started);
    let poly = qpartial_fraction_polynomial(j);
    if !poly {
        report.status = Status::Fail;
    }
    report.note = Some(format!(
        "cross-multiplied polynomial identity {}",
        if poly { "holds" } else { "fails" }
    ));
    Ok(report)
}
