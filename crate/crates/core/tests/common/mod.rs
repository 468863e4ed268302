//! Property checks shared by the proptest suite and the acceptance binary.
//! Each check returns `Err` with a description of the first violation.

#![allow(dead_code)]

use proptest::prelude::*;

use qtrunc::identities::builders::anothernatural_lhs;
use qtrunc::qfunctions::{qbinomial, qbinomial_by_division, qpochhammer, PochhammerBase};
use qtrunc::{Coefficient, Monomial, Series, EXACT};

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn canonical(label: &str, s: &Series) -> Check {
    ensure(s.check_invariants(), || {
        format!("{label} is not canonical: {s:?}")
    })
}

/// Equality through the order both sides guarantee.
fn agree(label: &str, a: &Series, b: &Series) -> Check {
    canonical(label, a)?;
    canonical(label, b)?;
    let upto = a.order().min(b.order());
    ensure(a.truncate(upto) == b.truncate(upto), || {
        format!("{label}: {a:?} != {b:?} through q^{upto}")
    })
}

// Generators

fn term() -> impl Strategy<Value = (Monomial, Coefficient)> {
    (-4i64..16, 0u32..3, -6i64..=6, 1i64..=3)
        .prop_map(|(e, t, n, d)| (Monomial::new(e, t), Coefficient::ratio(n, d)))
}

/// A sparse series: a few rational terms, truncated or exact.
pub fn sparse_series() -> impl Strategy<Value = Series> {
    (
        prop::collection::vec(term(), 0..8),
        prop_oneof![3 => 4i64..30, 1 => Just(EXACT)],
    )
        .prop_map(|(terms, order)| Series::from_terms(terms, order))
}

/// A truncated series with leading term `±q^v`.
pub fn unit_series() -> impl Strategy<Value = Series> {
    (
        -3i64..4,
        prop::bool::ANY,
        prop::collection::vec((1i64..15, 0u32..3, -4i64..=4, 1i64..=2), 0..6),
        3i64..25,
    )
        .prop_map(|(v, neg, rest, extra)| {
            let lead = (
                Monomial::q(v),
                Coefficient::from_int(if neg { -1 } else { 1 }),
            );
            let tail = rest
                .into_iter()
                .map(|(e, t, n, d)| (Monomial::new(v + e, t), Coefficient::ratio(n, d)));
            Series::from_terms(std::iter::once(lead).chain(tail), v + extra)
        })
}

/// Terms to splice into a series above a threshold.
pub fn perturbation() -> impl Strategy<Value = Vec<(i64, u32, i64)>> {
    prop::collection::vec((0i64..20, 0u32..3, 1i64..=5), 1..5)
}

pub fn pochhammer_base() -> impl Strategy<Value = PochhammerBase> {
    (0i64..5, prop::bool::ANY, 1i64..4).prop_map(|(e, with_t, step)| {
        let base = if with_t {
            PochhammerBase::tq(e)
        } else {
            PochhammerBase::q(e.max(1))
        };
        base.with_step(step)
    })
}

// Series ring

pub fn ring_axioms(a: &Series, b: &Series, c: &Series) -> Check {
    agree("a+b = b+a", &a.add(b), &b.add(a))?;
    agree("ab = ba", &a.mul(b), &b.mul(a))?;
    agree("(a+b)+c = a+(b+c)", &a.add(b).add(c), &a.add(&b.add(c)))?;
    agree("(ab)c = a(bc)", &a.mul(b).mul(c), &a.mul(&b.mul(c)))?;
    agree(
        "a(b+c) = ab+ac",
        &a.mul(&b.add(c)),
        &a.mul(b).add(&a.mul(c)),
    )?;
    agree("a-a = 0", &a.sub(a), &Series::zero(a.order()))?;
    agree("1a = a", &Series::one(EXACT).mul(a), a)
}

/// Adds `bump` terms to `a` strictly above q-degree `above`, within its order.
fn perturb_above(a: &Series, above: i64, bump: &[(i64, u32, i64)]) -> Series {
    let lo = above.max(a.min_q_exp()) + 1;
    let hi = a.order().min(lo + 40);
    if lo > hi {
        return a.clone();
    }
    let extra = bump.iter().map(|&(off, t, c)| {
        (
            Monomial::new(lo + off % (hi - lo + 1), t),
            Coefficient::from_int(c),
        )
    });
    Series::from_terms(
        a.terms().map(|(m, c)| (*m, c.clone())).chain(extra),
        a.order(),
    )
}

/// The product through q-degree `e` ignores every coefficient of `a` above
/// `e - v(b)` and of `b` above `e - v(a)`.
pub fn truncation_locality(a: &Series, b: &Series, bump: &[(i64, u32, i64)]) -> Check {
    let ab = a.mul(b);
    if ab.order() >= EXACT / 2 {
        return Ok(());
    }
    let e = ab.order();
    let a2 = perturb_above(a, e - b.min_q_exp(), bump);
    let b2 = perturb_above(b, e - a.min_q_exp(), bump);
    let ab2 = a2.mul(&b2);
    ensure(ab2.order() >= e, || {
        format!("perturbation lowered the order to {}", ab2.order())
    })?;
    ensure(ab.truncate(e) == ab2.truncate(e), || {
        format!("product moved below q^{e}: {ab:?} vs {ab2:?}")
    })
}

/// `a * invert(a) - 1` vanishes through the guaranteed order.
pub fn invert_contract(a: &Series) -> Check {
    let inv = a
        .invert()
        .map_err(|e| format!("invert failed on {a:?}: {e}"))?;
    canonical("inverse", &inv)?;
    let v = a.valuation().expect("unit");
    ensure(inv.order() == a.order() - 2 * v, || {
        format!(
            "inverse order {} for a of order {} and valuation {v}",
            inv.order(),
            a.order()
        )
    })?;
    let product = a.mul(&inv);
    let residue = product.sub(&Series::one(EXACT)).truncate(product.order());
    ensure(
        residue.is_zero() && product.order() >= a.order() - v,
        || format!("a * 1/a - 1 = {residue:?} through q^{}", product.order()),
    )
}

// Gaussian binomials and Pochhammer symbols

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn one_minus_q(e: i64) -> Series {
    Series::q_polynomial(&[(0, 1), (e, -1)])
}

/// Both Pascal rules, symmetry, palindromic coefficients, the q = 1
/// specialization and the division formula, for one `(n, k)`.
pub fn qbinomial_laws(n: i64, k: i64) -> Check {
    let b = qbinomial(n, k);
    canonical("qbinomial", &b)?;
    if n >= 1 && (1..=n).contains(&k) {
        let left = qbinomial(n - 1, k - 1).add(&qbinomial(n - 1, k).shift(Monomial::q(k)));
        ensure(b == left, || format!("[{n},{k}] fails the q^k Pascal rule"))?;
        let right = qbinomial(n - 1, k).add(&qbinomial(n - 1, k - 1).shift(Monomial::q(n - k)));
        ensure(b == right, || {
            format!("[{n},{k}] fails the q^(n-k) Pascal rule")
        })?;
    }
    ensure(b == qbinomial(n, n - k), || {
        format!("[{n},{k}] != [{n},{}]", n - k)
    })?;
    let degree = k * (n - k);
    let palindromic =
        (0..=degree).all(|e| b.coeff(Monomial::q(e)) == b.coeff(Monomial::q(degree - e)));
    ensure(palindromic, || format!("[{n},{k}] is not palindromic"))?;
    ensure(
        b.coefficient_sum() == Coefficient::from_int(binomial(n, k)),
        || {
            format!(
                "[{n},{k}] at q = 1 is {}, not C({n},{k})",
                b.coefficient_sum()
            )
        },
    )?;
    ensure(b == qbinomial_by_division(n, k), || {
        format!("[{n},{k}] disagrees with the quotient form")
    })
}

/// `[n-2, k-1](1 - q^(n-1)) = (1 - q^(n-k)) [n-1, k-1]` and
/// `1/(q;q)_(n+1) = 1/((1 - q^(n+1)) (q;q)_n)`.
pub fn reduction_identities(n: i64, k: i64, order: i64) -> Check {
    let lhs = qbinomial(n - 2, k - 1).mul(&one_minus_q(n - 1));
    let rhs = one_minus_q(n - k).mul(&qbinomial(n - 1, k - 1));
    ensure(lhs == rhs, || {
        format!("binomial reduction fails at ({n}, {k})")
    })?;
    let poch = |len: i64| {
        qpochhammer(PochhammerBase::q(1), len as u32, order)
            .unwrap()
            .truncate(order)
    };
    let direct = poch(n + 1).invert().map_err(|e| e.to_string())?;
    let split = poch(n)
        .invert()
        .map_err(|e| e.to_string())?
        .div_one_minus_q(n + 1)
        .map_err(|e| e.to_string())?;
    agree("1/(q;q)_(n+1)", &direct, &split)
}

/// `(a;q)_(n+1) = (a;q)_n (1 - a q^(step n))`.
pub fn pochhammer_recurrence(a: PochhammerBase, n: u32, order: i64) -> Check {
    let next = qpochhammer(a, n + 1, order).map_err(|e| e.to_string())?;
    let here = qpochhammer(a, n, order).map_err(|e| e.to_string())?;
    let factor = Series::polynomial([
        (Monomial::ONE, Coefficient::one()),
        (
            Monomial::new(a.q_exp + a.step * n as i64, a.t_exp),
            Coefficient::from_int(-(a.sign as i64)),
        ),
    ]);
    agree("Pochhammer recurrence", &next, &here.mul(&factor))
}

/// The assembled left side of the bracket identity carries `q^-k` and
/// `q^-2k` pieces that must cancel to a power series with constant term 1.
pub fn negative_exponents_cancel(k: i64, order: i64) -> Check {
    let lhs = anothernatural_lhs(k, order).map_err(|e| e.to_string())?;
    canonical("lhs", &lhs)?;
    ensure(lhs.valuation().is_some_and(|v| v >= 0), || {
        format!("k = {k}: lowest exponent {:?}", lhs.valuation())
    })?;
    ensure(lhs.coeff(Monomial::ONE).is_one(), || {
        format!("k = {k}: constant term {}", lhs.coeff(Monomial::ONE))
    })
}
