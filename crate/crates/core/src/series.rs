//! Truncated Laurent series in `q` with coefficients in `Q[t]`.
//!
//! A [`Series`] is a sparse map `(q_exp, t_exp) -> coefficient` together with
//! an `order` N: every coefficient of `q^e` with `e <= N` is exact, nothing
//! above N is known. The symbol `t` stands for `q^m` when a parameter is kept
//! formal.
//!
//! Invariants (see `Series::check_invariants`):
//! - no stored monomial has `q_exp > order`
//! - no stored coefficient is zero
//! - exact polynomials carry `order == EXACT`

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};

/// Order of a series that is an exact Laurent polynomial.
pub const EXACT: i64 = i64::MAX / 4;

/// The monomial `q^q_exp t^t_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub q_exp: i64,
    pub t_exp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q_exp: 0, t_exp: 0 };

    pub fn new(q_exp: i64, t_exp: u32) -> Self {
        Monomial { q_exp, t_exp }
    }

    pub fn q(q_exp: i64) -> Self {
        Monomial { q_exp, t_exp: 0 }
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            q_exp: self.q_exp + other.q_exp,
            t_exp: self.t_exp + other.t_exp,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q_exp, self.t_exp) {
            (0, 0) => write!(f, "1"),
            (q, 0) => write!(f, "q^{q}"),
            (0, t) => write!(f, "t^{t}"),
            (q, t) => write!(f, "q^{q}*t^{t}"),
        }
    }
}

/// A polynomial in `t`: the coefficient of a fixed power of `q`.
pub type TPolynomial = BTreeMap<u32, Coefficient>;

fn clamp_order(order: i64) -> i64 {
    order.min(EXACT)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<Monomial, Coefficient>,
    order: i64,
}

impl Series {
    pub fn zero(order: i64) -> Self {
        Series {
            terms: BTreeMap::new(),
            order: clamp_order(order),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Monomial::ONE, Coefficient::one(), order)
    }

    /// `c * m`, dropped if `m` lies above `order`.
    pub fn monomial(m: Monomial, c: Coefficient, order: i64) -> Self {
        let mut s = Self::zero(order);
        if m.q_exp <= s.order && !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    /// `sign * q^e`, the workhorse for signed pentagonal terms.
    pub fn q_power(e: i64, sign: i64, order: i64) -> Self {
        Self::monomial(Monomial::q(e), Coefficient::from_int(sign), order)
    }

    /// Builds a series from arbitrary terms: duplicates are summed, zeros and
    /// terms above `order` dropped.
    pub fn from_terms<I>(terms: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let order = clamp_order(order);
        let mut map: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
        for (m, c) in terms {
            if m.q_exp > order || c.is_zero() {
                continue;
            }
            let slot = map.entry(m).or_insert_with(Coefficient::zero);
            *slot += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Series { terms: map, order }
    }

    /// An exact Laurent polynomial.
    pub fn polynomial<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        Self::from_terms(terms, EXACT)
    }

    /// Exact polynomial in `q` from `(exponent, integer coefficient)` pairs.
    pub fn q_polynomial(terms: &[(i64, i64)]) -> Self {
        Self::polynomial(
            terms
                .iter()
                .map(|&(e, c)| (Monomial::q(e), Coefficient::from_int(c))),
        )
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    /// Lowest stored q-exponent, if any term is stored.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.q_exp)
    }

    /// Largest stored q-exponent.
    pub fn max_q_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|m| m.q_exp)
    }

    /// Lower bound on the q-valuation of the true (untruncated) series.
    pub fn min_q_exp(&self) -> i64 {
        self.valuation().unwrap_or(self.order.saturating_add(1))
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.t_exp).max().unwrap_or(0)
    }

    pub fn has_t(&self) -> bool {
        self.terms.keys().any(|m| m.t_exp > 0)
    }

    /// Coefficient of a single monomial (zero if absent). Does not check the
    /// order; see [`Series::coeff_at`].
    pub fn coeff(&self, m: Monomial) -> Coefficient {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// The exact `t`-polynomial multiplying `q^q_exp`.
    pub fn coeff_at(&self, q_exp: i64) -> Result<TPolynomial> {
        if q_exp > self.order {
            return Err(Error::OrderExceeded {
                requested: q_exp,
                order: self.order,
            });
        }
        Ok(self
            .terms
            .range(Monomial::new(q_exp, 0)..=Monomial::new(q_exp, u32::MAX))
            .map(|(m, c)| (m.t_exp, c.clone()))
            .collect())
    }

    /// Drops everything above `order` (no-op if already coarser).
    pub fn truncate(&self, order: i64) -> Series {
        if order >= self.order {
            return self.clone();
        }
        Series {
            terms: self
                .terms
                .range(..Monomial::new(order + 1, 0))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            order,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Series {
        if c.is_zero() {
            return Series::zero(self.order);
        }
        Series {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
            order: self.order,
        }
    }

    pub fn scale_int(&self, c: i64) -> Series {
        self.scale(&Coefficient::from_int(c))
    }

    /// Multiplication by the monomial `m`; the order shifts with it.
    pub fn shift(&self, m: Monomial) -> Series {
        let order = if self.is_exact() {
            EXACT
        } else {
            clamp_order(self.order + m.q_exp)
        };
        Series {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
            order,
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let mut terms: BTreeMap<Monomial, Coefficient> = self
            .terms
            .range(..=Monomial::new(order, u32::MAX))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        for (m, c) in other.terms.range(..=Monomial::new(order, u32::MAX)) {
            match terms.get_mut(m) {
                Some(slot) => {
                    *slot += c;
                    if slot.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        Series { terms, order }
    }

    pub fn neg(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    /// Order of a product: the tightest order at which neither factor's
    /// unknown tail can contribute.
    fn product_order(&self, other: &Series) -> i64 {
        let bound = |s: &Series, o: &Series| {
            if s.is_exact() {
                EXACT
            } else {
                s.order.saturating_add(o.min_q_exp())
            }
        };
        let a = bound(self, other);
        let b = bound(other, self);
        clamp_order(a.min(b))
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.product_order(other);
        if self.is_zero() || other.is_zero() {
            return Series::zero(order);
        }
        let lo = self.min_q_exp() + other.min_q_exp();
        let hi = order.min(self.max_q_exp().unwrap() + other.max_q_exp().unwrap());
        if hi < lo {
            return Series::zero(order);
        }
        let a: Vec<(&Monomial, &Coefficient)> = self.terms.iter().collect();
        let b: Vec<(&Monomial, &Coefficient)> = other.terms.iter().collect();
        let span = (hi - lo + 1) as u128;
        let work = (a.len() as u128) * (b.len() as u128);
        if span <= 4 * work + 64 {
            mul_dense(&a, &b, lo, hi, order)
        } else {
            mul_sparse(&a, &b, hi, order)
        }
    }

    /// Multiplicative inverse of a series whose lowest q-degree part is
    /// `±q^e` (no `t`). The result is exact through `order - 2e`.
    pub fn invert(&self) -> Result<Series> {
        let e = match self.valuation() {
            Some(e) => e,
            None => return Err(Error::NotAUnit("0".into())),
        };
        let lead = self.coeff_at(e)?;
        let c = match (lead.len(), lead.get(&0)) {
            (1, Some(c)) if c.is_sign_unit() => c.clone(),
            _ => {
                let shown = Series::from_terms(
                    lead.iter().map(|(t, c)| (Monomial::new(e, *t), c.clone())),
                    EXACT,
                );
                return Err(Error::NotAUnit(shown.to_string()));
            }
        };
        if self.is_exact() {
            // A polynomial with a single term inverts exactly.
            if self.terms.len() == 1 {
                return Ok(Series::monomial(Monomial::q(-e), c, EXACT));
            }
            return Err(Error::UnboundedInverse);
        }
        // a = c q^e (1 + u), u exact through relative degree order - e.
        let rel_order = self.order - e;
        let result_order = self.order - 2 * e;
        let u: Vec<(i64, u32, Coefficient)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.q_exp > e)
            .map(|(m, x)| (m.q_exp - e, m.t_exp, x * &c))
            .collect();
        let len = (rel_order + 1).max(0) as usize;
        let mut inv: Vec<Vec<Coefficient>> = vec![Vec::new(); len];
        if len > 0 {
            inv[0] = vec![Coefficient::one()];
        }
        for j in 1..len {
            let mut acc: Vec<Coefficient> = Vec::new();
            for (i, tu, cu) in &u {
                let i = *i as usize;
                if i > j {
                    break;
                }
                for (tb, cb) in inv[j - i].iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let t = *tu as usize + tb;
                    if acc.len() <= t {
                        acc.resize(t + 1, Coefficient::zero());
                    }
                    acc[t].add_product(cu, cb);
                }
            }
            for x in acc.iter_mut() {
                *x = -&*x;
            }
            inv[j] = acc;
        }
        let terms = inv.into_iter().enumerate().flat_map(|(j, ts)| {
            let c = c.clone();
            ts.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(move |(t, x)| (Monomial::new(j as i64 - e, t as u32), &x * &c))
        });
        Ok(Series::from_terms(terms, result_order))
    }

    /// `self / other` for a unit `other`.
    pub fn div(&self, other: &Series) -> Result<Series> {
        if other.is_exact() {
            let target = if self.is_exact() {
                return Err(Error::UnboundedInverse);
            } else {
                // Only the part of 1/other that can reach self's order matters.
                self.order - self.min_q_exp() + other.min_q_exp()
            };
            let inv = other.truncate(target.max(other.min_q_exp())).invert()?;
            return Ok(self.mul(&inv));
        }
        Ok(self.mul(&other.invert()?))
    }

    /// `self / (1 - q^e)` for `e >= 1`, by the recurrence
    /// `b_i = a_i + b_(i-e)`. Needs a finite order.
    pub fn div_one_minus_q(&self, e: i64) -> Result<Series> {
        if e < 1 {
            return Err(Error::InvalidArgument(format!(
                "1/(1 - q^{e}) is not a unit series"
            )));
        }
        if self.is_exact() {
            return Err(Error::UnboundedInverse);
        }
        let lo = match self.valuation() {
            Some(v) => v,
            None => return Ok(self.clone()),
        };
        let mut buckets: Vec<Vec<Coefficient>> = vec![Vec::new(); (self.order - lo + 1) as usize];
        for (m, c) in &self.terms {
            let slot = &mut buckets[(m.q_exp - lo) as usize];
            let t = m.t_exp as usize;
            if slot.len() <= t {
                slot.resize(t + 1, Coefficient::zero());
            }
            slot[t] = c.clone();
        }
        let e = e as usize;
        for i in e..buckets.len() {
            let (head, tail) = buckets.split_at_mut(i);
            let src = &head[i - e];
            let dst = &mut tail[0];
            if dst.len() < src.len() {
                dst.resize(src.len(), Coefficient::zero());
            }
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d += s;
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (i, slot) in buckets.into_iter().enumerate() {
            for (t, c) in slot.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(Monomial::new(lo + i as i64, t as u32), c);
                }
            }
        }
        Ok(Series {
            terms,
            order: self.order,
        })
    }

    /// `self * (1 - c*m)` computed in one pass.
    pub fn mul_one_minus(&self, m: Monomial, c: &Coefficient) -> Series {
        let factor = Series::from_terms([(Monomial::ONE, Coefficient::one()), (m, -c)], EXACT);
        self.mul(&factor)
    }

    /// Substitutes `t -> q^m`.
    pub fn substitute_t(&self, m: i64) -> Series {
        assert!(m >= 0, "t -> q^m needs m >= 0 to preserve the order");
        Series::from_terms(
            self.terms
                .iter()
                .map(|(k, c)| (Monomial::q(k.q_exp + m * k.t_exp as i64), c.clone())),
            self.order,
        )
    }

    /// Sum of all coefficients (the evaluation at `q = t = 1` of an exact
    /// polynomial).
    pub fn coefficient_sum(&self) -> Coefficient {
        self.terms.values().cloned().sum()
    }

    /// First monomial (in `(q_exp, t_exp)` order) at which `self` and `other`
    /// differ, restricted to q-exponents `<= upto`.
    pub fn first_difference(
        &self,
        other: &Series,
        upto: i64,
    ) -> Option<(Monomial, Coefficient, Coefficient)> {
        let diff = self.sub(other);
        diff.terms
            .keys()
            .find(|m| m.q_exp <= upto)
            .map(|m| (*m, self.coeff(*m), other.coeff(*m)))
    }

    /// Checks the structural invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        self.order <= EXACT
            && self
                .terms
                .iter()
                .all(|(m, c)| m.q_exp <= self.order && !c.is_zero())
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            order: if self.is_exact() {
                None
            } else {
                Some(self.order)
            },
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.q_exp, m.t_exp, c.to_fraction_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Series> {
        let terms = json
            .terms
            .iter()
            .map(|(q, t, c)| Ok((Monomial::new(*q, *t), c.parse::<Coefficient>()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::from_terms(terms, json.order.unwrap_or(EXACT)))
    }
}

fn mul_dense(
    a: &[(&Monomial, &Coefficient)],
    b: &[(&Monomial, &Coefficient)],
    lo: i64,
    hi: i64,
    order: i64,
) -> Series {
    let mut buckets: Vec<Vec<Coefficient>> = vec![Vec::new(); (hi - lo + 1) as usize];
    let b_min = b[0].0.q_exp;
    for (ma, ca) in a {
        if ma.q_exp + b_min > hi {
            break;
        }
        for (mb, cb) in b {
            let q = ma.q_exp + mb.q_exp;
            if q > hi {
                break;
            }
            let slot = &mut buckets[(q - lo) as usize];
            let t = (ma.t_exp + mb.t_exp) as usize;
            if slot.len() <= t {
                slot.resize(t + 1, Coefficient::zero());
            }
            slot[t].add_product(ca, cb);
        }
    }
    let mut terms = BTreeMap::new();
    for (i, slot) in buckets.into_iter().enumerate() {
        for (t, c) in slot.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Monomial::new(lo + i as i64, t as u32), c);
            }
        }
    }
    Series { terms, order }
}

fn mul_sparse(
    a: &[(&Monomial, &Coefficient)],
    b: &[(&Monomial, &Coefficient)],
    hi: i64,
    order: i64,
) -> Series {
    let mut terms: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(**mb);
            if m.q_exp > hi {
                break;
            }
            terms
                .entry(m)
                .or_insert_with(Coefficient::zero)
                .add_product(ca, cb);
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Series { terms, order }
}

/// JSON form: `{"order": N, "terms": [[q_exp, t_exp, "num/den"], ...]}`,
/// terms sorted by `(q_exp, t_exp)`. Exact polynomials have `"order": null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: Option<i64>,
    pub terms: Vec<(i64, u32, String)>,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag.is_one(), *m == Monomial::ONE) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.order + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        Series::add(self, rhs)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(terms: &[(i64, i64)], order: i64) -> Series {
        Series::q_polynomial(terms).truncate(order)
    }

    #[test]
    fn add_cancels_and_sums() {
        let a = q(&[(0, 1), (1, -1)], 10);
        let b = q(&[(1, 1)], 10);
        assert_eq!(a.add(&b), Series::one(10));
        assert_eq!(a.add(&Series::zero(10)), a);
        let c = q(&[(0, 1), (2, 1)], 10).add(&q(&[(1, 1), (2, 1)], 10));
        assert_eq!(c, q(&[(0, 1), (1, 1), (2, 2)], 10));
    }

    #[test]
    fn add_takes_min_order() {
        let a = Series::one(5).add(&Series::q_power(7, 1, 9));
        assert_eq!(a.order(), 5);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn mul_examples() {
        let n = 20;
        let geom = Series::from_terms((0..=n).map(|e| (Monomial::q(e), Coefficient::one())), n);
        let one_minus_q = Series::q_polynomial(&[(0, 1), (1, -1)]);
        assert_eq!(one_minus_q.mul(&geom), Series::one(n));

        let a = Series::polynomial([
            (Monomial::ONE, Coefficient::one()),
            (Monomial::new(0, 1), Coefficient::from_int(-1)),
        ]);
        let b = Series::polynomial([
            (Monomial::ONE, Coefficient::one()),
            (Monomial::new(1, 1), Coefficient::from_int(-1)),
        ]);
        let expected = Series::polynomial([
            (Monomial::ONE, Coefficient::from_int(1)),
            (Monomial::new(0, 1), Coefficient::from_int(-1)),
            (Monomial::new(1, 1), Coefficient::from_int(-1)),
            (Monomial::new(1, 2), Coefficient::from_int(1)),
        ]);
        assert_eq!(a.mul(&b), expected);

        let p = Series::q_power(-2, 1, EXACT).mul(&Series::q_power(5, 1, EXACT));
        assert_eq!(p, Series::q_power(3, 1, EXACT));
    }

    #[test]
    fn mul_order_rule() {
        // (q^2 + O(q^11)) * (q^-1 + O(q^6)) is exact through min(10-1, 5+2).
        let a = Series::q_power(2, 1, 10);
        let b = Series::q_power(-1, 1, 5);
        assert_eq!(a.mul(&b).order(), 7);
    }

    #[test]
    fn invert_examples() {
        let n = 12;
        let inv = q(&[(0, 1), (1, -1)], n).invert().unwrap();
        assert_eq!(inv.len(), (n + 1) as usize);
        assert!(inv.terms().all(|(_, c)| c.is_one()));

        let not_unit = Series::polynomial([
            (Monomial::ONE, Coefficient::one()),
            (Monomial::new(0, 1), Coefficient::from_int(-1)),
        ])
        .truncate(10);
        assert!(matches!(not_unit.invert(), Err(Error::NotAUnit(_))));
        assert!(matches!(
            q(&[(0, 2), (1, 1)], 5).invert(),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            Series::q_polynomial(&[(0, 1), (1, -1)]).invert(),
            Err(Error::UnboundedInverse)
        ));
    }

    #[test]
    fn invert_with_positive_valuation_gives_negative_exponents() {
        // 1/(q - q^2) = q^-1 (1 + q + q^2 + ...)
        let a = q(&[(1, 1), (2, -1)], 10);
        let inv = a.invert().unwrap();
        assert_eq!(inv.order(), 8);
        assert_eq!(inv.valuation(), Some(-1));
        let prod = a.mul(&inv);
        assert_eq!(prod.truncate(prod.order()), Series::one(prod.order()));
    }

    #[test]
    fn div_one_minus_q_matches_invert() {
        let a = q(&[(0, 1), (2, 3), (3, -1)], 15);
        let via_inverse = a.mul(&q(&[(0, 1), (3, -1)], 15).invert().unwrap());
        assert_eq!(a.div_one_minus_q(3).unwrap(), via_inverse);
        assert!(a.div_one_minus_q(0).is_err());
    }

    #[test]
    fn coeff_at_bounds() {
        let a = q(&[(0, 1), (3, 5)], 4);
        assert_eq!(
            a.coeff_at(3).unwrap().get(&0),
            Some(&Coefficient::from_int(5))
        );
        assert!(a.coeff_at(2).unwrap().is_empty());
        assert!(matches!(a.coeff_at(5), Err(Error::OrderExceeded { .. })));
    }

    #[test]
    fn substitute_t() {
        let a = Series::polynomial([
            (Monomial::new(1, 2), Coefficient::from_int(3)),
            (Monomial::new(7, 0), Coefficient::from_int(-3)),
        ]);
        assert!(a.substitute_t(3).is_zero());
    }

    #[test]
    fn json_shape() {
        let a = q(&[(-1, 2), (0, 1)], 3);
        let js = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(js, r#"{"order":3,"terms":[[-1,0,"2/1"],[0,0,"1/1"]]}"#);
        let back: SeriesJson = serde_json::from_str(&js).unwrap();
        assert_eq!(Series::from_json(&back).unwrap(), a);
    }

    #[test]
    fn display() {
        let a = q(&[(0, 1), (1, -1), (5, 2)], 6);
        assert_eq!(a.to_string(), "1 - q^1 + 2*q^5 + O(q^7)");
    }
}
