//! Sparse Laurent polynomials in `(q, x, y, t)` with `x = q^n`, `y = q^k`,
//! `t = q^m`, and quotients of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::series::{Monomial, Series, EXACT};

pub const Q: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const T: usize = 3;
const NAMES: [&str; 4] = ["q", "x", "y", "t"];

/// Exponents of `(q, x, y, t)`.
pub type Exps = [i64; 4];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exps, Coefficient>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::monomial(Coefficient::one(), [0; 4])
    }

    pub fn constant(c: Coefficient) -> Self {
        MPoly::monomial(c, [0; 4])
    }

    pub fn monomial(c: Coefficient, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// The variable with index `var` (one of `Q`, `X`, `Y`, `T`).
    pub fn var(var: usize) -> Self {
        let mut e = [0; 4];
        e[var] = 1;
        MPoly::monomial(Coefficient::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Coefficient)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            *out.entry(e).or_insert_with(Coefficient::zero) += &c;
        }
        out.retain(|_, c: &mut Coefficient| !c.is_zero());
        MPoly { terms: out }
    }

    /// Integer coefficients: `(c, [q, x, y, t])`.
    pub fn from_ints(terms: &[(i64, Exps)]) -> Self {
        MPoly::from_terms(terms.iter().map(|(c, e)| (*e, Coefficient::from_int(*c))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exps) -> Coefficient {
        self.terms.get(e).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn max_degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// `max - min` exponent of `var`; 0 for the zero polynomial.
    pub fn span(&self, var: usize) -> i64 {
        match (self.min_degree(var), self.max_degree(var)) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(*e).or_insert_with(Coefficient::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut terms: BTreeMap<Exps, Coefficient> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                terms
                    .entry(e)
                    .or_insert_with(Coefficient::zero)
                    .add_product(ca, cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MPoly>>(factors: I) -> MPoly {
        factors.into_iter().fold(MPoly::one(), |acc, f| acc.mul(f))
    }

    pub fn pow(&self, n: u32) -> MPoly {
        (0..n).fold(MPoly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by the monomial with exponents `e`.
    pub fn shift_monomial(&self, e: Exps) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    (
                        [a[0] + e[0], a[1] + e[1], a[2] + e[2], a[3] + e[3]],
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Substitutes `var -> q^s var`, i.e. advances `n` (for `X`) or `k`
    /// (for `Y`) by `s`.
    pub fn q_shift(&self, var: usize, s: i64) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[Q] += s * e[var];
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x = q^n`, `y = q^k`; `t` stays formal. The result is an
    /// exact Laurent polynomial in `q` over `Q[t]`.
    pub fn eval_xy(&self, n: i64, k: i64) -> Result<Series> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e[T] < 0 {
                return Err(Error::InvalidArgument(format!(
                    "negative power of t in {self}"
                )));
            }
            terms.push((
                Monomial::new(e[Q] + n * e[X] + k * e[Y], e[T] as u32),
                c.clone(),
            ));
        }
        Ok(Series::from_terms(terms, EXACT))
    }

    /// Substitutes `t = q^m`.
    pub fn substitute_t(&self, m: i64) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| ([e[Q] + m * e[T], e[X], e[Y], 0], c.clone())),
        )
    }

    /// The monomial of componentwise minimal exponents.
    pub fn min_monomial(&self) -> Exps {
        let mut out = [0; 4];
        for (v, slot) in out.iter_mut().enumerate() {
            *slot = self.min_degree(v).unwrap_or(0);
        }
        out
    }

    /// `self` divided by its minimal monomial, and that monomial.
    pub fn strip_monomial(&self) -> (MPoly, Exps) {
        let m = self.min_monomial();
        (self.shift_monomial([-m[0], -m[1], -m[2], -m[3]]), m)
    }

    /// The rational `c` with `self / c` primitive over `Z` and with a
    /// positive leading coefficient.
    pub fn content(&self) -> Coefficient {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Coefficient::one();
        }
        let lead_negative = self
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        let sign = if lead_negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Coefficient::new(num_gcd.abs() * sign, den_lcm).expect("nonzero denominator")
    }

    /// `self` divided by its content: integer coefficients, gcd 1, positive
    /// leading coefficient.
    pub fn primitive(&self) -> MPoly {
        let c = self.content().recip().expect("content is nonzero");
        self.scale(&c)
    }

    pub fn leading(&self) -> Option<(&Exps, &Coefficient)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / other` when it exists as a Laurent polynomial.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (num, mn) = self.strip_monomial();
        let (den, md) = other.strip_monomial();
        let (le, lc) = den.leading().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = num;
        let mut quot = MPoly::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let d = [re[0] - le[0], re[1] - le[1], re[2] - le[2], re[3] - le[3]];
            if d.iter().any(|&v| v < 0) {
                return None;
            }
            let c = &rc / &lc;
            let step = MPoly::monomial(c, d);
            rem = rem.sub(&den.mul(&step));
            quot = quot.add(&step);
        }
        let shift = [mn[0] - md[0], mn[1] - md[1], mn[2] - md[2], mn[3] - md[3]];
        Some(quot.shift_monomial(shift))
    }

    /// Evaluation with every coefficient mapped through `f` and each
    /// variable given a value; used by the modular search.
    pub fn fold_terms<A>(&self, init: A, mut f: impl FnMut(A, &Exps, &Coefficient) -> A) -> A {
        self.terms.iter().fold(init, |acc, (e, c)| f(acc, e, c))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let vars: Vec<String> = (0..4)
                .filter(|&v| e[v] != 0)
                .map(|v| {
                    if e[v] == 1 {
                        NAMES[v].to_string()
                    } else {
                        format!("{}^{}", NAMES[v], e[v])
                    }
                })
                .collect();
            match (mag.is_one(), vars.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num / den`, reduced by content only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: MPoly,
    pub den: MPoly,
}

impl RationalFunction {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    pub fn poly(p: MPoly) -> Self {
        RationalFunction {
            num: p,
            den: MPoly::one(),
        }
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return RationalFunction {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let inv = self.den.content().recip().expect("content is nonzero");
        RationalFunction {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
            .normalized();
        }
        RationalFunction {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn q_shift(&self, var: usize, s: i64) -> RationalFunction {
        RationalFunction {
            num: self.num.q_shift(var, s),
            den: self.den.q_shift(var, s),
        }
    }

    pub fn substitute_t(&self, m: i64) -> RationalFunction {
        RationalFunction {
            num: self.num.substitute_t(m),
            den: self.den.substitute_t(m),
        }
    }

    /// Values at `x = q^n`, `y = q^k`; fails on a vanishing denominator.
    pub fn eval_xy(&self, n: i64, k: i64) -> Result<RationalValue> {
        let den = self.den.eval_xy(n, k)?;
        if den.is_zero() {
            return Err(Error::PoleOnGrid { n, k });
        }
        Ok(RationalValue {
            num: self.num.eval_xy(n, k)?,
            den,
        })
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// An exact element of `Q(q)[t]`-fractions: quotient of two exact Laurent
/// polynomials in `q` over `Q[t]`.
#[derive(Clone, Debug)]
pub struct RationalValue {
    pub num: Series,
    pub den: Series,
}

impl RationalValue {
    pub fn from_series(s: Series) -> Self {
        RationalValue {
            num: s,
            den: Series::one(EXACT),
        }
    }

    pub fn zero() -> Self {
        RationalValue::from_series(Series::zero(EXACT))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &RationalValue) -> RationalValue {
        RationalValue {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &RationalValue) -> RationalValue {
        if self.den == other.den {
            return RationalValue {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        RationalValue {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &RationalValue) -> RationalValue {
        self.add(&RationalValue {
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn equals(&self, other: &RationalValue) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Expansion as a truncated series (the denominator must be a unit).
    pub fn to_series(&self, order: i64) -> Result<Series> {
        if self.num.is_zero() {
            return Ok(Series::zero(order));
        }
        let pad = order - self.num.min_q_exp() + self.den.min_q_exp();
        Ok(self
            .num
            .truncate(pad.max(order))
            .div(&self.den)?
            .truncate(order))
    }
}
