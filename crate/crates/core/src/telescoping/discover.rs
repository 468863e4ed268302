//! Bounded-ansatz creative telescoping.
//!
//! The unknowns are the coefficients (in `Q(q, t)`) of `p_1..p_(r+1)` as
//! polynomials in `x` and of the numerator of `R` over the fixed denominator
//! `(1 - x)(1 - q x)...(1 - q^(r-1) x)`. For random `q, t` in `F_p` the
//! relation divided by the term, sampled at random `(x, y)`, gives a linear
//! system whose one-dimensional kernel is the specialised certificate.
//! Rational-function reconstruction in `q`, then in `t`, then of each
//! rational number, lifts it back, and the lift is checked exactly.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::telescoping::certificate::Certificate;
use crate::telescoping::check::cleared_residual;
use crate::telescoping::modp::{self, Poly};
use crate::telescoping::mpoly::{Exps, MPoly, RationalFunction, Q, T};
use crate::telescoping::term::QHyperTerm;

/// Degree bounds of the ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Degree in `x` of every `p_i`.
    pub deg_p: usize,
    /// Degrees in `x` and `y` of the numerator of `R`.
    pub deg_rx: usize,
    pub deg_ry: usize,
}

impl Bounds {
    pub fn new(deg_p: usize, deg_rx: usize, deg_ry: usize) -> Self {
        Bounds {
            deg_p,
            deg_rx,
            deg_ry,
        }
    }

    /// The smallest bounds known to hold the shipped certificates, and a
    /// modest default elsewhere.
    pub fn default_for(term: &QHyperTerm) -> Self {
        if *term == QHyperTerm::naturalreplace() {
            Bounds::new(5, 6, 4)
        } else if *term == QHyperTerm::infinite() {
            Bounds::new(15, 15, 6)
        } else {
            Bounds::new(6, 8, 4)
        }
    }

    fn unknowns(&self, order: usize) -> usize {
        (order + 1) * (self.deg_p + 1) + (self.deg_rx + 1) * (self.deg_ry + 1)
    }

    fn raised(&self, by: usize) -> Self {
        Bounds::new(self.deg_p + by, self.deg_rx + by, self.deg_ry + by)
    }
}

/// One probe of the linear system at a random specialisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub bounds: Bounds,
    pub unknowns: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    /// The rank profile of every probe, in order.
    pub attempts: Vec<Attempt>,
}

impl SearchOutcome {
    pub fn diagnostics(&self) -> String {
        self.attempts
            .iter()
            .map(|a| {
                format!(
                    "deg_p {}, deg_R ({}, {}): {} unknowns, rank {}, kernel {}",
                    a.bounds.deg_p,
                    a.bounds.deg_rx,
                    a.bounds.deg_ry,
                    a.unknowns,
                    a.rank,
                    a.kernel_dim
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Times the bounds are raised by `RAISE_STEP` after an empty kernel.
pub const RAISE_LIMIT: usize = 2;
pub const RAISE_STEP: usize = 2;

/// A polynomial reduced mod `p`, ready for repeated evaluation.
struct Compiled(Vec<(u64, Exps)>);

impl Compiled {
    fn new(p: &MPoly) -> Self {
        Compiled(
            p.terms()
                .map(|(e, c)| (modp::from_coefficient(c).expect("small coefficients"), *e))
                .collect(),
        )
    }

    /// `None` if a negative power of zero is needed.
    fn eval(&self, v: [u64; 4]) -> Option<u64> {
        let mut acc = 0;
        for (c, e) in &self.0 {
            let mut term = *c;
            for (var, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    term = modp::mul(term, modp::pow_signed(v[var], exp)?);
                }
            }
            acc = modp::add(acc, term);
        }
        Some(acc)
    }
}

struct Quotient {
    num: Compiled,
    den: Compiled,
}

impl Quotient {
    fn new(f: &RationalFunction) -> Self {
        Quotient {
            num: Compiled::new(&f.num),
            den: Compiled::new(&f.den),
        }
    }

    fn eval(&self, v: [u64; 4]) -> Option<u64> {
        let d = modp::inv(self.den.eval(v)?)?;
        Some(modp::mul(self.num.eval(v)?, d))
    }
}

/// The fixed denominator `(1 - x)(1 - q x)...(1 - q^(r-1) x)` of `R`.
fn ansatz_denominator(order: usize) -> MPoly {
    MPoly::product(
        &(0..order as i64)
            .map(|j| MPoly::from_ints(&[(1, [0, 0, 0, 0]), (-1, [j, 1, 0, 0])]))
            .collect::<Vec<_>>(),
    )
}

struct Ansatz {
    order: usize,
    bounds: Bounds,
    shift_n: Quotient,
    shift_k: Quotient,
    den: Compiled,
}

impl Ansatz {
    fn new(term: &QHyperTerm, order: usize, bounds: Bounds) -> Self {
        Ansatz {
            order,
            bounds,
            shift_n: Quotient::new(&term.shift_n()),
            shift_k: Quotient::new(&term.shift_k()),
            den: Compiled::new(&ansatz_denominator(order)),
        }
    }

    fn unknowns(&self) -> usize {
        self.bounds.unknowns(self.order)
    }

    fn r_index(&self, a: usize, b: usize) -> usize {
        (self.order + 1) * (self.bounds.deg_p + 1) + a * (self.bounds.deg_ry + 1) + b
    }

    /// One row of the system at `(x, y)` for fixed `q, t`.
    fn row(&self, q: u64, t: u64, x: u64, y: u64) -> Option<Vec<u64>> {
        let mut row = vec![0; self.unknowns()];
        // prefix[s] = prod_(j < s) shift_n(q^j x, y)
        let mut prefix = vec![1u64];
        let mut qx = x;
        for _ in 0..self.order {
            let v = self.shift_n.eval([q, qx, y, t])?;
            prefix.push(modp::mul(*prefix.last().unwrap(), v));
            qx = modp::mul(qx, q);
        }
        for i in 0..=self.order {
            let mut xd = prefix[self.order - i];
            for d in 0..=self.bounds.deg_p {
                row[i * (self.bounds.deg_p + 1) + d] = xd;
                xd = modp::mul(xd, x);
            }
        }
        let s1 = self.shift_k.eval([q, x, y, t])?;
        let dinv = modp::inv(self.den.eval([q, x, y, t])?)?;
        let qy = modp::mul(q, y);
        let mut xa = dinv;
        for a in 0..=self.bounds.deg_rx {
            let (mut yb, mut qyb) = (1u64, 1u64);
            for b in 0..=self.bounds.deg_ry {
                let g = modp::sub(modp::mul(modp::mul(xa, qyb), s1), modp::mul(xa, yb));
                row[self.r_index(a, b)] = modp::sub(0, g);
                yb = modp::mul(yb, y);
                qyb = modp::mul(qyb, qy);
            }
            xa = modp::mul(xa, x);
        }
        Some(row)
    }

    /// Kernel basis and rank at one specialisation of `(q, t)`.
    fn kernel(&self, q: u64, t: u64, seed: u64) -> (Vec<Vec<u64>>, usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let need = self.unknowns() + 12;
        let mut rows = Vec::with_capacity(need);
        while rows.len() < need {
            let (x, y) = (rng.gen_range(2..modp::P), rng.gen_range(2..modp::P));
            if let Some(r) = self.row(q, t, x, y) {
                rows.push(r);
            }
        }
        modp::nullspace(rows, self.unknowns())
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(2..modp::P)
}

/// Normalised kernel vectors at a batch of `(q, t)` points; `None` where the
/// specialisation is unlucky.
fn samples(ansatz: &Ansatz, points: &[(u64, u64, u64)], pivot: usize) -> Vec<Option<Vec<u64>>> {
    points
        .par_iter()
        .map(|&(q, t, seed)| {
            let (basis, _) = ansatz.kernel(q, t, seed);
            if basis.len() != 1 {
                return None;
            }
            let v = &basis[0];
            let s = modp::inv(v[pivot])?;
            Some(v.iter().map(|&c| modp::mul(c, s)).collect())
        })
        .collect()
}

/// Values of every unknown as rational functions of one variable, grown
/// until a fit on the first points predicts the held-out ones.
struct Fitter<'a> {
    ansatz: &'a Ansatz,
    pivot: usize,
    rng: ChaCha8Rng,
}

const HOLDOUT: usize = 4;
const MAX_POINTS: usize = 1024;

impl Fitter<'_> {
    /// Fits in `q` for fixed `t`: numerators and a common monic denominator.
    fn fit_q(&mut self, t: u64) -> Option<(Vec<Poly>, Poly)> {
        let mut xs: Vec<u64> = Vec::new();
        let mut ys: Vec<Vec<u64>> = Vec::new();
        let mut want = 8;
        loop {
            while xs.len() < want + HOLDOUT {
                let batch: Vec<(u64, u64, u64)> = (0..(want + HOLDOUT - xs.len()))
                    .map(|_| (random_point(&mut self.rng), t, self.rng.gen()))
                    .collect();
                for (p, s) in batch.iter().zip(samples(self.ansatz, &batch, self.pivot)) {
                    if let Some(v) = s {
                        xs.push(p.0);
                        ys.push(v);
                    }
                }
            }
            if let Some(fit) = fit_all(&xs, &ys, want) {
                return Some(fit);
            }
            if want >= MAX_POINTS {
                return None;
            }
            want *= 2;
        }
    }
}

/// Reconstructs every coordinate from the first `n` points and checks the
/// rest; returns numerators over a common monic denominator.
fn fit_all(xs: &[u64], ys: &[Vec<u64>], n: usize) -> Option<(Vec<Poly>, Poly)> {
    let width = ys[0].len();
    let mut fits = Vec::with_capacity(width);
    for u in 0..width {
        let col: Vec<u64> = ys.iter().map(|v| v[u]).collect();
        let (num, den) = modp::rational_function_from_values(&xs[..n], &col[..n])?;
        for (i, &x) in xs.iter().enumerate().skip(n) {
            let d = modp::inv(den.eval(x))?;
            if modp::mul(num.eval(x), d) != col[i] {
                return None;
            }
        }
        fits.push((num, den));
    }
    let common = fits
        .iter()
        .fold(Poly::constant(1), |acc, (_, d)| acc.lcm(d));
    let nums = fits
        .iter()
        .map(|(num, den)| num.mul(&common.div_rem(den).0))
        .collect();
    Some((nums, common))
}

/// Reconstructs a polynomial in `(q, t)` mod `p`, coefficient-wise in `t`,
/// from its values at many `t`. Each entry is `(t, coefficients in q)`.
fn fit_t(points: &[(u64, Vec<Poly>)], n: usize) -> Option<Vec<Vec<(Poly, Poly)>>> {
    let xs: Vec<u64> = points.iter().map(|p| p.0).collect();
    let width = points[0].1.len();
    let mut out = Vec::with_capacity(width);
    for u in 0..width {
        let len = points[0].1[u].0.len();
        let mut coeffs = Vec::with_capacity(len);
        for j in 0..len {
            let col: Vec<u64> = points
                .iter()
                .map(|p| p.1[u].0.get(j).copied().unwrap_or(0))
                .collect();
            let (num, den) = modp::rational_function_from_values(&xs[..n], &col[..n])?;
            for (i, &x) in xs.iter().enumerate().skip(n) {
                if modp::mul(num.eval(x), modp::inv(den.eval(x))?) != col[i] {
                    return None;
                }
            }
            coeffs.push((num, den));
        }
        out.push(coeffs);
    }
    Some(out)
}

/// Coefficients mod `p` of each unknown as a polynomial in `(q, t)`, keyed by
/// `(q_exp, t_exp)`, up to one common factor.
type Lifted = Vec<BTreeMap<(i64, i64), u64>>;

fn lift(ansatz: &Ansatz, has_t: bool, pivot: usize, seed: u64) -> Option<Lifted> {
    let mut fitter = Fitter {
        ansatz,
        pivot,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    if !has_t {
        let (nums, _) = fitter.fit_q(1)?;
        return Some(
            nums.iter()
                .map(|p| {
                    p.0.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(j, &c)| ((j as i64, 0), c))
                        .collect()
                })
                .collect(),
        );
    }
    // Stage one: for each t, numerators and common denominator in q; the
    // denominator is appended as the last entry so that it is lifted too.
    let mut points: Vec<(u64, Vec<Poly>)> = Vec::new();
    let mut shape: Option<Vec<i64>> = None;
    let mut want = 4;
    loop {
        while points.len() < want + HOLDOUT {
            let t = random_point(&mut fitter.rng);
            let Some((mut nums, den)) = fitter.fit_q(t) else {
                continue;
            };
            nums.push(den);
            let this: Vec<i64> = nums.iter().map(Poly::degree).collect();
            match &shape {
                None => shape = Some(this),
                Some(s) if *s != this => {
                    // A degree drop marks an unlucky t; a rise means the first
                    // one was unlucky.
                    if this.iter().zip(s).any(|(a, b)| a > b) {
                        points.clear();
                        shape = Some(this);
                    } else {
                        continue;
                    }
                }
                Some(_) => {}
            }
            points.push((t, nums));
        }
        if let Some(fits) = fit_t(&points, want) {
            // Clear the t-denominators with their lcm.
            let l = fits
                .iter()
                .flatten()
                .fold(Poly::constant(1), |acc, (_, d)| acc.lcm(d));
            let unknowns = fits.len() - 1;
            return Some(
                fits.into_iter()
                    .take(unknowns)
                    .map(|coeffs| {
                        let mut out = BTreeMap::new();
                        for (j, (num, den)) in coeffs.iter().enumerate() {
                            let poly = num.mul(&l.div_rem(den).0);
                            for (b, &c) in poly.0.iter().enumerate() {
                                if c != 0 {
                                    out.insert((j as i64, b as i64), c);
                                }
                            }
                        }
                        out
                    })
                    .collect(),
            );
        }
        if want >= MAX_POINTS {
            return None;
        }
        want *= 2;
    }
}

/// Lifted residues to an exact certificate with integer coefficients and no
/// common monomial factor in `(q, t)`.
fn to_certificate(id: &str, ansatz: &Ansatz, lifted: &Lifted) -> Option<Certificate> {
    let mut terms: Vec<Vec<(Exps, Coefficient)>> = Vec::with_capacity(lifted.len());
    for u in lifted {
        let mut row = Vec::with_capacity(u.len());
        for (&(qe, te), &c) in u {
            row.push(([qe, 0, 0, te], modp::rational_reconstruct(c)?));
        }
        terms.push(row);
    }
    let all = || terms.iter().flatten().map(|(_, c)| c);
    let scale = Coefficient::from_bigint(Coefficient::lcm_denominators(all()));
    let mut p = Vec::with_capacity(ansatz.order + 1);
    let width = ansatz.bounds.deg_p + 1;
    for i in 0..=ansatz.order {
        let poly = MPoly::from_terms((0..width).flat_map(|d| {
            terms[i * width + d]
                .iter()
                .map(move |(e, c)| ([e[Q], d as i64, 0, e[T]], c.clone()))
        }));
        p.push(poly.scale(&scale));
    }
    let mut num = MPoly::zero();
    for a in 0..=ansatz.bounds.deg_rx {
        for b in 0..=ansatz.bounds.deg_ry {
            let block = MPoly::from_terms(
                terms[ansatz.r_index(a, b)]
                    .iter()
                    .map(|(e, c)| ([e[Q], a as i64, b as i64, e[T]], c.clone())),
            );
            num = num.add(&block);
        }
    }
    let num = num.scale(&scale);
    normalized(id, p, num, ansatz_denominator(ansatz.order))
}

/// Divides out the integer content and the `(q, t)` monomial common to all
/// polynomials, and makes the leading coefficient of `p_1` positive.
pub(crate) fn normalized(id: &str, p: Vec<MPoly>, num: MPoly, den: MPoly) -> Option<Certificate> {
    let parts: Vec<&MPoly> = p
        .iter()
        .chain(std::iter::once(&num))
        .filter(|m| !m.is_zero())
        .collect();
    if parts.is_empty() {
        return None;
    }
    let joint = MPoly::from_terms(
        parts
            .iter()
            .flat_map(|m| m.terms().map(|(e, c)| ([e[Q], 0, 0, e[T]], c.abs()))),
    );
    let mut content = joint.content().abs();
    if p[0].leading().is_some_and(|(_, c)| c.is_negative()) {
        content = -content;
    }
    let inv = content.recip()?;
    let low = joint.min_monomial();
    let fix = |m: &MPoly| m.scale(&inv).shift_monomial([-low[Q], 0, 0, -low[T]]);
    let r = RationalFunction::new(fix(&num), den).ok()?;
    Some(Certificate {
        id: id.to_string(),
        p: p.iter().map(fix).collect(),
        r,
    })
}

/// Searches at `bounds`, shrinking a kernel of dimension above one and raising
/// the bounds after an empty one.
pub fn search(
    id: &str,
    term: &QHyperTerm,
    order: usize,
    bounds: Bounds,
    seed: u64,
) -> Result<SearchOutcome> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "recurrence order must be 1 or 2, got {order}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = Vec::new();
    let mut probe = |b: Bounds, rng: &mut ChaCha8Rng| {
        let ansatz = Ansatz::new(term, order, b);
        let (q, t) = (random_point(rng), random_point(rng));
        let (basis, rank) = ansatz.kernel(q, t, rng.gen());
        attempts.push(Attempt {
            bounds: b,
            unknowns: ansatz.unknowns(),
            rank,
            kernel_dim: basis.len(),
        });
        basis
    };
    let mut current = bounds;
    let mut basis = probe(current, &mut rng);
    let mut raises = 0;
    while basis.is_empty() && raises < RAISE_LIMIT {
        raises += 1;
        current = current.raised(RAISE_STEP);
        basis = probe(current, &mut rng);
    }
    if basis.is_empty() {
        return Ok(SearchOutcome {
            certificate: None,
            attempts,
        });
    }
    // Every extra dimension is a multiple of the certificate by a polynomial
    // in x; lower the x-degrees until exactly one remains.
    while basis.len() > 1 && current.deg_p > 0 && current.deg_rx > 0 {
        let lower = Bounds::new(current.deg_p - 1, current.deg_rx - 1, current.deg_ry);
        let next = probe(lower, &mut rng);
        if next.is_empty() {
            break;
        }
        current = lower;
        basis = next;
    }
    if basis.len() != 1 {
        return Err(Error::NotFound(format!(
            "kernel of dimension {} could not be reduced to one",
            basis.len()
        )));
    }
    let ansatz = Ansatz::new(term, order, current);
    // Pivot: the highest x-coefficient of p_1 that is nonzero, else the first
    // nonzero unknown.
    let v = &basis[0];
    let pivot = (0..=current.deg_p)
        .rev()
        .find(|&d| v[d] != 0)
        .or_else(|| v.iter().position(|&c| c != 0))
        .expect("kernel vectors are nonzero");
    let lifted = lift(&ansatz, term.has_t(), pivot, rng.gen())
        .ok_or_else(|| Error::NotFound("reconstruction did not stabilise".into()))?;
    let cert = to_certificate(id, &ansatz, &lifted)
        .ok_or_else(|| Error::NotFound("rational reconstruction of a coefficient failed".into()))?;
    if !cleared_residual(term, &cert).0.is_zero() {
        return Err(Error::NotFound(
            "reconstructed certificate does not verify exactly".into(),
        ));
    }
    Ok(SearchOutcome {
        certificate: Some(cert),
        attempts,
    })
}

/// Seed derived from the id, so repeated runs give identical output.
pub fn default_seed(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

/// The certificate found at `bounds` (raised as needed), or `NotFound` with
/// the rank profile of every probe.
pub fn find_certificate(
    id: &str,
    term: &QHyperTerm,
    order: usize,
    bounds: Bounds,
) -> Result<Certificate> {
    let outcome = search(id, term, order, bounds, default_seed(id))?;
    let diagnostics = outcome.diagnostics();
    outcome.certificate.ok_or(Error::NotFound(diagnostics))
}
