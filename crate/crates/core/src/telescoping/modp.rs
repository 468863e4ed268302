//! Arithmetic in `F_p` for `p = 2^61 - 1`, dense univariate polynomials over
//! it, nullspaces, and the two reconstructions (rational functions from
//! values, rationals from residues).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coefficient::Coefficient;

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let w = a as u128 * b as u128;
    let lo = (w as u64) & P;
    let hi = (w >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, P - 2))
}

/// `a^e` for a possibly negative exponent; `None` when `a = 0` and `e < 0`.
pub fn pow_signed(a: u64, e: i64) -> Option<u64> {
    if e >= 0 {
        Some(pow(a, e as u64))
    } else {
        inv(a).map(|ai| pow(ai, e.unsigned_abs()))
    }
}

fn from_bigint(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((n % &p) + &p) % &p;
    r.to_u64().expect("reduced residue fits")
}

/// `None` when the denominator vanishes mod `p`.
pub fn from_coefficient(c: &Coefficient) -> Option<u64> {
    inv(from_bigint(c.denom())).map(|d| mul(from_bigint(c.numer()), d))
}

/// The rational `n/d` with `|n|, |d| <= sqrt(p/2)` congruent to `a`.
pub fn rational_reconstruct(a: u64) -> Option<Coefficient> {
    let bound = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    let c = Coefficient::new(BigInt::from(n), BigInt::from(d)).ok()?;
    (from_coefficient(&c) == Some(a)).then_some(c)
}

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: u64) -> Poly {
        Poly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, z: u64) -> u64 {
        self.0.iter().rev().fold(0, |acc, &c| add(mul(acc, z), c))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Poly((0..n).map(|i| add(get(&self.0, i), get(&o.0, i))).collect()).trimmed()
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Poly((0..n).map(|i| sub(get(&self.0, i), get(&o.0, i))).collect()).trimmed()
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly(self.0.iter().map(|&a| mul(a, c)).collect()).trimmed()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = add(out[i + j], mul(a, b));
            }
        }
        Poly(out).trimmed()
    }

    pub fn monic(&self) -> Poly {
        match inv(self.lead()) {
            Some(l) => self.scale(l),
            None => Poly::zero(),
        }
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = inv(d.lead()).expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len();
        if r.len() < dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd + 1];
        for i in (0..q.len()).rev() {
            let c = mul(r[i + dd - 1], dl);
            q[i] = c;
            if c != 0 {
                for (j, &b) in d.0.iter().enumerate() {
                    r[i + j] = sub(r[i + j], mul(c, b));
                }
            }
        }
        r.truncate(dd - 1);
        (Poly(q).trimmed(), Poly(r).trimmed())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        let g = self.gcd(o);
        self.mul(&o.div_rem(&g).0).monic()
    }

    /// The interpolant of degree `< xs.len()` (Newton form, then expanded).
    pub fn interpolate(xs: &[u64], ys: &[u64]) -> Option<Poly> {
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = inv(sub(xs[i], xs[i - j]))?;
                coef[i] = mul(sub(coef[i], coef[i - 1]), den);
            }
        }
        let mut p = Poly::zero();
        for i in (0..n).rev() {
            p = p
                .mul(&Poly(vec![sub(0, xs[i]), 1]))
                .add(&Poly::constant(coef[i]));
        }
        Some(p)
    }
}

/// `num / den` with `den` monic and coprime to `num`, from values at distinct
/// points, or `None` when the points do not determine one.
pub fn rational_function_from_values(xs: &[u64], ys: &[u64]) -> Option<(Poly, Poly)> {
    let n = xs.len();
    let interp = Poly::interpolate(xs, ys)?;
    let mut modulus = Poly::constant(1);
    for &x in xs {
        modulus = modulus.mul(&Poly(vec![sub(0, x), 1]));
    }
    // Extended Euclid on (modulus, interp), stopped at the first remainder of
    // degree below half the number of points.
    let target = (n / 2) as i64;
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1) = (Poly::zero(), Poly::constant(1));
    while r1.degree() >= target {
        let (q, r) = r0.div_rem(&r1);
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() || t1.degree() + r1.degree().max(0) >= n as i64 {
        return None;
    }
    let g = r1.gcd(&t1);
    let (num, den) = if g.degree() > 0 {
        (r1.div_rem(&g).0, t1.div_rem(&g).0)
    } else {
        (r1, t1)
    };
    let l = inv(den.lead())?;
    let (num, den) = (num.scale(l), den.scale(l));
    if xs.iter().any(|&x| den.eval(x) == 0) {
        return None;
    }
    Some((num, den))
}

/// A basis of the right nullspace of `rows` (each of length `cols`), and the
/// rank.
pub fn nullspace(mut rows: Vec<Vec<u64>>, cols: usize) -> (Vec<Vec<u64>>, usize) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let pinv = inv(rows[r][c]).unwrap();
        for v in rows[r].iter_mut() {
            *v = mul(*v, pinv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v = sub(*v, mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let rank = pivots.len();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, rows[i][f]);
            }
            v
        })
        .collect();
    (basis, rank)
}
