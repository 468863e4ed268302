//! Truncation polynomials `p(j)` of the theta-type families, one row per
//! monomial `coeff * q^(j_slope*j + m_slope*m + constant)`.
//!
//! These are transcriptions; keep the `display` column identical to the
//! printed monomial so a table can be proofread against its source.

use crate::coefficient::Coefficient;
use crate::qfunctions::MParam;
use crate::series::{Monomial, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PTerm {
    pub coeff: i64,
    pub j_slope: i64,
    pub m_slope: u32,
    pub constant: i64,
    pub display: &'static str,
}

const fn term(
    coeff: i64,
    j_slope: i64,
    m_slope: u32,
    constant: i64,
    display: &'static str,
) -> PTerm {
    PTerm {
        coeff,
        j_slope,
        m_slope,
        constant,
        display,
    }
}

/// `rho(k) = 2k + m`.
pub const P_RHO2: &[PTerm] = &[
    term(1, 0, 0, 0, "1"),
    term(-1, 3, 1, 0, "-q^{3j+m}"),
    term(-1, 4, 1, 1, "-q^{4j+m+1}"),
    term(1, 6, 2, 1, "+q^{6j+2m+1}"),
];

/// `rho(k) = 3k + m`.
pub const P_RHO3: &[PTerm] = &[
    term(1, 0, 0, 0, "1"),
    term(-1, 4, 1, 0, "-q^{4j+m}"),
    term(-1, 5, 1, 1, "-q^{5j+m+1}"),
    term(-1, 6, 1, 2, "-q^{6j+m+2}"),
    term(1, 8, 2, 1, "+q^{8j+2m+1}"),
    term(1, 9, 2, 2, "+q^{9j+2m+2}"),
    term(1, 9, 2, 3, "+q^{9j+2m+3}"),
    term(-1, 12, 3, 3, "-q^{12j+3m+3}"),
];

/// `rho(k) = 4k + m`.
pub const P_RHO4: &[PTerm] = &[
    term(1, 0, 0, 0, "1"),
    term(-1, 5, 1, 0, "-q^{5j+m}"),
    term(-1, 6, 1, 1, "-q^{6j+m+1}"),
    term(-1, 7, 1, 2, "-q^{7j+m+2}"),
    term(-1, 8, 1, 3, "-q^{8j+m+3}"),
    term(1, 10, 2, 1, "+q^{10j+2m+1}"),
    term(1, 11, 2, 2, "+q^{11j+2m+2}"),
    term(1, 11, 2, 3, "+q^{11j+2m+3}"),
    term(1, 12, 2, 3, "+q^{12j+2m+3}"),
    term(1, 12, 2, 4, "+q^{12j+2m+4}"),
    term(1, 12, 2, 5, "+q^{12j+2m+5}"),
    term(-1, 15, 3, 3, "-q^{15j+3m+3}"),
    term(-1, 16, 3, 4, "-q^{16j+3m+4}"),
    term(-1, 16, 3, 5, "-q^{16j+3m+5}"),
    term(-1, 16, 3, 6, "-q^{16j+3m+6}"),
    term(1, 20, 4, 6, "+q^{20j+4m+6}"),
];

/// `p(j)` as an exact polynomial in `q` (and `t` for a symbolic `m`).
pub fn eval_ptable(table: &[PTerm], j: i64, m: MParam) -> Series {
    Series::polynomial(table.iter().map(|p| {
        let mono = m.realize(Monomial::new(p.j_slope * j + p.constant, p.m_slope));
        (mono, Coefficient::from_int(p.coeff))
    }))
}

/// The table with the sign of row `index` flipped.
pub fn flip_sign(table: &[PTerm], index: usize) -> Vec<PTerm> {
    let mut out = table.to_vec();
    out[index].coeff = -out[index].coeff;
    out
}
