//! Homogeneous polynomials in `x, y, z` over the rationals.
//!
//! A form of degree `k` is stored densely on the monomial basis of `S_k`,
//! ordered graded-lexicographically with `x > y > z`. That order is part of
//! the public contract: matrix rows and columns below are indexed by it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{Rational, RationalMatrix};

/// `dim S_k = C(k+2, 2)`.
pub const fn dim_graded_piece(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// `dim S_k` for a possibly negative degree (0 below zero).
pub fn dim_graded_piece_signed(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        dim_graded_piece(k as usize)
    }
}

/// Exponent triple of `x^a y^b z^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    pub const fn degree(&self) -> usize {
        (self.a + self.b + self.c) as usize
    }

    /// Position in `monomial_basis(self.degree())`.
    pub const fn index(&self) -> usize {
        let rest = (self.b + self.c) as usize;
        rest * (rest + 1) / 2 + self.c as usize
    }

    pub const fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    pub const fn exponents(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in ["x", "y", "z"].iter().zip(self.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `k`, graded-lex with `x > y > z`.
pub fn monomial_basis(k: usize) -> Vec<Monomial> {
    let k32 = k as u32;
    let mut out = Vec::with_capacity(dim_graded_piece(k));
    for a in (0..=k32).rev() {
        for b in (0..=k32 - a).rev() {
            out.push(Monomial::new(a, b, k32 - a - b));
        }
    }
    out
}

/// Degree-`d` form, dense on the basis of `S_d`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: usize) -> Self {
        HomogeneousPolynomial { degree, coeffs: vec![Rational::zero(); dim_graded_piece(degree)] }
    }

    pub fn constant(c: Rational) -> Self {
        HomogeneousPolynomial { degree: 0, coeffs: vec![c] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.degree());
        p.coeffs[m.index()] = c;
        p
    }

    /// Sums the given terms; every monomial must have degree `degree`.
    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
            p.coeffs[m.index()] += c;
        }
        Ok(p)
    }

    /// Coefficients in `monomial_basis(degree)` order.
    pub fn from_dense(degree: usize, coeffs: Vec<Rational>) -> Option<Self> {
        (coeffs.len() == dim_graded_piece(degree)).then_some(HomogeneousPolynomial { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dense(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        if m.degree() != self.degree {
            return Rational::zero();
        }
        self.coeffs[m.index()].clone()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        monomial_basis(self.degree).into_iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HomogeneousPolynomial { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(HomogeneousPolynomial { degree: self.degree, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m, c) in self.terms() {
            for (n, e) in other.terms() {
                out.coeffs[m.times(&n).index()] += c * e;
            }
        }
        out
    }

    /// Terms of `self * m` as (basis index, coefficient).
    fn shifted_terms<'a>(&'a self, m: &'a Monomial) -> impl Iterator<Item = (usize, &'a Rational)> + 'a {
        self.terms().map(move |(n, c)| (n.times(m).index(), c))
    }

    /// `(f_x, f_y, f_z)`.
    pub fn partials(&self) -> Result<[HomogeneousPolynomial; 3]> {
        if self.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut out = [Self::zero(self.degree - 1), Self::zero(self.degree - 1), Self::zero(self.degree - 1)];
        for (m, c) in self.terms() {
            let e = m.exponents();
            for (v, part) in out.iter_mut().enumerate() {
                if e[v] == 0 {
                    continue;
                }
                let mut lowered = e;
                lowered[v] -= 1;
                let n = Monomial::new(lowered[0], lowered[1], lowered[2]);
                part.coeffs[n.index()] += c * Rational::from_integer(e[v].into());
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational; 3]) -> Rational {
        self.terms().fold(Rational::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (v, e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc + t
        })
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Nonzero linear form `a x + b y + c z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: [Rational; 3],
}

impl LinearForm {
    pub fn new(coeffs: [Rational; 3]) -> Option<Self> {
        (!coeffs.iter().all(Zero::is_zero)).then_some(LinearForm { coeffs })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Option<Self> {
        Self::new([crate::ratlin::int(a), crate::ratlin::int(b), crate::ratlin::int(c)])
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> HomogeneousPolynomial {
        HomogeneousPolynomial { degree: 1, coeffs: self.coeffs.to_vec() }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Expanded product; the empty product is the constant 1.
pub fn product(fs: &[HomogeneousPolynomial]) -> HomogeneousPolynomial {
    fs.iter().fold(HomogeneousPolynomial::constant(Rational::one()), |acc, f| acc.mul(f))
}

/// Matrix of `(u_1..u_m) -> sum u_i g_i` from `(S_{k-e})^m` to `S_k`.
///
/// Columns are grouped by generator, each group in basis order of
/// `S_{k-e}`; rows follow the basis of `S_k`. A degree `k < e` yields a
/// matrix with no columns.
pub fn multiplication_matrix(gs: &[HomogeneousPolynomial], k: usize) -> Result<RationalMatrix> {
    let rows = dim_graded_piece(k);
    let Some(e) = gs.first().map(HomogeneousPolynomial::degree) else {
        return Ok(RationalMatrix::zeros(rows, 0));
    };
    if let Some(g) = gs.iter().find(|g| g.degree() != e) {
        return Err(Error::MixedDegrees(e, g.degree()));
    }
    if k < e {
        return Ok(RationalMatrix::zeros(rows, 0));
    }
    let shifts = monomial_basis(k - e);
    let cols = gs.len() * shifts.len();
    let mut m = RationalMatrix::zeros(rows, cols);
    for (gi, g) in gs.iter().enumerate() {
        for (si, mu) in shifts.iter().enumerate() {
            let col = gi * shifts.len() + si;
            for (row, c) in g.shifted_terms(mu) {
                m.set(row, col, c.clone());
            }
        }
    }
    Ok(m)
}
