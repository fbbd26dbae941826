use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::{One, Zero};

use super::modular::Modulus;
use super::Rational;

/// Arithmetic context for a coefficient field. Elements do not carry their
/// field, so prime fields can be chosen at run time.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational whose denominator is a unit in this field.
    fn from_rational(&self, q: &Rational) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
}

/// The prime field F_p for a word-size prime p < 2^31.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    modulus: Modulus,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { modulus: Modulus::new(p) }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus.p() {
            s - self.modulus.p()
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus.p() - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.modulus.mul(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus.p() - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        self.modulus.inv(*a)
    }
    fn from_rational(&self, q: &Rational) -> u64 {
        self.modulus.from_rational(q).expect("denominator must be a unit mod p")
    }
}

/// Reduced row echelon form of a set of vectors, i.e. a canonical basis of
/// the subspace they span.
///
/// Every stored row has a 1 in its pivot column and zeros in all other
/// pivot columns; pivots are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Debug> Echelon<E> {
    pub fn empty(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<F: Field<Elem = E>>(field: &F, ncols: usize, mut rows: Vec<Vec<E>>) -> Self {
        let nrows = rows.len();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !field.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, p);
            let inv = field.inv(&rows[r][c]);
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(x, &inv);
            }
            let support: Vec<usize> = (c + 1..ncols).filter(|&j| !field.is_zero(&rows[r][j])).collect();
            let pivot_row = core::mem::take(&mut rows[r]);
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || field.is_zero(&row[c]) {
                    continue;
                }
                let factor = core::mem::replace(&mut row[c], field.zero());
                for &j in &support {
                    let t = field.mul(&factor, &pivot_row[j]);
                    row[j] = field.sub(&row[j], &t);
                }
            }
            rows[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { ncols, rows, pivots }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Remainder of `v` after subtracting its projection onto the pivot rows.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, mut v: Vec<E>) -> Vec<E> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !field.is_zero(y) {
                    let t = field.mul(&c, y);
                    *x = field.sub(x, &t);
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: Vec<E>) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    /// Columns without a pivot; the quotient space has these as coordinates.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&j| !is_pivot[j]).collect()
    }

    /// Coordinates in the quotient by this subspace of the unit vector `e_j`,
    /// one entry per free column.
    pub fn quotient_of_unit<F: Field<Elem = E>>(&self, field: &F, free: &[usize], j: usize) -> Vec<E> {
        if let Ok(row) = self.pivots.binary_search(&j) {
            free.iter().map(|&c| field.neg(&self.rows[row][c])).collect()
        } else {
            free.iter().map(|&c| if c == j { field.one() } else { field.zero() }).collect()
        }
    }

    /// Basis of `{x : R x = 0}` where `R` is this echelon form read as the
    /// matrix of a linear map on column vectors.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![field.zero(); self.ncols];
                x[f] = field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = field.neg(&row[f]);
                }
                x
            })
            .collect()
    }
}
