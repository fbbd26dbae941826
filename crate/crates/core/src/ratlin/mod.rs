//! Exact linear algebra over the rationals.
//!
//! Matrices here are the coefficient matrices of graded multiplication maps:
//! dense, with small integer entries after clearing denominators, and often
//! rank deficient. `rank` is fraction-free (Bareiss) elimination over the
//! integers; `rank_fast` works modulo several word-size primes and can be
//! asked to certify its answer against the exact path.

mod field;
mod modular;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use field::{Echelon, Field, PrimeField, RationalField};
pub use modular::{
    is_prime_u64, rank_fast, rank_mod_p, select_primes, Modulus, RankConfig, RankMode,
    DEFAULT_PRIME_COUNT,
};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| if q.denom().is_one() { acc } else { acc.lcm(q.denom()) })
}

/// Scales a rational vector to a primitive integer vector: denominators
/// cleared, content 1, first nonzero entry positive. The zero vector stays zero.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let mut out: Vec<BigInt> = v.iter().map(|q| (q * &l).to_integer()).collect();
    let g = out.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return out;
    }
    let negate = out.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
    for x in out.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    out
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row-major entries; `None` if the length is not `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Option<Self> {
        (entries.len() == rows * cols).then_some(RationalMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length; `None` on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(RationalMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows scaled to integers by their own denominator lcm. Row scaling
    /// preserves rank and kernel.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = denominator_lcm(row);
                row.iter().map(|q| (q * &l).to_integer()).collect()
            })
            .collect()
    }

    /// Distinct denominators other than 1.
    pub fn nontrivial_denominators(&self) -> Vec<BigInt> {
        let mut ds: Vec<BigInt> =
            self.entries.iter().filter(|q| !q.denom().is_one()).map(|q| q.denom().clone()).collect();
        ds.sort();
        ds.dedup();
        ds
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for q in self.row(i) {
                write!(f, "{} ", q)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Exact rank over the rationals by Bareiss fraction-free elimination.
///
/// Each row is first multiplied by the lcm of its denominators; every
/// intermediate entry is then a minor of the integer matrix, so growth is
/// bounded by Hadamard's inequality.
pub fn rank(m: &RationalMatrix) -> usize {
    bareiss_rank(m.integer_rows(), m.cols)
}

pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Basis of the right kernel `{v : M v = 0}`.
///
/// Vectors are returned as primitive integer vectors (content 1, first
/// nonzero entry positive), one per free column of the reduced row echelon
/// form, in increasing free-column order.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let field = RationalField;
    let rows: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let ech = Echelon::from_rows(&field, m.cols, rows);
    ech.kernel(&field)
        .into_iter()
        .map(|v| primitive_integer_vector(&v).into_iter().map(Rational::from_integer).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RationalMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let mut a = RationalMatrix::zeros(3, 4);
        a.set(0, 1, frac(1, 2));
        a.set(0, 3, frac(-1, 3));
        a.set(1, 1, int(3));
        a.set(1, 3, int(-2));
        a.set(2, 2, frac(5, 7));
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(3)).is_empty());
        let k = kernel_basis(&m(&[&[1, -1]]));
        assert_eq!(k, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), a.cols() - rank(&a));
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            let first = v.iter().find(|q| !q.is_zero()).unwrap();
            assert!(first.is_positive());
        }
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = [frac(-1, 2), frac(1, 3), int(0)];
        assert_eq!(primitive_integer_vector(&v), vec![BigInt::from(3), BigInt::from(-2), BigInt::zero()]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_none());
        assert!(RationalMatrix::from_entries(2, 2, vec![int(1)]).is_none());
    }
}
