//! Line arrangements and their intersection lattices.
//!
//! A lattice is recorded by its multiple points, each with the sorted set of
//! (0-based) lines through it. Double points are always present, so every
//! pair of lines lies in exactly one point.

mod canon;
mod families;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graded_poly::{product, HomogeneousPolynomial, LinearForm};
use crate::ratlin::{primitive_integer_vector, Rational};

pub use canon::{canonical_form, is_isomorphic, CanonicalKey};
pub use families::{abstract_lattice, classify_mdr2, realize, Mdr2Class, NamedLattice};

/// An ordered list of pairwise non-proportional linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    forms: Vec<LinearForm>,
    primitive: Vec<[BigInt; 3]>,
}

impl Arrangement {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let primitive: Vec<[BigInt; 3]> = forms.iter().map(|l| primitive_form(l.coeffs())).collect();
        let mut seen: BTreeMap<&[BigInt; 3], usize> = BTreeMap::new();
        for (j, p) in primitive.iter().enumerate() {
            if let Some(&i) = seen.get(p) {
                return Err(Error::ProportionalLines(i + 1, j + 1));
            }
            seen.insert(p, j);
        }
        Ok(Arrangement { forms, primitive })
    }

    /// Builds an arrangement from coefficient triples; a zero triple is
    /// reported by its 1-based index.
    pub fn from_coefficients(triples: Vec<[Rational; 3]>) -> Result<Self> {
        let mut forms = Vec::with_capacity(triples.len());
        for (i, t) in triples.into_iter().enumerate() {
            forms.push(LinearForm::new(t).ok_or(Error::ZeroLine(i + 1))?);
        }
        Self::new(forms)
    }

    pub fn from_i64(triples: &[[i64; 3]]) -> Result<Self> {
        Self::from_coefficients(triples.iter().map(|t| t.map(crate::ratlin::int)).collect())
    }

    pub fn degree(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    /// Coefficients of line `i` scaled to a primitive integer vector with
    /// positive leading entry.
    pub fn primitive_form(&self, i: usize) -> &[BigInt; 3] {
        &self.primitive[i]
    }

    /// The defining polynomial, the product of the forms.
    pub fn polynomial(&self) -> HomogeneousPolynomial {
        let ls: Vec<_> = self.forms.iter().map(LinearForm::to_polynomial).collect();
        product(&ls)
    }

    /// Lines reordered so that the new line `k` is the old line `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.degree());
        let forms = perm.iter().map(|&i| self.forms[i].clone()).collect();
        Arrangement::new(forms).expect("a permutation keeps lines distinct")
    }

    /// Applies the linear map `m` to every coefficient vector. For invertible
    /// `m` this is a projective change of coordinates.
    pub fn transformed(&self, m: &[[Rational; 3]; 3]) -> Result<Self> {
        let triples = self
            .forms
            .iter()
            .map(|l| {
                let c = l.coeffs();
                core::array::from_fn(|i| &m[i][0] * &c[0] + &m[i][1] * &c[1] + &m[i][2] * &c[2])
            })
            .collect();
        Self::from_coefficients(triples)
    }
}

fn primitive_form(c: &[Rational; 3]) -> [BigInt; 3] {
    let v = primitive_integer_vector(c);
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// Projective point normalization: content 1, first nonzero coordinate positive.
fn normalize_point(mut p: [BigInt; 3]) -> [BigInt; 3] {
    let g = p.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let negate = p.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
    for x in p.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    p
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

/// A point where at least two lines meet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplePoint {
    lines: Vec<usize>,
}

impl MultiplePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    /// Sorted 0-based indices of the lines through the point.
    pub fn lines(&self) -> &[usize] {
        &self.lines
    }
}

/// Intersection point of an arrangement with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub coords: [BigInt; 3],
    pub lines: Vec<usize>,
}

/// All intersection points, sorted by normalized coordinates.
pub fn intersection_points(arr: &Arrangement) -> Vec<IntersectionPoint> {
    let d = arr.degree();
    let mut points: BTreeMap<[BigInt; 3], BTreeSet<usize>> = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = normalize_point(cross(arr.primitive_form(i), arr.primitive_form(j)));
            let entry = points.entry(p).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }
    points.into_iter().map(|(coords, lines)| IntersectionPoint { coords, lines: lines.into_iter().collect() }).collect()
}

/// Combinatorial intersection data of `d` lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    d: usize,
    points: Vec<MultiplePoint>,
}

pub fn intersection_lattice(arr: &Arrangement) -> Lattice {
    let blocks = intersection_points(arr).into_iter().map(|p| p.lines).collect();
    Lattice::from_points(arr.degree(), blocks)
}

impl Lattice {
    fn from_points(d: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut points: Vec<MultiplePoint> = blocks.into_iter().map(|lines| MultiplePoint { lines }).collect();
        points.sort_by(|a, b| b.multiplicity().cmp(&a.multiplicity()).then_with(|| a.lines.cmp(&b.lines)));
        Lattice { d, points }
    }

    /// Builds a lattice from the incidence sets of its points of
    /// multiplicity at least 3 (smaller sets are accepted and ignored beyond
    /// validation). The remaining pairs of lines become double points.
    pub fn from_incidence(d: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let bad = |reason: alloc::string::String| Error::InvalidParameters { family: "lattice".to_string(), reason };
        let mut covered = BTreeSet::new();
        let mut all = Vec::new();
        for b in blocks {
            let set: BTreeSet<usize> = b.iter().copied().collect();
            if set.len() != b.len() || set.len() < 2 {
                return Err(bad(format!("point {b:?} must list at least two distinct lines")));
            }
            if let Some(&i) = set.iter().find(|&&i| i >= d) {
                return Err(bad(format!("line index {i} out of range for {d} lines")));
            }
            let lines: Vec<usize> = set.into_iter().collect();
            for (a, &i) in lines.iter().enumerate() {
                for &j in &lines[a + 1..] {
                    if !covered.insert((i, j)) {
                        return Err(bad(format!("lines {i} and {j} meet in two points")));
                    }
                }
            }
            all.push(lines);
        }
        for i in 0..d {
            for j in i + 1..d {
                if !covered.contains(&(i, j)) {
                    all.push(alloc::vec![i, j]);
                }
            }
        }
        Ok(Self::from_points(d, all))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Points sorted by decreasing multiplicity, then by line sets.
    pub fn points(&self) -> &[MultiplePoint] {
        &self.points
    }

    /// Points of multiplicity at least 3.
    pub fn triple_and_higher(&self) -> impl Iterator<Item = &MultiplePoint> {
        self.points.iter().filter(|p| p.multiplicity() >= 3)
    }

    /// `n_k`: number of points of each multiplicity `k`.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut n = BTreeMap::new();
        for p in &self.points {
            *n.entry(p.multiplicity()).or_insert(0) += 1;
        }
        n
    }

    pub fn count(&self, multiplicity: usize) -> usize {
        self.points.iter().filter(|p| p.multiplicity() == multiplicity).count()
    }

    /// `sum_p C(m_p, 2)`; equals `C(d, 2)` for every lattice.
    pub fn pair_count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum()
    }

    pub fn tau(&self) -> usize {
        tau_of_lattice(self)
    }

    pub fn max_multiplicity(&self) -> usize {
        max_multiplicity(self)
    }

    /// Image under the line relabeling `i -> perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let blocks = self
            .points
            .iter()
            .map(|p| {
                let mut l: Vec<usize> = p.lines.iter().map(|&i| perm[i]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Self::from_points(self.d, blocks)
    }
}

/// `sum_p (m_p - 1)^2`.
pub fn tau_of_lattice(l: &Lattice) -> usize {
    l.points.iter().map(|p| (p.multiplicity() - 1).pow(2)).sum()
}

/// Largest multiplicity of a point; 1 for a single line.
pub fn max_multiplicity(l: &Lattice) -> usize {
    l.points.iter().map(MultiplePoint::multiplicity).max().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_one_triple_point() {
        let tri = intersection_lattice(&Arrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap());
        assert_eq!(tri.census(), BTreeMap::from([(2, 3)]));
        let l = intersection_lattice(&Arrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]).unwrap());
        assert_eq!(l.census(), BTreeMap::from([(2, 3), (3, 1)]));
        assert_eq!(l.points()[0].lines(), &[0, 1, 3]);
        assert_eq!(l.tau(), 7);
        assert_eq!(l.max_multiplicity(), 3);
    }

    #[test]
    fn proportional_and_zero_lines_rejected() {
        let e = Arrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [0, -2, 0]]).unwrap_err();
        assert_eq!(e, Error::ProportionalLines(2, 5));
        assert_eq!(e.to_string(), "lines 2 and 5 proportional");
        assert_eq!(Arrangement::from_i64(&[[1, 0, 0], [0, 0, 0]]).unwrap_err(), Error::ZeroLine(2));
    }

    #[test]
    fn rational_coefficients_normalize() {
        let q = |n, d| crate::ratlin::frac(n, d);
        let arr = Arrangement::from_coefficients(alloc::vec![
            [q(1, 2), q(-1, 3), q(0, 1)],
            [q(0, 1), q(0, 1), q(-1, 1)],
        ])
        .unwrap();
        assert_eq!(arr.primitive_form(0), &[BigInt::from(3), BigInt::from(-2), BigInt::zero()]);
        assert_eq!(arr.primitive_form(1), &[BigInt::zero(), BigInt::zero(), BigInt::from(1)]);
        let pts = intersection_points(&arr);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords, [BigInt::from(2), BigInt::from(3), BigInt::zero()]);
    }

    #[test]
    fn incidence_construction() {
        let l = Lattice::from_incidence(6, &[alloc::vec![0, 1, 2], alloc::vec![0, 3, 4]]).unwrap();
        assert_eq!(l.census(), BTreeMap::from([(2, 9), (3, 2)]));
        assert_eq!(l.pair_count(), 15);
        assert!(Lattice::from_incidence(5, &[alloc::vec![0, 1, 2], alloc::vec![1, 2, 3]]).is_err());
        assert!(Lattice::from_incidence(3, &[alloc::vec![0, 1, 5]]).is_err());
    }
}
