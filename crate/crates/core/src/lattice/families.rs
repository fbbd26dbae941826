//! Named lattice families and explicit rational realizations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{canonical_form, intersection_lattice, intersection_points, is_isomorphic, Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::milnor::{default_cap, hilbert_table};
use crate::ratlin::RankConfig;

const ZIEGLER_A: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [1, -1, -1],
    [1, -1, 1],
    [2, 1, -2],
    [1, 3, -3],
    [3, 2, 3],
    [1, 5, 5],
    [7, -4, -1],
];

const ZIEGLER_A_PRIME: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [1, 1, -1],
    [5, 2, -10],
    [3, 2, -6],
    [1, -3, 15],
    [2, -1, 10],
    [6, 5, 30],
    [3, -4, -24],
];

const LTILDE_PRIME_33: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 0, 1], [1, 2, 3]];

/// The lattice types with a name of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedLattice {
    /// `d` lines with only double points.
    Generic { d: usize },
    /// One point of multiplicity `m` and only double points otherwise.
    L { d: usize, m: usize },
    /// Two pencils of `m1` and `m2` lines in general position.
    LTilde { m1: usize, m2: usize },
    /// Pencils of `m1` and `m2` lines sharing one line.
    LHat { m1: usize, m2: usize },
    /// `x(y-z) g_{1,m1-1}(x,y) g_{2,m2}(x,z)`.
    LPrime { m1: usize, m2: usize },
    /// `(x^m - y^m)(x^m - z^m)(y^m - z^m)`.
    Monomial { m: usize },
    ZieglerA,
    ZieglerAPrime,
    /// Two triple points on a common line, nine nodes.
    LTildePrime33,
}

impl NamedLattice {
    pub fn degree(&self) -> usize {
        match *self {
            NamedLattice::Generic { d } | NamedLattice::L { d, .. } => d,
            NamedLattice::LTilde { m1, m2 } | NamedLattice::LPrime { m1, m2 } => m1 + m2,
            NamedLattice::LHat { m1, m2 } => m1 + m2 - 1,
            NamedLattice::Monomial { m } => 3 * m,
            NamedLattice::ZieglerA | NamedLattice::ZieglerAPrime => 9,
            NamedLattice::LTildePrime33 => 6,
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidParameters { family: self.to_string(), reason: reason.into() }
    }

    /// Checks the parameter ranges of the family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            NamedLattice::Generic { d } if d < 1 => Err(self.invalid("requires d >= 1")),
            NamedLattice::L { d, m } if m < 2 || m > d => Err(self.invalid(format!("requires 2 <= m <= d, got m = {m}, d = {d}"))),
            NamedLattice::LTilde { m1, m2 } if m1 < 2 || m2 < m1 => Err(self.invalid("requires 2 <= m1 <= m2")),
            NamedLattice::LHat { m1, m2 } if m1 < 3 || m2 < m1 => Err(self.invalid("requires 3 <= m1 <= m2")),
            NamedLattice::LPrime { m1, m2 } if m1 < 2 || m2 < m1 => Err(self.invalid("requires 2 <= m1 <= m2")),
            NamedLattice::Monomial { m } if m < 2 => Err(self.invalid("requires m >= 2")),
            _ => Ok(()),
        }
    }

    /// Every member of the fixed-degree list of lattices that has `mdr = 2`.
    fn mdr2_references(d: usize) -> Vec<(Mdr2Class, NamedLattice)> {
        let mut refs = vec![(Mdr2Class::LDdMinus2, NamedLattice::L { d, m: d - 2 })];
        if d >= 5 {
            refs.push((Mdr2Class::LHat3, NamedLattice::LHat { m1: 3, m2: d - 2 }));
        }
        if d == 6 {
            refs.push((Mdr2Class::Monomial223, NamedLattice::Monomial { m: 2 }));
        }
        refs
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::Generic { d } => write!(f, "generic({d})"),
            NamedLattice::L { d, m } => write!(f, "L({d},{m})"),
            NamedLattice::LTilde { m1, m2 } => write!(f, "Ltilde({m1},{m2})"),
            NamedLattice::LHat { m1, m2 } => write!(f, "Lhat({m1},{m2})"),
            NamedLattice::LPrime { m1, m2 } => write!(f, "Lprime({m1},{m2})"),
            NamedLattice::Monomial { m } => write!(f, "monomial({m})"),
            NamedLattice::ZieglerA => f.write_str("ziegler_A"),
            NamedLattice::ZieglerAPrime => f.write_str("ziegler_A'"),
            NamedLattice::LTildePrime33 => f.write_str("Ltilde_prime(3,3)"),
        }
    }
}

impl FromStr for NamedLattice {
    type Err = Error;

    /// Parses the names produced by `Display`; `ziegler_Aprime` is accepted
    /// as a spelling of `ziegler_A'`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::InvalidParameters { family: s.to_string(), reason: "unknown family".to_string() };
        match s {
            "ziegler_A" => return Ok(NamedLattice::ZieglerA),
            "ziegler_A'" | "ziegler_Aprime" => return Ok(NamedLattice::ZieglerAPrime),
            "Ltilde_prime(3,3)" => return Ok(NamedLattice::LTildePrime33),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args = rest.strip_suffix(')').ok_or_else(unknown)?;
        let params: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParameters { family: s.to_string(), reason: "parameters must be non-negative integers".to_string() })?;
        let family = match (name, params.as_slice()) {
            ("generic", &[d]) => NamedLattice::Generic { d },
            ("L", &[d, m]) => NamedLattice::L { d, m },
            ("Ltilde", &[m1, m2]) => NamedLattice::LTilde { m1, m2 },
            ("Lhat", &[m1, m2]) => NamedLattice::LHat { m1, m2 },
            ("Lprime", &[m1, m2]) => NamedLattice::LPrime { m1, m2 },
            ("monomial", &[m]) => NamedLattice::Monomial { m },
            _ => return Err(unknown()),
        };
        Ok(family)
    }
}

/// The combinatorial lattice of a family, listed on the same line order as
/// [`realize`]. `None` for the Ziegler pair, which is defined by equations.
pub fn abstract_lattice(spec: &NamedLattice) -> Result<Option<Lattice>> {
    spec.validate()?;
    let range = |a: usize, b: usize| (a..b).collect::<Vec<usize>>();
    let blocks: Vec<Vec<usize>> = match *spec {
        NamedLattice::Generic { .. } => Vec::new(),
        NamedLattice::L { m, .. } => vec![range(0, m)],
        NamedLattice::LTilde { m1, m2 } => vec![range(0, m1), range(m1, m1 + m2)],
        NamedLattice::LHat { m1, m2 } => {
            let mut a = vec![0];
            a.extend(1..m1);
            let mut b = vec![0];
            b.extend(m1..m1 + m2 - 1);
            vec![a, b]
        }
        NamedLattice::LPrime { m1, m2 } => {
            // 0: x, 1: y - z, 1+i: x - i y (1 <= i < m1), m1-1+j: x - j z (2 <= j <= m2)
            let mut a = vec![0];
            a.extend((1..m1).map(|i| 1 + i));
            let mut b = vec![0];
            b.extend((2..=m2).map(|j| m1 - 1 + j));
            let mut blocks = vec![a, b];
            blocks.extend((2..m1).map(|i| vec![1, 1 + i, m1 - 1 + i]));
            blocks
        }
        NamedLattice::Monomial { m } => {
            // x - w^i y, x - w^j z, y - w^k z meet exactly when j = i + k mod m
            let mut blocks = vec![range(0, m), range(m, 2 * m), range(2 * m, 3 * m)];
            for i in 0..m {
                for k in 0..m {
                    blocks.push(vec![i, m + (i + k) % m, 2 * m + k]);
                }
            }
            blocks
        }
        NamedLattice::LTildePrime33 => vec![vec![0, 1, 2], vec![0, 3, 4]],
        NamedLattice::ZieglerA | NamedLattice::ZieglerAPrime => return Ok(None),
    };
    let blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| b.len() >= 2).collect();
    Lattice::from_incidence(spec.degree(), &blocks).map(Some)
}

/// Adds `count` lines `x + t y + t^2 z` with no three lines concurrent
/// through any new point.
fn extend_generic(lines: &mut Vec<[i64; 3]>, count: usize) {
    let mut t = 2i64;
    let mut added = 0;
    while added < count {
        let candidate = [1, t, t * t];
        t += 1;
        let current = Arrangement::from_i64(lines).expect("existing lines are distinct");
        let meets_point = intersection_points(&current).iter().any(|p| {
            let dot: BigInt = p.coords.iter().zip(candidate).map(|(c, a)| c * BigInt::from(a)).sum();
            dot.is_zero()
        });
        let mut extended = lines.clone();
        extended.push(candidate);
        if !meets_point && Arrangement::from_i64(&extended).is_ok() {
            lines.push(candidate);
            added += 1;
        }
    }
}

fn coefficients(spec: &NamedLattice) -> Result<Vec<[i64; 3]>> {
    let pencil_y = |i: usize| [1, -(i as i64), 0];
    let pencil_z = |j: usize| [1, 0, -(j as i64)];
    let lines = match *spec {
        NamedLattice::Generic { d } => {
            let mut lines: Vec<[i64; 3]> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].into_iter().take(d).collect();
            extend_generic(&mut lines, d.saturating_sub(4));
            lines
        }
        NamedLattice::L { d, m } => {
            let mut lines: Vec<[i64; 3]> = (0..m).map(pencil_y).collect();
            extend_generic(&mut lines, d - m);
            lines
        }
        NamedLattice::LTilde { m1, m2 } => (1..=m1).map(pencil_y).chain((1..=m2).map(pencil_z)).collect(),
        NamedLattice::LHat { m1, m2 } => {
            core::iter::once([1, 0, 0]).chain((1..m1).map(pencil_y)).chain((1..m2).map(pencil_z)).collect()
        }
        NamedLattice::LPrime { m1, m2 } => [[1, 0, 0], [0, 1, -1]]
            .into_iter()
            .chain((1..m1).map(pencil_y))
            .chain((2..=m2).map(pencil_z))
            .collect(),
        NamedLattice::Monomial { m: 2 } => {
            vec![[1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1]]
        }
        NamedLattice::Monomial { m } => {
            return Err(Error::NotRationallyRealizable(format!("monomial({m})")))
        }
        NamedLattice::ZieglerA => ZIEGLER_A.to_vec(),
        NamedLattice::ZieglerAPrime => ZIEGLER_A_PRIME.to_vec(),
        NamedLattice::LTildePrime33 => LTILDE_PRIME_33.to_vec(),
    };
    Ok(lines)
}

/// An explicit rational arrangement with lattice `spec`, verified against
/// the abstract lattice (or the point census for the Ziegler pair).
pub fn realize(spec: &NamedLattice) -> Result<Arrangement> {
    spec.validate()?;
    let arr = Arrangement::from_i64(&coefficients(spec)?)?;
    let lattice = intersection_lattice(&arr);
    let ok = match abstract_lattice(spec)? {
        Some(expected) => is_isomorphic(&lattice, &expected),
        None => lattice.census() == BTreeMap::from([(2, 18), (3, 6)]),
    };
    if !ok {
        return Err(Error::InvariantViolation(format!(
            "realization of {spec} has lattice census {:?}",
            lattice.census()
        )));
    }
    Ok(arr)
}

/// The three lattice types of arrangements with a degree-2 Jacobian syzygy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mdr2Class {
    /// `L(d, d-2)`.
    LDdMinus2,
    /// `Lhat(3, d-2)`, `d >= 5`.
    LHat3,
    /// The monomial arrangement `(x^2-y^2)(x^2-z^2)(y^2-z^2)`.
    Monomial223,
    NotMdr2,
}

impl Mdr2Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mdr2Class::LDdMinus2 => "L(d,d-2)",
            Mdr2Class::LHat3 => "Lhat(3,d-2)",
            Mdr2Class::Monomial223 => "monomial(2,2,3)",
            Mdr2Class::NotMdr2 => "not_mdr2",
        }
    }
}

/// Decides which lattice type an arrangement with `mdr = 2` has. An
/// arrangement with `mdr = 2` matching none of them is an invariant
/// violation.
pub fn classify_mdr2(arr: &Arrangement, rank: &RankConfig) -> Result<Mdr2Class> {
    let d = arr.degree();
    if d < 4 {
        return Err(Error::InvalidParameters {
            family: "classify_mdr2".to_string(),
            reason: format!("requires at least 4 lines, got {d}"),
        });
    }
    let table = hilbert_table(&arr.polynomial(), default_cap(d), rank)?;
    if table.mdr() != Some(2) {
        return Ok(Mdr2Class::NotMdr2);
    }
    let key = canonical_form(&intersection_lattice(arr));
    for (class, spec) in NamedLattice::mdr2_references(d) {
        let reference = abstract_lattice(&spec)?.expect("mdr 2 references are combinatorial");
        if canonical_form(&reference) == key {
            return Ok(class);
        }
    }
    Err(Error::InvariantViolation(format!("mdr = 2 arrangement of {d} lines outside the three known lattice types")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for spec in [
            NamedLattice::Generic { d: 6 },
            NamedLattice::L { d: 6, m: 4 },
            NamedLattice::LTilde { m1: 3, m2: 3 },
            NamedLattice::LHat { m1: 3, m2: 4 },
            NamedLattice::LPrime { m1: 3, m2: 3 },
            NamedLattice::Monomial { m: 2 },
            NamedLattice::ZieglerA,
            NamedLattice::ZieglerAPrime,
            NamedLattice::LTildePrime33,
        ] {
            assert_eq!(spec.to_string().parse::<NamedLattice>().unwrap(), spec);
        }
        assert!("L(6)".parse::<NamedLattice>().is_err());
        assert!("Q(1,2)".parse::<NamedLattice>().is_err());
    }

    #[test]
    fn out_of_range_parameters() {
        let e = realize(&NamedLattice::L { d: 4, m: 7 }).unwrap_err();
        assert!(matches!(e, Error::InvalidParameters { .. }));
        assert!(e.to_string().contains("m <= d"));
        assert!(realize(&NamedLattice::LHat { m1: 2, m2: 4 }).is_err());
        assert!(matches!(realize(&NamedLattice::Monomial { m: 3 }), Err(Error::NotRationallyRealizable(_))));
    }

    #[test]
    fn realizations_match_point_counts() {
        let census = |spec| intersection_lattice(&realize(&spec).unwrap()).census();
        assert_eq!(census(NamedLattice::Monomial { m: 2 }), BTreeMap::from([(2, 3), (3, 4)]));
        assert_eq!(census(NamedLattice::LPrime { m1: 3, m2: 3 }), BTreeMap::from([(2, 6), (3, 3)]));
        assert_eq!(census(NamedLattice::L { d: 5, m: 5 }), BTreeMap::from([(5, 1)]));
        assert_eq!(census(NamedLattice::Generic { d: 8 }), BTreeMap::from([(2, 28)]));
        assert_eq!(census(NamedLattice::LTildePrime33), BTreeMap::from([(2, 9), (3, 2)]));
        assert_eq!(census(NamedLattice::LPrime { m1: 4, m2: 6 }), BTreeMap::from([(2, 18), (3, 2), (4, 1), (6, 1)]));
    }

    #[test]
    fn monomial_five_is_combinatorial_only() {
        let l = abstract_lattice(&NamedLattice::Monomial { m: 5 }).unwrap().unwrap();
        assert_eq!(l.census(), BTreeMap::from([(3, 25), (5, 3)]));
        assert_eq!(l.pair_count(), 105);
    }
}
