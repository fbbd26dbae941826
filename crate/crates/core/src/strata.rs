//! Realization spaces of lattices.
//!
//! A line `a x + b y + c z` is a point `(a, b, c)`; three lines are
//! concurrent exactly when the determinant `D(u, v, w)` of their coefficient
//! vectors vanishes. The stratum `X(L)` of a lattice `L` is cut out by such
//! determinants, one family of equations per point of multiplicity at
//! least 3, and the lattice is kept by requiring every other triple
//! determinant to be nonzero.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graded_poly::{dim_graded_piece, multiplication_matrix};
use crate::lattice::{canonical_form, intersection_lattice, max_multiplicity, Arrangement, CanonicalKey, Lattice};
use crate::milnor::{classify_with_basis, AnalysisOptions, Classification, InvariantReport};
use crate::ratlin::{rank, RationalMatrix, RankConfig};

/// Which determinants represent a point of multiplicity `k >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `k - 2` determinants `D(i_1, i_2, i_j)`.
    #[default]
    E,
    /// All `C(k, 3)` determinants.
    EPrime,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::E => "E",
            Variant::EPrime => "Eprime",
        }
    }
}

/// Equations of a stratum in the `3d` line coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSystem {
    pub d: usize,
    pub variant: Variant,
    /// Each equation is `D(u, v, w) = 0` with `u < v < w`.
    pub equations: Vec<[usize; 3]>,
    points: Vec<Vec<usize>>,
}

pub fn incidence_equations(l: &Lattice, variant: Variant) -> IncidenceSystem {
    let mut equations = Vec::new();
    let mut points = Vec::new();
    for p in l.triple_and_higher() {
        let s = p.lines();
        match variant {
            Variant::E => equations.extend(s[2..].iter().map(|&w| [s[0], s[1], w])),
            Variant::EPrime => {
                for (a, &u) in s.iter().enumerate() {
                    for (b, &v) in s[a + 1..].iter().enumerate() {
                        equations.extend(s[a + b + 2..].iter().map(|&w| [u, v, w]));
                    }
                }
            }
        }
        points.push(s.to_vec());
    }
    IncidenceSystem { d: l.d(), variant, equations, points }
}

impl IncidenceSystem {
    pub fn variables(&self) -> usize {
        3 * self.d
    }

    /// Triples that must stay non-concurrent, i.e. not contained in a point.
    pub fn inequations(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let d = self.d;
        (0..d).flat_map(move |u| {
            (u + 1..d).flat_map(move |v| {
                (v + 1..d)
                    .map(move |w| [u, v, w])
                    .filter(|t| !self.points.iter().any(|p| t.iter().all(|i| p.binary_search(i).is_ok())))
            })
        })
    }

    /// Whether `arr` satisfies every equation and inequation.
    pub fn is_satisfied_by(&self, arr: &Arrangement) -> bool {
        self.equations.iter().all(|t| det(arr, *t).is_zero()) && self.inequations().all(|t| !det(arr, t).is_zero())
    }
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn det(arr: &Arrangement, [u, v, w]: [usize; 3]) -> BigInt {
    let c = cross(arr.primitive_form(v), arr.primitive_form(w));
    arr.primitive_form(u).iter().zip(&c).map(|(a, b)| a * b).sum()
}

/// Dimension of the stratum at an arrangement, valid where the stratum is smooth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDimension {
    pub dim: usize,
    pub jacobian_rank: usize,
    pub equations: usize,
}

/// `2d - rank` of the Jacobian of the incidence equations at `arr`.
///
/// Each line is taken in the affine chart fixing its coordinate of largest
/// absolute value (the first one on ties); the two other coordinates are the
/// local variables.
pub fn local_stratum_dim(arr: &Arrangement, variant: Variant) -> Result<LocalDimension> {
    let d = arr.degree();
    let system = incidence_equations(&intersection_lattice(arr), variant);
    let free_coords: Vec<[usize; 2]> = (0..d)
        .map(|i| {
            let c = arr.primitive_form(i);
            let fixed = (0..3).fold(0, |best, j| if c[j].abs() > c[best].abs() { j } else { best });
            let mut others = (0..3).filter(|&j| j != fixed);
            [others.next().unwrap(), others.next().unwrap()]
        })
        .collect();
    let mut jac = RationalMatrix::zeros(system.equations.len(), 2 * d);
    for (row, &[u, v, w]) in system.equations.iter().enumerate() {
        if !det(arr, [u, v, w]).is_zero() {
            return Err(Error::UnsatisfiedIncidence(u + 1, v + 1, w + 1));
        }
        let form = |i: usize| arr.primitive_form(i);
        for (line, grad) in [(u, cross(form(v), form(w))), (v, cross(form(w), form(u))), (w, cross(form(u), form(v)))] {
            for (slot, &coord) in free_coords[line].iter().enumerate() {
                jac.set(row, 2 * line + slot, grad[coord].clone().into());
            }
        }
    }
    let jacobian_rank = rank(&jac);
    Ok(LocalDimension { dim: 2 * d - jacobian_rank, jacobian_rank, equations: system.equations.len() })
}

/// `sum_p (m_p - 2)` over all multiple points, and whether it exceeds `2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodimBound {
    pub bound: usize,
    pub exceeds_dimension: bool,
}

pub fn codim_bound(l: &Lattice) -> CodimBound {
    let bound = l.points().iter().map(|p| p.multiplicity() - 2).sum();
    CodimBound { bound, exceeds_dimension: bound > 2 * l.d() }
}

/// Dimension of the orbit of `f` under `GL_3`, seen projectively:
/// `8 - dim AR(f)_1`, since the stabilizer's Lie algebra is `AR(f)_1` up to
/// the scalars.
pub fn orbit_dim(arr: &Arrangement, cfg: &RankConfig) -> Result<usize> {
    let f = arr.polynomial();
    let partials = f.partials()?;
    let r = cfg.rank(&multiplication_matrix(&partials, f.degree())?);
    let ar1 = 3 * dim_graded_piece(1) - r;
    8usize
        .checked_sub(ar1)
        .ok_or_else(|| Error::InvariantViolation(format!("dim AR(f)_1 = {ar1} exceeds 8")))
}

/// Smallest Tjurina number of a free arrangement of `d` lines:
/// `3(d-1)^2 / 4` for odd `d`, its integer part plus one for even `d`.
pub fn tau_min(d: usize) -> usize {
    let q = 3 * (d.max(1) - 1).pow(2);
    if d % 2 == 1 {
        q / 4
    } else {
        q / 4 + 1
    }
}

/// Sufficient conditions for the lattice to determine freeness, evaluated
/// at a free arrangement with exponents `d1 <= d2`, and the numeric
/// certificates that rule freeness out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeraoReport {
    pub free: bool,
    pub exponents: Option<(usize, usize)>,
    pub at_most_twelve_lines: bool,
    pub d1_at_most_five: bool,
    pub multiplicity_at_least_d1: bool,
    pub multiplicity_at_least_half: bool,
    pub d1_root_bound: bool,
    /// `tau(L) < tau_min(d)`.
    pub tau_below_minimum: bool,
    /// `sum_p (m_p - 1) > (d+3)(d-1)/4`.
    pub excess_multiple_points: bool,
}

impl TeraoReport {
    pub fn conjecture_known(&self) -> bool {
        self.free
            && (self.at_most_twelve_lines
                || self.d1_at_most_five
                || self.multiplicity_at_least_d1
                || self.multiplicity_at_least_half
                || self.d1_root_bound)
    }

    pub fn non_free_certificate(&self) -> bool {
        self.tau_below_minimum || self.excess_multiple_points
    }

    pub fn summary(&self) -> &'static str {
        match (self.free, self.conjecture_known()) {
            (true, true) => "Terao verified",
            (true, false) => "Terao open",
            (false, _) => "not free, Terao vacuous",
        }
    }
}

pub fn terao_hypotheses(l: &Lattice, inv: &InvariantReport) -> TeraoReport {
    let d = l.d();
    let m = max_multiplicity(l);
    let free = inv.classification == Classification::Free;
    let exponents = if free { inv.exponents } else { None };
    let test = |cond: &dyn Fn(usize) -> bool| exponents.map_or(false, |(d1, _)| cond(d1));
    let excess: usize = l.points().iter().map(|p| p.multiplicity() - 1).sum();
    TeraoReport {
        free,
        exponents,
        at_most_twelve_lines: free && d <= 12,
        d1_at_most_five: test(&|d1| d1 <= 5),
        multiplicity_at_least_d1: test(&|d1| m >= d1),
        multiplicity_at_least_half: free && 2 * m >= d,
        d1_root_bound: test(&|d1| (d1 + 1) * (d1 + 1) <= 2 * d + 1),
        tau_below_minimum: l.tau() < tau_min(d),
        excess_multiple_points: 4 * excess > (d + 3) * (d.max(1) - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumReport {
    pub key: CanonicalKey,
    pub variant: Variant,
    /// Local dimension at the given arrangement, assuming smoothness there.
    pub local_dim: usize,
    pub jacobian_rank: usize,
    pub equations: usize,
    pub codim_bound: usize,
    pub codim_bound_exceeds_dimension: bool,
    pub orbit_dim: usize,
    pub tau: usize,
}

/// Everything computed for one arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementAnalysis {
    pub lattice: Lattice,
    pub invariants: InvariantReport,
    pub stratum: StratumReport,
    pub terao: TeraoReport,
}

/// Runs the Milnor, lattice and stratum computations on `arr` and checks
/// the relations that hold for every line arrangement.
pub fn analyze_arrangement(arr: &Arrangement, opts: &AnalysisOptions, variant: Variant) -> Result<ArrangementAnalysis> {
    let d = arr.degree();
    let lattice = intersection_lattice(arr);
    if lattice.pair_count() != d * (d - 1) / 2 {
        return Err(Error::InvariantViolation(format!("{} line pairs counted for {d} lines", lattice.pair_count())));
    }
    let invariants = classify_with_basis(&arr.polynomial(), opts, true)?;
    let local = local_stratum_dim(arr, variant)?;
    let codim = codim_bound(&lattice);
    let orbit = orbit_dim(arr, &opts.rank)?;
    let terao = terao_hypotheses(&lattice, &invariants);
    let stratum = StratumReport {
        key: canonical_form(&lattice),
        variant,
        local_dim: local.dim,
        jacobian_rank: local.jacobian_rank,
        equations: local.equations,
        codim_bound: codim.bound,
        codim_bound_exceeds_dimension: codim.exceeds_dimension,
        orbit_dim: orbit,
        tau: lattice.tau(),
    };
    check_arrangement(arr, &lattice, &invariants, &stratum, &terao)?;
    Ok(ArrangementAnalysis { lattice, invariants, stratum, terao })
}

fn check_arrangement(
    arr: &Arrangement,
    lattice: &Lattice,
    inv: &InvariantReport,
    stratum: &StratumReport,
    terao: &TeraoReport,
) -> Result<()> {
    let d = arr.degree();
    let fail = |msg: alloc::string::String| Err(Error::InvariantViolation(msg));
    if stratum.tau != inv.tau {
        return fail(format!("lattice tau {} differs from Milnor tau {}", stratum.tau, inv.tau));
    }
    if d >= 3 {
        if inv.mdr_e != Some(inv.mdr) || inv.mdr + 2 > d {
            return fail(format!("mdr = {}, mdr_e = {:?} for {d} lines", inv.mdr, inv.mdr_e));
        }
        if inv.ct.map_or(false, |ct| ct > 2 * (d - 2)) {
            return fail(format!("ct = {:?} above 2(d-2)", inv.ct));
        }
    }
    if inv.mdr <= 2 && inv.classification == Classification::Neither {
        return fail(format!("mdr = {} but neither free nor nearly free", inv.mdr));
    }
    if terao.non_free_certificate() && terao.free {
        return fail("free arrangement with a non-freeness certificate".into());
    }
    if stratum.jacobian_rank > stratum.codim_bound || stratum.jacobian_rank > stratum.equations {
        return fail(format!("Jacobian rank {} above the codimension bound", stratum.jacobian_rank));
    }
    for variant in [Variant::E, Variant::EPrime] {
        if !incidence_equations(lattice, variant).is_satisfied_by(arr) {
            return fail(format!("arrangement violates its own {} system", variant.as_str()));
        }
    }
    let expected_orbit = match d {
        1 => Some(2),
        2 => Some(4),
        3 => Some(if lattice.max_multiplicity() == 3 { 5 } else { 6 }),
        _ => Some(match inv.mdr {
            0 => 5,
            1 => 7,
            _ => 8,
        }),
    };
    if expected_orbit != Some(stratum.orbit_dim) {
        return fail(format!("orbit dimension {} for mdr {}", stratum.orbit_dim, inv.mdr));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{realize, NamedLattice};

    #[test]
    fn tau_min_values() {
        assert_eq!(tau_min(7), 27);
        assert_eq!(tau_min(4), 7);
        assert_eq!(tau_min(11), 75);
        assert_eq!(tau_min(6), 19);
    }

    #[test]
    fn equation_counts() {
        let l = Lattice::from_incidence(6, &[alloc::vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(incidence_equations(&l, Variant::E).equations.len(), 3);
        assert_eq!(incidence_equations(&l, Variant::EPrime).equations.len(), 10);
        let generic = Lattice::from_incidence(5, &[]).unwrap();
        assert!(incidence_equations(&generic, Variant::E).equations.is_empty());
        assert_eq!(incidence_equations(&generic, Variant::E).inequations().count(), 10);
    }

    #[test]
    fn local_dimensions() {
        let dim = |spec| local_stratum_dim(&realize(&spec).unwrap(), Variant::E).unwrap().dim;
        assert_eq!(dim(NamedLattice::L { d: 5, m: 3 }), 9);
        assert_eq!(dim(NamedLattice::LTilde { m1: 3, m2: 3 }), 10);
        assert_eq!(dim(NamedLattice::Generic { d: 7 }), 14);
    }

    #[test]
    fn codim_bounds() {
        let l = crate::lattice::abstract_lattice(&NamedLattice::Monomial { m: 5 }).unwrap().unwrap();
        assert_eq!(codim_bound(&l), CodimBound { bound: 34, exceeds_dimension: true });
        let l = intersection_lattice(&realize(&NamedLattice::L { d: 7, m: 5 }).unwrap());
        assert_eq!(codim_bound(&l).bound, 3);
    }

    #[test]
    fn orbit_dimensions() {
        let cfg = RankConfig::certified();
        let o = |t: &[[i64; 3]]| orbit_dim(&Arrangement::from_i64(t).unwrap(), &cfg).unwrap();
        assert_eq!(o(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]), 5);
        assert_eq!(o(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]), 7);
        assert_eq!(o(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 6);
    }
}
