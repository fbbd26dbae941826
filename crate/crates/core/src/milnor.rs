//! Graded invariants of a reduced plane curve `C: f = 0`.
//!
//! Everything is read off ranks of the maps
//! `(S_{k-d+1})^3 -> S_k, (a, b, c) -> a f_x + b f_y + c f_z`
//! and of the Koszul map onto the trivial syzygies. From the Hilbert
//! function of the Milnor algebra we get the Tjurina number, the minimal
//! syzygy degrees, the coincidence and stability thresholds, the freeness
//! type and the regularity; the saturation of the Jacobian ideal is computed
//! separately by colon iterations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded_poly::{
    dim_graded_piece, dim_graded_piece_signed, monomial_basis, multiplication_matrix, HomogeneousPolynomial,
    Monomial,
};
use crate::ratlin::{Echelon, Field, PrimeField, RankConfig, RankMode, RationalField, RationalMatrix};

/// Degree `3(d-2)` above which `m_k(f) = tau(f)` for isolated singularities.
pub fn stable_bound(d: usize) -> i64 {
    3 * (d as i64 - 2)
}

/// Default window `3(d-2)+2`, never below 2.
pub fn default_cap(d: usize) -> usize {
    (stable_bound(d) + 2).max(2) as usize
}

/// `tau(d, r) = (d-1)^2 - r(d-1-r)`, the Tjurina number forced on a free
/// curve with minimal syzygy degree `r`.
pub fn tau_free(d: usize, r: usize) -> i64 {
    let (d, r) = (d as i64, r as i64);
    (d - 1) * (d - 1) - r * (d - 1 - r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Degree window; `None` means [`default_cap`].
    pub cap: Option<usize>,
    pub rank: RankConfig,
    /// Whether [`classify`] also computes the saturation profile.
    pub saturation: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { cap: None, rank: RankConfig::modular(), saturation: true }
    }
}

impl AnalysisOptions {
    pub fn certified() -> Self {
        AnalysisOptions { rank: RankConfig::certified(), ..Self::default() }
    }

    pub fn without_saturation(mut self) -> Self {
        self.saturation = false;
        self
    }
}

/// Degree-wise dimensions of `M(f)`, `J_f`, `AR(f)` and the Koszul syzygies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub d: usize,
    pub degree_cap: usize,
    /// `m_k(f)` for `k = 0..=degree_cap`.
    pub milnor_dims: Vec<usize>,
    pub jacobian_dims: Vec<usize>,
    /// `dim AR(f)_r` for `r = 0..=degree_cap`.
    pub ar_dims: Vec<usize>,
    pub koszul_dims: Vec<usize>,
}

/// Number of monomials of degree `k` with every exponent at most `d-2`:
/// the Milnor algebra of `x^d + y^d + z^d`.
pub fn smooth_milnor_dims(d: usize, cap: usize) -> Vec<usize> {
    if d < 2 {
        return vec![0; cap + 1];
    }
    let e = (d - 2) as u32;
    (0..=cap).map(|k| monomial_basis(k).iter().filter(|m| m.a <= e && m.b <= e && m.c <= e).count()).collect()
}

/// Matrix of the Koszul map `(S_{r-d+1})^3 -> (S_r)^3`,
/// `(u, v, w) -> u(f_y, -f_x, 0) + v(f_z, 0, -f_x) + w(0, f_z, -f_y)`.
pub fn koszul_matrix(partials: &[HomogeneousPolynomial; 3], r: usize) -> Result<RationalMatrix> {
    let [fx, fy, fz] = partials;
    let block = |g: &HomogeneousPolynomial| multiplication_matrix(core::slice::from_ref(g), r);
    let (mx, my, mz) = (block(fx)?, block(fy)?, block(fz)?);
    let (br, bc) = (mx.rows(), mx.cols());
    let mut m = RationalMatrix::zeros(3 * br, 3 * bc);
    // (block row, block col, source, sign)
    let layout: [(usize, usize, &RationalMatrix, bool); 6] =
        [(0, 0, &my, true), (1, 0, &mx, false), (0, 1, &mz, true), (2, 1, &mx, false), (1, 2, &mz, true), (2, 2, &my, false)];
    for (bi, bj, src, positive) in layout {
        for i in 0..br {
            for j in 0..bc {
                let v = src.get(i, j);
                if !num_traits::Zero::is_zero(v) {
                    m.set(bi * br + i, bj * bc + j, if positive { v.clone() } else { -v.clone() });
                }
            }
        }
    }
    Ok(m)
}

/// Degree-wise ranks of the Jacobian and Koszul maps.
pub fn hilbert_table(f: &HomogeneousPolynomial, cap: usize, rank: &RankConfig) -> Result<HilbertTable> {
    let d = f.degree();
    let partials = f.partials()?;
    let t = stable_bound(d);
    let min_cap = (t + 1).max(0) as usize;
    if cap < min_cap {
        return Err(Error::CapTooSmall { cap, min: min_cap });
    }
    // one degree past the stable range is needed to see stabilization
    let window = cap.max((t + 2).max(1) as usize);

    let mut jacobian_dims = Vec::with_capacity(window + 1);
    for k in 0..=window {
        jacobian_dims.push(if k + 1 < d { 0 } else { rank.rank(&multiplication_matrix(&partials, k)?) });
    }
    let milnor_dims: Vec<usize> = jacobian_dims.iter().enumerate().map(|(k, j)| dim_graded_piece(k) - j).collect();
    let tau = milnor_dims[window];
    if milnor_dims[min_cap..].iter().any(|&m| m != tau) {
        return Err(Error::NonIsolatedSingularities(min_cap));
    }

    // AR(f)_r is the kernel in degree r + d - 1; past the window m_k = tau.
    let ar_dims = (0..=window)
        .map(|r| {
            let k = r + d - 1;
            let image = if k <= window { jacobian_dims[k] } else { dim_graded_piece(k) - tau };
            3 * dim_graded_piece(r) - image
        })
        .collect();

    // The Koszul map a -> grad f x a has kernel grad f * S_{r-2d+2}, which
    // vanishes up to degree 2d-3.
    let direct_limit = 2 * d as i64 - 3;
    let mut koszul_dims = Vec::with_capacity(window + 1);
    for r in 0..=window {
        let shifted = r as i64 - d as i64 + 1;
        let value = if shifted < 0 {
            0
        } else if (r as i64) <= direct_limit {
            rank.rank(&koszul_matrix(&partials, r)?)
        } else {
            3 * dim_graded_piece_signed(shifted) - dim_graded_piece_signed(r as i64 - 2 * d as i64 + 2)
        };
        koszul_dims.push(value);
    }

    Ok(HilbertTable { d, degree_cap: window, milnor_dims, jacobian_dims, ar_dims, koszul_dims })
}

impl HilbertTable {
    pub fn tau(&self) -> usize {
        self.milnor_dims[self.degree_cap]
    }

    /// Smallest `r` with a nonzero syzygy of degree `r`.
    pub fn mdr(&self) -> Option<usize> {
        self.ar_dims.iter().position(|&a| a > 0)
    }

    /// Smallest `r` with a syzygy outside the Koszul submodule.
    pub fn mdr_e(&self) -> Option<usize> {
        self.ar_dims.iter().zip(&self.koszul_dims).position(|(a, k)| a > k)
    }

    /// Coincidence threshold; `None` for `d < 3` and when `M(f)` agrees with
    /// the smooth reference on the whole window.
    pub fn ct(&self) -> Option<usize> {
        if self.d < 3 {
            return None;
        }
        let smooth = smooth_milnor_dims(self.d, self.degree_cap);
        let first = self.milnor_dims.iter().zip(&smooth).position(|(a, b)| a != b)?;
        Some(first.saturating_sub(1))
    }

    /// Stability threshold; `None` for `d < 3`.
    pub fn st(&self) -> Option<usize> {
        if self.d < 3 {
            return None;
        }
        let tau = self.tau();
        Some(self.milnor_dims.iter().rposition(|&m| m != tau).map_or(0, |k| k + 1))
    }
}

pub fn tjurina(f: &HomogeneousPolynomial, rank: &RankConfig) -> Result<usize> {
    Ok(hilbert_table(f, default_cap(f.degree()), rank)?.tau())
}

pub fn mdr(f: &HomogeneousPolynomial, rank: &RankConfig) -> Result<Option<usize>> {
    Ok(hilbert_table(f, default_cap(f.degree()), rank)?.mdr())
}

pub fn mdr_e(f: &HomogeneousPolynomial, rank: &RankConfig) -> Result<Option<usize>> {
    Ok(hilbert_table(f, default_cap(f.degree()), rank)?.mdr_e())
}

pub fn ct(f: &HomogeneousPolynomial, rank: &RankConfig) -> Result<Option<usize>> {
    Ok(hilbert_table(f, default_cap(f.degree()), rank)?.ct())
}

pub fn st(f: &HomogeneousPolynomial, rank: &RankConfig) -> Result<Option<usize>> {
    Ok(hilbert_table(f, default_cap(f.degree()), rank)?.st())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    Free,
    NearlyFree,
    Neither,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Free => "free",
            Classification::NearlyFree => "nearly_free",
            Classification::Neither => "neither",
        }
    }
}

/// Dimensions of the saturation `I` of `J_f` and of `I/J_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationProfile {
    /// `dim I_k` for `k = 0..=cap`.
    pub saturation_dims: Vec<usize>,
    /// `dim (I/J_f)_k`.
    pub gap_dims: Vec<usize>,
    /// `1 + max{k : (I/J_f)_k != 0}`, or 0 when `I = J_f`.
    pub sat_degree: usize,
    /// `(I/J_f)_d = 0`.
    pub algebraically_rigid: bool,
}

/// Full profile of one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub d: usize,
    pub tau: usize,
    pub mdr: usize,
    pub mdr_e: Option<usize>,
    pub ct: Option<usize>,
    pub st: Option<usize>,
    pub reg: Option<usize>,
    pub classification: Classification,
    /// Whether the nearly-free decision rests on the arrangement
    /// equivalence (`true`) or only on the numeric criterion.
    pub line_arrangement: bool,
    pub exponents: Option<(usize, usize)>,
    /// `tau(d, mdr) - tau`.
    pub delta: i64,
    pub saturation: Option<SaturationProfile>,
    pub hilbert: HilbertTable,
}

fn violation(msg: alloc::string::String) -> Error {
    Error::InvariantViolation(msg)
}

/// Classifies a reduced curve, using the numeric nearly-free criterion.
pub fn classify(f: &HomogeneousPolynomial, opts: &AnalysisOptions) -> Result<InvariantReport> {
    classify_with_basis(f, opts, false)
}

/// Classifies `f`; `line_arrangement` states that `f` is a product of
/// distinct lines, for which the nearly-free criterion is an equivalence.
pub fn classify_with_basis(
    f: &HomogeneousPolynomial,
    opts: &AnalysisOptions,
    line_arrangement: bool,
) -> Result<InvariantReport> {
    let d = f.degree();
    let cap = opts.cap.unwrap_or_else(|| default_cap(d));
    let hilbert = hilbert_table(f, cap, &opts.rank)?;
    let tau = hilbert.tau();
    let mdr = hilbert.mdr().ok_or_else(|| violation(format!("no Jacobian syzygy up to degree {cap}")))?;
    let mdr_e = hilbert.mdr_e();
    let ct = hilbert.ct();
    let st = hilbert.st();
    let delta = tau_free(d, mdr) - tau as i64;

    let (classification, exponents) = if delta == 0 && 2 * mdr + 1 <= d {
        (Classification::Free, Some((mdr, d - 1 - mdr)))
    } else if delta == 1 && 2 * mdr <= d {
        (Classification::NearlyFree, Some((mdr, d - mdr)))
    } else {
        (Classification::Neither, None)
    };
    let free = classification == Classification::Free;
    let reg = st.map(|s| if free { s } else { s.saturating_sub(1) });

    let report = InvariantReport {
        d,
        tau,
        mdr,
        mdr_e,
        ct,
        st,
        reg,
        classification,
        line_arrangement,
        exponents,
        delta,
        saturation: None,
        hilbert,
    };
    check_report(&report)?;
    let saturation = if opts.saturation { Some(saturation_from_table(f, &report.hilbert, &opts.rank)?) } else { None };
    if let Some(sat) = &saturation {
        if free && sat.sat_degree != 0 {
            return Err(violation(format!("free curve with nonzero I/J_f in degree {}", sat.sat_degree - 1)));
        }
    }
    Ok(InvariantReport { saturation, ..report })
}

fn check_report(r: &InvariantReport) -> Result<()> {
    let d = r.d;
    let t = stable_bound(d);
    if let Some((d1, d2)) = r.exponents {
        if r.classification == Classification::Free {
            for (k, &a) in r.hilbert.ar_dims.iter().enumerate() {
                let expected =
                    dim_graded_piece_signed(k as i64 - d1 as i64) + dim_graded_piece_signed(k as i64 - d2 as i64);
                if a != expected {
                    return Err(violation(format!(
                        "free with exponents ({d1}, {d2}) but dim AR_{k} = {a}, expected {expected}"
                    )));
                }
            }
            if r.tau < crate::strata::tau_min(d) {
                return Err(violation(format!("free curve with tau {} below the minimum", r.tau)));
            }
            if let Some(reg) = r.reg {
                if reg + 3 != d2 + d {
                    return Err(violation(format!("free curve with reg {reg} != d2 + d - 3")));
                }
            }
        }
    }
    match (r.ct, r.mdr_e) {
        (Some(ct), Some(e)) if ct + 2 != e + d => {
            return Err(violation(format!("ct = {ct} but mdr_e + d - 2 = {}", e + d - 2)));
        }
        (Some(_), None) | (None, Some(_)) if d >= 3 => {
            return Err(violation(format!("ct {:?} inconsistent with mdr_e {:?}", r.ct, r.mdr_e)));
        }
        _ => {}
    }
    let (Some(ct), Some(st), Some(reg), Some(mdr_e)) = (r.ct, r.st, r.reg, r.mdr_e) else {
        return Ok(());
    };
    let sum = (ct + st) as i64;
    let corg = 2 * (d as i64 - 2) - mdr_e as i64;
    let reg = reg as i64;
    let ok = match r.classification {
        Classification::Free => sum == t && (d < 4 || reg == corg),
        Classification::NearlyFree if r.line_arrangement => sum == t + 2 && (d < 4 || reg == corg + 1),
        Classification::NearlyFree => true,
        Classification::Neither => sum >= t + 3 && (d < 4 || reg >= corg + 2),
    };
    if !ok {
        return Err(violation(format!(
            "{} curve with ct + st = {sum}, reg = {reg}, mdr_e = {mdr_e} (d = {d})",
            r.classification.as_str()
        )));
    }
    Ok(())
}

/// Saturation `I = J_f : m^infinity` degree by degree on `k <= cap`.
///
/// Each `I_k` is carried by its annihilator, a basis of the linear forms on
/// `S_k` vanishing on it, whose size is the codimension `dim S_k - dim I_k`.
/// The sweep starts one degree above the window from `J_f`, which is
/// saturated past `3(d-2)`, and descends with
/// `I_k = {g : x g, y g, z g in I_{k+1}}`: a form on `S_{k+1}` killing
/// `I_{k+1}`, composed with multiplication by a variable, kills `I_k`, and
/// these pullbacks span the annihilator of `I_k`.
pub fn saturation_profile(f: &HomogeneousPolynomial, cap: usize, rank: &RankConfig) -> Result<SaturationProfile> {
    let table = hilbert_table(f, cap, rank)?;
    saturation_from_table(f, &table, rank)
}

fn saturation_from_table(f: &HomogeneousPolynomial, table: &HilbertTable, rank: &RankConfig) -> Result<SaturationProfile> {
    match rank.mode {
        RankMode::Modular => {
            let p = rank.primes_for(&denominators(f))[0];
            saturation_over(&PrimeField::new(p), f, table)
        }
        RankMode::Exact | RankMode::Certified => saturation_over(&RationalField, f, table),
    }
}

fn denominators(f: &HomogeneousPolynomial) -> Vec<num_bigint::BigInt> {
    let mut ds: Vec<_> = f.dense().iter().map(|q| q.denom().clone()).filter(|d| !num_traits::One::is_one(d)).collect();
    ds.sort();
    ds.dedup();
    ds
}

/// Forms on `S_k` vanishing on `(J_f)_k`.
fn jacobian_annihilator<F: Field>(field: &F, partials: &[Vec<(Monomial, F::Elem)>; 3], d: usize, k: usize) -> Vec<Vec<F::Elem>> {
    let n = dim_graded_piece(k);
    let mut rows = Vec::new();
    if k + 1 >= d {
        for mu in monomial_basis(k + 1 - d) {
            for g in partials {
                let mut v = vec![field.zero(); n];
                for (m, c) in g {
                    v[m.times(&mu).index()] = c.clone();
                }
                rows.push(v);
            }
        }
    }
    Echelon::from_rows(field, n, rows).kernel(field)
}

/// Annihilator of `{g in S_k : x g, y g, z g in V}` from that of `V` in `S_{k+1}`.
fn pull_back<F: Field>(field: &F, upper: &[Vec<F::Elem>], k: usize) -> Echelon<F::Elem> {
    let basis = monomial_basis(k);
    let vars = [Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)];
    let mut rows = Vec::with_capacity(3 * upper.len());
    for a in upper {
        for v in &vars {
            rows.push(basis.iter().map(|m| a[m.times(v).index()].clone()).collect());
        }
    }
    Echelon::from_rows(field, basis.len(), rows)
}

fn saturation_over<F: Field>(field: &F, f: &HomogeneousPolynomial, table: &HilbertTable) -> Result<SaturationProfile> {
    let d = f.degree();
    let cap = table.degree_cap;
    let partials = f.partials()?;
    let sparse: [Vec<(Monomial, F::Elem)>; 3] =
        partials.map(|g| g.terms().map(|(m, c)| (m, field.from_rational(c))).collect());

    let mut annihilator = jacobian_annihilator(field, &sparse, d, cap + 1);
    if annihilator.len() != table.tau() {
        return Err(Error::InvariantViolation(format!(
            "Milnor algebra has dimension {} in degree {} over the saturation field, {} over Q",
            annihilator.len(),
            cap + 1,
            table.tau()
        )));
    }
    let mut saturation_dims = vec![0; cap + 1];
    for k in (0..=cap).rev() {
        let ech = pull_back(field, &annihilator, k);
        saturation_dims[k] = dim_graded_piece(k) - ech.rank();
        annihilator = ech.basis().to_vec();
    }

    let mut gap_dims = Vec::with_capacity(cap + 1);
    for (k, (&s, &j)) in saturation_dims.iter().zip(&table.jacobian_dims).enumerate() {
        if s < j {
            return Err(Error::InvariantViolation(format!("saturation smaller than J_f in degree {k}")));
        }
        gap_dims.push(s - j);
    }
    let stable_from = (stable_bound(d) + 1).max(0) as usize;
    if gap_dims.iter().skip(stable_from).any(|&g| g != 0) {
        return Err(Error::NonIsolatedSingularities(stable_from));
    }
    let sat_degree = gap_dims.iter().rposition(|&g| g != 0).map_or(0, |k| k + 1);
    let algebraically_rigid = gap_dims.get(d).map_or(true, |&g| g == 0);
    Ok(SaturationProfile { saturation_dims, gap_dims, sat_degree, algebraically_rigid })
}
