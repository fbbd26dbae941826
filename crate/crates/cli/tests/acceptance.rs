//! Acceptance run: one line per criterion, nonzero exit when any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use linarr::census;
use linarr_core::graded_poly::{HomogeneousPolynomial, LinearForm};
use linarr_core::lattice::{
    canonical_form, classify_mdr2, intersection_lattice, is_isomorphic, realize, Arrangement, Mdr2Class, NamedLattice,
};
use linarr_core::milnor::{classify, classify_with_basis, AnalysisOptions, Classification, InvariantReport};
use linarr_core::ratlin::{frac, int, rank, rank_fast, Rational, RationalMatrix, RankConfig};
use linarr_core::strata::{orbit_dim, tau_min};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Collected mismatches of one criterion.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    compared: usize,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl Into<String>, actual: T, expected: T) {
        self.compared += 1;
        if actual != expected {
            self.failures.push(format!("{}: got {actual:?}, expected {expected:?}", what.into()));
        }
    }

    fn holds(&mut self, what: impl Into<String>, ok: bool) {
        self.compared += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn error(&mut self, what: impl Into<String>) {
        self.compared += 1;
        self.failures.push(what.into());
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn named(s: &str) -> Arrangement {
    realize(&s.parse::<NamedLattice>().expect("known family")).expect("realizable")
}

fn invariants(arr: &Arrangement, opts: &AnalysisOptions) -> Result<InvariantReport, String> {
    classify_with_basis(&arr.polynomial(), opts, true).map_err(|e| e.to_string())
}

fn generic_arrangements(c: &mut Check) {
    for d in 4..=8usize {
        let arr = realize(&NamedLattice::Generic { d }).unwrap();
        let r = match invariants(&arr, &AnalysisOptions::certified().without_saturation()) {
            Ok(r) => r,
            Err(e) => return c.error(format!("generic({d}): {e}")),
        };
        c.eq(format!("generic({d}) tau"), r.tau, choose2(d));
        c.eq(format!("generic({d}) mdr"), r.mdr, d - 2);
        c.eq(format!("generic({d}) mdr_e"), r.mdr_e, Some(d - 2));
        c.eq(format!("generic({d}) ct"), r.ct, Some(2 * d - 4));
        c.eq(format!("generic({d}) st"), r.st, Some(2 * d - 4));
        c.eq(format!("generic({d}) reg"), r.reg, Some(2 * d - 5));
        let r0 = d - 2;
        let tau_dr = (d - 1) * (d - 1) - r0 * (d - 1 - r0);
        let fires = choose2(d) + 1 == tau_dr && 2 * r0 <= d;
        c.eq(format!("generic({d}) nearly free"), r.classification == Classification::NearlyFree, fires);
        c.eq(format!("generic({d}) criterion fires"), fires, d == 4);
    }
}

fn run_census(c: &mut Check, d: usize) {
    let t = census::table(d).expect("census table");
    let report = census::run_table(&t, false);
    c.holds(format!("census d={d} uses certified ranks"), report.certified);
    for cell in &report.cells {
        c.holds(
            format!("{} {}: got {}, expected {}", cell.subject, cell.check, cell.actual, cell.expected),
            cell.pass,
        );
    }
    let checks = |subject: &str| report.cells.iter().filter(|x| x.subject == subject).count();
    match d {
        4 => {
            c.eq("d=4 rows", t.rows.len(), 3);
            for row in ["L(4,2)", "L(4,3)", "L(4,4)"] {
                c.holds(format!("{row} has five checks"), checks(row) >= 5);
            }
        }
        5 => {
            c.eq("d=5 rows", t.rows.len(), 5);
            c.eq("d=5 tau multiset", t.tau_multiset.clone(), Some(vec![10, 11, 12, 13, 16]));
        }
        6 => {
            c.eq("d=6 rows", t.rows.len(), 10);
            c.eq("d=6 tau multiset", t.tau_multiset.clone(), Some(vec![15, 16, 17, 17, 18, 18, 19, 19, 21, 25]));
            c.holds("d=6 tau 17 pair compared", report.cells.iter().any(|x| x.check == "same milnor_dims"));
        }
        _ => {}
    }
}

fn census_d4(c: &mut Check) {
    run_census(c, 4);
    let direct = [("L(4,2)", 6, 2, "nearly_free", (2, 2)), ("L(4,3)", 7, 1, "free", (1, 2)), ("L(4,4)", 9, 0, "free", (0, 3))];
    for (name, tau, mdr, class, exps) in direct {
        match invariants(&named(name), &AnalysisOptions::certified().without_saturation()) {
            Ok(r) => {
                c.eq(format!("{name} tau"), r.tau, tau);
                c.eq(format!("{name} mdr"), r.mdr, mdr);
                c.eq(format!("{name} class"), r.classification.as_str(), class);
                c.eq(format!("{name} exponents"), r.exponents, Some(exps));
            }
            Err(e) => c.error(format!("{name}: {e}")),
        }
    }
}

fn census_d5(c: &mut Check) {
    run_census(c, 5);
}

fn census_d6(c: &mut Check) {
    run_census(c, 6);
    let opts = AnalysisOptions::certified().without_saturation();
    let a = named("Ltilde(3,3)");
    let b = named("Ltilde_prime(3,3)");
    c.holds("tau 17 lattices are not isomorphic", !is_isomorphic(&intersection_lattice(&a), &intersection_lattice(&b)));
    match (invariants(&a, &opts), invariants(&b, &opts)) {
        (Ok(ra), Ok(rb)) => {
            c.eq("tau 17 m_k", &ra.hilbert.milnor_dims, &rb.hilbert.milnor_dims);
            c.eq("Ltilde(3,3) mdr", ra.mdr, 3);
            c.eq("Ltilde_prime(3,3) mdr", rb.mdr, 3);
        }
        (ra, rb) => c.error(format!("tau 17 pair: {:?} {:?}", ra.err(), rb.err())),
    }
}

fn ziegler(c: &mut Check) {
    let a = named("ziegler_A");
    let b = named("ziegler_A'");
    let (la, lb) = (intersection_lattice(&a), intersection_lattice(&b));
    c.holds("ziegler lattices isomorphic", is_isomorphic(&la, &lb));
    for (name, l) in [("A", &la), ("A'", &lb)] {
        c.eq(format!("{name} n_2"), l.count(2), 18);
        c.eq(format!("{name} n_3"), l.count(3), 6);
        c.eq(format!("{name} points of multiplicity >= 4"), l.max_multiplicity(), 3);
    }
    let opts = AnalysisOptions::default();
    let (ra, rb) = match (invariants(&a, &opts), invariants(&b, &opts)) {
        (Ok(ra), Ok(rb)) => (ra, rb),
        (ra, rb) => return c.error(format!("ziegler: {:?} {:?}", ra.err(), rb.err())),
    };
    c.eq("A tau", ra.tau, 42);
    c.eq("A' tau", rb.tau, 42);
    c.eq("A mdr", ra.mdr, 5);
    c.eq("A' mdr", rb.mdr, 6);
    let (ma, mb) = (ra.hilbert.milnor_dims.get(13).copied(), rb.hilbert.milnor_dims.get(13).copied());
    c.eq("A' m_13", mb, Some(42));
    c.holds(format!("m_13(A') = {mb:?} < m_13(A) = {ma:?}"), matches!((ma, mb), (Some(x), Some(y)) if y < x));
    for (name, r) in [("A", &ra), ("A'", &rb)] {
        match &r.saturation {
            Some(s) => {
                c.eq(format!("{name} dim (I/J)_9"), s.gap_dims.get(9).copied(), Some(4));
                c.eq(format!("{name} algebraically rigid"), s.algebraically_rigid, false);
            }
            None => c.error(format!("{name}: saturation not computed")),
        }
    }
}

fn families(c: &mut Check) {
    let opts = AnalysisOptions::default().without_saturation();
    for m2 in 2..=6usize {
        for m1 in 2..=m2 {
            let d = m1 + m2;
            let spec = NamedLattice::LTilde { m1, m2 };
            match invariants(&realize(&spec).unwrap(), &opts) {
                Ok(r) => {
                    c.eq(format!("{spec} mdr"), r.mdr, m1);
                    c.eq(format!("{spec} tau"), r.tau, (d - 1) * (d - 1) - m1 * m2 + 1);
                    c.holds(format!("{spec} is not free"), r.classification != Classification::Free);
                }
                Err(e) => c.error(format!("{spec}: {e}")),
            }
            let spec = NamedLattice::LPrime { m1, m2 };
            match invariants(&realize(&spec).unwrap(), &opts) {
                Ok(r) => {
                    c.eq(format!("{spec} mdr"), r.mdr, m1);
                    c.eq(format!("{spec} tau"), r.tau, (d - 1) * (d - 1) - m1 * (m2 - 1) - 1);
                    c.eq(format!("{spec} class"), r.classification, Classification::NearlyFree);
                }
                Err(e) => c.error(format!("{spec}: {e}")),
            }
            if m1 >= 3 {
                let spec = NamedLattice::LHat { m1, m2 };
                match invariants(&realize(&spec).unwrap(), &opts) {
                    Ok(r) => {
                        c.eq(format!("{spec} mdr"), r.mdr, m1 - 1);
                        let (a, b) = (m1 - 1, m2 - 1);
                        c.eq(format!("{spec} tau"), r.tau, a * a + b * b + a * b);
                        c.eq(format!("{spec} class"), r.classification, Classification::Free);
                    }
                    Err(e) => c.error(format!("{spec}: {e}")),
                }
            }
        }
    }
}

fn mdr2(c: &mut Check) {
    let rank = RankConfig::certified();
    let mut cases: Vec<(NamedLattice, Mdr2Class)> = Vec::new();
    for d in 4..=8 {
        cases.push((NamedLattice::L { d, m: d - 2 }, Mdr2Class::LDdMinus2));
    }
    for d in 5..=8 {
        cases.push((NamedLattice::LHat { m1: 3, m2: d - 2 }, Mdr2Class::LHat3));
    }
    cases.push((NamedLattice::Monomial { m: 2 }, Mdr2Class::Monomial223));
    cases.push((NamedLattice::Generic { d: 5 }, Mdr2Class::NotMdr2));
    for (spec, expected) in cases {
        match classify_mdr2(&realize(&spec).unwrap(), &rank) {
            Ok(got) => c.eq(format!("{spec}"), got, expected),
            Err(e) => c.error(format!("{spec}: {e}")),
        }
    }
    match classify(&named("generic(5)").polynomial(), &AnalysisOptions::certified().without_saturation()) {
        Ok(r) => c.eq("generic(5) mdr", r.mdr, 3),
        Err(e) => c.error(format!("generic(5): {e}")),
    }
}

fn degree_eleven(c: &mut Check) {
    let arr = named("L(11,8)");
    c.eq("tau_min(11)", tau_min(11), 75);
    c.eq("lattice tau of L(11,8)", intersection_lattice(&arr).tau(), 76);
    match invariants(&arr, &AnalysisOptions::default().without_saturation()) {
        Ok(r) => {
            c.eq("L(11,8) tau", r.tau, 76);
            c.holds("L(11,8) tau exceeds tau_min(11)", r.tau > tau_min(11));
            c.eq("L(11,8) class", r.classification, Classification::Neither);
        }
        Err(e) => c.error(format!("L(11,8): {e}")),
    }
}

const INSTANCES: usize = 120;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let d = rng.gen_range(3..=6);
        let rows: Vec<[i64; 3]> = (0..d).map(|_| [0; 3].map(|_| rng.gen_range(-2..=2))).collect();
        if let Ok(a) = Arrangement::from_i64(&rows) {
            return a;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> RationalMatrix {
    let (r, c, k) = (rng.gen_range(1..8), rng.gen_range(1..8), rng.gen_range(1..5));
    if rng.gen_bool(0.5) {
        let a: Vec<Rational> = (0..r * k).map(|_| random_rational(rng)).collect();
        let b: Vec<Rational> = (0..k * c).map(|_| random_rational(rng)).collect();
        let entries = (0..r * c)
            .map(|ij| (0..k).map(|t| &a[(ij / c) * k + t] * &b[t * c + ij % c]).sum())
            .collect();
        RationalMatrix::from_entries(r, c, entries).unwrap()
    } else {
        RationalMatrix::from_entries(r, c, (0..r * c).map(|_| random_rational(rng)).collect()).unwrap()
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> HomogeneousPolynomial {
    let d = rng.gen_range(1..=6);
    HomogeneousPolynomial::from_dense(d, (0..(d + 1) * (d + 2) / 2).map(|_| random_rational(rng)).collect()).unwrap()
}

fn properties(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11e5);
    let x = |a, b, cc| LinearForm::from_i64(a, b, cc).unwrap().to_polynomial();
    for i in 0..INSTANCES {
        let f = random_polynomial(&mut rng);
        let [fx, fy, fz] = f.partials().unwrap();
        let lhs = x(1, 0, 0).mul(&fx).add(&x(0, 1, 0).mul(&fy)).unwrap().add(&x(0, 0, 1).mul(&fz)).unwrap();
        c.holds(format!("Euler identity, instance {i}"), lhs == f.scale(&int(f.degree() as i64)));
    }
    for i in 0..INSTANCES {
        let m = random_matrix(&mut rng);
        c.eq(format!("certified rank_fast, instance {i}"), rank_fast(&m, &RankConfig::certified()).rank, rank(&m));
    }
    let opts = AnalysisOptions::default().without_saturation();
    for i in 0..INSTANCES {
        let arr = random_arrangement(&mut rng);
        let d = arr.degree();
        let l = intersection_lattice(&arr);
        let pairs: usize = l.points().iter().map(|p| choose2(p.multiplicity())).sum();
        c.eq(format!("Hirzebruch identity, instance {i}"), pairs, choose2(d));
        let r = match classify(&arr.polynomial(), &opts) {
            Ok(r) => r,
            Err(e) => {
                c.error(format!("instance {i}: {e}"));
                continue;
            }
        };
        let lattice_tau: usize = l.points().iter().map(|p| (p.multiplicity() - 1).pow(2)).sum();
        c.eq(format!("lattice tau = Milnor tau, instance {i}"), r.tau, lattice_tau);
        let (Some(ct), Some(st), Some(mdr_e), Some(reg)) = (r.ct, r.st, r.mdr_e, r.reg) else {
            c.error(format!("instance {i}: ct, st, mdr_e or reg undefined for d = {d}"));
            continue;
        };
        c.eq(format!("ct = mdr_e + d - 2, instance {i}"), ct, mdr_e + d - 2);
        let free = r.classification == Classification::Free;
        c.holds(format!("reg in {{st-1, st}}, instance {i}"), reg + 1 == st || reg == st);
        c.eq(format!("reg = st iff free, instance {i}"), reg == st, free);
        if d >= 4 {
            let t = 3 * (d - 2);
            let ok = match r.classification {
                Classification::Free => ct + st == t,
                Classification::NearlyFree => ct + st == t + 2,
                Classification::Neither => ct + st >= t + 3,
            };
            c.holds(format!("ct+st trichotomy, instance {i}: ct+st = {}, T = {t}", ct + st), ok);
        }
    }
    for i in 0..INSTANCES {
        let arr = random_arrangement(&mut rng);
        let d = arr.degree();
        let mut perm: Vec<usize> = (0..d).collect();
        for k in (1..d).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let g = loop {
            let g: [[Rational; 3]; 3] = [0; 3].map(|_| [0; 3].map(|_| random_rational(&mut rng)));
            let det = &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1])
                - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
                + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0]);
            if det != int(0) {
                break g;
            }
        };
        let moved = arr.permuted(&perm).transformed(&g).unwrap();
        c.eq(
            format!("canonical form invariance, instance {i}"),
            canonical_form(&intersection_lattice(&moved)),
            canonical_form(&intersection_lattice(&arr)),
        );
    }
}

fn orbit_table(c: &mut Check) {
    let witnesses: [(&str, &[[i64; 3]], usize); 7] = [
        ("x", &[[1, 0, 0]], 2),
        ("xy", &[[1, 0, 0], [0, 1, 0]], 4),
        ("pencil of three lines", &[[1, 0, 0], [0, 1, 0], [1, 1, 0]], 5),
        ("xyz", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]], 6),
        ("pencil of four lines", &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]], 5),
        ("xyz(x+y)", &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]], 7),
        ("generic four lines", &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], 8),
    ];
    for (name, lines, expected) in witnesses {
        match orbit_dim(&Arrangement::from_i64(lines).unwrap(), &RankConfig::certified()) {
            Ok(got) => c.eq(name, got, expected),
            Err(e) => c.error(format!("{name}: {e}")),
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Check)); 10] = [
        ("generic arrangements d = 4..8", generic_arrangements),
        ("census d = 4", census_d4),
        ("census d = 5", census_d5),
        ("census d = 6", census_d6),
        ("Ziegler pair", ziegler),
        ("named family sweeps", families),
        ("mdr 2 classification", mdr2),
        ("L(11,8) exceeds tau_min and is neither", degree_eleven),
        ("randomized property suites", properties),
        ("orbit dimension table", orbit_table),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut check = Check::default();
        if let Err(panic) = catch_unwind(AssertUnwindSafe(|| run(&mut check))) {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            check.error(format!("panicked: {msg}"));
        }
        let secs = start.elapsed().as_secs_f64();
        let status = if check.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({} checks, {secs:.1}s)", n + 1, check.compared);
        for f in &check.failures {
            println!("    {f}");
        }
        if !check.failures.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
