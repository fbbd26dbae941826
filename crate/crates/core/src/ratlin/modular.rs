use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{rank, Rational, RationalMatrix};

/// Number of primes `rank_fast` uses unless configured otherwise.
pub const DEFAULT_PRIME_COUNT: usize = 3;

const PRIME_LOW: u64 = 1 << 30;
const PRIME_HIGH: u64 = 1 << 31;

/// Arithmetic modulo a prime below 2^31, with Barrett reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    barrett: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < PRIME_HIGH, "modulus must lie in [2, 2^31)");
        Modulus { p, barrett: u64::MAX / p }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `x mod p` for any `x < 2^63`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat; `p` is prime).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        if let Some(small) = n.to_i64() {
            return small.rem_euclid(self.p as i64) as u64;
        }
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }

    /// Image of a rational, or `None` when `p` divides its denominator.
    pub fn from_rational(&self, q: &Rational) -> Option<u64> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        (den != 0).then(|| self.mul(num, self.inv(den)))
    }
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Draws `count` distinct primes from [2^30, 2^31) with a seeded generator,
/// skipping any prime for which `excluded` returns true.
pub fn select_primes(count: usize, seed: u64, excluded: impl Fn(u64) -> bool) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::with_capacity(count);
    while primes.len() < count {
        let candidate = PRIME_LOW + (rng.next_u64() % (PRIME_HIGH - PRIME_LOW));
        if is_prime_u64(candidate) && !primes.contains(&candidate) && !excluded(candidate) {
            primes.push(candidate);
        }
    }
    primes
}

/// Rank of a row-major matrix of residues, destroying its contents.
pub fn rank_mod_p(a: &mut [u64], rows: usize, cols: usize, m: &Modulus) -> usize {
    assert_eq!(a.len(), rows * cols);
    let p = m.p();
    let mut r = 0;
    let mut support = Vec::with_capacity(cols);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = m.inv(a[r * cols + c]);
        support.clear();
        for j in c + 1..cols {
            let v = a[r * cols + j];
            if v != 0 {
                let scaled = m.mul(v, inv);
                a[r * cols + j] = scaled;
                support.push(j);
            }
        }
        a[r * cols + c] = 1;
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let pivot_row = &head[r * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            row[c] = 0;
            let factor = p - lead;
            for &j in &support {
                row[j] = m.reduce(row[j] + factor * pivot_row[j]);
            }
        }
        r += 1;
    }
    r
}

/// How `rank_fast` is allowed to answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    /// Always use Bareiss elimination over the integers.
    Exact,
    /// Maximum of the ranks modulo the configured primes.
    Modular,
    /// Modular, falling back to `Exact` unless every prime agrees on full rank.
    Certified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankConfig {
    pub mode: RankMode,
    pub primes: usize,
    pub seed: u64,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig { mode: RankMode::Modular, primes: DEFAULT_PRIME_COUNT, seed: 0x5eed_0f_11e5 }
    }
}

impl RankConfig {
    pub fn modular() -> Self {
        Self::default()
    }

    pub fn certified() -> Self {
        RankConfig { mode: RankMode::Certified, ..Self::default() }
    }

    pub fn exact() -> Self {
        RankConfig { mode: RankMode::Exact, ..Self::default() }
    }

    /// True when results carry no probabilistic caveat.
    pub fn is_exact(&self) -> bool {
        self.mode != RankMode::Modular
    }

    /// Primes usable for matrices whose denominators are drawn from `denominators`.
    pub fn primes_for(&self, denominators: &[BigInt]) -> Vec<u64> {
        select_primes(self.primes.max(1), self.seed, |p| {
            let p = BigInt::from(p);
            denominators.iter().any(|d| d.is_multiple_of(&p))
        })
    }

    pub fn rank(&self, m: &RationalMatrix) -> usize {
        rank_fast(m, self).rank
    }
}

/// Outcome of a modular rank computation, kept for diagnostics and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastRank {
    pub rank: usize,
    pub primes: Vec<u64>,
    pub modular_ranks: Vec<usize>,
    pub exact_fallback: bool,
}

/// Rank via several random primes. In `Certified` mode the exact path is
/// taken whenever the primes disagree or the matrix looks rank deficient,
/// so the answer always equals [`rank`].
pub fn rank_fast(m: &RationalMatrix, cfg: &RankConfig) -> FastRank {
    if cfg.mode == RankMode::Exact {
        return FastRank { rank: rank(m), primes: Vec::new(), modular_ranks: Vec::new(), exact_fallback: true };
    }
    let full = m.rows().min(m.cols());
    if full == 0 {
        return FastRank { rank: 0, primes: Vec::new(), modular_ranks: Vec::new(), exact_fallback: false };
    }
    let primes = cfg.primes_for(&m.nontrivial_denominators());
    let modular_ranks: Vec<usize> = primes
        .iter()
        .map(|&p| {
            let md = Modulus::new(p);
            let mut a: Vec<u64> = m
                .entries()
                .iter()
                .map(|q| if q.is_zero() { 0 } else { md.from_rational(q).expect("prime avoids denominators") })
                .collect();
            rank_mod_p(&mut a, m.rows(), m.cols(), &md)
        })
        .collect();
    let best = modular_ranks.iter().copied().max().unwrap_or(0);
    let agree = modular_ranks.iter().all(|&r| r == best);
    if cfg.mode == RankMode::Certified && (!agree || best < full) {
        return FastRank { rank: rank(m), primes, modular_ranks, exact_fallback: true };
    }
    FastRank { rank: best, primes, modular_ranks, exact_fallback: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int};

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(2_147_483_649));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn selected_primes_in_range_and_distinct() {
        let ps = select_primes(5, 7, |_| false);
        assert_eq!(ps.len(), 5);
        for (i, &p) in ps.iter().enumerate() {
            assert!((PRIME_LOW..PRIME_HIGH).contains(&p) && is_prime_u64(p));
            assert!(!ps[..i].contains(&p));
        }
        assert_eq!(ps, select_primes(5, 7, |_| false));
    }

    #[test]
    fn barrett_matches_remainder() {
        let m = Modulus::new(2_147_483_629);
        for x in [0u64, 1, 12345, (1 << 62) - 1, 4_611_686_014_132_420_609] {
            assert_eq!(m.reduce(x), x % m.p());
        }
        assert_eq!(m.mul(m.inv(12345), 12345), 1);
    }

    #[test]
    fn denominator_prime_is_excluded() {
        let cfg = RankConfig::certified();
        let bad = cfg.primes_for(&[])[0];
        let mut a = RationalMatrix::zeros(2, 2);
        a.set(0, 0, Rational::new(BigInt::from(1), BigInt::from(bad)));
        a.set(1, 1, int(bad as i64));
        a.set(0, 1, frac(1, 2));
        let out = rank_fast(&a, &cfg);
        assert!(!out.primes.contains(&bad));
        assert_eq!(out.rank, rank(&a));
    }

    #[test]
    fn certified_falls_back_when_deficient() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        let out = rank_fast(&a, &RankConfig::certified());
        assert!(out.exact_fallback);
        assert_eq!(out.rank, 1);
        let id = RationalMatrix::identity(4);
        let out = rank_fast(&id, &RankConfig::certified());
        assert!(!out.exact_fallback);
        assert_eq!(out.rank, 4);
    }
}
