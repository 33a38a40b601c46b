//! Irreducibility over ℚ by a chain of cheap certificates. Every verdict
//! other than `Unknown` carries a witness that [`IrreducibilityVerdict::verify`]
//! rechecks from scratch.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::modp::{factor_degrees_mod_p, is_prime, primes_up_to};
use super::sturm::{isolate_real_roots, simplest_between};
use super::{AlgebraError, QPoly};
use crate::numerics::Rational;
use crate::parallel;

/// Largest prime tried by the Eisenstein test.
pub const EISENSTEIN_PRIME_BOUND: u64 = 10_000;
/// Largest prime tried by the mod-p scan.
pub const SCAN_PRIME_BOUND: u64 = 1_000;
/// Minimum number of good primes combined by the degree-pattern test.
pub const PATTERN_MIN_PRIMES: usize = 5;
/// Cap on candidate divisions in the quadratic-factor search.
const QUADRATIC_TRIAL_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Degree one.
    Linear,
    /// Degree two or three with no rational root.
    NoRationalRoot,
    /// Eisenstein's criterion at `p`.
    Eisenstein { p: u64 },
    /// `f mod p` is irreducible of the same degree.
    ModP { p: u64 },
    /// Factor degrees modulo several primes admit no common nontrivial
    /// subset sum.
    DegreePatterns { patterns: Vec<(u64, Vec<usize>)> },
    /// A nontrivial factor dividing `f` exactly.
    Factor { factor: QPoly },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityVerdict {
    pub status: Status,
    pub witness: Option<Certificate>,
}

impl IrreducibilityVerdict {
    fn irreducible(c: Certificate) -> Self {
        IrreducibilityVerdict { status: Status::Irreducible, witness: Some(c) }
    }

    fn reducible(factor: QPoly) -> Self {
        IrreducibilityVerdict { status: Status::Reducible, witness: Some(Certificate::Factor { factor }) }
    }

    fn unknown() -> Self {
        IrreducibilityVerdict { status: Status::Unknown, witness: None }
    }

    /// Rechecks the witness against `f` independently of how it was found.
    pub fn verify(&self, f: &QPoly) -> bool {
        let Some(n) = f.degree() else { return false };
        match (&self.status, &self.witness) {
            (Status::Unknown, None) => true,
            (Status::Reducible, Some(Certificate::Factor { factor })) => {
                matches!(factor.degree(), Some(d) if d >= 1 && d < n) && f.exact_div(factor).is_some()
            }
            (Status::Irreducible, Some(c)) => match c {
                Certificate::Linear => n == 1,
                Certificate::NoRationalRoot => (n == 2 || n == 3) && rational_roots(f).is_empty(),
                Certificate::Eisenstein { p } => {
                    eisenstein_at(&f.primitive_integer(), &BigInt::from(*p)) && is_prime(*p)
                }
                Certificate::ModP { p } => factor_degrees_mod_p(f, *p).is_ok_and(|d| d == vec![n]),
                Certificate::DegreePatterns { patterns } => {
                    let recomputed = patterns
                        .iter()
                        .all(|(p, d)| factor_degrees_mod_p(f, *p).is_ok_and(|e| &e == d));
                    let degs: Vec<&[usize]> = patterns.iter().map(|(_, d)| d.as_slice()).collect();
                    recomputed && only_trivial_splits(n, &degs)
                }
                Certificate::Factor { .. } => false,
            },
            _ => false,
        }
    }
}

/// Eisenstein's conditions at a single prime `p` for integer coefficients.
fn eisenstein_at(c: &[BigInt], p: &BigInt) -> bool {
    let n = c.len() - 1;
    let p2 = p * p;
    !(&c[n] % p).is_zero() && c[..n].iter().all(|a| (a % p).is_zero()) && !(&c[0] % &p2).is_zero()
}

/// Smallest prime `p ≤ 10⁴` for which Eisenstein's criterion applies to the
/// coefficients of `f` as given.
pub fn eisenstein(f: &QPoly) -> Result<Option<u64>, AlgebraError> {
    if !f.has_integer_coeffs() {
        return Err(AlgebraError::NonIntegerCoefficients);
    }
    let n = match f.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(0) => return Err(AlgebraError::ConstantPolynomial),
        Some(n) => n,
    };
    let c: Vec<BigInt> = f.coeffs().iter().map(|q| q.to_integer()).collect();
    // Any Eisenstein prime divides every non-leading coefficient.
    let g = c[..n].iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if g.is_zero() {
        return Ok(None);
    }
    Ok(primes_up_to(EISENSTEIN_PRIME_BOUND)
        .into_iter()
        .filter(|p| (&g % BigInt::from(*p)).is_zero())
        .find(|p| eisenstein_at(&c, &BigInt::from(*p))))
}

/// All distinct rational roots, ascending.
///
/// Isolating intervals are shrunk below `1 / lead²` (two rationals whose
/// denominators divide the leading coefficient are at least that far apart);
/// the simplest rational in each interval is then the only possible rational
/// root there.
pub fn rational_roots(f: &QPoly) -> Vec<Rational> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let Ok(mut iso) = isolate_real_roots(f) else { return Vec::new() };
    let g = iso.poly().clone();
    let lead = g.primitive_integer().last().expect("nonzero").clone();
    let width = Rational::new(BigInt::one(), &lead * &lead * BigInt::from(2));
    iso.refine_all(&width);
    iso.intervals
        .iter()
        .map(|(lo, hi)| simplest_between(lo, hi))
        .filter(|r| g.eval(r).is_zero())
        .collect()
}

fn linear_factor(r: &Rational) -> QPoly {
    QPoly::new(vec![-r.clone(), Rational::one()])
}

/// Achievable factor degrees `1..n` under one factorization pattern.
fn subset_sums(n: usize, degs: &[usize]) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for d in degs {
        for s in (*d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// No proper degree `1..n−1` is achievable under every pattern.
fn only_trivial_splits(n: usize, patterns: &[&[usize]]) -> bool {
    if patterns.is_empty() {
        return false;
    }
    let mut common = vec![true; n + 1];
    for d in patterns {
        for (c, r) in common.iter_mut().zip(subset_sums(n, d)) {
            *c &= r;
        }
    }
    (1..n).all(|k| !common[k])
}

/// Positive divisors of `n`, or `None` if `n` is too large to factor by
/// trial division quickly.
fn divisors(n: &BigInt) -> Option<Vec<i128>> {
    let n = n.abs().to_i128()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Trial search for an integer quadratic factor `a x² + b x + c` with
/// `a | lead`, `c | const` and `a + b + c | f(1)` (Gauss's lemma).
fn quadratic_factor(f: &QPoly) -> Option<QPoly> {
    let ints = f.primitive_integer();
    let n = ints.len() - 1;
    if n < 4 {
        return None;
    }
    let f1: BigInt = ints.iter().sum();
    let lead_divs = divisors(&ints[n])?;
    let const_divs = divisors(&ints[0])?;
    let f1_divs = divisors(&f1)?;
    let mut trials = 0;
    for a in &lead_divs {
        for c0 in &const_divs {
            for c in [*c0, -*c0] {
                for d0 in &f1_divs {
                    for d in [*d0, -*d0] {
                        trials += 1;
                        if trials > QUADRATIC_TRIAL_CAP {
                            return None;
                        }
                        let b = d - a - c;
                        let q = QPoly::from_ints(&[BigInt::from(c), BigInt::from(b), BigInt::from(*a)]);
                        if f.rem(&q).is_zero() {
                            return Some(q);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Irreducibility over ℚ: exact evidence first, `Unknown` when every test in
/// the pipeline is inconclusive.
pub fn irreducible_over_q(f: &QPoly) -> IrreducibilityVerdict {
    let n = match f.degree() {
        None | Some(0) => return IrreducibilityVerdict::unknown(),
        Some(n) => n,
    };
    if n == 1 {
        return IrreducibilityVerdict::irreducible(Certificate::Linear);
    }
    let (sq, reduced) = f.squarefree_part();
    if reduced {
        let g = f.gcd(&f.derivative());
        return IrreducibilityVerdict::reducible(g);
    }
    debug_assert_eq!(sq.degree(), Some(n));
    if let Some(r) = rational_roots(f).last() {
        return IrreducibilityVerdict::reducible(linear_factor(r));
    }
    if n <= 3 {
        return IrreducibilityVerdict::irreducible(Certificate::NoRationalRoot);
    }
    let prim = QPoly::from_ints(&f.primitive_integer());
    if let Ok(Some(p)) = eisenstein(&prim) {
        return IrreducibilityVerdict::irreducible(Certificate::Eisenstein { p });
    }

    let primes = primes_up_to(SCAN_PRIME_BOUND);
    let patterns: Vec<Option<Vec<usize>>> = parallel::map(&primes, |p| factor_degrees_mod_p(f, *p).ok());
    let good: Vec<(u64, Vec<usize>)> = primes
        .iter()
        .zip(patterns)
        .filter_map(|(p, d)| d.map(|d| (*p, d)))
        .collect();
    if let Some((p, _)) = good.iter().find(|(_, d)| d.len() == 1) {
        return IrreducibilityVerdict::irreducible(Certificate::ModP { p: *p });
    }
    if good.len() >= PATTERN_MIN_PRIMES {
        let degs: Vec<&[usize]> = good.iter().map(|(_, d)| d.as_slice()).collect();
        if only_trivial_splits(n, &degs) {
            // Keep the shortest prefix (at least the minimum count) that still
            // certifies, so the witness stays small.
            let k = (PATTERN_MIN_PRIMES..=good.len())
                .find(|k| only_trivial_splits(n, &degs[..*k]))
                .expect("full set certifies");
            return IrreducibilityVerdict::irreducible(Certificate::DegreePatterns {
                patterns: good[..k].to_vec(),
            });
        }
    }
    if let Some(q) = quadratic_factor(f) {
        return IrreducibilityVerdict::reducible(q);
    }
    IrreducibilityVerdict::unknown()
}
