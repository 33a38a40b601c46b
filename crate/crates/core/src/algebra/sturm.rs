//! Exact real-root counting and isolation with Sturm sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{AlgebraError, QPoly};
use crate::numerics::{pow10_real, Precision, Rational, Real};

/// Interval endpoint; infinite ends are replaced by the Cauchy bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(q: Rational) -> Bound {
        Bound::Finite(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    /// Distinct real roots in `(lo, hi]`.
    pub count: usize,
    /// The input had repeated factors and was divided by `gcd(f, f′)`.
    pub squarefree_reduced: bool,
}

/// Sturm sequence of a squarefree polynomial, each member scaled by a
/// positive constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

fn positive_normalize(p: QPoly) -> QPoly {
    match p.lead() {
        Some(l) => {
            let s = l.abs().recip();
            p.scale(&s)
        }
        None => p,
    }
}

impl SturmChain {
    pub fn new(f: &QPoly) -> SturmChain {
        let mut chain = vec![positive_normalize(f.clone())];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(positive_normalize(d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(positive_normalize(-&r));
        }
        SturmChain { chain }
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

fn resolve(b: &Bound, cauchy: &Rational) -> Rational {
    match b {
        Bound::NegInf => -cauchy.clone(),
        Bound::PosInf => cauchy.clone(),
        Bound::Finite(q) => q.clone(),
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_count(f: &QPoly, lo: &Bound, hi: &Bound) -> Result<RootCount, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (g, reduced) = f.squarefree_part();
    let cauchy = g.cauchy_bound();
    let (a, b) = (resolve(lo, &cauchy), resolve(hi, &cauchy));
    let chain = SturmChain::new(&g);
    Ok(RootCount { count: chain.count(&a, &b), squarefree_reduced: reduced })
}

/// Disjoint ascending open intervals, one root each, endpoints not roots.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    poly: QPoly,
    pub intervals: Vec<(Rational, Rational)>,
    pub squarefree_reduced: bool,
}

/// A split point strictly inside `(lo, hi)` that is not a root of `g`.
fn split_point(g: &QPoly, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    // Fractions tried in order; g has finitely many roots so one succeeds.
    for (n, d) in [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11), (7, 17)] {
        let m = lo + &w * Rational::new(BigInt::from(n), BigInt::from(d));
        if g.sign_at(&m) != 0 {
            return m;
        }
    }
    let mut k = 3;
    loop {
        let m = lo + &w / Rational::from_integer(BigInt::from(k));
        if g.sign_at(&m) != 0 {
            return m;
        }
        k += 1;
    }
}

/// Isolates every real root of `f` (of its squarefree part).
pub fn isolate_real_roots(f: &QPoly) -> Result<RootIsolation, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (g, reduced) = f.squarefree_part();
    let mut intervals = Vec::new();
    if g.degree().unwrap_or(0) > 0 {
        let chain = SturmChain::new(&g);
        let b = g.cauchy_bound();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match chain.count(&lo, &hi) {
                0 => {}
                1 => intervals.push((lo, hi)),
                _ => {
                    let m = split_point(&g, &lo, &hi);
                    stack.push((lo, m.clone()));
                    stack.push((m, hi));
                }
            }
        }
        intervals.sort_by(|a, b| a.0.cmp(&b.0));
    }
    Ok(RootIsolation { poly: g, intervals, squarefree_reduced: reduced })
}

impl RootIsolation {
    /// The squarefree polynomial whose roots are isolated.
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Shrinks interval `i` by bisection until its width is at most `width`.
    pub fn refine(&mut self, i: usize, width: &Rational) {
        let (lo, hi) = self.intervals[i].clone();
        self.intervals[i] = refine_interval(&self.poly, lo, hi, width);
    }

    pub fn refine_all(&mut self, width: &Rational) {
        for i in 0..self.intervals.len() {
            self.refine(i, width);
        }
    }

    /// Root values at the given precision: intervals are refined below the
    /// tolerance and their midpoints returned.
    pub fn roots(&self, prec: Precision) -> Vec<Real> {
        let width = Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), prec.digits() as usize + 5),
        );
        let mut iso = self.clone();
        iso.refine_all(&width);
        iso.intervals
            .iter()
            .map(|(lo, hi)| Real::from_rational(&((lo + hi) / Rational::from_integer(BigInt::from(2))), prec))
            .collect()
    }

    /// Index of the interval containing `x`, if any.
    pub fn locate(&self, x: &Real) -> Option<usize> {
        let q = x.to_rational();
        self.intervals.iter().position(|(lo, hi)| lo < &q && &q < hi)
    }
}

fn refine_interval(g: &QPoly, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    let slo = g.sign_at(&lo);
    debug_assert!(slo != 0 && slo != g.sign_at(&hi), "not an isolating interval");
    let two = Rational::from_integer(BigInt::from(2));
    while &hi - &lo > *width {
        let mut m = (&lo + &hi) / &two;
        let mut s = g.sign_at(&m);
        if s == 0 {
            // Keep endpoints off the root.
            m = split_point(g, &lo, &m);
            s = g.sign_at(&m);
            if s == slo {
                lo = m;
            } else {
                hi = m;
            }
            continue;
        }
        if s == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

/// Refinement width matching a precision: `10^-(digits + 5)`.
pub fn width_for(prec: Precision) -> Real {
    pow10_real(-(prec.digits() as i64) - 5, prec)
}

/// Simplest rational (smallest denominator) in the closed interval
/// `[lo, hi]`, by continued fractions.
pub(crate) fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // Same integer part: recurse on reciprocals of the fractional parts.
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
