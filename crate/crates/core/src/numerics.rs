//! Scalar kernel.
//!
//! Certificates run on exact [`Rational`]s; geometry runs on [`Real`], an
//! extended-precision binary float whose working precision is expressed in
//! decimal digits. Every `Real` remembers the precision it was created with,
//! and binary operations run at the larger of the two operand precisions, so
//! a computation seeded at 100 digits stays at 100 digits without consulting
//! any global state. The process-wide default only matters for values created
//! from nothing (literals, seeds).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

const _: () = assert!(WORD_BIT_SIZE == 64, "mantissa conversion assumes 64-bit words");

pub const MIN_PRECISION: u32 = 30;
pub const DEFAULT_PRECISION: u32 = 50;
/// Environment variable consulted by the CLI for the default precision.
pub const PRECISION_ENV: &str = "ORIGAMI_PRECISION";

static DEFAULT_DIGITS: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("precision must be at least {MIN_PRECISION} digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("invalid precision value {0:?}")]
    BadPrecision(String),
    #[error("invalid number literal {0:?}")]
    BadLiteral(String),
}

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Precision(u32);

impl Precision {
    pub fn new(digits: u32) -> Result<Self, NumericsError> {
        if digits < MIN_PRECISION {
            return Err(NumericsError::PrecisionTooLow(digits));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa width: enough bits for the decimal digits plus a guard word
    /// fragment, rounded up to whole words.
    pub fn bits(self) -> usize {
        let raw = (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
        raw.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE
    }

    /// The process-wide default used for values created from literals.
    pub fn current() -> Self {
        Precision(DEFAULT_DIGITS.load(AtomicOrdering::Relaxed))
    }

    /// Sets the process-wide default. Intended to be called once at startup.
    pub fn set_default(self) {
        DEFAULT_DIGITS.store(self.0, AtomicOrdering::Relaxed);
    }

    pub fn from_env() -> Result<Option<Self>, NumericsError> {
        match std::env::var(PRECISION_ENV) {
            Ok(s) => s.parse().map(Some),
            Err(_) => Ok(None),
        }
    }

    pub fn tolerance(self) -> Tolerance {
        Tolerance::for_precision(self)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION)
    }
}

impl FromStr for Precision {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: u32 = s
            .trim()
            .parse()
            .map_err(|_| NumericsError::BadPrecision(s.to_string()))?;
        Precision::new(digits)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Extended-precision real.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: Precision,
}

impl Real {
    fn wrap(v: BigFloat, prec: Precision) -> Real {
        debug_assert!(!v.is_nan(), "NaN produced at precision {prec}");
        Real { v, prec }
    }

    pub fn zero(prec: Precision) -> Real {
        Real::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Real {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: Precision) -> Real {
        Real::wrap(BigFloat::from_i64(i, prec.bits()), prec)
    }

    pub fn from_f64(x: f64, prec: Precision) -> Real {
        Real::wrap(BigFloat::from_f64(x, prec.bits()), prec)
    }

    /// Correctly rounded conversion: numerator and denominator are first
    /// represented exactly, then divided once at the target precision.
    pub fn from_rational(q: &Rational, prec: Precision) -> Real {
        let num = bigint_to_float(q.numer());
        let den = bigint_to_float(q.denom());
        Real::wrap(num.div(&den, prec.bits(), RM), prec)
    }

    /// A real at the same precision as `self`.
    pub fn lift_i64(&self, i: i64) -> Real {
        Real::from_i64(i, self.prec)
    }

    pub fn lift_rational(&self, q: &Rational) -> Real {
        Real::from_rational(q, self.prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::for_precision(self.prec)
    }

    /// Rounds (or widens) to another precision.
    pub fn with_precision(&self, prec: Precision) -> Real {
        let mut v = self.v.clone();
        v.set_precision(prec.bits(), RM).expect("precision change");
        Real::wrap(v, prec)
    }

    /// Exact value of the binary mantissa as a rational.
    pub fn to_rational(&self) -> Rational {
        match self.v.as_raw_parts() {
            None => panic!("non-finite real"),
            Some((words, _, sign, exp, _)) => {
                let mut digits: Vec<u64> = words.to_vec();
                while digits.last() == Some(&0) {
                    digits.pop();
                }
                if digits.is_empty() {
                    return Rational::zero();
                }
                let m = BigInt::from(BigUint::new(to_u32_digits(&digits)));
                let shift = exp as i64 - (words.len() * WORD_BIT_SIZE) as i64;
                let mut q = Rational::from_integer(m);
                let two = BigInt::from(2);
                if shift >= 0 {
                    q *= Rational::from_integer(num_traits::pow(two, shift as usize));
                } else {
                    q /= Rational::from_integer(num_traits::pow(two, (-shift) as usize));
                }
                if sign == Sign::Neg {
                    -q
                } else {
                    q
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.v.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.v.abs(), self.prec)
    }

    pub fn sqr(&self) -> Real {
        self * self
    }

    pub fn sqrt(&self) -> Real {
        if self.is_negative() {
            // Rounding noise below zero.
            debug_assert!(self.tolerance().is_zero(self), "sqrt of negative {self:?}");
            return Real::zero(self.prec);
        }
        Real::wrap(self.v.sqrt(self.prec.bits(), RM), self.prec)
    }

    pub fn cbrt(&self) -> Real {
        Real::wrap(self.v.cbrt(self.prec.bits(), RM), self.prec)
    }

    pub fn powi(&self, n: u32) -> Real {
        let mut acc = self.lift_i64(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn with_consts(&self, f: impl FnOnce(&BigFloat, usize, &mut Consts) -> BigFloat) -> Real {
        let p = self.prec.bits();
        let v = CONSTS.with(|cc| f(&self.v, p, &mut cc.borrow_mut()));
        Real::wrap(v, self.prec)
    }

    pub fn sin(&self) -> Real {
        self.with_consts(|v, p, cc| v.sin(p, RM, cc))
    }

    pub fn cos(&self) -> Real {
        self.with_consts(|v, p, cc| v.cos(p, RM, cc))
    }

    /// Arcsine. Arguments that overshoot ±1 by rounding noise are clamped.
    pub fn asin(&self) -> Real {
        let x = self.clamp_unit();
        x.with_consts(|v, p, cc| v.asin(p, RM, cc))
    }

    pub fn acos(&self) -> Real {
        let x = self.clamp_unit();
        x.with_consts(|v, p, cc| v.acos(p, RM, cc))
    }

    pub fn atan(&self) -> Real {
        self.with_consts(|v, p, cc| v.atan(p, RM, cc))
    }

    fn clamp_unit(&self) -> Real {
        let one = self.lift_i64(1);
        if self > &one {
            debug_assert!(self.tolerance().near(self, &one), "asin/acos domain: {self:?}");
            one
        } else if self < &-&one {
            debug_assert!(self.tolerance().near(self, &-&one), "asin/acos domain: {self:?}");
            -one
        } else {
            self.clone()
        }
    }

    /// Angle of the vector (x, y) in (-π, π].
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec.max(x.prec);
        let pi = Real::pi(prec);
        if x.is_zero() {
            return match y.signum() {
                1 => &pi / &Real::from_i64(2, prec),
                -1 => -(&pi / &Real::from_i64(2, prec)),
                _ => Real::zero(prec),
            };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - pi
        } else {
            base + pi
        }
    }

    pub fn pi(prec: Precision) -> Real {
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(prec.bits(), RM));
        Real::wrap(v, prec)
    }

    pub fn hypot(x: &Real, y: &Real) -> Real {
        (x * x + y * y).sqrt()
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Bitwise identity of value and precision.
    pub fn identical(&self, other: &Real) -> bool {
        self.prec == other.prec && self.v.cmp(&other.v) == Some(0)
    }

    /// Fixed-point rendering with exactly `decimals` fractional digits,
    /// rounded half away from zero from the exact binary value. Negative
    /// zero is printed without a sign.
    pub fn to_fixed(&self, decimals: usize) -> String {
        format_fixed(&self.to_rational(), decimals)
    }

    /// Rendering with `digits` significant digits, trailing zeros trimmed.
    pub fn to_sig(&self, digits: usize) -> String {
        format_sig(&self.to_rational(), digits)
    }
}

fn to_u32_digits(words: &[u64]) -> Vec<u32> {
    words
        .iter()
        .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
        .collect()
}

fn bigint_to_float(i: &BigInt) -> BigFloat {
    let (sign, digits) = i.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_i64(0, WORD_BIT_SIZE);
    }
    let words: Vec<Word> = digits.iter().map(|d| *d as Word).collect();
    let bits = (words.len() * WORD_BIT_SIZE) as i32;
    let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, s, bits)
}

fn pow10(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), n)
}

/// Rounds `q` to the nearest integer, ties away from zero.
fn round_half_away(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (q.numer(), q.denom());
    let twice = n.abs() * &two + d;
    let r = twice.div_floor(&(d * &two));
    if n.is_negative() {
        -r
    } else {
        r
    }
}

pub(crate) fn format_fixed(q: &Rational, decimals: usize) -> String {
    let scaled = round_half_away(&(q * Rational::from_integer(pow10(decimals))));
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = if digits.len() <= decimals {
        format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - decimals);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if decimals > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

pub(crate) fn format_sig(q: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let approx = a.to_f64().map(|f| f.log10().floor()).unwrap_or(0.0);
    let mut e = if approx.is_finite() { approx as i64 } else { 0 };
    let ten = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(pow10(k as usize))
        } else {
            Rational::new(BigInt::one(), pow10((-k) as usize))
        }
    };
    while ten(e) > a {
        e -= 1;
    }
    while ten(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let mut n = round_half_away(&(&a * ten(shift)));
    if n == pow10(digits) {
        n /= 10;
        e += 1;
    }
    let s = n.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-5..15).contains(&e) {
        let point = e + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        out.push_str(&trim_fraction(&body));
    } else {
        let body = if s.len() > 1 { format!("{}.{}", &s[..1], &s[1..]) } else { s };
        out.push_str(&trim_fraction(&body));
        out.push_str(&format!("e{e}"));
    }
    out
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Parses `3`, `-7`, `1/3`, `2.5`, `-0.125` as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, NumericsError> {
    let bad = || NumericsError::BadLiteral(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let q = Rational::new(n, pow10(frac.len()));
    Ok(if neg { -q } else { q })
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig(self.prec.digits() as usize))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig(12))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'b Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(self.v.$method(&rhs.v, prec.bits(), RM), prec)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'b Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        self.v.inv_sign();
        self
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -self.clone()
    }
}

/// Absolute/relative tolerance pair used for every numeric comparison.
#[derive(Clone, Debug)]
pub struct Tolerance {
    pub eps_abs: Real,
    pub eps_rel: Real,
}

impl Tolerance {
    /// `eps_abs = eps_rel = 10^(10 - digits)`.
    pub fn for_precision(prec: Precision) -> Tolerance {
        let eps = pow10_real(10 - prec.digits() as i64, prec);
        Tolerance { eps_abs: eps.clone(), eps_rel: eps }
    }

    pub fn near(&self, a: &Real, b: &Real) -> bool {
        let diff = (a - b).abs();
        let scale = a.abs().max(b.abs());
        diff <= &self.eps_abs + &(&self.eps_rel * &scale)
    }

    pub fn is_zero(&self, a: &Real) -> bool {
        a.abs() <= self.eps_abs
    }
}

/// `10^k` as a real.
pub fn pow10_real(k: i64, prec: Precision) -> Real {
    let q = if k >= 0 {
        Rational::from_integer(pow10(k as usize))
    } else {
        Rational::new(BigInt::one(), pow10((-k) as usize))
    };
    Real::from_rational(&q, prec)
}

/// `|a - b| <= eps_abs + eps_rel * max(|a|, |b|)`.
pub fn real_near(a: &Real, b: &Real, tol: &Tolerance) -> bool {
    tol.near(a, b)
}

/// Conversion at the process-wide default precision.
pub fn rational_to_real(q: &Rational) -> Real {
    Real::from_rational(q, Precision::current())
}
