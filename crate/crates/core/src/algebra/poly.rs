use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;
use crate::numerics::{Rational, Real};

/// Univariate polynomial over ℚ, coefficients in ascending degree with no
/// trailing zeros (the zero polynomial has none).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> QPoly {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> QPoly {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        QPoly::new(v)
    }

    pub fn from_i64s(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|c| Rational::from_integer(BigInt::from(*c))).collect())
    }

    pub fn from_ints(coeffs: &[BigInt]) -> QPoly {
        QPoly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// `Π (x − r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> QPoly {
        roots.iter().fold(QPoly::one(), |acc, r| {
            &acc * &QPoly::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, absent for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let mut acc = x.lift_i64(0);
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + x.lift_rational(c);
        }
        acc
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (QPoly::zero(), QPoly::zero());
        };
        if n < dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f / gcd(f, f′)`, monic. Returns the squarefree part and whether the
    /// input had repeated factors.
    pub fn squarefree_part(&self) -> (QPoly, bool) {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            (self.monic(), false)
        } else {
            (self.exact_div(&g).expect("gcd divides").monic(), true)
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient,
    /// a positive rational multiple (up to sign) of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().expect("nonzero").is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// All coefficients are integers.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Cauchy bound `1 + max|a_i| / |a_n|`: every root has smaller modulus.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.lead().expect("nonzero polynomial").abs();
        let n = self.coeffs.len() - 1;
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }

    /// Largest absolute coefficient.
    pub fn max_norm(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }
}

impl serde::Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Sparse text form, highest degree first: `4x^7+51x^6-246x^4+2160`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            if k == 0 || !unit {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = AlgebraError;

    /// Accepts sums of terms `[±][coef][*]x[^k]` or `[±]coef`, where `coef`
    /// is an integer, a fraction `p/q`, or a decimal. Whitespace is ignored
    /// and repeated powers are summed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| AlgebraError::Parse { pos, msg: msg.to_string() };
        if text.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let mut i = 0;
        while i < text.len() {
            let mut sign = Rational::one();
            if text[i] == '+' || text[i] == '-' {
                if text[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(err(i, "expected '+' or '-'"));
            }
            let start = i;
            while i < text.len() && (text[i].is_ascii_digit() || text[i] == '.' || text[i] == '/') {
                i += 1;
            }
            let coef = if i > start {
                let lit: String = text[start..i].iter().collect();
                crate::numerics::parse_rational(&lit).map_err(|_| err(start, "bad coefficient"))?
            } else {
                Rational::one()
            };
            if i < text.len() && text[i] == '*' {
                i += 1;
                if i >= text.len() || text[i] != 'x' {
                    return Err(err(i, "expected 'x' after '*'"));
                }
            }
            let mut power = 0usize;
            if i < text.len() && text[i] == 'x' {
                i += 1;
                power = 1;
                if i < text.len() && text[i] == '^' {
                    i += 1;
                    let ps = i;
                    while i < text.len() && text[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ps == i {
                        return Err(err(i, "expected exponent"));
                    }
                    let lit: String = text[ps..i].iter().collect();
                    power = lit.parse().map_err(|_| err(ps, "exponent too large"))?;
                    if power > 100_000 {
                        return Err(err(ps, "exponent too large"));
                    }
                }
            } else if i == start {
                return Err(err(i, "expected coefficient or 'x'"));
            }
            terms.push((power, sign * coef));
        }
        let deg = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (k, c) in terms {
            coeffs[k] += c;
        }
        Ok(QPoly::new(coeffs))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
