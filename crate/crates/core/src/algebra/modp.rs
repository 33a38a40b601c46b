//! Dense polynomials over a small prime field and distinct-degree
//! factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraError, QPoly};

/// Polynomial over F_p with ascending coefficients in `[0, p)`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|n| is_prime(*n)).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    fn new(p: u64, mut c: Vec<u64>) -> FpPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub(crate) fn from_ints(coeffs: &[BigInt], p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        let c = coeffs
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().expect("reduced residue"))
            .collect();
        FpPoly::new(p, c)
    }

    fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().enumerate().skip(1).map(|(i, a)| (i as u64 % p) * a % p).collect())
    }

    fn sub(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(p, (0..n).map(|i| (get(&self.c, i) + p - get(&o.c, i)) % p).collect())
    }

    fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = d.degree().expect("nonzero divisor");
        let inv = inv_mod(d.c[dd], p);
        let mut r = self.c.clone();
        let Some(n) = self.degree() else {
            return (FpPoly::new(p, Vec::new()), FpPoly::new(p, Vec::new()));
        };
        if n < dd {
            return (FpPoly::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let coef = r[k + dd] * inv % p;
            if coef == 0 {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * dc % p) % p;
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    fn monic(&self) -> FpPoly {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let inv = inv_mod(*l, self.p);
                FpPoly::new(self.p, self.c.iter().map(|a| a * inv % self.p).collect())
            }
        }
    }

    fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::new(self.p, vec![1]).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial,
    /// ascending.
    pub(crate) fn distinct_degree_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while let Some(deg) = f.degree() {
            if deg < 2 * d {
                if deg > 0 {
                    out.push(deg);
                }
                break;
            }
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.extend(std::iter::repeat_n(d, gd / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        out.sort_unstable();
        out
    }
}

/// Degrees of the irreducible factors of `f mod p` (distinct-degree
/// factorization), computed on the primitive integer form of `f`.
pub fn factor_degrees_mod_p(f: &QPoly, p: u64) -> Result<Vec<usize>, AlgebraError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(AlgebraError::ConstantPolynomial);
    }
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(AlgebraError::BadPrime { p, reason: "not a supported prime".into() });
    }
    let ints = f.primitive_integer();
    let lead = ints.last().expect("nonzero");
    if (lead % BigInt::from(p)).is_zero() {
        return Err(AlgebraError::BadPrime { p, reason: "divides the leading coefficient".into() });
    }
    let fp = FpPoly::from_ints(&ints, p);
    if !fp.is_squarefree() {
        return Err(AlgebraError::BadPrime { p, reason: "reduction is not squarefree".into() });
    }
    Ok(fp.distinct_degree_degrees())
}

/// `factor_degrees_mod_p` for each prime, in parallel when enabled.
pub fn factor_degree_scan(f: &QPoly, primes: &[u64]) -> Vec<(u64, Result<Vec<usize>, AlgebraError>)> {
    crate::parallel::map(primes, |p| (*p, factor_degrees_mod_p(f, *p)))
}
