use num_traits::One;

use super::QPoly;
use crate::numerics::Rational;

fn x_pow_minus_one(n: usize) -> QPoly {
    let mut c = vec![Rational::from_integer(0.into()); n + 1];
    c[0] = -Rational::one();
    c[n] = Rational::one();
    QPoly::new(c)
}

/// The `n`-th cyclotomic polynomial, by dividing `xⁿ − 1` by `Φ_d` for every
/// proper divisor `d` of `n`.
pub fn cyclotomic(n: usize) -> QPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: Vec<Option<QPoly>> = vec![None; n + 1];
    build(n, &mut memo)
}

fn build(n: usize, memo: &mut Vec<Option<QPoly>>) -> QPoly {
    if let Some(p) = &memo[n] {
        return p.clone();
    }
    let mut acc = x_pow_minus_one(n);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi = build(d, memo);
        acc = acc.exact_div(&phi).expect("Φ_d divides xⁿ − 1");
    }
    memo[n] = Some(acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn totient(n: usize) -> usize {
        (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1).to_string(), "x-1");
        assert_eq!(cyclotomic(2).to_string(), "x+1");
        assert_eq!(cyclotomic(4).to_string(), "x^2+1");
        assert_eq!(cyclotomic(7).to_string(), "x^6+x^5+x^4+x^3+x^2+x+1");
        assert_eq!(cyclotomic(12).to_string(), "x^4-x^2+1");
        // First cyclotomic polynomial with a coefficient outside {−1, 0, 1}.
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == Rational::from_integer((-2).into())));
    }

    #[test]
    fn product_over_divisors() {
        for n in 1..=30 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(QPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, x_pow_minus_one(n), "n = {n}");
            assert_eq!(cyclotomic(n).degree(), Some(totient(n)));
        }
    }
}
