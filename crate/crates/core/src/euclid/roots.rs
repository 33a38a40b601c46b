//! Real roots of low-degree polynomials with `Real` coefficients.
//!
//! The real line is cut at the critical points of the polynomial (found
//! recursively from the derivative) and at a Cauchy bound, so every cell is
//! monotone. Cells whose endpoints straddle zero are bisected and the bracket
//! is polished with safeguarded Newton steps. A critical point where the
//! polynomial itself vanishes within tolerance is a multiple root and is
//! reported once.

use crate::numerics::{pow10_real, Real};

/// Coefficients in ascending degree.
pub(crate) fn eval(coeffs: &[Real], x: &Real) -> Real {
    let mut acc = x.lift_i64(0);
    for c in coeffs.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

/// `Σ |c_i| |x|^i`, the natural scale for a residual at `x`.
pub(crate) fn magnitude(coeffs: &[Real], x: &Real) -> Real {
    let ax = x.abs();
    let mut acc = x.lift_i64(0);
    for c in coeffs.iter().rev() {
        acc = &acc * &ax + c.abs();
    }
    acc
}

fn derivative(coeffs: &[Real]) -> Vec<Real> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &c.lift_i64(i as i64))
        .collect()
}

/// Drops leading coefficients that are negligible against the largest one.
fn trim(coeffs: &[Real]) -> Vec<Real> {
    let Some(first) = coeffs.first() else {
        return Vec::new();
    };
    let tol = first.tolerance();
    let big = coeffs.iter().map(Real::abs).fold(first.lift_i64(0), Real::max);
    let mut v = coeffs.to_vec();
    while let Some(last) = v.last() {
        if last.is_zero() || last.abs() <= &tol.eps_abs * &big {
            v.pop();
        } else {
            break;
        }
    }
    v
}

fn is_root(coeffs: &[Real], x: &Real) -> bool {
    let tol = x.tolerance();
    let scale = magnitude(coeffs, x);
    eval(coeffs, x).abs() <= &tol.eps_abs * &(scale + x.lift_i64(1))
}

/// Sorted distinct real roots of a polynomial of degree at most 3.
pub(crate) fn real_roots(coeffs: &[Real]) -> Vec<Real> {
    let c = trim(coeffs);
    match c.len() {
        0 | 1 => Vec::new(),
        2 => vec![-(&c[0] / &c[1])],
        _ => roots_by_cells(&c),
    }
}

fn roots_by_cells(c: &[Real]) -> Vec<Real> {
    let n = c.len() - 1;
    let lead = c[n].abs();
    let one = c[0].lift_i64(1);
    let bound = c[..n]
        .iter()
        .map(|ci| &ci.abs() / &lead)
        .fold(c[0].lift_i64(0), Real::max)
        + &one;

    let crit = real_roots(&derivative(c));
    let mut nodes = vec![-&bound];
    nodes.extend(crit.iter().filter(|x| x.abs() < bound).cloned());
    nodes.push(bound.clone());

    let mut roots: Vec<Real> = Vec::new();
    for x in &crit {
        if is_root(c, x) {
            push_distinct(&mut roots, x.clone());
        }
    }
    for w in nodes.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let flo = eval(c, lo);
        let fhi = eval(c, hi);
        if flo.signum() * fhi.signum() < 0 {
            let r = bracketed_root(c, lo.clone(), hi.clone(), flo.signum());
            push_distinct(&mut roots, r);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}

fn push_distinct(roots: &mut Vec<Real>, r: Real) {
    let tol = r.tolerance();
    // A double root is seen both at the critical point and, through rounding
    // noise, by an adjacent cell; keep one.
    let loose = pow10_real(5, r.precision());
    let dup = roots.iter().any(|x| {
        let diff = (x - &r).abs();
        diff <= &(&tol.eps_abs * &loose) * &(x.abs().max(r.abs()) + r.lift_i64(1))
    });
    if !dup {
        roots.push(r);
    }
}

/// Root inside `[lo, hi]` where `f(lo)` has sign `slo` and `f(hi)` the
/// opposite sign.
fn bracketed_root(c: &[Real], mut lo: Real, mut hi: Real, slo: i32) -> Real {
    let dc = derivative(c);
    let two = lo.lift_i64(2);
    // Coarse bisection to roughly double precision, then Newton.
    let coarse = pow10_real(-16, lo.precision());
    let mut guard = 0;
    while (&hi - &lo).abs() > &coarse * &(lo.abs().max(hi.abs()) + lo.lift_i64(1)) && guard < 400 {
        let mid = (&lo + &hi) / &two;
        let s = eval(c, &mid).signum();
        if s == 0 {
            return mid;
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
        guard += 1;
    }
    let mut x = (&lo + &hi) / &two;
    for _ in 0..64 {
        let fx = eval(c, &x);
        if fx.is_zero() {
            break;
        }
        let dfx = eval(&dc, &x);
        let step_ok = !dfx.is_zero();
        let next = if step_ok { &x - &(&fx / &dfx) } else { x.clone() };
        let next = if !step_ok || next < lo || next > hi {
            // Newton left the bracket: fall back to a bisection step.
            let s = fx.signum();
            if s == slo {
                lo = x.clone();
            } else {
                hi = x.clone();
            }
            (&lo + &hi) / &two
        } else {
            next
        };
        if next == x {
            break;
        }
        x = next;
    }
    x
}
