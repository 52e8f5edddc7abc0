//! Dense univariate polynomials over `Z` and `Q`, coefficients stored low degree first.
//!
//! Only what the number-field layer needs: cyclotomic polynomials, the minimal
//! polynomial of `2cos(2π/N)`, and Sturm root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;
pub(crate) type RatPoly = Vec<BigRational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of integer polynomials; `divisor` must be monic.
fn div_monic(dividend: &IntPoly, divisor: &IntPoly) -> IntPoly {
    let mut rem = dividend.clone();
    let dd = divisor.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in divisor.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quot
}

/// The `N`-th cyclotomic polynomial, computed by dividing `z^N - 1` by `Φ_d` for proper divisors `d`.
pub(crate) fn cyclotomic(n: u32) -> IntPoly {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_monic(&p, &cyclotomic(d));
        }
    }
    p
}

/// `P_k` with `P_k(z + 1/z) = z^k + z^-k`, i.e. `P_0 = 2`, `P_1 = x`, `P_{k+1} = x P_k - P_{k-1}`.
pub(crate) fn chebyshev_2cos(k: usize) -> IntPoly {
    let mut prev: IntPoly = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur: IntPoly = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Minimal polynomial of `2cos(2π/N)` for `N ≥ 3`, obtained by rewriting the
/// palindromic `Φ_N(z) / z^d` in the variable `x = z + 1/z`.
pub(crate) fn min_poly_2cos(n: u32) -> IntPoly {
    let phi = cyclotomic(n);
    let d = (phi.len() - 1) / 2;
    let mut out: IntPoly = vec![BigInt::zero(); d + 1];
    out[0] += &phi[d];
    for k in 1..=d {
        let c = &phi[d + k];
        for (i, t) in chebyshev_2cos(k).iter().enumerate() {
            out[i] += c * t;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn to_rational(p: &IntPoly) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub(crate) fn eval_int(p: &IntPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn eval_rat(p: &RatPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k + j] -= t;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        let last = &chain[n - 1];
        if last.len() == 1 {
            break;
        }
        let mut r = rem(&chain[n - 2], last);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(chain: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| eval_rat(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree `p` in the half-open interval `(a, b]`.
pub(crate) fn count_roots(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(&to_rational(p));
    sign_changes(&chain, a).saturating_sub(sign_changes(&chain, b))
}
