//! Dense univariate polynomials as coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Ring;

/// Drop trailing zero coefficients.
pub fn trim<R: Ring>(mut p: Vec<R>) -> Vec<R> {
    while p.last().is_some_and(Ring::is_zero) {
        p.pop();
    }
    p
}

pub fn add<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.add(s);
    }
    out
}

pub fn sub<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let neg: Vec<R> = b.iter().map(Ring::neg).collect();
    add(a, &neg)
}

pub fn scale<R: Ring>(a: &[R], c: &R) -> Vec<R> {
    a.iter().map(|x| x.mul(c)).collect()
}

/// Product; the context is needed when either factor is empty.
pub fn mul<R: Ring>(ctx: &R::Ctx, a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Quotient and remainder by a monic polynomial.
pub fn divrem_monic<R: Ring>(ctx: &R::Ctx, a: &[R], m: &[R]) -> (Vec<R>, Vec<R>) {
    let d = m.len() - 1;
    debug_assert!(m[d].is_one(), "divisor must be monic");
    let mut r = a.to_vec();
    if r.len() <= d {
        return (Vec::new(), r);
    }
    let mut q = vec![R::zero(ctx); r.len() - d];
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - d] = c.clone();
        for (i, mi) in m.iter().enumerate() {
            r[k - d + i] = r[k - d + i].sub(&c.mul(mi));
        }
    }
    r.truncate(d);
    (q, r)
}

/// Horner evaluation.
pub fn eval<R: Ring>(p: &[R], x: &R) -> R {
    let mut acc = x.zero_like();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Formal derivative.
pub fn derivative<R: Ring>(p: &[R]) -> Vec<R> {
    p.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect()
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_int(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // X^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = divexact_int(&num, &cyclotomic_int(d));
        }
    }
    num
}

fn divexact_int(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); r.len() - d];
    for k in (d..r.len()).rev() {
        let (c, rem) = r[k].div_rem(&m[d]);
        debug_assert!(rem.is_zero());
        for (i, mi) in m.iter().enumerate() {
            r[k - d + i] -= &c * mi;
        }
        q[k - d] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Integer coefficients of `p(1 + T)`.
pub fn taylor_shift_one(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len()];
    for (k, c) in p.iter().enumerate() {
        // (1+T)^k = Σ C(k,j) T^j
        let mut binom = BigInt::one();
        for j in 0..=k {
            out[j] += c * &binom;
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}
