//! Multivariate power series truncated at a total degree.
//!
//! [`BiSeries`] is the dense two-variable case used for formal group laws;
//! [`MPoly`] is a sparse `n`-variable form used where a third variable appears
//! (associativity checks).

use std::collections::BTreeMap;
use std::fmt;

use super::{Ring, TruncatedSeries};

fn tri(i: usize, j: usize) -> usize {
    let s = i + j;
    s * (s + 1) / 2 + j
}

/// `Σ_{i+j≤D} c_{ij} X^i Y^j + O((X,Y)^{D+1})`.
#[derive(Clone, PartialEq)]
pub struct BiSeries<R: Ring> {
    base: R::Ctx,
    trunc: usize,
    c: Vec<R>,
}

impl<R: Ring> BiSeries<R> {
    pub fn zero(base: &R::Ctx, trunc: usize) -> Self {
        let n = tri(0, trunc + 1);
        BiSeries { base: base.clone(), trunc, c: vec![R::zero(base); n] }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn base_ctx(&self) -> &R::Ctx {
        &self.base
    }

    pub fn coeff(&self, i: usize, j: usize) -> R {
        if i + j > self.trunc {
            return R::zero(&self.base);
        }
        self.c[tri(i, j)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        if i + j <= self.trunc {
            self.c[tri(i, j)] = v;
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &R) {
        if i + j <= self.trunc {
            let k = tri(i, j);
            self.c[k] = self.c[k].add(v);
        }
    }

    /// Iterate `(i, j, c_ij)` over nonzero coefficients in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        (0..=self.trunc)
            .flat_map(|s| (0..=s).map(move |j| (s - j, j)))
            .map(|(i, j)| (i, j, &self.c[tri(i, j)]))
            .filter(|(_, _, c)| !c.is_zero())
    }

    /// `g(X)` viewed as a bivariate series.
    pub fn from_x(g: &TruncatedSeries<R>, trunc: usize) -> Self {
        let mut out = Self::zero(g.base_ctx(), trunc);
        for (i, c) in g.coeffs().iter().enumerate().take(trunc + 1) {
            out.set(i, 0, c.clone());
        }
        out
    }

    /// `g(Y)` viewed as a bivariate series.
    pub fn from_y(g: &TruncatedSeries<R>, trunc: usize) -> Self {
        let mut out = Self::zero(g.base_ctx(), trunc);
        for (j, c) in g.coeffs().iter().enumerate().take(trunc + 1) {
            out.set(0, j, c.clone());
        }
        out
    }

    /// The symmetric swap `F(Y, X)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(&self.base, self.trunc);
        for (i, j, c) in self.terms() {
            out.set(j, i, c.clone());
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.trunc, rhs.trunc);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a.add(b)).collect();
        BiSeries { base: self.base.clone(), trunc: self.trunc, c }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.trunc, rhs.trunc);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a.sub(b)).collect();
        BiSeries { base: self.base.clone(), trunc: self.trunc, c }
    }

    pub fn scale(&self, a: &R) -> Self {
        let c = self.c.iter().map(|x| x.mul(a)).collect();
        BiSeries { base: self.base.clone(), trunc: self.trunc, c }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_y_bounded(rhs, self.trunc)
    }

    /// Product with every term of `Y`-degree above `y_max` dropped; exact in
    /// the `Y^j`, `j ≤ y_max`, coefficients.
    pub fn mul_y_bounded(&self, rhs: &Self, y_max: usize) -> Self {
        assert_eq!(self.trunc, rhs.trunc);
        let d = self.trunc;
        let rhs_terms: Vec<(usize, usize, &R)> = rhs.terms().filter(|&(_, l, _)| l <= y_max).collect();
        let mut out = Self::zero(&self.base, d);
        for (i, j, a) in self.terms().filter(|&(_, j, _)| j <= y_max) {
            for &(k, l, b) in &rhs_terms {
                if i + j + k + l > d {
                    // graded order: later terms have higher degree
                    break;
                }
                if j + l <= y_max {
                    out.add_at(i + k, j + l, &a.mul(b));
                }
            }
        }
        out
    }

    /// The polynomial `Σ_{k≤D} g_k B^k`; exact mod total degree `D+1` when `B(0,0)=0`
    /// or when `g` is a polynomial.
    pub fn compose_into(g: &TruncatedSeries<R>, b: &Self) -> Self {
        Self::compose_into_y_bounded(g, b, b.trunc)
    }

    /// [`Self::compose_into`] keeping only `Y`-degrees `≤ y_max`.
    pub fn compose_into_y_bounded(g: &TruncatedSeries<R>, b: &Self, y_max: usize) -> Self {
        let mut acc = Self::zero(&b.base, b.trunc);
        for c in g.coeffs().iter().rev() {
            acc = acc.mul_y_bounded(b, y_max);
            acc.add_at(0, 0, c);
        }
        acc
    }

    /// `∂/∂Y`; exact mod total degree `D`.
    pub fn d_dy(&self) -> Self {
        let mut out = Self::zero(&self.base, self.trunc);
        for (i, j, c) in self.terms() {
            if j > 0 {
                out.set(i, j - 1, c.mul_int(j as i64));
            }
        }
        out
    }

    /// `∂/∂X`; exact mod total degree `D`.
    pub fn d_dx(&self) -> Self {
        self.swap().d_dy().swap()
    }

    /// Restriction to `Y = 0`.
    pub fn at_y0(&self) -> TruncatedSeries<R> {
        let v = (0..=self.trunc).map(|i| self.coeff(i, 0)).collect();
        TruncatedSeries::new(&self.base, self.trunc, v)
    }

    /// Reduce to a smaller total degree.
    pub fn truncate(&self, d: usize) -> Self {
        let mut out = Self::zero(&self.base, d);
        for (i, j, c) in self.terms() {
            out.set(i, j, c.clone());
        }
        out
    }

    pub fn map<S: Ring>(&self, base: &S::Ctx, f: impl Fn(&R) -> S) -> BiSeries<S> {
        BiSeries { base: base.clone(), trunc: self.trunc, c: self.c.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    /// As a sparse series in variables `(x_a, x_b)` of an `n`-variable ring.
    pub fn to_mpoly(&self, n: usize, a: usize, b: usize) -> MPoly<R> {
        let mut out = MPoly::zero(&self.base, n, self.trunc);
        for (i, j, c) in self.terms() {
            let mut e = vec![0u32; n];
            e[a] += i as u32;
            e[b] += j as u32;
            out.add_term(e, c);
        }
        out
    }
}

impl<R: Ring> fmt::Debug for BiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})X^{i}Y^{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.trunc + 1)
    }
}

/// Sparse `n`-variable series truncated at total degree `D`.
#[derive(Clone, PartialEq)]
pub struct MPoly<R: Ring> {
    base: R::Ctx,
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> MPoly<R> {
    pub fn zero(base: &R::Ctx, nvars: usize, trunc: usize) -> Self {
        MPoly { base: base.clone(), nvars, trunc, terms: BTreeMap::new() }
    }

    /// The variable `x_k`.
    pub fn var(base: &R::Ctx, nvars: usize, trunc: usize, k: usize) -> Self {
        let mut out = Self::zero(base, nvars, trunc);
        let mut e = vec![0; nvars];
        e[k] = 1;
        out.add_term(e, &R::one(base));
        out
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: &R) {
        if c.is_zero() || e.iter().sum::<u32>() as usize > self.trunc {
            return;
        }
        let next = match self.terms.get(&e) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &c.neg());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.base, self.nvars, self.trunc);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &c1.mul(c2));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute `x_k ↦ subs[k]`; exact when every substituted series has
    /// zero constant term.
    pub fn substitute(&self, subs: &[MPoly<R>]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let target = &subs[0];
        let mut out = Self::zero(&self.base, target.nvars, target.trunc);
        let mut powers: Vec<Vec<MPoly<R>>> = subs
            .iter()
            .map(|s| {
                let mut one = Self::zero(&self.base, s.nvars, s.trunc);
                one.add_term(vec![0; s.nvars], &R::one(&self.base));
                vec![one]
            })
            .collect();
        for (e, c) in &self.terms {
            let mut term = Self::zero(&self.base, target.nvars, target.trunc);
            term.add_term(vec![0; target.nvars], c);
            for (k, &ek) in e.iter().enumerate() {
                while powers[k].len() <= ek as usize {
                    let next = powers[k].last().unwrap().mul(&subs[k]);
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][ek as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

impl<R: Ring> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}
