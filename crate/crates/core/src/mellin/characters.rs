//! Finite-order characters of `(Z/l^n)^×` and the compatible additive
//! character system `ψ(c/p^n) = ζ_{p^n}^c`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::modular::{self, ipow, lcm};
use crate::arith::{QuotCtx, Ring, RootsOfUnity};
use crate::error::{ArithError, KernelError, Result};

/// Generators of `(Z/l^n)^×` with their orders.
pub fn unit_generators(l: u64, n: u32) -> Vec<(u64, u64)> {
    if n == 0 {
        return Vec::new();
    }
    let m = ipow(l, n);
    if l == 2 {
        match n {
            1 => Vec::new(),
            2 => vec![(3, 2)],
            _ => vec![(m - 1, 2), (5, m / 4)],
        }
    } else {
        let g = modular::primitive_root_mod(m).expect("odd prime powers are cyclic");
        vec![(g, m / l * (l - 1))]
    }
}

/// Exponent of the group `(Z/l^n)^×`.
pub fn unit_group_exponent(l: u64, n: u32) -> u64 {
    unit_generators(l, n).iter().fold(1, |acc, &(_, o)| lcm(acc, o))
}

/// A character of `(Z/l^n)^×` with values `χ(u) = ζ_λ^{e(u)}`, `λ` the
/// exponent of the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitChar {
    l: u64,
    level: u32,
    exponent: u64,
    /// `e(u)` for `u mod l^level`; `None` on non-units.
    table: Vec<Option<u64>>,
}

impl UnitChar {
    pub fn trivial(l: u64) -> Self {
        UnitChar { l, level: 0, exponent: 1, table: vec![Some(0)] }
    }

    /// Character sending the `i`-th generator of [`unit_generators`] to
    /// `ζ_{ord_i}^{images[i]}`.
    pub fn from_generator_images(l: u64, level: u32, images: &[u64]) -> Result<Self> {
        if !modular::is_prime(l) {
            return Err(KernelError::Malformed(format!("{l} is not prime")));
        }
        let gens = unit_generators(l, level);
        if gens.len() != images.len() {
            return Err(KernelError::Malformed(format!(
                "(Z/{l}^{level})^× has {} generators, got {} images",
                gens.len(),
                images.len()
            )));
        }
        let m = ipow(l, level);
        let lam = unit_group_exponent(l, level);
        let mut table = vec![None; m as usize];
        // walk the product of cyclic factors
        let mut elems: Vec<(u64, u64)> = vec![(1 % m.max(1), 0)];
        for (&(g, ord), &a) in gens.iter().zip(images) {
            let step = (a % ord) * (lam / ord);
            let mut next = Vec::with_capacity(elems.len() * ord as usize);
            for &(u, e) in &elems {
                let mut x = u;
                let mut ex = e;
                for _ in 0..ord {
                    next.push((x, ex));
                    x = x * g % m;
                    ex = (ex + step) % lam;
                }
            }
            elems = next;
        }
        for (u, e) in elems {
            table[u as usize] = Some(e);
        }
        if m == 1 {
            table = vec![Some(0)];
        } else if l == 2 && level == 1 {
            table[1] = Some(0);
        }
        Ok(UnitChar { l, level, exponent: lam, table })
    }

    /// Every character of `(Z/l^n)^×`.
    pub fn all_of_level(l: u64, level: u32) -> Vec<Self> {
        let gens = unit_generators(l, level);
        let mut images: Vec<Vec<u64>> = vec![Vec::new()];
        for &(_, ord) in &gens {
            images = images
                .into_iter()
                .flat_map(|v| {
                    (0..ord).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        images
            .iter()
            .map(|im| Self::from_generator_images(l, level, im).expect("images match generators"))
            .collect()
    }

    /// The quadratic character of `(Z/l)^×` (odd `l`).
    pub fn quadratic(l: u64) -> Result<Self> {
        if l == 2 {
            return Err(KernelError::Malformed("no quadratic character mod 2".into()));
        }
        Self::from_generator_images(l, 1, &[(l - 1) / 2])
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `λ`, so that every value is a `λ`-th root of unity.
    pub fn value_order(&self) -> u64 {
        self.exponent
    }

    /// `e(u)` with `χ(u) = ζ_λ^{e(u)}`; `None` when `l | u`.
    pub fn exp_at(&self, u: i64) -> Option<u64> {
        if u.rem_euclid(self.l as i64) == 0 {
            return None;
        }
        if self.level == 0 {
            return Some(0);
        }
        let m = ipow(self.l, self.level) as i64;
        self.table[u.rem_euclid(m) as usize]
    }

    /// `χ(u)` in a ring containing `λ`-th roots of unity (`0` when `l | u`).
    pub fn value<V: RootsOfUnity>(&self, ctx: &V::Ctx, u: i64) -> std::result::Result<V, ArithError> {
        match self.exp_at(u) {
            None => Ok(V::zero(ctx)),
            Some(e) => V::root_of_unity(ctx, self.exponent, e as i64),
        }
    }

    /// Exact order of the character.
    pub fn order(&self) -> u64 {
        let g = self.table.iter().flatten().fold(self.exponent, |acc, &e| modular::gcd(acc, e));
        self.exponent / g
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(|&e| e == 0)
    }

    /// Smallest `c` with `χ` trivial on `1 + l^c` (`c = 0`: trivial on all units).
    pub fn conductor(&self) -> u32 {
        if self.is_trivial() {
            return 0;
        }
        let m = ipow(self.l, self.level) as i64;
        for c in 1..=self.level {
            let step = ipow(self.l, c) as i64;
            let trivial = (0..m / step).all(|k| self.exp_at(1 + k * step) == Some(0));
            if trivial {
                return c;
            }
        }
        self.level
    }

    /// The same character viewed at a higher level.
    pub fn lift(&self, level: u32) -> Self {
        assert!(level >= self.level);
        let m = ipow(self.l, level);
        let lam = unit_group_exponent(self.l, level).max(1);
        let lam = lcm(lam, self.exponent);
        let scale = lam / self.exponent;
        let table = (0..m as i64)
            .map(|u| self.exp_at(u).map(|e| e * scale % lam))
            .collect::<Vec<_>>();
        let table = if m == 1 { vec![Some(0)] } else { table };
        UnitChar { l: self.l, level, exponent: lam, table }
    }

    /// The same character at the level of its conductor.
    pub fn primitive(&self) -> Self {
        let c = self.conductor();
        if c == self.level {
            return self.clone();
        }
        let m = ipow(self.l, c);
        let lam = lcm(unit_group_exponent(self.l, c), 1);
        // values on the smaller group have order dividing its exponent
        let scale_num = lam;
        let table: Vec<Option<u64>> = (0..m as i64)
            .map(|u| {
                self.exp_at(u).map(|e| {
                    // e/exponent = e'/lam
                    let num = e * scale_num;
                    debug_assert_eq!(num % self.exponent, 0);
                    num / self.exponent % lam
                })
            })
            .collect();
        let table = if m == 1 { vec![Some(0)] } else { table };
        UnitChar { l: self.l, level: c, exponent: lam, table }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.l, other.l);
        let level = self.level.max(other.level);
        let a = self.lift(level);
        let b = other.lift(level);
        let lam = lcm(a.exponent, b.exponent);
        let table = a
            .table
            .iter()
            .zip(&b.table)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some((x * (lam / a.exponent) + y * (lam / b.exponent)) % lam),
                _ => None,
            })
            .collect();
        UnitChar { l: self.l, level, exponent: lam, table }
    }

    pub fn inverse(&self) -> Self {
        let table = self.table.iter().map(|x| x.map(|e| (self.exponent - e) % self.exponent)).collect();
        UnitChar { table, ..self.clone() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let lam = self.exponent as i64;
        let table = self.table.iter().map(|x| x.map(|e| (e as i64 * k).rem_euclid(lam) as u64)).collect();
        UnitChar { table, ..self.clone() }
    }

    /// `χ(-1) = ±1`.
    pub fn parity(&self) -> i64 {
        match self.exp_at(-1) {
            Some(0) | None => 1,
            Some(_) => -1,
        }
    }

    /// Values on the generators as `ζ_λ` exponents (JSON form).
    pub fn to_json(&self) -> CharJson {
        let mut values = BTreeMap::new();
        for (g, _) in unit_generators(self.l, self.level) {
            let e = self.exp_at(g as i64).unwrap_or(0);
            values.insert(g.to_string(), format!("ζ^{e}"));
        }
        CharJson { p: self.l, n: self.level, values }
    }

    pub fn from_json(j: &CharJson) -> Result<Self> {
        let gens = unit_generators(j.p, j.n);
        let lam = unit_group_exponent(j.p, j.n);
        let mut images = Vec::new();
        for (g, ord) in gens {
            let raw = j
                .values
                .get(&g.to_string())
                .ok_or_else(|| KernelError::Malformed(format!("missing value on generator {g}")))?;
            let e = parse_root(raw, lam)?;
            // ζ_λ^e must have order dividing ord
            if (e * ord) % lam != 0 {
                return Err(KernelError::Malformed(format!("χ({g}) = {raw} has order not dividing {ord}")));
            }
            images.push(e * ord / lam);
        }
        Self::from_generator_images(j.p, j.n, &images)
    }
}

fn parse_root(s: &str, lam: u64) -> Result<u64> {
    let s = s.trim();
    let bad = || KernelError::Malformed(format!("unrecognized root of unity {s:?}"));
    if let Some(e) = s.strip_prefix("ζ^").or_else(|| s.strip_prefix("zeta^")) {
        let e: i64 = e.parse().map_err(|_| bad())?;
        return Ok(e.rem_euclid(lam as i64) as u64);
    }
    match s {
        "1" => Ok(0),
        "-1" if lam % 2 == 0 => Ok(lam / 2),
        _ => Err(bad()),
    }
}

/// `{"p":…, "n":…, "values":{"g":"ζ^j"}}`, `ζ` a primitive `λ(p^n)`-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharJson {
    pub p: u64,
    pub n: u32,
    pub values: BTreeMap<String, String>,
}

/// Compatible primitive roots `ζ_{p^n}` for `n ≤ n_max`; `sign = -1` gives `ψ^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiSystem {
    pub p: u64,
    pub n_max: u32,
    pub sign: i64,
}

impl PsiSystem {
    pub fn new(p: u64, n_max: u32) -> Self {
        PsiSystem { p, n_max, sign: 1 }
    }

    pub fn inverse(&self) -> Self {
        PsiSystem { sign: -self.sign, ..*self }
    }

    pub fn check_level(&self, n: u32) -> Result<()> {
        if n > self.n_max {
            return Err(KernelError::LevelExceeded { requested: n, available: self.n_max });
        }
        Ok(())
    }

    /// `ψ(c / p^n) = ζ_{p^n}^{±c}`.
    pub fn value<V: RootsOfUnity>(&self, ctx: &V::Ctx, c: i64, n: u32) -> Result<V> {
        self.check_level(n)?;
        Ok(V::root_of_unity(ctx, ipow(self.p, n), self.sign * c)?)
    }

    /// `ζ_{p^{n+1}}^p = ζ_{p^n}` for all `n < n_max`, checked in `ring`.
    pub fn check_compatibility<R: RootsOfUnity>(&self, ring: &QuotCtx<R>) -> Result<bool> {
        use crate::arith::QuotElem;
        for n in 0..self.n_max {
            let hi: QuotElem<R> = self.value(ring, 1, n + 1)?;
            let lo: QuotElem<R> = self.value(ring, 1, n)?;
            if hi.pow(self.p) != lo {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Order `M` of a cyclotomic ring holding both `ψ` at level `n` and the
/// values of characters of `(Z/p^n)^×`.
pub fn value_ring_order(p: u64, n: u32) -> u64 {
    lcm(ipow(p, n), unit_group_exponent(p, n)).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    #[test]
    fn groups_and_counts() {
        assert_eq!(unit_generators(9, 0), vec![]);
        assert_eq!(UnitChar::all_of_level(3, 2).len(), 6);
        assert_eq!(UnitChar::all_of_level(5, 2).len(), 20);
        assert_eq!(UnitChar::all_of_level(2, 4).len(), 8);
        assert_eq!(UnitChar::all_of_level(2, 1).len(), 1);
        for chi in UnitChar::all_of_level(2, 4) {
            for a in [1i64, 3, 5, 7, 9, 11, 13, 15] {
                for b in [1i64, 3, 5, 7] {
                    let lam = chi.value_order();
                    assert_eq!(
                        (chi.exp_at(a).unwrap() + chi.exp_at(b).unwrap()) % lam,
                        chi.exp_at(a * b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn conductors() {
        let all = UnitChar::all_of_level(3, 2);
        let conds: Vec<u32> = all.iter().map(UnitChar::conductor).collect();
        assert_eq!(conds.iter().filter(|&&c| c == 0).count(), 1);
        assert_eq!(conds.iter().filter(|&&c| c == 1).count(), 1);
        assert_eq!(conds.iter().filter(|&&c| c == 2).count(), 4);
        let q = UnitChar::quadratic(3).unwrap();
        assert_eq!(q.conductor(), 1);
        assert_eq!(q.parity(), -1);
        assert_eq!(UnitChar::quadratic(5).unwrap().parity(), 1);
        let lifted = q.lift(2);
        assert_eq!(lifted.conductor(), 1);
        assert_eq!(lifted.primitive(), q);
        assert!(q.mul(&q).is_trivial());
        assert_eq!(q.value::<Q>(&(), 2).unwrap(), Q::int(-1));
        assert_eq!(q.value::<Q>(&(), 3).unwrap(), Q::int(0));
    }

    #[test]
    fn json_roundtrip() {
        for chi in UnitChar::all_of_level(5, 2) {
            assert_eq!(UnitChar::from_json(&chi.to_json()).unwrap(), chi);
        }
    }

    #[test]
    fn psi_compatibility() {
        let ring = QuotCtx::<Q>::cyclotomic(&(), value_ring_order(5, 2));
        assert!(PsiSystem::new(5, 2).check_compatibility(&ring).unwrap());
        assert!(matches!(
            PsiSystem::new(5, 1).value::<Q>(&(), 1, 2),
            Err(KernelError::LevelExceeded { .. })
        ));
    }
}
