//! Brute-force reference computations sharing no code with the kernel
//! beyond ring arithmetic.
//!
//! Characters are described by their value `ζ_ord^a` on a fixed generator
//! `g` of `(Z/l^n)^×` (odd `l`) and evaluated by a discrete-log table.

use lt_kernel::arith::{QuotCtx, QuotElem, Ring};

/// `l^n`.
pub fn pow(l: u64, n: u32) -> u64 {
    l.pow(n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least primitive root mod `l^n`, by exhaustive order computation.
pub fn primitive_root(l: u64, n: u32) -> u64 {
    let m = pow(l, n);
    let phi = m / l * (l - 1);
    (2..m)
        .find(|&g| {
            if g % l == 0 {
                return false;
            }
            let mut x = 1u64;
            for k in 1..=phi {
                x = x * g % m;
                if x == 1 {
                    return k == phi;
                }
            }
            false
        })
        .unwrap_or(1)
}

/// `log[u] = e` with `g^e ≡ u mod l^n`; `None` on non-units.
pub fn discrete_log(l: u64, n: u32, g: u64) -> Vec<Option<u64>> {
    let m = pow(l, n);
    let mut table = vec![None; m as usize];
    let mut x = 1 % m;
    for e in 0..(m / l * (l - 1)) {
        table[x as usize] = Some(e);
        x = x * g % m;
    }
    table
}

/// A character of `(Z/l^n)^×`, odd `l`: `χ(g^e) = ζ_φ^{a e}`, `φ = φ(l^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenChar {
    pub l: u64,
    pub n: u32,
    pub a: u64,
    log: Vec<Option<u64>>,
}

impl GenChar {
    pub fn new(l: u64, n: u32, a: u64) -> Self {
        let g = primitive_root(l, n);
        GenChar { l, n, a: a % Self::phi(l, n), log: discrete_log(l, n, g) }
    }

    fn phi(l: u64, n: u32) -> u64 {
        pow(l, n) / l * (l - 1)
    }

    pub fn order_of_group(&self) -> u64 {
        Self::phi(self.l, self.n)
    }

    /// Exponent of `ζ_φ` at `u`, `None` when `l | u`.
    pub fn exp(&self, u: i64) -> Option<u64> {
        let m = pow(self.l, self.n) as i64;
        self.log[u.rem_euclid(m) as usize].map(|e| e * self.a % self.order_of_group())
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0
    }

    /// Smallest `c ≤ n` with `χ` trivial on `1 + l^c`; `0` when trivial.
    pub fn conductor(&self) -> u32 {
        if self.is_trivial() {
            return 0;
        }
        let m = pow(self.l, self.n) as i64;
        (1..=self.n)
            .find(|&c| {
                let step = pow(self.l, c) as i64;
                (0..m / step).all(|k| self.exp(1 + k * step) == Some(0))
            })
            .unwrap_or(self.n)
    }

    pub fn parity(&self) -> i64 {
        match self.exp(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    /// `χ(u)` in `R[ζ_M]`, `φ | M`.
    pub fn value<R: Ring>(&self, ring: &QuotCtx<R>, u: i64) -> QuotElem<R> {
        let m = ring.cyclotomic_order().expect("cyclotomic value ring");
        match self.exp(u) {
            None => QuotElem::zero(ring),
            Some(e) => ring.zeta_pow((e * (m / self.order_of_group())) as i64),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.l, self.n), (other.l, other.n));
        GenChar::new(self.l, self.n, self.a + other.a)
    }

    pub fn inverse(&self) -> Self {
        GenChar::new(self.l, self.n, self.order_of_group() - self.a)
    }

    /// The generator image `ζ_φ^a` as an exponent of the kernel's own
    /// generator, for building the same character through the kernel API.
    pub fn image_on(&self, g: u64) -> u64 {
        self.exp(g as i64).expect("generator is a unit")
    }
}

/// `Σ_{u mod l^c, l ∤ u} χ(u) ζ_{l^c}^{sign·u}` with `c` the level passed in.
pub fn gauss_sum<R: Ring>(ring: &QuotCtx<R>, chi: &GenChar, c: u32, sign: i64) -> QuotElem<R> {
    let m = ring.cyclotomic_order().expect("cyclotomic value ring");
    let lc = pow(chi.l, c);
    let mut acc = QuotElem::zero(ring);
    for u in 0..lc as i64 {
        if u % chi.l as i64 == 0 {
            continue;
        }
        let psi = ring.zeta_pow(sign * u * (m / lc) as i64);
        acc = acc.add(&chi.value(ring, u).mul(&psi));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use lt_kernel::arith::Q;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5, 1), 2);
        assert_eq!(primitive_root(7, 1), 3);
        assert_eq!(primitive_root(3, 2), 2);
    }

    #[test]
    fn quadratic_gauss_sum_over_five() {
        let ring = QuotCtx::<Q>::cyclotomic(&(), 20);
        let chi = GenChar::new(5, 1, 2);
        let t = gauss_sum(&ring, &chi, 1, 1);
        assert_eq!(t.mul(&t), ring.embed(Q::int(5)));
        assert_eq!(chi.conductor(), 1);
        assert_eq!(GenChar::new(5, 2, 5).conductor(), 1);
        assert_eq!(GenChar::new(5, 2, 4).conductor(), 2);
    }
}
