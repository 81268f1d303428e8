//! Documented `p`-adic precision loss per operation in `Z/p^N`.
//!
//! Ring operations never lose digits relative to the smaller input
//! precision; only exact divisions by integers divisible by `p` do, and each
//! costs `v_p` of the divisor. The bounds below are what each kernel
//! operation divides by.

/// `⌊log_p n⌋`, the largest `v_p(j)` for `1 ≤ j ≤ n`.
pub fn floor_log(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = p;
    while x <= n {
        k += 1;
        x *= p;
    }
    k
}

/// `stabilize` divides the translate sum by `p`.
pub const STABILIZE: u32 = 1;

/// `Θ`, both weight routes, translations and Gauss sums divide by nothing.
pub const EXACT: u32 = 0;

/// `stable_primitive` at truncation `d`: integration divides coefficient `j`
/// by `j ≤ d`, the stabilizing constant divides by `p`.
pub fn stable_primitive(p: u64, d: usize) -> u32 {
    floor_log(p, d as u64) + 1
}

/// `mellin_at_character` at conductor `p^n` averages over `p^n` translates.
pub fn character_transform(n: u32) -> u32 {
    n
}

/// Haar measure of `rep(1 + l^depth)` is `1/((l-1) l^{depth-1})`; only
/// matters when `l = p`.
pub fn coset_integral(depth: u32) -> u32 {
    depth.saturating_sub(1)
}

/// The Coleman primitive divides the `T^e` coefficient by `e + 1`.
pub fn antiderivative(p: u64, max_exponent: u64) -> u32 {
    floor_log(p, max_exponent + 1)
}

/// The split normalizer for principal and special parameters is written
/// without `1/l`.
pub const SPLIT_NORMALIZER: u32 = 0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_log_examples() {
        assert_eq!(floor_log(2, 40), 5);
        assert_eq!(floor_log(3, 40), 3);
        assert_eq!(floor_log(5, 40), 2);
        assert_eq!(floor_log(5, 4), 0);
    }
}
