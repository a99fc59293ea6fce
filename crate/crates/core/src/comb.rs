//! Binomial coefficients and k-subset iteration.

use num_bigint::BigInt;
use num_traits::Zero;

/// `C(n, k)` with the combinatorial convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `C(n, k)` over signed inputs; zero whenever `n < 0`, `k < 0`, or `k > n`.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    binomial(n as u64, k as u64)
}

/// `C(n, k)` as `u64`, or `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    u64::try_from(binomial(n, k)).ok()
}

/// All strictly increasing `k`-element sequences over `0..n`, in
/// lexicographic order. `k = 0` yields the single empty set.
pub fn subsets(n: u32, k: u32) -> impl Iterator<Item = Vec<u32>> {
    itertools::Itertools::combinations(0..n, k as usize)
}
