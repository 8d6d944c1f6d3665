//! Exact dense linear algebra over the rationals and over word-sized prime
//! fields, plus the deterministic sampler every randomized step draws from.

mod elimination;
mod field;
mod matrix;
mod prime;
mod rational;
mod sampler;

pub use elimination::{apply, gauss_rank, kernel_basis_rref};
pub use field::{Field, FieldContext, PRIMES};
pub use matrix::DenseMatrix;
pub use prime::PrimeField;
pub use rational::{bareiss_rank, Rationals, SAMPLE_BOUND};
pub use sampler::{stream_id, SeededSampler};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(11, 3), 165);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(203, 200), 1_373_701);
    }
}
