use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::elimination;
use super::matrix::DenseMatrix;
use super::sampler::SeededSampler;

/// Ten primes just below 2^62, largest first. Trial index `t` uses `PRIMES[t % 10]`.
pub const PRIMES: [u64; 10] = [
    4_611_686_018_427_387_847, // 2^62 - 57
    4_611_686_018_427_387_817, // 2^62 - 87
    4_611_686_018_427_387_787, // 2^62 - 117
    4_611_686_018_427_387_761, // 2^62 - 143
    4_611_686_018_427_387_751, // 2^62 - 153
    4_611_686_018_427_387_737, // 2^62 - 167
    4_611_686_018_427_387_733, // 2^62 - 171
    4_611_686_018_427_387_709, // 2^62 - 195
    4_611_686_018_427_387_701, // 2^62 - 203
    4_611_686_018_427_387_631, // 2^62 - 273
];

/// Which arithmetic a computation runs in. Fixed for the lifetime of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldContext {
    ExactRational,
    PrimeField { prime: u64 },
}

impl FieldContext {
    /// Prime-field context for trial index `t`.
    pub fn prime_field(trial: usize) -> Self {
        FieldContext::PrimeField {
            prime: PRIMES[trial % PRIMES.len()],
        }
    }

    /// Short mode tag used in reports: `qq` or `fp`.
    pub fn mode(&self) -> &'static str {
        match self {
            FieldContext::ExactRational => "qq",
            FieldContext::PrimeField { .. } => "fp",
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            FieldContext::ExactRational => None,
            FieldContext::PrimeField { prime } => Some(prime),
        }
    }
}

impl Default for FieldContext {
    fn default() -> Self {
        FieldContext::prime_field(0)
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::ExactRational => write!(f, "QQ"),
            FieldContext::PrimeField { prime } => write!(f, "GF({prime})"),
        }
    }
}

/// Arithmetic of an exact field. Elements are plain values; the field object
/// carries whatever context (modulus, Montgomery constants) they need.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn context(&self) -> FieldContext;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `None` when the denominator vanishes in this field.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// One draw from the sampler: a uniform integer in `[-1000, 1000]` over
    /// the rationals, a uniform element over a prime field.
    fn sample(&self, sampler: &mut SeededSampler) -> Self::Elem;

    fn rank(&self, m: &DenseMatrix<Self::Elem>) -> usize {
        elimination::gauss_rank(self, m)
    }

    /// Rows form a basis of the right null space of `m`.
    fn kernel_basis(&self, m: &DenseMatrix<Self::Elem>) -> DenseMatrix<Self::Elem> {
        elimination::kernel_basis_rref(self, m)
    }

    fn pow(&self, base: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }
}
