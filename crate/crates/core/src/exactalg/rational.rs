use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, FieldContext};
use super::matrix::DenseMatrix;
use super::sampler::SeededSampler;

/// Integer sampling box for rational mode: draws are uniform in `[-B, B]`.
pub const SAMPLE_BOUND: i64 = 1000;

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn context(&self) -> FieldContext {
        FieldContext::ExactRational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sample(&self, sampler: &mut SeededSampler) -> BigRational {
        self.from_i64(sampler.int_in(-SAMPLE_BOUND, SAMPLE_BOUND))
    }

    fn rank(&self, m: &DenseMatrix<BigRational>) -> usize {
        let rows = m.row_iter().map(primitive_integer_row).collect();
        bareiss_rank(rows, m.cols())
    }
}

/// Scales a rational row by the lcm of its denominators and divides out the
/// content, giving a primitive integer row spanning the same line.
fn primitive_integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in &mut ints {
            *v /= &content;
        }
    }
    ints
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// After step `s` every active entry is an `(s+1)`-minor of the input, so the
/// division by the previous pivot is always exact. Columns without a pivot
/// are skipped, which is the same as running on the matrix with them deleted.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero pivot keeps intermediate entries short
        let Some(piv) = (rank..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].bits())
        else {
            continue;
        };
        a.swap(piv, rank);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = &pivot_row[col];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for k in col + 1..cols {
                let mut v = p * &row[k];
                if !lead.is_zero() {
                    v -= &lead * &pivot_row[k];
                }
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[k] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = p.clone();
        rank += 1;
    }
    rank
}
