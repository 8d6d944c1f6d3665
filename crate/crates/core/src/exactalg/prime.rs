use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::field::{Field, FieldContext, PRIMES};
use super::sampler::SeededSampler;
use crate::error::{Error, Result};

/// GF(p) for one of the baked-in primes below 2^62.
///
/// Elements are stored in Montgomery form (`a·2^64 mod p`), so equality and
/// zero tests work directly on the stored word. Use [`PrimeField::to_u64`]
/// to read the canonical residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_pinv: u64,
    /// `2^128 mod p`
    r2: u64,
    one: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !PRIMES.contains(&p) {
            return Err(Error::InvalidInput(format!(
                "{p} is not one of the baked-in primes"
            )));
        }
        Ok(Self::from_prime_unchecked(p))
    }

    /// Field for trial index `t`, i.e. `PRIMES[t % 10]`.
    pub fn from_index(t: usize) -> Self {
        Self::from_prime_unchecked(PRIMES[t % PRIMES.len()])
    }

    fn from_prime_unchecked(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 62);
        let mut inv: u64 = p; // correct to 3 bits for odd p
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        let mut f = Self {
            p,
            neg_pinv: inv.wrapping_neg(),
            r2,
            one: 0,
        };
        f.one = r;
        f
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    /// Canonical residue in `[0, p)`.
    pub fn to_u64(&self, e: &u64) -> u64 {
        self.redc(*e as u128)
    }

    /// Element with canonical residue `a mod p`.
    pub fn from_u64(&self, a: u64) -> u64 {
        self.to_mont(a % self.p)
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in a word")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn context(&self) -> FieldContext {
        FieldContext::PrimeField { prime: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        self.one
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.to_mont((v as i128).rem_euclid(self.p as i128) as u64)
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        self.to_mont(self.reduce_bigint(v))
    }

    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }

    #[inline(always)]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc(*a as u128 * *b as u128)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    #[inline(always)]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sample(&self, sampler: &mut SeededSampler) -> u64 {
        // uniform residues map bijectively onto uniform Montgomery words
        sampler.below(self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    #[test]
    fn rejects_unlisted_modulus() {
        assert!(PrimeField::new(101).is_err());
        assert!(PrimeField::new(PRIMES[3]).is_ok());
    }

    #[test]
    fn every_baked_in_prime_is_at_least_two_to_the_61() {
        for p in PRIMES {
            assert!((1 << 61..1 << 62).contains(&p));
        }
    }

    #[test]
    fn negative_integers_reduce_correctly() {
        let f = PrimeField::from_index(0);
        let m1 = f.from_i64(-1);
        assert_eq!(f.to_u64(&m1), f.modulus() - 1);
        assert_eq!(f.add(&m1, &f.one()), 0);
    }

    #[test]
    fn rational_with_denominator_divisible_by_p_has_no_image() {
        let f = PrimeField::from_index(1);
        let q = BigRational::new(BigInt::from(1), BigInt::from(f.modulus()));
        assert!(f.from_rational(&q).is_none());
    }

    proptest! {
        #[test]
        fn montgomery_product_matches_u128_remainder(a in any::<u64>(), b in any::<u64>(), t in 0usize..10) {
            let f = PrimeField::from_index(t);
            let p = f.modulus();
            let (a, b) = (a % p, b % p);
            let prod = f.mul(&f.from_u64(a), &f.from_u64(b));
            prop_assert_eq!(f.to_u64(&prod), naive_mul(a, b, p));
        }

        #[test]
        fn inverse_is_two_sided(a in 1u64..u64::MAX, t in 0usize..10) {
            let f = PrimeField::from_index(t);
            let x = f.from_u64(a);
            prop_assume!(x != 0);
            let inv = f.inv(&x).unwrap();
            prop_assert_eq!(f.mul(&x, &inv), f.one());
        }
    }
}
