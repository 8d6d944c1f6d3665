use gapvec_core::exactalg::{
    apply, gauss_rank, DenseMatrix, Field, PrimeField, Rationals, SeededSampler,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn to_q(rows: usize, cols: usize, v: &[i64]) -> DenseMatrix<BigRational> {
    DenseMatrix::new(
        rows,
        cols,
        v.iter().map(|&x| Rationals.from_i64(x)).collect(),
    )
}

fn to_p(f: &PrimeField, rows: usize, cols: usize, v: &[i64]) -> DenseMatrix<u64> {
    DenseMatrix::new(rows, cols, v.iter().map(|&x| f.from_i64(x)).collect())
}

/// Small integer matrices with a bias towards rank deficiency: entries are
/// drawn from a tiny range and some rows are copies of others.
fn arb_matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            prop::collection::vec(-3i64..=3, r * c),
            prop::collection::vec(any::<bool>(), r),
        )
            .prop_map(|(r, c, mut v, dup)| {
                for i in 1..r {
                    if dup[i] {
                        let (src, dst) = v.split_at_mut(i * c);
                        dst[..c].copy_from_slice(&src[(i - 1) * c..i * c]);
                    }
                }
                (r, c, v)
            })
    })
}

#[test]
fn identity_and_proportional_rows() {
    let id = to_q(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    assert_eq!(Rationals.rank(&id), 3);
    let prop = to_q(2, 2, &[1, 2, 2, 4]);
    assert_eq!(Rationals.rank(&prop), 1);
    let f = PrimeField::from_index(0);
    assert_eq!(f.rank(&to_p(&f, 2, 2, &[1, 2, 2, 4])), 1);
    assert_eq!(f.rank(&DenseMatrix::empty(5)), 0);
}

#[test]
fn kernel_of_single_linear_form() {
    let m = to_q(1, 3, &[1, 1, 1]);
    let k = Rationals.kernel_basis(&m);
    assert_eq!((k.rows(), k.cols()), (2, 3));
    assert_eq!(Rationals.rank(&k), 2);
    for row in k.row_iter() {
        assert!(apply(&Rationals, &m, row)
            .iter()
            .all(|e| Rationals.is_zero(e)));
    }
    let full = to_q(2, 2, &[1, 2, 3, 4]);
    assert_eq!(Rationals.kernel_basis(&full).rows(), 0);
}

#[test]
fn random_prime_matrix_is_full_rank_and_agrees_with_rationals() {
    // a 20×20 matrix of uniform residues is singular with probability < 20/p;
    // the same residues read as integers must have the same rank over QQ
    let f = PrimeField::from_index(0);
    let mut s = SeededSampler::new(2024, 1);
    let entries: Vec<u64> = (0..400).map(|_| s.next_element(&f)).collect();
    let m = DenseMatrix::new(20, 20, entries.clone());
    assert_eq!(f.rank(&m), 20);
    let ints: Vec<BigRational> = entries
        .iter()
        .map(|e| Rationals.from_bigint(&f.to_u64(e).into()))
        .collect();
    assert_eq!(Rationals.rank(&DenseMatrix::new(20, 20, ints)), 20);
}

#[test]
fn prime_field_draws_are_uniform_over_sixteen_buckets() {
    let f = PrimeField::from_index(0);
    let p = f.modulus();
    let draws = 10_000u64;
    let mut buckets = [0u64; 16];
    let mut s = SeededSampler::new(17, 0);
    for _ in 0..draws {
        let r = f.to_u64(&s.next_element(&f));
        buckets[((r as u128 * 16) / p as u128) as usize] += 1;
    }
    let expect = draws as f64 / 16.0;
    let sigma = (draws as f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
    for (i, &b) in buckets.iter().enumerate() {
        assert!((b as f64 - expect).abs() <= 3.0 * sigma, "bucket {i}: {b}");
    }
}

#[test]
fn rational_draws_stay_in_the_sampling_box() {
    let mut s = SeededSampler::new(3, 3);
    for _ in 0..2000 {
        let v = s.next_element(&Rationals);
        assert!(v.is_integer());
        let i: i64 = v.to_integer().try_into().unwrap();
        assert!((-1000..=1000).contains(&i));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant((r, c, v) in arb_matrix(8)) {
        let m = to_q(r, c, &v);
        prop_assert_eq!(Rationals.rank(&m), Rationals.rank(&m.transpose()));
        let f = PrimeField::from_index(3);
        let mp = to_p(&f, r, c, &v);
        prop_assert_eq!(f.rank(&mp), f.rank(&mp.transpose()));
    }

    #[test]
    fn kernel_has_complementary_dimension((r, c, v) in arb_matrix(8)) {
        let m = to_q(r, c, &v);
        let k = Rationals.kernel_basis(&m);
        prop_assert_eq!(k.rows(), c - Rationals.rank(&m));
        prop_assert_eq!(Rationals.rank(&k), k.rows());
        for row in k.row_iter() {
            prop_assert!(apply(&Rationals, &m, row).iter().all(|e| Rationals.is_zero(e)));
        }
        let f = PrimeField::from_index(5);
        let mp = to_p(&f, r, c, &v);
        let kp = f.kernel_basis(&mp);
        prop_assert_eq!(kp.rows(), c - f.rank(&mp));
        for row in kp.row_iter() {
            prop_assert!(apply(&f, &mp, row).iter().all(|e| *e == 0));
        }
    }

    #[test]
    fn prime_rank_never_exceeds_rational_rank((r, c, v) in arb_matrix(8), t in 0usize..10) {
        let f = PrimeField::from_index(t);
        let q = Rationals.rank(&to_q(r, c, &v));
        let p = f.rank(&to_p(&f, r, c, &v));
        prop_assert!(p <= q);
        // entries are tiny, so no baked-in prime divides any minor
        prop_assert_eq!(p, q);
    }

    #[test]
    fn fraction_free_matches_naive_rational_elimination(
        (r, c, v) in (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-1_000_000i64..=1_000_000, r * c))
        }),
        low_rank in 0usize..4,
    ) {
        // optionally force rank deficiency: trailing rows become row0 + row1
        let mut v = v;
        for i in 0..low_rank.min(r.saturating_sub(2)) {
            let dst = r - 1 - i;
            for k in 0..c {
                v[dst * c + k] = v[k] + v[c + k];
            }
        }
        let m = to_q(r, c, &v);
        prop_assert_eq!(Rationals.rank(&m), gauss_rank(&Rationals, &m));
    }
}
