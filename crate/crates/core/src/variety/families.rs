use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{monomials_of_degree, Exponents, Polynomial};
use super::Parametrization;
use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Field, Rationals, SeededSampler, SAMPLE_BOUND};

/// Number of attempts at drawing Del Pezzo base points in general position.
const DELPEZZO_ATTEMPTS: u64 = 5;

/// The degree-`deg` Veronese embedding of `P^n`: all monomials of degree
/// `deg` in `n + 1` variables, graded-lex ordered.
pub fn veronese(n: usize, deg: u32) -> Result<Parametrization> {
    if n < 1 {
        return Err(Error::InvalidInput("veronese needs n >= 1".into()));
    }
    if deg < 2 {
        return Err(Error::InvalidInput(format!(
            "veronese needs d >= 2 (d = {deg} gives a linear image)"
        )));
    }
    let maps = monomials_of_degree(n + 1, deg)
        .into_iter()
        .map(Polynomial::monomial)
        .collect();
    Parametrization::new(format!("veronese(n={n},d={deg})"), n + 1, maps)
}

/// Segre embedding `P^a × P^b → P^{(a+1)(b+1)-1}` by all products `x_i y_j`.
/// Parameters are `x0..xa` followed by `y0..yb`.
pub fn segre(a: usize, b: usize) -> Result<Parametrization> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidInput("segre needs a, b >= 1".into()));
    }
    let nvars = a + b + 2;
    let mut maps = Vec::with_capacity((a + 1) * (b + 1));
    for i in 0..=a {
        for j in 0..=b {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e[a + 1 + j] = 1;
            maps.push(Polynomial::monomial(e));
        }
    }
    Parametrization::new(format!("segre(a={a},b={b})"), nvars, maps)
}

/// Monomial map `t ↦ t^{e}` for each column `e` of the exponent matrix.
/// `rows[i][k]` is the exponent of `t_i` in the `k`-th map.
pub fn toric(rows: &[Vec<u32>]) -> Result<Parametrization> {
    let nvars = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nvars == 0 || ncols == 0 {
        return Err(Error::InvalidInput("empty exponent matrix".into()));
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput(
            "exponent matrix rows differ in length".into(),
        ));
    }
    let columns: Vec<Exponents> = (0..ncols)
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect();
    let sums: Vec<u32> = columns.iter().map(|c| c.iter().sum()).collect();
    if sums.iter().any(|&s| s != sums[0]) {
        return Err(Error::Inhomogeneous(format!(
            "exponent columns have coordinate sums {sums:?}"
        )));
    }
    let mut seen = HashSet::new();
    for (k, c) in columns.iter().enumerate() {
        if !seen.insert(c) {
            return Err(Error::InvalidInput(format!(
                "column {k} repeats an earlier column"
            )));
        }
    }
    let label = format!(
        "toric({})",
        columns
            .iter()
            .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";")
    );
    Parametrization::new(
        label,
        nvars,
        columns.into_iter().map(Polynomial::monomial).collect(),
    )
}

/// Del Pezzo surface of degree `9 - k`: plane cubics through `k` random
/// integer points of `P^2`, mapping `P^2 ⇢ P^{9-k}`.
///
/// The base points are drawn over the integers regardless of the field later
/// used for ranks, so the surface is the same in every mode.
pub fn delpezzo(k: usize, sampler: &mut SeededSampler) -> Result<Parametrization> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "delpezzo needs 1 <= k <= 6, got {k}"
        )));
    }
    let cubics = monomials_of_degree(3, 3);
    let q = Rationals;
    for _attempt in 0..DELPEZZO_ATTEMPTS {
        let points: Vec<[i64; 3]> = (0..k)
            .map(|_| {
                [
                    sampler.int_in(-SAMPLE_BOUND, SAMPLE_BOUND),
                    sampler.int_in(-SAMPLE_BOUND, SAMPLE_BOUND),
                    sampler.int_in(-SAMPLE_BOUND, SAMPLE_BOUND),
                ]
            })
            .collect();
        let conditions = DenseMatrix::from_rows(
            cubics.len(),
            points
                .iter()
                .map(|p| {
                    cubics
                        .iter()
                        .map(|e| q.from_i64((0..3).map(|i| p[i].pow(e[i])).product()))
                        .collect()
                })
                .collect(),
        );
        if q.rank(&conditions) != k {
            continue;
        }
        let basis = q.kernel_basis(&conditions);
        let maps = basis
            .row_iter()
            .map(|row| {
                let coeffs = primitive(row);
                Polynomial::new(3, coeffs.into_iter().zip(cubics.iter().cloned()))
            })
            .collect();
        return Parametrization::new(format!("delpezzo(k={k})"), 3, maps);
    }
    Err(Error::GenericityFailure(format!(
        "{k} sampled base points imposed dependent conditions on cubics {DELPEZZO_ATTEMPTS} times"
    )))
}

/// Rescales a rational vector to coprime integer entries.
fn primitive(row: &[BigRational]) -> Vec<BigRational> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter()
        .map(|v| BigRational::from_integer(if g.is_zero() { v } else { v / &g }))
        .collect()
}
