//! Projective varieties presented by homogeneous polynomial maps
//! `P^n ⇢ P^m`, with point sampling and first-order jets.

mod families;
mod parse;
mod polynomial;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Field, SeededSampler};

pub use families::{delpezzo, segre, toric, veronese};
pub use parse::{from_file, from_spec, parse_exponent_matrix, parse_variety};
pub use polynomial::{grlex_cmp, monomials_of_degree, CompiledPolynomial, Exponents, Polynomial};

/// Extra sample points beyond the ambient coordinate count in
/// [`nondegeneracy_check`].
pub const NONDEGENERACY_MARGIN: usize = 25;

/// A variety `X ⊆ P^m` given as the image of `m+1` homogeneous polynomials
/// of one common degree `w` in the parameters `t0..tn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    label: String,
    param_count: usize,
    degree: u32,
    maps: Vec<Polynomial>,
    /// `jacobian[i][k] = ∂ maps[k] / ∂ t_i`
    jacobian: Vec<Vec<Polynomial>>,
}

impl Parametrization {
    /// Validates the maps (at least two, all homogeneous of one degree ≥ 1)
    /// and precomputes their partial derivatives.
    pub fn new(
        label: impl Into<String>,
        param_count: usize,
        maps: Vec<Polynomial>,
    ) -> Result<Self> {
        if param_count < 2 {
            return Err(Error::InvalidInput(
                "need at least two parameter variables".into(),
            ));
        }
        if maps.len() < 2 {
            return Err(Error::InvalidInput(
                "need at least two coordinate maps".into(),
            ));
        }
        let mut degree = None;
        for (k, p) in maps.iter().enumerate() {
            if p.nvars() != param_count {
                return Err(Error::InvalidInput(format!(
                    "map {k} uses {} variables, expected {param_count}",
                    p.nvars()
                )));
            }
            let Some(w) = p.homogeneous_degree() else {
                return Err(Error::Inhomogeneous(format!(
                    "map {k} ({p}) is zero or mixed-degree"
                )));
            };
            match degree {
                None => degree = Some(w),
                Some(d) if d != w => {
                    return Err(Error::Inhomogeneous(format!(
                        "map {k} has degree {w}, earlier maps have degree {d}"
                    )))
                }
                _ => {}
            }
        }
        let degree = degree.expect("at least two maps");
        if degree == 0 {
            return Err(Error::Inhomogeneous("maps are constant".into()));
        }
        let jacobian = (0..param_count)
            .map(|i| maps.iter().map(|p| p.derivative(i)).collect())
            .collect();
        Ok(Self {
            label: label.into(),
            param_count,
            degree,
            maps,
            jacobian,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of parameter variables, `n + 1`.
    pub fn param_count(&self) -> usize {
        self.param_count
    }

    /// `m`, where the target is `P^m`.
    pub fn ambient_dim(&self) -> usize {
        self.maps.len() - 1
    }

    /// Common degree `w` of the maps.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn maps(&self) -> &[Polynomial] {
        &self.maps
    }

    pub fn jacobian(&self) -> &[Vec<Polynomial>] {
        &self.jacobian
    }

    /// Maps and derivatives with coefficients mapped into `field`.
    pub fn evaluator<F: Field>(&self, field: &F) -> Result<Evaluator<F>> {
        let compile = |p: &Polynomial| {
            p.compile(field).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "a coefficient denominator vanishes in {}",
                    field.context()
                ))
            })
        };
        let maps = self.maps.iter().map(compile).collect::<Result<Vec<_>>>()?;
        let jacobian = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(compile).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Evaluator {
            field: field.clone(),
            param_count: self.param_count,
            max_exp: self
                .maps
                .iter()
                .map(Polynomial::max_exponent)
                .max()
                .unwrap_or(0),
            maps,
            jacobian,
        })
    }
}

/// `m`, `d = dim X` and `c = m - d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyInfo {
    pub m: usize,
    pub d: usize,
    pub c: usize,
}

impl VarietyInfo {
    /// Computes `d` with [`projective_dim`] and enforces `1 ≤ d < m`.
    pub fn compute<F: Field>(
        x: &Parametrization,
        sampler: &mut SeededSampler,
        field: &F,
    ) -> Result<Self> {
        let m = x.ambient_dim();
        let d = projective_dim(x, sampler, field)?;
        if d == 0 || d >= m {
            return Err(Error::Degenerate(format!(
                "{} has dimension {d} in P^{m}; need 1 <= d < m",
                x.label()
            )));
        }
        Ok(Self { m, d, c: m - d })
    }
}

/// A point of `X` with its parameter representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSample<E> {
    pub params: Vec<E>,
    pub coords: Vec<E>,
}

/// Value and parameter derivatives of the maps at one point. Row `i` of
/// `jacobian_rows` is `∂φ/∂t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetBlock<E> {
    pub value_row: Vec<E>,
    pub jacobian_rows: DenseMatrix<E>,
}

impl<E: Clone> JetBlock<E> {
    /// `[value_row; jacobian_rows]`, an `(n+2) × (m+1)` matrix whose row span
    /// is the affine cone over the tangent space.
    pub fn stacked(&self) -> DenseMatrix<E> {
        let mut m = DenseMatrix::empty(self.value_row.len());
        m.push_row(&self.value_row);
        m.vstack(&self.jacobian_rows)
    }
}

/// A [`Parametrization`] compiled for one field.
#[derive(Clone, Debug)]
pub struct Evaluator<F: Field> {
    field: F,
    param_count: usize,
    max_exp: u32,
    maps: Vec<CompiledPolynomial<F::Elem>>,
    jacobian: Vec<Vec<CompiledPolynomial<F::Elem>>>,
}

impl<F: Field> Evaluator<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    fn powers(&self, params: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        params
            .iter()
            .map(|t| {
                let mut pw = Vec::with_capacity(self.max_exp as usize + 1);
                pw.push(self.field.one());
                for a in 1..=self.max_exp as usize {
                    pw.push(self.field.mul(&pw[a - 1], t));
                }
                pw
            })
            .collect()
    }

    pub fn coords(&self, params: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(params.len(), self.param_count);
        let pw = self.powers(params);
        self.maps.iter().map(|p| p.eval(&self.field, &pw)).collect()
    }

    pub fn point(&self, params: Vec<F::Elem>) -> PointSample<F::Elem> {
        let coords = self.coords(&params);
        PointSample { params, coords }
    }

    pub fn jet(&self, p: &PointSample<F::Elem>) -> JetBlock<F::Elem> {
        let pw = self.powers(&p.params);
        let cols = self.maps.len();
        let entries = self
            .jacobian
            .iter()
            .flat_map(|row| row.iter().map(|d| d.eval(&self.field, &pw)))
            .collect();
        JetBlock {
            value_row: p.coords.clone(),
            jacobian_rows: DenseMatrix::new(self.param_count, cols, entries),
        }
    }

    /// `k` points with nonzero, pairwise non-proportional coordinates.
    pub fn sample_points(
        &self,
        k: usize,
        sampler: &mut SeededSampler,
    ) -> Result<Vec<PointSample<F::Elem>>> {
        let f = &self.field;
        let mut seen: HashSet<Vec<F::Elem>> = HashSet::with_capacity(k);
        let mut out = Vec::with_capacity(k);
        let mut rejected = 0usize;
        while out.len() < k {
            let params: Vec<F::Elem> = (0..self.param_count).map(|_| f.sample(sampler)).collect();
            let p = self.point(params);
            if normalized(f, &p.coords).is_some_and(|key| seen.insert(key)) {
                out.push(p);
                continue;
            }
            rejected += 1;
            if rejected > 5 * k {
                return Err(Error::GenericityFailure(format!(
                    "rejected {rejected} draws while sampling {k} points"
                )));
            }
        }
        Ok(out)
    }
}

/// Scales a vector so its first nonzero entry is 1; `None` for the zero vector.
fn normalized<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|e| !f.is_zero(e))?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|e| f.mul(e, &inv)).collect())
}

pub fn sample_points<F: Field>(
    x: &Parametrization,
    k: usize,
    sampler: &mut SeededSampler,
    field: &F,
) -> Result<Vec<PointSample<F::Elem>>> {
    if k == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    x.evaluator(field)?.sample_points(k, sampler)
}

pub fn jet_block<F: Field>(
    x: &Parametrization,
    p: &PointSample<F::Elem>,
    field: &F,
) -> Result<JetBlock<F::Elem>> {
    Ok(x.evaluator(field)?.jet(p))
}

/// `dim X`: one less than the largest rank of a stacked jet block over three
/// sampled points. Fails if no two of the three ranks agree.
pub fn projective_dim<F: Field>(
    x: &Parametrization,
    sampler: &mut SeededSampler,
    field: &F,
) -> Result<usize> {
    let ev = x.evaluator(field)?;
    let pts = ev.sample_points(3, sampler)?;
    let ranks: Vec<usize> = pts
        .iter()
        .map(|p| field.rank(&ev.jet(p).stacked()))
        .collect();
    if ranks[0] != ranks[1] && ranks[1] != ranks[2] && ranks[0] != ranks[2] {
        return Err(Error::GenericityFailure(format!(
            "jet ranks {ranks:?} of {} disagree pairwise",
            x.label()
        )));
    }
    let r = *ranks.iter().max().expect("three ranks");
    Ok(r.saturating_sub(1))
}

/// True iff the coordinates are linearly independent on `X`, i.e. their
/// evaluation at `m + 1 + margin` points has full column rank.
pub fn nondegeneracy_check<F: Field>(
    x: &Parametrization,
    sampler: &mut SeededSampler,
    field: &F,
) -> Result<bool> {
    let ev = x.evaluator(field)?;
    let cols = x.ambient_dim() + 1;
    let pts = ev.sample_points(cols + NONDEGENERACY_MARGIN, sampler)?;
    let table = DenseMatrix::from_rows(cols, pts.into_iter().map(|p| p.coords).collect());
    Ok(field.rank(&table) == cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    fn twisted_cubic() -> Parametrization {
        veronese(1, 3).unwrap()
    }

    #[test]
    fn twisted_cubic_jet_at_one_one() {
        let x = twisted_cubic();
        let f = Rationals;
        let ev = x.evaluator(&f).unwrap();
        let p = ev.point(vec![f.from_i64(1), f.from_i64(1)]);
        let jet = ev.jet(&p);
        let ints = |v: &[_]| {
            v.iter()
                .map(|q: &num_rational::BigRational| q.to_integer().try_into().unwrap())
                .collect::<Vec<i64>>()
        };
        assert_eq!(ints(&jet.value_row), vec![1, 1, 1, 1]);
        assert_eq!(ints(jet.jacobian_rows.row(0)), vec![3, 2, 1, 0]);
        assert_eq!(ints(jet.jacobian_rows.row(1)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn euler_relation_holds_exactly_on_quartic_veronese() {
        let x = veronese(2, 4).unwrap();
        let f = PrimeField::from_index(2);
        let ev = x.evaluator(&f).unwrap();
        let mut s = SeededSampler::new(3, 0);
        let w = f.from_i64(x.degree() as i64);
        for p in ev.sample_points(100, &mut s).unwrap() {
            let jet = ev.jet(&p);
            for k in 0..=x.ambient_dim() {
                let lhs = (0..x.param_count()).fold(f.zero(), |acc, i| {
                    f.add(&acc, &f.mul(&p.params[i], jet.jacobian_rows.get(i, k)))
                });
                assert_eq!(lhs, f.mul(&w, &p.coords[k]));
            }
        }
    }

    #[test]
    fn stacked_jet_rank_is_dim_plus_one() {
        let x = veronese(2, 3).unwrap();
        let f = Rationals;
        let ev = x.evaluator(&f).unwrap();
        let p = &ev.sample_points(1, &mut SeededSampler::new(9, 1)).unwrap()[0];
        assert_eq!(f.rank(&ev.jet(p).stacked()), 3);
    }

    #[test]
    fn sampled_points_are_pairwise_non_proportional() {
        let x = veronese(2, 3).unwrap();
        let f = PrimeField::from_index(0);
        let pts = sample_points(&x, 7, &mut SeededSampler::new(1, 2), &f).unwrap();
        let keys: HashSet<_> = pts
            .iter()
            .map(|p| normalized(&f, &p.coords).unwrap())
            .collect();
        assert_eq!(keys.len(), 7);
    }

    #[test]
    fn single_sample_has_nonzero_coordinates() {
        let x = segre(1, 2).unwrap();
        let pts = sample_points(&x, 1, &mut SeededSampler::new(0, 0), &Rationals).unwrap();
        assert!(pts[0].coords.iter().any(|c| !Rationals.is_zero(c)));
    }

    #[test]
    fn equal_seeds_give_identical_samples() {
        let x = veronese(3, 2).unwrap();
        let f = PrimeField::from_index(0);
        let a = sample_points(&x, 20, &mut SeededSampler::new(42, 7), &f).unwrap();
        let b = sample_points(&x, 20, &mut SeededSampler::new(42, 7), &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn projective_dim_of_small_veroneses() {
        let f = PrimeField::from_index(0);
        for n in 1..=3 {
            for d in 2..=5 {
                let x = veronese(n, d).unwrap();
                let got = projective_dim(
                    &x,
                    &mut SeededSampler::new(5, (n as u64) * 10 + d as u64),
                    &f,
                )
                .unwrap();
                assert_eq!(got, n, "veronese({n},{d})");
            }
        }
        for d in 2..=6 {
            let x = veronese(2, d).unwrap();
            assert_eq!(
                projective_dim(&x, &mut SeededSampler::new(1, 1), &f).unwrap(),
                2
            );
        }
    }

    #[test]
    fn projective_dim_of_segre_and_cubic_surface() {
        let f = PrimeField::from_index(0);
        let s = segre(2, 2).unwrap();
        assert_eq!(
            projective_dim(&s, &mut SeededSampler::new(1, 1), &f).unwrap(),
            4
        );
        let dp = delpezzo(6, &mut SeededSampler::new(1, 99)).unwrap();
        assert_eq!(
            projective_dim(&dp, &mut SeededSampler::new(1, 1), &f).unwrap(),
            2
        );
    }

    #[test]
    fn nondegeneracy_of_builders_and_repeated_coordinate() {
        let f = PrimeField::from_index(0);
        let mut s = SeededSampler::new(0, 0);
        assert!(nondegeneracy_check(&veronese(2, 3).unwrap(), &mut s, &f).unwrap());
        let dp4 = delpezzo(4, &mut SeededSampler::new(2, 2)).unwrap();
        assert!(nondegeneracy_check(&dp4, &mut s, &f).unwrap());
        let rep = Parametrization::new(
            "repeated",
            2,
            vec![
                Polynomial::monomial(vec![2, 0]),
                Polynomial::monomial(vec![2, 0]),
                Polynomial::monomial(vec![0, 2]),
            ],
        )
        .unwrap();
        assert!(!nondegeneracy_check(&rep, &mut s, &f).unwrap());
        assert!(!nondegeneracy_check(&rep, &mut s, &Rationals).unwrap());
    }

    #[test]
    fn mixed_degree_maps_are_rejected() {
        let r = Parametrization::new(
            "bad",
            2,
            vec![
                Polynomial::monomial(vec![2, 0]),
                Polynomial::monomial(vec![1, 0]),
            ],
        );
        assert!(matches!(r, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn info_requires_positive_codimension() {
        // the identity map onto P^1 has codimension zero
        let x = Parametrization::new(
            "line",
            2,
            vec![
                Polynomial::monomial(vec![1, 0]),
                Polynomial::monomial(vec![0, 1]),
            ],
        )
        .unwrap();
        let r = VarietyInfo::compute(
            &x,
            &mut SeededSampler::new(0, 0),
            &PrimeField::from_index(0),
        );
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }
}
