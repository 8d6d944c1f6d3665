//! Face dimensions and the gap vector.
//!
//! Every quantity is a rank of an evaluation table over generic points:
//!
//! * `dim R₂`: degree-2 ambient monomials evaluated on `X`.
//! * `dim Σ(Γ) = dim S₂`: pairwise products of the linear forms vanishing
//!   on `Γ`, evaluated on `X`.
//! * `dim P(Γ)`: `dim R₂` minus the rank of the value and tangent
//!   conditions at the points of `Γ`.
//!
//! Random evaluation can only under-estimate a rank, so each rank is
//! recomputed on fresh samples until two consecutive trials agree.

mod report;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{
    apply, binomial, DenseMatrix, Field, FieldContext, PrimeField, Rationals, SeededSampler,
};
use crate::variety::{Evaluator, Parametrization, PointSample, VarietyInfo};

pub use report::{FaceDims, GapReport};

/// Runs `$body` with `$f` bound to the field selected by `$ctx`.
macro_rules! with_field {
    ($ctx:expr, $f:ident => $body:expr) => {
        match $ctx {
            FieldContext::ExactRational => {
                let $f = &Rationals;
                $body
            }
            FieldContext::PrimeField { prime } => {
                let $f = &PrimeField::new(prime)?;
                $body
            }
        }
    };
}

/// Sampling and stability parameters shared by every rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConfig {
    /// Sample points beyond the rank upper bound of each table.
    pub margin: usize,
    /// Most trials spent waiting for two consecutive ranks to agree.
    pub max_trials: usize,
    pub ctx: FieldContext,
    pub seed: u64,
    /// Take `Γ_j` as the first `j` points of one sampled chain instead of
    /// drawing a fresh set for every `j`.
    pub nested: bool,
    /// Compute the per-`j` faces on the rayon pool.
    pub parallel: bool,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self {
            margin: 25,
            max_trials: 3,
            ctx: FieldContext::default(),
            seed: 0,
            nested: false,
            parallel: false,
        }
    }
}

impl RankConfig {
    pub fn validate(&self) -> Result<()> {
        if self.margin < 1 {
            return Err(Error::InvalidInput("margin must be at least 1".into()));
        }
        if self.max_trials < 2 {
            return Err(Error::InvalidInput("max_trials must be at least 2".into()));
        }
        Ok(())
    }
}

fn as_usize(v: u128) -> usize {
    usize::try_from(v).expect("count fits in usize")
}

fn c2(n: usize) -> usize {
    as_usize(binomial(n as u64, 2))
}

/// Degree-2 monomials `x_a x_b` (`a ≤ b`, graded-lex) of a coordinate vector.
pub fn quadratic_row<F: Field>(f: &F, x: &[F::Elem]) -> Vec<F::Elem> {
    let mut row = Vec::with_capacity(x.len() * (x.len() + 1) / 2);
    for a in 0..x.len() {
        for b in a..x.len() {
            row.push(f.mul(&x[a], &x[b]));
        }
    }
    row
}

/// Returns the first value produced twice in a row by `trial(0), trial(1), …`.
fn stable_rank(
    max_trials: usize,
    what: &str,
    mut trial: impl FnMut(u64) -> Result<usize>,
) -> Result<usize> {
    let mut prev = None;
    let mut seen = Vec::new();
    for t in 0..max_trials as u64 {
        let v = trial(t)?;
        if prev == Some(v) {
            return Ok(v);
        }
        prev = Some(v);
        seen.push(v);
    }
    Err(Error::GenericityFailure(format!(
        "{what}: no two consecutive trials agreed (ranks {seen:?})"
    )))
}

/// A parametrization compiled for one field together with its dimensions.
#[derive(Clone, Debug)]
pub struct Pipeline<'a, F: Field> {
    x: &'a Parametrization,
    ev: Evaluator<F>,
    info: VarietyInfo,
    cfg: RankConfig,
}

impl<'a, F: Field> Pipeline<'a, F> {
    pub fn new(x: &'a Parametrization, cfg: &RankConfig, field: &F) -> Result<Self> {
        cfg.validate()?;
        let ev = x.evaluator(field)?;
        let mut s = SeededSampler::for_task(cfg.seed, "projective_dim", 0, 0);
        let info = VarietyInfo::compute(x, &mut s, field)?;
        Ok(Self {
            x,
            ev,
            info,
            cfg: cfg.clone(),
        })
    }

    pub fn info(&self) -> VarietyInfo {
        self.info
    }

    pub fn field(&self) -> &F {
        self.ev.field()
    }

    pub fn evaluator(&self) -> &Evaluator<F> {
        &self.ev
    }

    /// Number of degree-`2w` monomials in the parameters; bounds `dim R₂`
    /// because pulling quadrics back along the parametrization is injective.
    fn pullback_bound(&self) -> usize {
        let n = self.x.param_count() as u64 - 1;
        as_usize(binomial(n + 2 * self.x.degree() as u64, n))
    }

    /// `dim R₂`: rank of all `x_a x_b` evaluated at generic points of `X`.
    pub fn dim_r2(&self) -> Result<usize> {
        let f = self.field();
        let cols = c2(self.info.m + 2);
        let points = cols.min(self.pullback_bound()) + self.cfg.margin;
        stable_rank(self.cfg.max_trials, "dim R2", |trial| {
            let mut s = SeededSampler::for_task(self.cfg.seed, "dim_R2", 0, trial);
            let pts = self.ev.sample_points(points, &mut s)?;
            let rows = pts.iter().map(|p| quadratic_row(f, &p.coords)).collect();
            Ok(f.rank(&DenseMatrix::from_rows(cols, rows)))
        })
    }

    /// `ε(X) = dim R₂ − (m+1)(d+1) + C(d+1, 2)` for a known `dim R₂`.
    pub fn epsilon_from(&self, dim_r2: usize) -> Result<usize> {
        let VarietyInfo { m, d, .. } = self.info;
        let eps = dim_r2 as i64 - ((m + 1) * (d + 1)) as i64 + c2(d + 1) as i64;
        usize::try_from(eps).map_err(|_| {
            Error::InternalInconsistency(format!(
                "negative quadratic deficiency {eps} (dim R2 = {dim_r2})"
            ))
        })
    }

    pub fn epsilon(&self) -> Result<usize> {
        self.epsilon_from(self.dim_r2()?)
    }

    /// Points of `Γ_j` for one trial.
    pub fn sample_gamma(&self, j: usize, trial: u64) -> Result<Vec<PointSample<F::Elem>>> {
        if j == 0 {
            return Ok(Vec::new());
        }
        if self.cfg.nested {
            let mut s = SeededSampler::for_task(self.cfg.seed, "gamma_chain", 0, trial);
            let mut chain = self.ev.sample_points(self.info.c.max(j), &mut s)?;
            chain.truncate(j);
            Ok(chain)
        } else {
            let mut s = SeededSampler::for_task(self.cfg.seed, "gamma", j as u64, trial);
            self.ev.sample_points(j, &mut s)
        }
    }

    fn coordinate_matrix(&self, gamma: &[PointSample<F::Elem>]) -> DenseMatrix<F::Elem> {
        DenseMatrix::from_rows(
            self.info.m + 1,
            gamma.iter().map(|p| p.coords.clone()).collect(),
        )
    }

    /// Basis (as rows) of the linear forms vanishing at every point of `Γ`.
    pub fn vanishing_series(&self, gamma: &[PointSample<F::Elem>]) -> Result<DenseMatrix<F::Elem>> {
        let n = self.info.m + 1;
        let v = self.field().kernel_basis(&self.coordinate_matrix(gamma));
        if v.rows() + gamma.len() != n {
            return Err(Error::GenericityFailure(format!(
                "{} points impose only {} conditions on linear forms",
                gamma.len(),
                n - v.rows()
            )));
        }
        Ok(v)
    }

    /// `dim Σ(Γ) = dim S₂`, where `S` is the coordinate ring of the
    /// projection of `X` away from `Γ`.
    ///
    /// `rank_cap`, when known, must bound `dim S₂` from above (e.g. `dim R₂`);
    /// it only sets how many sample points are drawn.
    pub fn dim_sigma(
        &self,
        gamma: &[PointSample<F::Elem>],
        rank_cap: Option<usize>,
        tag: (u64, u64),
    ) -> Result<usize> {
        let f = self.field();
        let v = self.vanishing_series(gamma)?;
        let k = v.rows();
        let pairs = c2(k + 1);
        let cap = rank_cap
            .unwrap_or(usize::MAX)
            .min(self.pullback_bound())
            .min(pairs);
        let points = cap + self.cfg.margin;
        let (j, gamma_trial) = tag;
        let task = format!("sigma_points/{gamma_trial}");
        stable_rank(self.cfg.max_trials, "dim Sigma", |trial| {
            let mut s = SeededSampler::for_task(self.cfg.seed, &task, j, trial);
            let pts = self.ev.sample_points(points, &mut s)?;
            let rows = pts
                .iter()
                .map(|p| quadratic_row(f, &apply(f, &v, &p.coords)))
                .collect();
            Ok(f.rank(&DenseMatrix::from_rows(pairs, rows)))
        })
    }

    /// Value and tangent conditions on quadrics at the points of `Γ`:
    /// per point one row `x_a x_b` and, for each parameter `t_i`, one row
    /// `∂(x_a x_b)/∂t_i = x_a ∂x_b/∂t_i + x_b ∂x_a/∂t_i`.
    pub fn conditions_matrix(&self, gamma: &[PointSample<F::Elem>]) -> DenseMatrix<F::Elem> {
        let f = self.field();
        let n = self.info.m + 1;
        let mut out = DenseMatrix::empty(c2(n + 1));
        for p in gamma {
            let jet = self.ev.jet(p);
            let x = &jet.value_row;
            out.push_row(&quadratic_row(f, x));
            for dx in jet.jacobian_rows.row_iter() {
                let mut row = Vec::with_capacity(out.cols());
                for a in 0..n {
                    for b in a..n {
                        row.push(f.add(&f.mul(&x[a], &dx[b]), &f.mul(&x[b], &dx[a])));
                    }
                }
                out.push_row(&row);
            }
        }
        out
    }

    /// `(dim B, rank of the conditions, non-defective?)` where
    /// `dim B = dim R₂ − rank` is the dimension of quadrics singular at `Γ`.
    pub fn dim_p(&self, gamma: &[PointSample<F::Elem>], dim_r2: usize) -> (i64, usize, bool) {
        let rank = self.field().rank(&self.conditions_matrix(gamma));
        let dim_b = dim_r2 as i64 - rank as i64;
        (dim_b, rank, rank == gamma.len() * (self.info.d + 1))
    }

    /// Tangent half of independence: `Γ` imposes `|Γ|` conditions on linear
    /// forms, and at every `p ∈ Γ` the differentials of the vanishing forms
    /// have rank exactly `d` on the affine tangent space (whose kernel is
    /// then just the Euler direction).
    pub fn independence_tangent_check(&self, gamma: &[PointSample<F::Elem>]) -> bool {
        let f = self.field();
        let Ok(v) = self.vanishing_series(gamma) else {
            return false;
        };
        let vt = v.transpose();
        gamma.iter().all(|p| {
            let jet = self.ev.jet(p);
            let rows = jet
                .jacobian_rows
                .row_iter()
                .map(|dx| {
                    (0..vt.cols())
                        .map(|a| {
                            dx.iter()
                                .enumerate()
                                .fold(f.zero(), |acc, (i, e)| f.add(&acc, &f.mul(e, vt.get(i, a))))
                        })
                        .collect()
                })
                .collect();
            f.rank(&DenseMatrix::from_rows(vt.cols(), rows)) == self.info.d
        })
    }

    /// `ε(Y)` and `dim I(Y)₂` for `Y ⊆ P^{m−j}` with `dim S₂ = dim_sigma`.
    pub fn projection_invariants(&self, j: usize, dim_sigma: usize) -> Result<(i64, i64)> {
        let VarietyInfo { m, d, .. } = self.info;
        let eps_y = dim_sigma as i64 - ((m + 1 - j) * (d + 1)) as i64 + c2(d + 1) as i64;
        if eps_y < 0 {
            return Err(Error::InternalInconsistency(format!(
                "negative ε(Y_{j}) = {eps_y}"
            )));
        }
        let dim_iy2 = c2(m - j + 2) as i64 - dim_sigma as i64;
        Ok((eps_y, dim_iy2))
    }

    /// `(ε(Y_j), dim I(Y_j)₂)` for the projection away from `j` generic points.
    pub fn epsilon_projection(&self, j: usize) -> Result<(i64, i64)> {
        let face = self.face(j, None)?;
        Ok((face.eps_y, face.dim_iy2))
    }

    /// All face dimensions for one generic `Γ_j`. `dim_r2` is computed when
    /// not supplied.
    pub fn face(&self, j: usize, dim_r2: Option<usize>) -> Result<FaceDims> {
        let VarietyInfo { d, c, .. } = self.info;
        if j == 0 || j > c {
            return Err(Error::InvalidInput(format!(
                "need 1 <= j <= c = {c}, got {j}"
            )));
        }
        let dim_r2 = match dim_r2 {
            Some(v) => v,
            None => self.dim_r2()?,
        };
        for trial in 0..self.cfg.max_trials as u64 {
            let gamma = self.sample_gamma(j, trial)?;
            if !self.independence_tangent_check(&gamma) {
                continue;
            }
            let dim_sigma = self.dim_sigma(&gamma, Some(dim_r2), (j as u64, trial))?;
            let (dim_b, _, nondefective) = self.dim_p(&gamma, dim_r2);
            let (eps_y, dim_iy2) = self.projection_invariants(j, dim_sigma)?;
            return Ok(FaceDims {
                j,
                dim_sigma,
                dim_p_formula: dim_r2 as i64 - (j * (d + 1)) as i64,
                dim_b,
                secant_nondefective: nondefective,
                eps_y,
                dim_iy2,
            });
        }
        Err(Error::GenericityFailure(format!(
            "no sampled Γ of size {j} passed the tangent independence check in {} trials",
            self.cfg.max_trials
        )))
    }

    /// Gap vector with both routes: `g_j = ε(X) − ε(Y_j)` must equal
    /// `dim B − dim Σ(Γ_j)` for every `j`.
    pub fn gap_vector(&self) -> Result<GapReport> {
        let VarietyInfo { m, d, c } = self.info;
        let dim_r2 = self.dim_r2()?;
        let epsilon = self.epsilon_from(dim_r2)?;
        let faces: Vec<FaceDims> = if self.cfg.parallel {
            (1..=c)
                .into_par_iter()
                .map(|j| self.face(j, Some(dim_r2)))
                .collect::<Result<_>>()?
        } else {
            (1..=c)
                .map(|j| self.face(j, Some(dim_r2)))
                .collect::<Result<_>>()?
        };
        let mut gap = Vec::with_capacity(c);
        for face in &faces {
            let by_deficiency = epsilon as i64 - face.eps_y;
            let by_faces = face.dim_b - face.dim_sigma as i64;
            if by_deficiency != by_faces {
                return Err(Error::InternalInconsistency(format!(
                    "j = {}: ε(X) − ε(Y) = {by_deficiency} but dim B − dim Σ = {by_faces}",
                    face.j
                )));
            }
            gap.push(by_deficiency);
        }
        Ok(GapReport {
            variety: self.x.label().to_string(),
            m,
            d,
            c,
            w: self.x.degree(),
            dim_r2,
            epsilon,
            gap,
            faces,
            ctx: self.field().context(),
            seed: self.cfg.seed,
            trials: self.cfg.max_trials,
            margin: self.cfg.margin,
            nested: self.cfg.nested,
        })
    }
}

/// `dim R₂` of `X` in the field selected by `cfg.ctx`.
pub fn dim_r2(x: &Parametrization, cfg: &RankConfig) -> Result<usize> {
    with_field!(cfg.ctx, f => Pipeline::new(x, cfg, f)?.dim_r2())
}

/// Quadratic deficiency `ε(X)`.
pub fn epsilon(x: &Parametrization, cfg: &RankConfig) -> Result<usize> {
    with_field!(cfg.ctx, f => Pipeline::new(x, cfg, f)?.epsilon())
}

/// `(ε(Y_j), dim I(Y_j)₂)` for a generic projection away from `j` points.
pub fn epsilon_projection(x: &Parametrization, j: usize, cfg: &RankConfig) -> Result<(i64, i64)> {
    with_field!(cfg.ctx, f => Pipeline::new(x, cfg, f)?.epsilon_projection(j))
}

/// The full gap vector report of `X`.
pub fn gap_vector(x: &Parametrization, cfg: &RankConfig) -> Result<GapReport> {
    with_field!(cfg.ctx, f => Pipeline::new(x, cfg, f)?.gap_vector())
}
