use serde::Serialize;

use crate::exactalg::FieldContext;

/// Face dimensions for one generic `Γ` of size `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDims {
    pub j: usize,
    /// `dim Σ(Γ)`
    pub dim_sigma: usize,
    /// `dim R₂ − j(d+1)`
    #[serde(rename = "dim_P_formula")]
    pub dim_p_formula: i64,
    /// `dim R₂` minus the rank of the value and tangent conditions at `Γ`.
    #[serde(rename = "dim_B")]
    pub dim_b: i64,
    pub secant_nondefective: bool,
    /// `ε(Y_j)` of the projection away from `Γ`
    #[serde(rename = "eps_Y")]
    pub eps_y: i64,
    /// Quadrics in the ideal of `Y_j ⊆ P^{m−j}`.
    #[serde(rename = "dim_IY2")]
    pub dim_iy2: i64,
}

/// Everything computed for one variety; `gap[j-1] = g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub variety: String,
    pub m: usize,
    pub d: usize,
    pub c: usize,
    pub w: u32,
    pub dim_r2: usize,
    pub epsilon: usize,
    pub gap: Vec<i64>,
    pub faces: Vec<FaceDims>,
    pub ctx: FieldContext,
    pub seed: u64,
    pub trials: usize,
    pub margin: usize,
    pub nested: bool,
}

impl GapReport {
    /// The report with run metadata (field, seed) cleared, for comparing
    /// results across modes.
    pub fn without_metadata(&self) -> Self {
        Self {
            ctx: FieldContext::ExactRational,
            seed: 0,
            ..self.clone()
        }
    }
}
