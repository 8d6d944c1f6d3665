//! Structural checks on a finished [`GapReport`], the closed form for the
//! Veronese surfaces `ν_d(P²)`, and the conjectured formula for `ν_d(Pⁿ)`.

use serde::Serialize;

use crate::dims::GapReport;
use crate::error::{Error, Result};
use crate::exactalg::binomial;

/// A value compared by a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CheckValue {
    Int(i64),
    Vec(Vec<i64>),
    Bool(bool),
    None,
}

/// Outcome of one property check. Informational results (open conjectures)
/// never count as failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
    pub note: String,
    #[serde(skip)]
    pub informational: bool,
}

impl CheckResult {
    fn new(
        name: &str,
        passed: bool,
        lhs: CheckValue,
        rhs: CheckValue,
        note: impl Into<String>,
    ) -> Self {
        Self {
            name: name.to_string(),
            passed,
            lhs,
            rhs,
            note: note.into(),
            informational: false,
        }
    }

    fn info(mut self) -> Self {
        self.informational = true;
        self
    }

    /// Fails the run: not passed and not informational.
    pub fn is_failure(&self) -> bool {
        !self.passed && !self.informational
    }
}

fn c2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// First differences `g_{j+1} − g_j` for `j = 1..c−1`.
fn increments(gap: &[i64]) -> Vec<i64> {
    gap.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Checks the structural properties every gap vector satisfies:
/// nonnegativity, weak monotonicity, `g_c = ε`, `g_{c−1} = max(ε−1, 0)`,
/// the increment bound `g_{j+1} − g_j ≤ c − j`, equality in that bound
/// exactly when `Y_j` lies on no quadric, and persistence of maximal growth.
/// Also re-checks the two face routes and secant non-defectiveness per `j`.
pub fn verify_gap_properties(r: &GapReport) -> Vec<CheckResult> {
    let c = r.c as i64;
    let eps = r.epsilon as i64;
    let gap = &r.gap;
    let mut out = Vec::new();

    if gap.len() != r.c || r.faces.len() != r.c {
        out.push(CheckResult::new(
            "complete",
            false,
            CheckValue::Int(gap.len() as i64),
            CheckValue::Int(c),
            "report does not cover j = 1..c",
        ));
        return out;
    }

    let neg: Vec<i64> = gap.iter().copied().filter(|&g| g < 0).collect();
    out.push(CheckResult::new(
        "nonnegative",
        neg.is_empty(),
        CheckValue::Vec(gap.clone()),
        CheckValue::Int(0),
        if neg.is_empty() {
            String::new()
        } else {
            format!("negative entries {neg:?}")
        },
    ));

    let inc = increments(gap);
    let drops: Vec<usize> = inc
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < 0)
        .map(|(i, _)| i + 1)
        .collect();
    out.push(CheckResult::new(
        "weakly_increasing",
        drops.is_empty(),
        CheckValue::Vec(inc.clone()),
        CheckValue::Int(0),
        if drops.is_empty() {
            String::new()
        } else {
            format!("decreases after j = {drops:?}")
        },
    ));

    let last = *gap.last().expect("c >= 1");
    out.push(CheckResult::new(
        "last_equals_epsilon",
        last == eps,
        CheckValue::Int(last),
        CheckValue::Int(eps),
        "g_c = ε(X)",
    ));

    if r.c >= 2 {
        let pen = gap[r.c - 2];
        let want = (eps - 1).max(0);
        out.push(CheckResult::new(
            "penultimate",
            pen == want,
            CheckValue::Int(pen),
            CheckValue::Int(want),
            if eps == 0 {
                "minimal degree: g_{c-1} = 0"
            } else {
                "g_{c-1} = ε(X) − 1"
            },
        ));
    } else {
        out.push(CheckResult::new(
            "penultimate",
            true,
            CheckValue::None,
            CheckValue::None,
            "skipped: hypersurface (c = 1)",
        ));
    }

    let over: Vec<usize> = inc
        .iter()
        .enumerate()
        .filter(|(i, &d)| d > c - (*i as i64 + 1))
        .map(|(i, _)| i + 1)
        .collect();
    out.push(CheckResult::new(
        "increment_bound",
        over.is_empty(),
        CheckValue::Vec(inc.clone()),
        CheckValue::Vec((1..c).map(|j| c - j).collect()),
        if over.is_empty() {
            String::new()
        } else {
            format!("bound exceeded at j = {over:?}")
        },
    ));

    // equality in the bound at j  ⇔  I(Y_j)_2 = 0
    let maximal: Vec<bool> = inc
        .iter()
        .enumerate()
        .map(|(i, &d)| d == c - (i as i64 + 1))
        .collect();
    let no_quadrics: Vec<bool> = r.faces[..r.c - 1].iter().map(|f| f.dim_iy2 == 0).collect();
    let mismatched: Vec<usize> = maximal
        .iter()
        .zip(&no_quadrics)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i + 1)
        .collect();
    out.push(CheckResult::new(
        "increment_equality_iff_no_quadrics",
        mismatched.is_empty(),
        CheckValue::Vec(maximal.iter().map(|&b| b as i64).collect()),
        CheckValue::Vec(no_quadrics.iter().map(|&b| b as i64).collect()),
        if mismatched.is_empty() {
            String::new()
        } else {
            format!("disagree at j = {mismatched:?}")
        },
    ));

    let first_max = maximal.iter().position(|&b| b);
    let persists = first_max.is_none_or(|s| maximal[s..].iter().all(|&b| b));
    out.push(CheckResult::new(
        "maximal_growth_persists",
        persists,
        CheckValue::Int(first_max.map_or(-1, |s| s as i64 + 1)),
        CheckValue::Vec(maximal.iter().map(|&b| b as i64).collect()),
        match first_max {
            Some(s) => format!("maximal growth from j = {}", s + 1),
            None => "growth never maximal".into(),
        },
    ));

    let sum: i64 = inc.iter().sum();
    out.push(CheckResult::new(
        "increments_sum",
        sum == eps - gap[0],
        CheckValue::Int(sum),
        CheckValue::Int(eps - gap[0]),
        "Σ (g_{j+1} − g_j) = ε(X) − g_1",
    ));

    let route_bad: Vec<usize> = r
        .faces
        .iter()
        .filter(|f| eps - f.eps_y != f.dim_p_formula - f.dim_sigma as i64)
        .map(|f| f.j)
        .collect();
    out.push(CheckResult::new(
        "two_route_identity",
        route_bad.is_empty(),
        CheckValue::Vec(r.faces.iter().map(|f| eps - f.eps_y).collect()),
        CheckValue::Vec(
            r.faces
                .iter()
                .map(|f| f.dim_p_formula - f.dim_sigma as i64)
                .collect(),
        ),
        "ε(X) − ε(Y_j) = dim P(Γ) − dim Σ(Γ)",
    ));

    let defective: Vec<usize> = r
        .faces
        .iter()
        .filter(|f| !f.secant_nondefective || f.dim_b != f.dim_p_formula)
        .map(|f| f.j)
        .collect();
    out.push(CheckResult::new(
        "secant_nondefective",
        defective.is_empty(),
        CheckValue::Vec(r.faces.iter().map(|f| f.dim_b).collect()),
        CheckValue::Vec(r.faces.iter().map(|f| f.dim_p_formula).collect()),
        if defective.is_empty() {
            "rank of conditions = j(d+1) for all j".to_string()
        } else {
            format!("defective at j = {defective:?}")
        },
    ));

    out
}

/// Gap vector of `ν_d(P²)`: zero up to `j = C(d+1, 2)`, then
/// `(j − C(d+1,2))(d−1) − C(j+1−C(d+1,2), 2)`, for `j = 1..C(d+2,2)−3`.
pub fn veronese_p2_closed_form(d: u32) -> Vec<i64> {
    assert!(d >= 2, "closed form needs d >= 2");
    let d = d as i64;
    let t = c2(d + 1);
    let c = c2(d + 2) - 3;
    (1..=c)
        .map(|j| {
            if j <= t {
                0
            } else {
                (j - t) * (d - 1) - c2(j + 1 - t)
            }
        })
        .collect()
}

/// Values predicted for `ν_d(Pⁿ)` by the conjectured formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureValues {
    /// Predicted first index with a nonzero entry.
    pub j_bar: i64,
    /// Predicted `g_j` for `j = j_bar..=c`.
    pub tail: Vec<i64>,
}

/// Evaluates, in exact integer arithmetic,
/// `j̄ = ⌈C(n+d,d) − (n+1) + ½ − √((n+½)² + 2C(n+2d,2d) − 2(n+1)C(n+d,d))⌉`
/// and `g_j = C(n+2d,2d) − j(n+1) − C(C(n+d,d) − j + 1, 2)` on `j̄ ≤ j ≤ c`.
pub fn conjecture_values(n: u32, d: u32) -> ConjectureValues {
    assert!(n >= 1 && d >= 2);
    let (n64, d64) = (n as u64, d as u64);
    let big = binomial(n64 + 2 * d64, 2 * d64) as i128;
    let lin = binomial(n64 + d64, d64) as i128;
    let n = n as i128;
    // 4 × radicand = (2n+1)² + 8·C(n+2d,2d) − 8(n+1)·C(n+d,d)
    let disc = (2 * n + 1).pow(2) + 8 * big - 8 * (n + 1) * lin;
    // j̄ = ⌈(2A + 1 − √disc) / 2⌉ with A = C(n+d,d) − (n+1)
    let a2 = 2 * (lin - (n + 1)) + 1;
    let j_bar = ceil_half_minus_sqrt(a2, disc);
    let c = lin - 1 - n;
    let tail = (j_bar.max(1)..=c)
        .map(|j| (big - j * (n + 1) - (lin - j + 1) * (lin - j) / 2) as i64)
        .collect();
    ConjectureValues {
        j_bar: j_bar as i64,
        tail,
    }
}

/// `⌈(a − √disc) / 2⌉` for `disc ≥ 0`, exactly.
fn ceil_half_minus_sqrt(a: i128, disc: i128) -> i128 {
    assert!(disc >= 0);
    // smallest k with a − 2k ≤ √disc
    let satisfied = |k: i128| {
        let t = a - 2 * k;
        t <= 0 || t * t <= disc
    };
    let mut k = (a - isqrt(disc)) / 2 - 2;
    while !satisfied(k) {
        k += 1;
    }
    while satisfied(k - 1) {
        k -= 1;
    }
    k
}

fn isqrt(v: i128) -> i128 {
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Compares a Veronese report with [`conjecture_values`]: entries before
/// `j̄` must vanish and entries from `j̄` on must match the tail. Always
/// informational.
pub fn conjecture_check(r: &GapReport, n: u32, d: u32) -> CheckResult {
    let cv = conjecture_values(n, d);
    let start = cv.j_bar.max(1) as usize;
    let head_zero = r.gap.iter().take(start.saturating_sub(1)).all(|&g| g == 0);
    let computed_tail: Vec<i64> = r.gap.iter().skip(start - 1).copied().collect();
    let passed = head_zero && computed_tail == cv.tail;
    CheckResult::new(
        "conjecture_tail",
        passed,
        CheckValue::Vec(computed_tail),
        CheckValue::Vec(cv.tail),
        format!("informational; predicted j_bar = {}", cv.j_bar),
    )
    .info()
}

/// Which of the simplest gap-vector shapes a variety has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GapClass {
    /// `ε = 0`, gap identically zero.
    MinimalDegree,
    /// `ε = 1`, gap `(0, …, 0, 1)`.
    AlmostMinimalOrCubicHypersurfaceClass,
    /// `ε ≥ 2`.
    General,
}

/// Classifies by `ε`, checking that the gap has the shape that `ε` forces.
pub fn classify(r: &GapReport) -> Result<GapClass> {
    match r.epsilon {
        0 => {
            if r.gap.iter().any(|&g| g != 0) {
                return Err(Error::InternalInconsistency(format!(
                    "ε = 0 but gap = {:?}",
                    r.gap
                )));
            }
            Ok(GapClass::MinimalDegree)
        }
        1 => {
            let (last, rest) = r
                .gap
                .split_last()
                .ok_or_else(|| Error::InternalInconsistency("empty gap vector".into()))?;
            if *last != 1 || rest.iter().any(|&g| g != 0) {
                return Err(Error::InternalInconsistency(format!(
                    "ε = 1 but gap = {:?}",
                    r.gap
                )));
            }
            Ok(GapClass::AlmostMinimalOrCubicHypersurfaceClass)
        }
        _ => Ok(GapClass::General),
    }
}
