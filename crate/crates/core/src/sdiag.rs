//! Deciding whether an f-diagonal tensor is s-diagonal.
//!
//! An f-diagonal `S` is s-diagonal when it lies in the image of the
//! Kilmer-Martin mapping, equivalently when `gmap(S) = S`. The checkers here
//! come in tiers:
//!
//! * [`check_necessary`]: four cheap properties every s-diagonal tensor has.
//!   They can only reject; a pass is reported as [`Verdict::Inconclusive`].
//! * [`check_fixed_point`]: evaluates `‖gmap(S) - S‖_F` directly.
//! * [`check_general`]: third-mode symmetry, then sign and ordering
//!   conditions on the real spectrum `δ(i, k) = Σ_l ω^{(l-1)(k-1)} S(i, i, l)`.
//! * [`check_direct_p2`], [`check_direct_p3`], [`check_direct_p4`]: the same
//!   predicate written without `ω` for `p = 2, 3, 4`.
//!
//! Inequalities `x ≥ 0` are tested as `x ≥ -tol` and equalities as
//! `|x - y| ≤ tol`, so boundary points of the (closed) s-diagonal cone are
//! accepted. The phantom tube `S(min(m,n)+1, ·, ·) = 0` closes every
//! decay condition, so each checker also tests the last tube against zero.

use std::fmt;

use crate::dft::{transform_tubes, C64};
use crate::error::{Result, TensorError};
use crate::io::format_float;
use crate::kilmer_martin::gmap;
use crate::tensor::FDiagonal3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SDiagonal,
    NotSDiagonal,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SDiagonal => "SDIAGONAL",
            Verdict::NotSDiagonal => "NOT_SDIAGONAL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Necessary,
    FixedPoint,
    GeneralSpectral,
    DirectP2,
    DirectP3,
    DirectP4,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Necessary => "Necessary",
            Method::FixedPoint => "FixedPoint",
            Method::GeneralSpectral => "GeneralSpectral",
            Method::DirectP2 => "DirectP2",
            Method::DirectP3 => "DirectP3",
            Method::DirectP4 => "DirectP4",
        }
    }
}

/// Whether a condition is an inequality `x ≥ 0` or an equality `x = 0`.
/// Only affects how [`ConditionResult::ambiguous`] is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    Inequality,
    Equality,
}

/// Outcome of one condition over all tubes (and slices, where relevant).
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResult {
    pub id: &'static str,
    pub kind: ConditionKind,
    pub passed: bool,
    /// Largest violation seen, clamped at zero.
    pub worst: f64,
    /// 0-based `(i, k)` of the tightest instance; `k` is `None` for
    /// conditions on whole tubes. `None` if nothing was evaluated.
    pub at: Option<(usize, Option<usize>)>,
    /// Some instance sat close enough to the threshold that roundoff could
    /// decide it: within `10·tol` of zero for inequalities, between `tol/10`
    /// and `10·tol` for equalities.
    pub ambiguous: bool,
}

impl fmt::Display for ConditionResult {
    /// `<id> <PASS|FAIL> worst=<float> at=(i=<int>,k=<int>)`, 1-based; a
    /// zero index means "not applicable".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, k) = match self.at {
            Some((i, k)) => (i + 1, k.map_or(0, |k| k + 1)),
            None => (0, 0),
        };
        write!(
            f,
            "{} {} worst={} at=(i={},k={})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            format_float(self.worst),
            i,
            k
        )
    }
}

/// Structured verdict with per-condition diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SDiagReport {
    pub verdict: Verdict,
    pub method: Method,
    pub conditions: Vec<ConditionResult>,
    pub tolerance_used: f64,
}

impl SDiagReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionResult> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    /// True if any condition was [ambiguous](ConditionResult::ambiguous).
    pub fn is_ambiguous(&self) -> bool {
        self.conditions.iter().any(|c| c.ambiguous)
    }
}

impl fmt::Display for SDiagReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "VERDICT {} method={} tol={}",
            self.verdict.as_str(),
            self.method.as_str(),
            format_float(self.tolerance_used)
        )
    }
}

/// Accumulates one condition. Violations are signed: positive means the
/// ideal predicate is broken, and the condition fails once it exceeds `tol`.
struct Tracker {
    id: &'static str,
    kind: ConditionKind,
    tol: f64,
    worst: f64,
    at: Option<(usize, Option<usize>)>,
    ambiguous: bool,
}

impl Tracker {
    fn new(id: &'static str, kind: ConditionKind, tol: f64) -> Self {
        Self {
            id,
            kind,
            tol,
            worst: f64::NEG_INFINITY,
            at: None,
            ambiguous: false,
        }
    }

    fn inequality(id: &'static str, tol: f64) -> Self {
        Self::new(id, ConditionKind::Inequality, tol)
    }

    fn equality(id: &'static str, tol: f64) -> Self {
        Self::new(id, ConditionKind::Equality, tol)
    }

    fn observe(&mut self, violation: f64, i: usize, k: Option<usize>) {
        let violation = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        self.ambiguous |= match self.kind {
            ConditionKind::Inequality => violation.abs() <= 10.0 * self.tol,
            ConditionKind::Equality => violation >= 0.1 * self.tol && violation <= 10.0 * self.tol,
        };
        if violation > self.worst {
            self.worst = violation;
            self.at = Some((i, k));
        }
    }

    fn finish(self) -> ConditionResult {
        let worst = self.worst.max(0.0);
        ConditionResult {
            id: self.id,
            kind: self.kind,
            passed: worst <= self.tol,
            worst,
            at: self.at,
            ambiguous: self.ambiguous,
        }
    }
}

fn report(
    method: Method,
    conditions: Vec<ConditionResult>,
    tol: f64,
    pass_verdict: Verdict,
) -> SDiagReport {
    let verdict = if conditions.iter().all(|c| c.passed) {
        pass_verdict
    } else {
        Verdict::NotSDiagonal
    };
    SDiagReport {
        verdict,
        method,
        conditions,
        tolerance_used: tol,
    }
}

fn tube_norm(tube: &[f64]) -> f64 {
    tube.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `|S(i,i,k) - S(i,i,p-k+2)|` for `k = 2..=1+⌊(p-1)/2⌋`.
fn symmetry_condition(s: &FDiagonal3, id: &'static str, tol: f64) -> ConditionResult {
    let p = s.p();
    let mut t = Tracker::equality(id, tol);
    for (i, tube) in s.tubes().enumerate() {
        for k in 1..=(p - 1) / 2 {
            t.observe((tube[k] - tube[p - k]).abs(), i, Some(k));
        }
    }
    t.finish()
}

/// The four necessary conditions: tubal norm decay, first-slice decay with
/// nonnegativity, third-mode symmetry, and `S(i,i,1) ≥ |S(i,i,k)|`.
/// Never returns [`Verdict::SDiagonal`].
pub fn check_necessary(s: &FDiagonal3, tol: f64) -> SDiagReport {
    let r = s.min_dim();

    let mut norm_decay = Tracker::inequality("nec_tubal_norm_decay", tol);
    for i in 0..r.saturating_sub(1) {
        norm_decay.observe(tube_norm(s.tube(i + 1)) - tube_norm(s.tube(i)), i, None);
    }

    let mut slice_decay = Tracker::inequality("nec_first_slice_decay", tol);
    for i in 0..r {
        let next = if i + 1 < r { s.get(i + 1, 0) } else { 0.0 };
        slice_decay.observe(next - s.get(i, 0), i, Some(0));
    }

    let symmetry = symmetry_condition(s, "nec_third_mode_symmetry", tol);

    let mut leading = Tracker::inequality("nec_leading_entry_max", tol);
    for (i, tube) in s.tubes().enumerate() {
        for (k, v) in tube.iter().enumerate().skip(1) {
            leading.observe(v.abs() - tube[0], i, Some(k));
        }
    }

    let conditions = vec![
        norm_decay.finish(),
        slice_decay.finish(),
        symmetry,
        leading.finish(),
    ];
    report(Method::Necessary, conditions, tol, Verdict::Inconclusive)
}

/// `S` is s-diagonal iff `‖gmap(S) - S‖_F ≤ tol`.
pub fn check_fixed_point(s: &FDiagonal3, tol: f64) -> SDiagReport {
    let image = gmap(&s.to_tensor());
    let mut residual_sq = 0.0;
    let mut at = None;
    let mut largest = f64::NEG_INFINITY;
    for i in 0..s.min_dim() {
        for k in 0..s.p() {
            let d = (image.get(i, k) - s.get(i, k)).abs();
            residual_sq += d * d;
            if d > largest {
                largest = d;
                at = Some((i, Some(k)));
            }
        }
    }
    let mut t = Tracker::equality("fixed_point", tol);
    t.observe(residual_sq.sqrt(), 0, None);
    t.at = at;
    report(
        Method::FixedPoint,
        vec![t.finish()],
        tol,
        Verdict::SDiagonal,
    )
}

/// `δ(i, k) = Σ_l ω^{(l-1)(k-1)} S(i, i, l)` for every tube.
fn tube_spectra(s: &FDiagonal3) -> Vec<Vec<C64>> {
    let mut tubes: Vec<Vec<C64>> = s
        .tubes()
        .map(|t| t.iter().map(|&v| C64::new(v, 0.0)).collect())
        .collect();
    transform_tubes(&mut tubes, false);
    tubes
}

/// Sign and ordering conditions on the tube spectra, preceded by the
/// third-mode symmetry check that makes the spectra real.
pub fn check_general(s: &FDiagonal3, tol: f64) -> SDiagReport {
    let symmetry = symmetry_condition(s, "gen_third_mode_symmetry", tol);
    if !symmetry.passed {
        return report(
            Method::GeneralSpectral,
            vec![symmetry],
            tol,
            Verdict::SDiagonal,
        );
    }
    let delta = tube_spectra(s);
    let r = s.min_dim();
    let mut real = Tracker::equality("gen_spectrum_real", tol);
    let mut nonneg = Tracker::inequality("gen_spectrum_nonnegative", tol);
    let mut decay = Tracker::inequality("gen_spectrum_decay", tol);
    for i in 0..r {
        for k in 0..s.p() {
            let z = delta[i][k];
            real.observe(z.im.abs(), i, Some(k));
            nonneg.observe(-z.re, i, Some(k));
            let next = if i + 1 < r { delta[i + 1][k].re } else { 0.0 };
            decay.observe(next - z.re, i, Some(k));
        }
    }
    let conditions = vec![symmetry, real.finish(), nonneg.finish(), decay.finish()];
    report(Method::GeneralSpectral, conditions, tol, Verdict::SDiagonal)
}

fn require_p(s: &FDiagonal3, expected: usize) -> Result<()> {
    if s.p() != expected {
        return Err(TensorError::WrongP {
            expected,
            actual: s.p(),
        });
    }
    Ok(())
}

/// Real parts of the last tube's spectrum, written without `ω`. With the
/// phantom tube equal to zero, the decay condition at the last tube is
/// nonnegativity of these values.
fn boundary_row(s: &FDiagonal3, id: &'static str, tol: f64) -> ConditionResult {
    let i = s.min_dim() - 1;
    let t = s.tube(i);
    let values: Vec<f64> = match t.len() {
        2 => vec![t[0] + t[1], t[0] - t[1]],
        3 => {
            let pair = 0.5 * (t[1] + t[2]);
            vec![t[0] + t[1] + t[2], t[0] - pair, t[0] - pair]
        }
        4 => vec![
            t[0] + t[1] + t[2] + t[3],
            t[0] - t[2],
            t[0] - t[1] + t[2] - t[3],
            t[0] - t[2],
        ],
        p => unreachable!("boundary row is only written out for p <= 4, got {p}"),
    };
    let mut tr = Tracker::inequality(id, tol);
    for (k, v) in values.into_iter().enumerate() {
        tr.observe(-v, i, Some(k));
    }
    tr.finish()
}

/// `p = 2`: `S(i,i,1) ≥ |S(i,i,2)|` and
/// `S(i,i,1) - S(i+1,i+1,1) ≥ |S(i,i,2) - S(i+1,i+1,2)|`.
pub fn check_direct_p2(s: &FDiagonal3, tol: f64) -> Result<SDiagReport> {
    require_p(s, 2)?;
    let r = s.min_dim();
    let mut leading = Tracker::inequality("p2_leading_entry_max", tol);
    let mut decay = Tracker::inequality("p2_strong_first_slice_decay", tol);
    for i in 0..r {
        leading.observe(s.get(i, 1).abs() - s.get(i, 0), i, None);
        if i + 1 < r {
            let first = s.get(i, 0) - s.get(i + 1, 0);
            let second = s.get(i, 1) - s.get(i + 1, 1);
            decay.observe(second.abs() - first, i, None);
        }
    }
    let conditions = vec![
        leading.finish(),
        decay.finish(),
        boundary_row(s, "p2_boundary_row", tol),
    ];
    Ok(report(
        Method::DirectP2,
        conditions,
        tol,
        Verdict::SDiagonal,
    ))
}

/// `p = 3`: `S(i,i,2) = S(i,i,3)`, `S(i,i,1) ≥ max{-2S(i,i,2), S(i,i,2)}`
/// and the same inequality on consecutive differences.
pub fn check_direct_p3(s: &FDiagonal3, tol: f64) -> Result<SDiagReport> {
    require_p(s, 3)?;
    let r = s.min_dim();
    let mut symmetry = Tracker::equality("p3_third_mode_symmetry", tol);
    let mut leading = Tracker::inequality("p3_strong_leading_entry_max", tol);
    let mut decay = Tracker::inequality("p3_strong_first_slice_decay", tol);
    for i in 0..r {
        symmetry.observe((s.get(i, 1) - s.get(i, 2)).abs(), i, Some(1));
        let second = s.get(i, 1);
        leading.observe((-2.0 * second).max(second) - s.get(i, 0), i, None);
        if i + 1 < r {
            let first = s.get(i, 0) - s.get(i + 1, 0);
            let d = s.get(i, 1) - s.get(i + 1, 1);
            decay.observe((-2.0 * d).max(d) - first, i, None);
        }
    }
    let conditions = vec![
        symmetry.finish(),
        leading.finish(),
        decay.finish(),
        boundary_row(s, "p3_boundary_row", tol),
    ];
    Ok(report(
        Method::DirectP3,
        conditions,
        tol,
        Verdict::SDiagonal,
    ))
}

/// `p = 4`: `S(i,i,2) = S(i,i,4)`,
/// `S(i,i,1) + S(i,i,3) ≥ max{2|S(i,i,2)|, 2S(i,i,3)}` and the same
/// inequality on consecutive differences.
pub fn check_direct_p4(s: &FDiagonal3, tol: f64) -> Result<SDiagReport> {
    require_p(s, 4)?;
    let r = s.min_dim();
    let mut symmetry = Tracker::equality("p4_third_mode_symmetry", tol);
    let mut leading = Tracker::inequality("p4_leading_pair_bound", tol);
    let mut decay = Tracker::inequality("p4_leading_pair_decay", tol);
    let bound = |a: f64, b: f64, c: f64| (2.0 * b.abs()).max(2.0 * c) - (a + c);
    for i in 0..r {
        symmetry.observe((s.get(i, 1) - s.get(i, 3)).abs(), i, Some(1));
        leading.observe(bound(s.get(i, 0), s.get(i, 1), s.get(i, 2)), i, None);
        if i + 1 < r {
            let diff = |k: usize| s.get(i, k) - s.get(i + 1, k);
            decay.observe(bound(diff(0), diff(1), diff(2)), i, None);
        }
    }
    let conditions = vec![
        symmetry.finish(),
        leading.finish(),
        decay.finish(),
        boundary_row(s, "p4_boundary_row", tol),
    ];
    Ok(report(
        Method::DirectP4,
        conditions,
        tol,
        Verdict::SDiagonal,
    ))
}

/// Runs the necessary tier, then the direct checker for `p ≤ 4` or the
/// general spectral checker otherwise. The returned report carries the
/// conditions of both tiers.
pub fn classify(s: &FDiagonal3, tol: f64) -> SDiagReport {
    let necessary = check_necessary(s, tol);
    if necessary.verdict == Verdict::NotSDiagonal {
        return necessary;
    }
    let exact = match s.p() {
        2 => check_direct_p2(s, tol),
        3 => check_direct_p3(s, tol),
        4 => check_direct_p4(s, tol),
        _ => Ok(check_general(s, tol)),
    }
    .expect("dispatch matches p");
    let mut conditions = necessary.conditions;
    conditions.extend(exact.conditions);
    SDiagReport {
        conditions,
        ..exact
    }
}

/// `Σ_j w_j S_j` for nonnegative weights.
pub fn cone_combination(ss: &[FDiagonal3], weights: &[f64]) -> Result<FDiagonal3> {
    let first = ss.first().ok_or(TensorError::EmptyCombination)?;
    if ss.len() != weights.len() {
        return Err(TensorError::ShapeMismatch(format!(
            "{} tensors but {} weights",
            ss.len(),
            weights.len()
        )));
    }
    if let Some((index, &weight)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !w.is_finite() || **w < 0.0)
    {
        return Err(TensorError::NegativeWeight { index, weight });
    }
    if let Some(bad) = ss.iter().find(|s| s.dims() != first.dims()) {
        return Err(TensorError::ShapeMismatch(format!(
            "{:?} vs {:?}",
            first.dims(),
            bad.dims()
        )));
    }
    let mut diag = vec![0.0; first.diagonal().len()];
    for (s, w) in ss.iter().zip(weights) {
        for (acc, v) in diag.iter_mut().zip(s.diagonal()) {
            *acc += w * v;
        }
    }
    let (m, n, p) = first.dims();
    FDiagonal3::new(m, n, p, diag)
}
