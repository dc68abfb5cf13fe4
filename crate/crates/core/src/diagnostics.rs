//! Dependence coefficients between finite discrete variables and a checker
//! for the assumption systems of the consistency and normality theorems.

use crate::linalg::{self, Matrix};
use crate::model::DesignSpec;
use crate::process::{ErrorMatrixSpec, ErrorProcessSpec, MixingClass, ProcessKind};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest support handled by the exhaustive event search.
pub const MAX_SUPPORT: usize = 12;
const MASS_TOL: f64 = 1e-12;

/// Attached verbatim to every report that quotes [`empirical_alpha_lag`].
pub const EMPIRICAL_ALPHA_CAVEAT: &str = "lower bound on the alpha coefficient between single coordinates \
at this lag after quantile binning; not an estimate of the full-filtration alpha(n)";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("support too large: {k}x{l} exceeds {MAX_SUPPORT}x{MAX_SUPPORT}")]
    SupportTooLarge { k: usize, l: usize },
    #[error("invalid joint pmf: {0}")]
    InvalidJoint(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("missing metadata: {0}")]
    MissingMetadata(String),
}

/// Joint law of two discrete variables `U` (rows) and `V` (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteJoint {
    pub support_u: Vec<String>,
    pub support_v: Vec<String>,
    pub pmf: Matrix,
}

impl FiniteJoint {
    /// Joint with labels `0..k` and `0..l`.
    pub fn new(pmf: Matrix) -> Result<Self, DiagnosticsError> {
        let support_u = (0..pmf.rows()).map(|i| i.to_string()).collect();
        let support_v = (0..pmf.cols()).map(|j| j.to_string()).collect();
        Self::with_labels(support_u, support_v, pmf)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DiagnosticsError> {
        let pmf = Matrix::from_rows(rows).map_err(|e| DiagnosticsError::InvalidJoint(e.to_string()))?;
        Self::new(pmf)
    }

    pub fn with_labels(support_u: Vec<String>, support_v: Vec<String>, pmf: Matrix) -> Result<Self, DiagnosticsError> {
        let (k, l) = (pmf.rows(), pmf.cols());
        if k > MAX_SUPPORT || l > MAX_SUPPORT {
            return Err(DiagnosticsError::SupportTooLarge { k, l });
        }
        if support_u.len() != k || support_v.len() != l {
            return Err(DiagnosticsError::InvalidJoint("label count does not match pmf shape".into()));
        }
        if let Some(bad) = pmf.as_slice().iter().find(|p| **p < 0.0) {
            return Err(DiagnosticsError::InvalidJoint(format!("negative probability {bad}")));
        }
        let mass: f64 = pmf.as_slice().iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(DiagnosticsError::InvalidJoint(format!("total mass {mass} differs from 1")));
        }
        Ok(FiniteJoint { support_u, support_v, pmf })
    }

    /// Product of two marginals.
    pub fn independent(pu: &[f64], pv: &[f64]) -> Result<Self, DiagnosticsError> {
        let data = pu.iter().flat_map(|a| pv.iter().map(move |b| a * b)).collect();
        let pmf = Matrix::new(pu.len(), pv.len(), data).map_err(|e| DiagnosticsError::InvalidJoint(e.to_string()))?;
        Self::new(pmf)
    }

    /// Joint of `(V, U)`.
    pub fn transposed(&self) -> FiniteJoint {
        FiniteJoint { support_u: self.support_v.clone(), support_v: self.support_u.clone(), pmf: self.pmf.transpose() }
    }

    pub fn marginal_u(&self) -> Vec<f64> {
        (0..self.pmf.rows()).map(|i| self.pmf.row(i).iter().sum()).collect()
    }

    pub fn marginal_v(&self) -> Vec<f64> {
        let mut q = vec![0.0; self.pmf.cols()];
        for i in 0..self.pmf.rows() {
            for (qj, p) in q.iter_mut().zip(self.pmf.row(i)) {
                *qj += p;
            }
        }
        q
    }
}

/// For every event `A ⊆ supp U`, `(P(A), sup_B |P(A∩B) − P(A)P(B)|)`.
///
/// With `d_j = P(A, V=j) − P(A)P(V=j)` the signed deviation of a column event
/// `B` is `Σ_{j∈B} d_j`; its largest absolute value is reached by collecting
/// all positive or all negative `d_j`.
fn row_event_deviations(joint: &FiniteJoint) -> impl Iterator<Item = (f64, f64)> + '_ {
    let (k, l) = (joint.pmf.rows(), joint.pmf.cols());
    let q = joint.marginal_v();
    (0u32..1 << k).map(move |mask| {
        let mut r = vec![0.0; l];
        for i in (0..k).filter(|i| mask >> i & 1 == 1) {
            for (rj, p) in r.iter_mut().zip(joint.pmf.row(i)) {
                *rj += p;
            }
        }
        let pa: f64 = r.iter().sum();
        let (mut pos, mut neg) = (0.0, 0.0);
        for (rj, qj) in r.iter().zip(&q) {
            let d = rj - pa * qj;
            if d > 0.0 {
                pos += d;
            } else {
                neg -= d;
            }
        }
        (pa, f64::max(pos, neg))
    })
}

/// `sup |P(A∩B) − P(A)P(B)|` over `A ∈ σ(U)`, `B ∈ σ(V)`.
pub fn alpha_between(joint: &FiniteJoint) -> Result<f64, DiagnosticsError> {
    check_support(joint)?;
    Ok(row_event_deviations(joint).map(|(_, dev)| dev).fold(0.0, f64::max))
}

/// `sup |P(B|A) − P(B)|` over `A ∈ σ(U)` with `P(A) > 0` and `B ∈ σ(V)`.
pub fn phi_between(joint: &FiniteJoint) -> Result<f64, DiagnosticsError> {
    check_support(joint)?;
    let phi = row_event_deviations(joint)
        .filter(|(pa, _)| *pa > 0.0)
        .map(|(pa, dev)| (dev / pa).min(1.0))
        .fold(0.0, f64::max);
    debug_assert!(alpha_between(joint).map_or(true, |a| a <= phi + 1e-15));
    Ok(phi)
}

fn check_support(joint: &FiniteJoint) -> Result<(), DiagnosticsError> {
    let (k, l) = (joint.pmf.rows(), joint.pmf.cols());
    if k > MAX_SUPPORT || l > MAX_SUPPORT {
        return Err(DiagnosticsError::SupportTooLarge { k, l });
    }
    Ok(())
}

/// Rank-based quantile bin of every entry: `floor(rank · bins / m)`.
fn quantile_bins(x: &[f64], bins: usize) -> Vec<usize> {
    let m = x.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut out = vec![0; m];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank * bins / m;
    }
    out
}

/// Plug-in α between `x_i` and `x_{i+lag}` after binning each coordinate at
/// its empirical quantiles.
///
/// This is a lower-bound diagnostic; see [`EMPIRICAL_ALPHA_CAVEAT`].
pub fn empirical_alpha_lag(x: &[f64], lag: usize, bins: usize) -> Result<f64, DiagnosticsError> {
    if !(2..=8).contains(&bins) {
        return Err(DiagnosticsError::InsufficientData(format!("bins must lie in 2..=8, got {bins}")));
    }
    let m = x.len().saturating_sub(lag);
    if m < 100 {
        return Err(DiagnosticsError::InsufficientData(format!("need n - lag >= 100, got {m}")));
    }
    let bu = quantile_bins(&x[..m], bins);
    let bv = quantile_bins(&x[lag..lag + m], bins);
    let mut pmf = Matrix::zeros(bins, bins);
    for (u, v) in bu.iter().zip(&bv) {
        pmf[(*u, *v)] += 1.0;
    }
    let pmf = pmf.scale(1.0 / m as f64);
    // counts / m can miss unit mass by a few ulps
    let joint = FiniteJoint { support_u: bin_labels(bins), support_v: bin_labels(bins), pmf };
    alpha_between(&joint)
}

fn bin_labels(bins: usize) -> Vec<String> {
    (0..bins).map(|b| format!("q{}", b + 1)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Asymptotic normality under α-mixing errors.
    #[serde(rename = "AN-alpha")]
    AnAlpha,
    /// Asymptotic normality under φ-mixing errors.
    #[serde(rename = "AN-phi")]
    AnPhi,
    /// Strong consistency under α-mixing errors.
    #[serde(rename = "CON-alpha")]
    ConAlpha,
    /// Strong consistency under φ-mixing errors.
    #[serde(rename = "CON-phi")]
    ConPhi,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::AnAlpha, Theorem::AnPhi, Theorem::ConAlpha, Theorem::ConPhi];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::AnAlpha => "AN-alpha",
            Theorem::AnPhi => "AN-phi",
            Theorem::ConAlpha => "CON-alpha",
            Theorem::ConPhi => "CON-phi",
        }
    }

    pub fn is_alpha(self) -> bool {
        matches!(self, Theorem::AnAlpha | Theorem::ConAlpha)
    }

    /// Names of the conditions checked for this theorem, in report order.
    pub fn condition_names(self) -> &'static [&'static str] {
        match self {
            Theorem::AnAlpha => &[
                "design-limit",
                "pairwise-independence",
                "alpha-rate",
                "bounded-design",
                "moment-4-plus-omega",
                "moment-order-restriction",
                "long-run-variance",
            ],
            Theorem::AnPhi => &[
                "design-limit",
                "pairwise-independence",
                "phi-class",
                "phi-root-summable",
                "bounded-design",
                "moment-4-plus-omega",
                "long-run-variance",
            ],
            Theorem::ConAlpha => {
                &["design-limit", "pairwise-independence", "alpha-rate-with-q", "bounded-design", "moment-2q"]
            }
            Theorem::ConPhi => {
                &["design-limit", "pairwise-independence", "phi-class", "phi-root-summable", "fourth-moment-summable"]
            }
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem '{s}' (expected AN-alpha, AN-phi, CON-alpha or CON-phi)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Satisfied,
    Violated,
    /// Not decidable from metadata; verified empirically instead.
    Deferred,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub theorem: Theorem,
    pub checks: Vec<AssumptionCheck>,
}

impl AssumptionReport {
    /// No condition is violated.
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Violated)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passes() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn check(&self, name: &str) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violations(&self) -> impl Iterator<Item = &AssumptionCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Violated)
    }
}

fn column_label(j: usize, p: usize) -> String {
    if j < p {
        format!("theta{}", j + 1)
    } else {
        "eps".into()
    }
}

/// Declared α rate exponent; finite-range columns satisfy every rate.
fn effective_delta(col: &ErrorProcessSpec, label: &str) -> Result<f64, DiagnosticsError> {
    match (col.delta, col.finite_range()) {
        (Some(d), _) => Ok(d),
        (None, Some(_)) => Ok(f64::INFINITY),
        (None, None) => {
            Err(DiagnosticsError::MissingMetadata(format!("column {label}: alpha rate exponent delta is required")))
        }
    }
}

/// Declared moment surplus; Gaussian-driven columns have every moment.
fn effective_omega(col: &ErrorProcessSpec) -> f64 {
    col.omega.unwrap_or(f64::INFINITY)
}

fn fmt_exp(v: f64) -> String {
    if v.is_infinite() {
        "any".into()
    } else {
        format!("{v}")
    }
}

struct Checks(Vec<AssumptionCheck>);

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: String) {
        let status = if ok { CheckStatus::Satisfied } else { CheckStatus::Violated };
        self.0.push(AssumptionCheck { name: name.into(), status, detail });
    }

    fn defer(&mut self, name: &str, detail: &str) {
        self.0.push(AssumptionCheck { name: name.into(), status: CheckStatus::Deferred, detail: detail.into() });
    }
}

/// Evaluates the conditions of `theorem` on declared design and error metadata.
pub fn check_assumptions(
    theorem: Theorem,
    design: &DesignSpec,
    errors: &ErrorMatrixSpec,
) -> Result<AssumptionReport, DiagnosticsError> {
    let p = design.p();
    let cols = errors.resolved_columns();
    if cols.len() != p + 1 {
        return Err(DiagnosticsError::MissingMetadata(format!(
            "design has p = {p} columns but {} error processes are declared (need p + 1)",
            cols.len()
        )));
    }
    let labels: Vec<String> = (0..=p).map(|j| column_label(j, p)).collect();
    let mut out = Checks(Vec::new());

    match design.delta() {
        Ok(delta) => {
            let pd = linalg::cholesky(&delta).is_ok();
            out.push("design-limit", pd, format!("n^-1 Z'Z converges to a {p}x{p} limit; positive definite: {pd}"));
        }
        Err(e) => out.push("design-limit", false, e.to_string()),
    }
    out.push("pairwise-independence", true, format!("{} error columns drawn from independent streams", p + 1));

    let bounded = || {
        let b = design.entry_bound();
        (b.is_finite(), format!("sup |Z_ij| <= {b}"))
    };

    match theorem {
        Theorem::AnAlpha => {
            let deltas = cols.iter().zip(&labels).map(|(c, l)| effective_delta(c, l)).collect::<Result<Vec<_>, _>>()?;
            let omegas: Vec<f64> = cols.iter().map(effective_omega).collect();
            let ok = deltas.iter().all(|d| *d > 0.0);
            let detail =
                deltas.iter().zip(&labels).map(|(d, l)| format!("{l}: delta={}", fmt_exp(*d))).collect::<Vec<_>>();
            out.push("alpha-rate", ok, format!("alpha(n) = O(n^(-1-delta)) with delta > 0; {}", detail.join(", ")));
            let (ok, d) = bounded();
            out.push("bounded-design", ok, d);
            let ok = omegas.iter().all(|w| *w > 0.0);
            out.push("moment-4-plus-omega", ok, moment_detail(&cols, &omegas, &labels));
            let min_omega = omegas.iter().cloned().fold(f64::INFINITY, f64::min);
            let min_delta = deltas.iter().cloned().fold(f64::INFINITY, f64::min);
            let lhs = 2.0 / min_omega;
            out.push(
                "moment-order-restriction",
                lhs < min_delta,
                format!("2 / min omega = {lhs} must be < min delta = {}", fmt_exp(min_delta)),
            );
            out.defer("long-run-variance", LONG_RUN_DETAIL);
        }
        Theorem::AnPhi => {
            push_phi_conditions(&mut out, &cols, &labels);
            let (ok, d) = bounded();
            out.push("bounded-design", ok, d);
            let omegas: Vec<f64> = cols.iter().map(effective_omega).collect();
            let ok = omegas.iter().all(|w| *w > 0.0);
            out.push("moment-4-plus-omega", ok, moment_detail(&cols, &omegas, &labels));
            out.defer("long-run-variance", LONG_RUN_DETAIL);
        }
        Theorem::ConAlpha => {
            let mut parts = Vec::new();
            let mut ok = true;
            for (c, l) in cols.iter().zip(&labels) {
                if c.finite_range().is_some() {
                    parts.push(format!("{l}: finite range, every rate holds"));
                    continue;
                }
                let q = c.q.ok_or_else(|| {
                    DiagnosticsError::MissingMetadata(format!("column {l}: moment order q is required"))
                })?;
                let delta = effective_delta(c, l)?;
                let need = q / (2.0 * q - 2.0);
                let good = q > 1.0 && q <= 2.0 && 1.0 + delta > need;
                ok &= good;
                parts.push(format!("{l}: q={q}, declared exponent {} vs required > {need}", 1.0 + delta));
            }
            out.push("alpha-rate-with-q", ok, format!("alpha(n) = O(n^(-q/(2q-2)-delta)); {}", parts.join(", ")));
            let (ok, d) = bounded();
            out.push("bounded-design", ok, d);
            let gaussian = cols.iter().all(is_gaussian_driven);
            out.push("moment-2q", gaussian, "sup E|xi|^(2q) finite: Gaussian-driven columns have all moments".into());
        }
        Theorem::ConPhi => {
            push_phi_conditions(&mut out, &cols, &labels);
            let gaussian = cols.iter().all(is_gaussian_driven);
            out.push(
                "fourth-moment-summable",
                gaussian,
                "sum E xi_n^4 / n^2 finite: fourth moments are bounded by 3 scale^4".into(),
            );
        }
    }
    debug_assert_eq!(out.0.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), theorem.condition_names());
    Ok(AssumptionReport { theorem, checks: out.0 })
}

const LONG_RUN_DETAIL: &str =
    "positive definite limit of n^-1 Var([X,Y]'[X,Y][beta;-1]) is not decidable from metadata; \
checked empirically by the long-run experiment";

fn is_gaussian_driven(col: &ErrorProcessSpec) -> bool {
    matches!(col.kind, ProcessKind::IidGaussian | ProcessKind::MaQ { .. } | ProcessKind::Ar1 { .. })
}

fn moment_detail(cols: &[ErrorProcessSpec], omegas: &[f64], labels: &[String]) -> String {
    let parts: Vec<String> = cols
        .iter()
        .zip(omegas)
        .zip(labels)
        .map(|((c, w), l)| match c.omega {
            Some(_) => format!("{l}: omega={w}"),
            None if is_gaussian_driven(c) => format!("{l}: Gaussian-driven, satisfied for any omega"),
            None => format!("{l}: omega undeclared"),
        })
        .collect();
    format!("sup E|xi|^(4+omega) finite; {}", parts.join(", "))
}

fn push_phi_conditions(out: &mut Checks, cols: &[ErrorProcessSpec], labels: &[String]) {
    let classes: Vec<MixingClass> = cols.iter().map(ErrorProcessSpec::mixing_class).collect();
    let not_phi: Vec<&str> =
        classes.iter().zip(labels).filter(|(c, _)| **c == MixingClass::Alpha).map(|(_, l)| l.as_str()).collect();
    out.push(
        "phi-class",
        not_phi.is_empty(),
        if not_phi.is_empty() {
            "every column is phi-mixing or independent".into()
        } else {
            format!("not phi-mixing: {}", not_phi.join(", "))
        },
    );
    let ranges: Vec<String> = cols
        .iter()
        .zip(labels)
        .map(|(c, l)| match c.finite_range() {
            Some(q) => format!("{l}: phi(n) = 0 for n > {q}"),
            None => format!("{l}: infinite range"),
        })
        .collect();
    out.push(
        "phi-root-summable",
        cols.iter().all(|c| c.finite_range().is_some()),
        format!("sum sqrt(phi(n)) finite; {}", ranges.join(", ")),
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process;
    use crate::rng;
    use proptest::prelude::*;
    use rand::RngExt;

    /// Full enumeration of all `2^k × 2^l` event pairs.
    fn brute(joint: &FiniteJoint) -> (f64, f64) {
        let (k, l) = (joint.pmf.rows(), joint.pmf.cols());
        let pu = joint.marginal_u();
        let pv = joint.marginal_v();
        let (mut alpha, mut phi) = (0.0_f64, 0.0_f64);
        for a in 0u32..1 << k {
            let pa: f64 = (0..k).filter(|i| a >> i & 1 == 1).map(|i| pu[i]).sum();
            for b in 0u32..1 << l {
                let pb: f64 = (0..l).filter(|j| b >> j & 1 == 1).map(|j| pv[j]).sum();
                let mut pab = 0.0;
                for i in (0..k).filter(|i| a >> i & 1 == 1) {
                    for j in (0..l).filter(|j| b >> j & 1 == 1) {
                        pab += joint.pmf[(i, j)];
                    }
                }
                alpha = alpha.max((pab - pa * pb).abs());
                if pa > 0.0 {
                    phi = phi.max((pab / pa - pb).abs());
                }
            }
        }
        (alpha, phi)
    }

    fn random_joint(g: &mut rand_pcg::Pcg64, k: usize, l: usize) -> FiniteJoint {
        let w: Vec<f64> = (0..k * l).map(|_| g.random_range(0..10) as f64).collect();
        let total: f64 = w.iter().sum::<f64>().max(1.0);
        let mut w: Vec<f64> = w.iter().map(|x| x / total).collect();
        if w.iter().all(|x| *x == 0.0) {
            w[0] = 1.0;
        }
        let mass: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= mass);
        FiniteJoint::new(Matrix::new(k, l, w).unwrap()).unwrap()
    }

    #[test]
    fn definitional_examples() {
        let ind = FiniteJoint::independent(&[0.2, 0.5, 0.3], &[0.6, 0.4]).unwrap();
        assert!(alpha_between(&ind).unwrap() < 1e-16);
        assert!(phi_between(&ind).unwrap() < 1e-15);
        let fair = FiniteJoint::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(alpha_between(&fair).unwrap(), 0.25);
        assert_eq!(phi_between(&fair).unwrap(), 0.5);
        let b = FiniteJoint::from_rows(&[vec![0.7, 0.0], vec![0.0, 0.3]]).unwrap();
        assert!((alpha_between(&b).unwrap() - 0.21).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_full_enumeration() {
        let mut g = rng::stream(99);
        for _ in 0..300 {
            let (k, l) = (g.random_range(1..6), g.random_range(1..6));
            let j = random_joint(&mut g, k, l);
            let (a, f) = brute(&j);
            assert!((alpha_between(&j).unwrap() - a).abs() < 1e-14);
            assert!((phi_between(&j).unwrap() - f).abs() < 1e-14);
        }
    }

    #[test]
    fn phi_asymmetry_witness_exists() {
        let mut g = rng::stream(2024);
        let witness = (0..10_000).map(|_| random_joint(&mut g, 2, 3)).find(|j| {
            let f = phi_between(j).unwrap();
            let ft = phi_between(&j.transposed()).unwrap();
            let bf = brute(j).1;
            let bft = brute(&j.transposed()).1;
            (f - ft).abs() > 1e-6 && (bf - f).abs() < 1e-14 && (bft - ft).abs() < 1e-14
        });
        assert!(witness.is_some());
    }

    #[test]
    fn support_limits() {
        let big = Matrix::new(13, 1, vec![1.0 / 13.0; 13]).unwrap();
        assert_eq!(FiniteJoint::new(big), Err(DiagnosticsError::SupportTooLarge { k: 13, l: 1 }));
        assert!(matches!(FiniteJoint::from_rows(&[vec![0.5, 0.6]]), Err(DiagnosticsError::InvalidJoint(_))));
        assert!(matches!(FiniteJoint::from_rows(&[vec![1.5, -0.5]]), Err(DiagnosticsError::InvalidJoint(_))));
        let full = FiniteJoint::new(Matrix::new(12, 12, vec![1.0 / 144.0; 144]).unwrap()).unwrap();
        assert!(alpha_between(&full).unwrap() < 1e-15);
    }

    proptest! {
        #[test]
        fn alpha_bounds_and_symmetry(seed in any::<u64>(), k in 1usize..6, l in 1usize..6) {
            let j = random_joint(&mut rng::stream(seed), k, l);
            let a = alpha_between(&j).unwrap();
            let f = phi_between(&j).unwrap();
            prop_assert!(a <= 0.25 + 1e-15);
            prop_assert!(f <= 1.0);
            prop_assert!(a <= f + 1e-15);
            prop_assert!((a - alpha_between(&j.transposed()).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn empirical_alpha_examples() {
        let iid = process::generate_sequence(&ErrorProcessSpec::iid(1.0), 100_000, 1).unwrap();
        for lag in [1, 5] {
            assert!(empirical_alpha_lag(&iid, lag, 4).unwrap() <= 0.02);
        }
        let ma = process::generate_sequence(&ErrorProcessSpec::ma(vec![1.0, 1.0], 1.0), 100_000, 2).unwrap();
        assert!(empirical_alpha_lag(&ma, 2, 4).unwrap() <= 0.02);
        assert!(empirical_alpha_lag(&ma, 1, 4).unwrap() >= 0.05);
    }

    #[test]
    fn empirical_alpha_errors() {
        let x = vec![0.0; 150];
        assert!(matches!(empirical_alpha_lag(&x, 60, 4), Err(DiagnosticsError::InsufficientData(_))));
        assert!(matches!(empirical_alpha_lag(&x, 1, 9), Err(DiagnosticsError::InsufficientData(_))));
        assert!(matches!(empirical_alpha_lag(&x, 1, 1), Err(DiagnosticsError::InsufficientData(_))));
    }

    fn sinusoid(p: usize) -> DesignSpec {
        DesignSpec::SinusoidalBounded { frequencies: (0..p).map(|j| 0.1 + 0.15 * j as f64).collect() }
    }

    fn ar(delta: f64, omega: f64) -> ErrorProcessSpec {
        ErrorProcessSpec::ar1(0.5, 1.0, delta).with_omega(omega)
    }

    #[test]
    fn an_alpha_fixtures() {
        let pass = ErrorMatrixSpec::new(vec![ar(3.0, 1.0), ar(3.0, 1.0)], 1.0);
        let rep = check_assumptions(Theorem::AnAlpha, &sinusoid(1), &pass).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.check("long-run-variance").unwrap().status, CheckStatus::Deferred);

        let fail = ErrorMatrixSpec::new(vec![ar(1.0, 1.0), ar(1.0, 1.0)], 1.0);
        let rep = check_assumptions(Theorem::AnAlpha, &sinusoid(1), &fail).unwrap();
        assert!(!rep.passes());
        let names: Vec<&str> = rep.violations().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["moment-order-restriction"]);
    }

    #[test]
    fn an_phi_all_ma_passes() {
        let errs = ErrorMatrixSpec::uniform(ErrorProcessSpec::ma(vec![1.0, 0.6, 0.3], 1.0), 2, 1.0);
        let rep = check_assumptions(Theorem::AnPhi, &sinusoid(2), &errs).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.check("phi-root-summable").unwrap().status, CheckStatus::Satisfied);
        let with_ar = ErrorMatrixSpec::new(vec![ar(3.0, 1.0), ErrorProcessSpec::iid(1.0)], 1.0);
        let rep = check_assumptions(Theorem::AnPhi, &sinusoid(1), &with_ar).unwrap();
        assert_eq!(rep.violations().count(), 2);
    }

    #[test]
    fn every_condition_listed_once() {
        let errs = ErrorMatrixSpec::uniform(ErrorProcessSpec::ma(vec![1.0, 0.5], 1.0), 1, 1.0);
        for t in Theorem::ALL {
            let rep = check_assumptions(t, &sinusoid(1), &errs).unwrap();
            let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
            assert_eq!(names, t.condition_names());
            assert!(rep.passes(), "{t}");
        }
    }

    #[test]
    fn con_alpha_rate_with_q() {
        let errs =
            |q: f64, delta: f64| ErrorMatrixSpec::uniform(ErrorProcessSpec::ar1(0.5, 1.0, delta).with_q(q), 1, 1.0);
        assert!(check_assumptions(Theorem::ConAlpha, &sinusoid(1), &errs(2.0, 0.1)).unwrap().passes());
        // q = 1.2 needs 1 + delta > 3
        assert!(!check_assumptions(Theorem::ConAlpha, &sinusoid(1), &errs(1.2, 1.5)).unwrap().passes());
        assert!(check_assumptions(Theorem::ConAlpha, &sinusoid(1), &errs(1.2, 2.5)).unwrap().passes());
    }

    #[test]
    fn missing_metadata() {
        let mut col = ErrorProcessSpec::ar1(0.5, 1.0, 3.0);
        col.delta = None;
        let errs = ErrorMatrixSpec::uniform(col, 1, 1.0);
        assert!(matches!(
            check_assumptions(Theorem::AnAlpha, &sinusoid(1), &errs),
            Err(DiagnosticsError::MissingMetadata(_))
        ));
        let no_q = ErrorMatrixSpec::uniform(ErrorProcessSpec::ar1(0.5, 1.0, 3.0), 1, 1.0);
        assert!(matches!(
            check_assumptions(Theorem::ConAlpha, &sinusoid(1), &no_q),
            Err(DiagnosticsError::MissingMetadata(_))
        ));
        let short = ErrorMatrixSpec::uniform(ErrorProcessSpec::iid(1.0), 1, 1.0);
        assert!(check_assumptions(Theorem::AnPhi, &sinusoid(2), &short).is_err());
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.as_str().parse::<Theorem>().unwrap(), t);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{t}\""));
        }
        assert!("AN-beta".parse::<Theorem>().is_err());
    }
}
