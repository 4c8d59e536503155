//! Generation and certification of cusp data.
//!
//! A cusp datum is a pair `(M_0, M_1)` of disjoint subsets of `Φ_V` where
//! `M_0` is upward closed for the order `β ≥ α ⟺ n_i(β − α) ≥ 0 for all i`
//! and `M_1 = λ(M_0)` is the set of elements that can be added to `M_0`
//! while staying upward closed.
//!
//! Starting from `({α_0}, λ({α_0}))` with `α_0` the highest root, every
//! datum is expanded to the children `(M_0 ∪ {α}, λ(M_0 ∪ {α}))` for
//! `α ∈ M_1`, with global deduplication on `M_0`. Two pruning regimes are
//! supported:
//!
//! * [`Mode::Paper`]: a datum is pruned exactly when condition 2 holds for
//!   its `M_0`; each survivor is then certified by the f-function system,
//!   falling back to condition 1 and then condition 3 (with candidates
//!   `M_1`). This is the procedure whose survivor counts are 1429 for E7
//!   and 9437 for E8.
//! * [`Mode::Strict`]: a datum is pruned when any of conditions 1–3 holds,
//!   and every survivor must carry an f-function certificate.
//!
//! Generation fails loudly if any survivor cannot be certified. Reports can
//! be serialized to JSON and independently re-verified with
//! [`verify_report`], which replays upward closure, `λ`, deduplication, and
//! every certificate from scratch.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::grading::{Grading, PhiVSet};
use crate::reducibility::{
    check_condition_1, check_condition_2, check_condition_3, solve_f, verify_certificate,
    Certificate,
};
use crate::rootsys::{CartanType, Root};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Paper,
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Paper => write!(f, "paper"),
            Mode::Strict => write!(f, "strict"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Mode::Paper),
            "strict" => Ok(Mode::Strict),
            other => Err(format!("unknown mode `{other}` (expected paper|strict)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspDatum {
    pub m0: PhiVSet,
    pub m1: PhiVSet,
}

#[derive(Debug, Clone)]
pub struct ReportEntry {
    pub datum: CuspDatum,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone)]
pub struct CuspReport {
    pub ctype: CartanType,
    pub mode: Mode,
    pub data: Vec<ReportEntry>,
    pub pruned: u64,
    pub generation_steps: u32,
}

impl CuspReport {
    pub fn count(&self) -> usize {
        self.data.len()
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum CuspError {
    #[error("input set is not upward closed: element {index} is missing a successor")]
    NotUpwardClosed { index: usize },
    #[error("surviving datum with M0 = {m0:?} carries no certificate")]
    Uncertified { m0: Vec<usize> },
}

/// Defects reported by [`verify_report`], identifying the first offending
/// datum.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ReportDefect {
    #[error("report type {found} does not match grading type {expected}")]
    TypeMismatch { expected: String, found: String },
    #[error("datum {index}: duplicate M0")]
    DuplicateM0 { index: usize },
    #[error("datum {index}: M0 is not upward closed")]
    NotUpwardClosed { index: usize },
    #[error("datum {index}: M1 does not equal λ(M0)")]
    LambdaMismatch { index: usize },
    #[error("datum {index}: no certificate present")]
    MissingCertificate { index: usize },
    #[error("datum {index}: malformed certificate: {detail}")]
    MalformedCertificate { index: usize, detail: String },
    #[error("datum {index}: certificate does not verify")]
    CertificateFailed { index: usize },
}

/// `β ≥ α` in the cusp order: every `n_i(β − α)` is ≥ 0.
pub fn poset_geq(g: &Grading, beta: &Root, alpha: &Root) -> bool {
    debug_assert!(g.phi_v_index(beta).is_some() && g.phi_v_index(alpha).is_some());
    let diff = beta.difference(alpha);
    g.n_scaled_of(diff.coords()).iter().all(|&c| c >= 0)
}

/// Strict up-sets of every Φ_V element, as local bitsets:
/// `up[a] = {b ≠ a : b ≥ a}`.
fn strict_up_sets(g: &Grading) -> Vec<PhiVSet> {
    let nv = g.num_phi_v();
    (0..nv)
        .map(|a| {
            PhiVSet::from_indices(
                nv,
                (0..nv).filter(|&b| b != a && poset_geq(g, g.phi_v_root(b), g.phi_v_root(a))),
            )
        })
        .collect()
}

fn lambda_with(up: &[PhiVSet], m0: &PhiVSet) -> PhiVSet {
    let nv = m0.universe_len();
    PhiVSet::from_indices(
        nv,
        (0..nv).filter(|&a| !m0.contains(a) && up[a].is_subset_of(m0)),
    )
}

fn upward_closed(up: &[PhiVSet], m0: &PhiVSet) -> Result<(), CuspError> {
    match m0.iter().find(|&a| !up[a].is_subset_of(m0)) {
        Some(index) => Err(CuspError::NotUpwardClosed { index }),
        None => Ok(()),
    }
}

/// `λ(M_0)`: the elements of `Φ_V − M_0` whose strict up-set lies in `M_0`.
/// Fails if `M_0` is not upward closed.
pub fn lambda_set(g: &Grading, m0: &PhiVSet) -> Result<PhiVSet, CuspError> {
    let up = strict_up_sets(g);
    upward_closed(&up, m0)?;
    Ok(lambda_with(&up, m0))
}

enum Decision {
    Pruned,
    Kept(Option<Certificate>),
}

fn decide(g: &Grading, mode: Mode, datum: &CuspDatum) -> Decision {
    match mode {
        Mode::Paper => {
            if check_condition_2(g, &datum.m0).is_some() {
                return Decision::Pruned;
            }
            let cert = solve_f(g, &datum.m0, &datum.m1)
                .or_else(|| check_condition_1(g, &datum.m0))
                .or_else(|| check_condition_3(g, &datum.m0, &datum.m1));
            Decision::Kept(cert)
        }
        Mode::Strict => {
            if check_condition_1(g, &datum.m0).is_some()
                || check_condition_2(g, &datum.m0).is_some()
                || check_condition_3(g, &datum.m0, &datum.m1).is_some()
            {
                return Decision::Pruned;
            }
            Decision::Kept(solve_f(g, &datum.m0, &datum.m1))
        }
    }
}

/// Runs the inductive generation from `({α_0}, λ({α_0}))` and certifies all
/// survivors. `jobs = 1` forces the sequential path; larger values expand
/// and certify each breadth-first level on a rayon pool of that size. The
/// survivor set and report ordering are schedule independent: levels are
/// sorted by bit pattern before processing and results keep that order.
pub fn generate_cusp_data(g: &Grading, mode: Mode, jobs: usize) -> Result<CuspReport, CuspError> {
    let trace = generate_traced(g, mode, jobs)?;
    Ok(trace.report)
}

/// A generation run that also keeps the pruned sets, for verification runs
/// that need to replay coverage.
pub struct GenerationTrace {
    pub report: CuspReport,
    pub pruned_sets: Vec<PhiVSet>,
}

pub fn generate_traced(
    g: &Grading,
    mode: Mode,
    jobs: usize,
) -> Result<GenerationTrace, CuspError> {
    let trace = run_generation(g, mode, jobs);
    if let Some(entry) = trace.report.data.iter().find(|e| e.certificate.is_none()) {
        return Err(CuspError::Uncertified {
            m0: entry.datum.m0.to_indices(),
        });
    }
    Ok(trace)
}

/// Like [`generate_traced`] but tolerates uncertified survivors (their
/// certificate is left empty). Exists for toy-scale structural checks; the
/// full-certification guarantee only holds for E7/E8.
pub fn generate_traced_lenient(g: &Grading, mode: Mode, jobs: usize) -> GenerationTrace {
    run_generation(g, mode, jobs)
}

fn run_generation(g: &Grading, mode: Mode, jobs: usize) -> GenerationTrace {
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("failed to build worker pool");
        pool.install(|| generate_inner(g, mode, true))
    } else {
        generate_inner(g, mode, false)
    }
}

fn generate_inner(g: &Grading, mode: Mode, parallel: bool) -> GenerationTrace {
    use rayon::prelude::*;

    let up = strict_up_sets(g);
    let nv = g.num_phi_v();
    let alpha0 = g.highest_root_local();
    // The procedure starts from {α_0}; verify rather than assume that it is
    // upward closed (equivalently, that α_0 is the maximum of the order).
    assert!(
        up[alpha0].is_empty(),
        "the highest root must be maximal in the cusp order"
    );

    let root_m0 = PhiVSet::singleton(nv, alpha0);
    let root = CuspDatum {
        m0: root_m0,
        m1: lambda_with(&up, &root_m0),
    };

    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(root.m0.bits());
    let mut level: Vec<CuspDatum> = vec![root];
    let mut data: Vec<ReportEntry> = Vec::new();
    let mut pruned_sets: Vec<PhiVSet> = Vec::new();
    let mut steps: u32 = 0;

    while !level.is_empty() {
        steps += 1;
        let decisions: Vec<(CuspDatum, Decision)> = if parallel {
            level.par_iter().map(|d| (*d, decide(g, mode, d))).collect()
        } else {
            level.iter().map(|d| (*d, decide(g, mode, d))).collect()
        };

        let mut expand: Vec<CuspDatum> = Vec::new();
        for (datum, decision) in decisions {
            match decision {
                Decision::Pruned => pruned_sets.push(datum.m0),
                Decision::Kept(certificate) => {
                    data.push(ReportEntry { datum, certificate });
                    expand.push(datum);
                }
            }
        }

        let mut next: Vec<CuspDatum> = Vec::new();
        for parent in &expand {
            for alpha in parent.m1.iter() {
                let child_m0 = parent.m0.with(alpha);
                debug_assert!(upward_closed(&up, &child_m0).is_ok());
                if seen.insert(child_m0.bits()) {
                    next.push(CuspDatum {
                        m0: child_m0,
                        m1: lambda_with(&up, &child_m0),
                    });
                }
            }
        }
        next.sort_by_key(|d| (d.m0.card(), d.m0.bits()));
        level = next;
    }

    let pruned = pruned_sets.len() as u64;
    GenerationTrace {
        report: CuspReport {
            ctype: g.rs().ctype(),
            mode,
            data,
            pruned,
            generation_steps: steps,
        },
        pruned_sets,
    }
}

/// Re-checks a report from scratch: upward closure of each `M_0`,
/// `M_1 = λ(M_0)`, deduplication, and every certificate. Returns the first
/// defect found, in report order.
pub fn verify_report(g: &Grading, report: &CuspReport) -> Result<(), ReportDefect> {
    let expected = g.rs().ctype().to_string();
    let found = report.ctype.to_string();
    if expected != found {
        return Err(ReportDefect::TypeMismatch { expected, found });
    }
    let up = strict_up_sets(g);
    let mut seen: HashSet<u128> = HashSet::new();
    for (index, entry) in report.data.iter().enumerate() {
        let m0 = &entry.datum.m0;
        if !seen.insert(m0.bits()) {
            return Err(ReportDefect::DuplicateM0 { index });
        }
        if upward_closed(&up, m0).is_err() {
            return Err(ReportDefect::NotUpwardClosed { index });
        }
        if lambda_with(&up, m0) != entry.datum.m1 {
            return Err(ReportDefect::LambdaMismatch { index });
        }
        let cert = entry
            .certificate
            .as_ref()
            .ok_or(ReportDefect::MissingCertificate { index })?;
        match verify_certificate(g, m0, &entry.datum.m1, cert) {
            Ok(true) => {}
            Ok(false) => return Err(ReportDefect::CertificateFailed { index }),
            Err(e) => {
                return Err(ReportDefect::MalformedCertificate {
                    index,
                    detail: e.0,
                })
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DatumJson {
    #[serde(rename = "M0")]
    m0: Vec<usize>,
    #[serde(rename = "M1")]
    m1: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cert: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ReportJson {
    #[serde(rename = "type")]
    ctype: String,
    mode: String,
    count: usize,
    data: Vec<DatumJson>,
    pruned: u64,
    generation_steps: u32,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ReportParseError {
    #[error("invalid report JSON: {0}")]
    Json(String),
    #[error("invalid report field: {0}")]
    Field(String),
}

impl CuspReport {
    pub fn to_json_string(&self, include_certs: bool) -> String {
        let json = ReportJson {
            ctype: self.ctype.to_string(),
            mode: self.mode.to_string(),
            count: self.data.len(),
            data: self
                .data
                .iter()
                .map(|entry| DatumJson {
                    m0: entry.datum.m0.to_indices(),
                    m1: entry.datum.m1.to_indices(),
                    cert: if include_certs {
                        entry.certificate.clone()
                    } else {
                        None
                    },
                })
                .collect(),
            pruned: self.pruned,
            generation_steps: self.generation_steps,
        };
        serde_json::to_string_pretty(&json).expect("report serialization cannot fail")
    }

    /// Parses a report against the Φ_V indexing of `g`; index range errors
    /// surface here, semantic defects are left to [`verify_report`].
    pub fn from_json_str(s: &str, g: &Grading) -> Result<CuspReport, ReportParseError> {
        let json: ReportJson =
            serde_json::from_str(s).map_err(|e| ReportParseError::Json(e.to_string()))?;
        let ctype: CartanType = json
            .ctype
            .parse()
            .map_err(|e| ReportParseError::Field(format!("{e}")))?;
        let mode: Mode = json.mode.parse().map_err(ReportParseError::Field)?;
        let nv = g.num_phi_v();
        let mut data = Vec::with_capacity(json.data.len());
        for (i, d) in json.data.into_iter().enumerate() {
            for &v in d.m0.iter().chain(d.m1.iter()) {
                if v >= nv {
                    return Err(ReportParseError::Field(format!(
                        "datum {i}: root index {v} out of range for Φ_V of size {nv}"
                    )));
                }
            }
            data.push(ReportEntry {
                datum: CuspDatum {
                    m0: PhiVSet::from_indices(nv, d.m0),
                    m1: PhiVSet::from_indices(nv, d.m1),
                },
                certificate: d.cert,
            });
        }
        Ok(CuspReport {
            ctype,
            mode,
            data,
            pruned: json.pruned,
            generation_steps: json.generation_steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::compute_grading;
    use crate::rootsys::build_root_system;

    fn grading(name: &str) -> Grading {
        compute_grading(build_root_system(name.parse().unwrap())).unwrap()
    }

    #[test]
    fn poset_is_reflexive_and_antisymmetric_on_e7() {
        let g = grading("E7");
        let nv = g.num_phi_v();
        for a in 0..nv {
            assert!(poset_geq(&g, g.phi_v_root(a), g.phi_v_root(a)));
        }
        for a in 0..nv {
            for b in 0..nv {
                if a != b
                    && poset_geq(&g, g.phi_v_root(a), g.phi_v_root(b))
                    && poset_geq(&g, g.phi_v_root(b), g.phi_v_root(a))
                {
                    panic!("antisymmetry violated at ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn highest_root_is_the_maximum_on_e7() {
        let g = grading("E7");
        let top = g.phi_v_root(g.highest_root_local());
        for a in 0..g.num_phi_v() {
            assert!(poset_geq(&g, top, g.phi_v_root(a)));
        }
    }

    #[test]
    fn lambda_of_full_set_is_empty() {
        let g = grading("D4");
        let full = PhiVSet::full(g.num_phi_v());
        assert!(lambda_set(&g, &full).unwrap().is_empty());
    }

    #[test]
    fn lambda_of_empty_set_is_the_maximal_elements() {
        let g = grading("D4");
        let nv = g.num_phi_v();
        let empty = PhiVSet::empty(nv);
        let lambda = lambda_set(&g, &empty).unwrap();
        let up = strict_up_sets(&g);
        let maximal = PhiVSet::from_indices(nv, (0..nv).filter(|&a| up[a].is_empty()));
        assert_eq!(lambda, maximal);
        assert!(maximal.contains(g.highest_root_local()));
    }

    #[test]
    fn e7_lambda_of_the_root_datum_is_frozen() {
        // Regression fixture computed from the definition: the only element
        // addable to {α_0} in E7 is the height-15 root α_0 − (α_1 + α_3).
        let g = grading("E7");
        let m0 = PhiVSet::singleton(g.num_phi_v(), g.highest_root_local());
        let lambda = lambda_set(&g, &m0).unwrap();
        assert_eq!(lambda.to_indices(), vec![33]);
        assert_eq!(g.phi_v_root(33).coords(), &[1, 2, 2, 4, 3, 2, 1]);
    }

    #[test]
    fn lambda_rejects_non_upward_closed_input() {
        let g = grading("E7");
        let nv = g.num_phi_v();
        // A non-maximal element alone is never upward closed.
        let a = (0..nv).find(|&a| a != g.highest_root_local()).unwrap();
        let bad = PhiVSet::singleton(nv, a);
        assert!(matches!(
            lambda_set(&g, &bad),
            Err(CuspError::NotUpwardClosed { .. })
        ));
    }

    #[test]
    fn d4_generation_runs_and_certified_entries_verify() {
        let g = grading("D4");
        for mode in [Mode::Paper, Mode::Strict] {
            let trace = generate_traced_lenient(&g, mode, 1);
            let report = trace.report;
            assert!(report.count() > 0);
            // First datum is ({α_0}, λ({α_0})) and certifies via f ≡ 0.
            let first = &report.data[0];
            assert_eq!(first.datum.m0.to_indices(), vec![g.highest_root_local()]);
            assert_eq!(first.datum.m1, lambda_set(&g, &first.datum.m0).unwrap());
            assert!(matches!(
                first.certificate,
                Some(Certificate::FFunction { .. })
            ));
            for entry in &report.data {
                if let Some(cert) = &entry.certificate {
                    assert!(
                        verify_certificate(&g, &entry.datum.m0, &entry.datum.m1, cert).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn d4_has_uncertifiable_survivors_so_strict_generation_fails_loudly() {
        // The full-certification property is specific to E7/E8; on the D4
        // toy some survivors admit no certificate, and the non-lenient
        // entry point must report that instead of silently dropping data.
        let g = grading("D4");
        assert!(matches!(
            generate_cusp_data(&g, Mode::Paper, 1),
            Err(CuspError::Uncertified { .. })
        ));
    }

    fn certified_d4_report() -> (Grading, CuspReport) {
        let g = grading("D4");
        let mut report = generate_traced_lenient(&g, Mode::Paper, 1).report;
        report.data.retain(|e| e.certificate.is_some());
        assert!(!report.data.is_empty());
        (g, report)
    }

    #[test]
    fn d4_parallel_matches_sequential() {
        let g = grading("D4");
        let seq = generate_traced_lenient(&g, Mode::Paper, 1).report;
        let par = generate_traced_lenient(&g, Mode::Paper, 4).report;
        let key =
            |r: &CuspReport| -> Vec<u128> { r.data.iter().map(|e| e.datum.m0.bits()).collect() };
        assert_eq!(key(&seq), key(&par));
        assert_eq!(seq.pruned, par.pruned);
    }

    #[test]
    fn json_round_trip_preserves_the_report() {
        let (g, report) = certified_d4_report();
        let json = report.to_json_string(true);
        let parsed = CuspReport::from_json_str(&json, &g).unwrap();
        assert_eq!(parsed.count(), report.count());
        assert_eq!(parsed.pruned, report.pruned);
        for (a, b) in report.data.iter().zip(&parsed.data) {
            assert_eq!(a.datum.m0, b.datum.m0);
            assert_eq!(a.datum.m1, b.datum.m1);
            assert_eq!(a.certificate, b.certificate);
        }
        verify_report(&g, &parsed).unwrap();
    }

    #[test]
    fn verify_rejects_reports_for_the_wrong_type() {
        let g7 = grading("E7");
        let g8 = grading("E8");
        let report = generate_cusp_data(&g7, Mode::Paper, 1).unwrap();
        let json = report.to_json_string(true);
        let reparsed = CuspReport::from_json_str(&json, &g8).unwrap();
        assert!(matches!(
            verify_report(&g8, &reparsed),
            Err(ReportDefect::TypeMismatch { .. })
        ));
    }

    #[test]
    fn verify_detects_a_flipped_m1_bit() {
        let (g, mut report) = certified_d4_report();
        let nv = g.num_phi_v();
        let entry = &mut report.data[0];
        let flip = (0..nv)
            .find(|&i| !entry.datum.m1.contains(i))
            .expect("some bit to flip");
        entry.datum.m1.insert(flip);
        assert!(matches!(
            verify_report(&g, &report),
            Err(ReportDefect::LambdaMismatch { index: 0 })
        ));
    }

    #[test]
    fn verify_detects_a_perturbed_f_certificate() {
        use crate::reducibility::Frac;
        let (g, mut report) = certified_d4_report();
        // Adding #M0 to a single f value breaks the bullet Σ f < #M0.
        let bump = crate::linalg::from_int(report.data[0].datum.m0.card() as i64);
        let f = report
            .data
            .iter_mut()
            .find_map(|entry| match &mut entry.certificate {
                Some(Certificate::FFunction { f }) if !f.is_empty() => Some(f),
                _ => None,
            })
            .expect("some datum certifies via f on a non-empty M1");
        let key = *f.keys().next().unwrap();
        let old = f[&key].0.clone();
        f.insert(key, Frac(old + bump));
        assert!(matches!(
            verify_report(&g, &report),
            Err(ReportDefect::CertificateFailed { .. })
        ));
    }
}
