//! Command implementations behind the `zerodiv` binary. Every command returns
//! a serializable result; the binary only parses flags and prints.

mod corpus;
mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::analysis::{classify_cm_with_budget, surface_obstruction_with_budget, CmClassification, ReisnerCheck, SurfaceObstruction};
use crate::complexes::{k0_complex_with_budget, k_complex_with_budget, write_facet_list};
use crate::error::{Error, Result};
use crate::formulas::{k_ranks, local_summaries, LocalSummary};
use crate::homology::{homology_with_budget, Coefficients, HomologyProfile};
use crate::rings::{FiniteRing, RingSpec};

pub use corpus::{cmd_corpus, corpus_specs, CorpusRow, CorpusSummary};
pub use parse::parse_spec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Formula,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Only {
    Homology,
    Cm,
    Surface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    K,
    K0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    BudgetExceeded,
    Disagreement,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::BudgetExceeded => 3,
            Status::Disagreement => 4,
        }
    }
}

/// Exit code for an error that aborted a command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        e if e.is_budget() => 3,
        _ => 1,
    }
}

fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.collect_str(v),
    }
}

fn serialize_bigs<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match u64::try_from(d) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupEntry {
    pub dim: isize,
    #[serde(serialize_with = "serialize_big")]
    pub rank: BigUint,
    #[serde(serialize_with = "serialize_bigs")]
    pub torsion: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub dim: isize,
    #[serde(serialize_with = "serialize_big")]
    pub direct_rank: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub formula_rank: BigUint,
    #[serde(serialize_with = "serialize_bigs")]
    pub direct_torsion: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub agree: bool,
    pub formula: Vec<GroupEntry>,
    pub diff: Vec<DiffEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingDescription {
    pub spec: String,
    pub order: usize,
    pub factors: Vec<LocalSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetInfo {
    pub limit: usize,
    pub exceeded: bool,
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunResult {
    pub ring: RingDescription,
    pub method: Option<Method>,
    pub homology: Option<Vec<GroupEntry>>,
    pub cm: Option<CmClassification>,
    pub surface: Option<SurfaceObstruction>,
    pub timing_ms: BTreeMap<String, f64>,
    pub budget: BudgetInfo,
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub cross_check: Option<CrossCheck>,
    pub status: Status,
}

impl RunResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let r = &self.ring;
        let factors: Vec<String> = r
            .factors
            .iter()
            .map(|f| format!("u={}{}", f.u, if f.is_field { " field" } else { "" }))
            .collect();
        let _ = writeln!(out, "ring: {} (order {}; local factors: {})", r.spec, r.order, factors.join(", "));
        if let Some(h) = &self.homology {
            let label = if self.reduced { "H~" } else { "H" };
            let nonzero: Vec<String> = h
                .iter()
                .filter(|g| g.rank != BigUint::default() || !g.torsion.is_empty())
                .map(|g| {
                    let mut s = format!("{label}_{} = Z^{}", g.dim, g.rank);
                    for t in &g.torsion {
                        let _ = write!(s, " + Z/{t}");
                    }
                    s
                })
                .collect();
            let body = if nonzero.is_empty() { "all groups zero".to_string() } else { nonzero.join(", ") };
            let _ = writeln!(out, "homology over {}: {body}", self.coefficients);
        }
        if let Some(c) = &self.cross_check {
            let _ = writeln!(out, "direct vs formula: {}", if c.agree { "agree" } else { "DISAGREE" });
        }
        if let Some(cm) = &self.cm {
            let verdict = match cm.is_cm {
                Some(true) => "Cohen-Macaulay",
                Some(false) => "not Cohen-Macaulay",
                None => "undecided",
            };
            let _ = writeln!(out, "cm: {verdict} ({:?}; {})", cm.case, cm.detail);
            match &cm.reisner {
                ReisnerCheck::Computed(v) => {
                    let _ = write!(out, "reisner over {}: {}", v.coefficients, if v.is_cm { "CM" } else { "not CM" });
                    if let Some(w) = &v.witness {
                        let _ = write!(out, ", witness H~_{}(lk {{{}}}) has rank {}", w.dimension, w.face.join(", "), w.rank);
                    }
                    out.push('\n');
                }
                ReisnerCheck::Skipped { reason } => {
                    let _ = writeln!(out, "reisner: skipped ({reason})");
                }
            }
        }
        if let Some(s) = &self.surface {
            let _ = writeln!(out, "surface: impossible ({})", s.reason);
        }
        if self.budget.exceeded {
            let _ = writeln!(out, "budget of {} faces exceeded in: {}", self.budget.limit, self.budget.skipped.join(", "));
        }
        let _ = write!(out, "status: {:?}", self.status);
        out
    }
}

struct Context {
    spec: RingSpec,
    ring: FiniteRing,
    factors: Vec<LocalSummary>,
    timing: BTreeMap<String, f64>,
}

fn elapsed_ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn prepare(spec_text: &str) -> Result<Context> {
    let spec = parse_spec(spec_text)?;
    let t = Instant::now();
    let ring = spec.build()?;
    let factors = local_summaries(&ring)?;
    let mut timing = BTreeMap::new();
    timing.insert("build".to_string(), elapsed_ms(t));
    Ok(Context {
        spec,
        ring,
        factors,
        timing,
    })
}

impl Context {
    fn result(self, coefficients: Coefficients, reduced: bool, budget: usize) -> RunResult {
        RunResult {
            ring: RingDescription {
                spec: self.spec.to_string(),
                order: self.ring.order(),
                factors: self.factors,
            },
            method: None,
            homology: None,
            cm: None,
            surface: None,
            timing_ms: self.timing,
            budget: BudgetInfo {
                limit: budget,
                exceeded: false,
                skipped: Vec::new(),
            },
            coefficients,
            reduced,
            cross_check: None,
            status: Status::Ok,
        }
    }
}

fn direct_entries(h: &HomologyProfile) -> Vec<GroupEntry> {
    h.groups
        .iter()
        .map(|(&dim, g)| GroupEntry {
            dim,
            rank: BigUint::from(g.rank),
            torsion: g.torsion.clone(),
        })
        .collect()
}

/// Formula ranks; unreduced homology adds the one component of a nonvoid
/// complex in degree zero.
fn formula_entries(factors: &[LocalSummary], reduced: bool) -> Vec<GroupEntry> {
    let mut ranks: BTreeMap<isize, BigUint> = k_ranks(factors).iter().map(|(n, r)| (n as isize, r.clone())).collect();
    let is_field = matches!(factors, [f] if f.is_field);
    if !reduced && !is_field {
        *ranks.entry(0).or_default() += 1u32;
    }
    ranks
        .into_iter()
        .map(|(dim, rank)| GroupEntry {
            dim,
            rank,
            torsion: Vec::new(),
        })
        .collect()
}

fn diff(direct: &[GroupEntry], formula: &[GroupEntry]) -> Vec<DiffEntry> {
    let d: BTreeMap<isize, &GroupEntry> = direct.iter().map(|g| (g.dim, g)).collect();
    let f: BTreeMap<isize, &GroupEntry> = formula.iter().map(|g| (g.dim, g)).collect();
    let dims: std::collections::BTreeSet<isize> = d.keys().chain(f.keys()).copied().collect();
    dims.into_iter()
        .filter_map(|dim| {
            let direct_rank = d.get(&dim).map(|g| g.rank.clone()).unwrap_or_default();
            let direct_torsion = d.get(&dim).map(|g| g.torsion.clone()).unwrap_or_default();
            let formula_rank = f.get(&dim).map(|g| g.rank.clone()).unwrap_or_default();
            (direct_rank != formula_rank || !direct_torsion.is_empty()).then_some(DiffEntry {
                dim,
                direct_rank,
                formula_rank,
                direct_torsion,
            })
        })
        .collect()
}

/// Homology of `K(R)` directly, from the formulas, or both with a diff.
pub fn cmd_homology(
    spec: &str,
    method: Method,
    reduced: bool,
    coefficients: Coefficients,
    budget: usize,
) -> Result<RunResult> {
    let mut cx = prepare(spec)?;
    let mut direct = None;
    let mut skipped = Vec::new();
    if method != Method::Formula {
        let t = Instant::now();
        match k_complex_with_budget(&cx.ring, budget).and_then(|k| homology_with_budget(&k, reduced, coefficients, budget)) {
            Ok(h) => direct = Some(direct_entries(&h)),
            Err(e) if e.is_budget() => skipped.push("direct".to_string()),
            Err(e) => return Err(e),
        }
        cx.timing.insert("direct".to_string(), elapsed_ms(t));
    }
    let formula = (method != Method::Direct).then(|| {
        let t = Instant::now();
        let f = formula_entries(&cx.factors, reduced);
        cx.timing.insert("formula".to_string(), elapsed_ms(t));
        f
    });
    let mut result = cx.result(coefficients, reduced, budget);
    result.method = Some(method);
    if let (Some(d), Some(f)) = (&direct, &formula) {
        let diff = diff(d, f);
        result.cross_check = Some(CrossCheck {
            agree: diff.is_empty(),
            formula: f.clone(),
            diff,
        });
    }
    result.homology = direct.or(formula);
    finish(&mut result, skipped);
    Ok(result)
}

fn finish(result: &mut RunResult, skipped: Vec<String>) {
    result.budget.exceeded = !skipped.is_empty();
    result.budget.skipped = skipped;
    let disagree = result.cross_check.as_ref().is_some_and(|c| !c.agree)
        || result.cm.as_ref().is_some_and(|c| c.agrees_with_reisner() == Some(false));
    result.status = if disagree {
        Status::Disagreement
    } else if result.budget.exceeded {
        Status::BudgetExceeded
    } else {
        Status::Ok
    };
}

/// Cohen-Macaulay classification with the Reisner cross-check.
pub fn cmd_cm(spec: &str, coefficients: Coefficients, budget: usize) -> Result<RunResult> {
    if !coefficients.is_field() {
        return Err(Error::invalid("the Cohen-Macaulay test needs field coefficients (Q or Fp)"));
    }
    let mut cx = prepare(spec)?;
    let t = Instant::now();
    let cm = classify_cm_with_budget(&cx.ring, coefficients, budget)?;
    cx.timing.insert("cm".to_string(), elapsed_ms(t));
    let skipped = match cm.reisner {
        ReisnerCheck::Skipped { .. } => vec!["reisner".to_string()],
        ReisnerCheck::Computed(_) => Vec::new(),
    };
    let mut result = cx.result(coefficients, true, budget);
    result.cm = Some(cm);
    finish(&mut result, skipped);
    Ok(result)
}

/// Why `K(R)` is not a closed surface.
pub fn cmd_surface(spec: &str, budget: usize) -> Result<RunResult> {
    let mut cx = prepare(spec)?;
    let t = Instant::now();
    let surface = surface_obstruction_with_budget(&cx.ring, budget)?;
    cx.timing.insert("surface".to_string(), elapsed_ms(t));
    let mut result = cx.result(Coefficients::Integers, true, budget);
    result.surface = Some(surface);
    finish(&mut result, Vec::new());
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExportSummary {
    pub ring: String,
    pub target: Target,
    pub vertices: usize,
    pub facets: usize,
    pub path: String,
}

/// Writes `K(R)` or `K0(R)` in the facet-list format.
pub fn cmd_export(spec: &str, target: Target, path: &Path, budget: usize) -> Result<ExportSummary> {
    let cx = prepare(spec)?;
    let k = match target {
        Target::K => k_complex_with_budget(&cx.ring, budget)?,
        Target::K0 => k0_complex_with_budget(&cx.ring, budget)?,
    };
    write_facet_list(&k, path)?;
    Ok(ExportSummary {
        ring: cx.spec.to_string(),
        target,
        vertices: k.vertex_count(),
        facets: k.facets().len(),
        path: path.display().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_FACE_BUDGET as B;

    fn ranks(r: &RunResult) -> BTreeMap<isize, u64> {
        r.homology
            .as_ref()
            .unwrap()
            .iter()
            .filter(|g| g.rank != BigUint::default())
            .map(|g| (g.dim, u64::try_from(&g.rank).unwrap()))
            .collect()
    }

    #[test]
    fn homology_both_methods() {
        let r = cmd_homology("Z36", Method::Both, true, Coefficients::Integers, B).unwrap();
        assert_eq!(ranks(&r), BTreeMap::from([(1, 12)]));
        assert!(r.cross_check.as_ref().unwrap().agree);
        assert_eq!(r.exit_code(), 0);

        let r = cmd_homology("Z7", Method::Direct, true, Coefficients::Integers, B).unwrap();
        assert!(ranks(&r).is_empty());

        let r = cmd_homology("Z3 x Z3 x Z3", Method::Both, true, Coefficients::Integers, B).unwrap();
        assert_eq!(ranks(&r), BTreeMap::from([(1, 12), (2, 1)]));
        assert_eq!(r.status, Status::Ok);

        let r = cmd_homology("Z12", Method::Both, false, Coefficients::Rationals, B).unwrap();
        assert_eq!(ranks(&r), BTreeMap::from([(0, 1), (1, 2)]));
        assert!(r.cross_check.unwrap().agree);
    }

    #[test]
    fn budget_is_reported_not_fatal() {
        let r = cmd_homology("Z3 x Z3 x Z3", Method::Both, true, Coefficients::Integers, 10).unwrap();
        assert_eq!(r.status, Status::BudgetExceeded);
        assert_eq!(r.exit_code(), 3);
        assert_eq!(ranks(&r), BTreeMap::from([(1, 12), (2, 1)]));
    }

    #[test]
    fn json_key_order() {
        let r = cmd_homology("Z6", Method::Both, true, Coefficients::Integers, B).unwrap();
        let json = r.to_json();
        let keys = ["\"ring\"", "\"method\"", "\"homology\"", "\"cm\"", "\"surface\"", "\"timing_ms\"", "\"budget\""];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(r.to_text().contains("Z6"));
    }

    #[test]
    fn cm_and_surface_commands() {
        let r = cmd_cm("F2[x]/(x^3)", Coefficients::Rationals, B).unwrap();
        assert_eq!(r.cm.as_ref().unwrap().is_cm, Some(true));
        // |m^3| = 3, yet the complex is not pure.
        let r = cmd_cm("Z81", Coefficients::Rationals, B).unwrap();
        assert_eq!(r.status, Status::Disagreement);
        assert_eq!(r.exit_code(), 4);
        let r = cmd_cm("F2[x]/(x^5)", Coefficients::Rationals, B).unwrap();
        let cm = r.cm.unwrap();
        assert_eq!(cm.is_cm, Some(false));
        assert!(matches!(cm.reisner, ReisnerCheck::Computed(ref v) if v.witness.is_some()));
        let r = cmd_cm("Z3 x Z5", Coefficients::Rationals, B).unwrap();
        assert_eq!(r.cm.unwrap().case, crate::analysis::CmCase::TwoFields);
        assert!(cmd_cm("Z6", Coefficients::Integers, B).is_err());

        for (spec, needle) in [("Z3 x Z3 x Z3", "surface check"), ("Z4 x Z9", "2 local"), ("Z210", "4 local")] {
            let r = cmd_surface(spec, B).unwrap();
            let s = r.surface.unwrap();
            assert!(!s.possible);
            assert!(s.reason.contains(needle), "{spec}: {}", s.reason);
        }
    }

    #[test]
    fn export_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.txt");
        let s = cmd_export("Z6", Target::K, &path, B).unwrap();
        assert_eq!(s.facets, 2);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(cmd_export("Z25", Target::K, &path, B).unwrap().facets, 1);
        let s = cmd_export("Z4", Target::K0, &path, B).unwrap();
        assert_eq!((s.vertices, s.facets), (3, 3));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(error_exit_code(&parse_spec("Q").unwrap_err()), 2);
        assert_eq!(error_exit_code(&Error::BudgetExceeded { budget: 1 }), 3);
        assert_eq!(error_exit_code(&Error::invalid("x")), 1);
    }
}
