use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{elapsed_ms, parse_spec, Only};
use crate::analysis::{classify_cm_with_budget, surface_obstruction_with_budget, ReisnerCheck};
use crate::complexes::k_complex_with_budget;
use crate::error::Result;
use crate::formulas::{k_ranks, local_summaries};
use crate::homology::{homology_with_budget, Coefficients};
use crate::rings::FiniteRing;

/// Field orders used for the product-of-fields part of the corpus.
const FIELD_ORDERS: [&str; 7] = ["GF(2)", "GF(3)", "GF(2^2)", "GF(5)", "GF(7)", "GF(2^3)", "GF(3^2)"];

/// `Z_n` for `2 <= n <= max_n`, followed by a fixed list of local rings and
/// two-factor products that exercise the Cohen-Macaulay boundary cases.
pub fn corpus_specs(max_n: u64) -> Vec<String> {
    let mut specs: Vec<String> = (2..=max_n).map(|n| format!("Z{n}")).collect();
    for s in [
        "F2[x]/(x^3)",
        "F2[x]/(x^4)",
        "F2[x]/(x^5)",
        "F2[x]/(x^6)",
        "F3[x]/(x^3)",
        "F2[x,y]/(x^2, y^2)",
        "F2[x,y]/(x^2, xy, y^2)",
        "Z3 x Z3 x Z3",
    ] {
        specs.push(s.to_string());
    }
    for (i, a) in FIELD_ORDERS.iter().enumerate() {
        for b in &FIELD_ORDERS[i..] {
            specs.push(format!("{a} x {b}"));
        }
    }
    for q in &FIELD_ORDERS[..4] {
        specs.push(format!("F2[x]/(x^2) x {q}"));
        specs.push(format!("Z4 x {q}"));
    }
    specs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusRow {
    pub ring: String,
    pub order: usize,
    pub check: Only,
    /// `None` when the check was skipped for budget reasons.
    pub passed: Option<bool>,
    pub detail: String,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub rows: Vec<CorpusRow>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            4
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let verdict = match r.passed {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "skip",
            };
            out.push_str(&format!(
                "{verdict:<5} {:<9} {:<28} {}\n",
                format!("{:?}", r.check).to_lowercase(),
                r.ring,
                r.detail
            ));
        }
        out.push_str(&format!("passed {}, failed {}, skipped {}", self.passed, self.failed, self.skipped));
        out
    }
}

fn check_homology(ring: &FiniteRing, budget: usize) -> Result<(Option<bool>, String)> {
    let factors = local_summaries(ring)?;
    let expected = k_ranks(&factors);
    let k = match k_complex_with_budget(ring, budget) {
        Ok(k) => k,
        Err(e) if e.is_budget() => return Ok((None, e.to_string())),
        Err(e) => return Err(e),
    };
    let h = match homology_with_budget(&k, true, Coefficients::Integers, budget) {
        Ok(h) => h,
        Err(e) if e.is_budget() => return Ok((None, e.to_string())),
        Err(e) => return Err(e),
    };
    let ranks = h.ranks();
    let matches = expected.matches_ranks(&h);
    let torsion_free = h.is_torsion_free();
    let vanishing = ranks.keys().all(|&n| n < factors.len() as isize);
    let detail = format!(
        "ranks {ranks:?}{}{}{}",
        if matches { "" } else { ", formula disagrees" },
        if torsion_free { "" } else { ", torsion present" },
        if vanishing { "" } else { ", homology above dimension k-1" }
    );
    Ok((Some(matches && torsion_free && vanishing), detail))
}

fn check_cm(ring: &FiniteRing, budget: usize) -> Result<(Option<bool>, String)> {
    let c = classify_cm_with_budget(ring, Coefficients::Rationals, budget)?;
    let detail = match &c.reisner {
        ReisnerCheck::Computed(v) => format!("{:?}: classified {:?}, reisner {}", c.case, c.is_cm, v.is_cm),
        ReisnerCheck::Skipped { reason } => format!("{:?}: reisner skipped ({reason})", c.case),
    };
    Ok((c.agrees_with_reisner(), detail))
}

fn check_surface(ring: &FiniteRing, budget: usize) -> Result<(Option<bool>, String)> {
    match surface_obstruction_with_budget(ring, budget) {
        Ok(s) => {
            let evidence_ok = s.evidence.as_ref().is_none_or(|r| !r.is_closed_surface);
            Ok((Some(!s.possible && evidence_ok), s.reason))
        }
        Err(e) if e.is_budget() => Ok((None, e.to_string())),
        Err(e) => Err(e),
    }
}

/// Runs the selected checks (all three by default) over the corpus, in
/// parallel. Rows come back in corpus order.
pub fn cmd_corpus(max_n: u64, only: Option<Only>, budget: usize) -> Result<CorpusSummary> {
    let checks: Vec<Only> = match only {
        Some(c) => vec![c],
        None => vec![Only::Homology, Only::Cm, Only::Surface],
    };
    let jobs: Vec<(String, Only)> = corpus_specs(max_n)
        .into_iter()
        .flat_map(|s| checks.iter().map(move |&c| (s.clone(), c)))
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(text, check)| {
            let spec = parse_spec(&text)?;
            let ring = spec.build()?;
            let t = Instant::now();
            let (passed, detail) = match check {
                Only::Homology => check_homology(&ring, budget)?,
                Only::Cm => check_cm(&ring, budget)?,
                Only::Surface => check_surface(&ring, budget)?,
            };
            Ok(CorpusRow {
                ring: spec.to_string(),
                order: ring.order(),
                check,
                passed,
                detail,
                timing_ms: elapsed_ms(t),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |v: Option<bool>| rows.iter().filter(|r| r.passed == v).count();
    Ok(CorpusSummary {
        passed: count(Some(true)),
        failed: count(Some(false)),
        skipped: count(None),
        rows,
    })
}
