//! Cohen-Macaulay tests and the surface obstruction for `K(Ω)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{k_complex_with_budget, surface_check, SimplicialComplex, SurfaceReport};
use crate::error::{Error, Result};
use crate::formulas::{k_ranks, local_summaries, LocalSummary};
use crate::homology::{homology_with_budget, Coefficients};
use crate::rings::{decompose_local, FiniteRing};
use crate::DEFAULT_FACE_BUDGET;

/// A face whose link has homology below the link's top dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmWitness {
    pub face: Vec<String>,
    pub dimension: isize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub is_cm: bool,
    pub coefficients: Coefficients,
    pub witness: Option<CmWitness>,
}

pub fn reisner_cm(k: &SimplicialComplex, coefficients: Coefficients) -> Result<CmVerdict> {
    reisner_cm_with_budget(k, coefficients, DEFAULT_FACE_BUDGET)
}

/// Reisner's criterion: `K` is Cohen-Macaulay over a field iff
/// `H̃_i(lk F) = 0` for every face `F` (the empty face included) and every
/// `i < dim lk F`. The witness reported is the first failure in face order
/// (by dimension, then lexicographic), whatever order the links are checked
/// in. The void complex has no faces and passes vacuously.
pub fn reisner_cm_with_budget(k: &SimplicialComplex, coefficients: Coefficients, budget: usize) -> Result<CmVerdict> {
    if !coefficients.is_field() {
        return Err(Error::invalid("Reisner's criterion needs field coefficients"));
    }
    let faces = k.faces_with_budget(budget)?;
    let facets = k.facets();
    let check = |face: &Vec<usize>| -> Result<Option<CmWitness>> {
        if facets.binary_search(face).is_ok() {
            // the link of a facet is the empty complex
            return Ok(None);
        }
        let link = k.link(face)?;
        let Some(top) = link.dimension() else {
            return Ok(None);
        };
        let h = homology_with_budget(&link, true, coefficients, budget)?;
        Ok(h.groups
            .iter()
            .find(|(&i, g)| i < top && g.rank > 0)
            .map(|(&i, g)| CmWitness {
                face: k.face_labels(face),
                dimension: i,
                rank: g.rank,
            }))
    };
    let all: Vec<&Vec<usize>> = faces.iter().collect();
    let witness = match all.split_first() {
        None => None,
        Some((first, rest)) => match check(first)? {
            Some(w) => Some(w),
            None => rest
                .par_iter()
                .map(|f| check(f))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .transpose()?
                .flatten(),
        },
    };
    Ok(CmVerdict {
        is_cm: witness.is_none(),
        coefficients,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CmCase {
    TwoFields,
    Z2X2TimesField,
    IsField,
    LocalLargeSocle,
    BorderlineSocle2,
    NotCM,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReisnerCheck {
    Computed(CmVerdict),
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmClassification {
    pub case: CmCase,
    /// The verdict, `None` only for the borderline case when the complex is
    /// too large to test.
    pub is_cm: Option<bool>,
    pub detail: String,
    pub factors: Vec<LocalSummary>,
    pub reisner: ReisnerCheck,
}

impl CmClassification {
    /// `Some(false)` when the ring-level verdict contradicts Reisner's test.
    pub fn agrees_with_reisner(&self) -> Option<bool> {
        match (&self.reisner, self.is_cm) {
            (ReisnerCheck::Computed(v), Some(cm)) => Some(v.is_cm == cm),
            _ => None,
        }
    }
}

pub fn classify_cm(ring: &FiniteRing, coefficients: Coefficients) -> Result<CmClassification> {
    classify_cm_with_budget(ring, coefficients, DEFAULT_FACE_BUDGET)
}

/// Ring-level classification by the local factors:
/// three or more factors are never CM; two factors are CM exactly when both
/// are fields or one is a field and the other a local ring of order 4 that is
/// not a field; a field is (vacuously) CM; a local non-field is CM when its
/// last nonzero power of the maximal ideal has more than two elements, and the
/// two-element case is settled by Reisner's criterion.
///
/// The order-4 test covers both `Z_4` and `F_2[x]/(x^2)`: they have isomorphic
/// multiplicative monoids, hence isomorphic zero-divisor graphs.
pub fn classify_cm_with_budget(ring: &FiniteRing, coefficients: Coefficients, budget: usize) -> Result<CmClassification> {
    let factors = decompose_local(ring)?;
    let summaries = local_summaries(ring)?;
    let (case, detail) = match factors.as_slice() {
        [f] if f.is_field() => (CmCase::IsField, "a field has the void complex".to_string()),
        [f] => {
            let p = f.is_local().expect("factor is local");
            let socle = p.socle_layer.len();
            let detail = format!("local with |m^{}| = {socle}", p.nilpotency_index - 1);
            if socle > 2 {
                (CmCase::LocalLargeSocle, detail)
            } else {
                (CmCase::BorderlineSocle2, detail)
            }
        }
        [a, b] => {
            let small_non_field = |r: &FiniteRing| r.order() == 4 && !r.is_field();
            if a.is_field() && b.is_field() {
                (CmCase::TwoFields, "two field factors".to_string())
            } else if (a.is_field() && small_non_field(b)) || (b.is_field() && small_non_field(a)) {
                (
                    CmCase::Z2X2TimesField,
                    "a field times a local ring of order 4 with a two-element maximal ideal".to_string(),
                )
            } else {
                (CmCase::NotCM, "two factors, not of a Cohen-Macaulay type".to_string())
            }
        }
        fs => (CmCase::NotCM, format!("{} local factors", fs.len())),
    };

    let reisner = match k_complex_with_budget(ring, budget).and_then(|k| reisner_cm_with_budget(&k, coefficients, budget)) {
        Ok(v) => ReisnerCheck::Computed(v),
        Err(e) if e.is_budget() => ReisnerCheck::Skipped { reason: e.to_string() },
        Err(e) => return Err(e),
    };
    let is_cm = match case {
        CmCase::NotCM => Some(false),
        CmCase::BorderlineSocle2 => match &reisner {
            ReisnerCheck::Computed(v) => Some(v.is_cm),
            ReisnerCheck::Skipped { .. } => None,
        },
        _ => Some(true),
    };
    Ok(CmClassification {
        case,
        is_cm,
        detail,
        factors: summaries,
        reisner,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceObstruction {
    pub possible: bool,
    pub local_factors: usize,
    pub reason: String,
    pub evidence: Option<SurfaceReport>,
}

/// Why `K(Ω)` cannot be a closed surface. Four or more factors give a
/// simplex of dimension at least 3; at most two factors, or a factor with a
/// single unit, kill `H̃_2`; otherwise `b_2 ≠ 1` unless all three factors are
/// fields with two units each, where the complex itself is inspected.
pub fn surface_obstruction(ring: &FiniteRing) -> Result<SurfaceObstruction> {
    surface_obstruction_with_budget(ring, DEFAULT_FACE_BUDGET)
}

pub fn surface_obstruction_with_budget(ring: &FiniteRing, budget: usize) -> Result<SurfaceObstruction> {
    let factors = local_summaries(ring)?;
    let k = factors.len();
    let mut evidence = None;
    let reason = if k >= 4 {
        format!("{k} local factors give a simplex of dimension {} in K", k - 1)
    } else if k <= 2 {
        format!("{k} local factor(s): H~_2(K) = 0 since homology vanishes from dimension {k}")
    } else if factors.iter().any(|f| f.u == 1) {
        "a factor has u = 1, so H~_2(K) = 0".to_string()
    } else {
        let b2 = k_ranks(&factors).get(2);
        if factors.iter().all(|f| f.is_field && f.u == 2) {
            let report = surface_check(&k_complex_with_budget(ring, budget)?);
            let first = report
                .failures
                .first()
                .map(ToString::to_string)
                .unwrap_or_default();
            evidence = Some(report);
            format!("b_2 = {b2}, but the complex fails the surface check: {first}")
        } else if factors.iter().any(|f| !f.is_field) {
            format!("a non-field factor forces b_2 = {b2} > 1")
        } else {
            format!("b_2 = {b2} != 1")
        }
    };
    Ok(SurfaceObstruction {
        possible: false,
        local_factors: k,
        reason,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{make_galois_field, make_univariate_quotient, make_zmod, product};

    fn q() -> Coefficients {
        Coefficients::Rationals
    }

    #[test]
    fn graphs_are_cm_iff_connected() {
        let path = SimplicialComplex::new(
            (0..3).map(|i| i.to_string()).collect(),
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(reisner_cm(&path, q()).unwrap().is_cm);
        let two_edges = SimplicialComplex::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let v = reisner_cm(&two_edges, q()).unwrap();
        assert_eq!(
            v.witness,
            Some(CmWitness {
                face: vec![],
                dimension: 0,
                rank: 1
            })
        );
        assert!(reisner_cm(&SimplicialComplex::void(), q()).unwrap().is_cm);
        assert!(reisner_cm(&path, Coefficients::Integers).is_err());
    }

    #[test]
    fn impure_complex_fails_at_a_vertex() {
        let k = SimplicialComplex::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![0, 1, 2], vec![2, 3]],
        )
        .unwrap();
        let v = reisner_cm(&k, Coefficients::PrimeField(2)).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.face, vec!["2".to_string()]);
        assert_eq!(w.dimension, 0);
    }

    #[test]
    fn classification_cases() {
        let z21 = make_zmod(21).unwrap();
        let c = classify_cm(&z21, q()).unwrap();
        assert_eq!(c.case, CmCase::TwoFields);
        assert_eq!(c.agrees_with_reisner(), Some(true));

        let c = classify_cm(&make_zmod(12).unwrap(), q()).unwrap();
        assert_eq!(c.case, CmCase::Z2X2TimesField);
        assert_eq!(c.agrees_with_reisner(), Some(true));

        let c = classify_cm(&make_zmod(36).unwrap(), q()).unwrap();
        assert_eq!(c.case, CmCase::NotCM);
        assert_eq!(c.agrees_with_reisner(), Some(true));

        let c = classify_cm(&make_galois_field(2, 3).unwrap(), q()).unwrap();
        assert_eq!(c.case, CmCase::IsField);

        let c = classify_cm(&make_zmod(27).unwrap(), q()).unwrap();
        assert_eq!(c.case, CmCase::LocalLargeSocle);
        assert_eq!(c.agrees_with_reisner(), Some(true));

        let x5 = make_univariate_quotient(2, &[0, 0, 0, 0, 0, 1]).unwrap();
        let c = classify_cm(&x5, q()).unwrap();
        assert_eq!(c.case, CmCase::BorderlineSocle2);
        assert_eq!(c.is_cm, Some(false));
    }

    #[test]
    fn surface_reasons() {
        let z30 = make_zmod(30).unwrap();
        let r = surface_obstruction(&z30).unwrap();
        assert!(!r.possible && r.reason.contains("u = 1"));
        assert!(surface_obstruction(&make_zmod(36).unwrap()).unwrap().reason.contains("H~_2"));
        let f3 = make_zmod(3).unwrap();
        let r = surface_obstruction(&product(&[f3.clone(), f3.clone(), f3]).unwrap()).unwrap();
        let report = r.evidence.unwrap();
        assert!(!report.is_closed_surface && !report.failures.is_empty());
        assert!(surface_obstruction(&make_zmod(210).unwrap()).unwrap().reason.contains("4 local factors"));
    }
}
