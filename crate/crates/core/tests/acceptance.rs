//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use zerodiv_core::analysis::{classify_cm, reisner_cm};
use zerodiv_core::cli::{corpus_specs, parse_spec};
use zerodiv_core::complexes::{clique_complex, from_facet_list, k_complex, surface_check, Graph};
use zerodiv_core::formulas::{betti_allfields, betti_nonfields, k_ranks, local_summaries, LocalSummary};
use zerodiv_core::homology::{homology, verify_join_formula, Coefficients, HomologyProfile};
use zerodiv_core::rings::FiniteRing;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn ring(spec: &str) -> FiniteRing {
    parse_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}")).build().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn reduced(ring: &FiniteRing) -> HomologyProfile {
    homology(&k_complex(ring).expect("within budget"), true, Coefficients::Integers).expect("within budget")
}

struct CorpusEntry {
    spec: String,
    factors: Vec<LocalSummary>,
    homology: HomologyProfile,
}

fn corpus() -> Vec<CorpusEntry> {
    corpus_specs(120)
        .into_par_iter()
        .map(|spec| {
            let r = ring(&spec);
            CorpusEntry {
                factors: local_summaries(&r).unwrap(),
                homology: reduced(&r),
                spec,
            }
        })
        .collect()
}

fn oracle_over_zn(corpus: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for e in corpus {
        let n: u64 = match e.spec.strip_prefix('Z').and_then(|s| s.parse().ok()) {
            Some(n) if (6..=120).contains(&n) => n,
            _ => continue,
        };
        count += 1;
        if !k_ranks(&e.factors).matches_ranks(&e.homology) || !e.homology.is_torsion_free() {
            bad.push(format!("Z{n}"));
        }
    }
    Outcome::new(
        bad.is_empty() && count == 115,
        format!("{count} rings, mismatches {bad:?}"),
    )
}

fn ranks_of(spec: &str) -> (BTreeMap<isize, usize>, BTreeMap<isize, usize>, bool) {
    let r = ring(spec);
    let h = reduced(&r);
    let formula = k_ranks(&local_summaries(&r).unwrap()).to_usize_map().unwrap();
    (h.ranks(), formula, h.is_torsion_free())
}

fn z36() -> Outcome {
    let (direct, formula, free) = ranks_of("Z36");
    let expected = BTreeMap::from([(1, 12)]);
    Outcome::new(
        direct == expected && formula == expected && free,
        format!("direct {direct:?}, formula {formula:?}"),
    )
}

fn z105() -> Outcome {
    let t = Instant::now();
    let (direct, formula, free) = ranks_of("Z105");
    let elapsed = t.elapsed();
    let expected = BTreeMap::from([(1, 100), (2, 15)]);
    Outcome::new(
        direct == expected && formula == expected && free && elapsed < Duration::from_secs(120),
        format!("direct {direct:?}, formula {formula:?}, {elapsed:.1?}"),
    )
}

fn three_copies_of_z3() -> Outcome {
    let (direct, _, free) = ranks_of("Z3 x Z3 x Z3");
    let report = surface_check(&k_complex(&ring("Z3 x Z3 x Z3")).unwrap());
    let evidence = report.failures.first().map(ToString::to_string).unwrap_or_default();
    Outcome::new(
        direct == BTreeMap::from([(1, 12), (2, 1)]) && free && !report.is_closed_surface && !report.failures.is_empty(),
        format!("ranks {direct:?}, surface check: {evidence}"),
    )
}

fn multipartite() -> Outcome {
    let mut parts_lists = Vec::new();
    for r in 1..=3u32 {
        for code in 0..4usize.pow(r) {
            parts_lists.push((0..r).map(|i| code / 4usize.pow(i) % 4 + 1).collect::<Vec<_>>());
        }
    }
    let bad: Vec<Vec<usize>> = parts_lists
        .par_iter()
        .filter(|parts| {
            let k = clique_complex(&Graph::complete_multipartite(parts)).unwrap();
            let h = homology(&k, true, Coefficients::Integers).unwrap();
            let top = parts.len() as isize - 1;
            let expected: usize = parts.iter().map(|m| m - 1).product();
            let mut want = BTreeMap::new();
            if expected > 0 {
                want.insert(top, expected);
            }
            h.ranks() != want || !h.is_torsion_free()
        })
        .cloned()
        .collect();
    Outcome::new(bad.is_empty(), format!("{} part lists, mismatches {bad:?}", parts_lists.len()))
}

fn random_graph(rng: &mut StdRng, prefix: &str) -> Graph {
    let n = rng.gen_range(0..=6);
    let mut g = Graph::new((0..n).map(|i| format!("{prefix}{i}")).collect());
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

fn join_formula() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pairs: Vec<(Graph, Graph)> = (0..200).map(|_| (random_graph(&mut rng, "a"), random_graph(&mut rng, "b"))).collect();
    let checks: Vec<_> = pairs.par_iter().map(|(g1, g2)| verify_join_formula(g1, g2).unwrap()).collect();
    let skipped = checks.iter().filter(|c| c.agrees().is_none()).count();
    let failed = checks.iter().filter(|c| c.agrees() == Some(false) || (c.agrees().is_some() && !c.ranks_agree())).count();
    Outcome::new(
        failed == 0,
        format!("{} compared, {skipped} skipped (both factors with torsion), {failed} mismatches", 200 - skipped),
    )
}

fn multisets(k: usize, max: u64) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(k - 1, max) {
        let lo = rest.last().copied().unwrap_or(1);
        for u in lo..=max {
            let mut v = rest.clone();
            v.push(u);
            out.push(v);
        }
    }
    out
}

fn permutations(v: &[u64]) -> Vec<Vec<u64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn closed_forms() -> Outcome {
    let mut lists = 0;
    let mut bad = Vec::new();
    for k in 1..=4 {
        for us in multisets(k, 6) {
            for fields in [true, false] {
                lists += 1;
                let summaries = |us: &[u64]| -> Vec<LocalSummary> {
                    us.iter()
                        .map(|&u| if fields { LocalSummary::field(u) } else { LocalSummary::non_field(u) })
                        .collect()
                };
                let reference = k_ranks(&summaries(&us));
                for perm in permutations(&us) {
                    let ranks = k_ranks(&summaries(&perm));
                    let ok = ranks == reference
                        && (0..=k as i64 + 1).all(|n| {
                            let closed = if fields {
                                betti_allfields(n, &perm)
                            } else {
                                betti_nonfields(n, &perm)
                            };
                            closed == ranks.get(n as usize)
                        });
                    if !ok {
                        bad.push((fields, perm));
                    }
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{lists} factor lists in every order, mismatches {:?}", &bad[..bad.len().min(5)]),
    )
}

fn borderline_ledger() -> Outcome {
    let cases = [
        ("F2[x]/(x^3)", true),
        ("F2[x]/(x^4)", true),
        ("F2[x]/(x^5)", false),
        ("F2[x]/(x^6)", false),
        ("F2[x,y]/(x^2, y^2)", true),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (spec, expected) in cases {
        let t = Instant::now();
        let v = reisner_cm(&k_complex(&ring(spec)).unwrap(), Coefficients::Rationals).unwrap();
        let elapsed = t.elapsed();
        let good = v.is_cm == expected && (expected || v.witness.is_some()) && elapsed < Duration::from_secs(30);
        ok &= good;
        let verdict = match &v.witness {
            None => "CM".to_string(),
            Some(w) => format!("not CM, H~_{}(lk {{{}}}) rank {}", w.dimension, w.face.join(","), w.rank),
        };
        notes.push(format!(
            "{spec}: {verdict}{}",
            if good { String::new() } else { format!(" (expected {})", if expected { "CM" } else { "not CM" }) }
        ));
    }
    Outcome::new(ok, notes.join("; "))
}

fn classification_vs_reisner() -> Outcome {
    let specs = corpus_specs(120);
    let results: Vec<(String, Option<bool>)> = specs
        .par_iter()
        .map(|spec| {
            let c = classify_cm(&ring(spec), Coefficients::Rationals).unwrap();
            (format!("{spec} ({:?})", c.case), c.agrees_with_reisner())
        })
        .collect();
    let bad: Vec<&String> = results.iter().filter(|r| r.1 != Some(true)).map(|r| &r.0).collect();
    Outcome::new(bad.is_empty(), format!("{} rings, discrepancies {bad:?}", results.len()))
}

fn vanishing(corpus: &[CorpusEntry]) -> Outcome {
    let bad: Vec<&str> = corpus
        .iter()
        .filter(|e| e.homology.groups.iter().any(|(&n, g)| n >= e.factors.len() as isize && !g.is_zero()))
        .map(|e| e.spec.as_str())
        .collect();
    Outcome::new(bad.is_empty(), format!("{} rings, violations {bad:?}", corpus.len()))
}

const RP2: &str = "# vertices: 0\t1\t2\t3\t4\t5
0 1 2
0 1 3
0 2 4
0 3 5
0 4 5
1 2 5
1 3 4
1 4 5
2 3 4
2 3 5
";

fn torsion(corpus: &[CorpusEntry]) -> Outcome {
    let with_torsion: Vec<&str> = corpus
        .iter()
        .filter(|e| !e.homology.is_torsion_free())
        .map(|e| e.spec.as_str())
        .collect();
    let rp2 = homology(&from_facet_list(RP2).unwrap(), true, Coefficients::Integers).unwrap();
    let control = rp2.torsion(1) == [BigUint::from(2u32)] && rp2.rank(1) == 0;
    Outcome::new(
        with_torsion.is_empty() && control,
        format!(
            "{} rings, with torsion {with_torsion:?}; projective plane H~_1 = {}",
            corpus.len(),
            rp2.group(1)
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let t = Instant::now();
    let corpus = corpus();
    println!("direct homology of {} corpus rings computed in {:.1?}", corpus.len(), t.elapsed());

    let criteria: Vec<Criterion> = vec![
        ("direct homology of K(Z_n) equals the formula, 6 <= n <= 120", Box::new(|| oracle_over_zn(&corpus))),
        ("K(Z36) has H~_1 of rank 12 only, both methods", Box::new(z36)),
        ("K(Z105) has ranks {1: 100, 2: 15}", Box::new(z105)),
        ("K(Z3 x Z3 x Z3): ranks {1: 12, 2: 1}, not a surface", Box::new(three_copies_of_z3)),
        ("complete multipartite clique complexes", Box::new(multipartite)),
        ("join formula on 200 random graph pairs", Box::new(join_formula)),
        ("closed-form Betti numbers equal the recursion", Box::new(closed_forms)),
        ("borderline local rings under Reisner's criterion", Box::new(borderline_ledger)),
        ("ring-level CM classification equals Reisner", Box::new(classification_vs_reisner)),
        ("homology vanishes from dimension k on", Box::new(|| vanishing(&corpus))),
        ("no torsion in the corpus, Z/2 in the projective plane", Box::new(|| torsion(&corpus))),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        if !outcome.passed {
            failures += 1;
        }
        println!(
            "{} {:>2}  {name} [{:.1?}]\n        {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed(),
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
