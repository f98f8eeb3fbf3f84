//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use springer_core::bs::{self, BSWord};
use springer_core::combinat::{self, YoungDiagram};
use springer_core::flags_a::CompleteFlag;
use springer_core::gf::PrimeField;
use springer_core::pointcount::{self, CountSeries, PointCountError};
use springer_core::verify::{self, SuiteOutcome};
use springer_core::weyl::{self, WeylElement, WeylError, WeylType, Word};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

fn verdict(criterion: u32, title: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion} ({title}): {status} {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn failures(outcomes: &[(String, SuiteOutcome)]) -> Vec<String> {
    outcomes
        .iter()
        .flat_map(|(case, o)| {
            o.failures()
                .map(move |c| format!("{case} {}: {}", c.name, c.witness.as_deref().unwrap_or("")))
        })
        .collect()
}

fn checks(outcomes: &[(String, SuiteOutcome)]) -> usize {
    outcomes.iter().map(|(_, o)| o.checks.len()).sum()
}

fn within(start: Instant, limit: Duration, failures: &mut Vec<String>) {
    let took = start.elapsed();
    if took > limit {
        failures.push(format!("took {took:?}, limit {limit:?}"));
    }
}

fn summary(total: usize, failures: &[String]) -> String {
    if failures.is_empty() {
        format!("{total} checks")
    } else {
        format!("{} of {total} checks failed; first: {}", failures.len(), failures[0])
    }
}

#[test]
fn criterion_01_domino_example() {
    let start = Instant::now();
    let shape = YoungDiagram::new(vec![3, 3]).unwrap();
    let all = combinat::enumerate_domino_tableaux(&shape).unwrap();
    let admissible = all.iter().filter(|t| t.is_admissible()).count();
    let mut problems = Vec::new();
    within(start, Duration::from_secs(1), &mut problems);
    let ok = all.len() == 3 && admissible == 2 && problems.is_empty();
    verdict(1, "domino example", ok, &format!("{} tableaux, {admissible} admissible {problems:?}", all.len()));
}

#[test]
fn criterion_02_vertical_tiles() {
    let start = Instant::now();
    let mut shapes = 0;
    let mut admissible = 0;
    let mut problems = Vec::new();
    for first in 1..=12usize {
        for second in 0..=first.min(12 - first) {
            if (first + second) % 2 == 1 {
                continue;
            }
            let rows: Vec<usize> = (0..first).map(|i| if i < second { 2 } else { 1 }).collect();
            let report = combinat::domino_check_for_shape(&YoungDiagram::new(rows.clone()).unwrap()).unwrap();
            shapes += 1;
            admissible += report.admissible.len();
            if report.admissible.iter().any(|t| !t.all_vertical()) {
                problems.push(format!("shape {rows:?} has an admissible tableau with a horizontal tile"));
            }
        }
    }
    within(start, Duration::from_secs(10), &mut problems);
    verdict(
        2,
        "vertical-tiles law",
        problems.is_empty(),
        &format!("{shapes} shapes, {admissible} admissible tableaux {problems:?}"),
    );
}

#[test]
fn criterion_03_classification_partition() {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for n in 1..=5 {
        for r in 0..=n / 2 {
            outcomes.push((format!("n={n} r={r}"), verify::coro_comp(n, r, &[2, 3]).unwrap()));
        }
    }
    let mut problems = failures(&outcomes);
    within(start, Duration::from_secs(120), &mut problems);
    verdict(3, "type A classification partition", problems.is_empty(), &summary(checks(&outcomes), &problems));
}

#[test]
fn criterion_04_type_d_structure() {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for (n, r) in [(2, 1), (3, 1)] {
        outcomes.push((format!("n={n} r={r}"), verify::descrip(n, r, &[3, 5]).unwrap()));
    }
    let mut problems = failures(&outcomes);
    within(start, Duration::from_secs(300), &mut problems);
    verdict(4, "type D structure", problems.is_empty(), &summary(checks(&outcomes), &problems));
}

#[test]
fn criterion_05_fibration_product() {
    let mut outcomes = Vec::new();
    for n in 1..=5 {
        for r in 0..=n / 2 {
            outcomes.push((format!("A n={n} r={r}"), verify::fibration(WeylType::A, n, r, &[2, 3]).unwrap()));
        }
    }
    for (n, r) in [(2, 1), (3, 1)] {
        outcomes.push((format!("D n={n} r={r}"), verify::fibration(WeylType::D, n, r, &[3, 5]).unwrap()));
    }
    let problems = failures(&outcomes);
    verdict(5, "fibration product", problems.is_empty(), &summary(checks(&outcomes), &problems));
}

/// Interpolation runs shared by the dimension and birationality criteria.
fn birational_runs() -> &'static (Vec<(String, SuiteOutcome)>, Duration) {
    static RUNS: OnceLock<(Vec<(String, SuiteOutcome)>, Duration)> = OnceLock::new();
    RUNS.get_or_init(|| {
        let start = Instant::now();
        let mut outcomes = Vec::new();
        for n in 1..=5 {
            for r in 0..=n / 2 {
                outcomes.push((format!("n={n} r={r}"), verify::birational(n, r, &[2, 3]).unwrap()));
            }
        }
        (outcomes, start.elapsed())
    })
}

fn restricted(outcomes: &[(String, SuiteOutcome)], keep: impl Fn(&str) -> bool) -> Vec<(String, SuiteOutcome)> {
    outcomes
        .iter()
        .map(|(case, o)| {
            let mut o = o.clone();
            o.checks.retain(|c| keep(&c.name));
            (case.clone(), o)
        })
        .collect()
}

#[test]
fn criterion_06_dimension_via_interpolation() {
    let (outcomes, took) = birational_runs();
    let dims = restricted(outcomes, |name| {
        name.starts_with("holdout fiber") || name.starts_with("holdout component") || name.contains("dimension")
    });
    let mut problems = failures(&dims);
    if *took > Duration::from_secs(600) {
        problems.push(format!("took {took:?}"));
    }
    verdict(6, "dimension via interpolation", problems.is_empty(), &summary(checks(&dims), &problems));
}

#[test]
fn criterion_07_birationality_shadow() {
    let (outcomes, _) = birational_runs();
    let bir = restricted(outcomes, |name| name.starts_with("birational") || name.starts_with("holdout xhat"));
    let problems = failures(&bir);
    verdict(7, "birationality shadow", problems.is_empty(), &summary(checks(&bir), &problems));
}

#[test]
fn criterion_08_word_machinery() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut total = 0;
    for (kind, n) in [(WeylType::A, 5), (WeylType::D, 4)] {
        for w in weyl::elements(kind, n).unwrap() {
            total += 1;
            let word = w.reduced_word();
            let back = WeylElement::from_word(kind, n, &word).unwrap();
            if back != w || word.len() != w.length() {
                problems.push(format!("{kind:?}: {w} -> {word} -> {back}"));
            }
        }
    }
    for n in 1..=5 {
        for r in 0..=n / 2 {
            for t in combinat::enumerate_two_column_tableaux(n, r).unwrap() {
                total += 1;
                let id = verify::tableau_id(&t.second_column_labels().unwrap());
                match weyl::component_words(n, r, &t, [2, 3], 5) {
                    Ok(cw) => {
                        if let Err(e) = weyl::suffix_extend(&cw.w_word, &cw.v) {
                            problems.push(format!("n={n} r={r} {id}: suffix_extend: {e}"));
                        }
                    }
                    Err(e) => problems.push(format!("n={n} r={r} {id}: {e}")),
                }
            }
        }
    }
    within(start, Duration::from_secs(120), &mut problems);
    verdict(8, "word machinery", problems.is_empty(), &summary(total, &problems));
}

fn all_words(letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word(Vec::new())];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..=letters).map(move |i| {
                    let mut next = w.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
        out.extend(frontier.iter().cloned().map(Word));
    }
    out
}

#[test]
fn criterion_09_bott_samelson_counts() {
    let mut problems = Vec::new();
    let mut total = 0;
    for p in [2u32, 3] {
        let base = CompleteFlag::standard(PrimeField::new(p).unwrap(), 3);
        for word in all_words(2, 6) {
            total += 1;
            let bs = BSWord::new(base.clone(), word.clone()).unwrap();
            let counted = bs::enumerate_bs_points(&bs).len() as u128;
            let expected = (p as u128 + 1).pow(word.len() as u32);
            if counted != expected || bs::bs_point_count(&bs).eval(p as i128) as u128 != expected {
                problems.push(format!("p={p} word {word}: {counted} points, expected {expected}"));
            }
        }
    }
    let mut outcomes = Vec::new();
    for n in 1..=4 {
        for r in 0..=n / 2 {
            outcomes.push((format!("n={n} r={r}"), verify::subword(n, r, &[2, 3]).unwrap()));
        }
    }
    problems.extend(failures(&outcomes));
    let surjective = outcomes
        .iter()
        .flat_map(|(_, o)| o.checks.iter())
        .filter(|c| c.name.starts_with("end-flags-surjective"))
        .map(|c| c.passed)
        .collect::<Vec<_>>();
    let detail = format!(
        "{}; end-flag surjectivity (report-only) {}/{}",
        summary(total + checks(&outcomes), &problems),
        surjective.iter().filter(|&&b| b).count(),
        surjective.len()
    );
    verdict(9, "Bott-Samelson counts", problems.is_empty(), &detail);
}

#[test]
fn criterion_10_negative_controls() {
    let mut problems = Vec::new();
    let horizontal = YoungDiagram::new(vec![2]).unwrap();
    let tableaux = combinat::enumerate_domino_tableaux(&horizontal).unwrap();
    if horizontal.is_admissible() || tableaux.len() != 1 || tableaux[0].is_admissible() || tableaux[0].all_vertical() {
        problems.push("shape (2) was not rejected".to_string());
    }
    let exponential = CountSeries::from_samples("2^p", [2u32, 3, 5, 7, 11].iter().map(|&p| (p, 1u128 << p)).collect()).unwrap();
    match pointcount::interpolate(&exponential, 3) {
        Err(PointCountError::NonIntegral { .. } | PointCountError::Inconsistent { .. }) => {}
        other => problems.push(format!("non-polynomial series accepted: {other:?}")),
    }
    let w_word = Word(vec![1, 2]);
    let v = WeylElement::from_word(WeylType::A, 3, &Word(vec![2, 1])).unwrap();
    match weyl::suffix_extend(&w_word, &v) {
        Err(WeylError::NoExtension { .. }) => {}
        other => problems.push(format!("suffix_extend accepted an incomparable pair: {other:?}")),
    }
    verdict(10, "negative controls", problems.is_empty(), &format!("3 controls {problems:?}"));
}
