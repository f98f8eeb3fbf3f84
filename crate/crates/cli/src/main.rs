mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::Report;
use serde_json::{json, Value};
use springer_core::combinat::{self, DominoTableau, StandardTableau};
use springer_core::flags_a::{self, NilpotentA};
use springer_core::flags_d::{self, NilpotentD};
use springer_core::gf::PrimeField;
use springer_core::pointcount::{self, CountSeries};
use springer_core::verify::{self, CheckMode, SuiteOutcome, VerifyError};
use springer_core::weyl::{self, WeylElement, WeylType, Word};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "springer-lab", version, about = "Enumerate, classify and count two-column Springer fibers over F_p")]
struct Cli {
    /// Directory for JSON and CSV reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for independent (prime, case) jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
}

impl Kind {
    fn weyl(self) -> WeylType {
        match self {
            Kind::A => WeylType::A,
            Kind::D => WeylType::D,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::D => "D",
        }
    }

    fn default_primes(self) -> Vec<u32> {
        match self {
            Kind::A => vec![2, 3],
            Kind::D => vec![3, 5],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    CoroComp,
    Descrip,
    Fibration,
    Birational,
    VerticalTiles,
    Subword,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::CoroComp => "coro-comp",
            Suite::Descrip => "descrip",
            Suite::Fibration => "fibration",
            Suite::Birational => "birational",
            Suite::VerticalTiles => "vertical-tiles",
            Suite::Subword => "subword",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            Suite::CoroComp => "type A components as closures of Im N jump strata",
            Suite::Descrip => "type D components via the U sequence and the form alpha",
            Suite::Fibration => "X-hat fibers over flags of Im N are Schubert varieties",
            Suite::Birational => "X-hat maps birationally onto its component",
            Suite::VerticalTiles => "admissible domino tableaux have only vertical tiles",
            Suite::Subword => "Bott-Samelson words, subword divisors and suffix compatibility",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Target {
    Fiber,
    Component(Vec<usize>),
    Schubert(Word),
    Xhat,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "fiber" {
            return Ok(Target::Fiber);
        }
        if s == "xhat" {
            return Ok(Target::Xhat);
        }
        if let Some(id) = s.strip_prefix("component:") {
            return verify::parse_tableau_id(id).map(Target::Component).map_err(|e| e.to_string());
        }
        if let Some(word) = s.strip_prefix("schubert:") {
            let letters: Result<Vec<usize>, _> = word
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .filter(|x| !x.is_empty())
                .map(str::parse)
                .collect();
            return letters.map(|l| Target::Schubert(Word(l))).map_err(|e| format!("bad word {word:?}: {e}"));
        }
        Err(format!("unknown target {s:?}; expected fiber, component:<id>, schubert:<word> or xhat"))
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Fiber => write!(f, "fiber"),
            Target::Component(labels) => write!(f, "component:{}", verify::tableau_id(labels)),
            Target::Schubert(word) => write!(f, "schubert:{word}"),
            Target::Xhat => write!(f, "xhat"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the tableaux indexing the components.
    Tableaux {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Enumerate the fiber over F_p, optionally classifying every flag.
    Fiber {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        classify: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
    },
    /// Interpolate the point-count polynomial of a target.
    Pointcount {
        #[arg(long)]
        target: Target,
        #[arg(long = "type", value_enum, default_value = "A")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Component for the xhat target.
        #[arg(long)]
        tableau: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u32>,
        #[arg(long)]
        holdout: Option<u32>,
    },
    /// Reduced words for the Schubert elements w and v of a component.
    Words {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        tableau: String,
        /// Two extraction primes and a holdout prime.
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 5])]
        primes: Vec<u32>,
    },
}

enum Failure {
    Usage(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

macro_rules! usage {
    ($($t:tt)*) => { Failure::Usage(format!($($t)*)) };
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let start = Instant::now();
    let outcome = dispatch(&cli.command, start);
    let (report, stem) = match outcome {
        Ok(x) => x,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    // a closed stdout (e.g. piped into `head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
    if let Some(dir) = &cli.out {
        if let Err(e) = report.write(dir, &stem) {
            eprintln!("error: writing reports to {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        let mode = if c.mode == CheckMode::Asserted { "FAIL" } else { "NOTE" };
        eprintln!("{mode} {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn dispatch(command: &Command, start: Instant) -> Result<(Report, String), Failure> {
    match command {
        Command::Tableaux { kind, n, r } => {
            let outcome = tableaux(*kind, *n, *r)?;
            let params = json!({"type": kind.label(), "n": n, "r": r});
            Ok((
                Report::new("tableaux", "tableaux indexing the components", params, outcome, start.elapsed()),
                "tableaux".into(),
            ))
        }
        Command::Fiber { kind, n, r, p, classify } => {
            let outcome = fiber(*kind, *n, *r, *p, *classify)?;
            let params = json!({"type": kind.label(), "n": n, "r": r, "p": p, "classify": classify});
            Ok((
                Report::new("fiber", "Springer fiber enumeration and classification", params, outcome, start.elapsed()),
                "fiber".into(),
            ))
        }
        Command::Verify { suite, kind, n, r, primes } => {
            let primes = primes.clone().unwrap_or_else(|| kind.default_primes());
            let outcome = run_suite(*suite, *kind, *n, *r, &primes)?;
            let params = json!({"suite": suite.name(), "type": kind.label(), "n": n, "r": r, "primes": primes});
            Ok((
                Report::new("verify", suite.anchor(), params, outcome, start.elapsed()),
                format!("verify-{}", suite.name()),
            ))
        }
        Command::Pointcount { target, kind, n, r, tableau, primes, holdout } => {
            let (outcome, series) = pointcount_cmd(target, *kind, *n, *r, tableau.as_deref(), primes, *holdout)?;
            let params = json!({
                "target": target.to_string(), "type": kind.label(), "n": n, "r": r,
                "tableau": tableau, "primes": primes, "holdout": holdout,
            });
            let mut report = Report::new("pointcount", "point-count polynomials", params, outcome, start.elapsed());
            report.samples = vec![series];
            Ok((report, "pointcount".into()))
        }
        Command::Words { kind, n, r, tableau, primes } => {
            let outcome = words(*kind, *n, *r, tableau, primes)?;
            let params = json!({"type": kind.label(), "n": n, "r": r, "tableau": tableau, "primes": primes});
            Ok((
                Report::new("words", "reduced expressions for the Schubert elements w and v", params, outcome, start.elapsed()),
                "words".into(),
            ))
        }
    }
}

fn check_rank(kind: Kind, n: usize, r: usize) -> Result<(), Failure> {
    match kind {
        Kind::A if 2 * r > n => Err(usage!("type A needs 2r <= n, got n = {n}, r = {r}")),
        Kind::D if 2 * r > n || n < 2 => Err(usage!("type D needs n >= 2 and 2r <= n, got n = {n}, r = {r}")),
        _ => Ok(()),
    }
}

fn field(kind: Kind, p: u32) -> Result<PrimeField, Failure> {
    lift(match kind {
        Kind::A => PrimeField::new(p),
        Kind::D => PrimeField::new_odd(p),
    })
}

fn domino_tableaux(n: usize, r: usize) -> Result<Vec<DominoTableau>, Failure> {
    let shape = lift(combinat::two_column_domino_shape(n, r))?;
    Ok(lift(combinat::enumerate_domino_tableaux(&shape))?
        .into_iter()
        .filter(DominoTableau::is_admissible)
        .collect())
}

fn tableaux(kind: Kind, n: usize, r: usize) -> Result<SuiteOutcome, Failure> {
    check_rank(kind, n, r)?;
    let mut out = SuiteOutcome::default();
    let listed: Vec<Value> = match kind {
        Kind::A => lift(combinat::enumerate_two_column_tableaux(n, r))?
            .iter()
            .map(|t| {
                let labels = t.second_column_labels().expect("two columns");
                json!({"id": verify::tableau_id(&labels), "rows": t.entries(), "second_column": labels})
            })
            .collect(),
        Kind::D => domino_tableaux(n, r)?
            .iter()
            .map(|t| {
                let labels = t.second_column_labels().expect("two columns");
                json!({"id": verify::tableau_id(&labels), "rows": t.entries(), "second_column": labels, "all_vertical": t.all_vertical()})
            })
            .collect(),
    };
    out.record("count", json!(listed.len()));
    out.record("tableaux", Value::Array(listed));
    Ok(out)
}

fn fiber(kind: Kind, n: usize, r: usize, p: u32, classify: bool) -> Result<SuiteOutcome, Failure> {
    check_rank(kind, n, r)?;
    let f = field(kind, p)?;
    if classify {
        let mut out = match kind {
            Kind::A => verify::coro_comp(n, r, &[p])?,
            Kind::D => verify::descrip(n, r, &[p])?,
        };
        let classes = out.data.get(&format!("class_counts p={p}")).cloned().unwrap_or(Value::Null);
        let nonempty = classes.as_object().map_or(0, |m| m.values().filter(|v| v.as_u64() != Some(0)).count());
        out.record("classes", json!(nonempty));
        return Ok(out);
    }
    let mut out = SuiteOutcome::default();
    match kind {
        Kind::A => {
            let nil = lift(NilpotentA::new(n, r, f))?;
            let count = flags_a::enumerate_fiber(&nil).len() as u128;
            let memo = flags_a::count_fiber_memo(&nil);
            out.run("memo-agrees", CheckMode::Asserted, |probe| {
                probe.tick();
                probe.expect(count == memo, || format!("enumerated {count}, memo {memo}"));
                Ok(())
            })?;
            out.record("count", json!(count));
        }
        Kind::D => {
            let (_, nil) = lift(flags_d::make_orth_nilpotent(n, r, f))?;
            out.record("count", json!(flags_d::count_fiber_d(&nil)));
        }
    }
    Ok(out)
}

fn run_suite(suite: Suite, kind: Kind, n: usize, r: usize, primes: &[u32]) -> Result<SuiteOutcome, Failure> {
    check_rank(kind, n, r)?;
    if primes.is_empty() {
        return Err(usage!("--primes must not be empty"));
    }
    for &p in primes {
        field(kind, p)?;
    }
    let need = |wanted: Kind| -> Result<(), Failure> {
        if kind == wanted {
            Ok(())
        } else {
            Err(usage!("suite {} runs on type {}", suite.name(), wanted.label()))
        }
    };
    Ok(match suite {
        Suite::CoroComp => {
            need(Kind::A)?;
            verify::coro_comp(n, r, primes)?
        }
        Suite::Descrip => {
            need(Kind::D)?;
            verify::descrip(n, r, primes)?
        }
        Suite::Fibration => verify::fibration(kind.weyl(), n, r, primes)?,
        Suite::Birational => {
            need(Kind::A)?;
            verify::birational(n, r, primes)?
        }
        Suite::VerticalTiles => verify::vertical_tiles(n, r)?,
        Suite::Subword => {
            need(Kind::A)?;
            verify::subword(n, r, primes)?
        }
    })
}

fn tableau_a(n: usize, labels: &[usize]) -> Result<StandardTableau, Failure> {
    lift(StandardTableau::two_column_from_labels(n, labels))
}

fn tableau_d(n: usize, r: usize, labels: &[usize]) -> Result<DominoTableau, Failure> {
    domino_tableaux(n, r)?
        .into_iter()
        .find(|t| t.second_column_labels().ok().as_deref() == Some(labels))
        .ok_or_else(|| usage!("no admissible domino tableau with second column {labels:?}"))
}

type Counter = Box<dyn Fn(u32) -> Result<u128, String> + Sync>;

fn counter(target: &Target, kind: Kind, n: usize, r: usize, tableau: Option<&str>) -> Result<(Counter, Option<usize>), Failure> {
    let nil_a = move |p: u32| -> Result<NilpotentA, String> {
        let f = PrimeField::new(p).map_err(|e| e.to_string())?;
        NilpotentA::new(n, r, f).map_err(|e| e.to_string())
    };
    let nil_d = move |p: u32| -> Result<NilpotentD, String> {
        let f = PrimeField::new_odd(p).map_err(|e| e.to_string())?;
        flags_d::make_orth_nilpotent(n, r, f).map(|x| x.1).map_err(|e| e.to_string())
    };
    let dim = match kind {
        Kind::A => pointcount::expected_dimension_a(n, r),
        Kind::D => pointcount::expected_dimension_d(n, r),
    };
    Ok(match (target, kind) {
        (Target::Fiber, Kind::A) => (Box::new(move |p| Ok(flags_a::count_fiber_memo(&nil_a(p)?))), Some(dim)),
        (Target::Fiber, Kind::D) => (Box::new(move |p| Ok(flags_d::count_fiber_d(&nil_d(p)?))), Some(dim)),
        (Target::Component(labels), Kind::A) => {
            let t = tableau_a(n, labels)?;
            (
                Box::new(move |p| flags_a::count_component_memo(&nil_a(p)?, &t).map_err(|e| e.to_string())),
                Some(dim),
            )
        }
        (Target::Component(labels), Kind::D) => {
            let t = tableau_d(n, r, labels)?;
            (
                Box::new(move |p| flags_d::count_component_d(&nil_d(p)?, &t).map_err(|e| e.to_string())),
                Some(dim),
            )
        }
        (Target::Schubert(word), Kind::A) => {
            let w = lift(WeylElement::from_word(WeylType::A, n, word))?;
            (
                Box::new(move |p| {
                    let f = PrimeField::new(p).map_err(|e| e.to_string())?;
                    flags_a::count_schubert_variety(f, &w).map_err(|e| e.to_string())
                }),
                None,
            )
        }
        (Target::Schubert(_), Kind::D) => return Err(usage!("schubert targets are type A")),
        (Target::Xhat, _) => {
            let id = tableau.ok_or_else(|| usage!("target xhat needs --tableau"))?;
            let labels = verify::parse_tableau_id(id)?;
            match kind {
                Kind::A => {
                    let t = tableau_a(n, &labels)?;
                    (
                        Box::new(move |p| flags_a::count_xhat_memo(&nil_a(p)?, &t).map_err(|e| e.to_string())),
                        None,
                    )
                }
                Kind::D => {
                    let t = tableau_d(n, r, &labels)?;
                    (
                        Box::new(move |p| {
                            flags_d::enumerate_xhat_d(&nil_d(p)?, &t)
                                .map(|v| v.len() as u128)
                                .map_err(|e| e.to_string())
                        }),
                        None,
                    )
                }
            }
        }
    })
}

fn pointcount_cmd(
    target: &Target,
    kind: Kind,
    n: usize,
    r: usize,
    tableau: Option<&str>,
    primes: &[u32],
    holdout: Option<u32>,
) -> Result<(SuiteOutcome, CountSeries), Failure> {
    check_rank(kind, n, r)?;
    if primes.is_empty() {
        return Err(usage!("--primes must not be empty"));
    }
    let mut all = primes.to_vec();
    all.extend(holdout);
    for &p in &all {
        field(kind, p)?;
    }
    let (count, dimension) = counter(target, kind, n, r, tableau)?;
    let label = target.to_string();
    let bound = primes.len() - 1;
    let mut out = SuiteOutcome::default();
    let counts: Vec<Result<u128, String>> = {
        use rayon::prelude::*;
        all.par_iter().map(|&p| count(p)).collect()
    };
    let mut samples = Vec::with_capacity(all.len());
    for (&p, c) in all.iter().zip(counts) {
        samples.push((p, c.map_err(Failure::Usage)?));
    }
    let fitted_samples = samples[..primes.len()].to_vec();
    let series = lift(CountSeries::from_samples(label.clone(), fitted_samples))?;
    let mut poly = None;
    out.run("interpolation", CheckMode::Asserted, |probe| {
        probe.add(series.samples.len() as u64);
        match pointcount::interpolate(&series, bound) {
            Ok(q) => poly = Some(q),
            Err(e) => probe.expect(false, || e.to_string()),
        }
        Ok(())
    })?;
    let all_series = lift(CountSeries::from_samples(label, samples.clone()))?;
    let Some(poly) = poly else { return Ok((out, all_series)) };
    if let Some(p) = holdout {
        let observed = samples.last().expect("holdout sampled").1;
        let report = pointcount::holdout_report(&poly, p, observed);
        out.run("holdout", CheckMode::Asserted, |probe| {
            probe.tick();
            probe.expect(report.passed, || report.to_string());
            Ok(())
        })?;
    }
    if let Some(dim) = dimension {
        out.run("dimension", CheckMode::Asserted, |probe| {
            probe.tick();
            probe.expect(poly.degree() == Some(dim), || format!("degree {:?}, expected {dim}", poly.degree()));
            Ok(())
        })?;
    }
    if let Target::Schubert(word) = target {
        let w = lift(WeylElement::from_word(WeylType::A, n, word))?;
        let expected = lift(weyl::schubert_point_count(&w))?;
        out.run("matches-bruhat-interval", CheckMode::Asserted, |probe| {
            probe.tick();
            probe.expect(poly == expected, || format!("interpolated {poly}, Bruhat interval gives {expected}"));
            Ok(())
        })?;
    }
    out.record("polynomial", json!(poly.to_string()));
    out.record("coefficients", json!(poly.coeffs()));
    out.record("degree", json!(poly.degree()));
    Ok((out, all_series))
}

fn words(kind: Kind, n: usize, r: usize, tableau: &str, primes: &[u32]) -> Result<SuiteOutcome, Failure> {
    if kind != Kind::A {
        return Err(usage!("words runs on type A"));
    }
    check_rank(kind, n, r)?;
    if primes.len() != 3 {
        return Err(usage!("--primes takes two extraction primes and a holdout prime"));
    }
    for &p in primes {
        field(kind, p)?;
    }
    let labels = verify::parse_tableau_id(tableau)?;
    if labels.len() != r {
        return Err(usage!("tableau {tableau} has {} second-column labels, r = {r}", labels.len()));
    }
    let t = tableau_a(n, &labels)?;
    let mut out = SuiteOutcome::default();
    let mut found = None;
    out.run("words", CheckMode::Asserted, |probe| {
        probe.tick();
        match weyl::component_words(n, r, &t, [primes[0], primes[1]], primes[2]) {
            Ok(cw) => found = Some(cw),
            Err(e) => probe.expect(false, || e.to_string()),
        }
        Ok(())
    })?;
    let Some(cw) = found else { return Ok(out) };
    let mut extended = None;
    out.run("suffix-extend", CheckMode::Asserted, |probe| {
        probe.tick();
        match weyl::suffix_extend(&cw.w_word, &cw.v) {
            Ok(word) => extended = Some(word),
            Err(e) => probe.expect(false, || e.to_string()),
        }
        Ok(())
    })?;
    out.record("w", json!(cw.w.to_string()));
    out.record("v", json!(cw.v.to_string()));
    out.record("w_word", json!(cw.w_word));
    out.record("v_word", json!(extended));
    out.record("lengths", json!({"w": cw.w.length(), "v": cw.v.length()}));
    Ok(out)
}
